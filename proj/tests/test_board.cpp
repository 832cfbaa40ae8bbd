#include <catch2/catch_amalgamated.hpp>

#include "pawncensus/board.hpp"

#include <algorithm>
#include <set>

using namespace pawncensus;

namespace {

// Independent construction: filter every grid square on the origin-interval
// containment test, without the per-row extent arithmetic.
std::set<Square> triangle_by_filter(FileInterval u, BoardSize b) {
    std::set<Square> out;
    for (int idx = 0; idx < b.grid_squares(); ++idx) {
        Square s = square_at(idx, b);
        FileInterval o = origin_files(s, b);
        if (o.l >= u.l && o.r <= u.r)
            out.insert(s);
    }
    return out;
}

Square sq(const char* name) {
    return Square{name[0] - 'a' + 1, name[1] - '0'};
}

}  // namespace

TEST_CASE("board size validation") {
    CHECK_THROWS_AS(BoardSize(2), std::invalid_argument);
    CHECK(BoardSize(3).grid_squares() == 3);
    CHECK(BoardSize(8).grid_squares() == 48);
    CHECK(BoardSize(10).grid_squares() == 80);
}

TEST_CASE("flat square index is (rank-2)*n + (file-1)") {
    BoardSize b(8);
    CHECK(square_index(sq("a2"), b) == 0);
    CHECK(square_index(sq("h2"), b) == 7);
    CHECK(square_index(sq("a3"), b) == 8);
    CHECK(square_index(sq("h7"), b) == 47);
    for (int idx = 0; idx < b.grid_squares(); ++idx)
        CHECK(square_index(square_at(idx, b), b) == idx);
}

TEST_CASE("origin files widen one file per rank and clamp at the edges") {
    CHECK(origin_files(sq("d4"), BoardSize(7)) == FileInterval{2, 6});
    CHECK(origin_files(sq("a2"), BoardSize(7)) == FileInterval{1, 1});
    CHECK(origin_files(sq("b5"), BoardSize(8)) == FileInterval{1, 5});
    CHECK(origin_files(sq("g7"), BoardSize(8)) == FileInterval{2, 8});
    // every square can stand still, so its own file is always inside
    for (int n : {3, 5, 8}) {
        BoardSize b(n);
        for (int idx = 0; idx < b.grid_squares(); ++idx) {
            Square s = square_at(idx, b);
            FileInterval o = origin_files(s, b);
            CHECK(o.contains(s.file));
            CHECK(o.l >= 1);
            CHECK(o.r <= n);
        }
    }
}

TEST_CASE("triangle of an interior interval") {
    PawnTriangle t = triangle(FileInterval{2, 6}, BoardSize(7));
    CHECK(t.size() == 9);
    std::set<Square> got(t.squares.begin(), t.squares.end());
    std::set<Square> want = {sq("b2"), sq("c2"), sq("d2"), sq("e2"), sq("f2"),
                             sq("c3"), sq("d3"), sq("e3"), sq("d4")};
    CHECK(got == want);
}

TEST_CASE("triangle clamped at the left edge") {
    PawnTriangle t = triangle(FileInterval{1, 4}, BoardSize(7));
    CHECK(t.size() == 10);
    std::set<Square> got(t.squares.begin(), t.squares.end());
    std::set<Square> want = {sq("a2"), sq("b2"), sq("c2"), sq("d2"), sq("a3"),
                             sq("b3"), sq("c3"), sq("a4"), sq("b4"), sq("a5")};
    CHECK(got == want);
}

TEST_CASE("triangle of a single file is one square") {
    for (int n : {4, 7, 9}) {
        BoardSize b(n);
        PawnTriangle t = triangle(FileInterval{1, 1}, b);
        REQUIRE(t.size() == 1);
        CHECK(t.squares[0] == sq("a2"));
    }
}

TEST_CASE("triangle matches filter construction for every interval") {
    for (int n = 3; n <= 9; ++n) {
        BoardSize b(n);
        for (int l = 1; l <= n; ++l) {
            for (int r = l; r <= n; ++r) {
                FileInterval u{l, r};
                PawnTriangle t = triangle(u, b);
                std::set<Square> got(t.squares.begin(), t.squares.end());
                CHECK(got == triangle_by_filter(u, b));
                CHECK(triangle_size(u, b) == t.size());
            }
        }
    }
}

TEST_CASE("intersection of triangles is the triangle of the intersection") {
    for (int n : {5, 8}) {
        BoardSize b(n);
        for (int l1 = 1; l1 <= n; ++l1)
            for (int r1 = l1; r1 <= n; ++r1)
                for (int l2 = 1; l2 <= n; ++l2)
                    for (int r2 = l2; r2 <= n; ++r2) {
                        auto a = triangle_by_filter({l1, r1}, b);
                        auto c = triangle_by_filter({l2, r2}, b);
                        std::set<Square> both;
                        std::set_intersection(a.begin(), a.end(), c.begin(), c.end(),
                                              std::inserter(both, both.begin()));
                        FileInterval m{std::max(l1, l2), std::min(r1, r2)};
                        std::set<Square> viaformula =
                            m.l <= m.r ? triangle_by_filter(m, b) : std::set<Square>{};
                        CHECK(both == viaformula);
                        int size = m.l <= m.r ? triangle_size(m, b) : 0;
                        CHECK(int(both.size()) == size);
                    }
    }
}

TEST_CASE("binomial agrees with the Pascal recurrence") {
    CHECK(binomial(5, 4) == 5);
    CHECK(binomial(8, 0) == 1);
    CHECK(binomial(48, 8) == BigCount(377348994));
    CHECK(binomial(3, 5) == 0);
    BinomTable table(60, 60);
    for (int a = 0; a < 60; ++a)
        for (int k = 0; k < 60; ++k)
            CHECK(binomial(a, k) == table(a, k));
}

TEST_CASE("total diagram counts") {
    CHECK(total_diagrams(BoardSize(3)) == 8);
    CHECK(total_diagrams(BoardSize(4)) == 163);
    CHECK(total_diagrams(BoardSize(5)) == 4944);
    // sum of binomials, independently
    for (int n = 3; n <= 10; ++n) {
        BigCount sum = 0;
        for (int i = 0; i <= n; ++i)
            sum += binomial(BoardSize(n).grid_squares(), i);
        CHECK(total_diagrams(BoardSize(n)) == sum);
    }
}

TEST_CASE("diagram bit operations and reflection") {
    BoardSize b(8);
    Diagram d(b);
    d.set(sq("a2"));
    d.set(sq("b3"));
    CHECK(d.pawn_count() == 2);
    CHECK(d.test(sq("a2")));
    CHECK(!d.test(sq("c2")));

    Diagram m = mirror_files(d);
    CHECK(m.test(sq("h2")));
    CHECK(m.test(sq("g3")));
    CHECK(mirror_files(m) == d);

    Diagram up(b);
    up.set(sq("c4"));
    up.set(sq("d3"));
    Diagram down = shift_toward_base(up);
    CHECK(down.test(sq("c3")));
    CHECK(down.test(sq("d2")));
    CHECK_THROWS_AS(shift_toward_base(down), std::invalid_argument);
}

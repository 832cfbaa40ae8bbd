#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cassert>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

// Board geometry for single-side pawn diagrams: pawns live on ranks 2..n-1 of
// an n x n board and may have moved straight or diagonally forward any number
// of steps, so a pawn's possible starting files form a contiguous interval.

namespace pawncensus {

// Exact counts everywhere; answers and several intermediates exceed 64 bits
// for larger boards.
using BigCount = boost::multiprecision::cpp_int;

struct BoardSize {
    int n;

    explicit BoardSize(int n_) : n(n_) {
        if (n < 3)
            throw std::invalid_argument("board size must be >= 3");
    }

    int files() const { return n; }
    int pawn_ranks() const { return n - 2; }  // ranks 2..n-1
    int grid_squares() const { return n * (n - 2); }
};

struct Square {
    int file;  // 1..n
    int rank;  // 2..n-1 for pawn squares

    bool operator==(const Square&) const = default;
    bool operator<(const Square& o) const {
        return rank != o.rank ? rank < o.rank : file < o.file;
    }
};

// Flat grid index: (rank-2)*n + (file-1); row-major from rank 2 upward.
inline int square_index(Square s, BoardSize b) {
    assert(s.file >= 1 && s.file <= b.n && s.rank >= 2 && s.rank <= b.n - 1);
    return (s.rank - 2) * b.n + (s.file - 1);
}

inline Square square_at(int idx, BoardSize b) {
    assert(idx >= 0 && idx < b.grid_squares());
    return Square{idx % b.n + 1, idx / b.n + 2};
}

inline std::string square_name(Square s) {
    std::string out;
    if (s.file <= 26) {
        out += char('a' + s.file - 1);
    } else {
        out += "f" + std::to_string(s.file);
    }
    out += std::to_string(s.rank);
    return out;
}

struct FileInterval {
    int l = 0, r = 0;  // inclusive, 1-based files; l <= r when valid

    int width() const { return r - l + 1; }
    bool contains(int f) const { return l <= f && f <= r; }
    bool operator==(const FileInterval&) const = default;
    // lexicographic by (left, right); family members are kept in this order
    auto operator<=>(const FileInterval&) const = default;
};

// Files a pawn standing on s could have started from: it has made exactly
// rank-2 forward steps, each shifting its file by at most one, clamped to
// the board.
inline FileInterval origin_files(Square s, BoardSize b) {
    int k = s.rank - 2;
    return FileInterval{std::max(1, s.file - k), std::min(b.n, s.file + k)};
}

namespace detail {
// Horizontal extent of triangle(u) at height h (h = rank-2). An endpoint on
// the board edge does not tighten with height because origin intervals clamp
// there.
inline bool triangle_row(FileInterval u, BoardSize b, int h, int& lo, int& hi) {
    lo = u.l == 1 ? 1 : u.l + h;
    hi = u.r == b.n ? b.n : u.r - h;
    return hi >= lo;
}
}  // namespace detail

// Number of squares whose origin interval fits inside u.
inline int triangle_size(FileInterval u, BoardSize b) {
    if (u.l > u.r)
        return 0;
    int total = 0;
    for (int h = 0; h < b.pawn_ranks(); ++h) {
        int lo, hi;
        if (detail::triangle_row(u, b, h, lo, hi))
            total += hi - lo + 1;
    }
    return total;
}

struct PawnTriangle {
    FileInterval base;
    std::vector<Square> squares;  // sorted by (rank, file)

    int size() const { return int(squares.size()); }
};

// Materialized square set {s : origin_files(s) inside u}.
inline PawnTriangle triangle(FileInterval u, BoardSize b) {
    if (u.l < 1 || u.r > b.n || u.l > u.r)
        throw std::invalid_argument("triangle: interval outside board");
    PawnTriangle t{u, {}};
    for (int h = 0; h < b.pawn_ranks(); ++h) {
        int lo, hi;
        if (!detail::triangle_row(u, b, h, lo, hi))
            continue;
        for (int f = lo; f <= hi; ++f)
            t.squares.push_back(Square{f, h + 2});
    }
    return t;
}

// Exact binomial coefficient via the multiplicative formula; every partial
// product is integral because C(a, i) divides the running value.
inline BigCount binomial(long long a, long long k) {
    if (k < 0 || a < 0 || k > a)
        return 0;
    if (k > a - k)
        k = a - k;
    BigCount acc = 1;
    for (long long i = 1; i <= k; ++i) {
        acc *= a - k + i;
        acc /= i;
    }
    return acc;
}

// Pascal table for the hot counting paths: C(a, k) for a <= rows-1, k <= cols-1.
class BinomTable {
public:
    BinomTable(int rows, int cols) : cols_(cols), c_(size_t(rows) * cols) {
        for (int a = 0; a < rows; ++a) {
            at(a, 0) = 1;
            for (int k = 1; k < cols; ++k) {
                if (k > a)
                    at(a, k) = 0;
                else if (k == a)
                    at(a, k) = 1;
                else
                    at(a, k) = at(a - 1, k - 1) + at(a - 1, k);
            }
        }
    }

    const BigCount& operator()(int a, int k) const {
        assert(a >= 0 && k >= 0 && k < cols_ && size_t(a) * cols_ + k < c_.size());
        return c_[size_t(a) * cols_ + k];
    }

private:
    BigCount& at(int a, int k) { return c_[size_t(a) * cols_ + k]; }
    int cols_;
    std::vector<BigCount> c_;
};

// All diagrams with up to n pawns anywhere on the pawn grid.
inline BigCount total_diagrams(BoardSize b) {
    BigCount total = 0;
    for (int i = 0; i <= b.n; ++i)
        total += binomial(b.grid_squares(), i);
    return total;
}

// Occupancy set over the pawn grid, flat-indexed.
class Diagram {
public:
    explicit Diagram(BoardSize b)
        : n_(b.n), bits_((b.grid_squares() + 63) / 64, 0) {}

    BoardSize board() const { return BoardSize(n_); }

    void set(Square s) { set_index(square_index(s, board())); }
    void set_index(int idx) { bits_[idx >> 6] |= std::uint64_t(1) << (idx & 63); }
    bool test_index(int idx) const {
        return bits_[idx >> 6] >> (idx & 63) & 1;
    }
    bool test(Square s) const { return test_index(square_index(s, board())); }

    int pawn_count() const {
        int c = 0;
        for (auto w : bits_)
            c += __builtin_popcountll(w);
        return c;
    }

    // ascending flat indices
    std::vector<int> pawn_indices() const {
        std::vector<int> out;
        for (size_t w = 0; w < bits_.size(); ++w) {
            std::uint64_t x = bits_[w];
            while (x) {
                out.push_back(int(w) * 64 + __builtin_ctzll(x));
                x &= x - 1;
            }
        }
        return out;
    }

    std::vector<Square> pawns() const {
        std::vector<Square> out;
        for (int idx : pawn_indices())
            out.push_back(square_at(idx, board()));
        return out;
    }

    bool operator==(const Diagram&) const = default;

private:
    int n_;
    std::vector<std::uint64_t> bits_;
};

// Reflection about the board's vertical axis (file f -> n+1-f).
inline Diagram mirror_files(const Diagram& d) {
    BoardSize b = d.board();
    Diagram out(b);
    for (Square s : d.pawns())
        out.set(Square{b.n + 1 - s.file, s.rank});
    return out;
}

// Every pawn one rank toward rank 2; caller must ensure no pawn is on rank 2.
inline Diagram shift_toward_base(const Diagram& d) {
    BoardSize b = d.board();
    Diagram out(b);
    for (Square s : d.pawns()) {
        if (s.rank <= 2)
            throw std::invalid_argument("shift_toward_base: pawn already on rank 2");
        out.set(Square{s.file, s.rank - 1});
    }
    return out;
}

}  // namespace pawncensus

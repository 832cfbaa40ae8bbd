#include <catch2/catch_amalgamated.hpp>

#include "pawncensus/board.hpp"
#include "pawncensus/census.hpp"
#include "pawncensus/matching.hpp"

#include <bit>

using namespace pawncensus;

namespace {

// Independent slow census: walk every subset mask of the grid directly.
BigCount mask_census(BoardSize b) {
    int grid = b.grid_squares();
    REQUIRE(grid <= 24);
    BigCount unreachable = 0;
    for (std::uint64_t mask = 0; mask < (std::uint64_t(1) << grid); ++mask) {
        if (std::popcount(mask) > b.n)
            continue;
        Diagram d(b);
        std::uint64_t m = mask;
        while (m) {
            int i = std::countr_zero(m);
            m &= m - 1;
            d.set(square_at(i, b));
        }
        if (!is_reachable(d, b))
            ++unreachable;
    }
    return unreachable;
}

}  // namespace

TEST_CASE("EDF plan is consistent") {
    for (int n = 3; n <= 9; ++n) {
        BoardSize b{n};
        EdfPlan p(b);
        int grid = b.grid_squares();
        for (int s = 0; s < grid; ++s) {
            CHECK(p.slot_of_flat[p.flat_of_slot[s]] == s);
            CHECK(p.slot_interval[s] == origin_files(square_at(p.flat_of_slot[s], b), b));
            CHECK(p.mirror_of_slot[p.mirror_of_slot[s]] == s);
            if (s) {
                // deadlines never decrease along slots
                CHECK(p.slot_interval[s - 1].r <= p.slot_interval[s].r);
            }
        }
    }
}

TEST_CASE("EDF census equals direct mask census on small boards") {
    for (int n = 3; n <= 5; ++n) {
        BoardSize b{n};
        CHECK(brute_force_count(b) == mask_census(b));
    }
}

TEST_CASE("census values") {
    CHECK(brute_force_count(BoardSize{3}) == 0);
    CHECK(brute_force_count(BoardSize{4}) == 18);
    CHECK(brute_force_count(BoardSize{5}) == 550);
    CHECK(brute_force_count(BoardSize{6}) == 16398);
    CHECK(brute_force_count(BoardSize{7}) == 541782);
}

TEST_CASE("reflection-weighted census matches plain census") {
    for (int n = 3; n <= 6; ++n) {
        BoardSize b{n};
        CHECK(reflection_pruned_count(b) == brute_force_count(b));
    }
}

TEST_CASE("thread count does not change the census") {
    for (int n = 4; n <= 6; ++n) {
        BoardSize b{n};
        BigCount one = brute_force_count(b, 1);
        CHECK(brute_force_count(b, 2) == one);
        CHECK(brute_force_count(b, 4) == one);
        CHECK(reflection_pruned_count(b, 3) == one);
    }
}

#pragma once

#include "pawncensus/board.hpp"
#include "pawncensus/matching.hpp"

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <mutex>
#include <thread>
#include <vector>

// Exhaustive census of unreachable diagrams: enumerate every pawn placement
// (0..n pawns on the n*(n-2) grid) and test reachability. Squares are
// pre-sorted by origin-interval deadline so that walking a combination in
// index order *is* the greedy earliest-deadline-first scan.

namespace pawncensus {

struct EdfPlan {
    BoardSize b;
    std::vector<FileInterval> slot_interval;  // slot -> origin interval, EDF order
    std::vector<int> flat_of_slot;
    std::vector<int> slot_of_flat;
    std::vector<int> mirror_of_slot;

    explicit EdfPlan(BoardSize board) : b(board) {
        int grid = b.grid_squares();
        flat_of_slot.resize(grid);
        for (int i = 0; i < grid; ++i)
            flat_of_slot[i] = i;
        std::vector<FileInterval> by_flat(grid);
        for (int i = 0; i < grid; ++i)
            by_flat[i] = origin_files(square_at(i, b), b);
        std::sort(flat_of_slot.begin(), flat_of_slot.end(), [&](int x, int y) {
            const FileInterval &a = by_flat[x], &c = by_flat[y];
            if (a.r != c.r)
                return a.r < c.r;
            if (a.l != c.l)
                return a.l < c.l;
            return x < y;
        });
        slot_interval.resize(grid);
        slot_of_flat.resize(grid);
        mirror_of_slot.resize(grid);
        for (int s = 0; s < grid; ++s) {
            slot_interval[s] = by_flat[flat_of_slot[s]];
            slot_of_flat[flat_of_slot[s]] = s;
        }
        for (int s = 0; s < grid; ++s) {
            Square sq = square_at(flat_of_slot[s], b);
            mirror_of_slot[s] = slot_of_flat[square_index(Square{b.n + 1 - sq.file, sq.rank}, b)];
        }
    }
};

// slots must be ascending; ascending slot order is EDF order by construction
inline bool edf_reachable(const EdfPlan& p, const int* slots, int k) {
    std::uint64_t free = p.b.n >= 64 ? ~std::uint64_t(0) : (std::uint64_t(1) << p.b.n) - 1;
    for (int i = 0; i < k; ++i) {
        FileInterval iv = p.slot_interval[slots[i]];
        std::uint64_t avail = free >> (iv.l - 1);
        if (!avail)
            return false;
        int file = __builtin_ctzll(avail) + iv.l;
        if (file > iv.r)
            return false;
        free &= ~(std::uint64_t(1) << (file - 1));
    }
    return true;
}

namespace detail {

// Enumerate k-subsets of slots with a fixed largest slot `top`; weight_fn maps
// (slots, k) to a count contribution. Fixing the largest slot gives
// independent work units for the thread pool.
template <class WeightFn>
std::uint64_t count_with_top(const EdfPlan&, int k, int top, WeightFn&& weight) {
    std::vector<int> c(static_cast<std::size_t>(k));
    c[std::size_t(k) - 1] = top;
    for (int i = 0; i < k - 1; ++i)
        c[std::size_t(i)] = i;
    std::uint64_t sum = 0;
    if (k == 1)
        return weight(c.data(), 1);
    while (true) {
        sum += weight(c.data(), k);
        // next (k-1)-combination of [0, top)
        int i = k - 2;
        while (i >= 0 && c[std::size_t(i)] == top - (k - 1 - i))
            --i;
        if (i < 0)
            break;
        ++c[std::size_t(i)];
        for (int j = i + 1; j < k - 1; ++j)
            c[std::size_t(j)] = c[std::size_t(j - 1)] + 1;
    }
    return sum;
}

template <class WeightFn>
BigCount parallel_census(const EdfPlan& p, int threads, WeightFn&& weight) {
    int grid = int(p.slot_interval.size());
    struct Task {
        int k, top;
    };
    std::vector<Task> tasks;
    for (int k = 1; k <= p.b.n; ++k)
        for (int top = k - 1; top < grid; ++top)
            tasks.push_back({k, top});
    // the empty diagram is reachable: contributes nothing

    std::atomic<std::size_t> next{0};
    std::mutex mu;
    BigCount total = 0;
    auto worker = [&] {
        std::uint64_t local = 0;
        while (true) {
            std::size_t t = next.fetch_add(1);
            if (t >= tasks.size())
                break;
            local += count_with_top(p, tasks[t].k, tasks[t].top, weight);
        }
        std::lock_guard<std::mutex> lock(mu);
        total += local;
    };
    if (threads <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int i = 0; i < threads; ++i)
            pool.emplace_back(worker);
        for (auto& th : pool)
            th.join();
    }
    return total;
}

}  // namespace detail

inline BigCount brute_force_count(BoardSize b, int threads = 1) {
    EdfPlan p(b);
    return detail::parallel_census(p, threads, [&](const int* slots, int k) -> std::uint64_t {
        return edf_reachable(p, slots, k) ? 0 : 1;
    });
}

// Same census, counting only mirror-canonical diagrams and weighting
// asymmetric ones by 2 (file reflection preserves reachability).
inline BigCount reflection_pruned_count(BoardSize b, int threads = 1) {
    EdfPlan p(b);
    return detail::parallel_census(p, threads, [&](const int* slots, int k) -> std::uint64_t {
        int m[64];
        for (int i = 0; i < k; ++i)
            m[i] = p.mirror_of_slot[slots[i]];
        std::sort(m, m + k);
        int cmp = 0;  // combo vs mirrored combo, lexicographic
        for (int i = 0; i < k; ++i) {
            if (slots[i] != m[i]) {
                cmp = slots[i] < m[i] ? -1 : 1;
                break;
            }
        }
        if (cmp > 0)
            return 0;  // mirror image is the canonical representative
        if (edf_reachable(p, slots, k))
            return 0;
        return cmp == 0 ? 1 : 2;
    });
}

}  // namespace pawncensus

#pragma once

#include "pawncensus/board.hpp"

#include <algorithm>
#include <optional>
#include <utility>
#include <vector>

// A diagram is reachable iff each pawn can be assigned a distinct starting
// file from its origin interval (one pawn per file on the second rank).
// Since the candidate sets are intervals, the greedy earliest-deadline-first
// scan is exact; a generic augmenting-path matcher is kept alongside as an
// independent check.

namespace pawncensus {

struct FileAssignment {
    // pawn square -> assigned starting file, in (rank, file) square order
    std::vector<std::pair<Square, int>> pawn_to_file;
};

namespace detail {

struct IntervalPawn {
    Square s;
    FileInterval origin;
};

inline std::vector<IntervalPawn> interval_pawns(const Diagram& d, BoardSize b) {
    if (d.board().n != b.n)
        throw std::invalid_argument("diagram/board size mismatch");
    if (d.pawn_count() > b.n)
        throw std::invalid_argument("more pawns than files");
    std::vector<IntervalPawn> out;
    for (Square s : d.pawns())
        out.push_back({s, origin_files(s, b)});
    return out;
}

}  // namespace detail

// Greedy assignment: pawns in order of (right endpoint, left endpoint), each
// taking the lowest unused file >= its left endpoint. Returns nothing when a
// pawn's deadline is exceeded (diagram unreachable).
inline std::optional<FileAssignment> greedy_assignment(const Diagram& d, BoardSize b) {
    auto pawns = detail::interval_pawns(d, b);
    std::sort(pawns.begin(), pawns.end(), [](const auto& a, const auto& c) {
        if (a.origin.r != c.origin.r)
            return a.origin.r < c.origin.r;
        if (a.origin.l != c.origin.l)
            return a.origin.l < c.origin.l;
        return a.s < c.s;
    });
    std::uint64_t free = b.n >= 64 ? ~std::uint64_t(0) : (std::uint64_t(1) << b.n) - 1;
    FileAssignment out;
    for (const auto& p : pawns) {
        std::uint64_t avail = free >> (p.origin.l - 1);
        if (!avail)
            return std::nullopt;
        int file = __builtin_ctzll(avail) + p.origin.l;
        if (file > p.origin.r)
            return std::nullopt;
        free &= ~(std::uint64_t(1) << (file - 1));
        out.pawn_to_file.push_back({p.s, file});
    }
    std::sort(out.pawn_to_file.begin(), out.pawn_to_file.end(),
              [](const auto& a, const auto& c) { return a.first < c.first; });
    return out;
}

inline bool is_reachable(const Diagram& d, BoardSize b) {
    return greedy_assignment(d, b).has_value();
}

// Independent oracle: maximum bipartite matching (pawns vs files) by
// augmenting paths; reachable iff the matching covers every pawn.
inline bool reference_is_reachable(const Diagram& d, BoardSize b) {
    auto pawns = detail::interval_pawns(d, b);
    int np = int(pawns.size());
    std::vector<int> file_owner(b.n + 1, -1);

    // returns true if pawn i gets a file, displacing others along an
    // alternating path
    auto augment = [&](auto&& self, int i, std::vector<char>& visited) -> bool {
        for (int f = pawns[i].origin.l; f <= pawns[i].origin.r; ++f) {
            if (visited[f])
                continue;
            visited[f] = 1;
            if (file_owner[f] < 0 || self(self, file_owner[f], visited)) {
                file_owner[f] = i;
                return true;
            }
        }
        return false;
    };

    for (int i = 0; i < np; ++i) {
        std::vector<char> visited(b.n + 1, 0);
        if (!augment(augment, i, visited))
            return false;
    }
    return true;
}

}  // namespace pawncensus

#pragma once

#include "pawncensus/board.hpp"
#include "pawncensus/families.hpp"

#include <compare>
#include <map>
#include <utility>
#include <vector>

// Aggregates family solution counts by signature and runs the signed sieve.
// Families with equal signature contribute identically to every term, so the
// sieve walks multisets of signatures instead of multisets of families:
//   term(S) = (-1)^(sum z + 1) * prod counts(s)^mult * F(S) * R(S)
// where F counts the ways to place the spans of S on the file line without
// touching (touching spans would merge into one family) and R counts the ways
// to sprinkle leftover pawns outside all covered squares.

namespace pawncensus {

struct Signature {
    int e = 0;  // 1 = edge-anchored class
    int w = 0;  // span width on the file line
    int p = 0;  // pawns inside the union of triangles
    int z = 0;  // member count (sieve sign)
    int q = 0;  // squares covered by the union of triangles
    auto operator<=>(const Signature&) const = default;
};

using SignatureTable = std::map<Signature, BigCount>;

inline SignatureTable build_signature_table(BoardSize b, UnsatCoreSet& cores) {
    SignatureTable table;
    for (FamilyClass cls : {FamilyClass::edge, FamilyClass::interior}) {
        enumerate_families(cls, b, cores, [&](const FamilyRecord& rec) {
            Signature s;
            s.e = cls == FamilyClass::edge ? 1 : 0;
            s.w = rec.span_width;
            s.z = int(rec.family.members.size());
            s.q = rec.solutions.covered;
            for (const auto& [pawns, count] : rec.solutions.by_total) {
                s.p = pawns;
                table[s] += count;
            }
        });
    }
    return table;
}

using SignatureCombo = std::vector<std::pair<Signature, int>>;  // sorted, multiplicities

// Ways to place every span of the combo on the file line: edge spans pin to
// an end, interior spans take offsets with at least one empty file between
// neighbours and none touching either edge.
inline BigCount placement_count_F(const SignatureCombo& combo, BoardSize b) {
    int n = b.n;
    std::vector<int> edge_w;
    std::vector<int> interior_w;
    bool edge_pair_same_sig = false;
    for (const auto& [sig, mult] : combo) {
        for (int i = 0; i < mult; ++i)
            (sig.e ? edge_w : interior_w).push_back(sig.w);
        if (sig.e && mult == 2)
            edge_pair_same_sig = true;
    }
    if (edge_w.size() > 2)
        return 0;

    // (left span width or 0, right span width or 0) assignments
    std::vector<std::pair<int, int>> assigns;
    if (edge_w.empty()) {
        assigns.push_back({0, 0});
    } else if (edge_w.size() == 1) {
        assigns.push_back({edge_w[0], 0});
        if (edge_w[0] < n)
            assigns.push_back({0, edge_w[0]});  // width-n span already covers both ends
    } else {
        if (edge_w[0] + edge_w[1] + 1 > n)
            return 0;  // spans would overlap or touch
        assigns.push_back({edge_w[0], edge_w[1]});
        // same-signature pairs are interchangeable; distinct signatures give
        // two placements even when widths coincide
        if (!edge_pair_same_sig)
            assigns.push_back({edge_w[1], edge_w[0]});
    }

    int k = int(interior_w.size());
    int sum_w = 0;
    for (int w : interior_w)
        sum_w += w;
    // orderings of the interior multiset: k! / prod mult!
    BigCount orders = 1;
    for (int i = 2; i <= k; ++i)
        orders *= i;
    for (const auto& [sig, mult] : combo) {
        if (sig.e)
            continue;
        for (int i = 2; i <= mult; ++i)
            orders /= i;
    }

    BigCount total = 0;
    for (auto [wl, wr] : assigns) {
        if (k == 0) {
            total += 1;
            continue;
        }
        int lo = wl ? wl + 2 : 2;       // first usable file for an interior span
        int hi = wr ? n - wr - 1 : n - 1;  // last usable file
        int len = hi - lo + 1;
        int slack = len - sum_w - (k - 1);
        if (slack < 0)
            continue;
        total += orders * binomial(slack + k, k);
    }
    return total;
}

// Ways to add 0..n-p leftover pawns anywhere outside the covered squares.
inline BigCount remainder_count_R(const SignatureCombo& combo, BoardSize b) {
    int sum_p = 0, sum_q = 0;
    for (const auto& [sig, mult] : combo) {
        sum_p += sig.p * mult;
        sum_q += sig.q * mult;
    }
    int free_squares = b.grid_squares() - sum_q;
    BigCount total = 0;
    for (int r = 0; r <= b.n - sum_p; ++r)
        total += binomial(free_squares, r);
    return total;
}

struct SieveTerm {
    SignatureCombo combo;
    int z_total = 0;
    BigCount weight;      // product of table counts over the combo
    BigCount placements;  // F
    BigCount remainder;   // R
    BigCount value;       // signed contribution
};

struct SieveResult {
    BigCount unreachable = 0;
    std::vector<SieveTerm> terms;  // populated only when terms are collected
};

inline SieveResult sieve_unreachable(const SignatureTable& table, BoardSize b,
                                     bool collect_terms = false) {
    std::vector<Signature> sigs;
    sigs.reserve(table.size());
    for (const auto& [sig, count] : table)
        sigs.push_back(sig);

    SieveResult result;
    SignatureCombo combo;
    auto rec = [&](auto&& self, std::size_t from, int sum_p, int sum_e) -> void {
        for (std::size_t j = from; j < sigs.size(); ++j) {
            const Signature& sig = sigs[j];
            if (sum_p + sig.p > b.n)
                continue;
            if (sum_e + sig.e > 2)
                continue;
            if (!combo.empty() && combo.back().first == sig)
                ++combo.back().second;
            else
                combo.push_back({sig, 1});
            BigCount f = placement_count_F(combo, b);
            if (!f.is_zero()) {  // adding spans only tightens placement, safe to skip subtree
                BigCount r = remainder_count_R(combo, b);
                int z_total = 0;
                BigCount weight = 1;
                for (const auto& [s, m] : combo) {
                    z_total += s.z * m;
                    for (int i = 0; i < m; ++i)
                        weight *= table.at(s);
                }
                BigCount value = weight * f * r;
                if (z_total % 2 == 0)
                    value = -value;
                result.unreachable += value;
                if (collect_terms) {
                    SieveTerm term;
                    term.combo = combo;
                    term.z_total = z_total;
                    term.weight = weight;
                    term.placements = f;
                    term.remainder = r;
                    term.value = value;
                    result.terms.push_back(term);
                }
                self(self, j, sum_p + sig.p, sum_e + sig.e);
            }
            if (combo.back().second > 1)
                --combo.back().second;
            else
                combo.pop_back();
        }
    };
    rec(rec, 0, 0, 0);
    return result;
}

// Convenience: full pipeline for one board.
inline SieveResult sieve_count(BoardSize b, UnsatCoreSet& cores, bool collect_terms = false) {
    SignatureTable table = build_signature_table(b, cores);
    return sieve_unreachable(table, b, collect_terms);
}

}  // namespace pawncensus

#pragma once

#include "pawncensus/board.hpp"
#include "pawncensus/partition.hpp"

#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

// Counts pawn placements inside the union of a family's triangles that put at
// least width+1 pawns in every member triangle, for every pawn total up to n.
// Placements are tracked as a ledger keyed by per-part pawn counts: parts are
// interchangeable square pools, so one ledger entry stands for
// prod C(part_size, part_count) individual placements and refinement updates
// the entry weights with exact binomial ratios instead of re-enumerating.

namespace pawncensus {

struct FamilySolutions {
    std::map<int, BigCount> by_total;  // pawn total -> number of placements
    int covered = 0;                   // squares in the union of triangles
};

class IncrementalCounter {
public:
    explicit IncrementalCounter(BoardSize b) : state_(b) {
        ledger_.emplace(std::string(1, char(0)), BigCount(1));  // no parts, 0 retired
    }

    // Adds the next member; returns false once no placement can satisfy the
    // family (the ledger drains and stays empty).
    bool add(FileInterval u, const BinomTable& binom) {
        int demand = u.width() + 1;
        int budget = state_.board().n;
        RefineStep step = state_.refine(u);

        std::unordered_map<std::string, BigCount> next;
        std::string counts;
        for (const auto& [key, value] : ledger_) {
            int live_before = int(key.size()) - 1;
            int retired_total = int(static_cast<unsigned char>(key[std::size_t(live_before)]));
            counts.clear();
            distribute(key, value, step, 0, 0, retired_total, counts, demand, budget, binom, next);
        }
        ledger_ = std::move(next);
        return !ledger_.empty();
    }

    bool exhausted() const { return ledger_.empty(); }
    const PartitionState& partition() const { return state_; }

    std::optional<FamilySolutions> result() const {
        if (ledger_.empty())
            return std::nullopt;
        FamilySolutions out;
        out.covered = state_.covered();
        for (const auto& [key, value] : ledger_) {
            int total = 0;
            for (char c : key)
                total += int(static_cast<unsigned char>(c));
            out.by_total[total] += value;
        }
        return out;
    }

private:
    // Walks the refine ops, distributing each old slot's pawn count into the
    // new slot layout; every split multiplies by C(a,x)C(b,c-x)/C(a+b,c),
    // which stays integral entry-by-entry because each entry's weight carries
    // a full C(size, count) factor per part.
    void distribute(const std::string& key, const BigCount& value, const RefineStep& step,
                    int slot, int kept_total, int retired_total, std::string& counts,
                    int demand, int budget, const BinomTable& binom,
                    std::unordered_map<std::string, BigCount>& next) const {
        if (slot == int(step.ops.size())) {
            finish_entry(value, step, kept_total, retired_total, counts, demand, budget, binom,
                         next);
            return;
        }
        int c = int(static_cast<unsigned char>(key[std::size_t(slot)]));
        const SplitOp& op = step.ops[std::size_t(slot)];
        switch (op.kind) {
            case SplitOp::Kind::keep:
            case SplitOp::Kind::whole:
                counts.push_back(char(c));
                distribute(key, value, step, slot + 1, kept_total + c, retired_total, counts,
                           demand, budget, binom, next);
                counts.pop_back();
                return;
            case SplitOp::Kind::retire:
                distribute(key, value, step, slot + 1, kept_total, retired_total + c, counts,
                           demand, budget, binom, next);
                return;
            case SplitOp::Kind::split: {
                int a = op.inside_size, b = op.outside_size;
                const BigCount& denom = binom(a + b, c);
                int xlo = c - b > 0 ? c - b : 0;
                int xhi = a < c ? a : c;
                for (int x = xlo; x <= xhi; ++x) {
                    BigCount v = value * binom(a, x) * binom(b, c - x);
                    BigCount q, r;
                    boost::multiprecision::divide_qr(v, denom, q, r);
                    if (!r.is_zero())
                        throw std::logic_error("non-integral ledger redistribution");
                    counts.push_back(char(x));
                    int extra_retired = op.outside_retired ? c - x : 0;
                    if (!op.outside_retired)
                        counts.push_back(char(c - x));
                    distribute(key, q, step, slot + 1, kept_total + c - extra_retired,
                               retired_total + extra_retired, counts, demand, budget, binom, next);
                    if (!op.outside_retired)
                        counts.pop_back();
                    counts.pop_back();
                }
                return;
            }
        }
    }

    void finish_entry(const BigCount& value, const RefineStep& step, int kept_total,
                      int retired_total, std::string& counts, int demand, int budget,
                      const BinomTable& binom,
                      std::unordered_map<std::string, BigCount>& next) const {
        int placed = kept_total + retired_total;
        int max_fill = step.orphan_size < budget - placed ? step.orphan_size : budget - placed;
        if (max_fill < 0)
            return;
        int fills = step.orphan_size > 0 ? max_fill : 0;
        for (int fill = 0; fill <= fills; ++fill) {
            if (step.orphan_size > 0)
                counts.push_back(char(fill));
            int inside = 0;
            for (int pos : step.inside_positions)
                inside += int(static_cast<unsigned char>(counts[std::size_t(pos)]));
            if (inside >= demand) {
                std::string key = counts;
                key.push_back(char(retired_total));
                BigCount v = value;
                if (step.orphan_size > 0)
                    v *= binom(step.orphan_size, fill);
                auto [it, fresh] = next.try_emplace(std::move(key), v);
                if (!fresh)
                    it->second += v;
            }
            if (step.orphan_size > 0)
                counts.pop_back();
        }
    }

    PartitionState state_;
    std::unordered_map<std::string, BigCount> ledger_;
};

// One-shot convenience: feed every member, bail out early when unsatisfiable.
inline std::optional<FamilySolutions> count_for_family(const std::vector<FileInterval>& members,
                                                       BoardSize b, const BinomTable& binom) {
    IncrementalCounter c(b);
    for (FileInterval u : members)
        if (!c.add(u, binom))
            return std::nullopt;
    return c.result();
}

}  // namespace pawncensus

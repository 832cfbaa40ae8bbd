#pragma once

#include "pawncensus/board.hpp"

#include <cstdint>
#include <stdexcept>
#include <vector>

// Incremental partition of the union of pawn triangles of an interval family.
// Triangles are added in family order (non-decreasing left file); each
// addition refines the current parts so that every part lies inside the same
// subset of triangles. Intersection sizes come from a closed form: because
// every earlier triangle starts at or left of the new one, the overlap of the
// new triangle with a part is itself a triangle minus a triangle prefix.

namespace pawncensus {

struct Part {
    FileInterval base{1, 0};   // triangle the part was carved from
    int cut_r = 0;             // excluded prefix [base.l, cut_r]; 0 = none
    int size = 0;              // exact square count (multi-cut parts are not
                               // prefix-shaped, so the size is carried along)
    std::uint32_t members = 0; // bit i set -> part lies inside member i's triangle
    bool retired = false;      // provably disjoint from every future triangle
};

struct SplitOp {
    enum class Kind : std::uint8_t { keep, whole, retire, split };
    Kind kind = Kind::keep;
    int inside_size = 0;
    int outside_size = 0;
    bool outside_retired = false;
};

// Outcome of one refinement, phrased against the previous live order. The new
// live order is: for each old slot in order, the slot itself (keep/whole) or
// its inside piece followed by its still-live outside piece (split); retired
// slots drop out; a non-empty orphan part goes last.
struct RefineStep {
    std::vector<SplitOp> ops;
    int orphan_size = 0;
    std::vector<int> inside_positions;  // new-order positions covered by the triangle
    int live_after = 0;
};

class PartitionState {
public:
    explicit PartitionState(BoardSize b) : b_(b) {}

    RefineStep refine(FileInterval u) {
        if (u.l < 1 || u.r > b_.n || u.l > u.r)
            throw std::invalid_argument("interval outside board");
        if (u.l < last_l_)
            throw std::logic_error("triangles must arrive with non-decreasing left file");
        if (member_count_ >= 32)
            throw std::logic_error("too many family members");
        int bit = member_count_;

        RefineStep step;
        std::vector<int> new_live;
        for (int pid : live_) {
            Part& pa = parts_[std::size_t(pid)];
            SplitOp op;
            if (pa.base.r < u.l) {
                op.kind = SplitOp::Kind::retire;
                pa.retired = true;
                retired_.push_back(pid);
                step.ops.push_back(op);
                continue;
            }
            int ir = std::min(pa.base.r, u.r);
            int icut = std::min(pa.cut_r, ir);
            int inside = triangle_size(FileInterval{u.l, ir}, b_) -
                         (icut >= u.l ? triangle_size(FileInterval{u.l, icut}, b_) : 0);
            if (inside == 0) {
                op.kind = SplitOp::Kind::keep;
                new_live.push_back(pid);
            } else if (inside == pa.size) {
                op.kind = SplitOp::Kind::whole;
                pa.members |= std::uint32_t(1) << bit;
                step.inside_positions.push_back(int(new_live.size()));
                new_live.push_back(pid);
            } else {
                op.kind = SplitOp::Kind::split;
                op.inside_size = inside;
                op.outside_size = pa.size - inside;
                op.outside_retired = pa.base.r <= u.r;
                Part in;
                in.base = FileInterval{u.l, ir};
                in.cut_r = icut >= u.l ? icut : 0;
                in.size = inside;
                in.members = pa.members | (std::uint32_t(1) << bit);
                Part out;
                out.base = pa.base;
                // every square of the part left of u.r (and right of the old
                // cut) just went to the inside piece, so the remainder starts
                // after u.r
                out.cut_r = u.r;
                out.size = pa.size - inside;
                out.members = pa.members;
                out.retired = op.outside_retired;
                step.inside_positions.push_back(int(new_live.size()));
                parts_.push_back(in);
                new_live.push_back(int(parts_.size()) - 1);
                parts_.push_back(out);
                if (op.outside_retired)
                    retired_.push_back(int(parts_.size()) - 1);
                else
                    new_live.push_back(int(parts_.size()) - 1);
            }
            step.ops.push_back(op);
        }

        int ocut = std::min(processed_max_r_, u.r);
        int osize = triangle_size(u, b_) -
                    (ocut >= u.l ? triangle_size(FileInterval{u.l, ocut}, b_) : 0);
        step.orphan_size = osize;
        if (osize > 0) {
            Part orphan;
            orphan.base = u;
            orphan.cut_r = ocut >= u.l ? ocut : 0;
            orphan.size = osize;
            orphan.members = std::uint32_t(1) << bit;
            step.inside_positions.push_back(int(new_live.size()));
            parts_.push_back(orphan);
            new_live.push_back(int(parts_.size()) - 1);
        }

        live_ = std::move(new_live);
        step.live_after = int(live_.size());
        covered_ += osize;
        processed_max_r_ = std::max(processed_max_r_, u.r);
        last_l_ = u.l;
        ++member_count_;
        return step;
    }

    BoardSize board() const { return b_; }
    const std::vector<Part>& parts() const { return parts_; }
    const std::vector<int>& live() const { return live_; }
    const std::vector<int>& retired() const { return retired_; }
    int member_count() const { return member_count_; }
    int covered() const { return covered_; }

private:
    BoardSize b_;
    std::vector<Part> parts_;  // arena; split parents stay but leave live/retired
    std::vector<int> live_;    // current live part ids, ledger slot order
    std::vector<int> retired_;
    int member_count_ = 0;
    int processed_max_r_ = 0;
    int covered_ = 0;
    int last_l_ = 1;
};

}  // namespace pawncensus

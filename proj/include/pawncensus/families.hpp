#pragma once

#include "pawncensus/board.hpp"
#include "pawncensus/partition.hpp"
#include "pawncensus/solutions.hpp"

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <functional>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

// Enumerates interval families: lexicographically ordered, duplicate-free
// lists of file intervals whose triangles form one connected span. Families
// come in two anchored classes — "edge" (leftmost interval starts at file 1)
// and "interior" (leftmost starts at file 2, nothing touches either edge);
// every other family is a displacement of an interior one, which the
// aggregation layer accounts for positionally.
//
// Pruning, all validated against unpruned enumeration:
//  - intervals whose triangle cannot hold width+1 pawns never appear;
//  - prefixes with a drained ledger are never extended (restriction of any
//    solution to the prefix's triangles would satisfy the prefix);
//  - once appending [l, r] to a prefix fails, any candidate at the same level
//    that is at least as wide also fails (its triangle gains squares only
//    where they cannot relieve the overlap that drained the ledger), so the
//    level's width allowance shrinks to width-1;
//  - unsatisfiable families are remembered as canonical "cores"; any family
//    with a suffix matching a core under displacement/reflection rules below
//    is skipped without touching the ledger.

namespace pawncensus {

enum class FamilyClass { edge, interior };

struct IntervalFamily {
    FamilyClass cls = FamilyClass::edge;
    std::vector<FileInterval> members;
};

// An interval to which no placement can supply width+1 pawns by itself.
inline bool always_unsat(FileInterval u, BoardSize b) {
    return u.width() == b.n || triangle_size(u, b) <= u.width();
}

// Canonical core key: displace so the leftmost file becomes 1.
inline std::string canonical_key(const std::vector<FileInterval>& members) {
    int off = members.front().l;
    for (FileInterval u : members)
        off = std::min(off, u.l);
    --off;
    std::string out;
    for (FileInterval u : members) {
        if (!out.empty())
            out += ',';
        out += std::to_string(u.l - off);
        out += '-';
        out += std::to_string(u.r - off);
    }
    return out;
}

// Key of the file-reflected family, re-sorted and displaced to leftmost 1.
inline std::string reflected_canonical_key(const std::vector<FileInterval>& members) {
    std::vector<FileInterval> m;
    for (FileInterval u : members)
        m.push_back(FileInterval{-u.r, -u.l});
    std::sort(m.begin(), m.end(), [](FileInterval a, FileInterval c) {
        return a.l != c.l ? a.l < c.l : a.r < c.r;
    });
    return canonical_key(m);
}

namespace detail {

// Core keys packed into one 64-bit word: displace the leftmost file to 1,
// then one byte per interval (high nibble = left file, low nibble = right
// file), first interval in the most significant used byte. Left files are
// at least 1, so bytes are nonzero and zero terminates; the encoding is
// injective. Families of more than eight intervals or spanning more than
// fifteen files return 0 ("not representable").
inline std::uint64_t pack_displaced(const std::vector<FileInterval>& m) {
    if (m.empty() || m.size() > 8)
        return 0;
    int off = m.front().l;
    for (FileInterval u : m)
        off = std::min(off, u.l);
    --off;
    std::uint64_t key = 0;
    for (FileInterval u : m) {
        int r = u.r - off;
        if (r > 15)
            return 0;
        key = key << 8 | static_cast<std::uint64_t>((u.l - off) << 4 | r);
    }
    return key;
}

inline std::uint64_t pack_canonical(const std::vector<FileInterval>& members) {
    return pack_displaced(members);
}

inline std::uint64_t pack_reflected(const std::vector<FileInterval>& members) {
    std::vector<FileInterval> m;
    for (FileInterval u : members)
        m.push_back(FileInterval{-u.r, -u.l});
    std::sort(m.begin(), m.end(), [](FileInterval a, FileInterval c) {
        return a.l != c.l ? a.l < c.l : a.r < c.r;
    });
    return pack_displaced(m);
}

// A fully interior suffix is certified by a core in either orientation, so
// interior entries are stored quotiented by reflection.
inline std::uint64_t pack_interior(const std::vector<FileInterval>& members) {
    std::uint64_t a = pack_canonical(members);
    std::uint64_t r = pack_reflected(members);
    return a && r ? std::min(a, r) : 0;
}

inline std::vector<FileInterval> unpack_key(std::uint64_t key) {
    std::vector<FileInterval> out;
    while (key) {
        auto byte = static_cast<int>(key & 0xff);
        out.push_back(FileInterval{byte >> 4, byte & 0xf});
        key >>= 8;
    }
    std::reverse(out.begin(), out.end());
    return out;
}

// Open-addressing set of packed keys (0 marks an empty slot). Larger boards
// learn cores by the tens of millions; node-based sets cost ~56 bytes per
// entry and exhaust memory there, this stays at 8 bytes per slot.
class PackedCoreTable {
  public:
    PackedCoreTable() : slots_(std::size_t{1} << 12, 0) {}

    bool insert(std::uint64_t key) {
        if (key == 0)
            return false;
        std::size_t i = find_slot(slots_, key);
        if (slots_[i] == key)
            return false;
        slots_[i] = key;
        if (++size_ * 10 > slots_.size() * 7)
            grow();
        return true;
    }

    bool contains(std::uint64_t key) const {
        return key != 0 && slots_[find_slot(slots_, key)] == key;
    }

    std::size_t size() const { return size_; }
    bool empty() const { return size_ == 0; }

    std::vector<std::uint64_t> sorted_keys() const {
        std::vector<std::uint64_t> out;
        out.reserve(size_);
        for (std::uint64_t k : slots_)
            if (k)
                out.push_back(k);
        std::sort(out.begin(), out.end());
        return out;
    }

    friend bool operator==(const PackedCoreTable& a, const PackedCoreTable& b) {
        return a.size_ == b.size_ && a.sorted_keys() == b.sorted_keys();
    }

  private:
    static std::size_t find_slot(const std::vector<std::uint64_t>& slots, std::uint64_t key) {
        std::uint64_t h = key;  // splitmix64 finalizer scatters the packed bytes
        h ^= h >> 30;
        h *= 0xbf58476d1ce4e5b9ULL;
        h ^= h >> 27;
        h *= 0x94d049bb133111ebULL;
        h ^= h >> 31;
        std::size_t mask = slots.size() - 1;
        std::size_t i = static_cast<std::size_t>(h) & mask;
        while (slots[i] != 0 && slots[i] != key)
            i = (i + 1) & mask;
        return i;
    }

    void grow() {
        std::vector<std::uint64_t> bigger(slots_.size() * 2, 0);
        for (std::uint64_t k : slots_)
            if (k)
                bigger[find_slot(bigger, k)] = k;
        slots_.swap(bigger);
    }

    std::vector<std::uint64_t> slots_;
    std::size_t size_ = 0;
};

}  // namespace detail

// Two validity domains for remembered cores:
//  - edge_keys: verified with the leftmost interval anchored at file 1
//    (members may touch the right edge). Valid for suffixes anchored at
//    file 1 directly, and for suffixes touching the right edge via
//    reflection.
//  - interior_keys: valid at any offset provided the suffix touches neither
//    edge (interior triangles only shrink relative to the anchored ones, so
//    satisfiability can only be lost). Stored reflection-quotiented.
// Families that do not fit a packed key are simply not cached; the cache
// only accelerates enumeration, so a missing entry costs time, never
// correctness.
struct UnsatCoreSet {
    detail::PackedCoreTable edge_keys;
    detail::PackedCoreTable interior_keys;

    std::size_t size() const { return edge_keys.size() + interior_keys.size(); }
};

// True if some suffix of the family matches a remembered core.
inline bool contains_unsat_core(const std::vector<FileInterval>& members, const UnsatCoreSet& cores,
                                BoardSize b) {
    std::vector<FileInterval> m(members);
    while (!m.empty()) {
        int leftmost = m.front().l;
        int rightmost = 0;
        for (FileInterval u : m) {
            leftmost = std::min(leftmost, u.l);
            rightmost = std::max(rightmost, u.r);
        }
        bool hit;
        if (leftmost == 1)
            hit = cores.edge_keys.contains(detail::pack_canonical(m));
        else if (rightmost == b.n)
            hit = cores.edge_keys.contains(detail::pack_reflected(m));
        else
            hit = cores.interior_keys.contains(detail::pack_interior(m));
        if (hit)
            return true;
        m.erase(m.begin());
    }
    return false;
}

inline void record_unsat_core(const std::vector<FileInterval>& members, UnsatCoreSet& cores) {
    int leftmost = members.front().l;
    for (FileInterval u : members)
        leftmost = std::min(leftmost, u.l);
    if (leftmost == 1)
        cores.edge_keys.insert(detail::pack_canonical(members));  // verified at the anchor only
    cores.interior_keys.insert(detail::pack_interior(members));
}

// Iteration bounds for one anchored class.
struct ClassBounds {
    int first_l;    // anchor file of the first member
    int max_r;      // largest right file any member may use
    int min_width;  // narrowest interval that is not always unsatisfiable
};

inline ClassBounds class_bounds(FamilyClass cls, BoardSize b) {
    if (cls == FamilyClass::edge)
        return {1, b.n, 2};
    return {2, b.n - 1, 3};
}

// Next candidate in lexicographic order, or nothing when the level is
// exhausted. `prev` is the previous candidate at this level (nothing to
// start), `start_l`/`max_l` bound the left file, `width_cap` is the level's
// current width allowance.
inline std::optional<FileInterval> next_candidate(std::optional<FileInterval> prev, int start_l,
                                                  int max_l, int width_cap, ClassBounds cb) {
    if (prev) {
        FileInterval u = *prev;
        if (u.r + 1 <= cb.max_r && u.r + 1 - u.l + 1 <= width_cap)
            return FileInterval{u.l, u.r + 1};
        start_l = u.l + 1;
    }
    if (start_l > max_l || cb.min_width > width_cap)
        return std::nullopt;
    int r = start_l + cb.min_width - 1;
    if (r > cb.max_r)
        return std::nullopt;
    return FileInterval{start_l, r};
}

struct FamilyRecord {
    IntervalFamily family;
    FamilySolutions solutions;
    int span_width = 0;  // span right end (edge class) or span length (interior)
};

// Streams every satisfiable family of the class into `sink`, learning cores
// into `cores` as a side effect (and using whatever is already there).
inline void enumerate_families(FamilyClass cls, BoardSize b, UnsatCoreSet& cores,
                               const std::function<void(const FamilyRecord&)>& sink) {
    ClassBounds cb = class_bounds(cls, b);
    BinomTable binom(b.grid_squares() + 1, b.n + 2);
    int init_cap = cls == FamilyClass::edge ? b.n : b.n - 2;

    std::vector<FileInterval> fam;
    auto dfs = [&](auto&& self, const IncrementalCounter& counter, int span_r) -> void {
        int cap = init_cap;
        int start_l = fam.empty() ? cb.first_l : fam.back().l;
        int max_l = fam.empty() ? cb.first_l : span_r + 1;
        std::optional<FileInterval> cand;
        while ((cand = next_candidate(cand, start_l, max_l, cap, cb))) {
            FileInterval u = *cand;
            if (!fam.empty() && u.l == fam.back().l && u.r <= fam.back().r)
                continue;  // lexicographically not after the last member
            if (always_unsat(u, b))
                continue;
            fam.push_back(u);
            if (contains_unsat_core(fam, cores, b)) {
                fam.pop_back();
                cap = u.width() - 1;
                continue;
            }
            IncrementalCounter next(counter);
            if (!next.add(u, binom)) {
                record_unsat_core(fam, cores);
                fam.pop_back();
                cap = u.width() - 1;
                continue;
            }
            int new_span = std::max(span_r, u.r);
            FamilyRecord rec;
            rec.family.cls = cls;
            rec.family.members = fam;
            rec.solutions = *next.result();
            rec.span_width = cls == FamilyClass::edge ? new_span : new_span - 1;
            sink(rec);
            self(self, next, new_span);
            fam.pop_back();
        }
    };
    IncrementalCounter root(b);
    dfs(dfs, root, 0);
}

// Core cache file: one "<n> <edge|interior> <key>" line per entry, sorted.
inline void save_cores(const UnsatCoreSet& cores, BoardSize b, std::ostream& out) {
    for (std::uint64_t k : cores.edge_keys.sorted_keys())
        out << b.n << " edge " << canonical_key(detail::unpack_key(k)) << "\n";
    for (std::uint64_t k : cores.interior_keys.sorted_keys())
        out << b.n << " interior " << canonical_key(detail::unpack_key(k)) << "\n";
}

namespace detail {

// Parses "3-5,4-7" into intervals; nothing on any malformed piece.
inline std::optional<std::vector<FileInterval>> parse_interval_list(const std::string& text) {
    std::vector<FileInterval> out;
    std::istringstream in(text);
    std::string item;
    while (std::getline(in, item, ',')) {
        int l = 0, r = 0;
        char dash = 0;
        std::istringstream is(item);
        if (!(is >> l >> dash >> r) || dash != '-' || !is.eof() || l < 1 || r < l)
            return std::nullopt;
        out.push_back(FileInterval{l, r});
    }
    if (out.empty())
        return std::nullopt;
    return out;
}

}  // namespace detail

inline UnsatCoreSet load_cores(BoardSize b, std::istream& in) {
    UnsatCoreSet out;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty())
            continue;
        std::istringstream ls(line);
        int n = 0;
        std::string kind, key;
        if (!(ls >> n >> kind >> key) || n != b.n)
            continue;
        auto members = detail::parse_interval_list(key);
        if (!members)
            continue;
        if (kind == "edge")
            out.edge_keys.insert(detail::pack_canonical(*members));
        else if (kind == "interior")
            out.interior_keys.insert(detail::pack_interior(*members));
    }
    return out;
}

}  // namespace pawncensus

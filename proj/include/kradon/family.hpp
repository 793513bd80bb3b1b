#pragma once

// Ground sets, element sets, and canonical set families. An element set is a
// single 64-bit word (elements 0..n-1 internally, rendered 1..n in text), and
// a family keeps its members deduplicated and sorted by (size, numeric bits)
// so levels are contiguous runs.

#include <algorithm>
#include <initializer_list>
#include <span>
#include <vector>

#include "kradon/util.hpp"

namespace kradon {

inline constexpr unsigned kMaxGround = 64;

struct GroundSize {
    unsigned n = 0;

    GroundSize() = default;
    explicit GroundSize(unsigned size) : n(size) {
        if (n < 1 || n > kMaxGround)
            throw malformed_input("ground size must be between 1 and " + std::to_string(kMaxGround) +
                                  ", got " + std::to_string(size));
    }

    std::uint64_t mask() const { return n == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1; }
    friend bool operator==(GroundSize a, GroundSize b) { return a.n == b.n; }
    friend bool operator!=(GroundSize a, GroundSize b) { return a.n != b.n; }
};

struct ElementSet {
    std::uint64_t bits = 0;

    ElementSet() = default;
    explicit ElementSet(std::uint64_t b) : bits(b) {}

    // Elements given as internal 0-based indices.
    static ElementSet of_indices(std::initializer_list<unsigned> idx) {
        ElementSet s;
        for (unsigned i : idx) {
            if (i >= kMaxGround) throw malformed_input("element index out of range");
            s.bits |= std::uint64_t{1} << i;
        }
        return s;
    }

    // Elements given as 1-based labels, the convention of all text formats.
    static ElementSet of_labels(std::span<const unsigned> labels) {
        ElementSet s;
        for (unsigned l : labels) {
            if (l < 1 || l > kMaxGround) throw malformed_input("element label out of range");
            s.bits |= std::uint64_t{1} << (l - 1);
        }
        return s;
    }
    static ElementSet of_labels(std::initializer_list<unsigned> labels) {
        return of_labels(std::span<const unsigned>(labels.begin(), labels.size()));
    }

    static ElementSet full(GroundSize g) { return ElementSet{g.mask()}; }

    unsigned size() const { return static_cast<unsigned>(std::popcount(bits)); }
    bool empty() const { return bits == 0; }
    bool contains(unsigned idx) const { return (bits >> idx) & 1; }
    bool subset_of(ElementSet o) const { return (bits & ~o.bits) == 0; }
    bool fits(GroundSize g) const { return (bits & ~g.mask()) == 0; }

    ElementSet unite(ElementSet o) const { return ElementSet{bits | o.bits}; }
    ElementSet intersect(ElementSet o) const { return ElementSet{bits & o.bits}; }
    ElementSet minus(ElementSet o) const { return ElementSet{bits & ~o.bits}; }
    unsigned intersection_size(ElementSet o) const {
        return static_cast<unsigned>(std::popcount(bits & o.bits));
    }

    template <typename Fn>
    void for_each_element(Fn&& fn) const {
        for (std::uint64_t m = bits; m != 0; m &= m - 1)
            fn(static_cast<unsigned>(std::countr_zero(m)));
    }

    friend bool operator==(ElementSet a, ElementSet b) { return a.bits == b.bits; }
    friend bool operator!=(ElementSet a, ElementSet b) { return a.bits != b.bits; }
};

// Canonical member order: smaller sets first, then by numeric bit value.
inline bool canonical_less(ElementSet a, ElementSet b) {
    unsigned sa = a.size(), sb = b.size();
    if (sa != sb) return sa < sb;
    return a.bits < b.bits;
}

class SetFamily {
public:
    SetFamily() : ground_(1) {}
    explicit SetFamily(GroundSize g) : ground_(g) {}

    GroundSize ground() const { return ground_; }
    std::size_t size() const { return members_.size(); }
    bool empty() const { return members_.empty(); }
    std::span<const ElementSet> members() const { return members_; }
    ElementSet member(std::size_t i) const { return members_[i]; }

    bool contains(ElementSet s) const {
        auto it = std::lower_bound(members_.begin(), members_.end(), s, canonical_less);
        return it != members_.end() && *it == s;
    }

    friend bool operator==(const SetFamily& a, const SetFamily& b) {
        return a.ground_ == b.ground_ && a.members_ == b.members_;
    }
    friend bool operator!=(const SetFamily& a, const SetFamily& b) { return !(a == b); }

private:
    friend SetFamily make_family(GroundSize, std::vector<ElementSet>);
    friend SetFamily from_sorted_members(GroundSize, std::vector<ElementSet>);

    GroundSize ground_;
    std::vector<ElementSet> members_;
};

// Builds a canonical family: validates members against the ground set, sorts
// by (size, bits), and drops duplicates. Idempotent and order-insensitive.
inline SetFamily make_family(GroundSize ground, std::vector<ElementSet> sets) {
    for (ElementSet s : sets)
        if (!s.fits(ground))
            throw malformed_input("set uses elements outside ground set of size " +
                                  std::to_string(ground.n));
    std::sort(sets.begin(), sets.end(), canonical_less);
    sets.erase(std::unique(sets.begin(), sets.end()), sets.end());
    SetFamily f(ground);
    f.members_ = std::move(sets);
    return f;
}

// Internal fast path: members must already be canonical (sorted, unique,
// within ground). Used where the invariant is guaranteed by construction.
inline SetFamily from_sorted_members(GroundSize ground, std::vector<ElementSet> sorted) {
    SetFamily f(ground);
    f.members_ = std::move(sorted);
    return f;
}

inline bool t_intersects(ElementSet a, ElementSet b, unsigned t) {
    return a.intersection_size(b) >= t;
}

// Subfamily of members containing `center`. star(f, {}) == f.
inline SetFamily star(const SetFamily& f, ElementSet center) {
    std::vector<ElementSet> out;
    for (ElementSet m : f.members())
        if (center.subset_of(m)) out.push_back(m);
    return from_sorted_members(f.ground(), std::move(out));
}

inline std::uint64_t star_size(const SetFamily& f, ElementSet center) {
    std::uint64_t c = 0;
    for (ElementSet m : f.members())
        if (center.subset_of(m)) ++c;
    return c;
}

// Members of size exactly r. Canonical order makes this a contiguous run.
inline SetFamily level(const SetFamily& f, unsigned r) {
    auto ms = f.members();
    auto lo = std::partition_point(ms.begin(), ms.end(),
                                   [r](ElementSet s) { return s.size() < r; });
    auto hi = std::partition_point(lo, ms.end(), [r](ElementSet s) { return s.size() <= r; });
    return from_sorted_members(f.ground(), std::vector<ElementSet>(lo, hi));
}

// Members of size at most r.
inline SetFamily level_at_most(const SetFamily& f, unsigned r) {
    auto ms = f.members();
    auto hi = std::partition_point(ms.begin(), ms.end(),
                                   [r](ElementSet s) { return s.size() <= r; });
    return from_sorted_members(f.ground(), std::vector<ElementSet>(ms.begin(), hi));
}

// Every ordered pair of members (including a member with itself) shares at
// least t elements. Implies every member has size >= t. Empty family: true.
inline bool is_t_intersecting(const SetFamily& f, unsigned t) {
    auto ms = f.members();
    for (std::size_t i = 0; i < ms.size(); ++i) {
        if (ms[i].size() < t) return false;
        for (std::size_t j = i + 1; j < ms.size(); ++j)
            if (ms[i].intersection_size(ms[j]) < t) return false;
    }
    return true;
}

inline ElementSet common_intersection(const SetFamily& f) {
    if (f.empty()) throw precondition_error("common intersection of an empty family");
    ElementSet acc = f.member(0);
    for (ElementSet m : f.members()) acc = acc.intersect(m);
    return acc;
}

// True iff all members share t common elements (a t-star of itself).
inline bool is_trivial_t_intersecting(const SetFamily& f, unsigned t) {
    if (f.empty()) throw precondition_error("trivial t-intersection is undefined for an empty family");
    return common_intersection(f).size() >= t;
}

// Every member of each family shares at least t elements with every member of
// every other family. Empty families are vacuously fine.
inline bool are_cross_t_intersecting(std::span<const SetFamily> families, unsigned t) {
    if (families.size() < 2)
        throw precondition_error("cross intersection needs at least two families");
    GroundSize g = families[0].ground();
    for (const SetFamily& f : families)
        if (f.ground() != g) throw malformed_input("cross intersection across different ground sets");
    for (std::size_t i = 0; i < families.size(); ++i)
        for (std::size_t j = i + 1; j < families.size(); ++j)
            for (ElementSet a : families[i].members())
                for (ElementSet b : families[j].members())
                    if (a.intersection_size(b) < t) return false;
    return true;
}

// Members of `pool` that t-intersect every member of `f`. With f empty this
// is all of pool.
inline SetFamily t_transversals(const SetFamily& pool, const SetFamily& f, unsigned t) {
    if (pool.ground() != f.ground())
        throw malformed_input("transversals require a shared ground set");
    std::vector<ElementSet> out;
    for (ElementSet b : pool.members()) {
        bool ok = true;
        for (ElementSet a : f.members())
            if (b.intersection_size(a) < t) { ok = false; break; }
        if (ok) out.push_back(b);
    }
    return from_sorted_members(pool.ground(), std::move(out));
}

}  // namespace kradon

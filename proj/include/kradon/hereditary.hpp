#pragma once

// Hereditary families (downsets) represented by their bases, the maximal
// members. Includes level expansion with a lazily filled cache, graph
// independence families, exhaustive enumeration of all downsets on small
// grounds, and seeded random generation.

#include <map>
#include <memory>
#include <mutex>
#include <set>

#include "kradon/family.hpp"

namespace kradon {

// Maximal members of f: members contained in no other member.
inline SetFamily bases_of(const SetFamily& f) {
    std::vector<ElementSet> out;
    auto ms = f.members();
    for (std::size_t i = 0; i < ms.size(); ++i) {
        bool maximal = true;
        for (std::size_t j = 0; j < ms.size(); ++j)
            if (j != i && ms[i].subset_of(ms[j]) && ms[i] != ms[j]) { maximal = false; break; }
        if (maximal) out.push_back(ms[i]);
    }
    return from_sorted_members(f.ground(), std::move(out));
}

// Downward closed, i.e. removing any single element from a member stays in f.
// The empty family counts as hereditary.
inline bool is_hereditary(const SetFamily& f) {
    for (ElementSet m : f.members()) {
        bool all_in = true;
        m.for_each_element([&](unsigned e) {
            if (!f.contains(ElementSet{m.bits & ~(std::uint64_t{1} << e)})) all_in = false;
        });
        if (!all_in) return false;
    }
    return true;
}

// Size of a smallest base (smallest maximal member).
inline unsigned mu_of(const SetFamily& f) {
    if (f.empty()) throw precondition_error("mu is undefined for an empty family");
    // Canonical order puts the smallest base first.
    return bases_of(f).member(0).size();
}

// { F \ x : F in f and F contains x }. Distinct members stay distinct.
inline SetFamily quotient(const SetFamily& f, ElementSet x) {
    std::vector<ElementSet> out;
    for (ElementSet m : f.members())
        if (x.subset_of(m)) out.push_back(m.minus(x));
    if (out.empty()) throw precondition_error("quotient by a set with an empty star");
    std::sort(out.begin(), out.end(), canonical_less);
    return from_sorted_members(f.ground(), std::move(out));
}

// Non-empty ascending list of member sizes to take from a hereditary family.
class LevelSelector {
public:
    explicit LevelSelector(std::vector<unsigned> sizes) : sizes_(std::move(sizes)) {
        if (sizes_.empty()) throw malformed_input("level selector must be non-empty");
        std::sort(sizes_.begin(), sizes_.end());
        sizes_.erase(std::unique(sizes_.begin(), sizes_.end()), sizes_.end());
        if (sizes_.back() > kMaxGround) throw malformed_input("level selector size out of range");
    }

    const std::vector<unsigned>& sizes() const { return sizes_; }
    unsigned min_size() const { return sizes_.front(); }
    unsigned max_size() const { return sizes_.back(); }
    bool contains(unsigned s) const {
        return std::binary_search(sizes_.begin(), sizes_.end(), s);
    }

    friend bool operator==(const LevelSelector& a, const LevelSelector& b) {
        return a.sizes_ == b.sizes_;
    }

private:
    std::vector<unsigned> sizes_;
};

class HereditaryFamily {
public:
    // Reduces the given sets to the antichain of maximal ones. The input must
    // be non-empty; a single empty base yields the family {∅} with mu = 0.
    static HereditaryFamily from_bases(GroundSize ground, std::vector<ElementSet> sets) {
        if (sets.empty()) throw malformed_input("hereditary family needs at least one base");
        SetFamily all = make_family(ground, std::move(sets));
        SetFamily maximal = bases_of(all);
        return HereditaryFamily(ground, std::move(maximal));
    }

    GroundSize ground() const { return ground_; }
    const SetFamily& bases() const { return bases_; }
    unsigned mu() const { return mu_; }

    bool member(ElementSet s) const {
        for (ElementSet b : bases_.members())
            if (s.subset_of(b)) return true;
        return false;
    }

    // Level s, computed by enumerating s-subsets of each base with dedup, and
    // cached. The cache is filled once per level; concurrent readers see
    // either nothing or the complete level. The returned reference points
    // into the cache, whose entries are never evicted, so it stays valid for
    // the lifetime of the family and of every copy sharing the cache.
    const SetFamily& level(unsigned s) const {
        {
            std::lock_guard<std::mutex> lock(cache_->mu);
            auto it = cache_->levels.find(s);
            if (it != cache_->levels.end()) return it->second;
        }
        SetFamily lvl = compute_level(s);
        std::lock_guard<std::mutex> lock(cache_->mu);
        return cache_->levels.emplace(s, std::move(lvl)).first->second;
    }

    // Union of the selected levels. Levels are disjoint by size, so the
    // canonical order is their concatenation in ascending size.
    SetFamily expand_levels(const LevelSelector& sel) const {
        std::vector<ElementSet> out;
        for (unsigned s : sel.sizes()) {
            const SetFamily& lvl = level(s);
            out.insert(out.end(), lvl.members().begin(), lvl.members().end());
        }
        return from_sorted_members(ground_, std::move(out));
    }

    // All members of size at most r.
    SetFamily expand_up_to(unsigned r) const {
        std::vector<unsigned> sizes;
        for (unsigned s = 0; s <= r; ++s) sizes.push_back(s);
        return expand_levels(LevelSelector(std::move(sizes)));
    }

private:
    HereditaryFamily(GroundSize ground, SetFamily maximal_bases)
        : ground_(ground), bases_(std::move(maximal_bases)),
          mu_(bases_.member(0).size()), cache_(std::make_shared<Cache>()) {}

    SetFamily compute_level(unsigned s) const {
        std::vector<ElementSet> out;
        for (ElementSet b : bases_.members()) {
            if (b.size() < s) continue;
            for_each_subset_of_size(b.bits, s, [&](std::uint64_t sub) {
                out.push_back(ElementSet{sub});
            });
        }
        std::sort(out.begin(), out.end(), canonical_less);
        out.erase(std::unique(out.begin(), out.end()), out.end());
        return from_sorted_members(ground_, std::move(out));
    }

    struct Cache {
        std::mutex mu;
        std::map<unsigned, SetFamily> levels;
    };

    GroundSize ground_;
    SetFamily bases_;
    unsigned mu_;
    std::shared_ptr<Cache> cache_;
};

struct Graph {
    GroundSize vertices{1};
    std::vector<std::pair<unsigned, unsigned>> edges;  // 0-based, u < v

    Graph(GroundSize n, std::vector<std::pair<unsigned, unsigned>> e)
        : vertices(n), edges(std::move(e)) {
        std::set<std::pair<unsigned, unsigned>> seen;
        for (auto& [u, v] : edges) {
            if (u >= vertices.n || v >= vertices.n)
                throw malformed_input("graph edge endpoint out of range");
            if (u == v) throw malformed_input("graph has a loop");
            if (u > v) std::swap(u, v);
            if (!seen.insert({u, v}).second) throw malformed_input("graph has a duplicate edge");
        }
        std::sort(edges.begin(), edges.end());
    }

    std::vector<std::uint64_t> adjacency() const {
        std::vector<std::uint64_t> adj(vertices.n, 0);
        for (auto [u, v] : edges) {
            adj[u] |= std::uint64_t{1} << v;
            adj[v] |= std::uint64_t{1} << u;
        }
        return adj;
    }
};

namespace detail {

// Bron-Kerbosch with pivoting over an explicit adjacency, used to list the
// maximal independent sets of a graph as cliques of its complement.
inline void maximal_cliques(const std::vector<std::uint64_t>& adj, std::uint64_t r,
                            std::uint64_t p, std::uint64_t x, std::vector<ElementSet>& out) {
    if (p == 0 && x == 0) {
        out.push_back(ElementSet{r});
        return;
    }
    std::uint64_t px = p | x;
    unsigned pivot = 0;
    int best = -1;
    for (std::uint64_t m = px; m != 0; m &= m - 1) {
        unsigned u = static_cast<unsigned>(std::countr_zero(m));
        int deg = std::popcount(p & adj[u]);
        if (deg > best) { best = deg; pivot = u; }
    }
    std::uint64_t candidates = p & ~adj[pivot];
    for (std::uint64_t m = candidates; m != 0; m &= m - 1) {
        unsigned v = static_cast<unsigned>(std::countr_zero(m));
        std::uint64_t vbit = std::uint64_t{1} << v;
        maximal_cliques(adj, r | vbit, p & adj[v], x & adj[v], out);
        p &= ~vbit;
        x |= vbit;
    }
}

}  // namespace detail

// Hereditary family whose bases are the maximal independent sets of g.
inline HereditaryFamily independence_family(const Graph& g) {
    auto adj = g.adjacency();
    std::uint64_t all = g.vertices.mask();
    // Independent sets of g are cliques of the complement graph.
    std::vector<std::uint64_t> coadj(g.vertices.n);
    for (unsigned v = 0; v < g.vertices.n; ++v)
        coadj[v] = all & ~adj[v] & ~(std::uint64_t{1} << v);
    std::vector<ElementSet> bases;
    detail::maximal_cliques(coadj, 0, all, 0, bases);
    return HereditaryFamily::from_bases(g.vertices, std::move(bases));
}

inline constexpr unsigned kMaxExhaustiveDownsetGround = 5;

namespace detail {

// All downsets on [n] as bitmasks over subset indices (bit s = subset with
// element bitmask s is present), built by the recursion
// D = D0 ∪ {S ∪ {n} : S ∈ D1} with downsets D1 ⊆ D0 on [n-1].
inline std::vector<std::uint32_t> downset_masks(unsigned n) {
    std::vector<std::uint32_t> cur = {0u, 1u};  // empty downset, {∅}
    for (unsigned i = 1; i <= n; ++i) {
        std::vector<std::uint32_t> next;
        unsigned shift = 1u << (i - 1);
        for (std::uint32_t d0 : cur)
            for (std::uint32_t d1 : cur)
                if ((d1 & ~d0) == 0) next.push_back(d0 | (d1 << shift));
        cur = std::move(next);
    }
    return cur;
}

}  // namespace detail

// Visits every non-empty downset on [n] exactly once, in a deterministic
// order, as a canonical SetFamily of all its members (including ∅). Returns
// the number visited. Exhaustive enumeration is limited to n <= 5; beyond
// that, sample with random_hereditary instead.
template <typename Visitor>
std::uint64_t enumerate_downsets(GroundSize ground, Visitor&& visit) {
    if (ground.n > kMaxExhaustiveDownsetGround)
        throw size_limit_error("exhaustive-downset-ground",
                               "exhaustive downset enumeration is limited to ground size " +
                                   std::to_string(kMaxExhaustiveDownsetGround) +
                                   "; use random_hereditary sampling for larger grounds");
    std::uint64_t count = 0;
    for (std::uint32_t mask : detail::downset_masks(ground.n)) {
        if (mask == 0) continue;
        std::vector<ElementSet> members;
        for (std::uint32_t m = mask; m != 0; m &= m - 1)
            members.push_back(ElementSet{static_cast<std::uint64_t>(std::countr_zero(m))});
        std::sort(members.begin(), members.end(), canonical_less);
        visit(from_sorted_members(ground, std::move(members)));
        ++count;
    }
    return count;
}

// Deterministic random hereditary family: draws distinct bases of sizes in
// [size_lo, size_hi] until base_count of them (or every possible one) has
// been seen, then reduces to the antichain of maximal sets.
inline HereditaryFamily random_hereditary(GroundSize ground, unsigned base_count,
                                          unsigned size_lo, unsigned size_hi,
                                          std::uint64_t seed) {
    if (base_count == 0) throw malformed_input("base count must be positive");
    if (size_lo < 1 || size_lo > size_hi || size_hi > ground.n)
        throw malformed_input("base size range must satisfy 1 <= lo <= hi <= ground size");
    std::uint64_t pool = 0;
    for (unsigned s = size_lo; s <= size_hi; ++s)
        pool = checked_add(pool, binom(ground.n, s));
    std::uint64_t target = std::min<std::uint64_t>(base_count, pool);
    SeededRng rng(seed);
    std::set<std::uint64_t> drawn;
    while (drawn.size() < target) {
        unsigned s = static_cast<unsigned>(rng.range(size_lo, size_hi));
        std::uint64_t rank = rng.below(binom(ground.n, s));
        drawn.insert(combination_at_rank(ground.n, s, rank));
    }
    std::vector<ElementSet> bases;
    for (std::uint64_t b : drawn) bases.push_back(ElementSet{b});
    return HereditaryFamily::from_bases(ground, std::move(bases));
}

}  // namespace kradon

#pragma once

// Exact optimizers: maximum t-intersecting subfamilies (max clique over the
// t-intersection graph), star catalogs, the transversal Galois closure, and
// maximum cross-t-intersecting families for k parts under sum or product
// objectives. All tie-breaking picks the lexicographically least witness in
// canonical member order, so reports do not depend on timing or worker count.

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <functional>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "kradon/hereditary.hpp"
#include "kradon/lemmas.hpp"

namespace kradon {

namespace detail {

// Clique search over an explicit graph with greedy-coloring bounds. Vertex
// order is fixed, so results are deterministic.
struct CliqueGraph {
    std::size_t n = 0;
    std::vector<DynBits> adj;

    explicit CliqueGraph(std::size_t size) : n(size), adj(size, DynBits(size)) {}

    void add_edge(std::size_t u, std::size_t v) {
        adj[u].set(v);
        adj[v].set(u);
    }

    // Greedy coloring of `cand` in index order. Returns vertices sorted by
    // ascending color, paired with their color (1-based). The color of a
    // vertex bounds the size of any clique inside the earlier portion.
    std::vector<std::pair<std::size_t, unsigned>> color_order(const DynBits& cand) const {
        std::vector<DynBits> classes;
        std::vector<std::vector<std::size_t>> members;
        for (std::size_t v = cand.next_set(0); v < n; v = cand.next_set(v + 1)) {
            bool placed = false;
            for (std::size_t c = 0; c < classes.size(); ++c) {
                DynBits overlap = classes[c];
                overlap &= adj[v];
                if (overlap.none()) {
                    classes[c].set(v);
                    members[c].push_back(v);
                    placed = true;
                    break;
                }
            }
            if (!placed) {
                classes.emplace_back(n);
                classes.back().set(v);
                members.push_back({v});
            }
        }
        std::vector<std::pair<std::size_t, unsigned>> out;
        for (std::size_t c = 0; c < members.size(); ++c)
            for (std::size_t v : members[c]) out.emplace_back(v, static_cast<unsigned>(c + 1));
        return out;
    }

    // Size of a maximum clique within cand. Stops early once `stop_at` is
    // reached (useful for feasibility queries).
    std::size_t max_clique(const DynBits& cand, std::size_t stop_at = SIZE_MAX) const {
        std::size_t best = 0;
        expand_max(cand, 0, best, stop_at);
        return best;
    }

    // Calls cb(clique) for every clique of size exactly `target` within cand.
    // cb returns false to stop early; the function returns false if stopped.
    template <typename Cb>
    bool for_each_clique_of_size(const DynBits& cand, std::size_t target, Cb&& cb) const {
        if (target == 0) return true;
        DynBits current(n);
        return expand_enum(cand, current, 0, target, cb);
    }

private:
    void expand_max(const DynBits& cand, std::size_t rsize, std::size_t& best,
                    std::size_t stop_at) const {
        if (best >= stop_at) return;
        if (cand.none()) {
            if (rsize > best) best = rsize;
            return;
        }
        auto order = color_order(cand);
        DynBits remaining = cand;
        for (std::size_t pos = order.size(); pos-- > 0;) {
            auto [v, color] = order[pos];
            if (rsize + color <= best) return;
            DynBits next = remaining;
            next &= adj[v];
            expand_max(next, rsize + 1, best, stop_at);
            if (best >= stop_at) return;
            remaining.reset(v);
        }
    }

    template <typename Cb>
    bool expand_enum(const DynBits& cand, DynBits& current, std::size_t rsize,
                     std::size_t target, Cb&& cb) const {
        if (rsize == target) return cb(current);
        auto order = color_order(cand);
        DynBits remaining = cand;
        for (std::size_t pos = order.size(); pos-- > 0;) {
            auto [v, color] = order[pos];
            if (rsize + color < target) return true;  // smaller colors follow
            DynBits next = remaining;
            next &= adj[v];
            current.set(v);
            if (!expand_enum(next, current, rsize + 1, target, cb)) {
                current.reset(v);
                return false;
            }
            current.reset(v);
            remaining.reset(v);
        }
        return true;
    }
};

// t-intersection graph of f restricted to members of size >= t. vertex i maps
// to member vertex_members[i].
inline CliqueGraph t_intersection_graph(const SetFamily& f, unsigned t,
                                        std::vector<ElementSet>& vertex_members) {
    vertex_members.clear();
    for (ElementSet m : f.members())
        if (m.size() >= t) vertex_members.push_back(m);
    CliqueGraph g(vertex_members.size());
    for (std::size_t i = 0; i < vertex_members.size(); ++i)
        for (std::size_t j = i + 1; j < vertex_members.size(); ++j)
            if (vertex_members[i].intersection_size(vertex_members[j]) >= t) g.add_edge(i, j);
    return g;
}

}  // namespace detail

struct MaxIntersectingResult {
    std::uint64_t size = 0;
    SetFamily witness;
};

// Largest t-intersecting subfamily of f, with the lexicographically least
// witness (as an ascending sequence of canonical member indices).
inline MaxIntersectingResult max_t_intersecting(const SetFamily& f, unsigned t) {
    std::vector<ElementSet> verts;
    detail::CliqueGraph g = detail::t_intersection_graph(f, t, verts);
    DynBits all(g.n, true);
    std::size_t omega = g.max_clique(all);
    // Build the least witness greedily: extend with the smallest vertex that
    // still allows an omega-clique using only later vertices.
    std::vector<ElementSet> chosen;
    DynBits cand = all;
    std::size_t start = 0;
    while (chosen.size() < omega) {
        for (std::size_t v = cand.next_set(start); v < g.n; v = cand.next_set(v + 1)) {
            // Only vertices after v may follow in the ascending sequence.
            DynBits tail = cand;
            tail &= g.adj[v];
            tail.clear_below(v + 1);
            std::size_t need = omega - chosen.size() - 1;
            if (g.max_clique(tail, need) >= need) {
                chosen.push_back(verts[v]);
                cand = tail;
                start = v + 1;
                break;
            }
        }
    }
    MaxIntersectingResult res;
    res.size = omega;
    res.witness = from_sorted_members(f.ground(), std::move(chosen));
    return res;
}

// Visits every maximum t-intersecting subfamily. cb returns false to stop
// early; returns false if stopped.
template <typename Cb>
bool for_each_maximum_t_intersecting(const SetFamily& f, unsigned t, Cb&& cb) {
    std::vector<ElementSet> verts;
    detail::CliqueGraph g = detail::t_intersection_graph(f, t, verts);
    DynBits all(g.n, true);
    std::size_t omega = g.max_clique(all);
    if (omega == 0) return cb(from_sorted_members(f.ground(), {}));
    return g.for_each_clique_of_size(all, omega, [&](const DynBits& clique) {
        std::vector<ElementSet> members;
        for (std::size_t v = clique.next_set(0); v < g.n; v = clique.next_set(v + 1))
            members.push_back(verts[v]);
        return cb(from_sorted_members(f.ground(), std::move(members)));
    });
}

struct StarCatalog {
    unsigned t = 0;
    std::vector<ElementSet> centers;        // candidate centers, canonical order
    std::vector<std::uint64_t> sizes;       // star size per center
    std::uint64_t best = 0;                 // largest star size (0 without centers)
    std::vector<ElementSet> best_centers;   // centers attaining `best`
};

inline StarCatalog star_catalog_from_centers(const SetFamily& f, const SetFamily& centers,
                                             unsigned t) {
    StarCatalog cat;
    cat.t = t;
    for (ElementSet c : centers.members()) {
        if (c.size() != t)
            throw precondition_error("star catalog centers must all have size t");
        cat.centers.push_back(c);
        cat.sizes.push_back(star_size(f, c));
    }
    for (std::uint64_t s : cat.sizes) cat.best = std::max(cat.best, s);
    for (std::size_t i = 0; i < cat.centers.size(); ++i)
        if (cat.sizes[i] == cat.best) cat.best_centers.push_back(cat.centers[i]);
    if (cat.centers.empty()) cat.best_centers.clear();
    return cat;
}

// Catalog of t-stars of the selected levels of h, with centers drawn from
// level t of h (stars centered outside h are empty, so this pool is
// exhaustive for hereditary hosts).
inline StarCatalog star_catalog(const HereditaryFamily& h, const LevelSelector& sel, unsigned t) {
    return star_catalog_from_centers(h.expand_levels(sel), h.level(t), t);
}

// f has the t-star property when some largest t-intersecting subfamily is a
// t-star, i.e. the max size equals the best star size.
inline bool has_t_star_property(const SetFamily& f, unsigned t, const StarCatalog& catalog) {
    return max_t_intersecting(f, t).size == catalog.best;
}

// Strict version: every largest t-intersecting subfamily is a t-star. A
// maximum subfamily is a t-star exactly when its members share t elements.
inline bool has_strict_t_star_property(const SetFamily& f, unsigned t,
                                       const StarCatalog& catalog) {
    if (!has_t_star_property(f, t, catalog)) return false;
    return for_each_maximum_t_intersecting(f, t, [&](const SetFamily& opt) {
        return opt.empty() || common_intersection(opt).size() >= t;
    });
}

// Galois closure T1(T2(a)) for the cross-t-intersection relation between f1
// and f2: extensive, monotone, and idempotent on subfamilies of f1.
inline SetFamily transversal_closure(const SetFamily& a, const SetFamily& f1,
                                     const SetFamily& f2, unsigned t) {
    for (ElementSet m : a.members())
        if (!f1.contains(m))
            throw precondition_error("closure argument must be a subfamily of the first family");
    return t_transversals(f1, t_transversals(f2, a, t), t);
}

enum class CrossMode { sum, product };

inline const char* to_string(CrossMode m) { return m == CrossMode::sum ? "sum" : "product"; }

class CrossInstance {
public:
    CrossInstance(HereditaryFamily host, unsigned t, std::vector<LevelSelector> selectors,
                  CrossMode mode)
        : host_(std::move(host)), t_(t), selectors_(std::move(selectors)), mode_(mode) {
        if (selectors_.size() < 2)
            throw malformed_input("cross instance needs at least two families");
        for (const LevelSelector& s : selectors_)
            if (s.max_size() > host_.ground().n)
                throw malformed_input("level selector exceeds the ground set");
    }

    const HereditaryFamily& host() const { return host_; }
    unsigned t() const { return t_; }
    CrossMode mode() const { return mode_; }
    unsigned k() const { return static_cast<unsigned>(selectors_.size()); }
    const std::vector<LevelSelector>& selectors() const { return selectors_; }

    // Largest selected level across all families (the parameter r).
    unsigned max_level() const {
        unsigned r = 0;
        for (const LevelSelector& s : selectors_) r = std::max(r, s.max_size());
        return r;
    }

    std::vector<SetFamily> families() const {
        std::vector<SetFamily> out;
        for (const LevelSelector& s : selectors_) out.push_back(host_.expand_levels(s));
        return out;
    }

private:
    HereditaryFamily host_;
    unsigned t_;
    std::vector<LevelSelector> selectors_;
    CrossMode mode_;
};

// Solver size caps. Environment variables KRADON_GUARDRAIL_<NAME> raise or
// lower each cap (PAIR_MEMBERS, CLOSED_SETS, TOTAL_MEMBERS, BRUTE_MEMBERS,
// BRUTE_PAIR_TOTAL).
struct Guardrails {
    std::uint64_t pair_members = 2000;      // per-family cap, k=2 closed-set mode
    std::uint64_t closed_sets = 1'000'000;  // closed sets enumerated before giving up
    std::uint64_t total_members = 30;       // sum of family sizes, general-k search
    std::uint64_t brute_members = 20;       // per-family cap, k=2 subset brute force
    std::uint64_t brute_pair_total = 24;    // |F1|+|F2| cap, k=3 subset brute force

    static Guardrails from_env() {
        Guardrails g;
        auto read = [](const char* name, std::uint64_t& slot) {
            if (const char* v = std::getenv(name)) {
                char* end = nullptr;
                unsigned long long parsed = std::strtoull(v, &end, 10);
                if (end == v || *end != '\0')
                    throw malformed_input(std::string("invalid value for ") + name);
                slot = parsed;
            }
        };
        read("KRADON_GUARDRAIL_PAIR_MEMBERS", g.pair_members);
        read("KRADON_GUARDRAIL_CLOSED_SETS", g.closed_sets);
        read("KRADON_GUARDRAIL_TOTAL_MEMBERS", g.total_members);
        read("KRADON_GUARDRAIL_BRUTE_MEMBERS", g.brute_members);
        read("KRADON_GUARDRAIL_BRUTE_PAIR_TOTAL", g.brute_pair_total);
        return g;
    }
};

struct RegimeFlags {
    bool mu_meets_sum_threshold = false;
    bool mu_meets_product_threshold = false;
    bool mu_meets_full_family_threshold = false;
    bool level_star_regime = false;  // mu >= (t+1)(r-t+1)
};

enum class Classification { common_star, single_full, tie, other_extremal };

inline const char* to_string(Classification c) {
    switch (c) {
        case Classification::common_star: return "CommonStar";
        case Classification::single_full: return "SingleFull";
        case Classification::tie: return "Tie";
        case Classification::other_extremal: return "OtherExtremal";
    }
    return "?";
}

struct PredictionReport {
    std::uint64_t value = 0;
    std::uint64_t star_config = 0;  // sum or product of the best star sizes
    std::vector<std::uint64_t> family_sizes;
    bool common_center_exists = false;
    // Sum mode only: 1 = star configuration dominates, 2 = one full family
    // dominates, 3 = tie. 0 in product mode.
    int sum_equality_case = 0;
    RegimeFlags regime;
};

// Centers common to every catalog's set of best centers.
inline std::vector<ElementSet> common_best_centers(std::span<const StarCatalog> catalogs) {
    if (catalogs.empty()) return {};
    std::vector<ElementSet> acc = catalogs[0].best_centers;
    for (std::size_t i = 1; i < catalogs.size(); ++i) {
        std::vector<ElementSet> next;
        for (ElementSet c : acc)
            for (ElementSet d : catalogs[i].best_centers)
                if (c == d) { next.push_back(c); break; }
        acc = std::move(next);
    }
    return acc;
}

// The configuration bound: for sums, max of (sum of best star sizes) and each
// |F_i|; for products, the product of best star sizes. Also evaluates the
// regime flags against mu(host).
inline PredictionReport predict_optimum(const CrossInstance& inst,
                                        std::span<const StarCatalog> catalogs) {
    if (catalogs.size() != inst.k())
        throw precondition_error("prediction needs one star catalog per family");
    PredictionReport rep;
    std::uint64_t star_sum = 0, star_prod = 1, max_family = 0;
    auto families = inst.families();
    for (std::size_t i = 0; i < catalogs.size(); ++i) {
        star_sum = checked_add(star_sum, catalogs[i].best);
        star_prod = checked_mul(star_prod, catalogs[i].best);
        rep.family_sizes.push_back(families[i].size());
        max_family = std::max<std::uint64_t>(max_family, families[i].size());
    }
    rep.common_center_exists = !common_best_centers(catalogs).empty();
    if (inst.mode() == CrossMode::sum) {
        rep.star_config = star_sum;
        rep.value = std::max(star_sum, max_family);
        rep.sum_equality_case = star_sum > max_family ? 1 : star_sum < max_family ? 2 : 3;
    } else {
        rep.star_config = star_prod;
        rep.value = star_prod;
    }
    unsigned r = inst.max_level();
    unsigned t = inst.t();
    unsigned mu = inst.host().mu();
    if (r >= t && t >= 1) {
        Thresholds th = thresholds(r, t);
        rep.regime.mu_meets_sum_threshold = th.n_sum_fits && mu >= th.n_sum;
        rep.regime.mu_meets_product_threshold = th.n_prod_fits && mu >= th.n_prod;
        rep.regime.mu_meets_full_family_threshold =
            rep.regime.mu_meets_sum_threshold && mu > r &&
            pow_at_least(mu - r, t, checked_mul(inst.k(), [&] {
                             std::uint64_t p = 1;
                             for (unsigned i = 0; i < t; ++i) p = checked_mul(p, r);
                             return p;
                         }()));
        rep.regime.level_star_regime = mu >= static_cast<std::uint64_t>(t + 1) * (r - t + 1);
    }
    return rep;
}

struct OptimumReport {
    CrossMode mode = CrossMode::sum;
    unsigned k = 0;
    unsigned t = 0;
    std::vector<LevelSelector> selectors;
    std::uint64_t optimum = 0;
    std::vector<SetFamily> witness;
    PredictionReport prediction;
    Classification classification = Classification::other_extremal;
    std::string note;
    std::string solver_mode;
};

// True when some center that is best for every family generates each witness
// family exactly.
inline bool witness_is_common_star(const std::vector<SetFamily>& witness,
                                   std::span<const SetFamily> families,
                                   std::span<const StarCatalog> catalogs) {
    for (ElementSet c : common_best_centers(catalogs)) {
        bool all = true;
        for (std::size_t i = 0; i < witness.size(); ++i)
            if (witness[i] != star(families[i], c)) { all = false; break; }
        if (all) return true;
    }
    return false;
}

// True when one family of maximum size is taken whole and all others are empty.
inline bool witness_is_single_full(const std::vector<SetFamily>& witness,
                                   std::span<const SetFamily> families) {
    std::uint64_t max_family = 0;
    for (const SetFamily& f : families) max_family = std::max<std::uint64_t>(max_family, f.size());
    for (std::size_t j = 0; j < witness.size(); ++j) {
        if (witness[j].size() != max_family || witness[j] != families[j]) continue;
        bool others_empty = true;
        for (std::size_t i = 0; i < witness.size(); ++i)
            if (i != j && !witness[i].empty()) { others_empty = false; break; }
        if (others_empty) return true;
    }
    return false;
}

// Classifies a witness against the two named extremal configurations.
inline std::pair<Classification, std::string> classify_optimum(
    const std::vector<SetFamily>& witness, std::uint64_t optimum, const CrossInstance& inst,
    std::span<const StarCatalog> catalogs, const PredictionReport& pred) {
    auto families = inst.families();
    bool common_star = witness_is_common_star(witness, families, catalogs);
    bool single_full = witness_is_single_full(witness, families);
    std::uint64_t max_family = 0;
    for (const SetFamily& f : families) max_family = std::max<std::uint64_t>(max_family, f.size());
    Classification cls;
    std::string note;
    if (inst.mode() == CrossMode::sum) {
        bool star_attains = pred.common_center_exists && pred.star_config == optimum;
        bool full_attains = max_family == optimum;
        if (star_attains && full_attains) cls = Classification::tie;
        else if (common_star) cls = Classification::common_star;
        else if (single_full) cls = Classification::single_full;
        else cls = Classification::other_extremal;
        if (cls == Classification::other_extremal && !pred.regime.mu_meets_sum_threshold)
            note = "below the sum-regime threshold";
    } else {
        cls = common_star ? Classification::common_star : Classification::other_extremal;
        if (cls == Classification::other_extremal && !pred.regime.mu_meets_product_threshold)
            note = "below the product-regime threshold";
    }
    return {cls, note};
}

namespace detail {

// Pairwise t-intersection rows between two families.
struct PairRows {
    std::size_t m1 = 0, m2 = 0;
    std::vector<DynBits> row1;  // per F1 member: compatible F2 members
    std::vector<DynBits> row2;  // per F2 member: compatible F1 members

    PairRows(const SetFamily& f1, const SetFamily& f2, unsigned t)
        : m1(f1.size()), m2(f2.size()), row1(m1, DynBits(m2)), row2(m2, DynBits(m1)) {
        for (std::size_t i = 0; i < m1; ++i)
            for (std::size_t j = 0; j < m2; ++j)
                if (f1.member(i).intersection_size(f2.member(j)) >= t) {
                    row1[i].set(j);
                    row2[j].set(i);
                }
    }

    DynBits transversals_of_1(const DynBits& a) const {
        DynBits out(m2, true);
        for (std::size_t i = a.next_set(0); i < m1; i = a.next_set(i + 1)) out &= row1[i];
        return out;
    }
    DynBits transversals_of_2(const DynBits& b) const {
        DynBits out(m1, true);
        for (std::size_t j = b.next_set(0); j < m2; j = b.next_set(j + 1)) out &= row2[j];
        return out;
    }
    DynBits closure(const DynBits& a) const { return transversals_of_2(transversals_of_1(a)); }
};

inline std::uint64_t pair_value(CrossMode mode, std::uint64_t a, std::uint64_t b) {
    return mode == CrossMode::sum ? a + b : a * b;
}

struct PairSolution {
    std::uint64_t value = 0;
    DynBits a, b;
    bool have = false;
};

inline void pair_offer(PairSolution& best, CrossMode mode, const DynBits& a, const DynBits& b) {
    std::uint64_t v = pair_value(mode, a.count(), b.count());
    if (!best.have || v > best.value ||
        (v == best.value && (DynBits::sequence_less(a, best.a) ||
                             (a == best.a && DynBits::sequence_less(b, best.b))))) {
        best.value = v;
        best.a = a;
        best.b = b;
        best.have = true;
    }
}

// Lectic-order enumeration of the closed sets of the closure operator.
// Returns false if more than `cap` closed sets were visited.
template <typename Yield>
bool enumerate_closed_sets(const PairRows& rows, std::uint64_t cap, Yield&& yield) {
    DynBits a = rows.closure(DynBits(rows.m1));
    std::uint64_t seen = 0;
    while (true) {
        if (++seen > cap) return false;
        yield(a);
        bool advanced = false;
        for (std::size_t i = rows.m1; i-- > 0;) {
            if (a.test(i)) continue;
            DynBits probe = a;
            probe.truncate_from(i);
            probe.set(i);
            DynBits closed = rows.closure(probe);
            DynBits closed_prefix = closed;
            closed_prefix.truncate_from(i);
            DynBits a_prefix = a;
            a_prefix.truncate_from(i);
            if (closed_prefix == a_prefix) {
                a = closed;
                advanced = true;
                break;
            }
        }
        if (!advanced) return true;
    }
}

// Exhaustive subset walk over F1 for k=2. Maintains the running transversal
// set along an include/exclude recursion.
inline void brute_pair(const PairRows& rows, CrossMode mode, std::size_t depth, DynBits& a,
                       const DynBits& t2, PairSolution& best) {
    if (depth == rows.m1) {
        pair_offer(best, mode, a, t2);
        return;
    }
    brute_pair(rows, mode, depth + 1, a, t2, best);  // exclude member `depth`
    a.set(depth);
    DynBits narrowed = t2;
    narrowed &= rows.row1[depth];
    brute_pair(rows, mode, depth + 1, a, narrowed, best);
    a.reset(depth);
}

// General-k exact search over per-member include/exclude decisions.
// Conflicts join members of different families sharing fewer than t elements.
class GeneralSearch {
public:
    GeneralSearch(const std::vector<SetFamily>& families, unsigned t, CrossMode mode)
        : mode_(mode), k_(families.size()) {
        for (const SetFamily& f : families) total_ += f.size();
        fam_of_.resize(total_);
        member_of_.resize(total_);
        for (std::size_t i = 0, v = 0; i < k_; ++i)
            for (std::size_t j = 0; j < families[i].size(); ++j, ++v) {
                fam_of_[v] = i;
                member_of_[v] = families[i].member(j);
            }
        conflicts_.assign(total_, DynBits(total_));
        family_mask_.assign(k_, DynBits(total_));
        for (std::size_t v = 0; v < total_; ++v) family_mask_[fam_of_[v]].set(v);
        for (std::size_t u = 0; u < total_; ++u)
            for (std::size_t v = u + 1; v < total_; ++v)
                if (fam_of_[u] != fam_of_[v] &&
                    member_of_[u].intersection_size(member_of_[v]) < t) {
                    conflicts_[u].set(v);
                    conflicts_[v].set(u);
                }
        // Static branch order: decreasing conflict degree, ties by index.
        std::vector<std::size_t> by_degree(total_);
        for (std::size_t v = 0; v < total_; ++v) by_degree[v] = v;
        std::stable_sort(by_degree.begin(), by_degree.end(), [&](std::size_t a, std::size_t b) {
            return conflicts_[a].count() > conflicts_[b].count();
        });
        rank_.resize(total_);
        for (std::size_t pos = 0; pos < total_; ++pos) rank_[by_degree[pos]] = pos;
    }

    std::size_t total() const { return total_; }
    std::size_t family_of(std::size_t v) const { return fam_of_[v]; }

    // Maximum objective subject to forced decisions, stopping early at
    // stop_at. Returns nullopt when the forced-in set is itself infeasible.
    std::optional<std::uint64_t> best_value(const DynBits& forced_in, const DynBits& forced_out,
                                            std::uint64_t stop_at) const {
        for (std::size_t v = forced_in.next_set(0); v < total_; v = forced_in.next_set(v + 1)) {
            DynBits clash = conflicts_[v];
            clash &= forced_in;
            if (clash.any()) return std::nullopt;
        }
        std::vector<std::uint64_t> chosen(k_, 0);
        DynBits avail(total_, true);
        avail.subtract(forced_out);
        for (std::size_t v = forced_in.next_set(0); v < total_; v = forced_in.next_set(v + 1)) {
            ++chosen[fam_of_[v]];
            avail.reset(v);
            avail.subtract(conflicts_[v]);
        }
        std::uint64_t best = 0;
        recurse(avail, chosen, best, stop_at);
        return best;
    }

private:
    std::uint64_t value_of(const std::vector<std::uint64_t>& chosen) const {
        std::uint64_t v = mode_ == CrossMode::sum ? 0 : 1;
        for (std::uint64_t c : chosen)
            v = mode_ == CrossMode::sum ? v + c : v * c;
        return v;
    }

    std::uint64_t bound_of(const DynBits& avail, const std::vector<std::uint64_t>& chosen) const {
        if (mode_ == CrossMode::sum) {
            std::uint64_t b = avail.count();
            for (std::uint64_t c : chosen) b += c;
            return b;
        }
        std::uint64_t b = 1;
        for (std::size_t i = 0; i < k_; ++i) {
            DynBits fam = avail;
            fam &= family_mask_[i];
            b *= chosen[i] + fam.count();
        }
        return b;
    }

    void recurse(const DynBits& avail, std::vector<std::uint64_t>& chosen, std::uint64_t& best,
                 std::uint64_t stop_at) const {
        if (best >= stop_at) return;
        std::uint64_t bound = bound_of(avail, chosen);
        if (bound <= best) return;
        // Branch on the available member that ranks first in the static
        // conflict-degree order.
        std::size_t pick = total_;
        std::size_t pick_rank = total_;
        for (std::size_t v = avail.next_set(0); v < total_; v = avail.next_set(v + 1))
            if (rank_[v] < pick_rank) { pick_rank = rank_[v]; pick = v; }
        if (pick == total_) {
            std::uint64_t v = value_of(chosen);
            if (v > best) best = v;
            return;
        }
        // Include.
        DynBits with = avail;
        with.reset(pick);
        with.subtract(conflicts_[pick]);
        ++chosen[fam_of_[pick]];
        recurse(with, chosen, best, stop_at);
        --chosen[fam_of_[pick]];
        // Exclude.
        DynBits without = avail;
        without.reset(pick);
        recurse(without, chosen, best, stop_at);
    }

    CrossMode mode_;
    std::size_t k_ = 0;
    std::size_t total_ = 0;
    std::vector<std::size_t> fam_of_;
    std::vector<ElementSet> member_of_;
    std::vector<DynBits> conflicts_;
    std::vector<DynBits> family_mask_;
    std::vector<std::size_t> rank_;
};

}  // namespace detail

// Exact maximum cross-t-intersecting configuration for the instance. Reports
// the optimum, a canonical witness, the configuration prediction, and the
// classification of the witness.
inline OptimumReport max_cross(const CrossInstance& inst,
                               const Guardrails& limits = Guardrails{}) {
    auto families = inst.families();
    const unsigned t = inst.t();
    const CrossMode mode = inst.mode();

    std::vector<StarCatalog> catalogs;
    for (const LevelSelector& sel : inst.selectors())
        catalogs.push_back(star_catalog(inst.host(), sel, t));

    OptimumReport rep;
    rep.mode = mode;
    rep.k = inst.k();
    rep.t = t;
    rep.selectors = inst.selectors();
    rep.prediction = predict_optimum(inst, catalogs);

    std::vector<DynBits> picked;  // per family, indices of chosen members

    if (inst.k() == 2) {
        const SetFamily &f1 = families[0], &f2 = families[1];
        if (f1.size() > limits.pair_members || f2.size() > limits.pair_members)
            throw size_limit_error("pair-members",
                                   "family size exceeds the k=2 cap of " +
                                       std::to_string(limits.pair_members) +
                                       " (KRADON_GUARDRAIL_PAIR_MEMBERS)");
        detail::PairRows rows(f1, f2, t);
        detail::PairSolution best;
        bool complete = detail::enumerate_closed_sets(rows, limits.closed_sets, [&](const DynBits& a) {
            detail::pair_offer(best, mode, a, rows.transversals_of_1(a));
        });
        if (!complete) {
            if (f1.size() > limits.brute_members)
                throw size_limit_error("closed-sets",
                                       "closed-set enumeration exceeded the cap of " +
                                           std::to_string(limits.closed_sets) +
                                           " (KRADON_GUARDRAIL_CLOSED_SETS)");
            best = detail::PairSolution{};
            DynBits a(rows.m1);
            detail::brute_pair(rows, mode, 0, a, DynBits(rows.m2, true), best);
            rep.solver_mode = "subset-brute";
        } else {
            rep.solver_mode = "closed-set";
        }
        rep.optimum = best.value;
        if (mode == CrossMode::product && rep.optimum == 0) {
            picked.assign(2, DynBits(0));
            picked[0] = DynBits(rows.m1);
            picked[1] = DynBits(rows.m2);
        } else {
            picked.push_back(best.a);
            picked.push_back(best.b);
        }
    } else {
        std::uint64_t total = 0;
        for (const SetFamily& f : families) total += f.size();
        if (total <= limits.total_members) {
            detail::GeneralSearch search(families, t, mode);
            const std::size_t V = search.total();
            std::uint64_t opt =
                *search.best_value(DynBits(V), DynBits(V), std::numeric_limits<std::uint64_t>::max());
            rep.optimum = opt;
            rep.solver_mode = "branch-and-bound";
            picked.assign(inst.k(), DynBits(0));
            for (std::size_t i = 0; i < inst.k(); ++i) picked[i] = DynBits(families[i].size());
            if (opt > 0) {
                // Canonical witness: walk the members in family-major order
                // and keep each one whenever the optimum stays reachable with
                // it forced in. This prefers the earliest member indices.
                DynBits forced_in(V), forced_out(V);
                std::size_t v = 0;
                for (std::size_t i = 0; i < inst.k(); ++i) {
                    for (std::size_t j = 0; j < families[i].size(); ++j, ++v) {
                        forced_in.set(v);
                        auto reachable = search.best_value(forced_in, forced_out, opt);
                        if (reachable && *reachable >= opt) {
                            picked[i].set(j);
                        } else {
                            forced_in.reset(v);
                            forced_out.set(v);
                        }
                    }
                }
            }
        } else if (inst.k() == 3 && families[0].size() + families[1].size() <= limits.brute_pair_total) {
            rep.solver_mode = "subset-brute";
            rep.optimum = 0;
            // DFS over F1 and F2 subsets with running compatibility rows into
            // F2 and F3; F3 always takes everything still compatible.
            detail::PairRows r12(families[0], families[1], t);
            detail::PairRows r13(families[0], families[2], t);
            detail::PairRows r23(families[1], families[2], t);
            const std::size_t m1 = families[0].size(), m2 = families[1].size(),
                              m3 = families[2].size();
            DynBits a(m1), b(m2);
            std::uint64_t best_val = 0;
            std::vector<DynBits> best_pick{DynBits(m1), DynBits(m2), DynBits(m3)};
            bool have = false;
            auto offer = [&](const DynBits& pa, const DynBits& pb, const DynBits& pc) {
                std::uint64_t v = mode == CrossMode::sum
                                      ? pa.count() + pb.count() + pc.count()
                                      : pa.count() * pb.count() * pc.count();
                bool better = !have || v > best_val;
                if (!better && v == best_val) {
                    if (DynBits::sequence_less(pa, best_pick[0])) better = true;
                    else if (pa == best_pick[0] && DynBits::sequence_less(pb, best_pick[1])) better = true;
                    else if (pa == best_pick[0] && pb == best_pick[1] &&
                             DynBits::sequence_less(pc, best_pick[2])) better = true;
                }
                if (better) {
                    best_val = v;
                    best_pick = {pa, pb, pc};
                    have = true;
                }
            };
            std::function<void(std::size_t, DynBits, DynBits)> walk2 =
                [&](std::size_t depth, DynBits c3, DynBits allowed2) {
                    if (depth == m2) {
                        offer(a, b, c3);
                        return;
                    }
                    walk2(depth + 1, c3, allowed2);
                    if (!allowed2.test(depth)) return;
                    b.set(depth);
                    DynBits narrowed = c3;
                    narrowed &= r23.row1[depth];
                    walk2(depth + 1, narrowed, allowed2);
                    b.reset(depth);
                };
            std::function<void(std::size_t, DynBits, DynBits)> walk1 =
                [&](std::size_t depth, DynBits c2, DynBits c3) {
                    if (depth == m1) {
                        walk2(0, c3, c2);
                        return;
                    }
                    walk1(depth + 1, c2, c3);
                    a.set(depth);
                    DynBits n2 = c2;
                    n2 &= r12.row1[depth];
                    DynBits n3 = c3;
                    n3 &= r13.row1[depth];
                    walk1(depth + 1, n2, n3);
                    a.reset(depth);
                };
            walk1(0, DynBits(m2, true), DynBits(m3, true));
            rep.optimum = best_val;
            if (mode == CrossMode::product && best_val == 0)
                best_pick = {DynBits(m1), DynBits(m2), DynBits(m3)};
            picked = std::move(best_pick);
        } else {
            throw size_limit_error("total-members",
                                   "total family size exceeds the general-k cap of " +
                                       std::to_string(limits.total_members) +
                                       " (KRADON_GUARDRAIL_TOTAL_MEMBERS)");
        }
    }

    for (std::size_t i = 0; i < inst.k(); ++i) {
        std::vector<ElementSet> members;
        for (std::size_t j = picked[i].next_set(0); j < picked[i].size();
             j = picked[i].next_set(j + 1))
            members.push_back(families[i].member(j));
        rep.witness.push_back(from_sorted_members(inst.host().ground(), std::move(members)));
    }

    // Internal consistency: the witness must be feasible and attain the value.
    if (!are_cross_t_intersecting(rep.witness, t))
        throw std::logic_error("solver produced an infeasible witness");
    std::uint64_t check = mode == CrossMode::sum ? 0 : 1;
    for (const SetFamily& w : rep.witness)
        check = mode == CrossMode::sum ? check + w.size() : check * w.size();
    if (check != rep.optimum)
        throw std::logic_error("solver witness does not attain the reported optimum");

    auto [cls, note] = classify_optimum(rep.witness, rep.optimum, inst, catalogs, rep.prediction);
    rep.classification = cls;
    rep.note = note;
    return rep;
}

}  // namespace kradon

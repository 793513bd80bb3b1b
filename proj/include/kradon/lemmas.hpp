#pragma once

// Threshold formulas, the constructive union-bound descent and its sharpness
// witness, and exact-arithmetic verifiers for the counting inequalities that
// drive the star-property results. Every check reports hypothesis_not_met,
// holds, or fails; vacuous cases are never conflated with violations.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "kradon/hereditary.hpp"

namespace kradon {

namespace detail {

// Sign of lhs_a*lhs_b - rhs_a*rhs_b*rhs_c, computed exactly. The right side
// may exceed 128 bits, in which case it certainly exceeds the left side.
inline int compare_scaled(std::uint64_t lhs_a, std::uint64_t lhs_b, std::uint64_t rhs_a,
                          std::uint64_t rhs_b, std::uint64_t rhs_c) {
    unsigned __int128 lhs = static_cast<unsigned __int128>(lhs_a) * lhs_b;
    unsigned __int128 part = static_cast<unsigned __int128>(rhs_a) * rhs_b;
    if (rhs_c != 0 && part > ~static_cast<unsigned __int128>(0) / rhs_c) return -1;
    unsigned __int128 rhs = part * rhs_c;
    return lhs < rhs ? -1 : lhs > rhs ? 1 : 0;
}

}  // namespace detail

// Largest union size the descent can produce: max{2r, (r-t)(r-t+5)/2 + t-1}.
// Meaningful for t <= r; for t > r the first branch dominates any actual
// witness, and the value is still a safe upper bound for the pair case.
inline std::uint64_t union_bound(unsigned r, unsigned t) {
    std::int64_t d = static_cast<std::int64_t>(r) - static_cast<std::int64_t>(t);
    std::int64_t tail = d * (d + 5) / 2 + static_cast<std::int64_t>(t) - 1;
    std::int64_t pair = 2 * static_cast<std::int64_t>(r);
    return static_cast<std::uint64_t>(tail > pair ? tail : pair);
}

struct Thresholds {
    unsigned r = 0;
    unsigned t = 0;
    std::uint64_t union_bound = 0;         // max{2r, (r-t)(r-t+5)/2 + t-1}
    std::uint64_t n_sum = 0;               // (r-t+1)*C(union_bound, t+1) + r
    bool n_sum_fits = false;
    std::uint64_t n_prod = 0;              // (r-t)*C(r,t)*C(union_bound, t+1) + r
    bool n_prod_fits = false;
    std::uint64_t level_star_boundary = 0; // (t+1)(r-t+1)
    std::uint64_t star_mu_bound = 0;       // (r-t)*C(3r-2t-1, t+1) + r
    bool star_mu_bound_fits = false;
    std::uint64_t coarse_mu_bound = 0;     // r*C(3r, floor(3r/2))
    bool coarse_mu_bound_fits = false;
};

inline Thresholds thresholds(unsigned r, unsigned t) {
    if (t < 1 || t > r) throw malformed_input("thresholds need 1 <= t <= r");
    Thresholds th;
    th.r = r;
    th.t = t;
    th.union_bound = union_bound(r, t);
    th.level_star_boundary = static_cast<std::uint64_t>(t + 1) * (r - t + 1);
    auto scaled = [](std::optional<std::uint64_t> factor, std::optional<std::uint64_t> c,
                     std::uint64_t add) -> std::optional<std::uint64_t> {
        if (!factor || !c) return std::nullopt;
        if (*factor != 0 && *c > std::numeric_limits<std::uint64_t>::max() / *factor)
            return std::nullopt;
        std::uint64_t prod = *factor * *c;
        if (prod > std::numeric_limits<std::uint64_t>::max() - add) return std::nullopt;
        return prod + add;
    };
    auto big = binom_checked(th.union_bound, t + 1);
    if (auto v = scaled(std::uint64_t{r - t + 1}, big, r)) {
        th.n_sum = *v;
        th.n_sum_fits = true;
    }
    auto prod_factor = scaled(std::uint64_t{r - t}, binom_checked(r, t), 0);
    if (auto v = scaled(prod_factor, big, r)) {
        th.n_prod = *v;
        th.n_prod_fits = true;
    }
    if (auto v = scaled(std::uint64_t{r - t}, binom_checked(3ull * r - 2ull * t - 1, t + 1), r)) {
        th.star_mu_bound = *v;
        th.star_mu_bound_fits = true;
    }
    if (auto v = scaled(std::uint64_t{r}, binom_checked(3ull * r, (3ull * r) / 2), 0)) {
        th.coarse_mu_bound = *v;
        th.coarse_mu_bound_fits = true;
    }
    return th;
}

struct WitnessBundle {
    SetFamily sets;
    unsigned p = 0;
    ElementSet union_set;
    ElementSet intersection_set;
    std::uint64_t bound = 0;  // union_bound(r, t) for the input family's r
};

// Descent from the union-bound lemma. If the family is not t-intersecting,
// the first violating pair in canonical order is returned. Otherwise members
// are appended, always picking the candidate that shrinks the running
// intersection the most (ties broken canonically), until fewer than t common
// elements remain.
inline WitnessBundle keyint_witness(const SetFamily& a, unsigned t) {
    if (a.empty()) throw precondition_error("descent needs a family with at least two members; it is empty");
    if (a.size() < 2)
        throw precondition_error("descent needs a family with at least two members; it has one");
    if (common_intersection(a).size() >= t)
        throw precondition_error("descent is undefined for trivial families: all members share t elements");
    unsigned r = 0;
    for (ElementSet m : a.members()) r = std::max(r, m.size());
    WitnessBundle out;
    out.bound = union_bound(r, t);
    std::vector<ElementSet> chosen;
    if (!is_t_intersecting(a, t)) {
        for (std::size_t i = 0; i < a.size() && chosen.empty(); ++i)
            for (std::size_t j = i + 1; j < a.size(); ++j)
                if (a.member(i).intersection_size(a.member(j)) < t) {
                    chosen = {a.member(i), a.member(j)};
                    break;
                }
    } else {
        chosen = {a.member(0), a.member(1)};
        ElementSet running = a.member(0).intersect(a.member(1));
        while (running.size() >= t) {
            ElementSet best{};
            unsigned best_size = 0;
            bool found = false;
            for (ElementSet m : a.members()) {
                if (running.subset_of(m)) continue;
                unsigned sz = running.intersection_size(m);
                if (!found || sz < best_size) {
                    best = m;
                    best_size = sz;
                    found = true;
                }
            }
            chosen.push_back(best);
            running = running.intersect(best);
        }
    }
    out.sets = make_family(a.ground(), chosen);
    out.p = static_cast<unsigned>(out.sets.size());
    out.union_set = ElementSet{};
    out.intersection_set = out.sets.member(0);
    for (ElementSet m : out.sets.members()) {
        out.union_set = out.union_set.unite(m);
        out.intersection_set = out.intersection_set.intersect(m);
    }
    if (out.union_set.size() > out.bound || out.intersection_set.size() >= t ||
        out.p > std::max(2u, r >= t ? r - t + 2 : 2u))
        throw std::logic_error("descent produced a witness outside the proven bounds");
    return out;
}

// Minimum union size over all subfamilies with 2 <= p <= max{2, r-t+2}
// members and fewer than t common elements, or nullopt if none exists.
inline std::optional<std::uint64_t> keyint_min_union(const SetFamily& a, unsigned t) {
    unsigned r = 0;
    for (ElementSet m : a.members()) r = std::max(r, m.size());
    std::size_t pmax = std::max(2u, r >= t ? r - t + 2 : 2u);
    pmax = std::min<std::size_t>(pmax, a.size());
    std::optional<std::uint64_t> best;
    std::vector<std::size_t> stack;
    auto walk = [&](auto&& self, std::size_t from, ElementSet uni, ElementSet inter) -> void {
        if (stack.size() >= 2 && inter.size() < t)
            if (!best || uni.size() < *best) best = uni.size();
        if (stack.size() == pmax) return;
        for (std::size_t i = from; i < a.size(); ++i) {
            ElementSet u2 = uni.unite(a.member(i));
            if (best && u2.size() >= *best) continue;
            ElementSet i2 = stack.empty() ? a.member(i) : inter.intersect(a.member(i));
            stack.push_back(i);
            self(self, i + 1, u2, i2);
            stack.pop_back();
        }
    };
    walk(walk, 0, ElementSet{}, ElementSet{});
    return best;
}

// True when some subfamily within the lemma's size range has union at most
// union_bound(r, t) and fewer than t common elements.
inline bool keyint_check_exhaustive(const SetFamily& a, unsigned t) {
    unsigned r = 0;
    for (ElementSet m : a.members()) r = std::max(r, m.size());
    auto best = keyint_min_union(a, t);
    return best && *best <= union_bound(r, t);
}

struct TransversalCore {
    ElementSet core;  // union of a descent witness
    bool ok = false;  // every t-transversal of the family (t+1)-intersects core
};

// Builds the descent witness union and checks that every t-transversal drawn
// from the pool meets it in at least t+1 elements.
inline TransversalCore transversal_core(const SetFamily& a, unsigned t, const SetFamily& pool) {
    TransversalCore out;
    out.core = keyint_witness(a, t).union_set;
    out.ok = true;
    SetFamily crossing = t_transversals(pool, a, t);
    for (ElementSet b : crossing.members())
        if (b.intersection_size(out.core) < t + 1) {
            out.ok = false;
            break;
        }
    return out;
}

// Deterministic family attaining the descent lemma's union bound. The
// explicit construction labels the elements x_{0,1..r} as 1..r, then the
// blocks x_{i,1..i} row-major, then y_1..y_{r-t-1}; when the two-disjoint-sets
// case applies the members are {1..r} and {r+1..2r}.
inline SetFamily sharpness_witness(unsigned r, unsigned t) {
    if (t < 1 || t > r) throw malformed_input("sharpness witness needs 1 <= t <= r");
    unsigned d = r - t;
    std::uint64_t tail = union_bound(r, t);
    bool explicit_branch = r >= t + 2 && 2ull * r <= tail;
    if (explicit_branch) {
        if (tail > kMaxGround)
            throw malformed_input("sharpness witness needs a ground set larger than " +
                                  std::to_string(kMaxGround));
        GroundSize ground{static_cast<unsigned>(tail)};
        auto x0 = [](unsigned j) { return j; };
        auto block = [&](unsigned i, unsigned j) { return r + (i * (i - 1)) / 2 + j; };
        auto y = [&](unsigned j) { return r + (d * (d + 1)) / 2 + j; };
        std::vector<ElementSet> sets;
        std::vector<unsigned> labels;
        for (unsigned j = 1; j <= r; ++j) labels.push_back(x0(j));
        sets.push_back(ElementSet::of_labels(labels));
        for (unsigned i = 1; i <= d; ++i) {
            labels.clear();
            for (unsigned j = 1; j <= r - i; ++j) labels.push_back(x0(j));
            for (unsigned j = 1; j <= i; ++j) labels.push_back(block(i, j));
            sets.push_back(ElementSet::of_labels(labels));
        }
        labels.clear();
        for (unsigned j = 1; j + 1 <= t; ++j) labels.push_back(x0(j));
        labels.push_back(x0(t + 1));
        labels.push_back(block(d, 1));
        for (unsigned j = 1; j + 1 <= d; ++j) labels.push_back(y(j));
        sets.push_back(ElementSet::of_labels(labels));
        return make_family(ground, sets);
    }
    if (2ull * r >= tail) {
        if (2ull * r > kMaxGround)
            throw malformed_input("sharpness witness needs a ground set larger than " +
                                  std::to_string(kMaxGround));
        GroundSize ground{2 * r};
        std::vector<unsigned> lo, hi;
        for (unsigned j = 1; j <= r; ++j) {
            lo.push_back(j);
            hi.push_back(r + j);
        }
        return make_family(ground, {ElementSet::of_labels(lo), ElementSet::of_labels(hi)});
    }
    throw malformed_input("no sharpness construction applies to these parameters");
}

enum class CheckStatus { hypothesis_not_met, holds, fails };

inline const char* to_string(CheckStatus s) {
    switch (s) {
        case CheckStatus::hypothesis_not_met: return "hypothesis-not-met";
        case CheckStatus::holds: return "holds";
        case CheckStatus::fails: return "fails";
    }
    return "?";
}

// Outcome of a counting-inequality check of the form
//   lhs_count  (>= or >)  (num_a*num_b/den) * rhs_count,
// compared exactly via cross multiplication.
struct InequalityCheck {
    CheckStatus status = CheckStatus::hypothesis_not_met;
    std::string note;  // which hypothesis failed; empty when met
    bool strict = false;
    std::uint64_t lhs_count = 0;
    std::uint64_t rhs_count = 0;
    std::uint64_t num_a = 1;
    std::uint64_t num_b = 1;
    std::uint64_t den = 1;
};

namespace detail {

inline InequalityCheck skipped(std::string why) {
    InequalityCheck c;
    c.status = CheckStatus::hypothesis_not_met;
    c.note = std::move(why);
    return c;
}

inline void settle(InequalityCheck& c) {
    int cmp = compare_scaled(c.lhs_count, c.den, c.num_a, c.num_b, c.rhs_count);
    bool ok = c.strict ? cmp > 0 : cmp >= 0;
    c.status = ok ? CheckStatus::holds : CheckStatus::fails;
}

}  // namespace detail

// Level-size ratio: for a hereditary family and 0 <= p < q <= mu - p,
//   |H^(q)| >= [C(mu-p, q-p) / C(q, q-p)] * |H^(p)|.
inline InequalityCheck verify_sperner_ratio(const HereditaryFamily& h, unsigned p, unsigned q) {
    if (p >= q) return detail::skipped("need p < q");
    std::uint64_t mu = h.mu();
    if (static_cast<std::uint64_t>(q) + p > mu) return detail::skipped("need q <= mu - p");
    InequalityCheck c;
    c.strict = false;
    c.lhs_count = h.level(q).size();
    c.rhs_count = h.level(p).size();
    c.num_a = binom(mu - p, q - p);
    c.num_b = 1;
    c.den = binom(q, q - p);
    detail::settle(c);
    return c;
}

// Quotient base-size bound: if the star of x in f is non-empty then
//   mu({F \ x : F in f<x>}) >= mu(f) - |x|.
struct QuotientMuCheck {
    CheckStatus status = CheckStatus::hypothesis_not_met;
    std::string note;
    std::uint64_t quotient_mu = 0;
    std::uint64_t family_mu = 0;
    unsigned x_size = 0;
};

inline QuotientMuCheck verify_quotient_mu(const SetFamily& f, ElementSet x) {
    QuotientMuCheck c;
    c.x_size = x.size();
    if (f.empty() || star_size(f, x) == 0) {
        c.note = "the star of x is empty";
        return c;
    }
    c.family_mu = mu_of(f);
    c.quotient_mu = mu_of(quotient(f, x));
    c.status = c.quotient_mu + c.x_size >= c.family_mu ? CheckStatus::holds : CheckStatus::fails;
    return c;
}

// Star-size ratio across center sizes: with mu >= 2r - t1 and T1 a t1-subset
// of a t2-set T2 whose star is non-empty,
//   |F<T1>| > [C(mu-r, t2-t1) / C(r-t1, t2-t1)] * |F<T2>|.
inline InequalityCheck verify_star_ratio(const HereditaryFamily& h, const LevelSelector& sel,
                                         unsigned t1, unsigned t2, ElementSet T1, ElementSet T2) {
    if (t1 >= t2) return detail::skipped("need t1 < t2");
    if (t2 > sel.min_size()) return detail::skipped("need t2 <= every selected level");
    unsigned r = sel.max_size();
    if (h.mu() + t1 < 2ull * r) return detail::skipped("need mu >= 2r - t1");
    if (T1.size() != t1 || T2.size() != t2 || !T1.subset_of(T2))
        return detail::skipped("need T1 a t1-subset of the t2-set T2");
    SetFamily f = h.expand_levels(sel);
    std::uint64_t upper = star_size(f, T2);
    if (upper == 0) return detail::skipped("the star of T2 is empty");
    InequalityCheck c;
    c.strict = true;
    c.lhs_count = star_size(f, T1);
    c.rhs_count = upper;
    c.num_a = binom(h.mu() - r, t2 - t1);
    c.num_b = 1;
    c.den = binom(r - t1, t2 - t1);
    detail::settle(c);
    return c;
}

// Whole family against its largest t-star: with mu >= 2r,
//   |F| > [C(mu-r, t) / C(r, t)] * |largest star|.
inline InequalityCheck verify_family_vs_star(const HereditaryFamily& h, const LevelSelector& sel,
                                             unsigned t) {
    if (t < 1) return detail::skipped("need t >= 1");
    if (t > sel.min_size()) return detail::skipped("need t <= every selected level");
    unsigned r = sel.max_size();
    if (h.mu() < 2ull * r) return detail::skipped("need mu >= 2r");
    SetFamily f = h.expand_levels(sel);
    std::uint64_t best = 0;
    for (ElementSet center : h.level(t).members()) best = std::max(best, star_size(f, center));
    InequalityCheck c;
    c.strict = true;
    c.lhs_count = f.size();
    c.rhs_count = best;
    c.num_a = binom(h.mu() - r, t);
    c.num_b = 1;
    c.den = binom(r, t);
    detail::settle(c);
    return c;
}

// Bounding a subfamily by a star drawn from its transversal: if x is a
// (t+1)-transversal of the non-empty subfamily a, then some t-subset T of x
// has |a| < [(r-t) / (mu-r)] * C(|x|, t+1) * |F<T>|. Returns the t-subset
// with the largest star, which witnesses the bound whenever any T does.
struct TransversalBoundCheck {
    CheckStatus status = CheckStatus::hypothesis_not_met;
    std::string note;
    ElementSet best_center;
    std::uint64_t a_size = 0;
    std::uint64_t star_count = 0;   // |F<best_center>|
    std::uint64_t factor_num = 0;   // r - t
    std::uint64_t factor_den = 0;   // mu - r
    std::uint64_t choose_x = 0;     // C(|x|, t+1)
};

inline TransversalBoundCheck verify_transversal_bound(const HereditaryFamily& h,
                                                      const LevelSelector& sel, unsigned t,
                                                      const SetFamily& a, ElementSet x) {
    TransversalBoundCheck c;
    auto skip = [&](std::string why) {
        c.note = std::move(why);
        return c;
    };
    unsigned r = sel.max_size();
    if (r < t + 1) return skip("need t + 1 <= r");
    if (sel.min_size() < t + 1) return skip("need every selected level >= t + 1");
    if (h.mu() + t < 2ull * r) return skip("need mu >= 2r - t");
    if (a.empty()) return skip("the subfamily is empty");
    SetFamily f = h.expand_levels(sel);
    for (ElementSet m : a.members()) {
        if (!f.contains(m)) return skip("the subfamily is not contained in the selected levels");
        if (m.intersection_size(x) < t + 1) return skip("x is not a (t+1)-transversal");
    }
    c.a_size = a.size();
    c.factor_num = r - t;
    c.factor_den = h.mu() - r;
    c.choose_x = binom(x.size(), t + 1);
    bool first = true;
    for_each_subset_of_size(x.bits, t, [&](std::uint64_t sub) {
        ElementSet center{sub};
        std::uint64_t count = star_size(f, center);
        if (first || count > c.star_count) {
            c.best_center = center;
            c.star_count = count;
            first = false;
        }
    });
    // a_size * factor_den < factor_num * choose_x * star_count
    int cmp = detail::compare_scaled(c.a_size, c.factor_den, c.factor_num, c.choose_x,
                                     c.star_count);
    c.status = cmp < 0 ? CheckStatus::holds : CheckStatus::fails;
    return c;
}

// Counts the r-subsets of [n] meeting [t+2] in at least t+1 elements, against
// C(n-t, r-t). The strict comparison is expected exactly when n < (t+1)(r-t+1).
struct BelowThresholdCount {
    std::uint64_t lhs = 0;
    std::uint64_t rhs = 0;
    bool strict = false;
};

inline BelowThresholdCount below_threshold_count(unsigned n, unsigned r, unsigned t) {
    if (!(t < r && r < n)) throw malformed_input("need t < r < n");
    if (n > kMaxGround) throw malformed_input("ground set larger than 64");
    auto total = binom_checked(n, r);
    if (!total || *total > 20'000'000)
        throw size_limit_error("enumeration",
                               "C(n,r) is too large to enumerate directly");
    BelowThresholdCount out;
    std::uint64_t head = (~std::uint64_t{0}) >> (64 - (t + 2));
    std::uint64_t full = GroundSize{n}.mask();
    for_each_subset_of_size(full, r, [&](std::uint64_t sub) {
        if (static_cast<unsigned>(std::popcount(sub & head)) >= t + 1) ++out.lhs;
    });
    out.rhs = binom(n - t, r - t);
    out.strict = out.lhs > out.rhs;
    return out;
}

}  // namespace kradon

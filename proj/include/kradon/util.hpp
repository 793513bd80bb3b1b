#pragma once

// Shared plumbing for the kradon library: error types, checked integer
// arithmetic, exact rationals, combination enumeration over bitmasks, a
// growable bitset for index sets, a pinned RNG, and a deterministic
// parallel-for helper.

#include <bit>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <numeric>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace kradon {

// Raised when user-supplied input (files, CLI ranges) is not well formed.
struct malformed_input : std::runtime_error {
    explicit malformed_input(const std::string& what) : std::runtime_error(what) {}
};

// Raised when a documented precondition of an operation is violated.
struct precondition_error : std::logic_error {
    explicit precondition_error(const std::string& what) : std::logic_error(what) {}
};

// Raised when an instance exceeds a solver guardrail. `limit_name` names the
// binding limit so callers can report which knob to raise.
struct size_limit_error : std::runtime_error {
    std::string limit_name;
    size_limit_error(std::string limit, const std::string& what)
        : std::runtime_error(what), limit_name(std::move(limit)) {}
};

inline std::uint64_t checked_add(std::uint64_t a, std::uint64_t b) {
    if (a > std::numeric_limits<std::uint64_t>::max() - b)
        throw std::overflow_error("integer overflow in addition");
    return a + b;
}

inline std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b) {
    if (a != 0 && b > std::numeric_limits<std::uint64_t>::max() / a)
        throw std::overflow_error("integer overflow in multiplication");
    return a * b;
}

// Exact binomial coefficient, or nullopt if the value does not fit in 64 bits.
inline std::optional<std::uint64_t> binom_checked(std::uint64_t n, std::uint64_t k) {
    if (k > n) return std::uint64_t{0};
    if (k > n - k) k = n - k;
    unsigned __int128 acc = 1;
    for (std::uint64_t i = 1; i <= k; ++i) {
        acc = acc * (n - k + i) / i;
        if (acc > std::numeric_limits<std::uint64_t>::max()) return std::nullopt;
    }
    return static_cast<std::uint64_t>(acc);
}

// Exact binomial coefficient; throws on 64-bit overflow.
inline std::uint64_t binom(std::uint64_t n, std::uint64_t k) {
    auto v = binom_checked(n, k);
    if (!v) throw std::overflow_error("binomial coefficient exceeds 64 bits");
    return *v;
}

// True iff base^exp >= target, computed without overflow. base >= 0, exp >= 1.
inline bool pow_at_least(std::uint64_t base, unsigned exp, std::uint64_t target) {
    if (target == 0) return true;
    unsigned __int128 acc = 1;
    for (unsigned i = 0; i < exp; ++i) {
        acc *= base;
        if (acc >= target) return i + 1 == exp || base >= 1;
        if (acc == 0) return false;
    }
    return acc >= target;
}

// Exact rational with value num/den, den > 0, normalized. Comparisons go
// through 128-bit cross multiplication, so 64-bit counts times binomials stay
// exact.
struct Rational {
    std::int64_t num = 0;
    std::int64_t den = 1;

    Rational() = default;
    Rational(std::int64_t n, std::int64_t d = 1) : num(n), den(d) {
        if (den == 0) throw precondition_error("rational with zero denominator");
        if (den < 0) { num = -num; den = -den; }
        std::int64_t g = std::gcd(num < 0 ? -num : num, den);
        if (g > 1) { num /= g; den /= g; }
    }

    friend Rational operator*(const Rational& a, const Rational& b) {
        __int128 n = static_cast<__int128>(a.num) * b.num;
        __int128 d = static_cast<__int128>(a.den) * b.den;
        // Reduce eagerly so chained products of binomials stay in range.
        Rational r;
        __int128 g1 = gcd128(n < 0 ? -n : n, d);
        if (g1 > 1) { n /= g1; d /= g1; }
        if (n > std::numeric_limits<std::int64_t>::max() || n < std::numeric_limits<std::int64_t>::min() ||
            d > std::numeric_limits<std::int64_t>::max())
            throw std::overflow_error("rational arithmetic exceeds 64 bits");
        r.num = static_cast<std::int64_t>(n);
        r.den = static_cast<std::int64_t>(d);
        return r;
    }

    friend bool operator==(const Rational& a, const Rational& b) {
        return static_cast<__int128>(a.num) * b.den == static_cast<__int128>(b.num) * a.den;
    }
    friend bool operator<(const Rational& a, const Rational& b) {
        return static_cast<__int128>(a.num) * b.den < static_cast<__int128>(b.num) * a.den;
    }
    friend bool operator>(const Rational& a, const Rational& b) { return b < a; }
    friend bool operator>=(const Rational& a, const Rational& b) { return !(a < b); }
    friend bool operator<=(const Rational& a, const Rational& b) { return !(b < a); }

    std::string str() const {
        return den == 1 ? std::to_string(num) : std::to_string(num) + "/" + std::to_string(den);
    }

private:
    static __int128 gcd128(__int128 a, __int128 b) {
        while (b != 0) { __int128 t = a % b; a = b; b = t; }
        return a < 0 ? -a : a;
    }
};

// Calls fn(submask) for every k-element subset of the set bits of mask, in
// lexicographic order of the ascending element lists.
template <typename Fn>
void for_each_subset_of_size(std::uint64_t mask, unsigned k, Fn&& fn) {
    std::vector<unsigned> elems;
    for (std::uint64_t m = mask; m != 0; m &= m - 1)
        elems.push_back(static_cast<unsigned>(std::countr_zero(m)));
    const unsigned n = static_cast<unsigned>(elems.size());
    if (k > n) return;
    if (k == 0) { fn(std::uint64_t{0}); return; }
    std::vector<unsigned> idx(k);
    for (unsigned i = 0; i < k; ++i) idx[i] = i;
    while (true) {
        std::uint64_t sub = 0;
        for (unsigned i : idx) sub |= std::uint64_t{1} << elems[i];
        fn(sub);
        // Advance to the next index combination.
        int pos = static_cast<int>(k) - 1;
        while (pos >= 0 && idx[static_cast<unsigned>(pos)] == n - k + static_cast<unsigned>(pos)) --pos;
        if (pos < 0) break;
        ++idx[static_cast<unsigned>(pos)];
        for (unsigned i = static_cast<unsigned>(pos) + 1; i < k; ++i) idx[i] = idx[i - 1] + 1;
    }
}

// The combination of rank `rank` (0-based, lexicographic order of ascending
// element lists) among k-subsets of {0,..,n-1}, as a bitmask.
inline std::uint64_t combination_at_rank(unsigned n, unsigned k, std::uint64_t rank) {
    std::uint64_t mask = 0;
    unsigned next = 0;
    while (k > 0) {
        std::uint64_t block = binom(n - next - 1, k - 1);
        if (rank < block) {
            mask |= std::uint64_t{1} << next;
            --k;
        } else {
            rank -= block;
        }
        ++next;
        if (next > n) throw precondition_error("combination rank out of range");
    }
    return mask;
}

// Growable bitset used for index sets over family members. Word order is
// little-endian (bit i of word w is index 64*w+i).
class DynBits {
public:
    DynBits() = default;
    explicit DynBits(std::size_t size, bool ones = false)
        : size_(size), words_((size + 63) / 64, ones ? ~std::uint64_t{0} : 0) {
        trim();
    }

    std::size_t size() const { return size_; }
    bool test(std::size_t i) const { return (words_[i >> 6] >> (i & 63)) & 1; }
    void set(std::size_t i) { words_[i >> 6] |= std::uint64_t{1} << (i & 63); }
    void reset(std::size_t i) { words_[i >> 6] &= ~(std::uint64_t{1} << (i & 63)); }

    std::size_t count() const {
        std::size_t c = 0;
        for (auto w : words_) c += static_cast<std::size_t>(std::popcount(w));
        return c;
    }
    bool any() const {
        for (auto w : words_) if (w) return true;
        return false;
    }
    bool none() const { return !any(); }

    DynBits& operator&=(const DynBits& o) {
        for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= o.words_[i];
        return *this;
    }
    DynBits& operator|=(const DynBits& o) {
        for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= o.words_[i];
        return *this;
    }
    DynBits& subtract(const DynBits& o) {
        for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= ~o.words_[i];
        return *this;
    }
    bool subset_of(const DynBits& o) const {
        for (std::size_t i = 0; i < words_.size(); ++i)
            if (words_[i] & ~o.words_[i]) return false;
        return true;
    }
    friend bool operator==(const DynBits& a, const DynBits& b) {
        return a.size_ == b.size_ && a.words_ == b.words_;
    }

    // Index of the lowest set bit at or after `from`, or size() if none.
    std::size_t next_set(std::size_t from) const {
        if (from >= size_) return size_;
        std::size_t w = from >> 6;
        std::uint64_t cur = words_[w] & (~std::uint64_t{0} << (from & 63));
        while (true) {
            if (cur) return (w << 6) + static_cast<std::size_t>(std::countr_zero(cur));
            if (++w == words_.size()) return size_;
            cur = words_[w];
        }
    }

    // Clears all bits with index < i.
    void clear_below(std::size_t i) {
        if (i == 0) return;
        if (i > size_) i = size_;
        std::size_t w = i >> 6;
        for (std::size_t j = 0; j < w && j < words_.size(); ++j) words_[j] = 0;
        if (w < words_.size() && (i & 63) != 0)
            words_[w] &= ~((std::uint64_t{1} << (i & 63)) - 1);
    }

    // Clears all bits with index >= i.
    void truncate_from(std::size_t i) {
        if (i >= size_) return;
        std::size_t w = i >> 6;
        if (i & 63) {
            words_[w] &= (std::uint64_t{1} << (i & 63)) - 1;
            ++w;
        }
        for (; w < words_.size(); ++w) words_[w] = 0;
    }

    std::vector<std::size_t> indices() const {
        std::vector<std::size_t> out;
        for (std::size_t i = next_set(0); i < size_; i = next_set(i + 1)) out.push_back(i);
        return out;
    }

    // Compares the ascending index sequences (a proper prefix counts as
    // smaller).
    static bool sequence_less(const DynBits& a, const DynBits& b) {
        std::size_t i = a.next_set(0), j = b.next_set(0);
        while (true) {
            bool a_done = i >= a.size_, b_done = j >= b.size_;
            if (a_done && b_done) return false;
            if (a_done) return true;
            if (b_done) return false;
            if (i != j) return i < j;
            i = a.next_set(i + 1);
            j = b.next_set(j + 1);
        }
    }

private:
    void trim() {
        if (size_ % 64 != 0 && !words_.empty())
            words_.back() &= (~std::uint64_t{0}) >> (64 - size_ % 64);
    }
    std::size_t size_ = 0;
    std::vector<std::uint64_t> words_;
};

// Deterministic uniform sampling on top of std::mt19937_64. The rejection
// loop avoids the unspecified distribution algorithms in the standard
// library, so streams are reproducible across toolchains.
class SeededRng {
public:
    explicit SeededRng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next() { return engine_(); }

    // Uniform in [0, bound). bound >= 1.
    std::uint64_t below(std::uint64_t bound) {
        if (bound == 0) throw precondition_error("rng bound must be positive");
        if ((bound & (bound - 1)) == 0) return engine_() & (bound - 1);
        std::uint64_t mask = ~std::uint64_t{0} >> std::countl_zero(bound);
        while (true) {
            std::uint64_t v = engine_() & mask;
            if (v < bound) return v;
        }
    }

    // Uniform in [lo, hi] inclusive.
    std::uint64_t range(std::uint64_t lo, std::uint64_t hi) {
        if (lo > hi) throw precondition_error("rng range is empty");
        return lo + below(hi - lo + 1);
    }

private:
    std::mt19937_64 engine_;
};

// Runs fn(i) for i in [0, total). With workers > 1 the index space is split
// into contiguous chunks; callers must write results into per-index slots so
// output does not depend on the worker count.
template <typename Fn>
void parallel_for(std::size_t total, unsigned workers, Fn&& fn) {
    if (workers <= 1 || total <= 1) {
        for (std::size_t i = 0; i < total; ++i) fn(i);
        return;
    }
    unsigned threads = workers;
    if (threads > total) threads = static_cast<unsigned>(total);
    std::vector<std::thread> pool;
    pool.reserve(threads);
    std::size_t chunk = (total + threads - 1) / threads;
    for (unsigned w = 0; w < threads; ++w) {
        std::size_t lo = static_cast<std::size_t>(w) * chunk;
        std::size_t hi = lo + chunk < total ? lo + chunk : total;
        if (lo >= hi) break;
        pool.emplace_back([lo, hi, &fn] {
            for (std::size_t i = lo; i < hi; ++i) fn(i);
        });
    }
    for (auto& th : pool) th.join();
}

}  // namespace kradon

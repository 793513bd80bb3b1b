// Plumbing layer: checked arithmetic, rationals, combination enumeration,
// bitsets, the pinned RNG, and the deterministic parallel-for.

#include <catch2/catch_amalgamated.hpp>

#include <set>
#include <vector>

#include "kradon/util.hpp"
#include "oracles.hpp"

using namespace kradon;

TEST_CASE("binomial coefficients match Pascal's triangle", "[util]") {
    for (unsigned n = 0; n <= 40; ++n)
        for (unsigned k = 0; k <= n + 2; ++k)
            REQUIRE(binom(n, k) == oracle::binom(n, k));
}

TEST_CASE("binomial overflow is detected, not wrapped", "[util]") {
    REQUIRE(binom_checked(64, 32).has_value());
    REQUIRE(binom(64, 32) == 1832624140942590534ull);
    REQUIRE_FALSE(binom_checked(70, 35).has_value());
    REQUIRE_THROWS_AS(binom(70, 35), std::overflow_error);
    REQUIRE(binom(70, 1) == 70);
    REQUIRE(binom(0, 0) == 1);
}

TEST_CASE("checked addition and multiplication throw on overflow", "[util]") {
    const std::uint64_t big = ~std::uint64_t{0};
    REQUIRE(checked_add(big - 1, 1) == big);
    REQUIRE_THROWS_AS(checked_add(big, 1), std::overflow_error);
    REQUIRE(checked_mul(1ull << 32, 1ull << 31) == (1ull << 63));
    REQUIRE_THROWS_AS(checked_mul(1ull << 32, 1ull << 32), std::overflow_error);
    REQUIRE(checked_mul(0, big) == 0);
}

TEST_CASE("power comparison avoids real roots", "[util]") {
    REQUIRE(pow_at_least(3, 2, 9));
    REQUIRE_FALSE(pow_at_least(3, 2, 10));
    REQUIRE(pow_at_least(2, 10, 1024));
    REQUIRE_FALSE(pow_at_least(2, 10, 1025));
    REQUIRE(pow_at_least(7, 1, 0));
    REQUIRE_FALSE(pow_at_least(0, 3, 1));
    REQUIRE_FALSE(pow_at_least(1, 60, 2));
    // Values whose plain product would overflow 64 bits.
    REQUIRE(pow_at_least(1ull << 33, 2, ~std::uint64_t{0}));
}

TEST_CASE("rationals normalize and compare exactly", "[util]") {
    REQUIRE(Rational(2, 4) == Rational(1, 2));
    REQUIRE(Rational(-3, -6) == Rational(1, 2));
    REQUIRE(Rational(3, -6).num == -1);
    REQUIRE(Rational(3, -6).den == 2);
    REQUIRE_THROWS_AS(Rational(1, 0), precondition_error);
    REQUIRE(Rational(1, 3) < Rational(1, 2));
    REQUIRE(Rational(-1, 2) < Rational(1, 3));
    REQUIRE(Rational(7, 3) > Rational(2));
    REQUIRE(Rational(4, 2) >= Rational(2));
    REQUIRE(Rational(4, 2) <= Rational(2));
    REQUIRE(Rational(5).str() == "5");
    REQUIRE(Rational(5, 3).str() == "5/3");

    // Chained products of binomial-sized factors stay exact.
    Rational prod(1);
    prod = prod * Rational(static_cast<std::int64_t>(binom(40, 20)),
                           static_cast<std::int64_t>(binom(38, 19)));
    prod = prod * Rational(static_cast<std::int64_t>(binom(38, 19)),
                           static_cast<std::int64_t>(binom(40, 20)));
    REQUIRE(prod == Rational(1));
}

TEST_CASE("subset enumeration is complete and lexicographic", "[util]") {
    const std::uint64_t mask = 0b1111;  // {0,1,2,3}
    std::vector<std::uint64_t> seen;
    for_each_subset_of_size(mask, 2, [&](std::uint64_t s) { seen.push_back(s); });
    REQUIRE(seen == std::vector<std::uint64_t>{0b0011, 0b0101, 0b1001, 0b0110, 0b1010, 0b1100});

    seen.clear();
    for_each_subset_of_size(mask, 0, [&](std::uint64_t s) { seen.push_back(s); });
    REQUIRE(seen == std::vector<std::uint64_t>{0});

    seen.clear();
    for_each_subset_of_size(mask, 5, [&](std::uint64_t s) { seen.push_back(s); });
    REQUIRE(seen.empty());

    // Sparse mask: counts match the binomial and every subset stays inside.
    const std::uint64_t sparse = 0b10110100101;
    for (unsigned k = 0; k <= 7; ++k) {
        std::uint64_t count = 0;
        for_each_subset_of_size(sparse, k, [&](std::uint64_t s) {
            REQUIRE((s & ~sparse) == 0);
            REQUIRE(oracle::popcnt(s) == k);
            ++count;
        });
        REQUIRE(count == oracle::binom(oracle::popcnt(sparse), k));
    }
}

TEST_CASE("combination ranking matches the enumeration order", "[util]") {
    const unsigned n = 6, k = 3;
    std::vector<std::uint64_t> listed;
    for_each_subset_of_size((std::uint64_t{1} << n) - 1, k,
                            [&](std::uint64_t s) { listed.push_back(s); });
    for (std::uint64_t rank = 0; rank < listed.size(); ++rank)
        REQUIRE(combination_at_rank(n, k, rank) == listed[rank]);
    REQUIRE_THROWS_AS(combination_at_rank(4, 2, 6), precondition_error);
}

TEST_CASE("dynamic bitsets work across word boundaries", "[util]") {
    DynBits bits(130);
    REQUIRE(bits.size() == 130);
    REQUIRE(bits.none());
    for (std::size_t i : {std::size_t{5}, std::size_t{63}, std::size_t{64}, std::size_t{129}})
        bits.set(i);
    REQUIRE(bits.count() == 4);
    REQUIRE(bits.any());
    REQUIRE(bits.test(63));
    REQUIRE_FALSE(bits.test(62));
    REQUIRE(bits.indices() == std::vector<std::size_t>{5, 63, 64, 129});
    REQUIRE(bits.next_set(0) == 5);
    REQUIRE(bits.next_set(6) == 63);
    REQUIRE(bits.next_set(65) == 129);
    REQUIRE(bits.next_set(130) == 130);

    bits.reset(63);
    REQUIRE(bits.indices() == std::vector<std::size_t>{5, 64, 129});

    DynBits ones(130, true);
    REQUIRE(ones.count() == 130);
    DynBits copy = ones;
    copy &= bits;
    REQUIRE(copy == bits);
    copy |= ones;
    REQUIRE(copy == ones);
    copy.subtract(bits);
    REQUIRE(copy.count() == 127);
    REQUIRE(bits.subset_of(ones));
    REQUIRE_FALSE(ones.subset_of(bits));

    DynBits trimmed = ones;
    trimmed.clear_below(64);
    REQUIRE(trimmed.count() == 66);
    REQUIRE(trimmed.next_set(0) == 64);
    trimmed.truncate_from(65);
    REQUIRE(trimmed.indices() == std::vector<std::size_t>{64});
}

TEST_CASE("bitset sequences compare like ascending index lists", "[util]") {
    auto of = [](std::initializer_list<std::size_t> idx) {
        DynBits b(16);
        for (std::size_t i : idx) b.set(i);
        return b;
    };
    REQUIRE(DynBits::sequence_less(of({0, 2}), of({0, 3})));
    REQUIRE_FALSE(DynBits::sequence_less(of({0, 3}), of({0, 2})));
    REQUIRE(DynBits::sequence_less(of({1}), of({1, 5})));  // proper prefix
    REQUIRE_FALSE(DynBits::sequence_less(of({1, 5}), of({1})));
    REQUIRE_FALSE(DynBits::sequence_less(of({4}), of({4})));
    REQUIRE(DynBits::sequence_less(of({}), of({0})));
}

TEST_CASE("seeded rng streams are reproducible and in range", "[util]") {
    SeededRng a(42), b(42), c(43);
    std::vector<std::uint64_t> sa, sb;
    bool differs = false;
    for (int i = 0; i < 200; ++i) {
        sa.push_back(a.next());
        sb.push_back(b.next());
        if (c.next() != sa.back()) differs = true;
    }
    REQUIRE(sa == sb);
    REQUIRE(differs);

    SeededRng r(7);
    for (int i = 0; i < 500; ++i) {
        REQUIRE(r.below(1) == 0);
        REQUIRE(r.below(10) < 10);
        std::uint64_t v = r.range(5, 9);
        REQUIRE(v >= 5);
        REQUIRE(v <= 9);
    }
    REQUIRE_THROWS_AS(r.below(0), precondition_error);
    REQUIRE_THROWS_AS(r.range(5, 4), precondition_error);
}

TEST_CASE("parallel for fills slots independently of the worker count", "[util]") {
    const std::size_t total = 1000;
    std::vector<std::uint64_t> reference(total);
    for (std::size_t i = 0; i < total; ++i) reference[i] = i * i;
    for (unsigned workers : {1u, 2u, 5u, 16u}) {
        std::vector<std::uint64_t> slots(total, 0);
        parallel_for(total, workers, [&](std::size_t i) { slots[i] = i * i; });
        REQUIRE(slots == reference);
    }
    parallel_for(0, 4, [](std::size_t) { FAIL("no indices to visit"); });
    std::vector<int> one(1, 0);
    parallel_for(1, 8, [&](std::size_t i) { one[i] = 1; });
    REQUIRE(one[0] == 1);
}

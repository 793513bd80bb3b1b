// Acceptance gate. One test case per criterion, run in order; the listener
// at the bottom prints a PASS or FAIL line for each so the run reads as a
// checklist. Wall-clock budgets are asserted where a criterion carries one.

#include <catch2/catch_amalgamated.hpp>

#include <bit>
#include <chrono>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "kradon/kradon.hpp"
#include "oracles.hpp"
#include "support.hpp"

using namespace kradon;

namespace {

constexpr const char* kCliPath = KRADON_CLI_PATH;

class Stopwatch {
public:
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    }

private:
    std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

HereditaryFamily cube(unsigned n) {
    return HereditaryFamily::from_bases(GroundSize(n), {ElementSet::full(GroundSize(n))});
}

std::optional<std::string> detail_of(const VerdictRecord& rec, const std::string& key) {
    for (const auto& [k, v] : rec.details)
        if (k == key) return v;
    return std::nullopt;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

struct CliRun {
    int status = -1;
    std::string output;
};

CliRun run_cli(const std::string& args, const std::string& tag) {
    std::string path = "acceptance-" + tag + ".out";
    std::string cmd = std::string(kCliPath) + " " + args + " > " + path + " 2>/dev/null";
    CliRun run;
    run.status = std::system(cmd.c_str());
    run.output = slurp(path);
    return run;
}

// Counts the subfamilies of the power set of [4] that meet the descent
// hypothesis, straight from bitmask arithmetic so the sweep harness is not
// trusted with its own bookkeeping.
std::uint64_t recount_descent_eligible(unsigned t) {
    std::uint64_t eligible = 0;
    for (std::uint32_t mask = 0; mask < (1u << 16); ++mask) {
        std::vector<std::uint32_t> members;
        for (unsigned s = 0; s < 16; ++s)
            if (mask >> s & 1) members.push_back(s);
        if (members.size() < 2) continue;
        bool intersecting = true;
        std::uint32_t common = 0xf;
        for (std::size_t i = 0; i < members.size() && intersecting; ++i) {
            common &= members[i];
            if (std::popcount(members[i]) < static_cast<int>(t)) intersecting = false;
            for (std::size_t j = i + 1; j < members.size() && intersecting; ++j)
                if (std::popcount(members[i] & members[j]) < static_cast<int>(t))
                    intersecting = false;
        }
        if (intersecting && std::popcount(common) < static_cast<int>(t)) ++eligible;
    }
    return eligible;
}

}  // namespace

TEST_CASE("criterion 1: threshold table at pinned parameters") {
    Stopwatch sw;
    Thresholds small = thresholds(2, 1);
    REQUIRE(small.union_bound == 4);
    REQUIRE(small.n_sum_fits);
    REQUIRE(small.n_sum == 14);
    REQUIRE(small.n_prod_fits);
    REQUIRE(small.n_prod == 14);
    REQUIRE(small.level_star_boundary == 4);

    Thresholds big = thresholds(4, 2);
    REQUIRE(big.union_bound == 8);
    REQUIRE(big.n_sum_fits);
    REQUIRE(big.n_sum == 172);
    REQUIRE(big.n_prod_fits);
    REQUIRE(big.n_prod == 676);
    REQUIRE(big.level_star_boundary == 9);
    REQUIRE(sw.seconds() < 1.0);
}

TEST_CASE("criterion 2: complete level star boundary grid through ground 7") {
    Stopwatch sw;
    unsigned instances = 0;
    for (unsigned n = 1; n <= 7; ++n) {
        for (unsigned r = 1; r <= n; ++r) {
            for (unsigned t = 1; t <= r; ++t) {
                VerdictRecord v = complete_level_star_boundary(n, r, t);
                INFO(v.instance);
                REQUIRE(v.hypothesis_met);
                REQUIRE(v.conclusion_holds == true);
                ++instances;
            }
        }
    }
    REQUIRE(instances == 84);
    REQUIRE(sw.seconds() < 60.0);
}

TEST_CASE("criterion 3: exhaustive descent sweep over the power set of [4]") {
    Stopwatch sw;
    for (unsigned t : {1u, 2u}) {
        HuntReport rep = sweep_keyint(GroundSize(4), t);
        INFO("t = " << t);
        REQUIRE(rep.examined == 65536);
        REQUIRE(rep.eligible == recount_descent_eligible(t));
        REQUIRE(rep.checks == rep.eligible);
        REQUIRE(rep.findings.empty());
    }
    REQUIRE(sw.seconds() < 60.0);
}

TEST_CASE("criterion 4: sharpness constructions attain the union bound") {
    struct Tuple {
        unsigned r, t;
        std::uint64_t expected_union;
    };
    for (Tuple row : {Tuple{2, 1, 4}, Tuple{3, 1, 7}, Tuple{4, 2, 8}, Tuple{5, 2, 13}}) {
        INFO("r = " << row.r << ", t = " << row.t);
        REQUIRE(union_bound(row.r, row.t) == row.expected_union);
        SetFamily f = sharpness_witness(row.r, row.t);
        ElementSet hits;
        ElementSet shared = ElementSet::full(f.ground());
        for (ElementSet m : f.members()) {
            REQUIRE(m.size() == row.r);
            hits = hits.unite(m);
            shared = shared.intersect(m);
        }
        REQUIRE(hits.size() == row.expected_union);
        REQUIRE(shared.size() == row.t - 1);
        bool construction = row.r >= row.t + 2 && 2ull * row.r <= row.expected_union;
        if (construction) {
            REQUIRE(is_t_intersecting(f, row.t));
            REQUIRE(common_intersection(f).size() < row.t);
        } else {
            REQUIRE(f.size() == 2);
            REQUIRE(f.member(0).intersect(f.member(1)).size() == 0);
        }
    }
}

TEST_CASE("criterion 5: ratio and quotient sweeps clean over every downset on [5]") {
    Stopwatch sw;
    struct Row {
        HuntReport rep;
        std::uint64_t eligible, checks;
    };
    std::vector<Row> rows;
    rows.push_back({sweep_sperner_ratio(GroundSize(5)), 7579, 17439});
    rows.push_back({sweep_star_ratio(GroundSize(5)), 6893, 61460});
    rows.push_back({sweep_family_vs_star(GroundSize(5)), 6893, 6989});
    rows.push_back({sweep_quotient_mu(GroundSize(5)), 7580, 121296});
    for (const Row& row : rows) {
        INFO(row.rep.statement);
        REQUIRE(row.rep.examined == 7580);
        REQUIRE(row.rep.eligible == row.eligible);
        REQUIRE(row.rep.checks == row.checks);
        REQUIRE(row.rep.findings.empty());
    }
    REQUIRE(sw.seconds() < 600.0);
}

TEST_CASE("criterion 6: downset enumeration agrees with the antichain oracle") {
    const std::uint64_t expected[] = {5, 19, 167, 7580};
    for (unsigned n = 2; n <= 5; ++n) {
        std::uint64_t count = 0;
        enumerate_downsets(GroundSize(n), [&](const SetFamily&) { ++count; });
        INFO("ground " << n);
        REQUIRE(count == expected[n - 2]);
        REQUIRE(count == oracle::count_downsets_by_antichains(n));
    }
}

TEST_CASE("criterion 7: cross solver matches brute force on 200 seeded instances") {
    Stopwatch sw;
    for (std::uint64_t seed = 1; seed <= 200; ++seed) {
        for (CrossMode mode : {CrossMode::sum, CrossMode::product}) {
            support::RandomInstance ri = support::make_instance(seed, mode);
            REQUIRE((ri.t == 1 || ri.t == 2));
            REQUIRE((ri.selectors.size() == 2 || ri.selectors.size() == 3));
            CrossInstance inst(ri.host, ri.t, ri.selectors, ri.mode);
            for (const SetFamily& f : inst.families()) REQUIRE(f.size() <= 12);
            OptimumReport rep = max_cross(inst);
            std::uint64_t brute = oracle::cross_optimum(support::masks_of(inst.families()), ri.t,
                                                        mode == CrossMode::product);
            INFO("seed " << seed << " mode " << to_string(mode));
            REQUIRE(rep.optimum == brute);
        }
    }
    REQUIRE(sw.seconds() < 600.0);
}

TEST_CASE("criterion 8: named optima match brute force and the prediction") {
    {
        CrossInstance inst(cube(4), 1, std::vector<LevelSelector>(3, LevelSelector({2})),
                           CrossMode::sum);
        OptimumReport rep = max_cross(inst);
        REQUIRE(rep.optimum == 9);
        REQUIRE(rep.prediction.value == 9);
        REQUIRE(rep.prediction.star_config == 3 * binom(3, 1));
        REQUIRE(oracle::cross_optimum(support::masks_of(inst.families()), 1, false) == 9);
    }
    {
        CrossInstance inst(cube(5), 1, std::vector<LevelSelector>(2, LevelSelector({2})),
                           CrossMode::sum);
        OptimumReport rep = max_cross(inst);
        REQUIRE(rep.optimum == 10);
        REQUIRE(rep.optimum == binom(5, 2));
        REQUIRE(rep.prediction.star_config == 2 * binom(4, 1));
        REQUIRE(oracle::cross_optimum(support::masks_of(inst.families()), 1, false) == 10);
    }
    {
        CrossInstance inst(cube(4), 1, std::vector<LevelSelector>(2, LevelSelector({2})),
                           CrossMode::product);
        OptimumReport rep = max_cross(inst);
        REQUIRE(rep.optimum == 9);
        REQUIRE(rep.optimum == binom(3, 1) * binom(3, 1));
        REQUIRE(rep.prediction.value == 9);
        REQUIRE(oracle::cross_optimum(support::masks_of(inst.families()), 1, true) == 9);
    }
}

TEST_CASE("criterion 9: in-regime counting on the pair level of [14]") {
    Stopwatch sw;
    HereditaryFamily h = cube(14);
    StarCatalog cat = star_catalog(h, LevelSelector({2}), 1);
    REQUIRE(cat.centers.size() == 14);
    for (std::uint64_t s : cat.sizes) REQUIRE(s == 13);
    REQUIRE(cat.best == 13);
    REQUIRE(h.expand_levels(LevelSelector({2})).size() == 91);

    VerdictRecord two =
        verify_powerset_counts(14, 1, std::vector<LevelSelector>(2, LevelSelector({2})));
    REQUIRE(two.conclusion_holds == true);
    REQUIRE(detail_of(two, "predicted-optimum") == "91");
    REQUIRE(detail_of(two, "in-sum-regime") == "yes");
    REQUIRE(detail_of(two, "expansion") == "checked");

    VerdictRecord eight =
        verify_powerset_counts(14, 1, std::vector<LevelSelector>(8, LevelSelector({2})));
    REQUIRE(eight.conclusion_holds == true);
    REQUIRE(detail_of(eight, "predicted-optimum") == "104");
    REQUIRE(sw.seconds() < 1.0);
}

TEST_CASE("criterion 10: conjecture hunts come back empty through ground 5") {
    Stopwatch sw;
    for (unsigned n = 2; n <= 5; ++n) {
        INFO("ground " << n);
        HuntReport one = hunt_hereditary_one_star(GroundSize(n));
        REQUIRE(one.findings.empty());
        if (n == 5) {
            REQUIRE(one.examined == 7580);
            REQUIRE(one.eligible == 7580);
        }

        HuntReport cross = hunt_cross_sum_bound(GroundSize(n), 2);
        REQUIRE(cross.findings.empty());
        if (n == 5) {
            REQUIRE(cross.eligible == 32);
            REQUIRE(cross.checks == 33);
        }

        HuntReport top = hunt_level_union_star(GroundSize(n), 1, LevelSelector({2}));
        REQUIRE(top.findings.empty());
        if (n == 5) {
            REQUIRE(top.eligible == 32);
            REQUIRE(top.checks == 33);
        }

        HuntReport pair = hunt_level_union_star(GroundSize(n), 1, LevelSelector({1, 2}));
        REQUIRE(pair.findings.empty());
        if (n == 5) {
            REQUIRE(pair.eligible == 32);
            REQUIRE(pair.checks == 64);
        }
    }
    REQUIRE(sw.seconds() < 900.0);
}

TEST_CASE("criterion 11: reports are byte-identical across worker counts") {
    struct Command {
        std::string tag;
        std::string args;
        bool workers;
    };
    const std::vector<Command> commands = {
        {"thresholds", "thresholds --r 4 --t 2 --format json", false},
        {"solve", "solve --powerset 4 --t 1 --select 2 --k 3 --mode sum --format json", true},
        {"sperner", "verify lemma sperner --exhaustive-n 5 --format json", true},
        {"star-ratio", "verify lemma star-ratio --samples 10 --n 7 --seed 5 --format json", true},
        {"boundary", "verify theorem level-boundary --n 6 --r 2 --t 1 --format json", true},
        {"hunt-one-star", "hunt --conjecture one-star --n 5 --format json", true},
        {"hunt-level-star",
         "hunt --conjecture level-star --n 5 --t 1 --select 1,2 --format json", true},
        {"sharpness", "witness sharpness --r 4 --t 2 --format json", false},
        {"keyint", "verify lemma keyint --exhaustive-n 4 --t 1 --format json", true},
        {"theorem-sum", "verify theorem sum --powerset 4 --t 1 --select 1 --k 2 --format json",
         true},
    };
    for (const Command& cmd : commands) {
        INFO(cmd.tag);
        std::string lone = cmd.args + (cmd.workers ? " --workers 1" : "");
        std::string crowd = cmd.args + (cmd.workers ? " --workers 8" : "");
        CliRun first = run_cli(lone, cmd.tag + "-1");
        CliRun second = run_cli(crowd, cmd.tag + "-8");
        REQUIRE(first.status == 0);
        REQUIRE(second.status == 0);
        REQUIRE_FALSE(first.output.empty());
        REQUIRE(first.output == second.output);
    }

    std::string base = "hunt --conjecture one-star --n 4 --format json";
    CliRun first = run_cli(base + " --workers 1 --findings acceptance-findings-1.txt", "f1");
    CliRun second = run_cli(base + " --workers 8 --findings acceptance-findings-8.txt", "f8");
    REQUIRE(first.status == 0);
    REQUIRE(second.status == 0);
    REQUIRE(slurp("acceptance-findings-1.txt") == slurp("acceptance-findings-8.txt"));
}

class CriterionReporter : public Catch::EventListenerBase {
public:
    using EventListenerBase::EventListenerBase;

    void testCaseEnded(const Catch::TestCaseStats& stats) override {
        std::printf("[%s] %s\n", stats.totals.assertions.allPassed() ? "PASS" : "FAIL",
                    stats.testInfo->name.c_str());
        std::fflush(stdout);
    }
};

CATCH_REGISTER_LISTENER(CriterionReporter)

// Text formats for families, hereditary bases, and graphs, plus the JSON
// report shapes the CLI emits.

#include <catch2/catch_amalgamated.hpp>

#include <string>

#include "kradon/kradon.hpp"

using namespace kradon;

TEST_CASE("sets print as ascending labels with a dash for empty", "[io]") {
    REQUIRE(set_to_string(ElementSet{}) == "-");
    REQUIRE(set_to_string(ElementSet::of_labels({1})) == "1");
    REQUIRE(set_to_string(ElementSet::of_labels({1, 3, 6})) == "1 3 6");
}

TEST_CASE("family text round-trips", "[io]") {
    SetFamily f = make_family(GroundSize(5), {ElementSet{}, ElementSet::of_labels({2}),
                                              ElementSet::of_labels({1, 4}),
                                              ElementSet::of_labels({2, 3, 5})});
    std::string text = family_to_string(f);
    REQUIRE(text == "ground 5\n-\n2\n1 4\n2 3 5\n");
    REQUIRE(family_from_string(text) == f);
}

TEST_CASE("family parsing skips comments and canonicalizes", "[io]") {
    SetFamily f = family_from_string(
        "# leading comment\n"
        "\n"
        "ground 4  # trailing comment\n"
        "2 3\n"
        "1   # a singleton\n"
        "2 3\n"
        "-\n");
    REQUIRE(f.ground().n == 4);
    REQUIRE(f.size() == 3);
    REQUIRE(f.member(0) == ElementSet{});
    REQUIRE(f.member(1) == ElementSet::of_labels({1}));
    REQUIRE(f.member(2) == ElementSet::of_labels({2, 3}));
}

TEST_CASE("family parse errors carry line numbers", "[io]") {
    REQUIRE_THROWS_AS(family_from_string(""), malformed_input);
    REQUIRE_THROWS_AS(family_from_string("family 3\n"), malformed_input);
    REQUIRE_THROWS_AS(family_from_string("ground 0\n"), malformed_input);
    REQUIRE_THROWS_AS(family_from_string("ground 65\n"), malformed_input);
    REQUIRE_THROWS_AS(family_from_string("ground 3 extra\n"), malformed_input);
    REQUIRE_THROWS_AS(family_from_string("ground 3\n1 4\n"), malformed_input);
    REQUIRE_THROWS_AS(family_from_string("ground 3\n1 x\n"), malformed_input);
    REQUIRE_THROWS_WITH(family_from_string("ground 3\n\n2 1\n"),
                        Catch::Matchers::ContainsSubstring("line 3") &&
                            Catch::Matchers::ContainsSubstring("strictly ascending"));
    REQUIRE_THROWS_WITH(family_from_string("ground 3\n1 1\n"),
                        Catch::Matchers::ContainsSubstring("strictly ascending"));
    REQUIRE_THROWS_WITH(family_from_string("ground 3\n5\n"),
                        Catch::Matchers::ContainsSubstring("outside ground set"));
}

TEST_CASE("hereditary files list bases", "[io]") {
    auto h = hereditary_from_string("ground 4\n1 2\n1\n3 4\n");
    REQUIRE(h.bases().size() == 2);
    REQUIRE(h.mu() == 2);

    std::ostringstream out;
    write_hereditary(out, h);
    auto back = hereditary_from_string(out.str());
    REQUIRE(back.bases() == h.bases());

    REQUIRE_THROWS_WITH(hereditary_from_string("ground 4\n# nothing\n"),
                        Catch::Matchers::ContainsSubstring("at least one base"));
}

TEST_CASE("graph files parse 1-based edges", "[io]") {
    Graph g = graph_from_string("graph 3\n1 2\n2 3\n");
    REQUIRE(g.vertices.n == 3);
    REQUIRE(g.edges == std::vector<std::pair<unsigned, unsigned>>{{0, 1}, {1, 2}});
    Graph lone = graph_from_string("graph 2\n");
    REQUIRE(lone.edges.empty());
    REQUIRE_THROWS_AS(graph_from_string("graph 3\n1\n"), malformed_input);
    REQUIRE_THROWS_AS(graph_from_string("graph 3\n1 2 3\n"), malformed_input);
    REQUIRE_THROWS_AS(graph_from_string("graph 3\n0 2\n"), malformed_input);
    REQUIRE_THROWS_AS(graph_from_string("graph 3\n1 4\n"), malformed_input);
    REQUIRE_THROWS_AS(graph_from_string("graph 3\n2 2\n"), malformed_input);
    REQUIRE_THROWS_AS(graph_from_string("ground 3\n"), malformed_input);
}

TEST_CASE("threshold reports serialize with stable keys", "[io][json]") {
    ordered_json j = to_json(thresholds(2, 1));
    REQUIRE(j["schema_version"] == 1);
    REQUIRE(j["kind"] == "thresholds");
    REQUIRE(j["r"] == 2);
    REQUIRE(j["t"] == 1);
    REQUIRE(j["union_bound"] == 4);
    REQUIRE(j["n_sum"] == 14);
    REQUIRE(j["n_prod"] == 14);
    REQUIRE(j["level_star_boundary"] == 4);
    REQUIRE(j["star_mu_bound"] == 5);
    REQUIRE(j["coarse_mu_bound"] == 40);
    REQUIRE(j.dump() ==
            R"({"schema_version":1,"kind":"thresholds","r":2,"t":1,"union_bound":4,)"
            R"("n_sum":14,"n_prod":14,"level_star_boundary":4,"star_mu_bound":5,)"
            R"("coarse_mu_bound":40})");

    // Values that overflow 64 bits render as null rather than garbage.
    ordered_json big = to_json(thresholds(60, 30));
    REQUIRE(big["n_sum"].is_null());
    REQUIRE(big["n_prod"].is_null());
    REQUIRE(big["star_mu_bound"].is_null());
    REQUIRE(big["coarse_mu_bound"].is_null());
    REQUIRE(big["union_bound"] == 554);
    REQUIRE(big["level_star_boundary"] == 31 * 31);
}

TEST_CASE("optimum reports embed parseable witness families", "[io][json]") {
    auto host = HereditaryFamily::from_bases(GroundSize(4), {ElementSet::full(GroundSize(4))});
    CrossInstance inst(host, 1, {LevelSelector({2}), LevelSelector({2})}, CrossMode::sum);
    OptimumReport rep = max_cross(inst, Guardrails{});
    ordered_json j = to_json(rep);
    REQUIRE(j["kind"] == "optimum");
    REQUIRE(j["mode"] == "sum");
    REQUIRE(j["k"] == 2);
    REQUIRE(j["t"] == 1);
    REQUIRE(j["selectors"] == ordered_json::array({{2}, {2}}));
    REQUIRE(j["optimum"].is_number());
    REQUIRE(j["solver"].is_string());
    REQUIRE(j["classification"].is_string());
    REQUIRE(j["prediction"]["value"].is_number());
    REQUIRE(j["prediction"]["regime"].contains("sum"));
    REQUIRE(j["prediction"].contains("sum_equality_case"));
    REQUIRE(j["witness"].size() == 2);
    for (const auto& w : j["witness"]) {
        SetFamily f = family_from_string(w.get<std::string>());
        REQUIRE(f.ground().n == 4);
    }

    CrossInstance pinst(host, 1, {LevelSelector({2}), LevelSelector({2})}, CrossMode::product);
    ordered_json pj = to_json(max_cross(pinst, Guardrails{}));
    REQUIRE(pj["mode"] == "product");
    REQUIRE_FALSE(pj["prediction"].contains("sum_equality_case"));
}

TEST_CASE("verdict records keep detail order and tri-state conclusions", "[io][json]") {
    VerdictRecord rec;
    rec.statement = "example";
    rec.instance = "ground 3";
    rec.hypothesis_met = false;
    rec.details.emplace_back("zeta", "1");
    rec.details.emplace_back("alpha", "2");
    ordered_json j = to_json(rec);
    REQUIRE(j["kind"] == "verdict");
    REQUIRE(j["conclusion_holds"].is_null());
    REQUIRE(j["details"].dump() == R"({"zeta":"1","alpha":"2"})");

    rec.conclusion_holds = true;
    REQUIRE(to_json(rec)["conclusion_holds"] == true);
}

TEST_CASE("hunt reports serialize their counters", "[io][json]") {
    HuntReport rep = hunt_hereditary_one_star(GroundSize(2));
    ordered_json j = to_json(rep);
    REQUIRE(j["kind"] == "hunt");
    REQUIRE(j["statement"] == "hereditary-one-star");
    REQUIRE(j["ground"] == 2);
    REQUIRE(j["examined"] == 5);
    REQUIRE(j["eligible"] == 5);
    REQUIRE(j["checks"] == 5);
    REQUIRE(j["findings"].is_array());
    REQUIRE(j["findings"].empty());
}

TEST_CASE("inequality checks serialize both outcomes", "[io][json]") {
    auto cube = hereditary_from_string("ground 5\n1 2 3 4 5\n");
    InequalityCheck ok = verify_sperner_ratio(cube, 1, 2);
    ordered_json j = to_json(ok, "sperner-ratio");
    REQUIRE(j["kind"] == "inequality");
    REQUIRE(j["statement"] == "sperner-ratio");
    REQUIRE(j["status"] == "holds");
    REQUIRE(j["strict"] == false);
    REQUIRE(j["lhs_count"] == 10);
    REQUIRE(j["rhs_count"] == 5);
    REQUIRE(j["ratio_num"] == 4);
    REQUIRE(j["ratio_den"] == 2);

    InequalityCheck skip = verify_sperner_ratio(cube, 2, 2);
    ordered_json js = to_json(skip, "sperner-ratio");
    REQUIRE(js["status"] == "hypothesis-not-met");
    REQUIRE(js["note"] == "need p < q");
    REQUIRE_FALSE(js.contains("lhs_count"));
}

TEST_CASE("quotient and transversal checks serialize", "[io][json]") {
    SetFamily cube3 = hereditary_from_string("ground 3\n1 2 3\n").expand_up_to(3);
    ordered_json q = to_json(verify_quotient_mu(cube3, ElementSet::of_labels({1})));
    REQUIRE(q["kind"] == "quotient-mu");
    REQUIRE(q["status"] == "holds");
    REQUIRE(q["quotient_mu"] == 2);
    REQUIRE(q["family_mu"] == 3);
    REQUIRE(q["x_size"] == 1);

    auto host = hereditary_from_string("ground 6\n1 2 3 4 5 6\n");
    SetFamily sub = make_family(GroundSize(6), {ElementSet::of_labels({1, 2})});
    TransversalBoundCheck tb = verify_transversal_bound(host, LevelSelector({2}), 1, sub,
                                                        ElementSet::of_labels({1, 2}));
    ordered_json tj = to_json(tb);
    REQUIRE(tj["kind"] == "transversal-bound");
    REQUIRE(tj["status"] == "holds");
    REQUIRE(tj["best_center"] == "1");
    REQUIRE(tj["subfamily_size"] == 1);
    REQUIRE(tj["star_count"] == 5);
    REQUIRE(tj["factor_num"] == 1);
    REQUIRE(tj["factor_den"] == 4);
    REQUIRE(tj["choose_x"] == 1);
}

TEST_CASE("descent witnesses serialize with their union bound", "[io][json]") {
    SetFamily a = family_from_string("ground 4\n1 2 3\n1 2 4\n1 3 4\n2 3 4\n");
    WitnessBundle w = keyint_witness(a, 2);
    ordered_json j = to_json(w);
    REQUIRE(j["kind"] == "witness");
    REQUIRE(j["members"] == 3);
    REQUIRE(j["union"] == "1 2 3 4");
    REQUIRE(j["union_size"] == 4);
    REQUIRE(j["union_bound"] == 6);
    REQUIRE(j["intersection"] == "1");
    SetFamily back = family_from_string(j["family"].get<std::string>());
    REQUIRE(back.size() == 3);
}

TEST_CASE("families serialize as member lists", "[io][json]") {
    SetFamily f = family_from_string("ground 3\n1 2\n1 3\n2 3\n");
    ordered_json j = to_json(f);
    REQUIRE(j["kind"] == "family");
    REQUIRE(j["ground"] == 3);
    REQUIRE(j["size"] == 3);
    REQUIRE(j["members"] == ordered_json::array({"1 2", "1 3", "2 3"}));
}

#pragma once

// JSON renderings of solver reports, verdicts, and hunts. Key order is fixed
// by nlohmann's ordered_json, so serialized output is byte-stable across runs
// and worker counts. Witness families are embedded as family-format text
// blocks that read_family parses back.

#include <json.hpp>

#include "kradon/verify.hpp"

namespace kradon {

inline constexpr int kSchemaVersion = 1;

using ordered_json = nlohmann::ordered_json;

inline ordered_json to_json(const Thresholds& th) {
    ordered_json j;
    j["schema_version"] = kSchemaVersion;
    j["kind"] = "thresholds";
    j["r"] = th.r;
    j["t"] = th.t;
    j["union_bound"] = th.union_bound;
    j["n_sum"] = th.n_sum_fits ? ordered_json(th.n_sum) : ordered_json(nullptr);
    j["n_prod"] = th.n_prod_fits ? ordered_json(th.n_prod) : ordered_json(nullptr);
    j["level_star_boundary"] = th.level_star_boundary;
    j["star_mu_bound"] = th.star_mu_bound_fits ? ordered_json(th.star_mu_bound) : ordered_json(nullptr);
    j["coarse_mu_bound"] =
        th.coarse_mu_bound_fits ? ordered_json(th.coarse_mu_bound) : ordered_json(nullptr);
    return j;
}

inline ordered_json to_json(const PredictionReport& pred, CrossMode mode) {
    ordered_json j;
    j["value"] = pred.value;
    j["star_config"] = pred.star_config;
    j["family_sizes"] = pred.family_sizes;
    j["common_center_exists"] = pred.common_center_exists;
    if (mode == CrossMode::sum) j["sum_equality_case"] = pred.sum_equality_case;
    ordered_json regime;
    regime["sum"] = pred.regime.mu_meets_sum_threshold;
    regime["product"] = pred.regime.mu_meets_product_threshold;
    regime["full_family"] = pred.regime.mu_meets_full_family_threshold;
    regime["level_star"] = pred.regime.level_star_regime;
    j["regime"] = std::move(regime);
    return j;
}

inline ordered_json to_json(const OptimumReport& rep) {
    ordered_json j;
    j["schema_version"] = kSchemaVersion;
    j["kind"] = "optimum";
    j["mode"] = to_string(rep.mode);
    j["k"] = rep.k;
    j["t"] = rep.t;
    ordered_json sels = ordered_json::array();
    for (const LevelSelector& sel : rep.selectors) sels.push_back(sel.sizes());
    j["selectors"] = std::move(sels);
    j["optimum"] = rep.optimum;
    j["classification"] = to_string(rep.classification);
    if (!rep.note.empty()) j["note"] = rep.note;
    j["solver"] = rep.solver_mode;
    j["prediction"] = to_json(rep.prediction, rep.mode);
    ordered_json witness = ordered_json::array();
    for (const SetFamily& f : rep.witness) witness.push_back(family_to_string(f));
    j["witness"] = std::move(witness);
    return j;
}

inline ordered_json to_json(const VerdictRecord& rec) {
    ordered_json j;
    j["schema_version"] = kSchemaVersion;
    j["kind"] = "verdict";
    j["statement"] = rec.statement;
    j["instance"] = rec.instance;
    j["hypothesis_met"] = rec.hypothesis_met;
    j["conclusion_holds"] =
        rec.conclusion_holds ? ordered_json(*rec.conclusion_holds) : ordered_json(nullptr);
    ordered_json details;
    for (const auto& [key, value] : rec.details) details[key] = value;
    j["details"] = std::move(details);
    return j;
}

inline ordered_json to_json(const HuntReport& rep) {
    ordered_json j;
    j["schema_version"] = kSchemaVersion;
    j["kind"] = "hunt";
    j["statement"] = rep.statement;
    j["ground"] = rep.ground;
    j["examined"] = rep.examined;
    j["eligible"] = rep.eligible;
    j["checks"] = rep.checks;
    ordered_json findings = ordered_json::array();
    for (const VerdictRecord& rec : rep.findings) findings.push_back(to_json(rec));
    j["findings"] = std::move(findings);
    return j;
}

inline ordered_json to_json(const InequalityCheck& c, const char* statement) {
    ordered_json j;
    j["schema_version"] = kSchemaVersion;
    j["kind"] = "inequality";
    j["statement"] = statement;
    j["status"] = to_string(c.status);
    if (!c.note.empty()) j["note"] = c.note;
    if (c.status != CheckStatus::hypothesis_not_met) {
        j["strict"] = c.strict;
        j["lhs_count"] = c.lhs_count;
        j["rhs_count"] = c.rhs_count;
        j["ratio_num"] = checked_mul(c.num_a, c.num_b);
        j["ratio_den"] = c.den;
    }
    return j;
}

inline ordered_json to_json(const QuotientMuCheck& c) {
    ordered_json j;
    j["schema_version"] = kSchemaVersion;
    j["kind"] = "quotient-mu";
    j["status"] = to_string(c.status);
    if (!c.note.empty()) j["note"] = c.note;
    if (c.status != CheckStatus::hypothesis_not_met) {
        j["quotient_mu"] = c.quotient_mu;
        j["family_mu"] = c.family_mu;
        j["x_size"] = c.x_size;
    }
    return j;
}

inline ordered_json to_json(const TransversalBoundCheck& c) {
    ordered_json j;
    j["schema_version"] = kSchemaVersion;
    j["kind"] = "transversal-bound";
    j["status"] = to_string(c.status);
    if (!c.note.empty()) j["note"] = c.note;
    if (c.status != CheckStatus::hypothesis_not_met) {
        j["best_center"] = set_to_string(c.best_center);
        j["subfamily_size"] = c.a_size;
        j["star_count"] = c.star_count;
        j["factor_num"] = c.factor_num;
        j["factor_den"] = c.factor_den;
        j["choose_x"] = c.choose_x;
    }
    return j;
}

inline ordered_json to_json(const WitnessBundle& w) {
    ordered_json j;
    j["schema_version"] = kSchemaVersion;
    j["kind"] = "witness";
    j["members"] = w.p;
    j["union"] = set_to_string(w.union_set);
    j["union_size"] = w.union_set.size();
    j["union_bound"] = w.bound;
    j["intersection"] = set_to_string(w.intersection_set);
    j["family"] = family_to_string(w.sets);
    return j;
}

inline ordered_json to_json(const SetFamily& f) {
    ordered_json j;
    j["schema_version"] = kSchemaVersion;
    j["kind"] = "family";
    j["ground"] = f.ground().n;
    j["size"] = f.size();
    ordered_json members = ordered_json::array();
    for (ElementSet m : f.members()) members.push_back(set_to_string(m));
    j["members"] = std::move(members);
    return j;
}

}  // namespace kradon

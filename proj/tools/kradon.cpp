// Command-line front end. Subcommands map one-to-one onto library operations;
// reports render as flat text or as schema-versioned JSON. Exit codes: 0 on
// success, 2 on malformed input, 3 on a guardrail breach, 4 when a verifier
// or hunter settles a hypothesis-met statement as false.

#include <CLI11.hpp>

#include <kradon/kradon.hpp>

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

namespace {

using kradon::ordered_json;

bool inline_scalar(const ordered_json& v) {
    if (v.is_object() || v.is_array()) return false;
    return !v.is_string() || v.get_ref<const std::string&>().find('\n') == std::string::npos;
}

void render_inline(std::ostream& os, const ordered_json& v) {
    if (v.is_string())
        os << v.get_ref<const std::string&>();
    else if (v.is_null())
        os << "-";
    else
        os << v.dump();
}

void render_object(std::ostream& os, const ordered_json& obj, const std::string& indent);

void render_entry(std::ostream& os, const std::string& key, const ordered_json& v,
                  const std::string& indent) {
    if (inline_scalar(v)) {
        os << indent << key << ": ";
        render_inline(os, v);
        os << "\n";
        return;
    }
    if (v.is_string()) {
        os << indent << key << ":\n";
        std::istringstream lines(v.get_ref<const std::string&>());
        for (std::string line; std::getline(lines, line);) os << indent << "  " << line << "\n";
        return;
    }
    if (v.is_object()) {
        if (v.empty()) {
            os << indent << key << ": (none)\n";
            return;
        }
        os << indent << key << ":\n";
        render_object(os, v, indent + "  ");
        return;
    }
    if (v.empty()) {
        os << indent << key << ": (none)\n";
        return;
    }
    if (std::all_of(v.begin(), v.end(), inline_scalar)) {
        os << indent << key << ":";
        for (const auto& e : v) {
            os << " ";
            render_inline(os, e);
        }
        os << "\n";
        return;
    }
    os << indent << key << ":\n";
    for (const auto& e : v) {
        std::ostringstream sub;
        if (e.is_object()) {
            render_object(sub, e, "");
        } else if (e.is_array()) {
            bool first = true;
            for (const auto& x : e) {
                if (!first) sub << " ";
                render_inline(sub, x);
                first = false;
            }
            sub << "\n";
        } else {
            const std::string& s = e.get_ref<const std::string&>();
            sub << s;
            if (s.empty() || s.back() != '\n') sub << "\n";
        }
        std::istringstream lines(sub.str());
        bool first = true;
        for (std::string line; std::getline(lines, line);) {
            os << indent << (first ? "- " : "  ") << line << "\n";
            first = false;
        }
    }
}

void render_object(std::ostream& os, const ordered_json& obj, const std::string& indent) {
    for (auto it = obj.begin(); it != obj.end(); ++it) render_entry(os, it.key(), it.value(), indent);
}

void emit(const ordered_json& report, const std::string& format, const std::string& out_path) {
    std::ofstream file;
    std::ostream* os = &std::cout;
    if (!out_path.empty()) {
        file.open(out_path);
        if (!file) throw kradon::malformed_input("cannot write to " + out_path);
        os = &file;
    }
    if (format == "json")
        *os << report.dump(2) << "\n";
    else
        render_object(*os, report, "");
}

std::vector<unsigned> parse_numbers(const std::string& text, const char* what) {
    std::vector<unsigned> out;
    std::string token;
    std::string normalized = text;
    std::replace(normalized.begin(), normalized.end(), ',', ' ');
    std::istringstream fields(normalized);
    while (fields >> token) {
        try {
            std::size_t used = 0;
            unsigned long v = std::stoul(token, &used);
            if (used != token.size() || v > 64) throw std::invalid_argument(token);
            out.push_back(static_cast<unsigned>(v));
        } catch (const std::exception&) {
            throw kradon::malformed_input(std::string("invalid ") + what + " '" + token + "'");
        }
    }
    if (out.empty()) throw kradon::malformed_input(std::string("empty ") + what + " list");
    return out;
}

kradon::LevelSelector parse_selector(const std::string& text) {
    return kradon::LevelSelector(parse_numbers(text, "level size"));
}

kradon::ElementSet parse_elements(const std::string& text, kradon::GroundSize ground) {
    std::vector<unsigned> labels = parse_numbers(text, "element label");
    for (unsigned l : labels)
        if (l < 1) throw kradon::malformed_input("element labels start at 1");
    kradon::ElementSet s = kradon::ElementSet::of_labels(labels);
    if (!s.fits(ground)) throw kradon::malformed_input("element label exceeds the ground size");
    return s;
}

struct HostArgs {
    std::string input;
    unsigned powerset = 0;
};

void add_host_options(CLI::App* cmd, HostArgs& host) {
    auto* in = cmd->add_option("--input", host.input, "hereditary family file (base list)");
    cmd->add_option("--powerset", host.powerset, "use the power set of [n] as the family")
        ->excludes(in);
}

kradon::HereditaryFamily resolve_host(const HostArgs& host) {
    if (!host.input.empty()) {
        std::ifstream in(host.input);
        if (!in) throw kradon::malformed_input("cannot open " + host.input);
        return kradon::read_hereditary(in);
    }
    if (host.powerset > 0) {
        if (host.powerset > kradon::kMaxGround)
            throw kradon::malformed_input("power set ground is capped at " +
                                          std::to_string(kradon::kMaxGround));
        kradon::GroundSize g{host.powerset};
        return kradon::HereditaryFamily::from_bases(g, {kradon::ElementSet::full(g)});
    }
    throw kradon::malformed_input("need either --input or --powerset");
}

kradon::SetFamily load_family(const std::string& path) {
    if (path.empty()) throw kradon::malformed_input("need --family");
    std::ifstream in(path);
    if (!in) throw kradon::malformed_input("cannot open " + path);
    return kradon::read_family(in);
}

std::vector<kradon::LevelSelector> resolve_selectors(const std::vector<std::string>& raw,
                                                     unsigned k) {
    if (raw.empty()) throw kradon::malformed_input("need at least one --select");
    std::vector<kradon::LevelSelector> sels;
    sels.reserve(std::max<std::size_t>(raw.size(), k));
    for (const std::string& text : raw) sels.push_back(parse_selector(text));
    if (k == 0) {
        if (sels.size() == 1) sels.push_back(sels.front());
        return sels;
    }
    if (k < 2) throw kradon::malformed_input("the family count k must be at least 2");
    if (sels.size() == 1) {
        while (sels.size() < k) sels.push_back(sels.front());
    } else if (sels.size() != k) {
        throw kradon::malformed_input(
            "give one --select to replicate across k families, or exactly k of them");
    }
    return sels;
}

int exit_for(const kradon::VerdictRecord& rec) {
    return rec.hypothesis_met && rec.conclusion_holds && !*rec.conclusion_holds ? 4 : 0;
}

int exit_for(const kradon::HuntReport& rep) { return rep.findings.empty() ? 0 : 4; }

int exit_for(kradon::CheckStatus status) { return status == kradon::CheckStatus::fails ? 4 : 0; }

void write_findings_file(const std::string& path, const kradon::HuntReport& rep) {
    if (path.empty()) return;
    std::ofstream out(path);
    if (!out) throw kradon::malformed_input("cannot write to " + path);
    for (const kradon::VerdictRecord& rec : rep.findings) out << to_json(rec).dump() << "\n";
}

struct CommonArgs {
    std::string format = "text";
    std::string out;
    unsigned workers = 1;
    std::uint64_t seed = 0;
};

void add_output_options(CLI::App* cmd, CommonArgs& common) {
    cmd->add_option("--format", common.format, "report format")
        ->check(CLI::IsMember({"text", "json"}))
        ->capture_default_str();
    cmd->add_option("--out", common.out, "write the report to a file instead of stdout");
}

void add_worker_option(CLI::App* cmd, CommonArgs& common) {
    cmd->add_option("--workers", common.workers, "worker threads; reports do not depend on it")
        ->check(CLI::Range(1u, 256u))
        ->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact solvers and verifiers for intersecting families over hereditary grounds"};
    app.require_subcommand(1);

    CommonArgs common;

    unsigned arg_r = 0, arg_t = 0, arg_n = 0, arg_k = 0;
    unsigned arg_p = 0, arg_q = 0, arg_t1 = 0, arg_t2 = 0;
    unsigned exhaustive_n = 0, samples = 0;
    std::string arg_mode = "sum";
    std::string arg_x, arg_center1, arg_center2, arg_family, arg_findings, arg_statement;
    std::vector<std::string> arg_select;
    HostArgs host;

    auto* cmd_thresholds = app.add_subcommand("thresholds", "size thresholds for one (r, t)");
    cmd_thresholds->add_option("--r", arg_r, "largest member size")->required();
    cmd_thresholds->add_option("--t", arg_t, "intersection size")->required();
    add_output_options(cmd_thresholds, common);

    auto* cmd_family = app.add_subcommand("family", "inspect a hereditary family");
    cmd_family->require_subcommand(1);
    auto* cmd_info = cmd_family->add_subcommand("info", "ground, bases, mu, and level sizes");
    add_host_options(cmd_info, host);
    add_output_options(cmd_info, common);

    auto* cmd_solve = app.add_subcommand("solve", "exact cross-intersecting optimum");
    add_host_options(cmd_solve, host);
    cmd_solve->add_option("--t", arg_t, "intersection size")->required();
    cmd_solve->add_option("--select", arg_select, "level sizes per family, e.g. --select 2,3")
        ->required();
    cmd_solve->add_option("--k", arg_k, "family count when one --select is replicated");
    cmd_solve->add_option("--mode", arg_mode, "objective")
        ->check(CLI::IsMember({"sum", "product"}))
        ->capture_default_str();
    add_worker_option(cmd_solve, common);
    add_output_options(cmd_solve, common);

    auto* cmd_verify = app.add_subcommand("verify", "check statements on instances or sweeps");
    cmd_verify->require_subcommand(1);

    auto* cmd_lemma = cmd_verify->add_subcommand("lemma", "counting and ratio statements");
    cmd_lemma
        ->add_option("name", arg_statement, "statement to check")
        ->required()
        ->check(CLI::IsMember({"sperner", "star-ratio", "family-vs-star", "quotient-mu", "keyint",
                               "transversal-bound"}));
    cmd_lemma->add_option("--exhaustive-n", exhaustive_n,
                          "sweep every admissible instance on ground [n]");
    cmd_lemma->add_option("--samples", samples, "sampled sweep: number of random families");
    cmd_lemma->add_option("--n", arg_n, "ground size for --samples");
    cmd_lemma->add_option("--seed", common.seed, "sampling seed")->capture_default_str();
    add_host_options(cmd_lemma, host);
    cmd_lemma->add_option("--family", arg_family, "family file for subfamily arguments");
    cmd_lemma->add_option("--p", arg_p, "lower level (sperner)");
    cmd_lemma->add_option("--q", arg_q, "upper level (sperner)");
    cmd_lemma->add_option("--t", arg_t, "intersection size");
    cmd_lemma->add_option("--t1", arg_t1, "smaller center size (star-ratio)");
    cmd_lemma->add_option("--t2", arg_t2, "larger center size (star-ratio)");
    cmd_lemma->add_option("--center1", arg_center1, "smaller center, e.g. '1 2' (star-ratio)");
    cmd_lemma->add_option("--center2", arg_center2, "larger center (star-ratio)");
    cmd_lemma->add_option("--x", arg_x, "quotient element set / transversal set");
    cmd_lemma->add_option("--select", arg_select, "level sizes of the host family");
    add_worker_option(cmd_lemma, common);
    add_output_options(cmd_lemma, common);

    auto* cmd_theorem = cmd_verify->add_subcommand("theorem", "optimum and boundary statements");
    cmd_theorem->add_option("name", arg_statement, "statement to check")
        ->required()
        ->check(CLI::IsMember({"sum", "product", "full-family", "powerset", "level-boundary",
                               "below-boundary"}));
    add_host_options(cmd_theorem, host);
    cmd_theorem->add_option("--t", arg_t, "intersection size");
    cmd_theorem->add_option("--r", arg_r, "level size (boundary statements)");
    cmd_theorem->add_option("--n", arg_n, "ground size (powerset and boundary statements)");
    cmd_theorem->add_option("--k", arg_k, "family count when one --select is replicated");
    cmd_theorem->add_option("--select", arg_select, "level sizes per family");
    cmd_theorem->add_option("--mode", arg_mode, "objective (powerset)")
        ->check(CLI::IsMember({"sum", "product"}))
        ->capture_default_str();
    add_worker_option(cmd_theorem, common);
    add_output_options(cmd_theorem, common);

    auto* cmd_hunt = app.add_subcommand("hunt", "exhaustive counterexample hunt over downsets");
    cmd_hunt->add_option("--conjecture", arg_statement, "target statement")
        ->required()
        ->check(CLI::IsMember({"one-star", "cross-sum", "level-star"}));
    cmd_hunt->add_option("--n", arg_n, "ground size")->required();
    cmd_hunt->add_option("--r", arg_r, "level size (cross-sum)");
    cmd_hunt->add_option("--t", arg_t, "intersection size (level-star)");
    cmd_hunt->add_option("--select", arg_select, "level sizes (level-star)");
    cmd_hunt->add_option("--findings", arg_findings, "write findings as JSON lines to this file");
    add_worker_option(cmd_hunt, common);
    add_output_options(cmd_hunt, common);

    auto* cmd_witness = app.add_subcommand("witness", "emit constructed witnesses");
    cmd_witness->require_subcommand(1);
    auto* cmd_sharp = cmd_witness->add_subcommand(
        "sharpness", "t-intersecting family attaining the union bound");
    cmd_sharp->add_option("--r", arg_r, "largest member size")->required();
    cmd_sharp->add_option("--t", arg_t, "intersection size")->required();
    add_output_options(cmd_sharp, common);
    auto* cmd_key = cmd_witness->add_subcommand(
        "keyint", "small-union subfamily found by the descent procedure");
    cmd_key->add_option("--family", arg_family, "family file")->required();
    cmd_key->add_option("--t", arg_t, "intersection size")->required();
    add_output_options(cmd_key, common);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (app.got_subcommand(cmd_thresholds)) {
            emit(to_json(kradon::thresholds(arg_r, arg_t)), common.format, common.out);
            return 0;
        }

        if (cmd_info->parsed()) {
            kradon::HereditaryFamily h = resolve_host(host);
            std::uint64_t projected = 0;
            unsigned top = 0;
            for (kradon::ElementSet b : h.bases().members()) {
                top = std::max(top, b.size());
                for (unsigned s = 0; s <= b.size(); ++s) {
                    std::uint64_t c = kradon::binom(b.size(), s);
                    projected = projected > ~c ? ~std::uint64_t{0} : projected + c;
                }
            }
            constexpr std::uint64_t kInfoCap = 4'000'000;
            if (projected > kInfoCap)
                throw kradon::size_limit_error(
                    "family-info-members",
                    "level enumeration would visit more than " + std::to_string(kInfoCap) +
                        " sets");
            ordered_json j;
            j["schema_version"] = kradon::kSchemaVersion;
            j["kind"] = "family-info";
            j["ground"] = h.ground().n;
            j["mu"] = h.mu();
            j["base_count"] = h.bases().size();
            ordered_json bases = ordered_json::array();
            for (kradon::ElementSet b : h.bases().members())
                bases.push_back(kradon::set_to_string(b));
            j["bases"] = std::move(bases);
            std::uint64_t total = 0;
            ordered_json levels;
            for (unsigned s = 0; s <= top; ++s) {
                std::uint64_t count = h.level(s).size();
                levels[std::to_string(s)] = count;
                total += count;
            }
            j["member_count"] = total;
            j["levels"] = std::move(levels);
            emit(j, common.format, common.out);
            return 0;
        }

        if (app.got_subcommand(cmd_solve)) {
            kradon::HereditaryFamily h = resolve_host(host);
            kradon::CrossMode mode =
                arg_mode == "product" ? kradon::CrossMode::product : kradon::CrossMode::sum;
            kradon::CrossInstance inst(h, arg_t, resolve_selectors(arg_select, arg_k), mode);
            kradon::OptimumReport rep = kradon::max_cross(inst, kradon::Guardrails::from_env());
            emit(to_json(rep), common.format, common.out);
            return 0;
        }

        if (cmd_lemma->parsed()) {
            bool sweep = exhaustive_n > 0;
            bool sampled = samples > 0;
            if (sweep && sampled)
                throw kradon::malformed_input("--exhaustive-n and --samples are exclusive");
            kradon::GroundSize sweep_ground{sweep ? exhaustive_n : std::max(arg_n, 1u)};
            if (sampled && arg_n == 0)
                throw kradon::malformed_input("--samples needs --n for the ground size");

            if (arg_statement == "sperner") {
                if (sweep || sampled) {
                    kradon::HuntReport rep =
                        sweep ? kradon::sweep_sperner_ratio(sweep_ground, common.workers)
                              : kradon::sample_sperner_ratio(sweep_ground, samples, common.seed,
                                                             common.workers);
                    ordered_json j = to_json(rep);
                    if (sampled) j["seed"] = common.seed;
                    emit(j, common.format, common.out);
                    return exit_for(rep);
                }
                kradon::HereditaryFamily h = resolve_host(host);
                kradon::InequalityCheck c = kradon::verify_sperner_ratio(h, arg_p, arg_q);
                emit(to_json(c, "sperner-ratio"), common.format, common.out);
                return exit_for(c.status);
            }
            if (arg_statement == "star-ratio") {
                if (sweep || sampled) {
                    kradon::HuntReport rep =
                        sweep ? kradon::sweep_star_ratio(sweep_ground, common.workers)
                              : kradon::sample_star_ratio(sweep_ground, samples, common.seed,
                                                          common.workers);
                    ordered_json j = to_json(rep);
                    if (sampled) j["seed"] = common.seed;
                    emit(j, common.format, common.out);
                    return exit_for(rep);
                }
                kradon::HereditaryFamily h = resolve_host(host);
                if (arg_select.empty()) throw kradon::malformed_input("need --select");
                kradon::LevelSelector sel = parse_selector(arg_select.front());
                kradon::ElementSet c1 = arg_center1.empty()
                                            ? kradon::ElementSet{}
                                            : parse_elements(arg_center1, h.ground());
                kradon::ElementSet c2 = arg_center2.empty()
                                            ? kradon::ElementSet{}
                                            : parse_elements(arg_center2, h.ground());
                kradon::InequalityCheck c =
                    kradon::verify_star_ratio(h, sel, arg_t1, arg_t2, c1, c2);
                emit(to_json(c, "star-ratio"), common.format, common.out);
                return exit_for(c.status);
            }
            if (arg_statement == "family-vs-star") {
                if (sweep || sampled) {
                    kradon::HuntReport rep =
                        sweep ? kradon::sweep_family_vs_star(sweep_ground, common.workers)
                              : kradon::sample_family_vs_star(sweep_ground, samples, common.seed,
                                                              common.workers);
                    ordered_json j = to_json(rep);
                    if (sampled) j["seed"] = common.seed;
                    emit(j, common.format, common.out);
                    return exit_for(rep);
                }
                kradon::HereditaryFamily h = resolve_host(host);
                if (arg_select.empty()) throw kradon::malformed_input("need --select");
                kradon::InequalityCheck c =
                    kradon::verify_family_vs_star(h, parse_selector(arg_select.front()), arg_t);
                emit(to_json(c, "family-vs-star"), common.format, common.out);
                return exit_for(c.status);
            }
            if (arg_statement == "quotient-mu") {
                if (sweep || sampled) {
                    kradon::HuntReport rep =
                        sweep ? kradon::sweep_quotient_mu(sweep_ground, common.workers)
                              : kradon::sample_quotient_mu(sweep_ground, samples, common.seed,
                                                           common.workers);
                    ordered_json j = to_json(rep);
                    if (sampled) j["seed"] = common.seed;
                    emit(j, common.format, common.out);
                    return exit_for(rep);
                }
                kradon::SetFamily f = load_family(arg_family);
                if (arg_x.empty()) throw kradon::malformed_input("need --x");
                kradon::QuotientMuCheck c =
                    kradon::verify_quotient_mu(f, parse_elements(arg_x, f.ground()));
                emit(to_json(c), common.format, common.out);
                return exit_for(c.status);
            }
            if (arg_statement == "keyint") {
                if (sampled)
                    throw kradon::malformed_input("keyint has no sampled mode; use --exhaustive-n");
                if (arg_t == 0) throw kradon::malformed_input("need --t");
                if (sweep) {
                    kradon::HuntReport rep =
                        kradon::sweep_keyint(sweep_ground, arg_t, common.workers);
                    emit(to_json(rep), common.format, common.out);
                    return exit_for(rep);
                }
                kradon::SetFamily f = load_family(arg_family);
                kradon::VerdictRecord rec;
                rec.statement = "keyint";
                rec.instance = "family file " + arg_family + " t=" + std::to_string(arg_t);
                rec.hypothesis_met = f.size() >= 2 && kradon::is_t_intersecting(f, arg_t) &&
                                     kradon::common_intersection(f).size() < arg_t;
                if (!rec.hypothesis_met) {
                    rec.details.emplace_back(
                        "note", "needs >= 2 members, t-intersecting, no t common elements");
                } else {
                    bool ok = kradon::keyint_check_exhaustive(f, arg_t);
                    auto min_union = kradon::keyint_min_union(f, arg_t);
                    rec.details.emplace_back(
                        "min-union", min_union ? std::to_string(*min_union) : std::string("-"));
                    try {
                        kradon::WitnessBundle w = kradon::keyint_witness(f, arg_t);
                        rec.details.emplace_back("union-bound", std::to_string(w.bound));
                        rec.details.emplace_back("descent-union-size",
                                                 std::to_string(w.union_set.size()));
                        rec.details.emplace_back("descent-members", std::to_string(w.p));
                        rec.details.emplace_back("witness", kradon::family_to_string(w.sets));
                    } catch (const std::logic_error& e) {
                        ok = false;
                        rec.details.emplace_back("descent", e.what());
                    }
                    rec.conclusion_holds = ok;
                }
                emit(to_json(rec), common.format, common.out);
                return exit_for(rec);
            }
            if (sweep || sampled)
                throw kradon::malformed_input("transversal-bound has no sweep; give an instance");
            kradon::HereditaryFamily h = resolve_host(host);
            if (arg_select.empty()) throw kradon::malformed_input("need --select");
            if (arg_x.empty()) throw kradon::malformed_input("need --x");
            kradon::SetFamily a = load_family(arg_family);
            kradon::TransversalBoundCheck c = kradon::verify_transversal_bound(
                h, parse_selector(arg_select.front()), arg_t, a, parse_elements(arg_x, h.ground()));
            emit(to_json(c), common.format, common.out);
            return exit_for(c.status);
        }

        if (cmd_theorem->parsed()) {
            if (arg_statement == "sum" || arg_statement == "product" ||
                arg_statement == "full-family") {
                kradon::HereditaryFamily h = resolve_host(host);
                if (arg_t == 0) throw kradon::malformed_input("need --t");
                auto sels = resolve_selectors(arg_select, arg_k);
                kradon::Guardrails limits = kradon::Guardrails::from_env();
                kradon::VerdictRecord rec =
                    arg_statement == "sum"
                        ? kradon::verify_sum_bound(h, arg_t, std::move(sels), limits)
                        : arg_statement == "product"
                              ? kradon::verify_product_bound(h, arg_t, std::move(sels), limits)
                              : kradon::verify_sum_full_family(h, arg_t, std::move(sels), limits);
                emit(to_json(rec), common.format, common.out);
                return exit_for(rec);
            }
            if (arg_statement == "powerset") {
                if (arg_n == 0 || arg_t == 0)
                    throw kradon::malformed_input("need --n and --t");
                kradon::CrossMode mode =
                    arg_mode == "product" ? kradon::CrossMode::product : kradon::CrossMode::sum;
                kradon::VerdictRecord rec = kradon::verify_powerset_counts(
                    arg_n, arg_t, resolve_selectors(arg_select, arg_k), mode);
                emit(to_json(rec), common.format, common.out);
                return exit_for(rec);
            }
            if (arg_n == 0 || arg_r == 0 || arg_t == 0)
                throw kradon::malformed_input("need --n, --r and --t");
            kradon::VerdictRecord rec =
                arg_statement == "level-boundary"
                    ? kradon::complete_level_star_boundary(arg_n, arg_r, arg_t)
                    : kradon::verify_below_boundary_count(arg_n, arg_r, arg_t);
            emit(to_json(rec), common.format, common.out);
            return exit_for(rec);
        }

        if (app.got_subcommand(cmd_hunt)) {
            kradon::GroundSize ground{arg_n};
            kradon::HuntReport rep;
            if (arg_statement == "one-star") {
                std::cerr << "hunting one-star over downsets on [" << arg_n << "]\n";
                rep = kradon::hunt_hereditary_one_star(ground, common.workers);
            } else if (arg_statement == "cross-sum") {
                if (arg_r == 0) throw kradon::malformed_input("cross-sum needs --r");
                std::cerr << "hunting cross-sum at r=" << arg_r << " over downsets on [" << arg_n
                          << "]\n";
                rep = kradon::hunt_cross_sum_bound(ground, arg_r, common.workers);
            } else {
                if (arg_t == 0) throw kradon::malformed_input("level-star needs --t");
                if (arg_select.empty()) throw kradon::malformed_input("level-star needs --select");
                kradon::LevelSelector sel = parse_selector(arg_select.front());
                std::cerr << "hunting level-star at t=" << arg_t << " over downsets on [" << arg_n
                          << "]\n";
                rep = kradon::hunt_level_union_star(ground, arg_t, sel, common.workers);
            }
            std::cerr << "examined " << rep.examined << ", eligible " << rep.eligible
                      << ", findings " << rep.findings.size() << "\n";
            write_findings_file(arg_findings, rep);
            emit(to_json(rep), common.format, common.out);
            return exit_for(rep);
        }

        if (cmd_sharp->parsed()) {
            kradon::SetFamily f = kradon::sharpness_witness(arg_r, arg_t);
            if (common.format == "json") {
                emit(to_json(f), common.format, common.out);
            } else if (!common.out.empty()) {
                std::ofstream out(common.out);
                if (!out) throw kradon::malformed_input("cannot write to " + common.out);
                kradon::write_family(out, f);
            } else {
                kradon::write_family(std::cout, f);
            }
            return 0;
        }

        if (cmd_key->parsed()) {
            kradon::WitnessBundle w = kradon::keyint_witness(load_family(arg_family), arg_t);
            emit(to_json(w), common.format, common.out);
            return 0;
        }

        throw kradon::malformed_input("no subcommand given");
    } catch (const kradon::size_limit_error& e) {
        std::cerr << "limit: " << e.what() << " [" << e.limit_name << "]\n";
        return 3;
    } catch (const kradon::malformed_input& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const kradon::precondition_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::overflow_error& e) {
        std::cerr << "limit: " << e.what() << "\n";
        return 3;
    } catch (const std::logic_error& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 70;
    }
}

#include "sparsecert/scenario.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>

#include "sparsecert/csv.hpp"
#include "sparsecert/rng.hpp"

namespace sparsecert {

using nlohmann::json;

// ---------------------------------------------------------------------------
// Logging
// ---------------------------------------------------------------------------

namespace {

int log_level_from_env() {
    const char* env = std::getenv("SPARSECERT_LOG");
    if (!env) return 0;
    const std::string v(env);
    if (v == "debug") return 2;
    if (v == "info") return 1;
    return 0;
}

}  // namespace

bool log_enabled(int level) {
    static const int configured = log_level_from_env();
    return configured >= level;
}

void log_line(int level, const std::string& msg) {
    if (log_enabled(level)) std::cerr << "[sparsecert] " << msg << "\n";
}

// ---------------------------------------------------------------------------
// JSON encodings
// ---------------------------------------------------------------------------

json support_json(const SupportSet& s) { return json(s.indices()); }

SupportSet support_from_json(const json& j) {
    std::vector<int> idx;
    for (const auto& v : j) idx.push_back(v.get<int>());
    return SupportSet(idx);
}

json trace_json(const GreedyTrace& trace) {
    json iters = json::array();
    for (const auto& it : trace.iterations) {
        iters.push_back({{"selected", it.selected},
                         {"scores", it.scores},
                         {"tie", it.tie},
                         {"residual_norm", it.residual_norm}});
    }
    const char* reason = trace.terminated_reason == Termination::residual_zero     ? "residual_zero"
                         : trace.terminated_reason == Termination::max_iterations ? "max_iterations"
                                                                                   : "rank_failure";
    return {{"iterations", iters}, {"final_support", support_json(trace.final_support)}, {"terminated_reason", reason}};
}

json condition_report_json(const ConditionReport& rep) {
    json j{{"name", rep.name},
           {"value", rep.value},
           {"threshold", rep.threshold},
           {"strict", rep.strict},
           {"satisfied", rep.satisfied},
           {"exact", rep.exact}};
    json ctx;
    if (rep.context.k) ctx["k"] = *rep.context.k;
    if (rep.context.g) ctx["g"] = *rep.context.g;
    if (rep.context.b) ctx["b"] = *rep.context.b;
    if (rep.context.order) ctx["order"] = *rep.context.order;
    if (rep.context.q) ctx["q"] = *rep.context.q;
    if (rep.context.l) ctx["l"] = *rep.context.l;
    if (rep.context.p) ctx["p"] = *rep.context.p;
    if (rep.context.q_set) ctx["Q"] = support_json(*rep.context.q_set);
    if (rep.context.q_star) ctx["Qstar"] = support_json(*rep.context.q_star);
    j["context"] = ctx;
    if (!rep.note.empty()) j["note"] = rep.note;
    if (!rep.aux.empty()) j["aux"] = rep.aux;
    return j;
}

json generator_metadata_json(const GeneratorResult& gen, const Tolerances& tol) {
    const Spark sp = spark(gen.dict.atoms(), tol);
    return {{"construction", gen.meta.construction},
            {"params", gen.meta.params},
            {"mu", gen.meta.mu},
            {"spark", sp.comparison_value(gen.dict.size())},
            {"spark_finite", sp.finite()},
            {"kernel_dim", kernel_basis(gen.dict.atoms(), tol).cols()},
            {"canonical_Q", support_json(gen.meta.canonical_q)},
            {"canonical_Qstar", support_json(gen.meta.canonical_q_star)}};
}

// ---------------------------------------------------------------------------
// Scenario parsing
// ---------------------------------------------------------------------------

Scenario Scenario::from_json(const json& j) {
    Scenario s;
    if (j.contains("dictionary")) {
        const json& d = j.at("dictionary");
        if (d.contains("file")) s.dict_file = d.at("file").get<std::string>();
        if (d.contains("construction")) {
            s.construction = d.at("construction").get<std::string>();
            if (d.contains("params"))
                for (const auto& [key, val] : d.at("params").items()) s.gen_params[key] = val.get<double>();
        }
    }
    s.task = j.at("task").get<std::string>();
    if (j.contains("params")) s.params = j.at("params");
    if (j.contains("seed")) s.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("out")) s.out_path = j.at("out").get<std::string>();
    if (j.contains("tolerances")) {
        const json& t = j.at("tolerances");
        if (t.contains("rank")) s.tol.rank_tol = t.at("rank").get<double>();
        if (t.contains("tie")) s.tol.tie_tol = t.at("tie").get<double>();
        if (t.contains("cert")) s.tol.cert_tol = t.at("cert").get<double>();
    }
    s.tol.validate();
    return s;
}

Scenario Scenario::from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open scenario file " + path);
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw IoError("scenario parse error in " + path + ": " + e.what());
    }
    try {
        return from_json(j);
    } catch (const json::exception& e) {
        throw IoError("scenario field error in " + path + ": " + e.what());
    }
}

// ---------------------------------------------------------------------------
// Task dispatch
// ---------------------------------------------------------------------------

namespace {

Dictionary load_dictionary(const Scenario& s) {
    if (!s.dict_file.empty()) return Dictionary::build(read_matrix_csv(s.dict_file), false);
    if (!s.construction.empty()) return generate(s.construction, s.gen_params).dict;
    throw InvalidParams("scenario has no dictionary source");
}

Variant variant_from(const json& params, const char* key = "variant") {
    const std::string v = params.value(key, "omp");
    if (v == "omp") return Variant::omp;
    if (v == "ols") return Variant::ols;
    throw InvalidParams("unknown variant: " + v);
}

TiePolicy ties_from(const json& params) {
    const std::string v = params.value("ties", "lex");
    if (v == "adversarial") return TiePolicy::adversarial;
    if (v == "lex" || v == "lexicographic") return TiePolicy::lexicographic;
    throw InvalidParams("unknown tie policy: " + v);
}

Vector vector_param(const Scenario& s, const char* key) {
    const json& p = s.params;
    if (!p.contains(key)) throw InvalidParams(std::string("missing parameter: ") + key);
    if (p.at(key).is_string()) return read_vector_csv(p.at(key).get<std::string>());
    return p.at(key).get<Vector>();
}

ScenarioOutcome do_gen(const Scenario& s) {
    if (s.construction.empty()) throw InvalidParams("gen requires a generator dictionary source");
    const GeneratorResult gen = generate(s.construction, s.gen_params);
    json report = generator_metadata_json(gen, s.tol);
    if (!s.out_path.empty()) {
        write_matrix_csv(s.out_path, gen.dict.atoms());
        const std::string meta_path = s.out_path + ".meta.json";
        std::ofstream meta(meta_path);
        meta << report.dump(2) << "\n";
        report["csv"] = s.out_path;
        report["metadata"] = meta_path;
    }
    return {0, report};
}

ScenarioOutcome do_solve(const Scenario& s) {
    const Dictionary d = load_dictionary(s);
    const Vector y = vector_param(s, "y");
    const SupportSet q_init = s.params.contains("init_support") ? support_from_json(s.params.at("init_support"))
                                                                : SupportSet();
    std::optional<SupportSet> q_star;
    if (s.params.contains("true_support")) q_star = support_from_json(s.params.at("true_support"));

    GreedyConfig cfg;
    cfg.variant = variant_from(s.params);
    cfg.tie_policy = ties_from(s.params);
    cfg.tie_tol = s.tol.tie_tol;
    if (s.params.contains("max_iterations")) cfg.max_iterations = s.params.at("max_iterations").get<int>();

    const GreedyTrace trace = run(d, y, q_init, cfg, q_star, s.tol);
    json report = trace_json(trace);
    report["variant"] = s.params.value("variant", "omp");
    report["ties"] = s.params.value("ties", "lex");
    report["init_support"] = support_json(q_init);
    int code = 0;
    if (q_star) {
        const bool ok = success(trace, *q_star, q_init);
        report["true_support"] = support_json(*q_star);
        report["success"] = ok;
        code = ok ? 0 : 1;
    }
    return {code, report};
}

ScenarioOutcome do_check(const Scenario& s) {
    const Dictionary d = load_dictionary(s);
    const std::string cert = s.params.value("cert", "mu");
    const json& p = s.params;
    std::vector<ConditionReport> reports;

    auto geti = [&](const char* key) {
        if (!p.contains(key)) throw InvalidParams(std::string("check ") + cert + ": missing " + key);
        return p.at(key).get<int>();
    };

    if (cert == "mu") {
        const int k = geti("k"), g = geti("g"), b = geti("b");
        ConditionReport rep = analytic_bound("coherence_main",
                                             {.mu = mutual_coherence(d), .k = k, .g = g, .b = b}, s.tol);
        rep.name = "mu";
        reports.push_back(rep);
    } else if (cert == "erc") {
        const SupportSet q_star = support_from_json(p.at("Qstar"));
        const SupportSet q = p.contains("Q") ? support_from_json(p.at("Q")) : SupportSet();
        const Variant v = variant_from(p);
        ConditionReport rep = make_report(v == Variant::omp ? "partial_erc_omp" : "partial_erc_ols",
                                          partial_erc(d, q_star, q, v, s.tol), 1.0, true, true, s.tol);
        rep.context.q_set = q;
        rep.context.q_star = q_star;
        reports.push_back(rep);
    } else if (cert == "theta-oxx") {
        const int k = geti("k"), g = geti("g"), b = geti("b");
        const Variant v = variant_from(p);
        ConditionReport rep = make_report(v == Variant::omp ? "theta_omp" : "theta_ols",
                                          theta_oxx(d, k, g, b, v, s.tol), 1.0, true, true, s.tol);
        rep.context.k = k;
        rep.context.g = g;
        rep.context.b = b;
        reports.push_back(rep);
    } else if (cert == "theta-nsp") {
        const int k = geti("k"), g = geti("g"), b = geti("b");
        const double pv = p.value("p", 1.0);
        const ThetaNsp t = theta_nsp(d, k, g, b, pv, s.tol);
        ConditionReport rep = make_report("theta_nsp", t.value, 1.0, false, t.exact, s.tol);
        rep.context.k = k;
        rep.context.g = g;
        rep.context.b = b;
        rep.context.p = pv;
        reports.push_back(rep);
    } else if (cert == "ric") {
        const int k = geti("k"), g = geti("g"), b = geti("b");
        const int order = p.value("order", k + b + 1);
        ConditionReport rep = analytic_bound("ric_omp_informed",
                                             {.delta = ric(d, order, s.tol), .k = k, .g = g, .b = b}, s.tol);
        rep.name = "ric";
        rep.context.order = order;
        reports.push_back(rep);
    } else if (cert == "prip") {
        const int q = geti("q"), l = geti("l");
        const PripConstants c = prip(d, q, l, s.tol);
        ConditionReport low = make_report("prip_delta_low", c.delta_low, 1.0, true, true, s.tol);
        low.context.q = q;
        low.context.l = l;
        ConditionReport up = make_report("prip_delta_up", c.delta_up, 1.0, true, true, s.tol);
        up.context.q = q;
        up.context.l = l;
        reports.push_back(low);
        reports.push_back(up);
    } else if (cert == "proj-coherence") {
        const int l = geti("l");
        const Variant v = variant_from(p);
        double threshold = 1.0;
        if (p.contains("k") && p.contains("g")) {
            const int k = p.at("k").get<int>(), g = p.at("g").get<int>();
            if (2 * k - 2 * g - 1 > 0) threshold = 1.0 / (2 * k - 2 * g - 1);
        }
        ConditionReport rep = make_report(v == Variant::omp ? "mu_l_omp" : "mu_l_ols",
                                          projected_coherence(d, l, v, s.tol), threshold, true, true, s.tol);
        rep.context.l = l;
        reports.push_back(rep);
    } else if (cert == "bounds") {
        const int k = geti("k"), g = geti("g"), b = geti("b");
        const double mu = mutual_coherence(d);
        reports.push_back(analytic_bound("coherence_main", {.mu = mu, .k = k, .g = g, .b = b}, s.tol));
        reports.push_back(analytic_bound("coherence_classic", {.mu = mu, .k = k}, s.tol));
        const double delta_inf = ric(d, std::min(k + b + 1, d.size()), s.tol);
        reports.push_back(analytic_bound("ric_omp_informed", {.delta = delta_inf, .k = k, .g = g, .b = b}, s.tol));
        const double delta_cls = ric(d, std::min(k + 1, d.size()), s.tol);
        reports.push_back(analytic_bound("ric_omp_classic", {.delta = delta_cls, .k = k}, s.tol));
        if (2 * k <= d.size()) {
            reports.push_back(
                analytic_bound("ric_l1_informed", {.delta = ric(d, 2 * k, s.tol), .k = k, .g = g, .b = b}, s.tol));
        }
        if (k + b - 1 <= 0 || mu < 1.0 / (k + b - 1))
            reports.push_back(analytic_bound("prop1_bound", {.mu = mu, .k = k, .g = g, .b = b}, s.tol));
        if (g + b <= 1 || mu < 1.0 / (g + b - 1))
            reports.push_back(analytic_bound("lemma4_values", {.mu = mu, .q = 2, .l = g + b}, s.tol));
        if (g + b == 0 || mu < 1.0 / (g + b))
            reports.push_back(analytic_bound("lemma5_bound", {.mu = mu, .l = g + b}, s.tol));
        const Spark sp = spark(d.atoms(), s.tol);
        reports.push_back(
            analytic_bound("spark_ols_kminus1", {.k = k, .b = b, .spark = sp.comparison_value(d.size())}, s.tol));
    } else {
        throw InvalidParams("unknown certificate: " + cert);
    }

    json arr = json::array();
    bool all_ok = true;
    for (const auto& rep : reports) {
        arr.push_back(condition_report_json(rep));
        all_ok = all_ok && rep.satisfied;
    }
    return {all_ok ? 0 : 1, arr};
}

ScenarioOutcome do_relax(const Scenario& s) {
    const Dictionary d = load_dictionary(s);
    const SupportSet q = s.params.contains("Q") ? support_from_json(s.params.at("Q")) : SupportSet();
    const double p = s.params.value("p", 1.0);

    if (s.params.contains("x_star")) {
        Vector xs;
        if (s.params.at("x_star").is_string())
            xs = read_vector_csv(s.params.at("x_star").get<std::string>());
        else
            xs = s.params.at("x_star").get<Vector>();
        const SparseVector x_star = SparseVector::from(xs, s.tol.rank_tol);
        const MinimizerVerdict v = verify_lp_minimizer(d, x_star, q, p, s.tol);
        json report{{"status", to_string(v.status)},
                    {"p", p},
                    {"Q", support_json(q)},
                    {"objective", lp_objective(x_star, q, p, s.tol.rank_tol)}};
        if (v.witness) {
            report["witness"] = *v.witness;
            report["witness_objective"] =
                lp_objective(SparseVector::from(*v.witness, s.tol.rank_tol), q, p, s.tol.rank_tol);
        }
        return {v.status == MinimizerStatus::unique_minimizer ? 0 : 1, report};
    }

    const Vector y = vector_param(s, "y");
    const int max_extra = s.params.value("max_extra", 4);
    const P0Result res = solve_p0_informed(d, y, q, max_extra, s.tol);
    json sols = json::array();
    for (const auto& sol : res.solutions)
        sols.push_back({{"entries", sol.entries}, {"support", support_json(sol.support)}});
    json report{{"unique", res.unique}, {"solutions", sols}, {"Q", support_json(q)}};
    return {res.unique ? 0 : 1, report};
}

ScenarioOutcome do_reproduce(const Scenario& s) {
    std::vector<std::string> claims;
    if (s.params.contains("claims"))
        for (const auto& c : s.params.at("claims")) claims.push_back(c.get<std::string>());
    else
        claims = registered_claims();
    const std::vector<ReproReport> reports = reproduce_suite(claims, s.tol, s.seed);
    bool all_pass = true;
    for (const auto& r : reports) all_pass = all_pass && r.pass;
    return {all_pass ? 0 : 1, repro_reports_json(reports)};
}

ScenarioOutcome do_sweep(const Scenario& s) {
    SweepSpec spec;
    if (s.params.contains("construction")) spec.construction = s.params.at("construction").get<std::string>();
    if (s.params.contains("k")) spec.ks = s.params.at("k").get<std::vector<int>>();
    if (s.params.contains("g")) spec.gs = s.params.at("g").get<std::vector<int>>();
    if (s.params.contains("b")) spec.bs = s.params.at("b").get<std::vector<int>>();
    if (s.params.contains("draws")) spec.draws = s.params.at("draws").get<int>();
    if (s.params.contains("jobs")) spec.jobs = s.params.at("jobs").get<int>();
    spec.seed = s.seed;
    const std::string csv = sweep_csv(spec, s.tol);
    if (!s.out_path.empty()) {
        std::ofstream out(s.out_path);
        if (!out) throw IoError("cannot write " + s.out_path);
        out << csv;
    }
    return {0, json{{"csv", csv}}};
}

}  // namespace

ScenarioOutcome run_scenario(const Scenario& s) {
    ScenarioOutcome outcome;
    try {
        log_line(1, "task " + s.task);
        if (s.task == "gen")
            outcome = do_gen(s);
        else if (s.task == "solve")
            outcome = do_solve(s);
        else if (s.task == "check")
            outcome = do_check(s);
        else if (s.task == "relax")
            outcome = do_relax(s);
        else if (s.task == "reproduce")
            outcome = do_reproduce(s);
        else if (s.task == "sweep")
            outcome = do_sweep(s);
        else
            throw InvalidParams("unknown task: " + s.task);
    } catch (const std::exception& e) {
        outcome.exit_code = 2;
        outcome.report = json{{"error", e.what()}};
        log_line(1, std::string("error: ") + e.what());
    }
    if (!s.out_path.empty() && s.task != "gen" && s.task != "sweep" && outcome.exit_code != 2) {
        std::ofstream out(s.out_path);
        if (out) out << outcome.report.dump(2) << "\n";
    }
    return outcome;
}

json repro_reports_json(const std::vector<ReproReport>& reports) {
    json arr = json::array();
    for (const auto& r : reports)
        arr.push_back({{"claim", r.claim},
                       {"measured", r.measured},
                       {"expected", r.expected},
                       {"pass", r.pass},
                       {"runtime_seconds", r.runtime_seconds}});
    return arr;
}

}  // namespace sparsecert

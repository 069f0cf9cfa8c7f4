// Command-line front end: gen, solve, check, relax, reproduce, sweep, plus
// `run` for scenario files. Reports are JSON on stdout (or --out); sweeps
// emit CSV. Exit codes: 0 pass/success, 1 certified failure, 2 error.

#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "sparsecert/scenario.hpp"

using nlohmann::json;
using namespace sparsecert;

namespace {

struct GlobalOpts {
    double tol_rank = 1e-10;
    double tol_tie = 1e-9;
    double tol_cert = 1e-9;
    int jobs = 1;
    std::uint64_t seed = 0;
    std::string out;
};

struct DictOpts {
    std::string dict_file;
    std::string construction;
    int k = -1, g = -1, b = -1, n = -1;
    double gamma = 0.0, alpha = 0.0, mu = -1.0;
};

void add_dict_options(CLI::App* cmd, DictOpts& d, bool generator_only = false) {
    if (!generator_only) cmd->add_option("--dict", d.dict_file, "dictionary CSV file");
    cmd->add_option("--construction", d.construction,
                    "generator: equiangular|example1|lemma1|example2|example3");
    cmd->add_option("--k", d.k, "sparsity k");
    cmd->add_option("--g", d.g, "good atoms in the informed support");
    cmd->add_option("--b", d.b, "bad atoms in the informed support");
    cmd->add_option("--n", d.n, "dictionary size (example1)");
    cmd->add_option("--gamma", d.gamma, "example1 gamma");
    cmd->add_option("--alpha", d.alpha, "example2 alpha");
    cmd->add_option("--mu", d.mu, "example3 coherence");
}

void fill_scenario_dict(Scenario& s, const DictOpts& d) {
    s.dict_file = d.dict_file;
    s.construction = d.construction;
    if (!d.construction.empty()) {
        auto put = [&](const char* key, double v) { s.gen_params[key] = v; };
        if (d.k >= 0) put("k", d.k);
        if (d.g >= 0) put("g", d.g);
        if (d.b >= 0) put("b", d.b);
        if (d.n >= 0) put("n", d.n);
        if (d.construction == "example1") put("gamma", d.gamma);
        if (d.construction == "example2") put("alpha", d.alpha);
        if (d.construction == "example3" && d.mu >= 0.0) put("mu", d.mu);
    }
}

json parse_index_list(const std::string& csv) {
    json arr = json::array();
    if (csv.empty()) return arr;
    size_t pos = 0;
    while (pos < csv.size()) {
        size_t comma = csv.find(',', pos);
        if (comma == std::string::npos) comma = csv.size();
        arr.push_back(std::stoi(csv.substr(pos, comma - pos)));
        pos = comma + 1;
    }
    return arr;
}

int emit(const ScenarioOutcome& outcome, const GlobalOpts& g, const std::string& task) {
    if (task == "sweep" && outcome.exit_code != 2) {
        if (g.out.empty()) std::cout << outcome.report.at("csv").get<std::string>();
    } else {
        std::cout << outcome.report.dump(2) << "\n";
    }
    return outcome.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"sparse recovery certificates and support-informed greedy solvers"};
    app.require_subcommand(1);
    app.fallthrough();  // global flags may follow the subcommand

    GlobalOpts g;
    app.add_option("--tol-rank", g.tol_rank, "rank tolerance")->capture_default_str();
    app.add_option("--tol-tie", g.tol_tie, "tie tolerance")->capture_default_str();
    app.add_option("--tol-cert", g.tol_cert, "certificate tolerance")->capture_default_str();
    app.add_option("--jobs", g.jobs, "worker threads for sweeps")->capture_default_str();
    app.add_option("--seed", g.seed, "seed for randomized draws")->capture_default_str();
    app.add_option("--out", g.out, "write the report to this path");

    auto make_scenario = [&](const std::string& task) {
        Scenario s;
        s.task = task;
        s.seed = g.seed;
        s.out_path = g.out;
        s.tol.rank_tol = g.tol_rank;
        s.tol.tie_tol = g.tol_tie;
        s.tol.cert_tol = g.tol_cert;
        s.tol.validate();
        return s;
    };

    // gen
    auto* gen_cmd = app.add_subcommand("gen", "generate a dictionary CSV plus JSON metadata sidecar");
    DictOpts gen_dict;
    add_dict_options(gen_cmd, gen_dict, true);

    // solve
    auto* solve_cmd = app.add_subcommand("solve", "run OMP/OLS from an informed support; emits the trace");
    DictOpts solve_dict;
    add_dict_options(solve_cmd, solve_dict);
    std::string solve_y, solve_init, solve_variant = "omp", solve_ties = "lex", solve_true;
    solve_cmd->add_option("--y", solve_y, "input vector CSV")->required();
    solve_cmd->add_option("--init-support", solve_init, "comma list of initial support indices");
    solve_cmd->add_option("--variant", solve_variant, "omp|ols")->capture_default_str();
    solve_cmd->add_option("--ties", solve_ties, "adversarial|lex")->capture_default_str();
    solve_cmd->add_option("--true-support", solve_true, "comma list; enables success adjudication");

    // check
    auto* check_cmd = app.add_subcommand("check", "evaluate a recovery certificate; emits report JSON");
    DictOpts check_dict;
    add_dict_options(check_cmd, check_dict);
    std::string check_cert = "mu", check_variant = "omp", check_qstar, check_q;
    double check_p = 1.0;
    int check_order = -1, check_qq = -1, check_l = -1;
    check_cmd->add_option("--cert", check_cert, "mu|erc|theta-oxx|theta-nsp|ric|prip|proj-coherence|bounds")
        ->capture_default_str();
    check_cmd->add_option("--p", check_p, "exponent for theta-nsp");
    check_cmd->add_option("--variant", check_variant, "omp|ols")->capture_default_str();
    check_cmd->add_option("--Qstar", check_qstar, "comma list: true support");
    check_cmd->add_option("--Q", check_q, "comma list: informed support");
    check_cmd->add_option("--order", check_order, "RIC order (default k+b+1)");
    check_cmd->add_option("--q", check_qq, "P-RIP subset size");
    check_cmd->add_option("--l", check_l, "projection subset size");

    // relax
    auto* relax_cmd = app.add_subcommand("relax", "informed l0 solve or lp minimizer verification");
    DictOpts relax_dict;
    add_dict_options(relax_cmd, relax_dict);
    std::string relax_y, relax_q, relax_xstar;
    double relax_p = 1.0;
    int relax_max_extra = 4;
    relax_cmd->add_option("--y", relax_y, "input vector CSV (informed l0 mode)");
    relax_cmd->add_option("--Q", relax_q, "comma list: informed support");
    relax_cmd->add_option("--p", relax_p, "objective exponent in [0,1]")->capture_default_str();
    relax_cmd->add_option("--x-star", relax_xstar, "candidate solution CSV (verification mode)");
    relax_cmd->add_option("--max-extra", relax_max_extra, "informed l0 search budget")->capture_default_str();

    // reproduce
    auto* repro_cmd = app.add_subcommand("reproduce", "run registered reproduction claims");
    std::vector<std::string> repro_claims;
    bool repro_list = false;
    repro_cmd->add_option("--claims", repro_claims, "claim names (default: all)")->delimiter(',');
    repro_cmd->add_flag("--list", repro_list, "list registered claims and exit");

    // sweep
    auto* sweep_cmd = app.add_subcommand("sweep", "grid of (k,g,b) cells; emits CSV");
    std::string sweep_construction = "equiangular";
    std::vector<int> sweep_k{2, 3}, sweep_g{0, 1}, sweep_b{0, 1};
    int sweep_draws = 5;
    sweep_cmd->add_option("--construction", sweep_construction, "equiangular|lemma1|identity|random")
        ->capture_default_str();
    sweep_cmd->add_option("--k", sweep_k, "k values")->delimiter(',');
    sweep_cmd->add_option("--g", sweep_g, "g values")->delimiter(',');
    sweep_cmd->add_option("--b", sweep_b, "b values")->delimiter(',');
    sweep_cmd->add_option("--draws", sweep_draws, "coefficient draws per cell")->capture_default_str();

    // run <scenario.json>
    auto* run_cmd = app.add_subcommand("run", "execute a scenario file");
    std::string scenario_path;
    run_cmd->add_option("file", scenario_path, "scenario JSON path")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (gen_cmd->parsed()) {
            Scenario s = make_scenario("gen");
            fill_scenario_dict(s, gen_dict);
            return emit(run_scenario(s), g, s.task);
        }
        if (solve_cmd->parsed()) {
            Scenario s = make_scenario("solve");
            fill_scenario_dict(s, solve_dict);
            s.params["y"] = solve_y;
            s.params["variant"] = solve_variant;
            s.params["ties"] = solve_ties;
            if (!solve_init.empty()) s.params["init_support"] = parse_index_list(solve_init);
            if (!solve_true.empty()) s.params["true_support"] = parse_index_list(solve_true);
            return emit(run_scenario(s), g, s.task);
        }
        if (check_cmd->parsed()) {
            Scenario s = make_scenario("check");
            fill_scenario_dict(s, check_dict);
            s.params["cert"] = check_cert;
            s.params["variant"] = check_variant;
            if (check_dict.k >= 0) s.params["k"] = check_dict.k;
            if (check_dict.g >= 0) s.params["g"] = check_dict.g;
            if (check_dict.b >= 0) s.params["b"] = check_dict.b;
            if (check_cmd->count("--p")) s.params["p"] = check_p;
            if (!check_qstar.empty()) s.params["Qstar"] = parse_index_list(check_qstar);
            if (!check_q.empty()) s.params["Q"] = parse_index_list(check_q);
            if (check_order >= 0) s.params["order"] = check_order;
            if (check_qq >= 0) s.params["q"] = check_qq;
            if (check_l >= 0) s.params["l"] = check_l;
            return emit(run_scenario(s), g, s.task);
        }
        if (relax_cmd->parsed()) {
            Scenario s = make_scenario("relax");
            fill_scenario_dict(s, relax_dict);
            if (!relax_y.empty()) s.params["y"] = relax_y;
            if (!relax_q.empty()) s.params["Q"] = parse_index_list(relax_q);
            s.params["p"] = relax_p;
            s.params["max_extra"] = relax_max_extra;
            if (!relax_xstar.empty()) s.params["x_star"] = relax_xstar;
            return emit(run_scenario(s), g, s.task);
        }
        if (repro_cmd->parsed()) {
            if (repro_list) {
                for (const auto& c : registered_claims()) std::cout << c << "\n";
                return 0;
            }
            Scenario s = make_scenario("reproduce");
            if (!repro_claims.empty()) s.params["claims"] = repro_claims;
            return emit(run_scenario(s), g, s.task);
        }
        if (sweep_cmd->parsed()) {
            Scenario s = make_scenario("sweep");
            s.params["construction"] = sweep_construction;
            s.params["k"] = sweep_k;
            s.params["g"] = sweep_g;
            s.params["b"] = sweep_b;
            s.params["draws"] = sweep_draws;
            s.params["jobs"] = g.jobs;
            return emit(run_scenario(s), g, s.task);
        }
        if (run_cmd->parsed()) {
            Scenario s = Scenario::from_file(scenario_path);
            if (!g.out.empty()) s.out_path = g.out;
            if (app.count("--seed")) s.seed = g.seed;
            return emit(run_scenario(s), g, s.task);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}

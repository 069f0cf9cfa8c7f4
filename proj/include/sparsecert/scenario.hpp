#ifndef SPARSECERT_SCENARIO_HPP
#define SPARSECERT_SCENARIO_HPP

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "sparsecert/conditions.hpp"
#include "sparsecert/greedy.hpp"
#include "sparsecert/relax.hpp"

namespace sparsecert {

/// One self-contained experiment: a dictionary source, a task and its
/// parameters. The seed fully determines every randomized draw.
struct Scenario {
    std::string dict_file;                    // file-based source when nonempty
    std::string construction;                 // generator-based source when nonempty
    std::map<std::string, double> gen_params;
    std::string task;                         // gen | solve | check | relax | reproduce | sweep
    nlohmann::json params;                    // task-specific options
    std::uint64_t seed = 0;
    std::string out_path;                      // optional report destination
    Tolerances tol;

    static Scenario from_json(const nlohmann::json& j);
    static Scenario from_file(const std::string& path);
};

struct ScenarioOutcome {
    int exit_code = 2;  // 0 pass/success, 1 certified failure, 2 error
    nlohmann::json report;
};

/// Dispatches the scenario, writes the report to out_path when set and
/// returns it. Configuration errors surface as exit code 2 with an "error"
/// report instead of an exception.
ScenarioOutcome run_scenario(const Scenario& s);

// ---------------------------------------------------------------------------
// Reproduction suite
// ---------------------------------------------------------------------------

struct ReproReport {
    std::string claim;
    nlohmann::json measured;
    nlohmann::json expected;
    bool pass = false;
    double runtime_seconds = 0.0;
};

const std::vector<std::string>& registered_claims();

/// Runs each claim's experiment at its registered desk-scale parameters.
/// Unknown claim names raise UnknownClaim.
std::vector<ReproReport> reproduce_suite(const std::vector<std::string>& claims, const Tolerances& tol = {},
                                         std::uint64_t seed = 0);

nlohmann::json repro_reports_json(const std::vector<ReproReport>& reports);

// ---------------------------------------------------------------------------
// Sweeps
// ---------------------------------------------------------------------------

struct SweepSpec {
    std::string construction = "equiangular";  // equiangular | lemma1 | identity | random
    std::vector<int> ks{2, 3};
    std::vector<int> gs{0, 1};
    std::vector<int> bs{0, 1};
    int draws = 5;
    std::uint64_t seed = 0;
    int jobs = 1;
};

/// One CSV row per admissible grid cell: coherence, thresholds, certificate
/// values and greedy success rates under both tie policies. Byte-identical
/// for identical spec + seed.
std::string sweep_csv(const SweepSpec& spec, const Tolerances& tol = {});

// ---------------------------------------------------------------------------
// JSON encodings shared by the CLI and the tests
// ---------------------------------------------------------------------------

nlohmann::json trace_json(const GreedyTrace& trace);
nlohmann::json condition_report_json(const ConditionReport& rep);
nlohmann::json generator_metadata_json(const GeneratorResult& gen, const Tolerances& tol);
nlohmann::json support_json(const SupportSet& s);
SupportSet support_from_json(const nlohmann::json& j);

/// Log level from SPARSECERT_LOG (off | info | debug).
bool log_enabled(int level);  // 1 = info, 2 = debug
void log_line(int level, const std::string& msg);

}  // namespace sparsecert

#endif

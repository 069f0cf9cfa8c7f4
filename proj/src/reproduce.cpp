#include <chrono>
#include <cmath>
#include <numeric>

#include "sparsecert/csv.hpp"
#include "sparsecert/rng.hpp"
#include "sparsecert/scenario.hpp"

namespace sparsecert {

using nlohmann::json;

namespace {

// The (k, g, b) grid used by the tightness claims.
const std::vector<std::tuple<int, int, int>>& tightness_grid() {
    static const std::vector<std::tuple<int, int, int>> grid = [] {
        std::vector<std::tuple<int, int, int>> g;
        for (int k : {2, 3, 4})
            for (int gg : {0, 1})
                for (int b : {0, 1})
                    if (gg < k) g.emplace_back(k, gg, b);
        return g;
    }();
    return grid;
}

Vector combine(const Dictionary& d, const SupportSet& s, const Vector& coef) {
    Vector y(d.dim(), 0.0);
    for (int j = 0; j < s.size(); ++j) {
        const Vector a = d.atom(s[j]);
        for (int r = 0; r < d.dim(); ++r) y[r] += coef[j] * a[r];
    }
    return y;
}

// Enumerates every (Q*, Q) with |Q*| = k, |Q*∩Q| = g, |bad| = b.
void for_each_pair(int n, int k, int g, int b,
                   const std::function<void(const SupportSet&, const SupportSet&)>& fn) {
    std::vector<int> all(n);
    std::iota(all.begin(), all.end(), 0);
    for_each_subset(all, k, [&](const std::vector<int>& qs) {
        const SupportSet q_star(qs);
        for_each_subset(qs, g, [&](const std::vector<int>& good) {
            for_each_subset(q_star.complement(n).indices(), b, [&](const std::vector<int>& bad) {
                std::vector<int> qv = good;
                qv.insert(qv.end(), bad.begin(), bad.end());
                fn(q_star, SupportSet(qv));
                return true;
            });
            return true;
        });
        return true;
    });
}

// Seeded dictionary bank mixing near-orthonormal and plain Gaussian frames.
Dictionary bank_dictionary(std::uint64_t seed, int idx) {
    const std::uint64_t s = seed * 7919 + idx;
    if (idx % 2 == 0) return random_dictionary(7, 7, s, "jittered_identity");
    const int n = 6 + idx % 3;
    return random_dictionary(n, n, s, "gaussian");
}

double ones_quadratic_form(const Matrix& g) {  // 1ᵀ G⁻¹ 1 through the eigendecomposition
    const EigResult e = symmetric_eig(g);
    const Vector vt1 = matvec_transposed(e.vectors, Vector(g.rows(), 1.0));
    double s = 0.0;
    for (int i = 0; i < g.rows(); ++i) s += vt1[i] * vt1[i] / e.values[i];
    return s;
}

double selection_margin(const IterationRecord& rec) {
    double runner = 0.0;
    for (size_t i = 0; i < rec.scores.size(); ++i)
        if (static_cast<int>(i) != rec.selected) runner = std::max(runner, rec.scores[i]);
    return rec.scores[rec.selected] - runner;
}

// ---------------------------------------------------------------------------
// Claims
// ---------------------------------------------------------------------------

ReproReport claim_thm3_sufficient(const Tolerances& tol, std::uint64_t seed) {
    ReproReport rep;
    rep.claim = "thm3-sufficient";
    Rng rng(seed ^ 0x315ULL);
    long runs = 0, failures = 0, cells = 0;
    for (int idx = 0; idx < 10; ++idx) {
        const Dictionary d = bank_dictionary(seed, idx);
        const double mu = mutual_coherence(d);
        const int n = d.size();
        for (int k = 1; k <= 3; ++k)
            for (int g = 0; g < k; ++g)
                for (int b = 0; b <= 1; ++b) {
                    if (k + b >= n) continue;
                    if (!(mu < 1.0 / (2 * k - g + b - 1) - tol.cert_tol)) continue;
                    ++cells;
                    for_each_pair(n, k, g, b, [&](const SupportSet& q_star, const SupportSet& q) {
                        Vector coef(k);
                        for (double& c : coef) c = rng.coefficient();
                        const Vector y = combine(d, q_star, coef);
                        for (Variant variant : {Variant::omp, Variant::ols}) {
                            GreedyConfig cfg;
                            cfg.variant = variant;
                            cfg.tie_policy = TiePolicy::adversarial;
                            cfg.tie_tol = tol.tie_tol;
                            cfg.max_iterations = k - g;
                            ++runs;
                            if (!success(run(d, y, q, cfg, q_star, tol), q_star, q)) ++failures;
                        }
                    });
                }
    }
    rep.measured = {{"dictionaries", 10}, {"cells", cells}, {"runs", runs}, {"failures", failures}};
    rep.expected = {{"failures", 0}};
    rep.pass = failures == 0 && runs > 0;
    return rep;
}

ReproReport claim_thm3_converse(const Tolerances& tol, std::uint64_t) {
    ReproReport rep;
    rep.claim = "thm3-converse";
    int cells = 0, failures = 0;
    for (auto [k, g, b] : tightness_grid()) {
        const GeneratorResult gen = generate_equiangular(k, g, b);
        const AdversarialInstance inst = adversarial_instance(gen.dict, k, g, b, tol);
        ++cells;
        for (Variant variant : {Variant::omp, Variant::ols}) {
            GreedyConfig cfg;
            cfg.variant = variant;
            cfg.tie_policy = TiePolicy::adversarial;
            cfg.tie_tol = tol.tie_tol;
            cfg.max_iterations = 1;
            const GreedyTrace trace = run(gen.dict, inst.y, inst.q, cfg, inst.q_star, tol);
            const bool bad_first = !trace.iterations.empty() && trace.iterations[0].tie &&
                                   !inst.q_star.contains(trace.iterations[0].selected) &&
                                   !success(trace, inst.q_star, inst.q);
            if (!bad_first) ++failures;
        }
    }
    rep.measured = {{"cells", cells}, {"failures", failures}};
    rep.expected = {{"failures", 0}};
    rep.pass = failures == 0 && cells == static_cast<int>(tightness_grid().size());
    return rep;
}

ReproReport claim_thm5_sufficient(const Tolerances& tol, std::uint64_t seed) {
    ReproReport rep;
    rep.claim = "thm5-sufficient";
    Rng rng(seed ^ 0x515ULL);
    long verdicts = 0, failures = 0;
    for (auto [k, g, b] : tightness_grid()) {
        // one extra bad slot drops mu strictly below the (k, g, b) threshold
        const GeneratorResult gen = generate_equiangular(k, g, b + 1);
        const Dictionary& d = gen.dict;
        if (!(mutual_coherence(d) < 1.0 / (2 * k - g + b - 1) - tol.cert_tol)) {
            ++failures;
            continue;
        }
        for_each_pair(d.size(), k, g, b, [&](const SupportSet& q_star, const SupportSet& q) {
            Vector xs(d.size(), 0.0);
            for (int i : q_star.indices()) xs[i] = rng.coefficient();
            const SparseVector x_star = SparseVector::from(xs, tol.rank_tol);
            for (double p : {0.0, 0.5, 1.0}) {
                ++verdicts;
                if (verify_lp_minimizer(d, x_star, q, p, tol).status != MinimizerStatus::unique_minimizer)
                    ++failures;
            }
        });
    }
    rep.measured = {{"verdicts", verdicts}, {"failures", failures}};
    rep.expected = {{"failures", 0}};
    rep.pass = failures == 0 && verdicts > 0;
    return rep;
}

ReproReport claim_thm5_converse(const Tolerances& tol, std::uint64_t) {
    ReproReport rep;
    rep.claim = "thm5-converse";
    int verdicts = 0, failures = 0;
    for (auto [k, g, b] : tightness_grid()) {
        const GeneratorResult gen = generate_equiangular(k, g, b);
        const AdversarialInstance inst = adversarial_instance(gen.dict, k, g, b, tol);
        const SparseVector x_star = SparseVector::from(inst.x_star, tol.rank_tol);
        for (double p : {0.0, 0.5, 1.0}) {
            ++verdicts;
            const MinimizerStatus st = verify_lp_minimizer(gen.dict, x_star, inst.q, p, tol).status;
            if (st != MinimizerStatus::minimizer_not_unique && st != MinimizerStatus::not_minimizer) ++failures;
        }
    }
    rep.measured = {{"verdicts", verdicts}, {"failures", failures}};
    rep.expected = {{"failures", 0}};
    rep.pass = failures == 0 && verdicts > 0;
    return rep;
}

// Shared dictionary set for the ordering claims: equiangular grid, the
// example1 family and twenty seeded one-dimensional-kernel dictionaries.
std::vector<Dictionary> ordering_bank(std::uint64_t seed) {
    std::vector<Dictionary> dicts;
    for (auto [k, g, b] : tightness_grid()) dicts.push_back(generate_equiangular(k, g, b).dict);
    for (int n : {5, 6, 8}) dicts.push_back(generate_example1(n, 0.8 / (n - 2)).dict);
    for (int i = 0; i < 20; ++i) {
        const int n = 6 + i % 4;
        dicts.push_back(random_dictionary(n - 1, n, seed * 31 + 100 + i, "gaussian"));
    }
    return dicts;
}

ReproReport claim_thm6_ordering(const Tolerances& tol, std::uint64_t seed) {
    ReproReport rep;
    rep.claim = "thm6-ordering";
    const std::vector<double> ps{0.0, 0.25, 0.5, 0.75, 1.0};
    long cells = 0, violations = 0;
    const auto dicts = ordering_bank(seed);
    for (const Dictionary& d : dicts) {
        const Spark sp = spark(d.atoms(), tol);
        for (int k = 1; k <= 3; ++k)
            for (int g = 0; g < k; ++g)
                for (int b = 0; b <= 1; ++b) {
                    if (!sp.exceeds(k + b) || k + b >= d.size()) continue;
                    ++cells;
                    double prev = -1.0;
                    for (double p : ps) {
                        const ThetaNsp t = theta_nsp(d, k, g, b, p, tol);
                        if (t.value < prev - tol.cert_tol) ++violations;
                        prev = t.value;
                    }
                }
    }
    rep.measured = {{"dictionaries", dicts.size()}, {"cells", cells}, {"violations", violations}};
    rep.expected = {{"violations", 0}};
    rep.pass = violations == 0 && cells > 0;
    return rep;
}

ReproReport claim_thm7_ordering(const Tolerances& tol, std::uint64_t seed) {
    ReproReport rep;
    rep.claim = "thm7-ordering";
    long cells = 0, violations = 0, skipped = 0;
    const auto dicts = ordering_bank(seed);
    for (const Dictionary& d : dicts) {
        const Spark sp = spark(d.atoms(), tol);
        const int n = d.size();
        for (int k = 1; k <= 3; ++k)
            for (int g = 0; g < k; ++g)
                for (int b = 0; b <= 1; ++b) {
                    if (!sp.exceeds(k + b) || k + b >= n) continue;
                    if (binomial(n, k) * binomial(k, g) * binomial(n - k, b) > 100000) {
                        ++skipped;
                        continue;
                    }
                    ++cells;
                    const double t1 = theta_nsp(d, k, g, b, 1.0, tol).value;
                    const double tomp = theta_oxx(d, k, g, b, Variant::omp, tol);
                    if (t1 > tomp + tol.cert_tol) ++violations;
                }
    }
    rep.measured = {{"cells", cells}, {"skipped", skipped}, {"violations", violations}};
    rep.expected = {{"violations", 0}};
    rep.pass = violations == 0 && cells > 0;
    return rep;
}

ReproReport claim_lemma1(const Tolerances& tol, std::uint64_t) {
    ReproReport rep;
    rep.claim = "lemma1";
    json measured = json::array(), expected = json::array();
    bool pass = true;
    for (auto [k, g, b] : std::vector<std::tuple<int, int, int>>{{3, 1, 0}, {4, 1, 1}, {4, 3, 1}}) {
        const GeneratorResult gen = generate_lemma1(k, g, b);
        const double delta = ric(gen.dict, k + b + 1, tol);
        const double want = g == k - 1 ? 1.0 : 1.0 / std::sqrt(double(k - g));
        pass = pass && std::fabs(delta - want) < 1e-9;

        // residual after Q ties every remaining candidate at score one
        const Vector y = combine(gen.dict, gen.meta.canonical_q_star, Vector(k, 1.0));
        const Vector r = project_complement(gen.dict.atoms().columns(gen.meta.canonical_q.indices()), y, tol);
        double worst_tie = 0.0;
        for (Variant variant : {Variant::omp, Variant::ols}) {
            GreedyConfig cfg;
            cfg.variant = variant;
            const Selection sel = select_next(gen.dict, gen.meta.canonical_q, r, cfg, std::nullopt, tol);
            for (int i = g + b; i < gen.dict.size(); ++i)
                worst_tie = std::max(worst_tie, std::fabs(sel.scores[i] - 1.0));
        }
        pass = pass && worst_tie < 1e-9;
        measured.push_back({{"k", k}, {"g", g}, {"b", b}, {"delta", delta}, {"tie_spread", worst_tie}});
        expected.push_back({{"delta", want}, {"tie_spread", 0.0}});
    }
    rep.measured = measured;
    rep.expected = expected;
    rep.pass = pass;
    return rep;
}

ReproReport claim_lemma2(const Tolerances& tol, std::uint64_t) {
    ReproReport rep;
    rep.claim = "lemma2";
    int cases = 0, failures = 0;
    for (int k : {2, 3, 4})
        for (int g = 0; g < k && g <= 2; ++g) {
            const GeneratorResult gen = generate_equiangular(k, g, 0);
            const Dictionary& d = gen.dict;
            const SupportSet q = SupportSet::range(0, g);
            const SupportSet q1 = SupportSet::range(g, k - g);
            const SupportSet q2 = SupportSet::range(k, k - g);

            for (Variant variant : {Variant::omp, Variant::ols}) {
                ++cases;
                GreedyConfig cfg;
                cfg.variant = variant;
                cfg.tie_policy = TiePolicy::adversarial;
                cfg.tie_tol = tol.tie_tol;

                Vector y1(d.dim(), 0.0);
                std::vector<int> order;
                if (g > 0) {
                    y1 = reachability_input(d, q, cfg, tol).y;
                    order = q.indices();
                }
                // pick the two-representation component and assign Q* so the
                // tied pick at iteration g+1 is a bad atom
                const Vector probe = combine(d, q1, Vector(k - g, 1.0));
                const Vector y_tilde2 = project_complement(d.atoms().columns(q.indices()), probe, tol);
                GreedyConfig lex;
                lex.variant = variant;
                const Selection sel0 = select_next(d, q, y_tilde2, lex, std::nullopt, tol);
                const bool keep_q1 = q2.contains(sel0.index);
                const SupportSet& repset = keep_q1 ? q1 : q2;
                const Vector y2 = combine(d, repset, Vector(k - g, keep_q1 ? 1.0 : -1.0));
                const SupportSet q_star = q.set_union(repset);

                bool ok = false;
                double eps = 1.0;
                for (int attempt = 0; attempt < 60 && !ok; ++attempt, eps /= 2.0) {
                    Vector y = y1;
                    for (int i = 0; i < d.dim(); ++i) y[i] += eps * y2[i];
                    GreedyConfig probe_cfg = cfg;
                    probe_cfg.max_iterations = g + 1;
                    const GreedyTrace trace = run(d, y, SupportSet(), probe_cfg, q_star, tol);
                    if (static_cast<int>(trace.iterations.size()) < g + 1) continue;
                    bool prefix_ok = true;
                    for (int i = 0; i < g; ++i)
                        prefix_ok = prefix_ok && trace.iterations[i].selected == order[i] &&
                                    selection_margin(trace.iterations[i]) > tol.tie_tol;
                    if (!prefix_ok) continue;
                    const IterationRecord& last = trace.iterations[g];
                    ok = last.tie && !q_star.contains(last.selected);
                }
                if (!ok) ++failures;
            }
        }
    rep.measured = {{"cases", cases}, {"failures", failures}};
    rep.expected = {{"failures", 0}};
    rep.pass = failures == 0 && cases > 0;
    return rep;
}

ReproReport claim_lemma8(const Tolerances& tol, std::uint64_t) {
    ReproReport rep;
    rep.claim = "lemma8";
    double worst_residual = 0.0, worst_norm_spread = 0.0;
    for (auto [k, g, b] : tightness_grid()) {
        const GeneratorResult gen = generate_equiangular(k, g, b);
        const SupportSet q = SupportSet::range(0, g + b);
        const SupportSet q1 = SupportSet::range(g + b, k - g);
        const SupportSet q2 = SupportSet::range(k + b, k - g);
        const ProjectedDictionary proj = projected_dictionary(gen.dict, q, tol);

        Vector sum(gen.dict.dim(), 0.0);
        for (int i : q1.indices())
            for (int r = 0; r < gen.dict.dim(); ++r) sum[r] += proj.a_tilde(r, i);
        for (int i : q2.indices())
            for (int r = 0; r < gen.dict.dim(); ++r) sum[r] += proj.a_tilde(r, i);
        worst_residual = std::max(worst_residual, norm(sum));

        double lo = 2.0, hi = 0.0;
        for (int i = 0; i < gen.dict.size(); ++i) {
            if (q.contains(i)) continue;
            const double na = norm(proj.a_tilde.column(i));
            lo = std::min(lo, na);
            hi = std::max(hi, na);
        }
        worst_norm_spread = std::max(worst_norm_spread, hi - lo);
    }
    rep.measured = {{"max_two_representation_residual", worst_residual},
                    {"max_projected_norm_spread", worst_norm_spread}};
    rep.expected = {{"max_two_representation_residual", 0.0}, {"max_projected_norm_spread", 0.0}};
    rep.pass = worst_residual < 1e-9 && worst_norm_spread < 1e-9;
    return rep;
}

ReproReport claim_lemma9(const Tolerances& tol, std::uint64_t) {
    ReproReport rep;
    rep.claim = "lemma9";
    int cases = 0, failures = 0;
    for (int k : {2, 3, 4})
        for (int g = 0; g < k; ++g) {
            const GeneratorResult gen = generate_equiangular(k, g, 0);
            const int reach_limit = 2 * k - g - 2;
            for (Variant variant : {Variant::omp, Variant::ols}) {
                GreedyConfig cfg;
                cfg.variant = variant;
                cfg.tie_tol = tol.tie_tol;
                for (int p = 1; p <= reach_limit; ++p) {
                    ++cases;
                    try {
                        const ReachabilityResult res = reachability_input(gen.dict, SupportSet::range(0, p), cfg, tol);
                        GreedyConfig probe = cfg;
                        probe.max_iterations = p;
                        const GreedyTrace trace = run(gen.dict, res.y, SupportSet(), probe, std::nullopt, tol);
                        bool ok = static_cast<int>(trace.iterations.size()) == p;
                        for (int i = 0; ok && i < p; ++i)
                            ok = trace.iterations[i].selected == i && selection_margin(trace.iterations[i]) > tol.tie_tol;
                        if (!ok) ++failures;
                    } catch (const EpsilonSearchFailed&) {
                        ++failures;
                    }
                }
                // a scattered subset, not just prefixes
                if (reach_limit >= 2) {
                    ++cases;
                    std::vector<int> scattered;
                    for (int i = 0; i < reach_limit; ++i) scattered.push_back((2 * i + 1) % gen.dict.size());
                    std::sort(scattered.begin(), scattered.end());
                    scattered.erase(std::unique(scattered.begin(), scattered.end()), scattered.end());
                    try {
                        const SupportSet r_set(scattered);
                        const ReachabilityResult res = reachability_input(gen.dict, r_set, cfg, tol);
                        GreedyConfig probe = cfg;
                        probe.max_iterations = r_set.size();
                        const GreedyTrace trace = run(gen.dict, res.y, SupportSet(), probe, std::nullopt, tol);
                        if (trace.selections() != r_set.indices()) ++failures;
                    } catch (const EpsilonSearchFailed&) {
                        ++failures;
                    }
                }
            }
        }
    rep.measured = {{"cases", cases}, {"failures", failures}};
    rep.expected = {{"failures", 0}};
    rep.pass = failures == 0 && cases > 0;
    return rep;
}

ReproReport claim_example1(const Tolerances& tol, std::uint64_t) {
    ReproReport rep;
    rep.claim = "example1";
    json measured = json::array(), expected = json::array();
    bool pass = true;
    for (int n : {5, 6, 8}) {
        const double gamma = 0.8 / (n - 2);
        const GeneratorResult gen = generate_example1(n, gamma);
        const double t_ols = theta_oxx(gen.dict, 2, 1, 0, Variant::ols, tol);
        const double t0 = theta_nsp(gen.dict, 2, 1, 0, 0.0, tol).value;
        const double t1 = theta_nsp(gen.dict, 2, 1, 0, 1.0, tol).value;
        pass = pass && t_ols < 1.0 && std::fabs(t0 - 1.0 / (n - 2)) < 1e-9 && std::fabs(t1 - 1.25) < 1e-9;
        measured.push_back({{"n", n}, {"theta_ols", t_ols}, {"theta0", t0}, {"theta1", t1}});
        expected.push_back({{"theta_ols", "< 1"}, {"theta0", 1.0 / (n - 2)}, {"theta1", 1.25}});
    }
    rep.measured = measured;
    rep.expected = expected;
    rep.pass = pass;
    return rep;
}

ReproReport claim_example2(const Tolerances& tol, std::uint64_t) {
    ReproReport rep;
    rep.claim = "example2";
    const int k = 8, g = 2;
    const double alpha = 0.9;
    const GeneratorResult gen = generate_example2(k, g, alpha);
    const double mu = mutual_coherence(gen.dict);
    const double delta = ric(gen.dict, k + 1, tol);
    const ConditionReport coh = analytic_bound("coherence_main", {.mu = mu, .k = k, .g = g, .b = 0}, tol);
    const ConditionReport ricrep = analytic_bound("ric_omp_informed", {.delta = delta, .k = k, .g = g, .b = 0}, tol);
    rep.measured = {{"mu", mu},
                    {"coherence_threshold", coh.threshold},
                    {"delta_k_plus_1", delta},
                    {"ric_threshold", ricrep.threshold},
                    {"coherence_satisfied", coh.satisfied},
                    {"ric_satisfied", ricrep.satisfied}};
    rep.expected = {{"coherence_satisfied", true}, {"ric_satisfied", false}, {"delta_k_plus_1", k * mu}};
    rep.pass = coh.satisfied && !ricrep.satisfied && std::fabs(delta - k * mu) < 1e-9;
    return rep;
}

ReproReport claim_example3(const Tolerances& tol, std::uint64_t) {
    ReproReport rep;
    rep.claim = "example3";
    const int k = 8, g = 0;
    const double mu = 0.9 / (std::sqrt(double(k - g)) + 1.0);
    const GeneratorResult gen = generate_example3(k, mu);
    const double delta = ric(gen.dict, k + 1, tol);
    const ConditionReport coh = analytic_bound("coherence_main", {.mu = mutual_coherence(gen.dict), .k = k, .g = g, .b = 0}, tol);
    const ConditionReport ricrep = analytic_bound("ric_omp_informed", {.delta = delta, .k = k, .g = g, .b = 0}, tol);
    rep.measured = {{"mu", mutual_coherence(gen.dict)},
                    {"delta_k_plus_1", delta},
                    {"coherence_satisfied", coh.satisfied},
                    {"ric_satisfied", ricrep.satisfied}};
    rep.expected = {{"coherence_satisfied", false}, {"ric_satisfied", true}, {"delta_k_plus_1", mu}};
    rep.pass = !coh.satisfied && ricrep.satisfied && std::fabs(delta - mu) < 1e-9;
    return rep;
}

ReproReport claim_prop1_bound(const Tolerances& tol, std::uint64_t seed) {
    ReproReport rep;
    rep.claim = "prop1-bound";
    long checks = 0, violations = 0;
    for (int idx = 0; idx < 30; ++idx) {
        const Dictionary d = bank_dictionary(seed, idx);
        const double mu = mutual_coherence(d);
        for (int k = 2; k <= 3; ++k)
            for (int g = 0; g < k; ++g)
                for (int b = 0; b <= 1; ++b) {
                    if (k + b >= d.size()) continue;
                    if (!(mu < 1.0 / (k + b - 1) - tol.cert_tol)) continue;
                    const ConditionReport bound =
                        analytic_bound("prop1_bound", {.mu = mu, .k = k, .g = g, .b = b}, tol);
                    for_each_pair(d.size(), k, g, b, [&](const SupportSet& q_star, const SupportSet& q) {
                        ++checks;
                        if (partial_erc(d, q_star, q, Variant::omp, tol) > bound.value + tol.cert_tol) ++violations;
                    });
                }
    }
    rep.measured = {{"checks", checks}, {"violations", violations}};
    rep.expected = {{"violations", 0}};
    rep.pass = violations == 0 && checks > 0;
    return rep;
}

ReproReport claim_lemma3_bound(const Tolerances& tol, std::uint64_t seed) {
    ReproReport rep;
    rep.claim = "lemma3-bound";
    long checks = 0, violations = 0;
    for (int idx = 0; idx < 10; ++idx) {
        const Dictionary d = bank_dictionary(seed, idx);
        for (int k = 2; k <= 3; ++k)
            for (int g = 0; g < k; ++g)
                for (int b = 0; b <= 1; ++b) {
                    if (k + b >= d.size() || k - g < 1) continue;
                    PripConstants c2, ckg;
                    try {
                        c2 = prip(d, 2, g + b, tol);
                        ckg = prip(d, k - g, g + b, tol);
                    } catch (const RankDeficient&) {
                        continue;
                    }
                    if (!(ckg.delta_low < 1.0 - tol.cert_tol)) continue;
                    const ConditionReport bound = analytic_bound("lemma3_bound",
                                                                 {.delta_bar2 = c2.delta_up,
                                                                  .delta_2 = c2.delta_low,
                                                                  .delta_kg = ckg.delta_low,
                                                                  .k = k,
                                                                  .g = g},
                                                                 tol);
                    for_each_pair(d.size(), k, g, b, [&](const SupportSet& q_star, const SupportSet& q) {
                        ++checks;
                        if (partial_erc(d, q_star, q, Variant::omp, tol) > bound.value + tol.cert_tol) ++violations;
                    });
                }
    }
    rep.measured = {{"checks", checks}, {"violations", violations}};
    rep.expected = {{"violations", 0}};
    rep.pass = violations == 0 && checks > 0;
    return rep;
}

ReproReport claim_lemma4_bound(const Tolerances& tol, std::uint64_t seed) {
    ReproReport rep;
    rep.claim = "lemma4-bound";
    long checks = 0, violations = 0;
    for (int idx = 0; idx < 30; ++idx) {
        const Dictionary d = bank_dictionary(seed, idx);
        const double mu = mutual_coherence(d);
        for (int q : {2, 3})
            for (int l : {0, 1, 2}) {
                if (q + l > d.size()) continue;
                if (l >= 2 && !(mu < 1.0 / (l - 1) - tol.cert_tol)) continue;
                const PripConstants c = prip(d, q, l, tol);
                const ConditionReport vals = analytic_bound("lemma4_values", {.mu = mu, .q = q, .l = l}, tol);
                ++checks;
                if (c.delta_up > vals.aux.at("delta_up") + tol.cert_tol) ++violations;
                if (c.delta_low > vals.value + tol.cert_tol) ++violations;
            }
    }
    rep.measured = {{"checks", checks}, {"violations", violations}};
    rep.expected = {{"violations", 0}};
    rep.pass = violations == 0 && checks > 0;
    return rep;
}

ReproReport claim_lemma5_bound(const Tolerances& tol, std::uint64_t seed) {
    ReproReport rep;
    rep.claim = "lemma5-bound";
    long checks = 0, violations = 0;
    for (int idx = 0; idx < 30; ++idx) {
        const Dictionary d = bank_dictionary(seed, idx);
        const double mu = mutual_coherence(d);
        for (int l : {0, 1, 2}) {
            if (l >= 1 && !(mu < 1.0 / l - tol.cert_tol)) continue;
            if (l > d.size() - 2) continue;
            const double got = projected_coherence(d, l, Variant::ols, tol);
            const double bound = l == 0 ? mu : mu / (1.0 - l * mu);
            ++checks;
            if (got > bound + tol.cert_tol) ++violations;
        }
    }
    rep.measured = {{"checks", checks}, {"violations", violations}};
    rep.expected = {{"violations", 0}};
    rep.pass = violations == 0 && checks > 0;
    return rep;
}

ReproReport claim_lemma10_bound(const Tolerances& tol, std::uint64_t seed) {
    ReproReport rep;
    rep.claim = "lemma10-bound";
    long checks = 0, violations = 0, u_checks = 0;
    Rng rng(seed ^ 0xa10ULL);
    for (int idx = 0; idx < 30; ++idx) {
        const Dictionary d = bank_dictionary(seed, idx);
        for (int l : {0, 1, 2}) {
            if (l > d.size() - 6) continue;
            const PripConstants c = prip(d, 2, l, tol);
            const double mu_omp = projected_coherence(d, l, Variant::omp, tol);
            ++checks;
            if (mu_omp > (c.delta_up + c.delta_low) / 2.0 + tol.cert_tol) ++violations;

            // operator bound ‖Ã_{Q'}ᵀ Ã_{Q''} u‖ ≤ μ_l √(|Q'||Q''|) ‖u‖
            const SupportSet q_set = SupportSet::range(0, l);
            const ProjectedDictionary proj = projected_dictionary(d, q_set, tol);
            const SupportSet qp({l, l + 1});
            const SupportSet qpp({l + 2, l + 3, l + 4});
            const Matrix ap = proj.a_tilde.columns(qp.indices());
            const Matrix app = proj.a_tilde.columns(qpp.indices());
            for (int trial = 0; trial < 100; ++trial) {
                Vector u(qpp.size());
                for (double& x : u) x = rng.normal();
                ++u_checks;
                const double lhs = norm(matvec_transposed(ap, matvec(app, u)));
                if (lhs > mu_omp * std::sqrt(double(qp.size()) * qpp.size()) * norm(u) + tol.cert_tol) ++violations;
            }
        }
    }
    rep.measured = {{"coherence_checks", checks}, {"operator_checks", u_checks}, {"violations", violations}};
    rep.expected = {{"violations", 0}};
    rep.pass = violations == 0 && checks > 0;
    return rep;
}

ReproReport claim_lemma12(const Tolerances& tol, std::uint64_t) {
    ReproReport rep;
    rep.claim = "lemma12-identities";
    double worst = 0.0;
    for (auto [k, g, b] : tightness_grid()) {
        const GeneratorResult gen = generate_equiangular(k, g, b);
        const Dictionary& d = gen.dict;
        const double mu = gen.meta.mu;
        const int n = d.size();
        std::vector<std::vector<int>> r_sets{{0}, {0, 1}, {1, n - 1}};
        if (n >= 6) r_sets.push_back({0, 2, 4});
        for (const auto& rv : r_sets) {
            const SupportSet r_set(rv);
            Matrix grr(r_set.size(), r_set.size());
            for (int a = 0; a < r_set.size(); ++a)
                for (int c = 0; c < r_set.size(); ++c) grr(a, c) = d.gram()(r_set[a], r_set[c]);
            const double corr = mu * mu * ones_quadratic_form(grr);
            const ProjectedDictionary proj = projected_dictionary(d, r_set, tol);
            for (int i = 0; i < n; ++i) {
                if (r_set.contains(i)) continue;
                worst = std::max(worst,
                                 std::fabs(dot(proj.a_tilde.column(i), proj.a_tilde.column(i)) - (1.0 - corr)));
                for (int j = i + 1; j < n; ++j) {
                    if (r_set.contains(j)) continue;
                    worst = std::max(worst,
                                     std::fabs(dot(proj.a_tilde.column(i), proj.a_tilde.column(j)) - (-mu - corr)));
                }
            }
        }
    }
    rep.measured = {{"max_identity_error", worst}};
    rep.expected = {{"max_identity_error", 0.0}};
    rep.pass = worst < 1e-9;
    return rep;
}

ReproReport claim_eq90_tie(const Tolerances& tol, std::uint64_t) {
    ReproReport rep;
    rep.claim = "eq90-tie";
    const GeneratorResult gen = generate_lemma1(4, 1, 1);
    const Vector y = combine(gen.dict, gen.meta.canonical_q_star, Vector(4, 1.0));
    const Vector r = project_complement(gen.dict.atoms().columns(gen.meta.canonical_q.indices()), y, tol);
    double worst = 0.0;
    for (Variant variant : {Variant::omp, Variant::ols}) {
        GreedyConfig cfg;
        cfg.variant = variant;
        const Selection sel = select_next(gen.dict, gen.meta.canonical_q, r, cfg, std::nullopt, tol);
        for (int i = 2; i < gen.dict.size(); ++i) worst = std::max(worst, std::fabs(sel.scores[i] - 1.0));
    }
    rep.measured = {{"max_score_deviation", worst}};
    rep.expected = {{"max_score_deviation", 0.0}};
    rep.pass = worst < 1e-9;
    return rep;
}

using ClaimFn = ReproReport (*)(const Tolerances&, std::uint64_t);

const std::vector<std::pair<std::string, ClaimFn>>& claim_table() {
    static const std::vector<std::pair<std::string, ClaimFn>> table{
        {"thm3-sufficient", claim_thm3_sufficient},
        {"thm3-converse", claim_thm3_converse},
        {"thm5-sufficient", claim_thm5_sufficient},
        {"thm5-converse", claim_thm5_converse},
        {"thm6-ordering", claim_thm6_ordering},
        {"thm7-ordering", claim_thm7_ordering},
        {"lemma1", claim_lemma1},
        {"lemma2", claim_lemma2},
        {"lemma8", claim_lemma8},
        {"lemma9", claim_lemma9},
        {"example1", claim_example1},
        {"example2", claim_example2},
        {"example3", claim_example3},
        {"prop1-bound", claim_prop1_bound},
        {"lemma3-bound", claim_lemma3_bound},
        {"lemma4-bound", claim_lemma4_bound},
        {"lemma5-bound", claim_lemma5_bound},
        {"lemma10-bound", claim_lemma10_bound},
        {"lemma12-identities", claim_lemma12},
        {"eq90-tie", claim_eq90_tie},
    };
    return table;
}

}  // namespace

const std::vector<std::string>& registered_claims() {
    static const std::vector<std::string> names = [] {
        std::vector<std::string> v;
        for (const auto& [name, fn] : claim_table()) v.push_back(name);
        return v;
    }();
    return names;
}

std::vector<ReproReport> reproduce_suite(const std::vector<std::string>& claims, const Tolerances& tol,
                                         std::uint64_t seed) {
    std::vector<ReproReport> out;
    for (const std::string& claim : claims) {
        ClaimFn fn = nullptr;
        for (const auto& [name, f] : claim_table())
            if (name == claim) fn = f;
        if (!fn) throw UnknownClaim("unknown claim: " + claim);
        const auto start = std::chrono::steady_clock::now();
        ReproReport rep = fn(tol, seed);
        rep.runtime_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        log_line(1, "claim " + claim + (rep.pass ? " pass" : " FAIL"));
        out.push_back(std::move(rep));
    }
    return out;
}

}  // namespace sparsecert

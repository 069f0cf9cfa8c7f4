#include "sparsecert/greedy.hpp"

#include <cmath>

namespace sparsecert {

Selection select_next(const Dictionary& d, const SupportSet& q_current, const Vector& r, const GreedyConfig& config,
                      const std::optional<SupportSet>& q_star, const Tolerances& tol) {
    const int n = d.size();
    q_current.check_range(n);
    if (q_current.size() >= n) throw NoCandidates();

    ProjectedDictionary proj = projected_dictionary(d, q_current, tol);
    const Matrix& c_tilde = config.variant == Variant::omp ? proj.a_tilde : proj.b_tilde;

    Selection sel;
    sel.scores.assign(n, 0.0);
    double best = -1.0;
    for (int i = 0; i < n; ++i) {
        if (q_current.contains(i)) continue;
        double s = 0.0;
        for (int row = 0; row < d.dim(); ++row) s += c_tilde(row, i) * r[row];
        sel.scores[i] = std::fabs(s);
        best = std::max(best, sel.scores[i]);
    }

    std::vector<int> tied;
    for (int i = 0; i < n; ++i)
        if (!q_current.contains(i) && sel.scores[i] >= best - config.tie_tol) tied.push_back(i);
    sel.tie = tied.size() >= 2;

    sel.index = tied.front();
    if (config.tie_policy == TiePolicy::adversarial && q_star) {
        for (int i : tied) {
            if (!q_star->contains(i)) {
                sel.index = i;
                break;
            }
        }
    }
    return sel;
}

GreedyTrace run(const Dictionary& d, const Vector& y, const SupportSet& q_init, const GreedyConfig& config,
                const std::optional<SupportSet>& q_star, const Tolerances& tol) {
    const int n = d.size();
    q_init.check_range(n);
    if (static_cast<int>(y.size()) != d.dim()) throw InvalidParams("input vector length mismatch");
    const int room = n - q_init.size();
    const int max_iter = config.max_iterations < 0 ? room : config.max_iterations;
    if (max_iter > room) throw InvalidParams("max_iterations exceeds the number of free atoms");

    GreedyTrace trace;
    SupportSet q = q_init;
    const double ynorm = norm(y);

    Vector r = project_complement(d.atoms().columns(q.indices()), y, tol);  // validates A_Q
    trace.terminated_reason = Termination::max_iterations;
    while (true) {
        if (norm(r) < tol.rank_tol * ynorm || ynorm == 0.0) {
            trace.terminated_reason = Termination::residual_zero;
            break;
        }
        if (static_cast<int>(trace.iterations.size()) >= max_iter) {
            trace.terminated_reason = Termination::max_iterations;
            break;
        }
        Selection sel = select_next(d, q, r, config, q_star, tol);
        SupportSet q_next = q.with(sel.index);
        Vector r_next;
        try {
            r_next = project_complement(d.atoms().columns(q_next.indices()), y, tol);
        } catch (const RankDeficient&) {
            trace.iterations.push_back({sel.index, sel.scores, sel.tie, norm(r)});
            trace.terminated_reason = Termination::rank_failure;
            q = q_next;
            break;
        }
        trace.iterations.push_back({sel.index, sel.scores, sel.tie, norm(r_next)});
        q = q_next;
        r = std::move(r_next);
    }
    trace.final_support = q;
    return trace;
}

bool success(const GreedyTrace& trace, const SupportSet& q_star, const SupportSet& q_init) {
    const int k = q_star.size();
    const int g = q_star.set_intersect(q_init).size();
    const int needed = k - g;
    const SupportSet target = q_star.set_minus(q_init);
    const auto sel = trace.selections();
    if (static_cast<int>(sel.size()) < needed) {
        // Ran out of iterations before k−g selections: only a residual-zero
        // stop with good selections counts as a recovery.
        if (trace.terminated_reason != Termination::residual_zero) return false;
        for (int s : sel)
            if (!target.contains(s)) return false;
        return true;
    }
    for (int i = 0; i < needed; ++i)
        if (!target.contains(sel[i])) return false;
    return true;
}

namespace {

// Strict margin of the selected score over the runner-up.
double selection_margin(const IterationRecord& rec) {
    double runner = 0.0;
    for (size_t i = 0; i < rec.scores.size(); ++i) {
        if (static_cast<int>(i) == rec.selected) continue;
        runner = std::max(runner, rec.scores[i]);
    }
    return rec.scores[rec.selected] - runner;
}

bool prefix_matches(const GreedyTrace& trace, const std::vector<int>& order, double tie_tol) {
    if (trace.iterations.size() < order.size()) return false;
    for (size_t p = 0; p < order.size(); ++p) {
        const auto& rec = trace.iterations[p];
        if (rec.selected != order[p]) return false;
        if (selection_margin(rec) <= tie_tol) return false;
    }
    return true;
}

}  // namespace

ReachabilityResult reachability_input(const Dictionary& d, const SupportSet& r_set, const GreedyConfig& config,
                                      const Tolerances& tol) {
    if (r_set.empty()) throw InvalidParams("reachability_input: R must be nonempty");
    r_set.check_range(d.size());
    const std::vector<int>& order = r_set.indices();

    GreedyConfig probe = config;
    ReachabilityResult res;
    res.y = d.atom(order[0]);
    res.epsilons.push_back(1.0);

    probe.max_iterations = 1;
    if (!prefix_matches(run(d, res.y, SupportSet(), probe, std::nullopt, tol), {order[0]}, config.tie_tol))
        throw EpsilonSearchFailed("first atom is not a strict maximizer");

    for (size_t p = 1; p < order.size(); ++p) {
        const Vector atom = d.atom(order[p]);
        probe.max_iterations = static_cast<int>(p) + 1;
        double eps = 1.0;
        bool ok = false;
        for (int attempt = 0; attempt < 60; ++attempt, eps /= 2.0) {
            Vector y_try = res.y;
            for (int i = 0; i < d.dim(); ++i) y_try[i] += eps * atom[i];
            std::vector<int> prefix(order.begin(), order.begin() + p + 1);
            if (prefix_matches(run(d, y_try, SupportSet(), probe, std::nullopt, tol), prefix, config.tie_tol)) {
                res.y = std::move(y_try);
                res.epsilons.push_back(eps);
                ok = true;
                break;
            }
        }
        if (!ok) throw EpsilonSearchFailed("no epsilon yields a unique-maximum selection for atom " + std::to_string(order[p]));
    }
    return res;
}

AdversarialInstance adversarial_instance(const Dictionary& d, int k, int g, int b, const Tolerances& tol) {
    if (g < 0 || b < 0 || g >= k) throw InvalidParams("adversarial_instance: need 0 <= g < k, b >= 0");
    const int n = 2 * k - g + b;
    if (d.size() != n) throw InvalidParams("adversarial_instance: dictionary size must be 2k-g+b");

    AdversarialInstance inst;
    inst.q = SupportSet::range(0, g + b);
    const SupportSet q_good = SupportSet::range(0, g);
    const SupportSet q1 = SupportSet::range(g + b, k - g);
    const SupportSet q2 = SupportSet::range(k + b, k - g);

    // ỹ₂ has the two disjoint (k−g)-term representations C̃_{Q1}·1 = C̃_{Q2}·(−1).
    Vector y2_probe(d.dim(), 0.0);
    for (int i : q1.indices()) {
        const Vector a = d.atom(i);
        for (int r = 0; r < d.dim(); ++r) y2_probe[r] += a[r];
    }
    const Vector y_tilde2 = project_complement(d.atoms().columns(inst.q.indices()), y2_probe, tol);

    GreedyConfig lex;  // the greedy pick itself; q_star is only fixed afterwards
    const Selection sel = select_next(d, inst.q, y_tilde2, lex, std::nullopt, tol);

    const bool keep_q1 = q2.contains(sel.index);  // j in Q2 -> Q* = Q_g ∪ Q1
    const SupportSet& rep = keep_q1 ? q1 : q2;
    const double coeff = keep_q1 ? 1.0 : -1.0;
    inst.q_star = q_good.set_union(rep);

    inst.x_star.assign(n, 0.0);
    for (int i : q_good.indices()) inst.x_star[i] = 1.0;
    for (int i : rep.indices()) inst.x_star[i] = coeff;
    inst.y = matvec(d.atoms(), inst.x_star);
    return inst;
}

}  // namespace sparsecert

#ifndef SPARSECERT_GREEDY_HPP
#define SPARSECERT_GREEDY_HPP

#include <optional>

#include "sparsecert/dictionary.hpp"

namespace sparsecert {

enum class Variant { omp, ols };
enum class TiePolicy { adversarial, lexicographic };

struct GreedyConfig {
    Variant variant = Variant::omp;
    TiePolicy tie_policy = TiePolicy::lexicographic;
    double tie_tol = 1e-9;
    int max_iterations = -1;  // -1: bounded only by the number of free atoms
};

struct Selection {
    int index = -1;
    Vector scores;  // |⟨c̃_i, r⟩| per column; zero on the current support
    bool tie = false;
};

struct IterationRecord {
    int selected = -1;
    Vector scores;
    bool tie = false;
    double residual_norm = 0.0;  // after the selected atom joined the support
};

enum class Termination { residual_zero, max_iterations, rank_failure };

struct GreedyTrace {
    std::vector<IterationRecord> iterations;
    SupportSet final_support;
    Termination terminated_reason = Termination::max_iterations;

    std::vector<int> selections() const {
        std::vector<int> s;
        for (const auto& it : iterations) s.push_back(it.selected);
        return s;
    }
};

/// One selection step. Scores are |⟨ã_i, r⟩| for OMP and |⟨b̃_i, r⟩| for OLS.
/// When several candidates land within tie_tol of the maximum the tie flag is
/// set; the adversarial policy then prefers an atom outside q_star (when
/// q_star is given), the lexicographic policy the smallest index.
Selection select_next(const Dictionary& d, const SupportSet& q_current, const Vector& r, const GreedyConfig& config,
                      const std::optional<SupportSet>& q_star = std::nullopt, const Tolerances& tol = {});

/// Runs Oxx initialized with q_init, recomputing the residual by a full
/// re-projection of y at each iteration.
GreedyTrace run(const Dictionary& d, const Vector& y, const SupportSet& q_init, const GreedyConfig& config,
                const std::optional<SupportSet>& q_star = std::nullopt, const Tolerances& tol = {});

/// Successful recovery: the first k−g selections all lie in q_star∖q_init.
bool success(const GreedyTrace& trace, const SupportSet& q_star, const SupportSet& q_init);

struct ReachabilityResult {
    Vector y;
    std::vector<double> epsilons;  // one weight per atom of R; the first is 1
};

/// Builds y = Σ ε_p a_{r_p} so that the run selects exactly the atoms of R in
/// ascending order with strict score margins. Each ε starts at 1 and is
/// halved until the whole prefix trace matches, at most 60 times.
ReachabilityResult reachability_input(const Dictionary& d, const SupportSet& r_set, const GreedyConfig& config,
                                      const Tolerances& tol = {});

struct AdversarialInstance {
    Vector y;
    SupportSet q_star;
    SupportSet q;
    Vector x_star;  // the k-sparse representation, supported on q_star
};

/// Worst-case k-term representation on the equiangular dictionary: the
/// residual after Q ties across two disjoint candidate supports and the true
/// support is assigned so that the greedy pick falls outside it.
AdversarialInstance adversarial_instance(const Dictionary& d, int k, int g, int b, const Tolerances& tol = {});

}  // namespace sparsecert

#endif

#ifndef SPARSECERT_CONDITIONS_HPP
#define SPARSECERT_CONDITIONS_HPP

#include <map>
#include <optional>
#include <string>

#include "sparsecert/greedy.hpp"

namespace sparsecert {

struct CertContext {
    std::optional<int> k, g, b, order, q, l;
    std::optional<double> p;
    std::optional<SupportSet> q_set, q_star;
};

/// A named certificate value together with its threshold and verdict.
/// `exact` distinguishes exact evaluations from certified lower bounds.
struct ConditionReport {
    std::string name;
    double value = 0.0;
    double threshold = 0.0;
    bool strict = true;  // value < threshold vs value <= threshold
    bool satisfied = false;
    bool exact = true;
    CertContext context;
    std::string note;
    std::map<std::string, double> aux;
};

ConditionReport make_report(std::string name, double value, double threshold, bool strict, bool exact,
                            const Tolerances& tol = {});

/// max_{i ∉ Q*} ‖C̃†_{Q*∖Q} c̃_i‖₁ with C̃ = Ã for OMP and B̃ for OLS; atoms
/// of Q contribute zero. Requires A_{Q*∪Q} full rank and g < k.
double partial_erc(const Dictionary& d, const SupportSet& q_star, const SupportSet& q, Variant variant,
                   const Tolerances& tol = {});

/// Exact maximum of partial_erc over every (Q*, Q) with |Q*| = k,
/// |Q*∩Q| = g, |Q̄*∩Q| = b. Guarded against workloads above 1e6 pairs.
double theta_oxx(const Dictionary& d, int k, int g, int b, Variant variant, const Tolerances& tol = {});

struct ThetaNsp {
    double value = 0.0;
    bool exact = true;
};

/// Truncated-NSP constant: the subset maximization collapses to the sorted
/// closed form per kernel vector (largest k−g magnitudes over the smallest
/// n−k−b). Exact on one-dimensional kernels; a certified lower bound from
/// sphere sampling otherwise.
ThetaNsp theta_nsp(const Dictionary& d, int k, int g, int b, double p, const Tolerances& tol = {});

/// Symmetric restricted isometry constant of the given order by exhaustive
/// subset enumeration.
double ric(const Dictionary& d, int order, const Tolerances& tol = {});

struct PripConstants {
    double delta_low = 0.0;  // max of 1 − λ_min
    double delta_up = 0.0;   // max of λ_max − 1; may be negative
};

/// Tightest projected-RIP constants over all disjoint (Q', Q) with |Q'| = q
/// and |Q| = l.
PripConstants prip(const Dictionary& d, int q, int l, const Tolerances& tol = {});

/// μ_l for the projected dictionary: max over |Q| = l and i ≠ j of
/// |⟨c̃_i, c̃_j⟩| with c̃ = ã (OMP) or b̃ (OLS).
double projected_coherence(const Dictionary& d, int l, Variant variant, const Tolerances& tol = {});

struct BoundParams {
    std::optional<double> mu, delta, delta_bar2, delta_2, delta_kg;
    std::optional<int> k, g, b, q, l;
    std::optional<int> spark;  // comparison value; cols + 1 when no subset is dependent
};

/// Closed-form thresholds and bound values from the inequality ledger:
///   coherence_main, coherence_classic, ric_omp_classic, ric_omp_informed,
///   ric_l1_informed, prop1_bound, lemma3_bound, lemma4_values, lemma5_bound,
///   lemma10_bound, spark_ols_kminus1.
ConditionReport analytic_bound(const std::string& name, const BoundParams& params, const Tolerances& tol = {});

}  // namespace sparsecert

#endif

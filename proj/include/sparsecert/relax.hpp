#ifndef SPARSECERT_RELAX_HPP
#define SPARSECERT_RELAX_HPP

#include <optional>

#include "sparsecert/dictionary.hpp"

namespace sparsecert {

struct SparseVector {
    Vector entries;
    SupportSet support;  // indices with |entry| > zero_tol

    static SparseVector from(Vector entries, double zero_tol = 1e-10) {
        std::vector<int> idx;
        for (size_t i = 0; i < entries.size(); ++i)
            if (std::fabs(entries[i]) > zero_tol) idx.push_back(static_cast<int>(i));
        return SparseVector{std::move(entries), SupportSet(idx)};
    }
};

/// Σ_{i∉Q} |x_i|^p for p > 0; the number of entries above zero_tol outside Q
/// for p = 0 (the ‖·‖₀⁰ = ‖·‖₀ convention).
double lp_objective(const SparseVector& x, const SupportSet& q, double p, double zero_tol = 1e-10);

struct P0Result {
    std::vector<SparseVector> solutions;  // all minimal-extra-support solutions
    bool unique = false;
};

/// Exhaustive informed ℓ0: enumerates extra supports S ⊆ Q̄ by increasing
/// cardinality and keeps every minimal S whose span contains y.
P0Result solve_p0_informed(const Dictionary& d, const Vector& y, const SupportSet& q, int max_extra,
                           const Tolerances& tol = {});

enum class MinimizerStatus { unique_minimizer, minimizer_not_unique, not_minimizer, inconclusive };

struct MinimizerVerdict {
    MinimizerStatus status = MinimizerStatus::inconclusive;
    std::optional<Vector> witness;  // a feasible point at least as good as x*
};

/// Decides whether x* solves min ‖x_{Q̄}‖_p s.t. Ax = Ax* by searching the
/// feasible set x* + ker(A). One-dimensional kernels are resolved at the
/// breakpoints where coordinates vanish (plus a grid safety net for p < 1);
/// two-dimensional kernels use the breakpoint-line arrangement and report
/// inconclusive on ties. Kernels of dimension above 2 are rejected.
MinimizerVerdict verify_lp_minimizer(const Dictionary& d, const SparseVector& x_star, const SupportSet& q, double p,
                                     const Tolerances& tol = {});

const char* to_string(MinimizerStatus s);

}  // namespace sparsecert

#endif

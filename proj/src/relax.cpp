#include "sparsecert/relax.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace sparsecert {

const char* to_string(MinimizerStatus s) {
    switch (s) {
        case MinimizerStatus::unique_minimizer: return "unique_minimizer";
        case MinimizerStatus::minimizer_not_unique: return "minimizer_not_unique";
        case MinimizerStatus::not_minimizer: return "not_minimizer";
        case MinimizerStatus::inconclusive: return "inconclusive";
    }
    return "?";
}

double lp_objective(const SparseVector& x, const SupportSet& q, double p, double zero_tol) {
    if (!(p >= 0.0 && p <= 1.0)) throw InvalidParams("lp_objective: p must be in [0,1]");
    double obj = 0.0;
    for (size_t i = 0; i < x.entries.size(); ++i) {
        if (q.contains(static_cast<int>(i))) continue;
        const double a = std::fabs(x.entries[i]);
        if (a <= zero_tol) continue;  // an exact zero at working precision; |·|^p would amplify noise
        if (p == 0.0)
            obj += 1.0;
        else if (p == 1.0)
            obj += a;
        else if (p == 0.5)
            obj += std::sqrt(a);
        else
            obj += std::pow(a, p);
    }
    return obj;
}

namespace {

// Modified Gram-Schmidt with a drop tolerance; returns the orthonormal basis
// and which columns survived.
struct SpanBasis {
    std::vector<Vector> basis;
    std::vector<int> kept;
};

SpanBasis orthonormal_span(const Matrix& cols) {
    SpanBasis out;
    for (int j = 0; j < cols.cols(); ++j) {
        Vector w = cols.column(j);
        for (int pass = 0; pass < 2; ++pass)
            for (const Vector& b : out.basis) {
                const double c = dot(b, w);
                for (size_t i = 0; i < w.size(); ++i) w[i] -= c * b[i];
            }
        const double nw = norm(w);
        if (nw > 1e-8) {
            for (double& v : w) v /= nw;
            out.basis.push_back(std::move(w));
            out.kept.push_back(j);
        }
    }
    return out;
}

double span_residual(const SpanBasis& sp, const Vector& y) {
    Vector r = y;
    for (const Vector& b : sp.basis) {
        const double c = dot(b, r);
        for (size_t i = 0; i < r.size(); ++i) r[i] -= c * b[i];
    }
    return norm(r);
}

}  // namespace

P0Result solve_p0_informed(const Dictionary& d, const Vector& y, const SupportSet& q, int max_extra,
                           const Tolerances& tol) {
    const int n = d.size();
    q.check_range(n);
    if (static_cast<int>(y.size()) != d.dim()) throw InvalidParams("solve_p0_informed: length mismatch");
    if (max_extra < 0) throw InvalidParams("solve_p0_informed: max_extra must be >= 0");
    const double ynorm = norm(y);
    const double feas_tol = 1e-8 * (ynorm > 0.0 ? ynorm : 1.0);
    const SupportSet pool = q.complement(n);

    for (int s = 0; s <= std::min(max_extra, pool.size()); ++s) {
        std::vector<SupportSet> feasible;
        for_each_subset(pool.indices(), s, [&](const std::vector<int>& extra) {
            const SupportSet full = q.set_union(SupportSet(extra));
            const Matrix cols = d.atoms().columns(full.indices());
            if (span_residual(orthonormal_span(cols), y) < feas_tol) feasible.push_back(SupportSet(extra));
            return true;
        });
        if (feasible.empty()) continue;

        P0Result res;
        res.unique = feasible.size() == 1;
        for (const SupportSet& extra : feasible) {
            const SupportSet full = q.set_union(extra);
            const Matrix cols = d.atoms().columns(full.indices());
            // Coefficients on a maximal independent subset; dependent columns
            // get zero weight.
            const SpanBasis sp = orthonormal_span(cols);
            std::vector<int> solve_cols;
            for (int kc : sp.kept) solve_cols.push_back(full[kc]);
            const Vector coef = least_squares(d.atoms().columns(solve_cols), y, tol);
            Vector x(n, 0.0);
            for (size_t j = 0; j < solve_cols.size(); ++j) x[solve_cols[j]] = coef[j];
            res.solutions.push_back(SparseVector::from(std::move(x), tol.rank_tol));
        }
        return res;
    }
    throw Infeasible("solve_p0_informed: no extra support of size <= " + std::to_string(max_extra) + " fits y");
}

// ---------------------------------------------------------------------------
// lp minimizer verification over the kernel
// ---------------------------------------------------------------------------

namespace {

struct Candidate {
    double offset = 0.0;  // distance from x* in kernel coordinates
    double value = 0.0;
    Vector point;
    bool certifiable = false;  // exact algebraic candidate vs sampled one
};

}  // namespace

MinimizerVerdict verify_lp_minimizer(const Dictionary& d, const SparseVector& x_star, const SupportSet& q, double p,
                                     const Tolerances& tol) {
    const int n = d.size();
    q.check_range(n);
    if (static_cast<int>(x_star.entries.size()) != n) throw InvalidParams("verify_lp_minimizer: length mismatch");
    if (!(p >= 0.0 && p <= 1.0)) throw InvalidParams("verify_lp_minimizer: p must be in [0,1]");

    const Matrix kernel = kernel_basis(d.atoms(), tol);
    const int dim = kernel.cols();
    if (dim > 2) throw KernelTooLarge("kernel dimension " + std::to_string(dim));
    if (dim == 0) return {MinimizerStatus::unique_minimizer, std::nullopt};

    const double f0 = lp_objective(x_star, q, p, tol.rank_tol);
    auto point_at = [&](const Vector& t) {
        Vector w = x_star.entries;
        for (int j = 0; j < dim; ++j)
            for (int i = 0; i < n; ++i) w[i] += t[j] * kernel(i, j);
        return w;
    };
    auto value_of = [&](const Vector& point) { return lp_objective(SparseVector{point, {}}, q, p, tol.rank_tol); };

    std::vector<Candidate> cands;

    // A kernel direction supported inside Q leaves the objective exactly
    // flat: an algebraically certifiable tie.
    {
        const SupportSet outside = q.complement(n);
        Matrix restricted(outside.size(), dim);
        for (int r = 0; r < outside.size(); ++r)
            for (int j = 0; j < dim; ++j) restricted(r, j) = kernel(outside[r], j);
        const EigResult eig = symmetric_eig(gram_matrix(restricted));
        const double lmax = std::max(eig.values.front(), 0.0);
        if (lmax <= tol.rank_tol || eig.values.back() < tol.rank_tol * std::max(lmax, 1.0)) {
            Vector t(dim, 0.0);
            for (int j = 0; j < dim; ++j) t[j] = eig.vectors(j, dim - 1);
            const Vector point = point_at(t);
            cands.push_back({1.0, value_of(point), point, true});
        }
    }

    std::optional<double> grid_min;
    double grid_offset = 0.0;

    if (dim == 1) {
        const Vector v = kernel.column(0);
        double lo = 0.0, hi = 0.0;
        for (int i = 0; i < n; ++i) {
            if (q.contains(i) || std::fabs(v[i]) <= tol.rank_tol) continue;
            const double t = -x_star.entries[i] / v[i];
            const Vector point = point_at({t});
            cands.push_back({std::fabs(t), value_of(point), point, true});
            lo = std::min(lo, t);
            hi = std::max(hi, t);
        }
        if (p < 1.0) {  // the breakpoints are provably optimal for p = 1
            if (hi - lo < 1e-12) {
                lo -= 1.0;
                hi += 1.0;
            }
            const int grid_n = 10000;
            double gbest = std::numeric_limits<double>::infinity();
            double gbest_t = 0.0;
            for (int j = 0; j <= grid_n; ++j) {
                const double t = lo + (hi - lo) * j / grid_n;
                const double val = value_of(point_at({t}));
                if (val < gbest) {
                    gbest = val;
                    gbest_t = t;
                }
            }
            grid_min = gbest;
            grid_offset = std::fabs(gbest_t);
        }
    } else {
        // Vertices of the breakpoint-line arrangement x*_i + t·(v1_i, v2_i) = 0.
        const Vector v1 = kernel.column(0), v2 = kernel.column(1);
        struct Line {
            double a, b, c;
        };
        std::vector<Line> lines;
        for (int i = 0; i < n; ++i) {
            if (q.contains(i)) continue;
            if (std::fabs(v1[i]) <= tol.rank_tol && std::fabs(v2[i]) <= tol.rank_tol) continue;
            lines.push_back({v1[i], v2[i], x_star.entries[i]});
        }
        double box = 1.0;
        for (size_t a = 0; a < lines.size(); ++a)
            for (size_t b = a + 1; b < lines.size(); ++b) {
                const double det = lines[a].a * lines[b].b - lines[b].a * lines[a].b;
                const double scale = std::max({std::fabs(lines[a].a), std::fabs(lines[a].b), std::fabs(lines[b].a),
                                               std::fabs(lines[b].b), 1e-15});
                if (std::fabs(det) <= 1e-12 * scale * scale) continue;
                const double t1 = (-lines[a].c * lines[b].b + lines[b].c * lines[a].b) / det;
                const double t2 = (-lines[a].a * lines[b].c + lines[b].a * lines[a].c) / det;
                const Vector point = point_at({t1, t2});
                // Sampled in the sense that exact tie certification is off.
                cands.push_back({std::hypot(t1, t2), value_of(point), point, false});
                box = std::max({box, std::fabs(t1), std::fabs(t2)});
            }
        const int grid_n = 100;
        double gbest = std::numeric_limits<double>::infinity();
        double gbest_off = 0.0;
        for (int i = 0; i <= grid_n; ++i)
            for (int j = 0; j <= grid_n; ++j) {
                const double t1 = -1.5 * box + 3.0 * box * i / grid_n;
                const double t2 = -1.5 * box + 3.0 * box * j / grid_n;
                const double val = value_of(point_at({t1, t2}));
                if (val < gbest) {
                    gbest = val;
                    gbest_off = std::hypot(t1, t2);
                }
            }
        grid_min = gbest;
        grid_offset = gbest_off;
    }

    // Verdict. Exact candidates decide; the sampled grid can only demote a
    // would-be unique verdict to inconclusive.
    const double move_tol = 1e-6;
    MinimizerVerdict verdict;
    const Candidate* best = nullptr;
    for (const auto& c : cands) {
        if (c.offset <= move_tol) continue;
        if (!best || c.value < best->value) best = &c;
    }
    if (best && best->value < f0 - tol.cert_tol) {
        verdict.status = MinimizerStatus::not_minimizer;
        verdict.witness = best->point;
        return verdict;
    }
    bool sampled_tie = false;
    for (const auto& c : cands) {
        if (c.offset <= move_tol || c.value > f0 + tol.cert_tol) continue;
        if (c.certifiable) {
            verdict.status = MinimizerStatus::minimizer_not_unique;
            verdict.witness = c.point;
            return verdict;
        }
        sampled_tie = true;
    }
    if (sampled_tie || (grid_min && grid_offset > move_tol && *grid_min <= f0 + tol.cert_tol)) {
        verdict.status = MinimizerStatus::inconclusive;
        return verdict;
    }
    verdict.status = MinimizerStatus::unique_minimizer;
    return verdict;
}

}  // namespace sparsecert

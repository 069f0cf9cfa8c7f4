#ifndef SPARSECERT_LINALG_HPP
#define SPARSECERT_LINALG_HPP

#include <optional>

#include "sparsecert/support_set.hpp"
#include "sparsecert/types.hpp"

namespace sparsecert {

struct EigResult {
    Vector values;   // descending
    Matrix vectors;  // orthonormal columns, vectors.column(i) pairs with values[i]
};

/// Cyclic Jacobi eigendecomposition of a symmetric matrix. Throws
/// NotSymmetric when the asymmetry exceeds 1e-12.
EigResult symmetric_eig(const Matrix& g);

/// Householder QR of a full-column-rank matrix, reused for least squares and
/// orthogonal projections. Rank is gated on the smallest eigenvalue of MᵀM
/// against rank_tol.
class Projector {
  public:
    Projector(const Matrix& m, const Tolerances& tol = {});

    // argmin_x ‖Mx − y‖
    Vector solve(const Vector& y) const;
    // P_M y (projection onto the column span)
    Vector project(const Vector& y) const;
    // P⊥_M y = y − P_M y
    Vector complement(const Vector& y) const;

    int cols() const { return cols_; }

  private:
    int rows_ = 0, cols_ = 0;
    Matrix qr_;           // packed Householder vectors + R
    Vector householder_;  // leading coefficients of the reflectors
    Vector apply_qt(const Vector& y) const;
    Vector apply_q(Vector w) const;
};

Vector least_squares(const Matrix& m, const Vector& y, const Tolerances& tol = {});
Vector project_complement(const Matrix& m, const Vector& v, const Tolerances& tol = {});

/// Orthonormal basis of {v : Mv = 0}: eigenvectors of MᵀM whose eigenvalues
/// fall below rank_tol·λ_max. May have zero columns.
Matrix kernel_basis(const Matrix& m, const Tolerances& tol = {});

int rank(const Matrix& m, const Tolerances& tol = {});

/// spark(M) with the convention that a matrix whose columns are all linearly
/// independent has no finite spark; comparisons then treat it as cols + 1.
struct Spark {
    std::optional<int> value;

    bool finite() const { return value.has_value(); }
    bool exceeds(int t) const { return !value || *value > t; }
    int comparison_value(int cols) const { return value ? *value : cols + 1; }
};

Spark spark(const Matrix& m, const Tolerances& tol = {});

}  // namespace sparsecert

#endif

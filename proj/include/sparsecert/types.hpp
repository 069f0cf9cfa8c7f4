#ifndef SPARSECERT_TYPES_HPP
#define SPARSECERT_TYPES_HPP

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace sparsecert {

using Vector = std::vector<double>;

// ---------------------------------------------------------------------------
// Errors
// ---------------------------------------------------------------------------

struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

struct RankDeficient : Error {
    explicit RankDeficient(const std::string& what = "matrix is rank deficient") : Error(what) {}
};
struct NotSymmetric : Error {
    explicit NotSymmetric(const std::string& what = "matrix is not symmetric") : Error(what) {}
};
struct ZeroColumn : Error {
    explicit ZeroColumn(const std::string& what = "matrix has a zero column") : Error(what) {}
};
struct NotNormalized : Error {
    explicit NotNormalized(const std::string& what = "column is not unit norm") : Error(what) {}
};
struct InvalidParams : Error {
    explicit InvalidParams(const std::string& what) : Error(what) {}
};
struct NoCandidates : Error {
    explicit NoCandidates(const std::string& what = "no candidate atoms left") : Error(what) {}
};
struct EpsilonSearchFailed : Error {
    explicit EpsilonSearchFailed(const std::string& what = "epsilon search failed") : Error(what) {}
};
struct SparkTooSmall : Error {
    explicit SparkTooSmall(const std::string& what = "spark too small") : Error(what) {}
};
struct TooLarge : Error {
    explicit TooLarge(const std::string& what = "enumeration exceeds the workload guard") : Error(what) {}
};
struct OutOfDomain : Error {
    explicit OutOfDomain(const std::string& what) : Error(what) {}
};
struct Infeasible : Error {
    explicit Infeasible(const std::string& what = "no feasible support found") : Error(what) {}
};
struct KernelTooLarge : Error {
    explicit KernelTooLarge(const std::string& what = "kernel dimension above 2") : Error(what) {}
};
struct UnknownClaim : Error {
    explicit UnknownClaim(const std::string& what) : Error(what) {}
};
struct IoError : Error {
    explicit IoError(const std::string& what) : Error(what) {}
};

// ---------------------------------------------------------------------------
// Tolerances
// ---------------------------------------------------------------------------

/// Numerical cutoffs shared by all modules. rank_tol gates singular values,
/// tie_tol is the score-equality width of the greedy selection rules and
/// cert_tol the comparison width for certificate verdicts.
struct Tolerances {
    double rank_tol = 1e-10;
    double tie_tol = 1e-9;
    double cert_tol = 1e-9;

    void validate() const {
        if (!(rank_tol >= 0.0 && rank_tol < 1e-3)) throw InvalidParams("rank_tol must be in [0, 1e-3)");
        if (!(tie_tol >= 0.0 && tie_tol < 1e-3)) throw InvalidParams("tie_tol must be in [0, 1e-3)");
        if (!(cert_tol >= 0.0 && cert_tol < 1e-3)) throw InvalidParams("cert_tol must be in [0, 1e-3)");
    }
};

// ---------------------------------------------------------------------------
// Dense row-major matrix
// ---------------------------------------------------------------------------

class Matrix {
  public:
    Matrix() = default;
    Matrix(int rows, int cols, double fill = 0.0) : rows_(rows), cols_(cols), data_(static_cast<size_t>(rows) * cols, fill) {
        if (rows < 0 || cols < 0) throw InvalidParams("negative matrix dimension");
    }

    static Matrix identity(int n) {
        Matrix m(n, n);
        for (int i = 0; i < n; ++i) m(i, i) = 1.0;
        return m;
    }

    static Matrix from_columns(int rows, const std::vector<Vector>& cols) {
        Matrix m(rows, static_cast<int>(cols.size()));
        for (int j = 0; j < m.cols(); ++j) {
            if (static_cast<int>(cols[j].size()) != rows) throw InvalidParams("column length mismatch");
            for (int i = 0; i < rows; ++i) m(i, j) = cols[j][i];
        }
        return m;
    }

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    bool empty() const { return rows_ == 0 || cols_ == 0; }

    double& operator()(int i, int j) { return data_[static_cast<size_t>(i) * cols_ + j]; }
    double operator()(int i, int j) const { return data_[static_cast<size_t>(i) * cols_ + j]; }

    Vector column(int j) const {
        Vector c(rows_);
        for (int i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
        return c;
    }

    Vector row(int i) const {
        Vector r(cols_);
        for (int j = 0; j < cols_; ++j) r[j] = (*this)(i, j);
        return r;
    }

    void set_column(int j, const Vector& c) {
        for (int i = 0; i < rows_; ++i) (*this)(i, j) = c[i];
    }

    Matrix transposed() const {
        Matrix t(cols_, rows_);
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
        return t;
    }

    Matrix columns(const std::vector<int>& idx) const {
        Matrix s(rows_, static_cast<int>(idx.size()));
        for (int j = 0; j < s.cols(); ++j)
            for (int i = 0; i < rows_; ++i) s(i, j) = (*this)(i, idx[j]);
        return s;
    }

    bool all_finite() const {
        for (double v : data_)
            if (!std::isfinite(v)) return false;
        return true;
    }

    const std::vector<double>& data() const { return data_; }

  private:
    int rows_ = 0, cols_ = 0;
    std::vector<double> data_;
};

// ---------------------------------------------------------------------------
// Small vector/matrix helpers
// ---------------------------------------------------------------------------

inline double dot(const Vector& a, const Vector& b) {
    double s = 0.0;
    for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

inline double norm(const Vector& a) { return std::sqrt(dot(a, a)); }

inline double max_abs(const Vector& a) {
    double m = 0.0;
    for (double v : a) m = std::max(m, std::fabs(v));
    return m;
}

inline Vector matvec(const Matrix& m, const Vector& x) {
    Vector y(m.rows(), 0.0);
    for (int i = 0; i < m.rows(); ++i) {
        double s = 0.0;
        for (int j = 0; j < m.cols(); ++j) s += m(i, j) * x[j];
        y[i] = s;
    }
    return y;
}

// yᵀM as a vector of column inner products, i.e. Mᵀy.
inline Vector matvec_transposed(const Matrix& m, const Vector& y) {
    Vector x(m.cols(), 0.0);
    for (int j = 0; j < m.cols(); ++j) {
        double s = 0.0;
        for (int i = 0; i < m.rows(); ++i) s += m(i, j) * y[i];
        x[j] = s;
    }
    return x;
}

inline Matrix matmul(const Matrix& a, const Matrix& b) {
    Matrix c(a.rows(), b.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int k = 0; k < a.cols(); ++k) {
            double aik = a(i, k);
            if (aik == 0.0) continue;
            for (int j = 0; j < b.cols(); ++j) c(i, j) += aik * b(k, j);
        }
    return c;
}

// MᵀM
inline Matrix gram_matrix(const Matrix& m) {
    Matrix g(m.cols(), m.cols());
    for (int i = 0; i < m.cols(); ++i)
        for (int j = i; j < m.cols(); ++j) {
            double s = 0.0;
            for (int r = 0; r < m.rows(); ++r) s += m(r, i) * m(r, j);
            g(i, j) = s;
            g(j, i) = s;
        }
    return g;
}

inline double max_abs_diff(const Matrix& a, const Matrix& b) {
    double m = 0.0;
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) m = std::max(m, std::fabs(a(i, j) - b(i, j)));
    return m;
}

inline double frobenius_norm(const Matrix& a) {
    double s = 0.0;
    for (double v : a.data()) s += v * v;
    return std::sqrt(s);
}

}  // namespace sparsecert

#endif

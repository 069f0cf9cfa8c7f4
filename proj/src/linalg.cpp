#include "sparsecert/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace sparsecert {

// ---------------------------------------------------------------------------
// Cyclic Jacobi
// ---------------------------------------------------------------------------

EigResult symmetric_eig(const Matrix& g) {
    const int n = g.rows();
    if (n != g.cols()) throw NotSymmetric("matrix is not square");
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (std::fabs(g(i, j) - g(j, i)) > 1e-12) throw NotSymmetric();
    if (!g.all_finite()) throw InvalidParams("matrix has non-finite entries");

    Matrix a = g;
    Matrix v = Matrix::identity(n);

    auto off_norm = [&]() {
        double s = 0.0;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) s += a(i, j) * a(i, j);
        return std::sqrt(2.0 * s);
    };

    const double stop = 1e-15 * std::max(1.0, frobenius_norm(a));
    const int max_sweeps = 64;
    for (int sweep = 0; sweep < max_sweeps && off_norm() > stop; ++sweep) {
        for (int p = 0; p < n - 1; ++p) {
            for (int q = p + 1; q < n; ++q) {
                const double apq = a(p, q);
                if (std::fabs(apq) <= 1e-300) continue;
                const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
                const double t = (theta >= 0.0 ? 1.0 : -1.0) / (std::fabs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                for (int k = 0; k < n; ++k) {
                    const double akp = a(k, p), akq = a(k, q);
                    a(k, p) = c * akp - s * akq;
                    a(k, q) = s * akp + c * akq;
                }
                for (int k = 0; k < n; ++k) {
                    const double apk = a(p, k), aqk = a(q, k);
                    a(p, k) = c * apk - s * aqk;
                    a(q, k) = s * apk + c * aqk;
                }
                for (int k = 0; k < n; ++k) {
                    const double vkp = v(k, p), vkq = v(k, q);
                    v(k, p) = c * vkp - s * vkq;
                    v(k, q) = s * vkp + c * vkq;
                }
            }
        }
    }

    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int i, int j) { return a(i, i) > a(j, j); });

    EigResult res;
    res.values.resize(n);
    res.vectors = Matrix(n, n);
    for (int j = 0; j < n; ++j) {
        res.values[j] = a(order[j], order[j]);
        for (int i = 0; i < n; ++i) res.vectors(i, j) = v(i, order[j]);
    }
    return res;
}

// ---------------------------------------------------------------------------
// Householder QR / projections
// ---------------------------------------------------------------------------

Projector::Projector(const Matrix& m, const Tolerances& tol) : rows_(m.rows()), cols_(m.cols()), qr_(m) {
    if (cols_ == 0) return;  // empty projector: span is {0}
    if (rows_ < cols_) throw RankDeficient("more columns than rows");

    // The rank gate is expressed on the Gram spectrum (the pseudo-inverse
    // formula breaks down exactly when λ_min(MᵀM) vanishes).
    EigResult eig = symmetric_eig(gram_matrix(m));
    if (eig.values.back() < tol.rank_tol) throw RankDeficient();

    householder_.assign(cols_, 0.0);
    for (int k = 0; k < cols_; ++k) {
        double nx = 0.0;
        for (int i = k; i < rows_; ++i) nx += qr_(i, k) * qr_(i, k);
        nx = std::sqrt(nx);
        if (nx == 0.0) throw RankDeficient();
        double alpha = qr_(k, k) >= 0.0 ? -nx : nx;
        double vk = qr_(k, k) - alpha;
        qr_(k, k) = alpha;
        double vnorm2 = vk * vk;
        for (int i = k + 1; i < rows_; ++i) vnorm2 += qr_(i, k) * qr_(i, k);
        householder_[k] = vk;
        if (vnorm2 == 0.0) continue;
        for (int j = k + 1; j < cols_; ++j) {
            double s = vk * qr_(k, j);
            for (int i = k + 1; i < rows_; ++i) s += qr_(i, k) * qr_(i, j);
            s *= 2.0 / vnorm2;
            qr_(k, j) -= s * vk;
            for (int i = k + 1; i < rows_; ++i) qr_(i, j) -= s * qr_(i, k);
        }
    }
}

Vector Projector::apply_qt(const Vector& y) const {
    Vector w = y;
    for (int k = 0; k < cols_; ++k) {
        double vk = householder_[k];
        double vnorm2 = vk * vk;
        for (int i = k + 1; i < rows_; ++i) vnorm2 += qr_(i, k) * qr_(i, k);
        if (vnorm2 == 0.0) continue;
        double s = vk * w[k];
        for (int i = k + 1; i < rows_; ++i) s += qr_(i, k) * w[i];
        s *= 2.0 / vnorm2;
        w[k] -= s * vk;
        for (int i = k + 1; i < rows_; ++i) w[i] -= s * qr_(i, k);
    }
    return w;
}

Vector Projector::apply_q(Vector w) const {
    for (int k = cols_ - 1; k >= 0; --k) {
        double vk = householder_[k];
        double vnorm2 = vk * vk;
        for (int i = k + 1; i < rows_; ++i) vnorm2 += qr_(i, k) * qr_(i, k);
        if (vnorm2 == 0.0) continue;
        double s = vk * w[k];
        for (int i = k + 1; i < rows_; ++i) s += qr_(i, k) * w[i];
        s *= 2.0 / vnorm2;
        w[k] -= s * vk;
        for (int i = k + 1; i < rows_; ++i) w[i] -= s * qr_(i, k);
    }
    return w;
}

Vector Projector::solve(const Vector& y) const {
    if (static_cast<int>(y.size()) != rows_ && cols_ > 0) throw InvalidParams("right-hand side length mismatch");
    if (cols_ == 0) return {};
    Vector w = apply_qt(y);
    Vector x(cols_);
    for (int i = cols_ - 1; i >= 0; --i) {
        double s = w[i];
        for (int j = i + 1; j < cols_; ++j) s -= qr_(i, j) * x[j];
        x[i] = s / qr_(i, i);
    }
    return x;
}

Vector Projector::project(const Vector& y) const {
    if (cols_ == 0) return Vector(y.size(), 0.0);
    Vector w = apply_qt(y);
    for (int i = cols_; i < rows_; ++i) w[i] = 0.0;
    return apply_q(std::move(w));
}

Vector Projector::complement(const Vector& y) const {
    if (cols_ == 0) return y;
    Vector p = project(y);
    Vector r(y.size());
    for (size_t i = 0; i < y.size(); ++i) r[i] = y[i] - p[i];
    return r;
}

Vector least_squares(const Matrix& m, const Vector& y, const Tolerances& tol) {
    return Projector(m, tol).solve(y);
}

Vector project_complement(const Matrix& m, const Vector& v, const Tolerances& tol) {
    if (m.cols() == 0) return v;
    return Projector(m, tol).complement(v);
}

// ---------------------------------------------------------------------------
// Kernel, rank, spark
// ---------------------------------------------------------------------------

Matrix kernel_basis(const Matrix& m, const Tolerances& tol) {
    if (m.empty()) throw InvalidParams("kernel_basis requires a nonempty matrix");
    EigResult eig = symmetric_eig(gram_matrix(m));
    const int n = m.cols();
    const double lmax = eig.values.front();
    std::vector<int> keep;
    if (lmax <= 0.0) {
        for (int j = 0; j < n; ++j) keep.push_back(j);
    } else {
        for (int j = 0; j < n; ++j)
            if (eig.values[j] < tol.rank_tol * lmax) keep.push_back(j);
    }
    Matrix basis(n, static_cast<int>(keep.size()));
    for (int c = 0; c < basis.cols(); ++c)
        for (int i = 0; i < n; ++i) basis(i, c) = eig.vectors(i, keep[c]);
    return basis;
}

int rank(const Matrix& m, const Tolerances& tol) {
    if (m.empty()) return 0;
    EigResult eig = symmetric_eig(gram_matrix(m));
    const double lmax = eig.values.front();
    if (lmax <= 0.0) return 0;
    int r = 0;
    for (double v : eig.values)
        if (v >= tol.rank_tol * lmax) ++r;
    return r;
}

namespace {

bool subset_rank_deficient(const Matrix& g, const std::vector<int>& s, const Tolerances& tol) {
    Matrix sub(static_cast<int>(s.size()), static_cast<int>(s.size()));
    for (size_t i = 0; i < s.size(); ++i)
        for (size_t j = 0; j < s.size(); ++j) sub(static_cast<int>(i), static_cast<int>(j)) = g(s[i], s[j]);
    EigResult eig = symmetric_eig(sub);
    const double lmax = std::max(eig.values.front(), 0.0);
    if (lmax <= 0.0) return true;
    return eig.values.back() < tol.rank_tol * lmax;
}

}  // namespace

Spark spark(const Matrix& m, const Tolerances& tol) {
    if (m.empty()) throw InvalidParams("spark requires a nonempty matrix");
    const int n = m.cols();
    const int r = rank(m, tol);
    if (r == n) return Spark{std::nullopt};

    const Matrix g = gram_matrix(m);
    std::vector<int> pool(n);
    std::iota(pool.begin(), pool.end(), 0);
    // Some (r+1)-subset of a rank-r matrix is always dependent, so the search
    // below terminates at q = r + 1 at the latest.
    for (int q = 1; q <= r + 1; ++q) {
        bool found = false;
        for_each_subset(pool, q, [&](const std::vector<int>& s) {
            if (subset_rank_deficient(g, s, tol)) {
                found = true;
                return false;
            }
            return true;
        });
        if (found) return Spark{q};
    }
    return Spark{std::nullopt};  // unreachable
}

}  // namespace sparsecert

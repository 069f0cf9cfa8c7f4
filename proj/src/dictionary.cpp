#include "sparsecert/dictionary.hpp"

#include <cmath>

#include "sparsecert/rng.hpp"

namespace sparsecert {

Dictionary Dictionary::build(const Matrix& raw, bool normalize) {
    if (raw.empty()) throw InvalidParams("dictionary must be nonempty");
    if (!raw.all_finite()) throw InvalidParams("dictionary has non-finite entries");
    Matrix atoms = raw;
    for (int j = 0; j < atoms.cols(); ++j) {
        double nj = 0.0;
        for (int i = 0; i < atoms.rows(); ++i) nj += atoms(i, j) * atoms(i, j);
        nj = std::sqrt(nj);
        if (normalize) {
            if (nj < 1e-12) throw ZeroColumn("column " + std::to_string(j) + " is zero");
            for (int i = 0; i < atoms.rows(); ++i) atoms(i, j) /= nj;
        } else if (std::fabs(nj - 1.0) > 1e-8) {
            throw NotNormalized("column " + std::to_string(j) + " has norm " + std::to_string(nj));
        }
    }
    return Dictionary(atoms, gram_matrix(atoms));
}

double mutual_coherence(const Dictionary& d) {
    if (d.size() < 2) throw InvalidParams("mutual coherence needs at least two atoms");
    double mu = 0.0;
    for (int i = 0; i < d.size(); ++i)
        for (int j = i + 1; j < d.size(); ++j) mu = std::max(mu, std::fabs(d.gram()(i, j)));
    return mu;
}

ProjectedDictionary projected_dictionary(const Dictionary& d, const SupportSet& q, const Tolerances& tol) {
    q.check_range(d.size());
    const int m = d.dim(), n = d.size();
    ProjectedDictionary p;
    p.q_set = q;
    p.a_tilde = Matrix(m, n);
    p.b_tilde = Matrix(m, n);
    Projector proj(d.atoms().columns(q.indices()), tol);
    for (int i = 0; i < n; ++i) {
        if (q.contains(i)) continue;
        Vector at = proj.complement(d.atom(i));
        const double na = norm(at);
        for (int r = 0; r < m; ++r) {
            p.a_tilde(r, i) = at[r];
            p.b_tilde(r, i) = na > tol.rank_tol ? at[r] / na : 0.0;
        }
    }
    return p;
}

Vector gram_submatrix_eigen(const Dictionary& d, const SupportSet& s) {
    if (s.empty()) throw InvalidParams("gram_submatrix_eigen requires a nonempty subset");
    s.check_range(d.size());
    const int q = s.size();
    Matrix sub(q, q);
    for (int i = 0; i < q; ++i)
        for (int j = 0; j < q; ++j) sub(i, j) = d.gram()(s[i], s[j]);
    return symmetric_eig(sub).values;
}

// ---------------------------------------------------------------------------
// Generators
// ---------------------------------------------------------------------------

namespace {

// A = ΥUᵀ with Υ(i,i) = √Λ(i,i): any matrix with the prescribed Gram, unique
// up to a left orthogonal factor. `rows` selects how many eigendirections
// are kept; eigenvalues below it must vanish.
Matrix factor_from_gram(const Matrix& g, int rows) {
    EigResult eig = symmetric_eig(g);
    const int n = g.cols();
    Matrix a(rows, n);
    for (int i = 0; i < rows; ++i) {
        const double lam = std::max(eig.values[i], 0.0);
        const double s = std::sqrt(lam);
        for (int j = 0; j < n; ++j) a(i, j) = s * eig.vectors(j, i);
    }
    Matrix check = gram_matrix(a);
    if (max_abs_diff(check, g) > 1e-9) throw Error("construction does not reproduce the target Gram");
    return a;
}

}  // namespace

GeneratorResult generate_equiangular(int k, int g, int b) {
    if (k < 1) throw InvalidParams("equiangular: k must be >= 1");
    if (g < 0 || g >= k) throw InvalidParams("equiangular: need 0 <= g < k");
    if (b < 0) throw InvalidParams("equiangular: b must be >= 0");
    const int n = 2 * k - g + b;
    const double mu = 1.0 / (n - 1);
    Matrix gm(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) gm(i, j) = i == j ? 1.0 : -mu;

    GeneratorResult res{Dictionary::build(factor_from_gram(gm, n - 1), false), {}};
    res.meta.construction = "equiangular";
    res.meta.params = {{"k", double(k)}, {"g", double(g)}, {"b", double(b)}};
    res.meta.mu = mu;
    res.meta.canonical_q = SupportSet::range(0, g + b);
    std::vector<int> qs;
    for (int i = 0; i < g; ++i) qs.push_back(i);
    for (int i = g + b; i < k + b; ++i) qs.push_back(i);
    res.meta.canonical_q_star = SupportSet(qs);
    return res;
}

GeneratorResult generate_example1(int n, double gamma) {
    if (n < 3) throw InvalidParams("example1: n must be >= 3");
    if (!(std::fabs(gamma) < 1.0 / (n - 2))) throw InvalidParams("example1: need |gamma| < 1/(n-2)");
    const double alpha = 0.5 * gamma * gamma * (n - 2) - 1.0;
    const double beta = -gamma / 2.0;
    Matrix gm(n, n);
    for (int i = 0; i < n - 2; ++i) gm(i, i) = 1.0;
    for (int i = 0; i < n - 2; ++i) {
        gm(i, n - 2) = gm(n - 2, i) = beta;
        gm(i, n - 1) = gm(n - 1, i) = beta;
    }
    gm(n - 2, n - 2) = gm(n - 1, n - 1) = 1.0;
    gm(n - 2, n - 1) = gm(n - 1, n - 2) = alpha;

    GeneratorResult res{Dictionary::build(factor_from_gram(gm, n - 1), false), {}};
    res.meta.construction = "example1";
    res.meta.params = {{"n", double(n)}, {"gamma", gamma}};
    res.meta.mu = mutual_coherence(res.dict);
    res.meta.canonical_q = SupportSet({n - 2});
    res.meta.canonical_q_star = SupportSet({n - 2, n - 1});
    return res;
}

GeneratorResult generate_lemma1(int k, int g, int b) {
    if (k < 1) throw InvalidParams("lemma1: k must be >= 1");
    if (g < 0 || g >= k) throw InvalidParams("lemma1: need 0 <= g < k");
    if (b < 0) throw InvalidParams("lemma1: b must be >= 0");
    const int n = k + b + 1;
    const int kg = k - g;
    Matrix a(n, n);
    for (int i = 0; i < g + b; ++i) a(i, i) = 1.0;
    if (g <= k - 2) {
        // M = [I, u; 0, √((k-g-1)/(k-g))] with u = 1/(k-g)·ones
        for (int i = 0; i < kg; ++i) a(g + b + i, g + b + i) = 1.0;
        for (int i = 0; i < kg; ++i) a(g + b + i, n - 1) = 1.0 / kg;
        a(n - 1, n - 1) = std::sqrt(double(kg - 1) / kg);
    } else {
        // degenerate 2×2 block with two identical columns
        a(g + b, g + b) = 1.0;
        a(g + b, n - 1) = 1.0;
    }

    GeneratorResult res{Dictionary::build(a, false), {}};
    res.meta.construction = "lemma1";
    res.meta.params = {{"k", double(k)}, {"g", double(g)}, {"b", double(b)}};
    res.meta.mu = mutual_coherence(res.dict);
    res.meta.canonical_q = SupportSet::range(0, g + b);
    res.meta.canonical_q_star = SupportSet::range(b, k);
    return res;
}

GeneratorResult generate_example2(int k, int g, double alpha) {
    if (k < 1) throw InvalidParams("example2: k must be >= 1");
    if (g < 0 || g >= k) throw InvalidParams("example2: need 0 <= g < k");
    if (!(alpha > 0.0 && alpha < 1.0)) throw InvalidParams("example2: need alpha in (0,1)");
    const int n = k + 1;
    const double mu = alpha / (2 * k - g - 1);
    if (!(mu <= 1.0 / k)) throw InvalidParams("example2: derived mu exceeds 1/k");
    Matrix gm(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) gm(i, j) = i == j ? 1.0 : -mu;

    GeneratorResult res{Dictionary::build(factor_from_gram(gm, n), false), {}};
    res.meta.construction = "example2";
    res.meta.params = {{"k", double(k)}, {"g", double(g)}, {"alpha", alpha}};
    res.meta.mu = mu;
    res.meta.canonical_q = SupportSet::range(0, g);
    res.meta.canonical_q_star = SupportSet::range(0, k);
    return res;
}

GeneratorResult generate_example3(int k, double mu) {
    if (k < 1) throw InvalidParams("example3: k must be >= 1");
    if (!(mu >= 0.0 && mu < 1.0)) throw InvalidParams("example3: need mu in [0,1)");
    const int n = k + 1;
    Matrix a(n, n);
    a(0, 0) = 1.0;                       // a1 = e1
    a(0, 1) = mu;                        // a2 = mu·e1 + √(1-mu²)·e2
    a(1, 1) = std::sqrt(1.0 - mu * mu);
    for (int j = 2; j < n; ++j) a(j, j) = 1.0;  // H: any orthonormal completion works

    GeneratorResult res{Dictionary::build(a, false), {}};
    res.meta.construction = "example3";
    res.meta.params = {{"k", double(k)}, {"mu", mu}};
    res.meta.mu = mu;
    res.meta.canonical_q = SupportSet();
    res.meta.canonical_q_star = SupportSet::range(0, k);
    return res;
}

GeneratorResult generate(const std::string& construction, const std::map<std::string, double>& params) {
    auto get = [&](const std::string& key) {
        auto it = params.find(key);
        if (it == params.end()) throw InvalidParams(construction + ": missing parameter " + key);
        return it->second;
    };
    auto geti = [&](const std::string& key) { return static_cast<int>(std::llround(get(key))); };

    if (construction == "equiangular") return generate_equiangular(geti("k"), geti("g"), geti("b"));
    if (construction == "example1") return generate_example1(geti("n"), get("gamma"));
    if (construction == "lemma1") return generate_lemma1(geti("k"), geti("g"), geti("b"));
    if (construction == "example2") return generate_example2(geti("k"), geti("g"), get("alpha"));
    if (construction == "example3") return generate_example3(geti("k"), get("mu"));
    throw InvalidParams("unknown construction: " + construction);
}

Dictionary random_dictionary(int m, int n, std::uint64_t seed, const std::string& kind) {
    if (m < 1 || n < 1) throw InvalidParams("random_dictionary: dimensions must be positive");
    Rng rng(seed);
    Matrix a(m, n);
    if (kind == "gaussian") {
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < n; ++j) a(i, j) = rng.normal();
    } else if (kind == "jittered_identity") {
        if (m < n) throw InvalidParams("jittered_identity needs m >= n");
        const double sigma = 0.05 + 0.05 * (seed % 3);
        for (int j = 0; j < n; ++j) {
            a(j, j) = 1.0;
            for (int i = 0; i < m; ++i) a(i, j) += sigma * rng.normal();
        }
    } else {
        throw InvalidParams("unknown random dictionary kind: " + kind);
    }
    return Dictionary::build(a, true);
}

}  // namespace sparsecert

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "sparsecert/dictionary.hpp"
#include "sparsecert/rng.hpp"

using namespace sparsecert;

TEST_CASE("build keeps an orthonormal matrix unchanged") {
    const Dictionary d = Dictionary::build(Matrix::identity(3), false);
    CHECK(max_abs_diff(d.atoms(), Matrix::identity(3)) == 0.0);
    CHECK(max_abs_diff(d.gram(), Matrix::identity(3)) < 1e-15);
}

TEST_CASE("build rescales when asked") {
    Matrix raw(2, 2);
    raw(0, 0) = 2.0;
    raw(1, 1) = 3.0;
    const Dictionary d = Dictionary::build(raw, true);
    CHECK(max_abs_diff(d.atoms(), Matrix::identity(2)) < 1e-15);
}

TEST_CASE("build rejects zero columns and non-normalized input") {
    Matrix raw(2, 2);
    raw(0, 0) = 1.0;
    CHECK_THROWS_AS(Dictionary::build(raw, true), ZeroColumn);
    raw(1, 1) = 0.5;
    CHECK_THROWS_AS(Dictionary::build(raw, false), NotNormalized);
}

TEST_CASE("generator output is unit-norm by construction") {
    const GeneratorResult gen = generate_equiangular(3, 1, 1);
    // build() with normalize unset accepted it already; double-check norms
    for (int j = 0; j < gen.dict.size(); ++j) CHECK(std::fabs(norm(gen.dict.atom(j)) - 1.0) < 1e-10);
}

TEST_CASE("mutual coherence basics") {
    CHECK(mutual_coherence(Dictionary::build(Matrix::identity(4), false)) == 0.0);
    const GeneratorResult gen = generate_equiangular(2, 0, 0);
    CHECK(mutual_coherence(gen.dict) == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
}

TEST_CASE("mutual coherence equals the double-loop Gram scan on a random dictionary") {
    const Dictionary d = random_dictionary(5, 8, 1234);
    double ref = 0.0;
    for (int i = 0; i < d.size(); ++i)
        for (int j = 0; j < d.size(); ++j) {
            if (i == j) continue;
            ref = std::max(ref, std::fabs(dot(d.atom(i), d.atom(j))));
        }
    CHECK(mutual_coherence(d) == doctest::Approx(ref).epsilon(1e-12));
}

TEST_CASE("equiangular generator: shape, coherence, spark, kernel") {
    for (auto [k, g, b] : std::vector<std::tuple<int, int, int>>{{2, 0, 0}, {3, 1, 1}, {4, 1, 0}}) {
        const GeneratorResult gen = generate_equiangular(k, g, b);
        const int n = 2 * k - g + b;
        CHECK(gen.dict.dim() == n - 1);
        CHECK(gen.dict.size() == n);
        CHECK(std::fabs(mutual_coherence(gen.dict) - 1.0 / (n - 1)) < 1e-10);

        const Spark s = spark(gen.dict.atoms());
        REQUIRE(s.finite());
        CHECK(*s.value == n);

        const Matrix kb = kernel_basis(gen.dict.atoms());
        REQUIRE(kb.cols() == 1);
        // kernel is the all-ones direction
        const Vector v = kb.column(0);
        for (int i = 1; i < n; ++i) CHECK(std::fabs(v[i] - v[0]) < 1e-9);
    }
}

TEST_CASE("equiangular(3,1,1) metadata and layout") {
    const GeneratorResult gen = generate_equiangular(3, 1, 1);
    CHECK(gen.dict.dim() == 5);
    CHECK(gen.dict.size() == 6);
    CHECK(gen.meta.mu == doctest::Approx(0.2));
    CHECK(gen.meta.canonical_q == SupportSet({0, 1}));
    CHECK(gen.meta.canonical_q_star == SupportSet({0, 2, 3}));
}

TEST_CASE("example1 generator: kernel direction, spark, coherence structure") {
    const int n = 6;
    const double gamma = 0.2;
    const GeneratorResult gen = generate_example1(n, gamma);
    CHECK(gen.dict.dim() == n - 1);
    CHECK(gen.dict.size() == n);

    const Matrix kb = kernel_basis(gen.dict.atoms());
    REQUIRE(kb.cols() == 1);
    Vector v = kb.column(0);
    if (v[n - 1] < 0)
        for (double& x : v) x = -x;
    const double scale = v[n - 1];
    for (int i = 0; i < n - 2; ++i) CHECK(v[i] / scale == doctest::Approx(gamma).epsilon(1e-9));
    CHECK(v[n - 2] / scale == doctest::Approx(1.0).epsilon(1e-9));

    const Spark s = spark(gen.dict.atoms());
    REQUIRE(s.finite());
    CHECK(*s.value == n);  // spark(A) = n

    CHECK_THROWS_AS(generate_example1(6, 0.3), InvalidParams);  // |gamma| >= 1/(n-2)
}

TEST_CASE("lemma1 generator: Gram spectrum and degenerate variant") {
    const GeneratorResult gen = generate_lemma1(4, 1, 1);
    CHECK(gen.dict.dim() == 6);
    CHECK(gen.dict.size() == 6);
    const Vector eig = symmetric_eig(gen.dict.gram()).values;
    CHECK(eig.front() == doctest::Approx(1.0 + 1.0 / std::sqrt(3.0)).epsilon(1e-12));
    CHECK(eig.back() == doctest::Approx(1.0 - 1.0 / std::sqrt(3.0)).epsilon(1e-12));
    for (int i = 1; i < 5; ++i) CHECK(eig[i] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(gen.meta.canonical_q == SupportSet({0, 1}));
    CHECK(gen.meta.canonical_q_star == SupportSet({1, 2, 3, 4}));

    const GeneratorResult degen = generate_lemma1(4, 3, 1);
    const Spark s = spark(degen.dict.atoms());
    REQUIRE(s.finite());
    CHECK(*s.value == 2);  // two identical columns
}

TEST_CASE("example2 and example3 generators") {
    const GeneratorResult e2 = generate_example2(3, 1, 0.5);
    const double mu2 = 0.5 / (2 * 3 - 1 - 1);
    CHECK(mutual_coherence(e2.dict) == doctest::Approx(mu2).epsilon(1e-9));
    const Vector eig2 = symmetric_eig(e2.dict.gram()).values;
    CHECK(eig2.front() == doctest::Approx(1.0 + mu2).epsilon(1e-9));
    CHECK(eig2.back() == doctest::Approx(1.0 - 3 * mu2).epsilon(1e-9));

    const GeneratorResult e3 = generate_example3(4, 0.3);
    CHECK(mutual_coherence(e3.dict) == doctest::Approx(0.3).epsilon(1e-12));
    const Vector eig3 = symmetric_eig(e3.dict.gram()).values;
    CHECK(eig3.front() == doctest::Approx(1.3).epsilon(1e-12));
    CHECK(eig3.back() == doctest::Approx(0.7).epsilon(1e-12));
}

TEST_CASE("generator parameter domains are enforced by name") {
    CHECK_THROWS_AS(generate_equiangular(2, 2, 0), InvalidParams);
    CHECK_THROWS_AS(generate_example2(3, 1, 1.5), InvalidParams);
    CHECK_THROWS_AS(generate_example3(3, 1.0), InvalidParams);
    CHECK_THROWS_AS(generate("unknown", {}), InvalidParams);
}

TEST_CASE("projected dictionary with empty Q is the dictionary itself") {
    const Dictionary d = random_dictionary(5, 7, 77);
    const ProjectedDictionary p = projected_dictionary(d, SupportSet());
    CHECK(max_abs_diff(p.a_tilde, d.atoms()) < 1e-12);
    CHECK(max_abs_diff(p.b_tilde, d.atoms()) < 1e-12);
}

TEST_CASE("projected atoms match the explicit Gram-inverse expansion") {
    const GeneratorResult gen = generate_equiangular(3, 1, 1);
    const SupportSet q({0, 1});
    const ProjectedDictionary p = projected_dictionary(gen.dict, q);
    for (int i = 0; i < gen.dict.size(); ++i) {
        if (q.contains(i)) continue;
        const Vector ref = oracle::projected_atom(gen.dict, q, i);
        const Vector got = p.a_tilde.column(i);
        for (int r = 0; r < gen.dict.dim(); ++r) CHECK(std::fabs(got[r] - ref[r]) < 1e-9);
    }
}

TEST_CASE("projected Gram matches the Schur identity on a random dictionary") {
    const Dictionary d = random_dictionary(6, 9, 2024);
    const SupportSet q({1, 4});
    const ProjectedDictionary p = projected_dictionary(d, q);
    for (int i = 0; i < d.size(); ++i)
        for (int j = 0; j < d.size(); ++j) {
            if (q.contains(i) || q.contains(j)) continue;
            const double got = dot(p.a_tilde.column(i), p.a_tilde.column(j));
            CHECK(std::fabs(got - oracle::projected_inner_schur(d, q, i, j)) < 1e-9);
        }
}

TEST_CASE("equiangular projected norms are equal, so B is a positive multiple of A-tilde") {
    for (auto [k, g, b] : std::vector<std::tuple<int, int, int>>{{3, 1, 0}, {3, 1, 1}, {4, 0, 1}}) {
        const GeneratorResult gen = generate_equiangular(k, g, b);
        const SupportSet q = SupportSet::range(0, g + b);
        const ProjectedDictionary p = projected_dictionary(gen.dict, q);
        double common = -1.0;
        for (int i = 0; i < gen.dict.size(); ++i) {
            if (q.contains(i)) continue;
            const double na = norm(p.a_tilde.column(i));
            CHECK(na > 1e-10);  // nonzero whenever |Q| + 1 < spark
            if (common < 0)
                common = na;
            else
                CHECK(na == doctest::Approx(common).epsilon(1e-10));
        }
    }
}

TEST_CASE("equiangular projected inner products follow the closed form") {
    // ⟨ã_i, ã_j⟩ = −μ − μ²·1ᵀ(A_RᵀA_R)⁻¹1 and ‖ã_i‖² = 1 − μ²·1ᵀ(A_RᵀA_R)⁻¹1
    const GeneratorResult gen = generate_equiangular(3, 1, 1);
    const Dictionary& d = gen.dict;
    const double mu = gen.meta.mu;
    for (const std::vector<int>& rv : {std::vector<int>{0}, {0, 1}, {2, 4}, {0, 3, 5}}) {
        const SupportSet r_set(rv);
        const int l = r_set.size();
        Matrix grr(l, l);
        for (int a = 0; a < l; ++a)
            for (int b2 = 0; b2 < l; ++b2) grr(a, b2) = d.gram()(r_set[a], r_set[b2]);
        const Vector ones(l, 1.0);
        const double corr = mu * mu * dot(ones, matvec(oracle::invert(grr), ones));

        const ProjectedDictionary p = projected_dictionary(d, r_set);
        for (int i = 0; i < d.size(); ++i) {
            if (r_set.contains(i)) continue;
            CHECK(std::fabs(dot(p.a_tilde.column(i), p.a_tilde.column(i)) - (1.0 - corr)) < 1e-9);
            for (int j = i + 1; j < d.size(); ++j) {
                if (r_set.contains(j)) continue;
                CHECK(std::fabs(dot(p.a_tilde.column(i), p.a_tilde.column(j)) - (-mu - corr)) < 1e-9);
            }
        }
    }
}

TEST_CASE("lemma1 projection onto the canonical Q leaves the M block") {
    const int k = 4, g = 1, b = 1;
    const GeneratorResult gen = generate_lemma1(k, g, b);
    const SupportSet q = SupportSet::range(0, g + b);
    const ProjectedDictionary p = projected_dictionary(gen.dict, q);
    // columns outside Q are untouched: they are orthogonal to the identity block
    for (int i = g + b; i < gen.dict.size(); ++i) {
        const Vector orig = gen.dict.atom(i);
        const Vector proj = p.a_tilde.column(i);
        for (int r = 0; r < gen.dict.dim(); ++r) CHECK(std::fabs(proj[r] - orig[r]) < 1e-12);
    }
}

TEST_CASE("gram_submatrix_eigen") {
    const Dictionary d = random_dictionary(6, 8, 5150);
    SUBCASE("singleton gives the unit eigenvalue") {
        const Vector e = gram_submatrix_eigen(d, SupportSet({3}));
        REQUIRE(e.size() == 1);
        CHECK(e[0] == doctest::Approx(1.0).epsilon(1e-12));
    }
    SUBCASE("example3 full set gives 1 ± mu") {
        const GeneratorResult e3 = generate_example3(5, 0.25);
        const Vector eig = gram_submatrix_eigen(e3.dict, SupportSet::range(0, 6));
        CHECK(eig.front() == doctest::Approx(1.25).epsilon(1e-12));
        CHECK(eig.back() == doctest::Approx(0.75).epsilon(1e-12));
    }
    SUBCASE("random subset matches the explicitly formed submatrix Gram") {
        const SupportSet s({0, 2, 5, 7});
        const Vector got = gram_submatrix_eigen(d, s);
        const Vector ref = symmetric_eig(gram_matrix(d.atoms().columns(s.indices()))).values;
        for (size_t i = 0; i < got.size(); ++i) CHECK(got[i] == doctest::Approx(ref[i]).epsilon(1e-10));
    }
}

TEST_CASE("dictionary CSV respects the generate postcondition on the Gram") {
    // AᵀA must reproduce the target Gram for every construction
    for (const auto& gen :
         {generate_equiangular(3, 0, 1), generate_example1(5, 0.25), generate_example2(4, 2, 0.8)}) {
        const Matrix check = gram_matrix(gen.dict.atoms());
        CHECK(max_abs_diff(check, gen.dict.gram()) < 1e-12);
        for (int i = 0; i < check.rows(); ++i) CHECK(check(i, i) == doctest::Approx(1.0).epsilon(1e-10));
    }
}

TEST_CASE("projected_dictionary rejects a rank-deficient support") {
    const GeneratorResult degen = generate_lemma1(2, 1, 0);  // columns 1 and 2 coincide
    CHECK_THROWS_AS(projected_dictionary(degen.dict, SupportSet({1, 2})), RankDeficient);
}

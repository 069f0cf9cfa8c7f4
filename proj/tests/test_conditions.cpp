#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "sparsecert/conditions.hpp"
#include "sparsecert/rng.hpp"

using namespace sparsecert;

TEST_CASE("partial ERC vanishes on orthonormal dictionaries") {
    const Dictionary d = Dictionary::build(Matrix::identity(5), false);
    CHECK(partial_erc(d, SupportSet({0, 1}), SupportSet({3}), Variant::omp) == doctest::Approx(0.0));
    CHECK(partial_erc(d, SupportSet({0, 1}), SupportSet({3}), Variant::ols) == doctest::Approx(0.0));
}

TEST_CASE("partial ERC with empty Q reduces to the classical ERC") {
    const Dictionary d = random_dictionary(6, 8, 314);
    const SupportSet q_star({0, 2, 5});
    const double got = partial_erc(d, q_star, SupportSet(), Variant::omp);
    // direct evaluation of the classical condition: max_i ‖A†_{Q*} a_i‖₁
    const Matrix aq = d.atoms().columns(q_star.indices());
    double ref = 0.0;
    for (int i = 0; i < d.size(); ++i) {
        if (q_star.contains(i)) continue;
        ref = std::max(ref, oracle::l1(oracle::normal_equations_solve(aq, d.atom(i))));
    }
    CHECK(got == doctest::Approx(ref).epsilon(1e-9));
}

TEST_CASE("partial ERC matches the normal-equation oracle for both variants") {
    const Dictionary d = random_dictionary(6, 8, 2718);
    const SupportSet q_star({1, 3, 6});
    const SupportSet q({3, 7});
    for (Variant v : {Variant::omp, Variant::ols})
        CHECK(partial_erc(d, q_star, q, v) == doctest::Approx(oracle::partial_erc_direct(d, q_star, q, v)).epsilon(1e-9));
}

TEST_CASE("example1 keeps the OLS certificate below one at g = k - 1") {
    for (int n : {5, 6}) {
        const GeneratorResult gen = generate_example1(n, 0.8 / (n - 2));
        const double t_ols = theta_oxx(gen.dict, 2, 1, 0, Variant::ols);
        CHECK(t_ols < 1.0);
    }
}

TEST_CASE("theta_oxx on orthonormal dictionaries is zero") {
    const Dictionary d = Dictionary::build(Matrix::identity(5), false);
    CHECK(theta_oxx(d, 2, 0, 0, Variant::omp) == doctest::Approx(0.0));
    CHECK(theta_oxx(d, 2, 1, 1, Variant::ols) == doctest::Approx(0.0));
}

TEST_CASE("theta_oxx reaches one on the equiangular construction (OMP)") {
    for (auto [k, g, b] : std::vector<std::tuple<int, int, int>>{{2, 0, 0}, {3, 1, 1}}) {
        const GeneratorResult gen = generate_equiangular(k, g, b);
        CHECK(theta_oxx(gen.dict, k, g, b, Variant::omp) >= 1.0 - 1e-9);
    }
}

TEST_CASE("theta_oxx agrees with the independent enumeration oracle") {
    const Dictionary d = random_dictionary(5, 7, 1618);
    for (Variant v : {Variant::omp, Variant::ols})
        CHECK(theta_oxx(d, 2, 1, 0, v) == doctest::Approx(oracle::theta_oxx_enumerated(d, 2, 1, 0, v)).epsilon(1e-9));
}

TEST_CASE("theta_oxx guards oversized enumerations") {
    const Dictionary d = random_dictionary(30, 40, 5, "gaussian");
    CHECK_THROWS_AS(theta_oxx(d, 8, 0, 8, Variant::omp), TooLarge);
}

TEST_CASE("theta_nsp on the equiangular dictionary is one for every p") {
    const GeneratorResult gen = generate_equiangular(3, 1, 1);
    for (double p : {0.0, 0.25, 0.5, 0.75, 1.0}) {
        const ThetaNsp t = theta_nsp(gen.dict, 3, 1, 1, p);
        CHECK(t.exact);
        CHECK(t.value == doctest::Approx(1.0).epsilon(1e-9));
    }
}

TEST_CASE("theta_nsp on example1 matches the closed-form values") {
    const int n = 6;
    const double gamma = 0.8 / (n - 2);
    const GeneratorResult gen = generate_example1(n, gamma);
    const ThetaNsp t0 = theta_nsp(gen.dict, 2, 1, 0, 0.0);
    CHECK(t0.exact);
    CHECK(t0.value == doctest::Approx(1.0 / (n - 2)).epsilon(1e-9));
    const ThetaNsp t1 = theta_nsp(gen.dict, 2, 1, 0, 1.0);
    CHECK(t1.exact);
    CHECK(t1.value == doctest::Approx(1.0 / ((n - 2) * gamma)).epsilon(1e-9));
    CHECK(t1.value == doctest::Approx(1.25).epsilon(1e-9));
}

TEST_CASE("theta_nsp is zero and exact on a trivial kernel") {
    const Dictionary d = Dictionary::build(Matrix::identity(5), false);
    const ThetaNsp t = theta_nsp(d, 2, 0, 0, 1.0);
    CHECK(t.value == 0.0);
    CHECK(t.exact);
}

TEST_CASE("theta_nsp rejects spark at or below k + b") {
    const GeneratorResult gen = generate_equiangular(2, 0, 0);  // spark 4
    CHECK_THROWS_AS(theta_nsp(gen.dict, 2, 0, 2, 1.0), SparkTooSmall);
}

TEST_CASE("theta_nsp lower-bounds multi-dimensional kernels") {
    // 4x6 dictionary: kernel dimension 2
    const Dictionary d = random_dictionary(4, 6, 37);
    REQUIRE(kernel_basis(d.atoms()).cols() == 2);
    const ThetaNsp t = theta_nsp(d, 2, 0, 0, 1.0);
    CHECK(!t.exact);
    // each kernel basis vector certifies a floor under the sampled maximum
    const Matrix kb = kernel_basis(d.atoms());
    for (int j = 0; j < kb.cols(); ++j) {
        Vector mag = kb.column(j);
        for (double& v : mag) v = std::fabs(v);
        std::sort(mag.begin(), mag.end(), std::greater<double>());
        double num = mag[0] + mag[1], den = 0.0;
        for (size_t i = 2; i < mag.size(); ++i) den += mag[i];
        CHECK(t.value >= num / den - 1e-9);
    }
}

TEST_CASE("ric basics and construction values") {
    const Dictionary id = Dictionary::build(Matrix::identity(5), false);
    CHECK(ric(id, 3) == doctest::Approx(0.0));

    const int k = 3, g = 1;
    const double alpha = 0.6, mu = alpha / (2 * k - g - 1);
    const GeneratorResult e2 = generate_example2(k, g, alpha);
    CHECK(ric(e2.dict, k + 1) == doctest::Approx(k * mu).epsilon(1e-9));

    const GeneratorResult l1 = generate_lemma1(4, 1, 1);
    CHECK(ric(l1.dict, 6) == doctest::Approx(1.0 / std::sqrt(3.0)).epsilon(1e-9));
}

TEST_CASE("prip at l = 0 reduces to the asymmetric RIC") {
    const Dictionary id = Dictionary::build(Matrix::identity(5), false);
    const PripConstants c = prip(id, 2, 0);
    CHECK(c.delta_low == doctest::Approx(0.0));
    CHECK(c.delta_up == doctest::Approx(0.0));
}

TEST_CASE("prip matches a per-pair explicit-projection oracle") {
    const Dictionary d = random_dictionary(6, 8, 4242);
    const int q = 2, l = 1;
    const PripConstants got = prip(d, q, l);

    double ref_up = -1.0, ref_low = -1.0;
    std::vector<int> all(d.size());
    std::iota(all.begin(), all.end(), 0);
    for_each_subset(all, l, [&](const std::vector<int>& qv) {
        const SupportSet q_set(qv);
        for_each_subset(q_set.complement(d.size()).indices(), q, [&](const std::vector<int>& qp) {
            std::vector<Vector> cols;
            for (int i : qp) cols.push_back(oracle::projected_atom(d, q_set, i));
            const Vector eig = symmetric_eig(gram_matrix(Matrix::from_columns(d.dim(), cols))).values;
            ref_up = std::max(ref_up, eig.front() - 1.0);
            ref_low = std::max(ref_low, 1.0 - eig.back());
            return true;
        });
        return true;
    });
    CHECK(got.delta_up == doctest::Approx(ref_up).epsilon(1e-9));
    CHECK(got.delta_low == doctest::Approx(ref_low).epsilon(1e-9));
}

TEST_CASE("prip constants sit below the Lemma-4 coherence values") {
    const Dictionary d = random_dictionary(7, 7, 808, "jittered_identity");
    const double mu = mutual_coherence(d);
    for (int l : {1, 2}) {
        if (!(mu < 1.0 / std::max(1, l - 1))) continue;
        for (int q : {2, 3}) {
            const PripConstants c = prip(d, q, l);
            const ConditionReport lemma4 = analytic_bound(
                "lemma4_values", {.mu = mu, .q = q, .l = l});
            CHECK(c.delta_up <= lemma4.aux.at("delta_up") + 1e-9);
            CHECK(c.delta_low <= lemma4.value + 1e-9);
        }
    }
}

TEST_CASE("projected coherence: l = 0 equals mutual coherence, orthonormal is zero") {
    const Dictionary d = random_dictionary(6, 8, 99);
    CHECK(projected_coherence(d, 0, Variant::ols) == doctest::Approx(mutual_coherence(d)).epsilon(1e-9));
    CHECK(projected_coherence(d, 0, Variant::omp) == doctest::Approx(mutual_coherence(d)).epsilon(1e-9));
    const Dictionary id = Dictionary::build(Matrix::identity(5), false);
    CHECK(projected_coherence(id, 2, Variant::ols) == doctest::Approx(0.0));
}

TEST_CASE("projected OLS coherence obeys the Lemma-5 bound") {
    const Dictionary d = random_dictionary(7, 7, 606, "jittered_identity");
    const double mu = mutual_coherence(d);
    for (int l : {1, 2}) {
        if (!(mu < 1.0 / l)) continue;
        CHECK(projected_coherence(d, l, Variant::ols) <= mu / (1.0 - l * mu) + 1e-9);
    }
}

TEST_CASE("projected OMP coherence obeys the Lemma-10 bound and Lemma-11 operator bound") {
    const Dictionary d = random_dictionary(7, 7, 909, "jittered_identity");
    for (int l : {1, 2}) {
        const PripConstants c = prip(d, 2, l);
        const double mu_omp = projected_coherence(d, l, Variant::omp);
        CHECK(mu_omp <= (c.delta_up + c.delta_low) / 2.0 + 1e-9);

        // ‖Ã_{Q'}ᵀ Ã_{Q''} u‖ ≤ μ_l √(|Q'||Q''|) ‖u‖ on random u
        Rng rng(1000 + l);
        const SupportSet q_set = SupportSet::range(0, l);
        const ProjectedDictionary proj = projected_dictionary(d, q_set);
        const SupportSet qp({l, l + 1});
        const SupportSet qpp({l + 2, l + 3, l + 4});
        const Matrix ap = proj.a_tilde.columns(qp.indices());
        const Matrix app = proj.a_tilde.columns(qpp.indices());
        for (int trial = 0; trial < 25; ++trial) {
            Vector u(qpp.size());
            for (double& x : u) x = rng.normal();
            const Vector prod = matvec_transposed(ap, matvec(app, u));
            CHECK(norm(prod) <= mu_omp * std::sqrt(double(qp.size()) * qpp.size()) * norm(u) + 1e-9);
        }
    }
}

TEST_CASE("proposition-1 chain bounds the partial ERC by the coherence ratio") {
    for (int seed : {1, 2, 3}) {
        const Dictionary d = random_dictionary(7, 7, 7000 + seed, "jittered_identity");
        const double mu = mutual_coherence(d);
        const int k = 2, g = 1, b = 1;
        if (!(mu < 1.0 / (k + b - 1))) continue;
        const ConditionReport bound = analytic_bound("prop1_bound", {.mu = mu, .k = k, .g = g, .b = b});
        std::vector<int> all(d.size());
        std::iota(all.begin(), all.end(), 0);
        for_each_subset(all, k, [&](const std::vector<int>& qs) {
            const SupportSet q_star(qs);
            for_each_subset(qs, g, [&](const std::vector<int>& good) {
                for_each_subset(q_star.complement(d.size()).indices(), b, [&](const std::vector<int>& bad) {
                    std::vector<int> qv = good;
                    qv.insert(qv.end(), bad.begin(), bad.end());
                    CHECK(partial_erc(d, q_star, SupportSet(qv), Variant::omp) <= bound.value + 1e-9);
                    return true;
                });
                return true;
            });
            return true;
        });
    }
}

TEST_CASE("lemma-3 chain bounds the partial ERC by P-RIP constants") {
    const Dictionary d = random_dictionary(7, 7, 4040, "jittered_identity");
    const int k = 3, g = 1, b = 0;
    const PripConstants c2 = prip(d, 2, g + b);
    const PripConstants ckg = prip(d, k - g, g + b);
    if (ckg.delta_low < 1.0) {
        const ConditionReport bound = analytic_bound(
            "lemma3_bound",
            {.delta_bar2 = c2.delta_up, .delta_2 = c2.delta_low, .delta_kg = ckg.delta_low, .k = k, .g = g});
        std::vector<int> all(d.size());
        std::iota(all.begin(), all.end(), 0);
        for_each_subset(all, k, [&](const std::vector<int>& qs) {
            const SupportSet q_star(qs);
            for_each_subset(qs, g, [&](const std::vector<int>& good) {
                CHECK(partial_erc(d, q_star, SupportSet(good), Variant::omp) <= bound.value + 1e-9);
                return true;
            });
            return true;
        });
    }
}

TEST_CASE("theorem-6 nesting and theorem-7 comparison on one-dimensional kernels") {
    const std::vector<double> ps{0.0, 0.25, 0.5, 0.75, 1.0};
    for (int seed : {11, 12}) {
        const Dictionary d = random_dictionary(6, 7, seed);
        for (auto [k, g, b] : std::vector<std::tuple<int, int, int>>{{2, 0, 0}, {2, 1, 1}, {3, 1, 0}}) {
            if (!spark(d.atoms()).exceeds(k + b)) continue;
            double prev = -1.0;
            for (double p : ps) {
                const ThetaNsp t = theta_nsp(d, k, g, b, p);
                CHECK(t.exact);
                CHECK(t.value >= prev - 1e-9);
                prev = t.value;
            }
            CHECK(prev <= theta_oxx(d, k, g, b, Variant::omp) + 1e-9);  // θ₁ ≤ θ_OMP
        }
    }
}

TEST_CASE("lemma-7 instance inequality holds for every admissible pair") {
    const Dictionary d = random_dictionary(5, 6, 21);
    const Matrix kb = kernel_basis(d.atoms());
    REQUIRE(kb.cols() == 1);
    const Vector v = kb.column(0);
    const int k = 2, g = 1, b = 0;
    std::vector<int> all(d.size());
    std::iota(all.begin(), all.end(), 0);
    for_each_subset(all, k, [&](const std::vector<int>& qs) {
        const SupportSet q_star(qs);
        for_each_subset(qs, g, [&](const std::vector<int>& good) {
            const SupportSet q(good);
            double num = 0.0, den = 0.0;
            for (int i = 0; i < d.size(); ++i) {
                if (q_star.contains(i) && !q.contains(i)) num += std::fabs(v[i]);
                if (!q_star.contains(i) && !q.contains(i)) den += std::fabs(v[i]);
            }
            CHECK(num / den <= partial_erc(d, q_star, q, Variant::omp) + 1e-9);
            return true;
        });
        return true;
    });
}

TEST_CASE("analytic bounds: direct formula arithmetic") {
    const ConditionReport main = analytic_bound("coherence_main", {.mu = 0.1, .k = 3, .g = 1, .b = 1});
    CHECK(main.threshold == doctest::Approx(1.0 / 5.0));
    CHECK(main.satisfied);

    const ConditionReport prop1 = analytic_bound("prop1_bound", {.mu = 0.1, .k = 3, .g = 1, .b = 0});
    CHECK(prop1.value == doctest::Approx(0.25).epsilon(1e-12));

    // δ = 1/√(k−g) from the lemma-1 construction never satisfies the informed RIC bound
    for (int k : {3, 4})
        for (int g = 0; g < k - 1; ++g) {
            const double delta = 1.0 / std::sqrt(double(k - g));
            const ConditionReport rep = analytic_bound("ric_omp_informed", {.delta = delta, .k = k, .g = g, .b = 1});
            CHECK(!rep.satisfied);
        }
}

TEST_CASE("analytic bounds: boundary verdicts and domains") {
    // exact threshold hit is not satisfied under strict comparison
    const ConditionReport rep = analytic_bound("coherence_main", {.mu = 0.2, .k = 3, .g = 1, .b = 1});
    CHECK(rep.threshold == doctest::Approx(0.2));
    CHECK(!rep.satisfied);

    CHECK_THROWS_AS(analytic_bound("prop1_bound", {.mu = 0.9, .k = 3, .g = 0, .b = 0}), OutOfDomain);
    CHECK_THROWS_AS(analytic_bound("lemma5_bound", {.mu = 0.6, .l = 2}), OutOfDomain);
    CHECK_THROWS_AS(analytic_bound("nonsense", {}), InvalidParams);

    const ConditionReport classic = analytic_bound("ric_omp_classic", {.delta = 0.4, .k = 3});
    CHECK(classic.threshold == doctest::Approx(0.5));
    CHECK(!classic.note.empty());  // records the displayed-vs-discussed discrepancy

    const ConditionReport sp = analytic_bound("spark_ols_kminus1", {.k = 2, .b = 1, .spark = 6});
    CHECK(sp.satisfied);  // 4 < 6
}

TEST_CASE("ric and prip guard oversized enumerations") {
    const Dictionary d = random_dictionary(30, 40, 5, "gaussian");
    CHECK_THROWS_AS(ric(d, 10), TooLarge);
    CHECK_THROWS_AS(prip(d, 4, 4), TooLarge);
    CHECK_THROWS_AS(projected_coherence(d, 5, Variant::omp), TooLarge);
}

TEST_CASE("theta_nsp samples kernels above dimension two as a certified floor") {
    const Dictionary d = random_dictionary(3, 6, 777);
    const Matrix kb = kernel_basis(d.atoms());
    REQUIRE(kb.cols() == 3);
    REQUIRE(spark(d.atoms()).exceeds(2));
    const ThetaNsp t = theta_nsp(d, 2, 0, 0, 1.0);
    CHECK(!t.exact);
    for (int j = 0; j < kb.cols(); ++j) {
        Vector mag = kb.column(j);
        for (double& v : mag) v = std::fabs(v);
        std::sort(mag.begin(), mag.end(), std::greater<double>());
        double num = mag[0] + mag[1], den = 0.0;
        for (size_t i = 2; i < mag.size(); ++i) den += mag[i];
        CHECK(t.value >= num / den - 1e-9);
    }
}

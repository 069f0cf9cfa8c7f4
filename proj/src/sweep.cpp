#include <atomic>
#include <sstream>
#include <thread>

#include "sparsecert/csv.hpp"
#include "sparsecert/rng.hpp"
#include "sparsecert/scenario.hpp"

namespace sparsecert {

namespace {

struct Cell {
    int k, g, b;
};

Vector coefficients(Rng& rng, int k) {
    Vector c(k);
    for (double& v : c) v = rng.coefficient();
    return c;
}

std::string rate_string(int hits, int total) {
    return format_double(total == 0 ? 0.0 : double(hits) / total);
}

std::string sweep_row(const SweepSpec& spec, const Cell& cell, const Tolerances& tol) {
    const int k = cell.k, g = cell.g, b = cell.b;
    const int n = 2 * k - g + b;

    // canonical informed layout: Q = first g+b atoms (g good), Q* adds the
    // next k−g atoms; the generators carry their own canonical supports
    std::vector<int> qsv;
    for (int i = 0; i < g; ++i) qsv.push_back(i);
    for (int i = g + b; i < k + b; ++i) qsv.push_back(i);
    SupportSet q_star(qsv);
    SupportSet q = SupportSet::range(0, g + b);

    Dictionary dict = [&] {
        if (spec.construction == "equiangular" || spec.construction == "lemma1") {
            const GeneratorResult gen =
                spec.construction == "equiangular" ? generate_equiangular(k, g, b) : generate_lemma1(k, g, b);
            q = gen.meta.canonical_q;
            q_star = gen.meta.canonical_q_star;
            return gen.dict;
        }
        if (spec.construction == "identity") return Dictionary::build(Matrix::identity(n), false);
        if (spec.construction == "random")
            return random_dictionary(n - 1, n, spec.seed * 1000003ULL + k * 10007 + g * 101 + b, "gaussian");
        throw InvalidParams("unknown sweep construction: " + spec.construction);
    }();

    std::ostringstream row;
    row << spec.construction << "," << k << "," << g << "," << b << "," << dict.dim() << "," << dict.size();
    row << "," << format_double(mutual_coherence(dict));
    row << "," << format_double(1.0 / (2 * k - g + b - 1));
    const Spark sp = spark(dict.atoms(), tol);
    row << "," << sp.comparison_value(dict.size());
    row << "," << kernel_basis(dict.atoms(), tol).cols();

    for (double p : {0.0, 0.5, 1.0}) {
        try {
            const ThetaNsp t = theta_nsp(dict, k, g, b, p, tol);
            row << "," << format_double(t.value) << (t.exact ? "" : "~");
        } catch (const Error&) {
            row << ",na";
        }
    }
    for (Variant v : {Variant::omp, Variant::ols}) {
        try {
            row << "," << format_double(theta_oxx(dict, k, g, b, v, tol));
        } catch (const Error&) {
            row << ",na";
        }
    }

    // greedy success rates over seeded draws, canonical layout
    for (Variant variant : {Variant::omp, Variant::ols}) {
        for (TiePolicy policy : {TiePolicy::adversarial, TiePolicy::lexicographic}) {
            int hits = 0, total = 0;
            Rng rng(spec.seed * 67 + k * 31 + g * 7 + b + (variant == Variant::omp ? 0 : 1000) +
                    (policy == TiePolicy::adversarial ? 0 : 500));
            for (int draw = 0; draw < spec.draws; ++draw) {
                const Vector coef = coefficients(rng, q_star.size());
                Vector y(dict.dim(), 0.0);
                for (int j = 0; j < q_star.size(); ++j) {
                    const Vector a = dict.atom(q_star[j]);
                    for (int r = 0; r < dict.dim(); ++r) y[r] += coef[j] * a[r];
                }
                GreedyConfig cfg;
                cfg.variant = variant;
                cfg.tie_policy = policy;
                cfg.tie_tol = tol.tie_tol;
                cfg.max_iterations = k - g;
                ++total;
                try {
                    if (success(run(dict, y, q, cfg, q_star, tol), q_star, q)) ++hits;
                } catch (const Error&) {
                }
            }
            row << "," << rate_string(hits, total);
        }
    }
    row << "\n";
    return row.str();
}

}  // namespace

std::string sweep_csv(const SweepSpec& spec, const Tolerances& tol) {
    std::vector<Cell> cells;
    for (int k : spec.ks)
        for (int g : spec.gs)
            for (int b : spec.bs)
                if (g < k && k >= 1 && g >= 0 && b >= 0) cells.push_back({k, g, b});

    std::vector<std::string> rows(cells.size());
    const int jobs = std::max(1, spec.jobs);
    if (jobs == 1 || cells.size() < 2) {
        for (size_t i = 0; i < cells.size(); ++i) rows[i] = sweep_row(spec, cells[i], tol);
    } else {
        std::vector<std::thread> workers;
        std::atomic<size_t> next{0};
        for (int w = 0; w < jobs; ++w)
            workers.emplace_back([&] {
                for (size_t i = next.fetch_add(1); i < cells.size(); i = next.fetch_add(1))
                    rows[i] = sweep_row(spec, cells[i], tol);
            });
        for (auto& t : workers) t.join();
    }

    std::ostringstream out;
    out << "construction,k,g,b,m,n,mu,mu_threshold,spark,kernel_dim,theta_p0,theta_p05,theta_p1,"
           "theta_omp,theta_ols,omp_adversarial_rate,omp_lex_rate,ols_adversarial_rate,ols_lex_rate\n";
    for (const std::string& r : rows) out << r;
    return out.str();
}

}  // namespace sparsecert

#ifndef SPARSECERT_DICTIONARY_HPP
#define SPARSECERT_DICTIONARY_HPP

#include <map>
#include <string>

#include "sparsecert/linalg.hpp"
#include "sparsecert/support_set.hpp"
#include "sparsecert/types.hpp"

namespace sparsecert {

/// Unit-norm column dictionary with an eagerly cached Gram matrix. Immutable
/// after construction.
class Dictionary {
  public:
    /// When `normalize` is set, columns are rescaled to unit norm (zero
    /// columns rejected); otherwise a column norm off by more than 1e-8
    /// raises NotNormalized.
    static Dictionary build(const Matrix& raw, bool normalize);

    const Matrix& atoms() const { return atoms_; }
    const Matrix& gram() const { return gram_; }
    int dim() const { return atoms_.rows(); }    // m
    int size() const { return atoms_.cols(); }   // n
    Vector atom(int i) const { return atoms_.column(i); }

  private:
    Dictionary(Matrix atoms, Matrix gram) : atoms_(std::move(atoms)), gram_(std::move(gram)) {}
    Matrix atoms_;
    Matrix gram_;
};

double mutual_coherence(const Dictionary& d);

/// Ã and B̃ relative to a subset Q: ã_i = P⊥_Q a_i (zero for i in Q) and
/// b̃_i = ã_i/‖ã_i‖ when nonzero, the zero vector otherwise.
struct ProjectedDictionary {
    SupportSet q_set;
    Matrix a_tilde;
    Matrix b_tilde;
};

ProjectedDictionary projected_dictionary(const Dictionary& d, const SupportSet& q, const Tolerances& tol = {});

/// Eigenvalues of (A_S)ᵀA_S in descending order, read off the cached Gram.
Vector gram_submatrix_eigen(const Dictionary& d, const SupportSet& s);

// ---------------------------------------------------------------------------
// Adversarial constructions
// ---------------------------------------------------------------------------

struct GeneratorMetadata {
    std::string construction;
    std::map<std::string, double> params;
    double mu = 0.0;
    SupportSet canonical_q;
    SupportSet canonical_q_star;
};

struct GeneratorResult {
    Dictionary dict;
    GeneratorMetadata meta;
};

/// (2k−g+b−1)×(2k−g+b) dictionary whose Gram has unit diagonal and
/// −1/(2k−g+b−1) everywhere else; the kernel is spanned by the all-ones
/// vector and spark equals 2k−g+b.
GeneratorResult generate_equiangular(int k, int g, int b);

/// (n−1)×n dictionary with a one-dimensional kernel along (γ,…,γ,1,1);
/// requires |γ| < 1/(n−2).
GeneratorResult generate_example1(int n, double gamma);

/// Block dictionary [I, 0; 0, M] of size (k+b+1) whose Gram spectrum is
/// {1 (×k+b−1), 1 ± 1/√(k−g)}; the g = k−1 case degenerates to two
/// identical columns.
GeneratorResult generate_lemma1(int k, int g, int b);

/// (k+1)×(k+1) dictionary with constant off-diagonal Gram −μ where
/// μ = α/(2k−g−1); α in (0,1).
GeneratorResult generate_example2(int k, int g, double alpha);

/// (k+1)×(k+1) dictionary [a₁ a₂ H] with ⟨a₁,a₂⟩ = μ and H an orthonormal
/// complement of span(a₁,a₂).
GeneratorResult generate_example3(int k, double mu);

/// Dispatch by construction name ("equiangular", "example1", "lemma1",
/// "example2", "example3") with named parameters.
GeneratorResult generate(const std::string& construction, const std::map<std::string, double>& params);

/// Seeded random dictionary with unit-norm columns. kind "gaussian" draws
/// i.i.d. normal entries; kind "jittered_identity" perturbs I_n and keeps
/// the coherence small.
Dictionary random_dictionary(int m, int n, std::uint64_t seed, const std::string& kind = "gaussian");

}  // namespace sparsecert

#endif

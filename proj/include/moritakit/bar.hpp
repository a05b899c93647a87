#pragma once

#include <random>
#include <string>
#include <vector>

#include "moritakit/algebra.hpp"
#include "moritakit/fincat.hpp"
#include "moritakit/simpset.hpp"
#include "moritakit/theory.hpp"

namespace moritakit {

/// A functor C → FinSet: value[x] elements, action[f] a table value[dom f] → value[cod f].
struct CModule {
  CatPtr base;
  std::vector<int> value;
  std::vector<std::vector<int>> action;
};

/// A functor C^op → FinSet: action[f] is a table value[cod f] → value[dom f].
struct CComodule {
  CatPtr base;
  std::vector<int> value;
  std::vector<std::vector<int>> action;
};

/// Throws Malformed when identities or composites are not respected.
void validate_module(const CModule& x);
void validate_comodule(const CComodule& y);

/// h_c = C(c, −); elements are listed in the order of C.hom(c, x).
CModule representable_module(const CatPtr& c, int object);
/// The constant one-point module.
CModule point_module(const CatPtr& c);
CComodule point_comodule(const CatPtr& c);
/// D(f(−), d); elements are listed in the order of D.hom(f x, d).
CComodule hom_into(const Functor& f, int d);

/// B(X, C, Y) truncated at level n_max. The data are discrete, so the
/// vertical direction is constant and this simplicial set is also the diagonal.
/// Simplices are written "x;chain;y" with the chain id of the nerve.
TruncSSet bar_construction(const CModule& x, const CComodule& y, int n_max);

/// f̃_!(X)(d) = diagonal of B(X, C, D(f(−), d)).
TruncSSet ho_kan_extension(const Functor& f, const CModule& x, int d, int n_max);

/// f_!(X)(d) = ∫^c X(c) × D(f c, d) as the classes of (c, x, g); returns the
/// class of every pair in a fixed order together with the number of classes.
struct CoendClasses {
  std::vector<int> object, element, arrow, label;
  int count = 0;
};
CoendClasses kan_colim_oracle(const Functor& f, const CModule& x, int d);

/// Builds the map π₀(f̃_!(X)(d)) → f_!(X)(d) and checks it is a bijection;
/// throws OracleDisagreement otherwise. Returns the common size.
int compare_pi0(const Functor& f, const CModule& x, int d, int n_max);

/// Components of a truncated simplicial set, from levels 0 and 1.
std::vector<int> component_labels(const TruncSSet& s, int& count);

/// Map B(X, C, Y) → B(X', C, Y') induced by natural transformations X → X'
/// and Y → Y', given per object as tables.
SimpMap bar_map(const std::vector<std::vector<int>>& eta_x, const std::vector<std::vector<int>>& eta_y,
                const SSetPtr& source, const SSetPtr& target, const CModule& x, const CComodule& y);

// ---- sequence operators

/// The empty word stands for the unit ∗.
struct SeqOperators {
  std::vector<Word> star, bar_after, bar_before;  // u^{⋆j}, u^{|j}, u^{j|}
};
SeqOperators seq_operators(const std::vector<Word>& u, int j);

// ---- the J and K homotopies

struct JKConfig {
  OperadMap f;              // induces the map of theories 𝕋(O) → 𝕋(P)
  FiniteAlgebra algebra;    // an O-algebra, read as a weak model of 𝕋(O)
  Word a, b;                // words of P
  int levels = 2;           // simplices of level ≤ levels are tested
  int word_bound = 4;       // every word produced must have length ≤ word_bound
  bool corrupt_psi = false;
  std::mt19937_64* rng = nullptr;  // random representatives inside 𝕋
};

struct JKReport {
  size_t single_cells = 0, pair_cells = 0, checks = 0;
  bool psi_simplicial = false, sigma_simplicial = false, phi_simplicial = false, delta_simplicial = false;
  bool j_homotopy = false, k_homotopy = false, delta_pi0_bijective = false;
  size_t pi0_source = 0, pi0_target = 0;
  std::string failure;  // first failing identity with its witness
  bool ok() const {
    return psi_simplicial && sigma_simplicial && phi_simplicial && delta_simplicial && j_homotopy && k_homotopy && delta_pi0_bijective;
  }
};

/// Materializes B̄f(X)(āb̄), the paired construction and B̄f(X)(ā) × B̄f(X)(b̄)
/// on words of length ≤ word_bound/2, and checks ψ, σ, φ, δ and the homotopies
/// J: id ≃ σψ and K: ψσ ≃ id. Throws BoundTooSmall when a formula leaves the bounds.
JKReport verify_homotopy_jk(const JKConfig& config);

}  // namespace moritakit

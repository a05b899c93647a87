#pragma once

#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "moritakit/algebra.hpp"
#include "moritakit/operad.hpp"

namespace moritakit {

/// A finite sequence of colours (indices into the operad); may be empty.
using Word = std::vector<int>;

/// Monotone maps f with b_i = c_{f(i)}, in lexicographic order.
std::vector<std::vector<int>> ordered_colour_maps(const Word& b, const Word& c);
/// Σ_f: permutations σ of the domain with f∘σ = f, in lexicographic order.
std::vector<Perm> fiber_stabilizer(const std::vector<int>& f);

/// Element [f, b̄, o] of 𝕋(O)(c̄; d): the term o(x_f(1), ..., x_f(m)).
/// b̄ is recovered as c̄∘f. Stored in canonical form: o is least in its Σ_f orbit.
struct TheoryClass {
  std::vector<int> map;
  int op = -1;

  bool operator==(const TheoryClass& o) const { return op == o.op && map == o.map; }
  bool operator<(const TheoryClass& o) const { return map != o.map ? map < o.map : op < o.op; }
};

TheoryClass canonical_class(const SymOperad& o, const std::vector<int>& map, int op);
/// Same as canonical_class but accepts any index map and reorders it first.
TheoryClass class_of_term(const SymOperad& o, const std::vector<int>& map, int op);

/// 𝕋(O)(c̄; d) in canonical order. With oracle set, the same set is also
/// computed as the colimit over all colour maps and a bijection is asserted
/// (OracleDisagreement otherwise).
std::vector<TheoryClass> clone_hom(const SymOperad& o, const Word& c, int d, bool oracle = false);
/// Number of components of the comma-category colimit; independent of clone_hom.
size_t comma_colimit_size(const SymOperad& o, const Word& c, int d);

struct TheoryArrow {
  Word source, target;
  std::vector<TheoryClass> components;

  bool operator==(const TheoryArrow& o) const { return source == o.source && target == o.target && components == o.components; }
  bool operator<(const TheoryArrow& o) const;
};

/// 𝕋(O)(c̄, d̄) as the product of clone_hom per entry of d̄.
std::vector<TheoryArrow> theory_hom(const SymOperad& o, const Word& c, const Word& d);
size_t theory_hom_size(const SymOperad& o, const Word& c, const Word& d);

TheoryArrow identity_arrow(const SymOperad& o, const Word& c);
/// uv → u (which = 0) or uv → v (which = 1).
TheoryArrow projection_arrow(const SymOperad& o, const Word& u, const Word& v, int which);
/// u → uu
TheoryArrow diagonal_arrow(const SymOperad& o, const Word& u);
/// α×β: uv → u'v'
TheoryArrow product_arrow(const TheoryArrow& a, const TheoryArrow& b);

/// h∘g by substitution. With rng set, random representatives of the classes
/// of h are used; the result does not depend on that choice.
TheoryArrow compose_theory(const SymOperad& o, const TheoryArrow& h, const TheoryArrow& g, std::mt19937_64* rng = nullptr);

/// 𝕋(f) applied to an arrow of 𝕋(O).
TheoryArrow induced_theory_map(const OperadMap& f, const TheoryArrow& a);
Word map_word(const OperadMap& f, const Word& w);
/// Whether 𝕋(f): 𝕋(O)(c̄; d) → 𝕋(P)(f c̄; f d) is a bijection.
bool induced_bijective(const OperadMap& f, const Word& c, int d);

/// Pair (r, i) with r: d̄ → c, i: c → d̄ and r∘i = id, least by arrow order.
std::optional<std::pair<TheoryArrow, TheoryArrow>> retract_in_theory(const SymOperad& o, int c, const Word& d);

struct TheoryRetract {
  Word word;
  TheoryArrow r, i;
};

/// First retract witness over words of length 1..length_bound in shortlex order.
std::optional<TheoryRetract> is_retract_in_theory(const SymOperad& o, int c, int length_bound);

/// All words over n colours of length ≤ bound in shortlex order.
std::vector<Word> words_up_to(int num_colours, int bound);

/// Discrete word-indexed functor data restricted to the listed words.
struct WordModel {
  std::map<Word, int> size;
  // (w, i) ↦ table of X(w) → X(w_i)
  std::map<std::pair<Word, int>, std::vector<int>> projection;
};

/// X(ā) → X(a_1) × ... × X(a_n) is a bijection for every listed word.
bool is_product_preserving(const WordModel& x);

/// X(w) = A(w_1) × ... × A(w_n) for words up to word_bound.
WordModel algebra_word_model(const SymOperad& o, const FiniteAlgebra& a, int word_bound);
/// X(w) = 𝕋(O)(c̄, w) for words up to word_bound.
WordModel corepresentable_word_model(const SymOperad& o, const Word& c, int word_bound);

std::string word_string(const SymOperad& o, const Word& w);
std::string class_string(const SymOperad& o, const Word& c, const TheoryClass& k);
std::string arrow_string(const SymOperad& o, const TheoryArrow& a);

}  // namespace moritakit

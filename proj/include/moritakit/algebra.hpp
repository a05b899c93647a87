#pragma once

#include <functional>
#include <vector>

#include "moritakit/operad.hpp"

namespace moritakit {

/// An algebra with carriers {0, ..., k-1}. act[o] is indexed by the input
/// tuple in mixed radix with the last input varying fastest.
struct FiniteAlgebra {
  std::vector<int> carrier;            // per colour
  std::vector<std::vector<int>> act;   // per operation
};

size_t tuple_count(const SymOperad& o, const std::vector<int>& carrier, int op);
int apply_op(const SymOperad& o, const FiniteAlgebra& a, int op, const std::vector<int>& args);

/// Throws Malformed naming the first failing identity, equivariance or
/// composition law.
void validate_algebra(const SymOperad& o, const FiniteAlgebra& a);

/// All algebras with the given carrier sizes, in deterministic order.
/// visit returns false to stop.
void enumerate_algebras(const SymOperad& o, const std::vector<int>& carrier,
                        const std::function<bool(const FiniteAlgebra&)>& visit);
std::vector<FiniteAlgebra> all_algebras(const SymOperad& o, const std::vector<int>& carrier);

/// Least relabelling of the algebra over all carrier permutations.
std::vector<int> canonical_form(const SymOperad& o, const FiniteAlgebra& a);

/// Algebras with every carrier of size at most size_bound (size 0 included),
/// or one representative per isomorphism class.
std::vector<FiniteAlgebra> enumerate_algebras_bounded(const SymOperad& o, int size_bound, bool iso_classes);

/// f*(A): carriers and operations read through f.
FiniteAlgebra restrict_algebra(const OperadMap& f, const FiniteAlgebra& a);

struct AlgebraShadow {
  size_t source_classes = 0, target_classes = 0;
  bool injective = false, surjective = false;
  bool bijective() const { return injective && surjective; }
};

/// Restriction along f on isomorphism classes with carriers ≤ size_bound.
AlgebraShadow algebra_shadow(const OperadMap& f, int size_bound);
/// Same, from iso-class representatives listed once per operad.
AlgebraShadow algebra_shadow(const OperadMap& f, const std::vector<FiniteAlgebra>& source_classes,
                             const std::vector<FiniteAlgebra>& target_classes);

}  // namespace moritakit

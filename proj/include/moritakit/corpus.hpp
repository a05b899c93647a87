#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "moritakit/algebra.hpp"
#include "moritakit/bar.hpp"
#include "moritakit/fincat.hpp"
#include "moritakit/operad.hpp"

namespace moritakit {

/// Size limits for generated objects and the number of each kind generated.
struct CorpusBounds {
  int objects = 4;
  int morphisms = 15;
  int colours = 3;
  int operations = 10;
  int word_length = 3;
  int sset_dim = 4;
  int carrier = 3;
  int bar_levels = 2;

  int categories = 100;
  int operads = 40;
  int functors = 200;
  int maps = 100;
};

/// A quiver closed under composition with randomly chosen composites; draws
/// that break associativity or the size limit are discarded and redrawn.
CatPtr random_category(std::mt19937_64& rng, int max_objects, int max_morphisms);

/// An operad of functions between small finite sets generated by a few
/// random functions and closed under substitution and permutation of inputs.
/// Draws whose closure exceeds the limits are redrawn. With `carrier`, the
/// sets themselves are returned as an algebra.
OperadPtr random_operad(std::mt19937_64& rng, int max_colours, int max_ops, FiniteAlgebra* carrier = nullptr);

/// A module assembled from representables and the point, or a random
/// functorial table when one is found quickly.
CModule random_module(std::mt19937_64& rng, const CatPtr& c, int max_size);

CatPtr full_subcategory(const FinCategory& c, const std::vector<int>& objects);
/// F restricted to the full subcategory of its source on the listed objects.
Functor restrict_functor(const Functor& f, const std::vector<int>& objects);
OperadPtr full_suboperad(const SymOperad& o, const std::vector<int>& colours);
/// f restricted to the full suboperad of its source on the listed colours.
OperadMap restrict_operad_map(const OperadMap& f, const std::vector<int>& colours);

struct Corpus {
  std::vector<CatPtr> categories;
  std::vector<Functor> functors;
  std::vector<OperadPtr> operads;
  std::vector<OperadMap> maps;
  // (operad index, algebra) pairs known to be valid
  std::vector<std::pair<size_t, FiniteAlgebra>> algebras;
};

Corpus build_corpus(std::uint64_t seed, const CorpusBounds& bounds);

}  // namespace moritakit

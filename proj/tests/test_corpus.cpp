#include <chrono>

#include "doctest.h"
#include "moritakit/corpus.hpp"
#include "moritakit/error.hpp"
#include "moritakit/io.hpp"

using namespace moritakit;

TEST_CASE("random categories respect the bounds and validate") {
  std::mt19937_64 rng(1);
  for (int k = 0; k < 200; ++k) {
    const CatPtr c = random_category(rng, 4, 15);
    CHECK(c->num_objects() <= 4);
    CHECK(c->num_morphisms() <= 15);
    // rebuilding from the serialized tables runs the full validator
    CHECK_NOTHROW(validate_category(category_from_json(category_to_json(*c))));
  }
}

TEST_CASE("random operads validate together with their carrier algebra") {
  std::mt19937_64 rng(2);
  int nontrivial = 0;
  for (int k = 0; k < 60; ++k) {
    FiniteAlgebra a;
    const OperadPtr o = random_operad(rng, 3, 10, &a);
    CHECK(o->num_colours() <= 3);
    CHECK(o->num_ops() <= 10);
    CHECK(o->max_arity() <= 3);
    CHECK_NOTHROW(validate_operad(operad_from_json(operad_to_json(*o))));
    CHECK_NOTHROW(validate_algebra(*o, a));
    if (o->max_arity() >= 2) ++nontrivial;
  }
  CHECK(nontrivial > 5);
}

TEST_CASE("random modules are functorial") {
  std::mt19937_64 rng(3);
  for (int k = 0; k < 50; ++k) {
    const CatPtr c = random_category(rng, 4, 15);
    CHECK_NOTHROW(validate_module(random_module(rng, c, 2)));
  }
}

TEST_CASE("full subobjects") {
  auto split = standard_category_ptr("Split");
  const CatPtr one = full_subcategory(*split, {split->object("0")});
  CHECK(one->num_morphisms() == 2);
  CHECK_NOTHROW(validate_category(one->to_data()));
  const Functor r = restrict_functor(identity_functor(split), {split->object("1")});
  CHECK_NOTHROW(validate_functor(r));

  auto corolla = standard_operad("Omega(corolla(2))");
  const OperadPtr leaves = full_suboperad(*corolla, {corolla->colour("a"), corolla->colour("b")});
  CHECK(leaves->num_ops() == 2);
  CHECK_NOTHROW(validate_operad(leaves->to_data()));
  CHECK_NOTHROW(validate_operad_map(restrict_operad_map(identity_operad_map(corolla), {corolla->colour("r")})));
}

TEST_CASE("the corpus is reproducible from its seed") {
  CorpusBounds b;
  b.categories = 30;
  b.functors = 40;
  b.operads = 12;
  b.maps = 30;
  const Corpus x = build_corpus(5, b);
  const Corpus y = build_corpus(5, b);
  REQUIRE(x.functors.size() == y.functors.size());
  REQUIRE(x.maps.size() == y.maps.size());
  for (size_t i = 0; i < x.functors.size(); ++i) CHECK(functor_to_json(x.functors[i]) == functor_to_json(y.functors[i]));
  for (size_t i = 0; i < x.maps.size(); ++i) CHECK(operad_map_to_json(x.maps[i]) == operad_map_to_json(y.maps[i]));
  for (const auto& f : x.functors) CHECK_NOTHROW(validate_functor(f));
  for (const auto& f : x.maps) CHECK_NOTHROW(validate_operad_map(f));
  for (const auto& [i, a] : x.algebras) CHECK_NOTHROW(validate_algebra(*x.operads[i], a));
}

TEST_CASE("default corpus") {
  const auto start = std::chrono::steady_clock::now();
  const Corpus k = build_corpus(0, CorpusBounds{});
  MESSAGE(k.categories.size() << " categories, " << k.functors.size() << " functors, " << k.operads.size() << " operads, "
                              << k.maps.size() << " maps, " << k.algebras.size() << " algebras in "
                              << std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count() << " s");
  CHECK(k.categories.size() >= 100);
  CHECK(k.functors.size() >= 200);
  CHECK(k.maps.size() >= 100);
}

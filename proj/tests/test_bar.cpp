#include <chrono>
#include <random>

#include "doctest.h"
#include "moritakit/bar.hpp"
#include "moritakit/error.hpp"

using namespace moritakit;

namespace {

std::vector<int> sizes(const TruncSSet& s) {
  std::vector<int> out;
  for (int n = 0; n <= s.dim(); ++n) out.push_back(s.size(n));
  return out;
}

Functor identity_on(const std::string& name) { return identity_functor(standard_category_ptr(name)); }

JKConfig b_config(const FiniteAlgebra& a) {
  auto b = standard_operad("B");
  JKConfig cfg{identity_operad_map(b), a, {b->colour("a")}, {b->colour("b")}};
  cfg.levels = 2;
  cfg.word_bound = 4;
  return cfg;
}

}  // namespace

TEST_CASE("modules and comodules validate") {
  auto split = standard_category_ptr("Split");
  for (int c = 0; c < split->num_objects(); ++c) CHECK_NOTHROW(validate_module(representable_module(split, c)));
  for (int d = 0; d < split->num_objects(); ++d) CHECK_NOTHROW(validate_comodule(hom_into(identity_on("Split"), d)));
  CHECK_NOTHROW(validate_module(point_module(split)));

  CModule bad = representable_module(split, 0);
  bad.action[static_cast<size_t>(split->morphism("ir"))] = {0, 0};
  CHECK_THROWS_AS(validate_module(bad), Error);
}

TEST_CASE("bar construction sizes") {
  const Functor iota = iota_functor();
  const CModule h0 = representable_module(iota.source, 0);
  const TruncSSet b = ho_kan_extension(iota, h0, iota.target->object("1"), 2);
  CHECK(sizes(b) == std::vector<int>{2, 4, 8});
  CHECK_NOTHROW(validate_sset(b));
  CHECK(b.id(0, 0) == "0;0;0");
  CHECK(compare_pi0(iota, h0, iota.target->object("1"), 2) == 1);

  // B(h0, Idem, Idem(−, 0)) has 2 · 2^n · 2 simplices in level n
  const Functor idem = identity_on("Idem");
  const TruncSSet bi = ho_kan_extension(idem, representable_module(idem.source, 0), 0, 3);
  CHECK(sizes(bi) == std::vector<int>{4, 8, 16, 32});
  CHECK_NOTHROW(validate_sset(bi));

  const Functor split = identity_on("Split");
  const TruncSSet bs = ho_kan_extension(split, representable_module(split.source, 0), split.source->object("1"), 2);
  CHECK(bs.size(0) == 3);
  CHECK_NOTHROW(validate_sset(bs));
}

TEST_CASE("pi0 of the bar construction is the coend") {
  auto i = standard_category_ptr("I");
  auto t = standard_category_ptr("terminal");
  const Functor f = constant_functor(i, t, 0);
  const CModule h0 = representable_module(i, 0);
  CHECK(kan_colim_oracle(f, h0, 0).count == 1);
  CHECK(compare_pi0(f, h0, 0, 1) == 1);

  // the point module over P has colimit 1, over the discrete two-object category 2
  auto p = standard_category_ptr("P");
  CHECK(compare_pi0(constant_functor(p, t, 0), point_module(p), 0, 1) == 1);

  for (const std::string name : {"Idem", "Split", "I", "P", "J", "linear(3)"}) {
    const Functor id = identity_on(name);
    for (int c = 0; c < id.source->num_objects(); ++c)
      for (int d = 0; d < id.source->num_objects(); ++d) {
        // h_c ⊗ C(−, d) = C(c, d)
        const int expected = static_cast<int>(id.source->hom(c, d).size());
        CHECK(compare_pi0(id, representable_module(id.source, c), d, 1) == expected);
      }
  }
  CHECK(compare_pi0(iota_functor(), point_module(iota_functor().source), 0, 1) == 1);
}

TEST_CASE("component labels") {
  const Functor id = identity_on("P");
  const TruncSSet b = bar_construction(point_module(id.source), point_comodule(id.source), 1);
  int count = 0;
  const auto labels = component_labels(b, count);
  CHECK(count == 1);
  CHECK(labels.size() == 2);
}

TEST_CASE("bar_map is simplicial and functorial") {
  auto idem = standard_category_ptr("Idem");
  const CModule h0 = representable_module(idem, 0);
  const CModule pt = point_module(idem);
  const CComodule y = hom_into(identity_functor(idem), 0);
  auto bh = std::make_shared<const TruncSSet>(bar_construction(h0, y, 2));
  auto bp = std::make_shared<const TruncSSet>(bar_construction(pt, y, 2));
  const SimpMap m = bar_map({{0, 0}}, {{0, 1}}, bh, bp, h0, y);
  CHECK_NOTHROW(validate_simp_map(m));
  CHECK(maps_equal(bar_map({{0, 1}}, {{0, 1}}, bh, bh, h0, y), identity_map(bh)));
  // (−)∘e: h0 → h0; hom(0, 0) is listed as (e, id0)
  const SimpMap e = bar_map({{0, 0}}, {{0, 1}}, bh, bh, h0, y);
  CHECK_NOTHROW(validate_simp_map(e));
  CHECK(maps_equal(compose_maps(m, e), m));
  // Idem(−, 0) → point on the comodule side
  auto bq = std::make_shared<const TruncSSet>(bar_construction(h0, point_comodule(idem), 2));
  const SimpMap q = bar_map({{0, 1}}, {{0, 0}}, bh, bq, h0, y);
  CHECK_NOTHROW(validate_simp_map(q));
}

TEST_CASE("sequence operators") {
  const std::vector<Word> u{{0}, {1}};
  SeqOperators s = seq_operators(u, 0);
  CHECK(s.star == std::vector<Word>{{0}, {0}, {1}});
  CHECK(s.bar_after == std::vector<Word>{{0}, {}, {}});
  CHECK(s.bar_before == std::vector<Word>{{}, {0}, {1}});
  s = seq_operators(u, 1);
  CHECK(s.star == std::vector<Word>{{0}, {1}, {1}});
  CHECK(s.bar_after == std::vector<Word>{{0}, {1}, {}});
  CHECK(s.bar_before == std::vector<Word>{{}, {}, {1}});
  CHECK_THROWS_AS(seq_operators(u, 2), Error);
  CHECK_THROWS_AS(seq_operators(u, -1), Error);
  CHECK_THROWS_AS(seq_operators({}, 0), Error);
}

TEST_CASE("J and K homotopies") {
  auto b = standard_operad("B");
  const auto algebras = all_algebras(*b, {2, 2});
  REQUIRE(algebras.size() == 8);

  SUBCASE("levels 2, words of length 4") {
    const auto start = std::chrono::steady_clock::now();
    const JKReport r = verify_homotopy_jk(b_config(algebras[5]));
    MESSAGE("J/K on B: " << r.single_cells << " single, " << r.pair_cells << " paired cells, " << r.checks << " checks, "
                         << std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count() << " s");
    CHECK_MESSAGE(r.ok(), r.failure);
    CHECK(r.pi0_source == 4);
    CHECK(r.pi0_target == 4);
  }

  SUBCASE("every algebra of size (2, 2) at level 1") {
    for (const auto& a : algebras) {
      JKConfig cfg = b_config(a);
      cfg.levels = 1;
      const JKReport each = verify_homotopy_jk(cfg);
      CHECK_MESSAGE(each.ok(), each.failure);
    }
  }

  SUBCASE("random representatives") {
    std::mt19937_64 rng(7);
    JKConfig cfg = b_config(algebras[3]);
    cfg.rng = &rng;
    const JKReport each = verify_homotopy_jk(cfg);
    CHECK_MESSAGE(each.ok(), each.failure);
  }

  SUBCASE("corrupted psi is caught") {
    JKConfig cfg = b_config(algebras[5]);
    cfg.levels = 1;
    cfg.corrupt_psi = true;
    const JKReport bad = verify_homotopy_jk(cfg);
    CHECK_FALSE(bad.ok());
    CHECK_FALSE(bad.psi_simplicial);
    CHECK_FALSE(bad.failure.empty());
  }

  SUBCASE("along the Cauchy completion") {
    const OperadCauchy cb = cauchy_completion_operad(b);
    JKConfig cfg = b_config(algebras[5]);
    cfg.f = cb.canonical;
    cfg.a = {cb.canonical.on_colour(b->colour("a"))};
    cfg.b = {cb.canonical.on_colour(b->colour("b"))};
    const JKReport each = verify_homotopy_jk(cfg);
    CHECK_MESSAGE(each.ok(), each.failure);
    CHECK(each.pi0_source == 4);
  }

  SUBCASE("along j!(iota)") {
    const Functor iota = iota_functor();
    auto src = category_to_operad(*iota.source);
    auto dst = category_to_operad(*iota.target);
    const OperadMap f = functor_to_operad_map(iota, src, dst);
    for (const auto& a : all_algebras(*src, {2})) {
      JKConfig cfg{f, a, {dst->colour("0")}, {dst->colour("1")}};
      cfg.levels = 1;
      const JKReport each = verify_homotopy_jk(cfg);
      CHECK_MESSAGE(each.ok(), each.failure);
    }
  }

  SUBCASE("the bound is enforced") {
    JKConfig cfg = b_config(algebras[5]);
    cfg.word_bound = 3;
    CHECK_THROWS_AS(verify_homotopy_jk(cfg), Error);
  }
}

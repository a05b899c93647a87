#include <random>
#include <set>

#include "doctest.h"
#include "moritakit/algebra.hpp"
#include "moritakit/error.hpp"
#include "moritakit/theory.hpp"
#include "moritakit/tree.hpp"

using namespace moritakit;

namespace {

// Interprets a theory arrow as a function on tuples of an algebra.
std::vector<int> evaluate(const SymOperad& o, const FiniteAlgebra& a, const TheoryArrow& h, const std::vector<int>& x) {
  std::vector<int> out;
  for (const auto& k : h.components) {
    std::vector<int> args;
    for (int j : k.map) args.push_back(x[static_cast<size_t>(j)]);
    out.push_back(apply_op(o, a, k.op, args));
  }
  return out;
}

std::vector<std::vector<int>> tuples(const FiniteAlgebra& a, const Word& w) {
  std::vector<std::vector<int>> out{{}};
  for (int c : w) {
    std::vector<std::vector<int>> next;
    for (const auto& t : out)
      for (int v = 0; v < a.carrier[static_cast<size_t>(c)]; ++v) {
        next.push_back(t);
        next.back().push_back(v);
      }
    out = next;
  }
  return out;
}

OperadPtr ternary_operad() {
  // a fully symmetric ternary t: (x,x,x; y) absorbing a unary involution s on x
  OperadData d;
  d.colours = {"x", "y"};
  d.ops = {{"id_x", {"x"}, "x"}, {"id_y", {"y"}, "y"}, {"s", {"x"}, "x"}, {"t", {"x", "x", "x"}, "y"}};
  d.identities = {{"x", "id_x"}, {"y", "id_y"}};
  d.action = {{"t", {1, 0, 2}, "t"}, {"t", {0, 2, 1}, "t"}};
  d.compose = {{"s", {"s"}, "id_x"}};
  for (const char* p : {"id_x", "s"})
    for (const char* q : {"id_x", "s"})
      for (const char* r : {"id_x", "s"})
        if (std::string(p) != "id_x" || std::string(q) != "id_x" || std::string(r) != "id_x") d.compose.push_back({"t", {p, q, r}, "t"});
  return make_operad(d, Check::Full);
}

}  // namespace

TEST_CASE("ordered colour maps and stabilizers") {
  // colours a = 0, b = 1
  auto maps = ordered_colour_maps({0, 0}, {0, 1});
  REQUIRE(maps.size() == 1);
  CHECK(maps[0] == std::vector<int>{0, 0});
  CHECK(fiber_stabilizer(maps[0]).size() == 2);
  maps = ordered_colour_maps({0, 1}, {0, 1});
  REQUIRE(maps.size() == 1);
  CHECK(fiber_stabilizer(maps[0]).size() == 1);
  CHECK(ordered_colour_maps({1, 0}, {0, 1}).empty());
  CHECK(ordered_colour_maps({0, 0, 0}, {0, 0}).size() == 4);
  CHECK(ordered_colour_maps({}, {0, 1}).size() == 1);
}

TEST_CASE("clone homs") {
  auto b = standard_operad("B");
  const int a = b->colour("a"), bb = b->colour("b");
  CHECK(clone_hom(*b, {a}, bb, true).size() == 1);
  CHECK(clone_hom(*b, {a, a}, bb, true).size() == 3);
  CHECK(clone_hom(*b, {a, a, a}, bb, true).size() == 6);
  CHECK(clone_hom(*b, {a, bb, a}, bb, true).size() == 4);
  CHECK(clone_hom(*b, {}, bb, true).empty());
  auto c2 = free_operad_on_tree(standard_tree("corolla(2)"));
  CHECK(clone_hom(*c2, {c2->colour("a")}, c2->colour("r"), true).empty());

  auto t = ternary_operad();
  for (const Word& w : words_up_to(2, 3))
    for (int d = 0; d < 2; ++d) CHECK(clone_hom(*t, w, d, true).size() == comma_colimit_size(*t, w, d));
  // t(x_i, x_j, x_k) up to symmetry: multisets of size 3 from 2 variables
  CHECK(clone_hom(*t, {0, 0}, 1).size() == 4);
  // x1, x2, s x1, s x2
  CHECK(clone_hom(*t, {0, 0}, 0).size() == 4);
}

TEST_CASE("theory homs and composition") {
  auto b = standard_operad("B");
  const int a = b->colour("a"), bb = b->colour("b");
  CHECK(theory_hom(*b, {a, a}, {bb, bb}).size() == 9);
  CHECK(theory_hom(*b, {a, a}, {}).size() == 1);
  auto c2 = free_operad_on_tree(standard_tree("corolla(2)"));
  CHECK(theory_hom(*c2, {c2->colour("a"), c2->colour("b")}, {c2->colour("r")}).size() == 1);

  // diagonal (a) → (a,a) then the class m(x1,x2)
  TheoryArrow diag = diagonal_arrow(*b, {a});
  TheoryArrow m12{{a, a}, {bb}, {canonical_class(*b, {0, 1}, b->op("m"))}};
  TheoryArrow mxx = compose_theory(*b, m12, diag);
  CHECK(mxx.components == clone_hom(*b, {a}, bb));

  auto js = standard_operad("j!(Split)");
  const int c0 = js->colour("0"), c1 = js->colour("1");
  TheoryArrow r{{c0}, {c1}, {{{0}, js->op("r")}}};
  TheoryArrow i{{c1}, {c0}, {{{0}, js->op("i")}}};
  CHECK(compose_theory(*js, i, r).components[0].op == js->op("ir"));
  CHECK(compose_theory(*js, r, i) == identity_arrow(*js, {c1}));

  for (const auto& h : theory_hom(*b, {a, a}, {bb, a})) {
    CHECK(compose_theory(*b, h, identity_arrow(*b, {a, a})) == h);
    CHECK(compose_theory(*b, identity_arrow(*b, {bb, a}), h) == h);
  }
}

TEST_CASE("composition agrees with evaluation and is associative") {
  std::mt19937_64 rng(7);
  auto t = ternary_operad();
  auto b = standard_operad("B");
  for (const auto& o : {t, b}) {
    auto algs = all_algebras(*o, std::vector<int>(static_cast<size_t>(o->num_colours()), 2));
    REQUIRE(!algs.empty());
    auto words = words_up_to(o->num_colours(), 2);
    for (const Word& w1 : words)
      for (const Word& w2 : words) {
        if (theory_hom_size(*o, w1, w2) > 40) continue;
        for (const Word& w3 : words) {
          if (theory_hom_size(*o, w2, w3) > 40) continue;
          auto gs = theory_hom(*o, w1, w2);
          auto hs = theory_hom(*o, w2, w3);
          for (const auto& g : gs)
            for (const auto& h : hs) {
              auto hg = compose_theory(*o, h, g);
              CHECK(compose_theory(*o, h, g, &rng) == hg);
              for (const auto& alg : algs)
                for (const auto& x : tuples(alg, w1)) CHECK(evaluate(*o, alg, hg, x) == evaluate(*o, alg, h, evaluate(*o, alg, g, x)));
            }
          if (gs.empty() || hs.empty()) continue;
          for (const Word& w4 : words) {
            auto ks = theory_hom(*o, w3, w4);
            if (ks.size() > 10) continue;
            for (const auto& k : ks)
              CHECK(compose_theory(*o, k, compose_theory(*o, hs[0], gs.back())) ==
                    compose_theory(*o, compose_theory(*o, k, hs[0]), gs.back()));
          }
        }
      }
  }
}

TEST_CASE("induced theory maps") {
  auto b = standard_operad("B");
  auto id = identity_operad_map(b);
  for (const auto& h : theory_hom(*b, {0, 0}, {1})) CHECK(induced_theory_map(id, h) == h);

  auto c2 = free_operad_on_tree(standard_tree("corolla(2)"));
  const int ca = c2->colour("a"), cb = c2->colour("b"), cr = c2->colour("r");
  OperadMap swap{c2, c2, {}, {}};
  swap.colour_map = {cb, ca, cr};
  for (int o = 0; o < c2->num_ops(); ++o) {
    const std::string& id_str = c2->op_id(o);
    std::string img = id_str;
    if (id_str == "id_a") img = "id_b";
    if (id_str == "id_b") img = "id_a";
    if (id_str == "{r}(a,b)") img = "{r}(b,a)";
    if (id_str == "{r}(b,a)") img = "{r}(a,b)";
    swap.op_map.push_back(c2->op(img));
  }
  validate_operad_map(swap);
  auto arrows = theory_hom(*c2, {ca, cb}, {cr});
  REQUIRE(arrows.size() == 1);
  auto moved = induced_theory_map(swap, arrows[0]);
  CHECK(moved.source == Word{cb, ca});
  CHECK(moved.components == clone_hom(*c2, {cb, ca}, cr));
  CHECK(c2->op_id(moved.components[0].op) == "{r}(b,a)");

  auto cbm = cauchy_completion_operad(b);
  for (const Word& w : words_up_to(2, 3))
    for (int d = 0; d < 2; ++d) CHECK(induced_bijective(cbm.canonical, w, d));

  OperadData sub;
  sub.colours = {"a", "b"};
  sub.ops = {{"id_a", {"a"}, "a"}, {"id_b", {"b"}, "b"}};
  sub.identities = {{"a", "id_a"}, {"b", "id_b"}};
  auto s = make_operad(sub);
  OperadMap inc{s, b, {0, 1}, {b->op("id_a"), b->op("id_b")}};
  CHECK_FALSE(is_fully_faithful_op(inc));
  CHECK_FALSE(induced_bijective(inc, {0, 0}, 1));
  CHECK(induced_bijective(inc, {0}, 0));
}

TEST_CASE("retracts in theories") {
  auto js = standard_operad("j!(Split)");
  auto w = retract_in_theory(*js, js->colour("1"), {js->colour("0")});
  REQUIRE(w.has_value());
  CHECK(js->op_id(w->first.components[0].op) == "r");
  CHECK(js->op_id(w->second.components[0].op) == "i");
  auto b = standard_operad("B");
  CHECK_FALSE(retract_in_theory(*b, b->colour("b"), {b->colour("a"), b->colour("a")}).has_value());
  auto self = retract_in_theory(*b, b->colour("b"), {b->colour("b")});
  REQUIRE(self.has_value());
  CHECK(self->first == identity_arrow(*b, {b->colour("b")}));
  auto found = is_retract_in_theory(*b, b->colour("a"), 3);
  REQUIRE(found.has_value());
  CHECK(found->word == Word{b->colour("a")});
  auto own = is_retract_in_theory(*b, b->colour("b"), 2);
  REQUIRE(own.has_value());
  CHECK(own->word == Word{b->colour("b")});
}

TEST_CASE("product preservation") {
  auto b = standard_operad("B");
  auto alg = all_algebras(*b, {2, 2})[5];
  CHECK(is_product_preserving(algebra_word_model(*b, alg, 2)));
  CHECK(is_product_preserving(corepresentable_word_model(*b, {0}, 2)));
  CHECK(is_product_preserving(corepresentable_word_model(*b, {0, 0}, 2)));

  WordModel bad;
  bad.size = {{{0}, 2}, {{0, 0}, 3}};
  bad.projection[{{0, 0}, 0}] = {0, 1, 1};
  bad.projection[{{0, 0}, 1}] = {0, 0, 1};
  CHECK_FALSE(is_product_preserving(bad));
}

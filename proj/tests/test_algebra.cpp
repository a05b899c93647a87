#include <functional>

#include "doctest.h"
#include "moritakit/algebra.hpp"
#include "moritakit/error.hpp"

using namespace moritakit;

namespace {

// Every table for every non-identity operation, filtered by the validator.
size_t brute_force_count(const SymOperad& o, const std::vector<int>& carrier) {
  FiniteAlgebra a{carrier, {}};
  std::vector<std::pair<int, size_t>> cells;
  for (int op = 0; op < o.num_ops(); ++op) {
    a.act.emplace_back(tuple_count(o, carrier, op), 0);
    for (size_t t = 0; t < a.act.back().size(); ++t) {
      if (o.is_identity(op))
        a.act.back()[t] = static_cast<int>(t);
      else
        cells.push_back({op, t});
    }
  }
  size_t count = 0;
  std::function<void(size_t)> rec = [&](size_t k) {
    if (k == cells.size()) {
      try {
        validate_algebra(o, a);
        ++count;
      } catch (const Error&) {
      }
      return;
    }
    const auto [op, t] = cells[k];
    for (int v = 0; v < carrier[static_cast<size_t>(o.output(op))]; ++v) {
      a.act[static_cast<size_t>(op)][t] = v;
      rec(k + 1);
    }
  };
  rec(0);
  return count;
}

OperadPtr absorbing_operad() {
  OperadData d;
  d.colours = {"a", "b"};
  d.ops = {{"id_a", {"a"}, "a"}, {"id_b", {"b"}, "b"}, {"m", {"a", "a"}, "b"}, {"e", {"a"}, "a"}, {"f", {"b"}, "b"}};
  d.identities = {{"a", "id_a"}, {"b", "id_b"}};
  d.action = {{"m", {1, 0}, "m"}};
  d.compose = {{"e", {"e"}, "e"}, {"f", {"f"}, "f"}, {"m", {"e", "id_a"}, "m"}, {"m", {"id_a", "e"}, "m"},
               {"m", {"e", "e"}, "m"},  {"f", {"m"}, "m"}};
  return make_operad(d);
}

}  // namespace

TEST_CASE("algebra counts") {
  auto b = standard_operad("B");
  CHECK(all_algebras(*b, {2, 2}).size() == 8);
  CHECK(all_algebras(*b, {1, 1}).size() == 1);
  auto idem = standard_operad("j!(Idem)");
  CHECK(all_algebras(*idem, {2}).size() == 3);
  CHECK(all_algebras(*idem, {1}).size() == 1);
  CHECK(all_algebras(*idem, {0}).size() == 1);
  // a binary operation into an empty carrier from a nonempty one is impossible
  CHECK(all_algebras(*b, {1, 0}).empty());
  CHECK(all_algebras(*b, {0, 0}).size() == 1);

  auto absorbing = absorbing_operad();
  for (const auto* o : {b.get(), idem.get(), absorbing.get()}) {
    std::vector<int> sizes(static_cast<size_t>(o->num_colours()), 0);
    for (int s0 = 0; s0 <= 2; ++s0)
      for (int s1 = 0; s1 <= 2; ++s1) {
        sizes[0] = s0;
        if (sizes.size() > 1) sizes[1] = s1;
        auto algs = all_algebras(*o, sizes);
        CHECK(algs.size() == brute_force_count(*o, sizes));
        for (const auto& a : algs) validate_algebra(*o, a);
      }
  }
  auto split = standard_operad("j!(Split)");
  CHECK(all_algebras(*split, {2, 1}).size() == brute_force_count(*split, {2, 1}));
  CHECK(all_algebras(*split, {3, 2}).size() == brute_force_count(*split, {3, 2}));
}

TEST_CASE("algebra isomorphism classes") {
  auto idem = standard_operad("j!(Idem)");
  // (set, idempotent) up to iso on 2 elements: identity or one fixed point
  auto classes = enumerate_algebras_bounded(*idem, 2, true);
  // sizes 0, 1 contribute one class each; size 2 gives id and constant
  CHECK(classes.size() == 4);
  auto b = standard_operad("B");
  // symmetric maps 2×2 → 2 up to swapping either carrier
  auto all = enumerate_algebras_bounded(*b, 2, false);
  auto iso = enumerate_algebras_bounded(*b, 2, true);
  CHECK(iso.size() < all.size());
  for (const auto& a : all) CHECK(canonical_form(*b, a).size() >= 2);
}

TEST_CASE("restriction") {
  auto b = standard_operad("B");
  auto a = all_algebras(*b, {2, 2})[3];
  auto r = restrict_algebra(identity_operad_map(b), a);
  CHECK(r.act == a.act);

  auto cb = cauchy_completion_operad(b);
  auto lifted = all_algebras(*cb.operad, {2, 2});
  CHECK(lifted.size() == 8);
  for (const auto& x : lifted) validate_algebra(*b, restrict_algebra(cb.canonical, x));

  auto ji = functor_to_operad_map(iota_functor(), standard_operad("j!(Idem)"), standard_operad("j!(Split)"));
  const auto& split = *ji.target;
  for (const auto& x : all_algebras(split, {2, 1})) {
    auto y = restrict_algebra(ji, x);
    validate_algebra(*ji.source, y);
    // the idempotent is i∘r, constant on the two points
    const int e = ji.source->op("e");
    CHECK(y.act[static_cast<size_t>(e)][0] == y.act[static_cast<size_t>(e)][1]);
  }

  auto shadow = algebra_shadow(ji, 3);
  CHECK(shadow.bijective());
  auto canon = algebra_shadow(cb.canonical, 2);
  CHECK(canon.bijective());

  OperadData sub;
  sub.colours = {"a"};
  sub.ops = {{"id_a", {"a"}, "a"}};
  sub.identities = {{"a", "id_a"}};
  auto s = make_operad(sub);
  OperadMap inc{s, b, {b->colour("a")}, {b->op("id_a")}};
  CHECK_FALSE(algebra_shadow(inc, 2).bijective());
}

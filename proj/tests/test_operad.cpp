#include <functional>
#include <set>

#include "doctest.h"
#include "moritakit/error.hpp"
#include "moritakit/operad.hpp"
#include "moritakit/simpset.hpp"
#include "moritakit/tree.hpp"

using namespace moritakit;

namespace {

ErrorKind kind_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected an error");
  return ErrorKind::Malformed;
}

OperadData b_data() {
  OperadData d;
  d.colours = {"a", "b"};
  d.ops = {{"id_a", {"a"}, "a"}, {"id_b", {"b"}, "b"}, {"m", {"a", "a"}, "b"}};
  d.identities = {{"a", "id_a"}, {"b", "id_b"}};
  d.action = {{"m", {1, 0}, "m"}};
  return d;
}

// B with a unary idempotent on each colour that m absorbs.
OperadPtr absorbing_operad() {
  OperadData d = b_data();
  d.ops.push_back({"e", {"a"}, "a"});
  d.ops.push_back({"f", {"b"}, "b"});
  d.compose = {{"e", {"e"}, "e"}, {"f", {"f"}, "f"}, {"m", {"e", "id_a"}, "m"}, {"m", {"id_a", "e"}, "m"},
               {"m", {"e", "e"}, "m"},  {"f", {"m"}, "m"}};
  return make_operad(d);
}

// Two operations per signature of a corolla or none; no shared code with the tree module.
long factorial(int n) { return n <= 1 ? 1 : n * factorial(n - 1); }

// Every map Ω(T) → O checked against the dendrex count.
void check_dendroidal_against_maps(const OperadPtr& o, const Tree& t) {
  auto omega = free_operad_on_tree(t);
  auto dendrices = dendroidal_nerve_at(*o, t);
  auto maps = enumerate_operad_maps(omega, o, 100000);
  CHECK(dendrices.size() == maps.size());
  std::set<std::vector<int>> seen;
  for (const auto& x : dendrices) {
    OperadMap f = dendrex_to_map(omega, o, t, x);
    validate_operad_map(f);
    seen.insert(f.op_map);
  }
  CHECK(seen.size() == dendrices.size());
}

}  // namespace

TEST_CASE("operad validation") {
  auto b = validate_operad(b_data());
  CHECK(b.num_colours() == 2);
  CHECK(b.num_ops() == 3);
  CHECK(b.act(b.op("m"), {1, 0}) == b.op("m"));

  OperadData bad_unit = b_data();
  bad_unit.ops.push_back({"n", {"a", "a"}, "b"});
  bad_unit.action.push_back({"n", {1, 0}, "n"});
  bad_unit.compose.push_back({"m", {"id_a", "id_a"}, "n"});
  CHECK(kind_of([&] { validate_operad(bad_unit); }) == ErrorKind::BadUnit);

  OperadData not_involutive = b_data();
  not_involutive.ops.push_back({"n", {"a", "a"}, "b"});
  not_involutive.action = {{"m", {1, 0}, "n"}, {"n", {1, 0}, "n"}};
  CHECK(kind_of([&] { validate_operad(not_involutive); }) == ErrorKind::NotEquivariant);

  OperadData open = b_data();
  open.ops.push_back({"e", {"a"}, "a"});
  CHECK(kind_of([&] { validate_operad(open); }) == ErrorKind::NotClosed);

  OperadData unknown = b_data();
  unknown.action.push_back({"zz", {1, 0}, "m"});
  CHECK(kind_of([&] { validate_operad(unknown); }) == ErrorKind::UnknownName);

  OperadData nonassoc;
  nonassoc.colours = {"a"};
  nonassoc.ops = {{"id", {"a"}, "a"}, {"e", {"a"}, "a"}, {"z", {"a"}, "a"}};
  nonassoc.identities = {{"a", "id"}};
  // e∘e = z, z∘e = e, e∘z = z: (e∘e)∘e = e but e∘(e∘e) = z
  nonassoc.compose = {{"e", {"e"}, "z"}, {"z", {"e"}, "e"}, {"e", {"z"}, "z"}, {"z", {"z"}, "z"}};
  CHECK(kind_of([&] { validate_operad(nonassoc); }) == ErrorKind::NonAssociative);
}

TEST_CASE("symmetric action laws on corollas") {
  for (int n = 0; n <= 4; ++n) {
    auto omega = free_operad_on_tree(standard_tree("corolla(" + std::to_string(n) + ")"));
    CHECK(omega->num_colours() == n + 1);
    CHECK(omega->num_ops() == n + 1 + factorial(n));
    for (int o = 0; o < omega->num_ops(); ++o) {
      const int k = omega->arity(o);
      CHECK(omega->act(o, identity_perm(k)) == o);
      for (const Perm& s : all_perms(k))
        for (const Perm& t : all_perms(k)) CHECK(omega->act(omega->act(o, s), t) == omega->act(o, compose(s, t)));
    }
  }
}

TEST_CASE("categories and operads") {
  auto b = standard_operad("B");
  auto jb = underlying_category(*b);
  CHECK(jb->num_objects() == 2);
  CHECK(jb->num_morphisms() == 2);

  auto split = standard_category_ptr("Split");
  auto js = category_to_operad(*split);
  CHECK(js->num_colours() == 2);
  CHECK(js->num_ops() == 5);
  CHECK(js->max_arity() == 1);

  for (const char* name : {"Split", "Idem", "J", "P", "linear(3)"}) {
    auto c = standard_category_ptr(name);
    auto back = underlying_category(*category_to_operad(*c));
    CHECK(back->num_objects() == c->num_objects());
    CHECK(back->num_morphisms() == c->num_morphisms());
    for (int f = 0; f < c->num_morphisms(); ++f)
      for (int g : c->out(c->cod(f)))
        CHECK(back->morphism_id(back->compose(back->morphism(c->morphism_id(g)), back->morphism(c->morphism_id(f)))) ==
              c->morphism_id(c->compose(g, f)));
  }

  Functor iota = iota_functor();
  auto ji = functor_to_operad_map(iota, category_to_operad(*iota.source), category_to_operad(*iota.target));
  validate_operad_map(ji);
  Functor back = underlying_functor(ji, underlying_category(*ji.source), underlying_category(*ji.target));
  CHECK(back.mor_map == iota.mor_map);
}

TEST_CASE("operadic Cauchy completion") {
  auto b = standard_operad("B");
  auto cb = cauchy_completion_operad(b);
  CHECK(cb.operad->num_colours() == 2);
  CHECK(find_operad_isomorphism(b, cb.operad).has_value());
  validate_operad_map(cb.canonical);

  auto ci = cauchy_completion_operad(standard_operad("j!(Idem)"));
  CHECK(ci.operad->num_colours() == 2);
  CHECK(ci.operad->num_ops() == 5);
  CHECK(find_operad_isomorphism(ci.operad, standard_operad("j!(Split)")).has_value());

  auto ct = cauchy_completion_operad(standard_operad("unit"));
  CHECK(find_operad_isomorphism(ct.operad, standard_operad("unit")).has_value());

  auto absorbing = absorbing_operad();
  auto ca = cauchy_completion_operad(absorbing);
  CHECK(ca.operad->num_colours() == 4);
  // unary: {id, e} on (a,id), e between (a,id) and (a,e) both ways, e on (a,e); same on b.
  // m lives over all 2·2·2 choices of idempotents since it absorbs e and f.
  CHECK(ca.operad->num_ops() == 5 + 5 + 8);
  for (auto* c : {&cb, &ci, &ct, &ca}) {
    auto rep = morita_report_op(c->canonical);
    CHECK(rep.report.verdict);
    CHECK(rep.oracle);
  }
  // completing twice adds the colours ((c,e),e) but no new retracts
  auto cca = cauchy_completion_operad(ca.operad);
  CHECK(cca.operad->num_colours() == 6);
  CHECK(is_operad_equivalence(cca.canonical));
}

TEST_CASE("operadic Morita reports") {
  auto ji = functor_to_operad_map(iota_functor(), standard_operad("j!(Idem)"), standard_operad("j!(Split)"));
  auto rep = morita_report_op(ji);
  CHECK(rep.report.fully_faithful);
  CHECK(rep.report.verdict);
  CHECK_FALSE(rep.report.essentially_surjective);

  auto b = standard_operad("B");
  OperadData sub;
  sub.colours = {"a"};
  sub.ops = {{"id_a", {"a"}, "a"}};
  sub.identities = {{"a", "id_a"}};
  auto s = make_operad(sub);
  OperadMap inc{s, b, {b->colour("a")}, {b->op("id_a")}};
  validate_operad_map(inc);
  auto r2 = morita_report_op(inc);
  CHECK(r2.report.fully_faithful);
  CHECK_FALSE(r2.report.verdict);
  CHECK_FALSE(r2.oracle);

  auto js = standard_operad("j!(Split)");
  auto w = colour_retract_witness(*js, js->colour("1"), js->colour("0"));
  REQUIRE(w.has_value());
  CHECK(js->op_id(w->first) == "r");
  CHECK(js->op_id(w->second) == "i");
  CHECK_FALSE(colour_retract_witness(*b, b->colour("b"), b->colour("a")).has_value());
  CHECK(colour_retract_witness(*b, b->colour("a"), b->colour("a")) == std::make_pair(b->op("id_a"), b->op("id_a")));

  auto id = identity_operad_map(b);
  CHECK(morita_report_op(id).report.verdict);
}

TEST_CASE("free operads on trees") {
  auto c2 = free_operad_on_tree(standard_tree("corolla(2)"));
  CHECK(c2->num_colours() == 3);
  CHECK(c2->num_ops() == 5);
  auto eta = free_operad_on_tree(standard_tree("eta"));
  CHECK(eta->num_colours() == 1);
  CHECK(eta->num_ops() == 1);
  auto l2 = free_operad_on_tree(standard_tree("linear(2)"));
  CHECK(l2->num_ops() == 6);
  CHECK(l2->max_arity() == 1);
  for (int n = 0; n <= 4; ++n) {
    const std::string name = "linear(" + std::to_string(n) + ")";
    CHECK(find_operad_isomorphism(free_operad_on_tree(standard_tree(name)), standard_operad("j!(" + name + ")")).has_value());
  }

  Tree bad = standard_tree("corolla(2)");
  bad.vertices[0].inputs.push_back("r");
  CHECK(kind_of([&] { validate_tree(bad); }) == ErrorKind::IllFormed);
  Tree two_roots{{"a", "b"}, "a", {}};
  CHECK(kind_of([&] { validate_tree(two_roots); }) == ErrorKind::IllFormed);

  // a tree with two levels: a binary vertex on top of one input of another binary vertex
  Tree t{{"a", "b", "c", "x", "r"}, "r", {{{"a", "b"}, "x"}, {{"x", "c"}, "r"}}};
  auto om = free_operad_on_tree(t);
  // subtrees {x}, {r}, {x,r} with 2!, 2!, 3! orderings
  CHECK(om->num_ops() == 5 + 2 + 2 + 6);
}

TEST_CASE("dendroidal nerve") {
  auto b = standard_operad("B");
  CHECK(dendroidal_nerve_at(*b, standard_tree("eta")).size() == 2);
  auto c2 = free_operad_on_tree(standard_tree("corolla(2)"));
  CHECK(dendroidal_nerve_at(*c2, standard_tree("corolla(2)")).size() == 2);

  for (const char* name : {"Split", "Idem", "J", "P"}) {
    auto c = standard_category_ptr(name);
    auto o = category_to_operad(*c);
    auto n = nerve(*underlying_category(*o), 3);
    for (int k = 0; k <= 3; ++k)
      CHECK(dendroidal_nerve_at(*o, standard_tree("linear(" + std::to_string(k) + ")")).size() == static_cast<size_t>(n.size(k)));
  }

  Tree t{{"a", "b", "c", "x", "r"}, "r", {{{"a", "b"}, "x"}, {{"x", "c"}, "r"}}};
  for (const auto& o : {b, absorbing_operad(), c2, free_operad_on_tree(t)})
    for (const char* shape : {"eta", "corolla(0)", "corolla(1)", "corolla(2)", "linear(2)"})
      check_dendroidal_against_maps(o, standard_tree(shape));
  check_dendroidal_against_maps(free_operad_on_tree(t), t);
}

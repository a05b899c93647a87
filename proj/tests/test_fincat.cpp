#include <map>
#include <set>

#include "doctest.h"
#include "moritakit/error.hpp"
#include "moritakit/fincat.hpp"

using namespace moritakit;

namespace {

// Brute force over every pair of object and morphism assignments, no pruning.
int naive_functor_count(const FinCategory& c, const FinCategory& d) {
  const int no = c.num_objects(), nm = c.num_morphisms();
  std::vector<int> mor(static_cast<size_t>(nm), 0);
  std::vector<int> obj(static_cast<size_t>(no), 0);
  int count = 0;
  long total_obj = 1, total_mor = 1;
  for (int k = 0; k < no; ++k) total_obj *= d.num_objects();
  for (int k = 0; k < nm; ++k) total_mor *= d.num_morphisms();
  for (long a = 0; a < total_obj; ++a) {
    long t = a;
    for (int k = 0; k < no; ++k) obj[static_cast<size_t>(k)] = static_cast<int>(t % d.num_objects()), t /= d.num_objects();
    for (long b = 0; b < total_mor; ++b) {
      long s = b;
      for (int k = 0; k < nm; ++k) mor[static_cast<size_t>(k)] = static_cast<int>(s % d.num_morphisms()), s /= d.num_morphisms();
      bool ok = true;
      for (int f = 0; f < nm && ok; ++f) {
        int g = mor[static_cast<size_t>(f)];
        ok = d.dom(g) == obj[static_cast<size_t>(c.dom(f))] && d.cod(g) == obj[static_cast<size_t>(c.cod(f))];
      }
      for (int x = 0; x < no && ok; ++x) ok = mor[static_cast<size_t>(c.identity(x))] == d.identity(obj[static_cast<size_t>(x)]);
      for (int f = 0; f < nm && ok; ++f)
        for (int g : c.out(c.cod(f)))
          if (d.compose(mor[static_cast<size_t>(g)], mor[static_cast<size_t>(f)]) != mor[static_cast<size_t>(c.compose(g, f))]) ok = false;
      count += ok;
    }
  }
  return count;
}

ErrorKind kind_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected an error");
  return ErrorKind::Malformed;
}

}  // namespace

TEST_CASE("standard categories") {
  auto idem = standard_category("Idem");
  CHECK(idem.num_objects() == 1);
  CHECK(idem.num_morphisms() == 2);
  int e = idem.morphism("e");
  CHECK(idem.compose(e, e) == e);

  auto split = standard_category("Split");
  CHECK(split.num_objects() == 2);
  CHECK(split.num_morphisms() == 5);
  CHECK(split.compose(split.morphism("r"), split.morphism("i")) == split.morphism("id1"));
  CHECK(split.compose(split.morphism("i"), split.morphism("r")) == split.morphism("ir"));

  CHECK(standard_category("terminal").num_morphisms() == 1);
  CHECK(standard_category("linear(2)").num_morphisms() == 6);
  CHECK(standard_category("J").num_morphisms() == 4);
  CHECK(kind_of([] { standard_category("Nope"); }) == ErrorKind::UnknownName);
}

TEST_CASE("validation diagnostics") {
  CategoryData d;
  d.objects = {"0"};
  d.morphisms = {{"id0", "0", "0"}, {"e", "0", "0"}};
  d.identities = {{"0", "id0"}};
  try {
    validate_category(d);
    FAIL("missing composite accepted");
  } catch (const Error& err) {
    CHECK(err.kind() == ErrorKind::MissingComposite);
    CHECK(err.detail() == "(e, e)");
  }

  // a monoid {1, a, b} where the table a∘a = b, a∘b = 1, b∘a = a, b∘b = b is not associative:
  // (a∘a)∘b = b∘b = b but a∘(a∘b) = a∘1 = a
  CategoryData bad;
  bad.objects = {"0"};
  bad.morphisms = {{"id0", "0", "0"}, {"a", "0", "0"}, {"b", "0", "0"}};
  bad.identities = {{"0", "id0"}};
  bad.compose = {{"a", "a", "b"}, {"a", "b", "id0"}, {"b", "a", "a"}, {"b", "b", "b"}};
  CHECK(kind_of([&] { validate_category(bad); }) == ErrorKind::NonAssociative);

  CategoryData unit = d;
  unit.compose = {{"e", "e", "e"}, {"id0", "e", "id0"}};
  CHECK(kind_of([&] { validate_category(unit); }) == ErrorKind::BadIdentity);
}

TEST_CASE("split idempotents") {
  auto split = standard_category("Split");
  auto w = split_idempotent(split, split.morphism("ir"));
  REQUIRE(w);
  CHECK(split.morphism_id(w->first) == "r");
  CHECK(split.morphism_id(w->second) == "i");
  auto idem = standard_category("Idem");
  CHECK_FALSE(split_idempotent(idem, idem.morphism("e")));
  auto id = split_idempotent(split, split.morphism("id1"));
  REQUIRE(id);
  CHECK(id->first == split.morphism("id1"));
  CHECK(id->second == split.morphism("id1"));
  CHECK(kind_of([&] { split_idempotent(split, split.morphism("r")); }) == ErrorKind::NotIdempotent);

  CHECK(is_cauchy_complete(split));
  CHECK_FALSE(is_cauchy_complete(idem));
  CHECK(is_cauchy_complete(standard_category("terminal")));
}

TEST_CASE("Karoubi envelopes") {
  auto k = karoubi_envelope(standard_category_ptr("Idem"));
  CHECK(k.category->num_objects() == 2);
  CHECK(k.category->num_morphisms() == 5);
  validate_category(k.category->to_data());
  CHECK(morita_report(k.canonical).verdict);
  CHECK_FALSE(is_equivalence(k.canonical));

  auto kt = karoubi_envelope(standard_category_ptr("terminal"));
  CHECK(kt.category->num_objects() == 1);
  CHECK(kt.category->num_morphisms() == 1);

  auto ks = karoubi_envelope(standard_category_ptr("Split"));
  CHECK(ks.category->num_objects() == 3);
  CHECK(ks.category->find_object("(0,ir)") >= 0);
  CHECK(is_equivalence(ks.canonical));

  // Karoubi(Idem) and Split are equivalent: some functor between them is an equivalence
  auto fs = enumerate_functors(k.category, standard_category_ptr("Split"), 100);
  bool found = false;
  for (const auto& f : fs) found = found || is_equivalence(f);
  CHECK(found);

  Functor iota = iota_functor();
  auto kidem = karoubi_envelope(iota.source);
  auto ksplit = karoubi_envelope(iota.target);
  CHECK(is_equivalence(karoubi_functor(iota, kidem, ksplit)));
}

TEST_CASE("Morita reports") {
  Functor iota = iota_functor();
  auto rep = morita_report(iota);
  CHECK(rep.fully_faithful);
  CHECK(rep.essentially_surjective_up_to_retracts);
  CHECK_FALSE(rep.essentially_surjective);
  CHECK(rep.verdict);
  CHECK(morita_cross_check(iota));

  auto split = standard_category_ptr("Split");
  CHECK(morita_cross_check(identity_functor(split)));
  CHECK(is_equivalence(identity_functor(split)));

  Functor at0 = constant_functor(standard_category_ptr("terminal"), split, split->object("0"));
  auto r0 = morita_report(at0);
  CHECK_FALSE(r0.fully_faithful);
  CHECK_FALSE(morita_cross_check(at0));
}

TEST_CASE("functor enumeration agrees with brute force") {
  auto idem = standard_category_ptr("Idem");
  auto split = standard_category_ptr("Split");
  CHECK(naive_functor_count(*idem, *split) == 3);
  CHECK(naive_functor_count(*split, *split) == 3);
  CHECK(enumerate_functors(idem, split, 100).size() == 3);
  CHECK(enumerate_functors(split, split, 100).size() == 3);
  CHECK(enumerate_functors(standard_category_ptr("terminal"), split, 100).size() == 2);
  for (const char* a : {"Idem", "Split", "I", "P", "J", "linear(2)"})
    for (const char* b : {"Idem", "Split", "P", "J"}) {
      auto ca = standard_category_ptr(a), cb = standard_category_ptr(b);
      CAPTURE(a);
      CAPTURE(b);
      CHECK(static_cast<int>(enumerate_functors(ca, cb, 100000).size()) == naive_functor_count(*ca, *cb));
    }
  CHECK_THROWS_AS(enumerate_functors(idem, split, 2), Error);
}

TEST_CASE("lifting against iota and locality") {
  Functor iota = iota_functor();
  auto term = standard_category_ptr("terminal");
  for (const char* name : {"Split", "Idem", "terminal", "J", "P"}) {
    auto c = standard_category_ptr(name);
    Functor p = constant_functor(c, term, 0);
    const bool cc = is_cauchy_complete(*c);
    CAPTURE(name);
    CHECK(has_rlp_cat(p, iota, 10000) == cc);
    CHECK(iota_locality_check(c, 10000) == cc);
    CHECK(has_rlp_cat(p, identity_functor(iota.source), 10000));
  }
}

TEST_CASE("opposite categories") {
  auto split = standard_category("Split");
  auto op = opposite(split);
  validate_category(op.to_data());
  CHECK(op.dom(op.morphism("r")) == op.object("1"));
  CHECK(op.compose(op.morphism("i"), op.morphism("r")) == op.morphism("id1"));
}

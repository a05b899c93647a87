#include <algorithm>

#include "doctest.h"
#include "moritakit/error.hpp"
#include "moritakit/simpset.hpp"

using namespace moritakit;

namespace {

// Chains of length n counted as the entry sum of H^n, H[x][y] = |C(x, y)|.
std::vector<long> chain_counts(const FinCategory& c, int dim) {
  const int no = c.num_objects();
  std::vector<std::vector<long>> power(static_cast<size_t>(no), std::vector<long>(static_cast<size_t>(no), 0));
  for (int x = 0; x < no; ++x) power[static_cast<size_t>(x)][static_cast<size_t>(x)] = 1;
  std::vector<long> out;
  for (int n = 0; n <= dim; ++n) {
    long total = 0;
    for (const auto& row : power)
      for (long v : row) total += v;
    out.push_back(n == 0 ? no : total);
    std::vector<std::vector<long>> next(static_cast<size_t>(no), std::vector<long>(static_cast<size_t>(no), 0));
    for (int x = 0; x < no; ++x)
      for (int y = 0; y < no; ++y)
        for (int z = 0; z < no; ++z)
          next[static_cast<size_t>(x)][static_cast<size_t>(z)] +=
              power[static_cast<size_t>(x)][static_cast<size_t>(y)] * static_cast<long>(c.hom(y, z).size());
    power = next;
  }
  return out;
}

// Ret is Δ[2] with the 0-2 edge collapsed: nondegenerate m-simplices are the
// strictly increasing tuples not contained in {0, 2}, plus the collapsed vertex.
std::vector<int> ret_oracle(int dim) {
  std::vector<int> out;
  for (int m = 0; m <= dim; ++m) {
    int count = m == 0 ? 1 : 0;
    for (int mask = 1; mask < 8; ++mask) {
      if (__builtin_popcount(static_cast<unsigned>(mask)) != m + 1) continue;
      if ((mask & 2) == 0) continue;
      ++count;
    }
    out.push_back(count);
  }
  return out;
}

std::vector<int> ints(std::initializer_list<int> v) { return v; }

}  // namespace

TEST_CASE("nerves") {
  auto split = standard_category("Split");
  auto ns = nerve(split, 2);
  validate_sset(ns);
  auto oracle = chain_counts(split, 2);
  CHECK(oracle == std::vector<long>{2, 5, 13});
  CHECK(level_sizes(ns) == ints({2, 5, 13}));

  auto idem = standard_category("Idem");
  auto ni = nerve(idem, 2);
  CHECK(level_sizes(ni) == ints({1, 2, 4}));
  CHECK(nondegenerate_counts(ni) == ints({1, 1, 1}));
  CHECK(pi0(ns) == 1);

  auto nt = nerve(standard_category("terminal"), 4);
  CHECK(level_sizes(nt) == ints({1, 1, 1, 1, 1}));

  for (const char* name : {"Idem", "Split", "J", "P", "linear(3)"}) {
    auto c = standard_category(name);
    auto n = nerve(c, 4);
    validate_sset(n);
    CHECK(has_unique_inner_horn_fillers(n));
    auto counts = chain_counts(c, 4);
    for (int k = 0; k <= 4; ++k) CHECK(n.size(k) == counts[static_cast<size_t>(k)]);
  }
}

TEST_CASE("nerve of a functor") {
  Functor iota = iota_functor();
  auto a = nerve_ptr(*iota.source, 3);
  auto b = nerve_ptr(*iota.target, 3);
  auto m = nerve_map(iota, a, b);
  validate_simp_map(m);
  CHECK(is_mono(m));
}

TEST_CASE("standard cells") {
  auto s0 = standard_cells("simplex(0)", 3);
  CHECK(level_sizes(s0) == ints({1, 1, 1, 1}));
  CHECK(nondegenerate_counts(s0) == ints({1, 0, 0, 0}));
  auto b2 = standard_cells("boundary(2)", 3);
  validate_sset(b2);
  CHECK(nondegenerate_counts(b2)[1] == 3);
  CHECK(nondegenerate_counts(b2)[2] == 0);
  auto h = standard_cells("horn(2,1)", 3);
  validate_sset(h);
  CHECK(nondegenerate_counts(h)[1] == 2);
  CHECK(h.find(1, "0,2") < 0);
  auto d3 = standard_cells("simplex(3)", 3);
  validate_sset(d3);
  CHECK(nondegenerate_counts(d3) == ints({4, 6, 4, 1}));
  CHECK_THROWS_AS(standard_cells("horn(2,3)", 3), Error);
  CHECK_THROWS_AS(standard_cells("boundary(0)", 3), Error);
  CHECK(level_sizes(standard_cells("empty", 2)) == ints({0, 0, 0}));
}

TEST_CASE("apply_operator agrees with tuple composition") {
  auto d2 = standard_cells_ptr("simplex(2)", 4);
  auto d3 = standard_cells_ptr("simplex(3)", 4);
  // X = Δ[3]; the simplex 0,1,3 pulled back along a tuple t composes tuples
  const int x = d3->find(2, "0,1,3");
  for (int m = 0; m <= 4; ++m)
    for (int s = 0; s < d2->size(m); ++s) {
      std::vector<int> t;
      for (char ch : d2->id(m, s))
        if (ch != ',') t.push_back(ch - '0');
      std::vector<int> expect;
      const int base[3] = {0, 1, 3};
      for (int v : t) expect.push_back(base[v]);
      CHECK(d3->id(m, apply_operator(*d3, 2, x, t)) == tuple_id(expect));
    }
}

TEST_CASE("pushouts") {
  auto d0 = standard_cells_ptr("simplex(0)", 2);
  auto empty = standard_cells_ptr("empty", 2);
  SimpMap e0{empty, d0, {{}, {}, {}}};
  auto two = pushout(e0, e0);
  CHECK(pi0(*two.object) == 2);

  auto d1 = standard_cells_ptr("simplex(1)", 2);
  auto same = pushout(identity_map(d1), identity_map(d1));
  CHECK(level_sizes(*same.object) == level_sizes(*d1));
}

TEST_CASE("Ret and rho") {
  for (int dim = 2; dim <= 6; ++dim) {
    auto r = build_ret(dim);
    CHECK(nondegenerate_counts(*r.ret.object) == ret_oracle(dim));
    CHECK(is_mono(r.rho));
  }
  auto r = build_ret(4);
  CHECK(nondegenerate_counts(*r.ret.object) == ints({2, 2, 1, 0, 0}));
  const auto& p = *r.ret.object;
  const auto& ns = *r.split_nerve;
  // the collapsed vertex goes to object 1, vertex 1 of Δ[2] to object 0
  CHECK(ns.id(0, r.rho(0, p.find(0, "0:0"))) == "1");
  CHECK(ns.id(0, r.rho(0, p.find(0, "0:1"))) == "0");
  CHECK(ns.id(1, r.rho(1, p.find(1, "0:0,1"))) == "i");
  CHECK(ns.id(1, r.rho(1, p.find(1, "0:1,2"))) == "r");
}

TEST_CASE("lifting against N(iota)") {
  Functor iota = iota_functor();
  const int dim = 3;
  auto ni = nerve_ptr(*iota.source, dim);
  auto ns = nerve_ptr(*iota.target, dim);
  SimpMap niota = nerve_map(iota, ni, ns);
  for (const char* name : {"Split", "Idem", "J", "terminal"}) {
    auto c = standard_category(name);
    auto nc = nerve_ptr(c, dim);
    CAPTURE(name);
    CHECK(has_rlp_sset(to_point(nc), niota, 10000) == is_cauchy_complete(c));
    CHECK(has_rlp_sset(to_point(nc), identity_map(ni), 10000));
  }
}

TEST_CASE("simplicial maps between nerves are functors") {
  auto idem = standard_category_ptr("Idem");
  auto split = standard_category_ptr("Split");
  auto maps = all_simp_maps(nerve_ptr(*idem, 3), nerve_ptr(*split, 3), 1000);
  CHECK(maps.size() == enumerate_functors(idem, split, 100).size());
}

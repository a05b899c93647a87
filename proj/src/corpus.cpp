#include "moritakit/corpus.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>

#include "moritakit/error.hpp"
#include "moritakit/tree.hpp"

namespace moritakit {

namespace {

int draw(std::mt19937_64& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

template <class T>
const T& pick(std::mt19937_64& rng, const std::vector<T>& v) {
  return v[static_cast<size_t>(draw(rng, 0, static_cast<int>(v.size()) - 1))];
}

std::string obj_name(int x) { return "x" + std::to_string(x); }

std::optional<CategoryData> try_category(std::mt19937_64& rng, int max_objects, int max_morphisms) {
  const int n = draw(rng, 1, max_objects);
  struct Mor {
    int dom, cod;
  };
  std::vector<Mor> mors;
  for (int x = 0; x < n; ++x) mors.push_back({x, x});
  const int generators = draw(rng, 0, std::min(4, max_morphisms - n));
  for (int k = 0; k < generators; ++k) mors.push_back({draw(rng, 0, n - 1), draw(rng, 0, n - 1)});
  if (static_cast<int>(mors.size()) > max_morphisms) return std::nullopt;

  // table[g][f] = g∘f or -1; identities act trivially
  std::map<std::pair<int, int>, int> table;
  auto composite = [&](int g, int f) -> int {
    if (g < n) return f;
    if (f < n) return g;
    auto it = table.find({g, f});
    return it == table.end() ? -1 : it->second;
  };
  bool grew = true;
  while (grew) {
    grew = false;
    const int m = static_cast<int>(mors.size());
    for (int f = n; f < m; ++f)
      for (int g = n; g < m; ++g) {
        if (mors[static_cast<size_t>(f)].cod != mors[static_cast<size_t>(g)].dom || composite(g, f) >= 0) continue;
        const int a = mors[static_cast<size_t>(f)].dom, b = mors[static_cast<size_t>(g)].cod;
        std::vector<int> cands;
        for (int h = 0; h < static_cast<int>(mors.size()); ++h)
          if (mors[static_cast<size_t>(h)].dom == a && mors[static_cast<size_t>(h)].cod == b) cands.push_back(h);
        // prefer reuse so that the closure stays small
        if (!cands.empty() && draw(rng, 0, 3) != 0) {
          table[{g, f}] = pick(rng, cands);
        } else {
          if (static_cast<int>(mors.size()) >= max_morphisms) return std::nullopt;
          mors.push_back({a, b});
          table[{g, f}] = static_cast<int>(mors.size()) - 1;
        }
        grew = true;
      }
  }
  const int m = static_cast<int>(mors.size());
  for (int f = 0; f < m; ++f)
    for (int g = 0; g < m; ++g) {
      if (mors[static_cast<size_t>(f)].cod != mors[static_cast<size_t>(g)].dom) continue;
      for (int h = 0; h < m; ++h) {
        if (mors[static_cast<size_t>(g)].cod != mors[static_cast<size_t>(h)].dom) continue;
        if (composite(h, composite(g, f)) != composite(composite(h, g), f)) return std::nullopt;
      }
    }
  CategoryData d;
  for (int x = 0; x < n; ++x) {
    d.objects.push_back(obj_name(x));
    d.identities[obj_name(x)] = "id" + std::to_string(x);
  }
  auto mor_name = [&](int f) { return f < n ? "id" + std::to_string(f) : "f" + std::to_string(f - n); };
  for (int f = 0; f < m; ++f) d.morphisms.push_back({mor_name(f), obj_name(mors[static_cast<size_t>(f)].dom), obj_name(mors[static_cast<size_t>(f)].cod)});
  for (const auto& [gf, h] : table) d.compose.push_back({mor_name(gf.first), mor_name(gf.second), mor_name(h)});
  return d;
}

// ---- concrete operads

struct Fn {
  std::vector<int> inputs;
  int output = 0;
  std::vector<int> table;
  auto key() const { return std::tie(inputs, output, table); }
  bool operator<(const Fn& o) const { return key() < o.key(); }
  bool operator==(const Fn& o) const { return key() == o.key(); }
};

size_t tuples_of(const std::vector<int>& sizes, const std::vector<int>& colours) {
  size_t n = 1;
  for (int c : colours) n *= static_cast<size_t>(sizes[static_cast<size_t>(c)]);
  return n;
}

std::vector<int> unrank(const std::vector<int>& sizes, const std::vector<int>& colours, size_t r) {
  std::vector<int> x(colours.size());
  for (size_t i = colours.size(); i-- > 0;) {
    const size_t s = static_cast<size_t>(sizes[static_cast<size_t>(colours[i])]);
    x[i] = static_cast<int>(r % s);
    r /= s;
  }
  return x;
}

size_t rank_of(const std::vector<int>& sizes, const std::vector<int>& colours, const std::vector<int>& x) {
  size_t r = 0;
  for (size_t i = 0; i < colours.size(); ++i) r = r * static_cast<size_t>(sizes[static_cast<size_t>(colours[i])]) + static_cast<size_t>(x[i]);
  return r;
}

Fn act_fn(const std::vector<int>& sizes, const Fn& o, const Perm& s) {
  Fn r;
  for (size_t i = 0; i < s.size(); ++i) r.inputs.push_back(o.inputs[static_cast<size_t>(s[i])]);
  r.output = o.output;
  const size_t n = tuples_of(sizes, r.inputs);
  for (size_t t = 0; t < n; ++t) {
    const auto x = unrank(sizes, r.inputs, t);
    std::vector<int> y(x.size());
    for (size_t i = 0; i < s.size(); ++i) y[static_cast<size_t>(s[i])] = x[i];
    r.table.push_back(o.table[rank_of(sizes, o.inputs, y)]);
  }
  return r;
}

Fn compose_fn(const std::vector<int>& sizes, const Fn& o, const std::vector<Fn>& inners) {
  Fn r;
  r.output = o.output;
  for (const auto& q : inners) r.inputs.insert(r.inputs.end(), q.inputs.begin(), q.inputs.end());
  const size_t n = tuples_of(sizes, r.inputs);
  for (size_t t = 0; t < n; ++t) {
    const auto x = unrank(sizes, r.inputs, t);
    std::vector<int> args;
    size_t at = 0;
    for (const auto& q : inners) {
      const std::vector<int> part(x.begin() + static_cast<long>(at), x.begin() + static_cast<long>(at + q.inputs.size()));
      at += q.inputs.size();
      args.push_back(q.table[rank_of(sizes, q.inputs, part)]);
    }
    r.table.push_back(o.table[rank_of(sizes, o.inputs, args)]);
  }
  return r;
}

std::optional<std::pair<OperadData, FiniteAlgebra>> try_operad(std::mt19937_64& rng, int max_colours, int max_ops) {
  const int k = draw(rng, 1, max_colours);
  std::vector<int> sizes;
  for (int c = 0; c < k; ++c) sizes.push_back(draw(rng, 1, 2));
  std::vector<Fn> ops;
  std::set<Fn> seen;
  bool overflow = false;
  auto add = [&](const Fn& f) {
    if (f.inputs.size() > 3) overflow = true;
    if (!overflow && seen.insert(f).second) ops.push_back(f);
    if (ops.size() > static_cast<size_t>(max_ops)) overflow = true;
  };
  for (int c = 0; c < k; ++c) {
    Fn id{{c}, c, {}};
    for (int e = 0; e < sizes[static_cast<size_t>(c)]; ++e) id.table.push_back(e);
    add(id);
  }
  const int generators = draw(rng, 1, 2);
  for (int g = 0; g < generators; ++g) {
    Fn f;
    const int arity = std::min(draw(rng, 0, 3), draw(rng, 1, 3));
    for (int i = 0; i < arity; ++i) f.inputs.push_back(draw(rng, 0, k - 1));
    f.output = draw(rng, 0, k - 1);
    const size_t n = tuples_of(sizes, f.inputs);
    for (size_t t = 0; t < n; ++t) f.table.push_back(draw(rng, 0, sizes[static_cast<size_t>(f.output)] - 1));
    add(f);
  }
  // close under the action and substitution
  for (size_t done = 0; done < ops.size();) {
    const size_t end = ops.size();
    for (size_t a = 0; a < end && !overflow; ++a)
      for (const Perm& s : all_perms(static_cast<int>(ops[a].inputs.size()))) add(act_fn(sizes, ops[a], s));
    for (size_t a = 0; a < ops.size() && !overflow; ++a) {
      const Fn outer = ops[a];
      std::vector<Fn> inners;
      std::function<bool(size_t)> rec = [&](size_t i) {
        if (overflow) return false;
        if (i == outer.inputs.size()) {
          add(compose_fn(sizes, outer, inners));
          return true;
        }
        const size_t snapshot = ops.size();
        for (size_t q = 0; q < snapshot; ++q) {
          if (ops[q].output != outer.inputs[i]) continue;
          inners.push_back(ops[q]);
          const bool ok = rec(i + 1);
          inners.pop_back();
          if (!ok) return false;
        }
        return true;
      };
      if (!rec(0)) return std::nullopt;
    }
    if (overflow) return std::nullopt;
    done = end;
    if (ops.size() == end) break;
  }

  OperadData d;
  FiniteAlgebra alg;
  auto colour = [](int c) { return "c" + std::to_string(c); };
  std::map<Fn, std::string> name;
  for (int c = 0; c < k; ++c) {
    d.colours.push_back(colour(c));
    name[ops[static_cast<size_t>(c)]] = "id_" + colour(c);
    d.identities[colour(c)] = "id_" + colour(c);
  }
  for (size_t a = static_cast<size_t>(k); a < ops.size(); ++a) name[ops[a]] = "p" + std::to_string(a - static_cast<size_t>(k));
  for (const auto& f : ops) {
    std::vector<std::string> ins;
    for (int c : f.inputs) ins.push_back(colour(c));
    d.ops.push_back({name.at(f), ins, colour(f.output)});
  }
  for (const auto& f : ops) {
    for (const Perm& s : all_perms(static_cast<int>(f.inputs.size())))
      if (s != identity_perm(static_cast<int>(s.size()))) d.action.push_back({name.at(f), s, name.at(act_fn(sizes, f, s))});
    std::vector<Fn> inners;
    std::function<void(size_t)> rec = [&](size_t i) {
      if (i == f.inputs.size()) {
        d.compose.push_back({name.at(f), {}, name.at(compose_fn(sizes, f, inners))});
        for (const auto& q : inners) d.compose.back().inners.push_back(name.at(q));
        return;
      }
      for (const auto& q : ops)
        if (q.output == f.inputs[i]) {
          inners.push_back(q);
          rec(i + 1);
          inners.pop_back();
        }
    };
    if (!f.inputs.empty()) rec(0);
  }
  // the algebra, indexed by the lexicographic order the operad will use
  const SymOperad built = SymOperad::build(d, Check::Trusted);
  alg.carrier.resize(static_cast<size_t>(k));
  alg.act.resize(ops.size());
  for (int c = 0; c < k; ++c) alg.carrier[static_cast<size_t>(built.colour(colour(c)))] = sizes[static_cast<size_t>(c)];
  for (const auto& f : ops) alg.act[static_cast<size_t>(built.op(name.at(f)))] = f.table;
  return std::make_pair(d, alg);
}

}  // namespace

CatPtr random_category(std::mt19937_64& rng, int max_objects, int max_morphisms) {
  for (int attempt = 0; attempt < 100000; ++attempt)
    if (auto d = try_category(rng, max_objects, max_morphisms)) return make_category(*d);
  fail(ErrorKind::LimitExceeded, "no random category found");
}

OperadPtr random_operad(std::mt19937_64& rng, int max_colours, int max_ops, FiniteAlgebra* carrier) {
  for (int attempt = 0; attempt < 100000; ++attempt)
    if (auto r = try_operad(rng, max_colours, max_ops)) {
      auto o = make_operad(r->first);
      if (carrier) *carrier = r->second;
      return o;
    }
  fail(ErrorKind::LimitExceeded, "no random operad found");
}

CModule random_module(std::mt19937_64& rng, const CatPtr& c, int max_size) {
  if (draw(rng, 0, 1) == 0) {
    for (int attempt = 0; attempt < 40; ++attempt) {
      CModule x{c, {}, {}};
      for (int o = 0; o < c->num_objects(); ++o) x.value.push_back(draw(rng, 0, max_size));
      for (int f = 0; f < c->num_morphisms(); ++f) {
        std::vector<int> t;
        for (int e = 0; e < x.value[static_cast<size_t>(c->dom(f))]; ++e)
          t.push_back(c->is_identity(f) ? e : x.value[static_cast<size_t>(c->cod(f))] > 0 ? draw(rng, 0, x.value[static_cast<size_t>(c->cod(f))] - 1) : -1);
        x.action.push_back(t);
      }
      try {
        validate_module(x);
        return x;
      } catch (const Error&) {
      }
    }
  }
  // a sum of representables, or the point
  CModule x = draw(rng, 0, 3) == 0 ? point_module(c) : representable_module(c, draw(rng, 0, c->num_objects() - 1));
  if (draw(rng, 0, 2) == 0) {
    const CModule y = representable_module(c, draw(rng, 0, c->num_objects() - 1));
    for (int f = 0; f < c->num_morphisms(); ++f) {
      const int shift = x.value[static_cast<size_t>(c->cod(f))];
      for (int e : y.action[static_cast<size_t>(f)]) x.action[static_cast<size_t>(f)].push_back(e + shift);
    }
    for (int o = 0; o < c->num_objects(); ++o) x.value[static_cast<size_t>(o)] += y.value[static_cast<size_t>(o)];
  }
  return x;
}

CatPtr full_subcategory(const FinCategory& c, const std::vector<int>& objects) {
  const std::set<int> keep(objects.begin(), objects.end());
  const CategoryData all = c.to_data();
  CategoryData d;
  for (int x : keep) {
    d.objects.push_back(c.object_id(x));
    d.identities[c.object_id(x)] = c.morphism_id(c.identity(x));
  }
  std::set<std::string> mors;
  for (int f = 0; f < c.num_morphisms(); ++f)
    if (keep.count(c.dom(f)) && keep.count(c.cod(f))) {
      d.morphisms.push_back({c.morphism_id(f), c.object_id(c.dom(f)), c.object_id(c.cod(f))});
      mors.insert(c.morphism_id(f));
    }
  for (const auto& e : all.compose)
    if (mors.count(e[0]) && mors.count(e[1])) d.compose.push_back(e);
  return make_category(d, Check::Trusted);
}

Functor restrict_functor(const Functor& f, const std::vector<int>& objects) {
  Functor g{full_subcategory(*f.source, objects), f.target, {}, {}};
  for (int x = 0; x < g.source->num_objects(); ++x) g.obj_map.push_back(f.on_object(f.source->object(g.source->object_id(x))));
  for (int m = 0; m < g.source->num_morphisms(); ++m) g.mor_map.push_back(f(f.source->morphism(g.source->morphism_id(m))));
  return g;
}

OperadPtr full_suboperad(const SymOperad& o, const std::vector<int>& colours) {
  const std::set<int> keep(colours.begin(), colours.end());
  auto inside = [&](int op) {
    if (!keep.count(o.output(op))) return false;
    for (int c : o.inputs(op))
      if (!keep.count(c)) return false;
    return true;
  };
  const OperadData all = o.to_data();
  std::set<std::string> ops;
  for (int op = 0; op < o.num_ops(); ++op)
    if (inside(op)) ops.insert(o.op_id(op));
  OperadData d;
  for (int c : keep) {
    d.colours.push_back(o.colour_id(c));
    d.identities[o.colour_id(c)] = o.op_id(o.identity(c));
  }
  for (const auto& op : all.ops)
    if (ops.count(op.id)) d.ops.push_back(op);
  for (const auto& a : all.action)
    if (ops.count(a.op)) d.action.push_back(a);
  for (const auto& c : all.compose)
    if (ops.count(c.outer) && std::all_of(c.inners.begin(), c.inners.end(), [&](const std::string& s) { return ops.count(s) > 0; }))
      d.compose.push_back(c);
  return make_operad(d, Check::Trusted);
}

OperadMap restrict_operad_map(const OperadMap& f, const std::vector<int>& colours) {
  OperadMap g{full_suboperad(*f.source, colours), f.target, {}, {}};
  for (int c = 0; c < g.source->num_colours(); ++c) g.colour_map.push_back(f.on_colour(f.source->colour(g.source->colour_id(c))));
  for (int o = 0; o < g.source->num_ops(); ++o) g.op_map.push_back(f(f.source->op(g.source->op_id(o))));
  return g;
}

Corpus build_corpus(std::uint64_t seed, const CorpusBounds& b) {
  std::mt19937_64 rng(seed);
  Corpus k;

  for (const char* name : {"Idem", "Split", "terminal", "I", "J"}) k.categories.push_back(standard_category_ptr(name));
  while (static_cast<int>(k.categories.size()) < b.categories) k.categories.push_back(random_category(rng, b.objects, b.morphisms));

  // functors: canonical Karoubi functors, ι, and random samples
  k.functors.push_back(iota_functor());
  for (size_t i = 0; i < k.categories.size() && static_cast<int>(k.functors.size()) < b.functors / 4; ++i) {
    if (k.categories[i]->num_morphisms() > 8) continue;
    const Karoubi kc = karoubi_envelope(k.categories[i]);
    if (kc.category->num_morphisms() <= b.morphisms) k.functors.push_back(kc.canonical);
  }
  auto shuffle = [&](std::vector<int>& v) { std::shuffle(v.begin(), v.end(), rng); };
  while (static_cast<int>(k.functors.size()) < b.functors) {
    const CatPtr& c = pick(rng, k.categories);
    const CatPtr& d = pick(rng, k.categories);
    if (auto f = search_functor(c, d, shuffle, 20000)) k.functors.push_back(*f);
  }

  // operads: standard ones, images of categories, Cauchy completions and random ones
  k.operads.push_back(standard_operad("B"));
  k.algebras.emplace_back(0, all_algebras(*k.operads[0], {2, 2})[5]);
  k.operads.push_back(standard_operad("j!(Idem)"));
  k.operads.push_back(standard_operad("j!(Split)"));
  k.operads.push_back(standard_operad("Omega(corolla(2))"));
  k.operads.push_back(standard_operad("Omega(linear(2))"));
  for (size_t i = 5; i < k.categories.size() && static_cast<int>(k.operads.size()) < b.operads / 4; ++i)
    if (k.categories[i]->num_morphisms() <= b.operations) k.operads.push_back(category_to_operad(*k.categories[i]));
  while (static_cast<int>(k.operads.size()) < b.operads) {
    FiniteAlgebra a;
    k.operads.push_back(random_operad(rng, b.colours, b.operations, &a));
    if (std::all_of(a.carrier.begin(), a.carrier.end(), [&](int s) { return s <= b.carrier; }))
      k.algebras.emplace_back(k.operads.size() - 1, a);
  }

  // maps: canonical Cauchy maps, identities, j_!(functors) and sampled maps
  for (const auto& o : k.operads) {
    if (static_cast<int>(k.maps.size()) >= b.maps / 3) break;
    const OperadCauchy c = cauchy_completion_operad(o);
    if (c.operad->num_ops() <= 3 * b.operations && c.operad->num_colours() <= b.colours + 2) k.maps.push_back(c.canonical);
    k.maps.push_back(identity_operad_map(o));
  }
  for (const auto& f : k.functors) {
    if (static_cast<int>(k.maps.size()) >= b.maps / 2) break;
    if (f.source->num_morphisms() <= b.operations && f.target->num_morphisms() <= b.operations)
      k.maps.push_back(functor_to_operad_map(f, category_to_operad(*f.source), category_to_operad(*f.target)));
  }
  for (int attempt = 0; static_cast<int>(k.maps.size()) < b.maps && attempt < 100 * b.maps; ++attempt) {
    const OperadPtr& o = pick(rng, k.operads);
    const OperadPtr& p = pick(rng, k.operads);
    try {
      const auto all = enumerate_operad_maps(o, p, 200);
      if (!all.empty()) k.maps.push_back(pick(rng, all));
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::LimitExceeded) throw;
    }
  }
  return k;
}

}  // namespace moritakit

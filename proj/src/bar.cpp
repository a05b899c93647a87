#include "moritakit/bar.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>

#include "moritakit/error.hpp"
#include "moritakit/limits.hpp"
#include "moritakit/union_find.hpp"

namespace moritakit {

namespace {

int index_in(const std::vector<int>& v, int x) {
  auto it = std::find(v.begin(), v.end(), x);
  return it == v.end() ? -1 : static_cast<int>(it - v.begin());
}

template <class M>
void validate_action(const M& x, bool covariant, const char* what) {
  const FinCategory& c = *x.base;
  if (x.value.size() != static_cast<size_t>(c.num_objects()) || x.action.size() != static_cast<size_t>(c.num_morphisms()))
    fail(ErrorKind::Malformed, std::string(what) + " does not match its category");
  auto src = [&](int f) { return covariant ? c.dom(f) : c.cod(f); };
  auto dst = [&](int f) { return covariant ? c.cod(f) : c.dom(f); };
  for (int f = 0; f < c.num_morphisms(); ++f) {
    const auto& t = x.action[static_cast<size_t>(f)];
    if (t.size() != static_cast<size_t>(x.value[static_cast<size_t>(src(f))])) fail(ErrorKind::Malformed, std::string(what) + " table of " + c.morphism_id(f) + " has the wrong size");
    for (int v : t)
      if (v < 0 || v >= x.value[static_cast<size_t>(dst(f))]) fail(ErrorKind::Malformed, std::string(what) + " value out of range for " + c.morphism_id(f));
  }
  for (int o = 0; o < c.num_objects(); ++o)
    for (int e = 0; e < x.value[static_cast<size_t>(o)]; ++e)
      if (x.action[static_cast<size_t>(c.identity(o))][static_cast<size_t>(e)] != e) fail(ErrorKind::Malformed, std::string(what) + " identity of " + c.object_id(o) + " moves an element");
  for (int f = 0; f < c.num_morphisms(); ++f)
    for (int g : c.out(c.cod(f))) {
      const int gf = c.compose(g, f);
      for (int e = 0; e < x.value[static_cast<size_t>(src(covariant ? f : g))]; ++e) {
        const int lhs = covariant ? x.action[static_cast<size_t>(g)][static_cast<size_t>(x.action[static_cast<size_t>(f)][static_cast<size_t>(e)])]
                                  : x.action[static_cast<size_t>(f)][static_cast<size_t>(x.action[static_cast<size_t>(g)][static_cast<size_t>(e)])];
        if (lhs != x.action[static_cast<size_t>(gf)][static_cast<size_t>(e)])
          fail(ErrorKind::Malformed, std::string(what) + " does not respect " + c.morphism_id(g) + "∘" + c.morphism_id(f));
      }
    }
}

struct Cell {
  int object = -1;         // level 0
  std::vector<int> chain;  // level ≥ 1, first morphism applied first
  int x = 0, y = 0;
};

int first_object(const FinCategory& c, const Cell& k) { return k.chain.empty() ? k.object : c.dom(k.chain.front()); }
int last_object(const FinCategory& c, const Cell& k) { return k.chain.empty() ? k.object : c.cod(k.chain.back()); }

std::string cell_id(const FinCategory& c, const Cell& k) {
  std::string s = std::to_string(k.x) + ";";
  if (k.chain.empty()) {
    s += c.object_id(k.object);
  } else {
    for (size_t i = 0; i < k.chain.size(); ++i) s += (i ? "|" : "") + c.morphism_id(k.chain[i]);
  }
  return s + ";" + std::to_string(k.y);
}

std::vector<std::vector<int>> chains(const FinCategory& c, int n) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  std::function<void(int)> rec = [&](int k) {
    if (k == n) {
      out.push_back(cur);
      return;
    }
    const std::vector<int> next = k == 0 ? [&] {
      std::vector<int> all(static_cast<size_t>(c.num_morphisms()));
      for (int f = 0; f < c.num_morphisms(); ++f) all[static_cast<size_t>(f)] = f;
      return all;
    }()
                                         : c.out(c.cod(cur.back()));
    for (int f : next) {
      cur.push_back(f);
      rec(k + 1);
      cur.pop_back();
    }
  };
  rec(0);
  return out;
}

std::vector<std::vector<Cell>> bar_cells(const FinCategory& c, const std::vector<int>& xv, const std::vector<int>& yv, int n_max) {
  std::vector<std::vector<Cell>> levels(static_cast<size_t>(n_max + 1));
  EnumBudget budget("bar construction");
  for (int n = 0; n <= n_max; ++n) {
    std::vector<Cell> shapes;
    if (n == 0) {
      for (int o = 0; o < c.num_objects(); ++o) shapes.push_back({o, {}, 0, 0});
    } else {
      for (auto& ch : chains(c, n)) shapes.push_back({-1, ch, 0, 0});
    }
    for (const Cell& s : shapes)
      for (int x = 0; x < xv[static_cast<size_t>(first_object(c, s))]; ++x)
        for (int y = 0; y < yv[static_cast<size_t>(last_object(c, s))]; ++y) {
          budget.tick();
          levels[static_cast<size_t>(n)].push_back({s.object, s.chain, x, y});
        }
  }
  return levels;
}

Cell cell_face(const FinCategory& c, const CModule& x, const CComodule& y, const Cell& k, int i) {
  const int n = static_cast<int>(k.chain.size());
  Cell r = k;
  if (i == 0) {
    r.x = x.action[static_cast<size_t>(k.chain.front())][static_cast<size_t>(k.x)];
    r.chain.erase(r.chain.begin());
    if (n == 1) r.object = c.cod(k.chain.front());
  } else if (i == n) {
    r.y = y.action[static_cast<size_t>(k.chain.back())][static_cast<size_t>(k.y)];
    r.chain.pop_back();
    if (n == 1) r.object = c.dom(k.chain.front());
  } else {
    r.chain[static_cast<size_t>(i - 1)] = c.compose(k.chain[static_cast<size_t>(i)], k.chain[static_cast<size_t>(i - 1)]);
    r.chain.erase(r.chain.begin() + i);
  }
  if (!r.chain.empty()) r.object = -1;
  return r;
}

Cell cell_degen(const FinCategory& c, const Cell& k, int i) {
  Cell r = k;
  const int obj = i == 0 ? first_object(c, k) : c.cod(k.chain[static_cast<size_t>(i - 1)]);
  r.chain.insert(r.chain.begin() + i, c.identity(obj));
  r.object = -1;
  return r;
}

}  // namespace

void validate_module(const CModule& x) { validate_action(x, true, "module"); }
void validate_comodule(const CComodule& y) { validate_action(y, false, "comodule"); }

CModule representable_module(const CatPtr& c, int object) {
  CModule m{c, {}, {}};
  for (int o = 0; o < c->num_objects(); ++o) m.value.push_back(static_cast<int>(c->hom(object, o).size()));
  for (int f = 0; f < c->num_morphisms(); ++f) {
    std::vector<int> t;
    for (int g : c->hom(object, c->dom(f))) t.push_back(index_in(c->hom(object, c->cod(f)), c->compose(f, g)));
    m.action.push_back(t);
  }
  return m;
}

CModule point_module(const CatPtr& c) {
  return {c, std::vector<int>(static_cast<size_t>(c->num_objects()), 1),
          std::vector<std::vector<int>>(static_cast<size_t>(c->num_morphisms()), std::vector<int>{0})};
}

CComodule point_comodule(const CatPtr& c) {
  return {c, std::vector<int>(static_cast<size_t>(c->num_objects()), 1),
          std::vector<std::vector<int>>(static_cast<size_t>(c->num_morphisms()), std::vector<int>{0})};
}

CComodule hom_into(const Functor& f, int d) {
  const FinCategory& c = *f.source;
  const FinCategory& t = *f.target;
  CComodule y{f.source, {}, {}};
  for (int o = 0; o < c.num_objects(); ++o) y.value.push_back(static_cast<int>(t.hom(f.on_object(o), d).size()));
  for (int a = 0; a < c.num_morphisms(); ++a) {
    std::vector<int> table;
    const auto& into_cod = t.hom(f.on_object(c.cod(a)), d);
    const auto& into_dom = t.hom(f.on_object(c.dom(a)), d);
    for (int g : into_cod) table.push_back(index_in(into_dom, t.compose(g, f(a))));
    y.action.push_back(table);
  }
  return y;
}

TruncSSet bar_construction(const CModule& x, const CComodule& y, int n_max) {
  const FinCategory& c = *x.base;
  const auto levels = bar_cells(c, x.value, y.value, n_max);
  TruncSSet s(n_max);
  for (int n = 0; n <= n_max; ++n)
    for (const Cell& k : levels[static_cast<size_t>(n)]) s.add(n, cell_id(c, k));
  for (int n = 0; n <= n_max; ++n)
    for (size_t idx = 0; idx < levels[static_cast<size_t>(n)].size(); ++idx) {
      const Cell& k = levels[static_cast<size_t>(n)][idx];
      if (n >= 1)
        for (int i = 0; i <= n; ++i) s.set_face(n, i, static_cast<int>(idx), s.find(n - 1, cell_id(c, cell_face(c, x, y, k, i))));
      if (n < n_max)
        for (int i = 0; i <= n; ++i) s.set_degen(n, i, static_cast<int>(idx), s.find(n + 1, cell_id(c, cell_degen(c, k, i))));
    }
  return s;
}

TruncSSet ho_kan_extension(const Functor& f, const CModule& x, int d, int n_max) {
  return bar_construction(x, hom_into(f, d), n_max);
}

CoendClasses kan_colim_oracle(const Functor& f, const CModule& x, int d) {
  const FinCategory& c = *f.source;
  const FinCategory& t = *f.target;
  CoendClasses out;
  std::map<std::tuple<int, int, int>, size_t> index;
  for (int o = 0; o < c.num_objects(); ++o)
    for (int e = 0; e < x.value[static_cast<size_t>(o)]; ++e)
      for (int g : t.hom(f.on_object(o), d)) {
        index[{o, e, g}] = out.object.size();
        out.object.push_back(o);
        out.element.push_back(e);
        out.arrow.push_back(g);
      }
  UnionFind uf(out.object.size());
  for (int a = 0; a < c.num_morphisms(); ++a)
    for (int e = 0; e < x.value[static_cast<size_t>(c.dom(a))]; ++e)
      for (int g : t.hom(f.on_object(c.cod(a)), d))
        uf.unite(index.at({c.cod(a), x.action[static_cast<size_t>(a)][static_cast<size_t>(e)], g}),
                 index.at({c.dom(a), e, t.compose(g, f(a))}));
  std::map<size_t, int> label_of;
  for (size_t k = 0; k < out.object.size(); ++k) {
    auto [it, fresh] = label_of.emplace(uf.find(k), static_cast<int>(label_of.size()));
    out.label.push_back(it->second);
  }
  out.count = static_cast<int>(label_of.size());
  return out;
}

std::vector<int> component_labels(const TruncSSet& s, int& count) {
  UnionFind uf(static_cast<size_t>(s.size(0)));
  if (s.dim() >= 1)
    for (int e = 0; e < s.size(1); ++e) uf.unite(static_cast<size_t>(s.face(1, 0, e)), static_cast<size_t>(s.face(1, 1, e)));
  std::map<size_t, int> label_of;
  std::vector<int> labels;
  for (int v = 0; v < s.size(0); ++v) labels.push_back(label_of.emplace(uf.find(static_cast<size_t>(v)), static_cast<int>(label_of.size())).first->second);
  count = static_cast<int>(label_of.size());
  return labels;
}

int compare_pi0(const Functor& f, const CModule& x, int d, int n_max) {
  const FinCategory& c = *f.source;
  const FinCategory& t = *f.target;
  const TruncSSet bar = ho_kan_extension(f, x, d, std::max(1, n_max));
  int components = 0;
  const auto labels = component_labels(bar, components);
  const CoendClasses coend = kan_colim_oracle(f, x, d);
  std::map<std::tuple<int, int, int>, int> coend_label;
  for (size_t k = 0; k < coend.object.size(); ++k) coend_label[{coend.object[k], coend.element[k], coend.arrow[k]}] = coend.label[k];
  // level 0 cells are (x; c; y) with y indexing D(f c, d)
  std::vector<int> image(static_cast<size_t>(components), -1);
  const auto cells = bar_cells(c, x.value, hom_into(f, d).value, 0)[0];
  for (size_t v = 0; v < cells.size(); ++v) {
    const Cell& k = cells[v];
    const int g = t.hom(f.on_object(k.object), d)[static_cast<size_t>(k.y)];
    const int lab = coend_label.at({k.object, k.x, g});
    int& slot = image[static_cast<size_t>(labels[v])];
    if (slot != -1 && slot != lab) fail(ErrorKind::OracleDisagreement, "a bar component meets two coend classes at " + bar.id(0, static_cast<int>(v)));
    slot = lab;
  }
  std::set<int> hit(image.begin(), image.end());
  if (components != coend.count || static_cast<int>(hit.size()) != components)
    fail(ErrorKind::OracleDisagreement, "pi0 of the bar construction has " + std::to_string(components) + " components but the coend has " +
                                            std::to_string(coend.count) + " classes");
  return components;
}

SimpMap bar_map(const std::vector<std::vector<int>>& eta_x, const std::vector<std::vector<int>>& eta_y,
                const SSetPtr& source, const SSetPtr& target, const CModule& x, const CComodule& y) {
  const FinCategory& c = *x.base;
  const auto levels = bar_cells(c, x.value, y.value, source->dim());
  SimpMap m{source, target, {}};
  for (int n = 0; n <= source->dim(); ++n) {
    std::vector<int> lm;
    for (Cell k : levels[static_cast<size_t>(n)]) {
      k.x = eta_x[static_cast<size_t>(first_object(c, k))][static_cast<size_t>(k.x)];
      k.y = eta_y[static_cast<size_t>(last_object(c, k))][static_cast<size_t>(k.y)];
      lm.push_back(target->find(n, cell_id(c, k)));
    }
    m.level_map.push_back(lm);
  }
  return m;
}

SeqOperators seq_operators(const std::vector<Word>& u, int j) {
  const int n = static_cast<int>(u.size()) - 1;
  if (j < 0 || j > n) fail(ErrorKind::IndexOutOfRange, "index " + std::to_string(j) + " outside 0.." + std::to_string(n));
  SeqOperators s;
  for (int i = 0; i <= n + 1; ++i) {
    s.star.push_back(i <= j ? u[static_cast<size_t>(i)] : u[static_cast<size_t>(i - 1)]);
    s.bar_after.push_back(i <= j ? u[static_cast<size_t>(i)] : Word{});
    s.bar_before.push_back(i <= j ? Word{} : u[static_cast<size_t>(i - 1)]);
  }
  return s;
}

}  // namespace moritakit

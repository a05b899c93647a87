#include "moritakit/theory.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <set>

#include "moritakit/error.hpp"
#include "moritakit/limits.hpp"
#include "moritakit/union_find.hpp"

namespace moritakit {

std::vector<std::vector<int>> ordered_colour_maps(const Word& b, const Word& c) {
  std::vector<std::vector<int>> out;
  std::vector<int> f(b.size());
  std::function<void(size_t, int)> rec = [&](size_t i, int lo) {
    if (i == b.size()) {
      out.push_back(f);
      return;
    }
    for (int j = lo; j < static_cast<int>(c.size()); ++j)
      if (c[static_cast<size_t>(j)] == b[i]) {
        f[i] = j;
        rec(i + 1, j);
      }
  };
  rec(0, 0);
  return out;
}

std::vector<Perm> fiber_stabilizer(const std::vector<int>& f) {
  std::vector<Perm> out;
  for (const Perm& s : all_perms(static_cast<int>(f.size()))) {
    bool fixes = true;
    for (size_t i = 0; i < f.size() && fixes; ++i) fixes = f[static_cast<size_t>(s[i])] == f[i];
    if (fixes) out.push_back(s);
  }
  return out;
}

namespace {

// Σ_f for a monotone f: independent permutations of each constant block.
void for_each_block_perm(const std::vector<int>& f, const std::function<void(const Perm&)>& fn) {
  std::vector<std::pair<int, int>> blocks;
  for (size_t i = 0; i < f.size();) {
    size_t j = i;
    while (j < f.size() && f[j] == f[i]) ++j;
    if (j - i > 1) blocks.push_back({static_cast<int>(i), static_cast<int>(j)});
    i = j;
  }
  Perm p = identity_perm(static_cast<int>(f.size()));
  std::function<void(size_t)> rec = [&](size_t k) {
    if (k == blocks.size()) {
      fn(p);
      return;
    }
    const auto [lo, hi] = blocks[k];
    std::sort(p.begin() + lo, p.begin() + hi);
    do {
      rec(k + 1);
    } while (std::next_permutation(p.begin() + lo, p.begin() + hi));
  };
  rec(0);
}

Perm sorting_perm(const std::vector<int>& map) {
  Perm s(map.size());
  std::iota(s.begin(), s.end(), 0);
  std::stable_sort(s.begin(), s.end(), [&](int x, int y) { return map[static_cast<size_t>(x)] < map[static_cast<size_t>(y)]; });
  return s;
}

}  // namespace

TheoryClass canonical_class(const SymOperad& o, const std::vector<int>& map, int op) {
  TheoryClass k{map, op};
  for_each_block_perm(map, [&](const Perm& s) { k.op = std::min(k.op, o.act(op, s)); });
  return k;
}

TheoryClass class_of_term(const SymOperad& o, const std::vector<int>& map, int op) {
  // (p, g) ~ (p·σ, g∘σ); σ sorts g
  const Perm s = sorting_perm(map);
  std::vector<int> sorted(map.size());
  for (size_t i = 0; i < map.size(); ++i) sorted[i] = map[static_cast<size_t>(s[i])];
  return canonical_class(o, sorted, o.act(op, s));
}

std::vector<TheoryClass> clone_hom(const SymOperad& o, const Word& c, int d, bool oracle) {
  std::set<TheoryClass> classes;
  for (int op : o.ops_into(d))
    for (const auto& f : ordered_colour_maps(o.inputs(op), c)) classes.insert(canonical_class(o, f, op));
  std::vector<TheoryClass> out(classes.begin(), classes.end());
  if (oracle) {
    const size_t colimit = comma_colimit_size(o, c, d);
    if (colimit != out.size())
      fail(ErrorKind::OracleDisagreement, "clone hom " + word_string(o, c) + " -> " + o.colour_id(d) + " has " + std::to_string(out.size()) +
                                              " classes but the comma colimit has " + std::to_string(colimit));
  }
  return out;
}

size_t comma_colimit_size(const SymOperad& o, const Word& c, int d) {
  // vertices: (op, any colour-compatible map); edges: (o, g) ~ (o·σ, g∘σ)
  std::map<std::pair<int, std::vector<int>>, size_t> index;
  std::vector<std::pair<int, std::vector<int>>> vertices;
  EnumBudget budget("comma colimit");
  for (int op : o.ops_into(d)) {
    const auto& in = o.inputs(op);
    std::vector<int> g(in.size());
    std::function<void(size_t)> rec = [&](size_t i) {
      if (i == in.size()) {
        budget.tick();
        index[{op, g}] = vertices.size();
        vertices.push_back({op, g});
        return;
      }
      for (size_t j = 0; j < c.size(); ++j)
        if (c[j] == in[i]) {
          g[i] = static_cast<int>(j);
          rec(i + 1);
        }
    };
    rec(0);
  }
  UnionFind uf(vertices.size());
  for (size_t v = 0; v < vertices.size(); ++v) {
    const auto& [op, g] = vertices[v];
    for (const Perm& s : all_perms(static_cast<int>(g.size()))) {
      std::vector<int> gs(g.size());
      for (size_t i = 0; i < g.size(); ++i) gs[i] = g[static_cast<size_t>(s[i])];
      uf.unite(v, index.at({o.act(op, s), gs}));
    }
  }
  return uf.count_classes();
}

bool TheoryArrow::operator<(const TheoryArrow& o) const {
  if (source != o.source) return source < o.source;
  if (target != o.target) return target < o.target;
  return components < o.components;
}

size_t theory_hom_size(const SymOperad& o, const Word& c, const Word& d) {
  size_t n = 1;
  for (int x : d) n *= clone_hom(o, c, x).size();
  return n;
}

std::vector<TheoryArrow> theory_hom(const SymOperad& o, const Word& c, const Word& d) {
  std::vector<std::vector<TheoryClass>> per;
  for (int x : d) per.push_back(clone_hom(o, c, x));
  std::vector<TheoryArrow> out;
  TheoryArrow cur{c, d, std::vector<TheoryClass>(d.size())};
  EnumBudget budget("theory hom");
  std::function<void(size_t)> rec = [&](size_t i) {
    if (i == d.size()) {
      budget.tick();
      out.push_back(cur);
      return;
    }
    for (const auto& k : per[i]) {
      cur.components[i] = k;
      rec(i + 1);
    }
  };
  rec(0);
  return out;
}

TheoryArrow identity_arrow(const SymOperad& o, const Word& c) {
  TheoryArrow a{c, c, {}};
  for (size_t j = 0; j < c.size(); ++j) a.components.push_back({{static_cast<int>(j)}, o.identity(c[j])});
  return a;
}

TheoryArrow projection_arrow(const SymOperad& o, const Word& u, const Word& v, int which) {
  Word uv = u;
  uv.insert(uv.end(), v.begin(), v.end());
  const Word& part = which == 0 ? u : v;
  const int shift = which == 0 ? 0 : static_cast<int>(u.size());
  TheoryArrow a{uv, part, {}};
  for (size_t j = 0; j < part.size(); ++j) a.components.push_back({{shift + static_cast<int>(j)}, o.identity(part[j])});
  return a;
}

TheoryArrow diagonal_arrow(const SymOperad& o, const Word& u) {
  Word uu = u;
  uu.insert(uu.end(), u.begin(), u.end());
  TheoryArrow a{u, uu, {}};
  for (size_t j = 0; j < uu.size(); ++j) a.components.push_back({{static_cast<int>(j % u.size())}, o.identity(uu[j])});
  return a;
}

TheoryArrow product_arrow(const TheoryArrow& a, const TheoryArrow& b) {
  TheoryArrow p{a.source, a.target, a.components};
  p.source.insert(p.source.end(), b.source.begin(), b.source.end());
  p.target.insert(p.target.end(), b.target.begin(), b.target.end());
  const int shift = static_cast<int>(a.source.size());
  for (auto k : b.components) {
    for (int& x : k.map) x += shift;
    p.components.push_back(k);
  }
  return p;
}

TheoryArrow compose_theory(const SymOperad& o, const TheoryArrow& h, const TheoryArrow& g, std::mt19937_64* rng) {
  if (h.source != g.target) fail(ErrorKind::Malformed, "theory arrows are not composable");
  TheoryArrow out{g.source, h.target, {}};
  for (const auto& comp : h.components) {
    int op = comp.op;
    if (rng) {
      std::vector<Perm> stab;
      for_each_block_perm(comp.map, [&](const Perm& s) { stab.push_back(s); });
      op = o.act(op, stab[std::uniform_int_distribution<size_t>(0, stab.size() - 1)(*rng)]);
    }
    std::vector<int> inners, map;
    for (int j : comp.map) {
      const auto& inner = g.components[static_cast<size_t>(j)];
      inners.push_back(inner.op);
      map.insert(map.end(), inner.map.begin(), inner.map.end());
    }
    out.components.push_back(class_of_term(o, map, o.compose(op, inners)));
  }
  return out;
}

Word map_word(const OperadMap& f, const Word& w) {
  Word out;
  for (int c : w) out.push_back(f.on_colour(c));
  return out;
}

TheoryArrow induced_theory_map(const OperadMap& f, const TheoryArrow& a) {
  TheoryArrow out{map_word(f, a.source), map_word(f, a.target), {}};
  for (const auto& k : a.components) out.components.push_back(canonical_class(*f.target, k.map, f(k.op)));
  return out;
}

bool induced_bijective(const OperadMap& f, const Word& c, int d) {
  const auto src = clone_hom(*f.source, c, d);
  const auto dst = clone_hom(*f.target, map_word(f, c), f.on_colour(d));
  std::set<TheoryClass> image;
  for (const auto& k : src) image.insert(canonical_class(*f.target, k.map, f(k.op)));
  return image.size() == src.size() && image.size() == dst.size();
}

std::optional<std::pair<TheoryArrow, TheoryArrow>> retract_in_theory(const SymOperad& o, int c, const Word& d) {
  const Word cw{c};
  const TheoryArrow id = identity_arrow(o, cw);
  const auto is = theory_hom(o, cw, d);
  const auto rs = theory_hom(o, d, cw);
  EnumBudget budget("theory retract search");
  for (const auto& r : rs)
    for (const auto& i : is) {
      budget.tick();
      if (compose_theory(o, r, i) == id) return std::make_pair(r, i);
    }
  return std::nullopt;
}

std::optional<TheoryRetract> is_retract_in_theory(const SymOperad& o, int c, int length_bound) {
  for (const Word& w : words_up_to(o.num_colours(), length_bound)) {
    if (w.empty()) continue;
    if (auto ri = retract_in_theory(o, c, w)) return TheoryRetract{w, ri->first, ri->second};
  }
  return std::nullopt;
}

std::vector<Word> words_up_to(int num_colours, int bound) {
  std::vector<Word> out{{}};
  for (int len = 1; len <= bound; ++len) {
    Word w(static_cast<size_t>(len), 0);
    if (num_colours == 0) break;
    while (true) {
      out.push_back(w);
      int k = len - 1;
      while (k >= 0 && w[static_cast<size_t>(k)] == num_colours - 1) w[static_cast<size_t>(k--)] = 0;
      if (k < 0) break;
      ++w[static_cast<size_t>(k)];
    }
  }
  return out;
}

bool is_product_preserving(const WordModel& x) {
  for (const auto& [w, n] : x.size) {
    if (w.size() == 1) continue;
    std::vector<int> radix;
    for (int c : w) {
      auto it = x.size.find(Word{c});
      if (it == x.size.end()) return false;
      radix.push_back(it->second);
    }
    long total = 1;
    for (int r : radix) total *= r;
    if (total != n) return false;
    std::vector<char> hit(static_cast<size_t>(total), 0);
    for (int e = 0; e < n; ++e) {
      long code = 0;
      for (size_t i = 0; i < w.size(); ++i) {
        auto it = x.projection.find({w, static_cast<int>(i)});
        if (it == x.projection.end()) return false;
        code = code * radix[i] + it->second[static_cast<size_t>(e)];
      }
      if (hit[static_cast<size_t>(code)]) return false;
      hit[static_cast<size_t>(code)] = 1;
    }
  }
  return true;
}

WordModel algebra_word_model(const SymOperad& o, const FiniteAlgebra& a, int word_bound) {
  WordModel x;
  for (const Word& w : words_up_to(o.num_colours(), word_bound)) {
    int n = 1;
    for (int c : w) n *= a.carrier[static_cast<size_t>(c)];
    x.size[w] = n;
    for (size_t i = 0; i < w.size(); ++i) {
      std::vector<int> table(static_cast<size_t>(n));
      int stride = 1;
      for (size_t k = i + 1; k < w.size(); ++k) stride *= a.carrier[static_cast<size_t>(w[k])];
      for (int e = 0; e < n; ++e) table[static_cast<size_t>(e)] = (e / stride) % a.carrier[static_cast<size_t>(w[i])];
      x.projection[{w, static_cast<int>(i)}] = table;
    }
  }
  return x;
}

WordModel corepresentable_word_model(const SymOperad& o, const Word& c, int word_bound) {
  WordModel x;
  for (const Word& w : words_up_to(o.num_colours(), word_bound)) {
    const auto arrows = theory_hom(o, c, w);
    x.size[w] = static_cast<int>(arrows.size());
    for (size_t i = 0; i < w.size(); ++i) {
      const Word before(w.begin(), w.begin() + static_cast<long>(i));
      const Word rest(w.begin() + static_cast<long>(i), w.end());
      // π_i as the composite w → rest → (w_i)
      const TheoryArrow pi = compose_theory(o, projection_arrow(o, Word{w[i]}, Word(rest.begin() + 1, rest.end()), 0),
                                            projection_arrow(o, before, rest, 1));
      const auto targets = theory_hom(o, c, Word{w[i]});
      std::vector<int> table;
      for (const auto& a : arrows) {
        const TheoryArrow p = compose_theory(o, pi, a);
        table.push_back(static_cast<int>(std::lower_bound(targets.begin(), targets.end(), p) - targets.begin()));
      }
      x.projection[{w, static_cast<int>(i)}] = table;
    }
  }
  return x;
}

std::string word_string(const SymOperad& o, const Word& w) {
  if (w.empty()) return "[-]";
  std::string s = "(";
  for (size_t i = 0; i < w.size(); ++i) s += (i ? "," : "") + o.colour_id(w[i]);
  return s + ")";
}

std::string class_string(const SymOperad& o, const Word& c, const TheoryClass& k) {
  std::string s = "[f=(";
  Word b;
  for (size_t i = 0; i < k.map.size(); ++i) {
    s += (i ? "," : "") + std::to_string(k.map[i] + 1);
    b.push_back(c[static_cast<size_t>(k.map[i])]);
  }
  return s + "), b=" + word_string(o, b) + ", " + o.op_id(k.op) + "]";
}

std::string arrow_string(const SymOperad& o, const TheoryArrow& a) {
  std::string s = "{";
  for (size_t i = 0; i < a.components.size(); ++i) s += (i ? "; " : "") + class_string(o, a.source, a.components[i]);
  return s + "}";
}

}  // namespace moritakit

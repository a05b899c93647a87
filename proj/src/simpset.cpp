#include "moritakit/simpset.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "moritakit/error.hpp"
#include "moritakit/limits.hpp"
#include "moritakit/union_find.hpp"

namespace moritakit {

TruncSSet::TruncSSet(int dim) : dim_(dim) {
  if (dim < 0) fail(ErrorKind::BadParameters, "negative truncation dimension");
  const size_t levels = static_cast<size_t>(dim) + 1;
  ids_.resize(levels);
  index_.resize(levels);
  face_.resize(levels);
  degen_.resize(levels);
  for (size_t n = 0; n < levels; ++n) {
    face_[n].resize(n == 0 ? 0 : n + 1);
    degen_[n].resize(static_cast<int>(n) < dim ? n + 1 : 0);
  }
}

int TruncSSet::find(int n, const std::string& id) const {
  const auto& idx = index_[static_cast<size_t>(n)];
  auto it = idx.find(id);
  return it == idx.end() ? -1 : it->second;
}

int TruncSSet::add(int n, const std::string& id) {
  auto& idx = index_[static_cast<size_t>(n)];
  if (idx.count(id)) fail(ErrorKind::IllFormed, "duplicate simplex '" + id + "' at level " + std::to_string(n));
  const int x = size(n);
  idx[id] = x;
  ids_[static_cast<size_t>(n)].push_back(id);
  for (auto& f : face_[static_cast<size_t>(n)]) f.push_back(-1);
  for (auto& s : degen_[static_cast<size_t>(n)]) s.push_back(-1);
  return x;
}

void TruncSSet::set_face(int n, int k, int x, int y) {
  face_[static_cast<size_t>(n)][static_cast<size_t>(k)][static_cast<size_t>(x)] = y;
}

void TruncSSet::set_degen(int n, int k, int x, int y) {
  degen_[static_cast<size_t>(n)][static_cast<size_t>(k)][static_cast<size_t>(x)] = y;
}

namespace {

std::string where(int n, int x, const TruncSSet& s) {
  return "level " + std::to_string(n) + " simplex '" + s.id(n, x) + "'";
}

}  // namespace

void validate_sset(const TruncSSet& s) {
  const int D = s.dim();
  for (int n = 0; n <= D; ++n)
    for (int x = 0; x < s.size(n); ++x) {
      for (int k = 0; n > 0 && k <= n; ++k) {
        int y = s.face(n, k, x);
        if (y < 0 || y >= s.size(n - 1)) fail(ErrorKind::IllFormed, "d_" + std::to_string(k) + " undefined on " + where(n, x, s));
      }
      for (int k = 0; n < D && k <= n; ++k) {
        int y = s.degen(n, k, x);
        if (y < 0 || y >= s.size(n + 1)) fail(ErrorKind::IllFormed, "s_" + std::to_string(k) + " undefined on " + where(n, x, s));
      }
    }
  for (int n = 0; n <= D; ++n)
    for (int x = 0; x < s.size(n); ++x) {
      // d_i d_j = d_{j-1} d_i for i < j
      for (int j = 1; n >= 2 && j <= n; ++j)
        for (int i = 0; i < j; ++i)
          if (s.face(n - 1, i, s.face(n, j, x)) != s.face(n - 1, j - 1, s.face(n, i, x)))
            fail(ErrorKind::IllFormed, "d_" + std::to_string(i) + "d_" + std::to_string(j) + " relation fails on " + where(n, x, s));
      if (n < D) {
        for (int j = 0; j <= n; ++j) {
          const int sx = s.degen(n, j, x);
          for (int i = 0; i <= n + 1; ++i) {
            const int lhs = s.face(n + 1, i, sx);
            int rhs;
            if (i == j || i == j + 1)
              rhs = x;
            else if (n == 0)
              continue;
            else if (i < j)
              rhs = s.degen(n - 1, j - 1, s.face(n, i, x));
            else
              rhs = s.degen(n - 1, j, s.face(n, i - 1, x));
            if (lhs != rhs)
              fail(ErrorKind::IllFormed, "d_" + std::to_string(i) + "s_" + std::to_string(j) + " relation fails on " + where(n, x, s));
          }
        }
      }
      // s_i s_j = s_{j+1} s_i for i ≤ j
      for (int j = 0; n + 2 <= D && j <= n; ++j)
        for (int i = 0; i <= j; ++i)
          if (s.degen(n + 1, i, s.degen(n, j, x)) != s.degen(n + 1, j + 1, s.degen(n, i, x)))
            fail(ErrorKind::IllFormed, "s_" + std::to_string(i) + "s_" + std::to_string(j) + " relation fails on " + where(n, x, s));
    }
}

void validate_simp_map(const SimpMap& f) {
  const TruncSSet& a = *f.source;
  const TruncSSet& b = *f.target;
  if (a.dim() != b.dim()) fail(ErrorKind::IllFormed, "simplicial map between different truncations");
  const int D = a.dim();
  if (f.level_map.size() != static_cast<size_t>(D) + 1) fail(ErrorKind::IllFormed, "simplicial map misses levels");
  for (int n = 0; n <= D; ++n) {
    if (f.level_map[static_cast<size_t>(n)].size() != static_cast<size_t>(a.size(n)))
      fail(ErrorKind::IllFormed, "simplicial map not total at level " + std::to_string(n));
    for (int x = 0; x < a.size(n); ++x) {
      const int y = f(n, x);
      if (y < 0 || y >= b.size(n)) fail(ErrorKind::IllFormed, "image out of range for " + where(n, x, a));
      for (int k = 0; n > 0 && k <= n; ++k)
        if (b.face(n, k, y) != f(n - 1, a.face(n, k, x)))
          fail(ErrorKind::IllFormed, "map does not commute with d_" + std::to_string(k) + " on " + where(n, x, a));
      for (int k = 0; n < D && k <= n; ++k)
        if (b.degen(n, k, y) != f(n + 1, a.degen(n, k, x)))
          fail(ErrorKind::IllFormed, "map does not commute with s_" + std::to_string(k) + " on " + where(n, x, a));
    }
  }
}

SimpMap compose_maps(const SimpMap& g, const SimpMap& f) {
  SimpMap h{f.source, g.target, f.level_map};
  for (size_t n = 0; n < h.level_map.size(); ++n)
    for (auto& x : h.level_map[n]) x = g(static_cast<int>(n), x);
  return h;
}

SimpMap identity_map(const SSetPtr& x) {
  SimpMap f{x, x, {}};
  for (int n = 0; n <= x->dim(); ++n) {
    std::vector<int> m(static_cast<size_t>(x->size(n)));
    std::iota(m.begin(), m.end(), 0);
    f.level_map.push_back(std::move(m));
  }
  return f;
}

bool maps_equal(const SimpMap& a, const SimpMap& b) { return a.level_map == b.level_map; }

// ---- nerves

std::string chain_id(const FinCategory& c, const std::vector<int>& chain) {
  std::string s;
  for (size_t k = 0; k < chain.size(); ++k) {
    if (k) s += "|";
    s += c.morphism_id(chain[k]);
  }
  return s;
}

TruncSSet nerve(const FinCategory& c, int dim) {
  TruncSSet s(dim);
  std::vector<std::vector<std::vector<int>>> chains(static_cast<size_t>(dim) + 1);
  std::vector<std::map<std::vector<int>, int>> index(static_cast<size_t>(dim) + 1);
  for (int x = 0; x < c.num_objects(); ++x) {
    index[0][{x}] = s.add(0, c.object_id(x));
    chains[0].push_back({x});
  }
  for (int n = 1; n <= dim; ++n)
    for (const auto& prev : chains[static_cast<size_t>(n - 1)]) {
      const int last = n == 1 ? prev[0] : c.cod(prev.back());
      for (int f : c.out(last)) {
        std::vector<int> ch = n == 1 ? std::vector<int>{} : prev;
        ch.push_back(f);
        index[static_cast<size_t>(n)][ch] = s.add(n, chain_id(c, ch));
        chains[static_cast<size_t>(n)].push_back(ch);
      }
    }
  auto lookup = [&](int n, const std::vector<int>& ch) { return index[static_cast<size_t>(n)].at(ch); };
  for (int n = 1; n <= dim; ++n)
    for (int x = 0; x < s.size(n); ++x) {
      const auto& ch = chains[static_cast<size_t>(n)][static_cast<size_t>(x)];
      for (int k = 0; k <= n; ++k) {
        int y;
        if (n == 1) {
          y = lookup(0, {k == 0 ? c.cod(ch[0]) : c.dom(ch[0])});
        } else {
          std::vector<int> f;
          if (k == 0)
            f.assign(ch.begin() + 1, ch.end());
          else if (k == n)
            f.assign(ch.begin(), ch.end() - 1);
          else {
            f = ch;
            f[static_cast<size_t>(k - 1)] = c.compose(ch[static_cast<size_t>(k)], ch[static_cast<size_t>(k - 1)]);
            f.erase(f.begin() + k);
          }
          y = lookup(n - 1, f);
        }
        s.set_face(n, k, x, y);
      }
    }
  for (int n = 0; n < dim; ++n)
    for (int x = 0; x < s.size(n); ++x) {
      const auto& ch = chains[static_cast<size_t>(n)][static_cast<size_t>(x)];
      for (int k = 0; k <= n; ++k) {
        std::vector<int> g;
        if (n == 0) {
          g = {c.identity(ch[0])};
        } else {
          const int vertex = k == 0 ? c.dom(ch[0]) : c.cod(ch[static_cast<size_t>(k - 1)]);
          g = ch;
          g.insert(g.begin() + k, c.identity(vertex));
        }
        s.set_degen(n, k, x, lookup(n + 1, g));
      }
    }
  return s;
}

SSetPtr nerve_ptr(const FinCategory& c, int dim) { return std::make_shared<const TruncSSet>(nerve(c, dim)); }

SimpMap nerve_map(const Functor& f, const SSetPtr& sn, const SSetPtr& tn) {
  SimpMap m{sn, tn, {}};
  const FinCategory& s = *f.source;
  const FinCategory& t = *f.target;
  for (int n = 0; n <= sn->dim(); ++n) {
    std::vector<int> level;
    for (int x = 0; x < sn->size(n); ++x) {
      std::string img;
      if (n == 0) {
        img = t.object_id(f.on_object(s.object(sn->id(0, x))));
      } else {
        std::vector<int> ch;
        std::stringstream ss(sn->id(n, x));
        std::string part;
        while (std::getline(ss, part, '|')) ch.push_back(f(s.morphism(part)));
        img = chain_id(t, ch);
      }
      level.push_back(tn->find(n, img));
    }
    m.level_map.push_back(std::move(level));
  }
  return m;
}

// ---- standard cells

std::string tuple_id(const std::vector<int>& t) {
  std::string s;
  for (size_t k = 0; k < t.size(); ++k) {
    if (k) s += ",";
    s += std::to_string(t[k]);
  }
  return s;
}

namespace {

std::vector<int> parse_tuple(const std::string& id) {
  std::vector<int> t;
  std::stringstream ss(id);
  std::string part;
  while (std::getline(ss, part, ',')) t.push_back(std::stoi(part));
  return t;
}

// monotone tuples of length m+1 with entries in [0, n]
void monotone_tuples(int m, int n, std::vector<std::vector<int>>& out) {
  std::vector<int> t(static_cast<size_t>(m) + 1, 0);
  std::function<void(int, int)> rec = [&](int pos, int lo) {
    if (pos == m + 1) {
      out.push_back(t);
      return;
    }
    for (int v = lo; v <= n; ++v) {
      t[static_cast<size_t>(pos)] = v;
      rec(pos + 1, v);
    }
  };
  rec(0, 0);
}

TruncSSet cells_from(int n, int dim, const std::function<bool(const std::vector<int>&)>& keep) {
  TruncSSet s(dim);
  for (int m = 0; m <= dim; ++m) {
    std::vector<std::vector<int>> ts;
    monotone_tuples(m, n, ts);
    for (const auto& t : ts)
      if (keep(t)) s.add(m, tuple_id(t));
  }
  for (int m = 0; m <= dim; ++m)
    for (int x = 0; x < s.size(m); ++x) {
      const auto t = parse_tuple(s.id(m, x));
      for (int k = 0; m > 0 && k <= m; ++k) {
        auto f = t;
        f.erase(f.begin() + k);
        s.set_face(m, k, x, s.find(m - 1, tuple_id(f)));
      }
      for (int k = 0; m < dim && k <= m; ++k) {
        auto g = t;
        g.insert(g.begin() + k, t[static_cast<size_t>(k)]);
        s.set_degen(m, k, x, s.find(m + 1, tuple_id(g)));
      }
    }
  return s;
}

bool parse_call(const std::string& name, const std::string& head, std::vector<int>& args) {
  if (name.rfind(head + "(", 0) != 0 || name.back() != ')') return false;
  const std::string inner = name.substr(head.size() + 1, name.size() - head.size() - 2);
  args.clear();
  std::stringstream ss(inner);
  std::string part;
  while (std::getline(ss, part, ',')) {
    if (part.empty() || part.size() > 3 || !std::all_of(part.begin(), part.end(), ::isdigit)) return false;
    args.push_back(std::stoi(part));
  }
  return true;
}

}  // namespace

TruncSSet standard_cells(const std::string& name, int dim) {
  std::vector<int> args;
  if (name == "empty") return cells_from(0, dim, [](const std::vector<int>&) { return false; });
  if (parse_call(name, "simplex", args) && args.size() == 1)
    return cells_from(args[0], dim, [](const std::vector<int>&) { return true; });
  if (parse_call(name, "boundary", args) && args.size() == 1) {
    const int n = args[0];
    if (n < 1) fail(ErrorKind::BadParameters, "boundary(n) needs n ≥ 1");
    return cells_from(n, dim, [n](const std::vector<int>& t) {
      std::vector<char> hit(static_cast<size_t>(n) + 1, 0);
      for (int v : t) hit[static_cast<size_t>(v)] = 1;
      return std::count(hit.begin(), hit.end(), 1) < n + 1;
    });
  }
  if (parse_call(name, "horn", args) && args.size() == 2) {
    const int n = args[0], k = args[1];
    if (n < 1 || k < 0 || k > n) fail(ErrorKind::BadParameters, "horn(n,k) needs n ≥ 1 and 0 ≤ k ≤ n");
    return cells_from(n, dim, [n, k](const std::vector<int>& t) {
      std::vector<char> hit(static_cast<size_t>(n) + 1, 0);
      for (int v : t) hit[static_cast<size_t>(v)] = 1;
      for (int i = 0; i <= n; ++i)
        if (i != k && !hit[static_cast<size_t>(i)]) return true;
      return false;
    });
  }
  fail(ErrorKind::BadParameters, "unknown cell '" + name + "'");
}

SSetPtr standard_cells_ptr(const std::string& name, int dim) {
  return std::make_shared<const TruncSSet>(standard_cells(name, dim));
}

int apply_operator(const TruncSSet& x, int n, int simplex, const std::vector<int>& t) {
  std::vector<int> image(t);
  image.erase(std::unique(image.begin(), image.end()), image.end());
  int cur = simplex, level = n;
  for (int j = n; j >= 0; --j)
    if (!std::binary_search(image.begin(), image.end(), j)) cur = x.face(level--, j, cur);
  // cur is now the face spanned by the image; insert the repeats
  for (size_t p = 0; p + 1 < t.size(); ++p)
    if (t[p] == t[p + 1]) cur = x.degen(level++, static_cast<int>(p), cur);
  return cur;
}

SimpMap classifying_map(const SSetPtr& delta_n, int n, const SSetPtr& x, int simplex) {
  SimpMap f{delta_n, x, {}};
  for (int m = 0; m <= delta_n->dim(); ++m) {
    std::vector<int> level;
    for (int s = 0; s < delta_n->size(m); ++s) level.push_back(apply_operator(*x, n, simplex, parse_tuple(delta_n->id(m, s))));
    f.level_map.push_back(std::move(level));
  }
  return f;
}

SimpMap simplex_operator_map(const SSetPtr& delta_m, const SSetPtr& delta_n, const std::vector<int>& t) {
  SimpMap f{delta_m, delta_n, {}};
  for (int k = 0; k <= delta_m->dim(); ++k) {
    std::vector<int> level;
    for (int s = 0; s < delta_m->size(k); ++s) {
      std::vector<int> u = parse_tuple(delta_m->id(k, s));
      for (int& v : u) v = t[static_cast<size_t>(v)];
      level.push_back(delta_n->find(k, tuple_id(u)));
    }
    f.level_map.push_back(std::move(level));
  }
  return f;
}

// ---- pushouts

Pushout pushout(const SimpMap& f, const SimpMap& g) {
  const TruncSSet& a = *f.source;
  const TruncSSet& b = *f.target;
  const TruncSSet& c = *g.target;
  if (f.source != g.source && a.dim() != g.source->dim()) fail(ErrorKind::IllFormed, "pushout legs have different sources");
  const int D = a.dim();
  if (b.dim() != D || c.dim() != D) fail(ErrorKind::IllFormed, "pushout of different truncations");

  TruncSSet p(D);
  std::vector<std::vector<int>> class_of(static_cast<size_t>(D) + 1);  // B ⊔ C element -> simplex of P
  std::vector<std::vector<std::vector<int>>> members(static_cast<size_t>(D) + 1);
  for (int n = 0; n <= D; ++n) {
    const size_t nb = static_cast<size_t>(b.size(n)), nc = static_cast<size_t>(c.size(n));
    UnionFind uf(nb + nc);
    for (int x = 0; x < a.size(n); ++x) uf.unite(static_cast<size_t>(f(n, x)), nb + static_cast<size_t>(g(n, x)));
    auto label = [&](size_t e) { return e < nb ? "0:" + b.id(n, static_cast<int>(e)) : "1:" + c.id(n, static_cast<int>(e - nb)); };
    std::map<size_t, std::string> rep_label;
    for (size_t e = 0; e < nb + nc; ++e) {
      const size_t r = uf.find(e);
      const std::string l = label(e);
      auto it = rep_label.find(r);
      if (it == rep_label.end() || l < it->second) rep_label[r] = l;
    }
    std::vector<std::pair<std::string, size_t>> classes;
    for (const auto& [r, l] : rep_label) classes.push_back({l, r});
    std::sort(classes.begin(), classes.end());
    std::map<size_t, int> index;
    for (const auto& [l, r] : classes) index[r] = p.add(n, l);
    auto& cls = class_of[static_cast<size_t>(n)];
    cls.resize(nb + nc);
    members[static_cast<size_t>(n)].assign(classes.size(), {});
    for (size_t e = 0; e < nb + nc; ++e) {
      cls[e] = index[uf.find(e)];
      members[static_cast<size_t>(n)][static_cast<size_t>(cls[e])].push_back(static_cast<int>(e));
    }
  }
  auto element_face = [&](int n, int k, int e) {
    const int nb = b.size(n);
    const int y = e < nb ? b.face(n, k, e) : b.size(n - 1) + c.face(n, k, e - nb);
    return class_of[static_cast<size_t>(n - 1)][static_cast<size_t>(y)];
  };
  auto element_degen = [&](int n, int k, int e) {
    const int nb = b.size(n);
    const int y = e < nb ? b.degen(n, k, e) : b.size(n + 1) + c.degen(n, k, e - nb);
    return class_of[static_cast<size_t>(n + 1)][static_cast<size_t>(y)];
  };
  for (int n = 0; n <= D; ++n)
    for (int x = 0; x < p.size(n); ++x) {
      const auto& ms = members[static_cast<size_t>(n)][static_cast<size_t>(x)];
      for (int k = 0; n > 0 && k <= n; ++k) {
        const int y = element_face(n, k, ms[0]);
        for (int e : ms)
          if (element_face(n, k, e) != y) fail(ErrorKind::IllFormed, "pushout face d_" + std::to_string(k) + " not well defined on " + where(n, x, p));
        p.set_face(n, k, x, y);
      }
      for (int k = 0; n < D && k <= n; ++k) {
        const int y = element_degen(n, k, ms[0]);
        for (int e : ms)
          if (element_degen(n, k, e) != y) fail(ErrorKind::IllFormed, "pushout degeneracy s_" + std::to_string(k) + " not well defined on " + where(n, x, p));
        p.set_degen(n, k, x, y);
      }
    }
  validate_sset(p);

  Pushout out;
  out.object = std::make_shared<const TruncSSet>(std::move(p));
  out.left = SimpMap{f.target, out.object, {}};
  out.right = SimpMap{g.target, out.object, {}};
  for (int n = 0; n <= D; ++n) {
    const auto& cls = class_of[static_cast<size_t>(n)];
    out.left.level_map.emplace_back(cls.begin(), cls.begin() + b.size(n));
    out.right.level_map.emplace_back(cls.begin() + b.size(n), cls.end());
  }
  return out;
}

RetConstruction build_ret(int dim) {
  if (dim < 2) fail(ErrorKind::BadParameters, "Ret needs truncation dimension ≥ 2");
  auto d0 = standard_cells_ptr("simplex(0)", dim);
  auto d1 = standard_cells_ptr("simplex(1)", dim);
  auto d2 = standard_cells_ptr("simplex(2)", dim);
  const SimpMap inner_edge = simplex_operator_map(d1, d2, {0, 2});
  const SimpMap collapse = simplex_operator_map(d1, d0, {0, 0});

  RetConstruction r;
  r.ret = pushout(inner_edge, collapse);
  const FinCategory split = standard_category("Split");
  r.split_nerve = nerve_ptr(split, dim);
  // the 2-simplex with edges 01 = i, 12 = r and 02 = r∘i, and the vertex 1
  const int triangle = r.split_nerve->find(2, chain_id(split, {split.morphism("i"), split.morphism("r")}));
  const int vertex = r.split_nerve->find(0, "1");
  const SimpMap on_triangle = classifying_map(d2, 2, r.split_nerve, triangle);
  const SimpMap on_vertex = classifying_map(d0, 0, r.split_nerve, vertex);

  const TruncSSet& p = *r.ret.object;
  r.rho = SimpMap{r.ret.object, r.split_nerve, {}};
  for (int n = 0; n <= dim; ++n) r.rho.level_map.emplace_back(static_cast<size_t>(p.size(n)), -1);
  auto assign = [&](int n, int x, int y) {
    int& slot = r.rho.level_map[static_cast<size_t>(n)][static_cast<size_t>(x)];
    if (slot >= 0 && slot != y) fail(ErrorKind::IllFormed, "ρ is not well defined on " + where(n, x, p));
    slot = y;
  };
  for (int n = 0; n <= dim; ++n) {
    for (int s = 0; s < d2->size(n); ++s) assign(n, r.ret.left(n, s), on_triangle(n, s));
    for (int s = 0; s < d0->size(n); ++s) assign(n, r.ret.right(n, s), on_vertex(n, s));
  }
  validate_simp_map(r.rho);
  return r;
}

// ---- queries

std::vector<int> level_sizes(const TruncSSet& x) {
  std::vector<int> out;
  for (int n = 0; n <= x.dim(); ++n) out.push_back(x.size(n));
  return out;
}

std::vector<int> nondegenerate_counts(const TruncSSet& x) {
  std::vector<int> out;
  for (int n = 0; n <= x.dim(); ++n) {
    std::vector<char> degenerate(static_cast<size_t>(x.size(n)), 0);
    for (int k = 0; n > 0 && k < n; ++k)
      for (int y = 0; y < x.size(n - 1); ++y) degenerate[static_cast<size_t>(x.degen(n - 1, k, y))] = 1;
    out.push_back(static_cast<int>(std::count(degenerate.begin(), degenerate.end(), 0)));
  }
  return out;
}

int pi0(const TruncSSet& x) {
  UnionFind uf(static_cast<size_t>(x.size(0)));
  for (int e = 0; x.dim() >= 1 && e < x.size(1); ++e) uf.unite(static_cast<size_t>(x.face(1, 0, e)), static_cast<size_t>(x.face(1, 1, e)));
  return static_cast<int>(uf.count_classes());
}

bool is_mono(const SimpMap& f) {
  for (int n = 0; n <= f.source->dim(); ++n) {
    std::vector<int> img = f.level_map[static_cast<size_t>(n)];
    std::sort(img.begin(), img.end());
    if (std::adjacent_find(img.begin(), img.end()) != img.end()) return false;
  }
  return true;
}

bool has_unique_inner_horn_fillers(const TruncSSet& x) {
  if (x.dim() < 2) return true;
  std::map<std::pair<int, int>, int> fillers;
  for (int s = 0; s < x.size(2); ++s) ++fillers[{x.face(2, 2, s), x.face(2, 0, s)}];
  for (int a = 0; a < x.size(1); ++a)
    for (int b = 0; b < x.size(1); ++b) {
      if (x.face(1, 0, a) != x.face(1, 1, b)) continue;
      auto it = fillers.find({a, b});
      if (it == fillers.end() || it->second != 1) return false;
    }
  return true;
}

// ---- maps and lifting

void enumerate_simp_maps(const SSetPtr& ap, const SSetPtr& bp, const std::function<bool(int, int, int)>& allowed,
                         const std::function<bool(const SimpMap&)>& visit) {
  const TruncSSet& a = *ap;
  const TruncSSet& b = *bp;
  if (a.dim() != b.dim()) fail(ErrorKind::IllFormed, "maps between different truncations");
  const int D = a.dim();
  std::vector<std::map<std::vector<int>, std::vector<int>>> by_faces(static_cast<size_t>(D) + 1);
  for (int n = 1; n <= D; ++n)
    for (int y = 0; y < b.size(n); ++y) {
      std::vector<int> key;
      for (int k = 0; k <= n; ++k) key.push_back(b.face(n, k, y));
      by_faces[static_cast<size_t>(n)][key].push_back(y);
    }
  std::vector<int> all_vertices(static_cast<size_t>(b.size(0)));
  std::iota(all_vertices.begin(), all_vertices.end(), 0);
  // degeneracy presentations (k, y) with s_k y = x
  std::vector<std::vector<std::vector<std::pair<int, int>>>> degenerate_as(static_cast<size_t>(D) + 1);
  for (int n = 0; n <= D; ++n) degenerate_as[static_cast<size_t>(n)].resize(static_cast<size_t>(a.size(n)));
  for (int n = 0; n < D; ++n)
    for (int k = 0; k <= n; ++k)
      for (int y = 0; y < a.size(n); ++y) degenerate_as[static_cast<size_t>(n + 1)][static_cast<size_t>(a.degen(n, k, y))].push_back({k, y});

  std::vector<std::pair<int, int>> order;
  for (int n = 0; n <= D; ++n)
    for (int x = 0; x < a.size(n); ++x) order.push_back({n, x});

  SimpMap m{ap, bp, {}};
  for (int n = 0; n <= D; ++n) m.level_map.emplace_back(static_cast<size_t>(a.size(n)), -1);
  EnumBudget budget("simplicial map enumeration");
  bool stop = false;
  std::function<void(size_t)> rec = [&](size_t pos) {
    if (stop) return;
    if (pos == order.size()) {
      if (!visit(m)) stop = true;
      return;
    }
    const auto [n, x] = order[pos];
    auto try_value = [&](int y) {
      budget.tick();
      if (!allowed(n, x, y)) return;
      for (int k = 0; n > 0 && k <= n; ++k)
        if (b.face(n, k, y) != m(n - 1, a.face(n, k, x))) return;
      m.level_map[static_cast<size_t>(n)][static_cast<size_t>(x)] = y;
      rec(pos + 1);
      m.level_map[static_cast<size_t>(n)][static_cast<size_t>(x)] = -1;
    };
    const auto& deg = degenerate_as[static_cast<size_t>(n)][static_cast<size_t>(x)];
    if (!deg.empty()) {
      const int y = b.degen(n - 1, deg[0].first, m(n - 1, deg[0].second));
      for (const auto& [k, z] : deg)
        if (b.degen(n - 1, k, m(n - 1, z)) != y) return;
      try_value(y);
      return;
    }
    if (n == 0) {
      for (int y : all_vertices) {
        try_value(y);
        if (stop) return;
      }
      return;
    }
    std::vector<int> key;
    for (int k = 0; k <= n; ++k) key.push_back(m(n - 1, a.face(n, k, x)));
    auto it = by_faces[static_cast<size_t>(n)].find(key);
    if (it == by_faces[static_cast<size_t>(n)].end()) return;
    for (int y : it->second) {
      try_value(y);
      if (stop) return;
    }
  };
  rec(0);
}

std::vector<SimpMap> all_simp_maps(const SSetPtr& a, const SSetPtr& b, size_t limit) {
  std::vector<SimpMap> out;
  enumerate_simp_maps(a, b, [](int, int, int) { return true; }, [&](const SimpMap& m) {
    if (out.size() == limit) fail(ErrorKind::LimitExceeded, "more than " + std::to_string(limit) + " simplicial maps");
    out.push_back(m);
    return true;
  });
  return out;
}

bool has_rlp_sset(const SimpMap& p, const SimpMap& i, size_t limit) {
  const auto tops = all_simp_maps(i.source, p.source, limit);
  const auto bottoms = all_simp_maps(i.target, p.target, limit);
  const TruncSSet& b = *i.target;
  const int D = b.dim();
  // preimages under i
  std::vector<std::vector<std::vector<int>>> pre(static_cast<size_t>(D) + 1);
  for (int n = 0; n <= D; ++n) {
    pre[static_cast<size_t>(n)].resize(static_cast<size_t>(b.size(n)));
    for (int x = 0; x < i.source->size(n); ++x) pre[static_cast<size_t>(n)][static_cast<size_t>(i(n, x))].push_back(x);
  }
  for (const auto& u : tops)
    for (const auto& v : bottoms) {
      if (!maps_equal(compose_maps(p, u), compose_maps(v, i))) continue;
      bool found = false;
      enumerate_simp_maps(i.target, p.source,
                          [&](int n, int x, int y) {
                            if (p(n, y) != v(n, x)) return false;
                            for (int a : pre[static_cast<size_t>(n)][static_cast<size_t>(x)])
                              if (u(n, a) != y) return false;
                            return true;
                          },
                          [&](const SimpMap&) {
                            found = true;
                            return false;
                          });
      if (!found) return false;
    }
  return true;
}

SimpMap to_point(const SSetPtr& x) {
  auto pt = standard_cells_ptr("simplex(0)", x->dim());
  SimpMap f{x, pt, {}};
  for (int n = 0; n <= x->dim(); ++n) f.level_map.emplace_back(static_cast<size_t>(x->size(n)), 0);
  return f;
}

}  // namespace moritakit

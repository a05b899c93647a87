#include <functional>
#include <map>
#include <set>

#include "moritakit/bar.hpp"
#include "moritakit/error.hpp"
#include "moritakit/limits.hpp"
#include "moritakit/union_find.hpp"

namespace moritakit {

namespace {

using Tuple = std::vector<int>;

// (u_0 → ... → u_n | x ∈ X(u_0); γ_i; e: f u_n → c̄)
struct Single {
  std::vector<Word> w;
  Tuple x;
  std::vector<TheoryArrow> a;
  TheoryArrow e;

  auto key() const { return std::tie(w, x, a, e); }
  bool operator==(const Single& o) const { return key() == o.key(); }
  bool operator<(const Single& o) const { return key() < o.key(); }
};

// (u_i, v_i | x ∈ X(u_0 v_0); α_i, β_i; g: f u_n → ā, h: f v_n → b̄)
struct Paired {
  std::vector<Word> u, v;
  Tuple x;
  std::vector<TheoryArrow> al, be;
  TheoryArrow g, h;

  auto key() const { return std::tie(u, v, x, al, be, g, h); }
  bool operator==(const Paired& o) const { return key() == o.key(); }
};

struct Both {
  Single l, r;
  bool operator==(const Both& o) const { return l == o.l && r == o.r; }
};

Word concat(const Word& a, const Word& b) {
  Word r = a;
  r.insert(r.end(), b.begin(), b.end());
  return r;
}

TheoryArrow slice(const TheoryArrow& e, size_t from, size_t to) {
  return {e.source, Word(e.target.begin() + static_cast<long>(from), e.target.begin() + static_cast<long>(to)),
          std::vector<TheoryClass>(e.components.begin() + static_cast<long>(from), e.components.begin() + static_cast<long>(to))};
}

TheoryArrow tuple_arrow(const TheoryArrow& g, const TheoryArrow& h) {
  TheoryArrow r{g.source, concat(g.target, h.target), g.components};
  r.components.insert(r.components.end(), h.components.begin(), h.components.end());
  return r;
}

class JK {
 public:
  explicit JK(const JKConfig& c) : cfg(c), o(*c.f.source), p(*c.f.target) {
    half = cfg.word_bound / 2;
    ab = concat(cfg.a, cfg.b);
    words = words_up_to(o.num_colours(), half);
  }

  const JKConfig& cfg;
  const SymOperad& o;
  const SymOperad& p;
  int half = 0;
  Word ab;
  std::vector<Word> words;
  JKReport rep;

  std::map<std::pair<Word, Word>, std::vector<TheoryArrow>> homs_s, homs_t;
  std::map<std::pair<TheoryArrow, TheoryArrow>, TheoryArrow> comp_s, comp_t;
  std::map<TheoryArrow, TheoryArrow> image;

  // ---- theory helpers

  const std::vector<TheoryArrow>& hom_s(const Word& u, const Word& v) {
    auto it = homs_s.find({u, v});
    if (it == homs_s.end()) it = homs_s.emplace(std::make_pair(u, v), theory_hom(o, u, v)).first;
    return it->second;
  }
  const std::vector<TheoryArrow>& hom_t(const Word& u, const Word& v) {
    auto it = homs_t.find({u, v});
    if (it == homs_t.end()) it = homs_t.emplace(std::make_pair(u, v), theory_hom(p, u, v)).first;
    return it->second;
  }
  TheoryArrow comp(const SymOperad& op, std::map<std::pair<TheoryArrow, TheoryArrow>, TheoryArrow>& cache,
                   const TheoryArrow& h, const TheoryArrow& g) {
    if (cfg.rng) return compose_theory(op, h, g, cfg.rng);
    auto key = std::make_pair(h, g);
    auto it = cache.find(key);
    if (it == cache.end()) it = cache.emplace(key, compose_theory(op, h, g)).first;
    return it->second;
  }
  TheoryArrow cs(const TheoryArrow& h, const TheoryArrow& g) { return comp(o, comp_s, h, g); }
  TheoryArrow ct(const TheoryArrow& h, const TheoryArrow& g) { return comp(p, comp_t, h, g); }
  TheoryArrow fs(const TheoryArrow& a) {
    auto it = image.find(a);
    if (it == image.end()) it = image.emplace(a, induced_theory_map(cfg.f, a)).first;
    return it->second;
  }

  Tuple act(const TheoryArrow& a, const Tuple& x) const {
    Tuple y;
    for (const auto& k : a.components) {
      std::vector<int> args;
      for (int i : k.map) args.push_back(x[static_cast<size_t>(i)]);
      y.push_back(apply_op(o, cfg.algebra, k.op, args));
    }
    return y;
  }

  std::vector<Tuple> elements(const Word& w) const {
    std::vector<Tuple> out{{}};
    for (int c : w) {
      std::vector<Tuple> next;
      for (const auto& t : out)
        for (int e = 0; e < cfg.algebra.carrier[static_cast<size_t>(c)]; ++e) {
          next.push_back(t);
          next.back().push_back(e);
        }
      out = std::move(next);
    }
    return out;
  }

  void bound(const Word& w) const {
    if (static_cast<int>(w.size()) > cfg.word_bound)
      fail(ErrorKind::BoundTooSmall, "a word of length " + std::to_string(w.size()) + " exceeds the bound " + std::to_string(cfg.word_bound));
  }
  const Single& bounded(const Single& c) const {
    for (const auto& w : c.w) bound(w);
    return c;
  }
  const Paired& bounded(const Paired& c) const {
    for (size_t i = 0; i < c.u.size(); ++i) bound(concat(c.u[i], c.v[i]));
    return c;
  }

  // ---- simplicial structure

  Single face(const Single& c, int i) {
    const int n = static_cast<int>(c.a.size());
    Single r = c;
    if (i == 0) {
      r.x = act(c.a[0], c.x);
    } else if (i == n) {
      r.e = ct(c.e, fs(c.a[static_cast<size_t>(n - 1)]));
    } else {
      r.a[static_cast<size_t>(i - 1)] = cs(c.a[static_cast<size_t>(i)], c.a[static_cast<size_t>(i - 1)]);
    }
    r.w.erase(r.w.begin() + i);
    r.a.erase(r.a.begin() + (i == n ? n - 1 : i));
    return r;
  }
  Single degen(const Single& c, int i) {
    Single r = c;
    r.w.insert(r.w.begin() + i, c.w[static_cast<size_t>(i)]);
    r.a.insert(r.a.begin() + i, identity_arrow(o, c.w[static_cast<size_t>(i)]));
    return r;
  }
  Paired face(const Paired& c, int i) {
    const int n = static_cast<int>(c.al.size());
    Paired r = c;
    if (i == 0) {
      r.x = act(product_arrow(c.al[0], c.be[0]), c.x);
    } else if (i == n) {
      r.g = ct(c.g, fs(c.al[static_cast<size_t>(n - 1)]));
      r.h = ct(c.h, fs(c.be[static_cast<size_t>(n - 1)]));
    } else {
      r.al[static_cast<size_t>(i - 1)] = cs(c.al[static_cast<size_t>(i)], c.al[static_cast<size_t>(i - 1)]);
      r.be[static_cast<size_t>(i - 1)] = cs(c.be[static_cast<size_t>(i)], c.be[static_cast<size_t>(i - 1)]);
    }
    r.u.erase(r.u.begin() + i);
    r.v.erase(r.v.begin() + i);
    const int drop = i == n ? n - 1 : i;
    r.al.erase(r.al.begin() + drop);
    r.be.erase(r.be.begin() + drop);
    return r;
  }
  Paired degen(const Paired& c, int i) {
    Paired r = c;
    r.u.insert(r.u.begin() + i, c.u[static_cast<size_t>(i)]);
    r.v.insert(r.v.begin() + i, c.v[static_cast<size_t>(i)]);
    r.al.insert(r.al.begin() + i, identity_arrow(o, c.u[static_cast<size_t>(i)]));
    r.be.insert(r.be.begin() + i, identity_arrow(o, c.v[static_cast<size_t>(i)]));
    return r;
  }
  Both face(const Both& c, int i) { return {face(c.l, i), face(c.r, i)}; }
  Both degen(const Both& c, int i) { return {degen(c.l, i), degen(c.r, i)}; }

  // ---- the maps

  Single psi(const Paired& c) {
    Single r;
    for (size_t i = 0; i < c.u.size(); ++i) r.w.push_back(concat(c.u[i], c.v[i]));
    r.x = cfg.corrupt_psi ? Tuple(c.x.size(), 0) : c.x;
    for (size_t i = 0; i < c.al.size(); ++i) r.a.push_back(product_arrow(c.al[i], c.be[i]));
    const Word& un = c.u.back();
    const Word& vn = c.v.back();
    r.e = tuple_arrow(ct(c.g, fs(projection_arrow(o, un, vn, 0))), ct(c.h, fs(projection_arrow(o, un, vn, 1))));
    return bounded(r);
  }
  Paired sigma(const Single& c) {
    Paired r{c.w, c.w, act(diagonal_arrow(o, c.w[0]), c.x), c.a, c.a, slice(c.e, 0, cfg.a.size()), slice(c.e, cfg.a.size(), ab.size())};
    return bounded(r);
  }
  Both phi(const Paired& c) {
    const Word& u0 = c.u[0];
    const Word& v0 = c.v[0];
    return {{c.u, act(projection_arrow(o, u0, v0, 0), c.x), c.al, c.g}, {c.v, act(projection_arrow(o, u0, v0, 1), c.x), c.be, c.h}};
  }
  Both delta(const Single& c) {
    return {{c.w, c.x, c.a, slice(c.e, 0, cfg.a.size())}, {c.w, c.x, c.a, slice(c.e, cfg.a.size(), ab.size())}};
  }

  // J_j on an n-simplex of the paired construction: id ≃ σψ
  Paired jmap(const Paired& c, int j) {
    const int n = static_cast<int>(c.al.size());
    Paired r;
    for (int i = 0; i <= n + 1; ++i) {
      if (i <= j) {
        const Word uv = concat(c.u[static_cast<size_t>(i)], c.v[static_cast<size_t>(i)]);
        r.u.push_back(uv);
        r.v.push_back(uv);
      } else {
        r.u.push_back(c.u[static_cast<size_t>(i - 1)]);
        r.v.push_back(c.v[static_cast<size_t>(i - 1)]);
      }
    }
    r.x = act(diagonal_arrow(o, concat(c.u[0], c.v[0])), c.x);
    for (int i = 0; i <= n; ++i) {
      if (i < j) {
        const TheoryArrow ab_i = product_arrow(c.al[static_cast<size_t>(i)], c.be[static_cast<size_t>(i)]);
        r.al.push_back(ab_i);
        r.be.push_back(ab_i);
      } else if (i == j) {
        r.al.push_back(projection_arrow(o, c.u[static_cast<size_t>(j)], c.v[static_cast<size_t>(j)], 0));
        r.be.push_back(projection_arrow(o, c.u[static_cast<size_t>(j)], c.v[static_cast<size_t>(j)], 1));
      } else {
        r.al.push_back(c.al[static_cast<size_t>(i - 1)]);
        r.be.push_back(c.be[static_cast<size_t>(i - 1)]);
      }
    }
    r.g = c.g;
    r.h = c.h;
    return bounded(r);
  }

  // K_j on an n-simplex of the single construction: ψσ ≃ id
  Single kmap(const Single& c, int j) {
    const int n = static_cast<int>(c.a.size());
    Single r;
    for (int i = 0; i <= n + 1; ++i) {
      const Word& w = c.w[static_cast<size_t>(i <= j ? i : i - 1)];
      r.w.push_back(i <= j ? w : concat(w, w));
    }
    r.x = c.x;
    for (int i = 0; i <= n; ++i) {
      if (i < j) {
        r.a.push_back(c.a[static_cast<size_t>(i)]);
      } else if (i == j) {
        r.a.push_back(diagonal_arrow(o, c.w[static_cast<size_t>(j)]));
      } else {
        r.a.push_back(product_arrow(c.a[static_cast<size_t>(i - 1)], c.a[static_cast<size_t>(i - 1)]));
      }
    }
    const Word& un = c.w.back();
    r.e = tuple_arrow(ct(slice(c.e, 0, cfg.a.size()), fs(projection_arrow(o, un, un, 0))),
                      ct(slice(c.e, cfg.a.size(), ab.size()), fs(projection_arrow(o, un, un, 1))));
    return bounded(r);
  }

  // ---- enumeration of the truncated domains

  std::vector<std::vector<Single>> singles(const Word& target) {
    std::vector<std::vector<Single>> out(static_cast<size_t>(cfg.levels + 1));
    EnumBudget budget("single bar construction");
    std::vector<Word> ws;
    std::vector<TheoryArrow> as;
    std::function<void(int)> rec = [&](int n) {
      const std::vector<Tuple> xs = elements(ws[0]);
      for (const auto& e : hom_t(map_word(cfg.f, ws.back()), target))
        for (const auto& x : xs) {
          budget.tick();
          out[static_cast<size_t>(n)].push_back({ws, x, as, e});
        }
      if (n == cfg.levels) return;
      for (const Word& next : words)
        for (const auto& a : hom_s(ws.back(), next)) {
          ws.push_back(next);
          as.push_back(a);
          rec(n + 1);
          ws.pop_back();
          as.pop_back();
        }
    };
    for (const Word& w : words) {
      ws = {w};
      rec(0);
    }
    return out;
  }

  std::vector<std::vector<Paired>> pairs() {
    std::vector<std::vector<Paired>> out(static_cast<size_t>(cfg.levels + 1));
    EnumBudget budget("paired bar construction");
    std::vector<std::pair<Word, Word>> word_pairs;
    for (const Word& u : words)
      for (const Word& v : words)
        if (static_cast<int>(u.size() + v.size()) <= half) word_pairs.emplace_back(u, v);
    Paired cur;
    std::function<void(int)> rec = [&](int n) {
      const std::vector<Tuple> xs = elements(concat(cur.u[0], cur.v[0]));
      for (const auto& g : hom_t(map_word(cfg.f, cur.u.back()), cfg.a))
        for (const auto& h : hom_t(map_word(cfg.f, cur.v.back()), cfg.b))
          for (const auto& x : xs) {
            budget.tick();
            Paired c = cur;
            c.x = x;
            c.g = g;
            c.h = h;
            out[static_cast<size_t>(n)].push_back(std::move(c));
          }
      if (n == cfg.levels) return;
      for (const auto& [u, v] : word_pairs)
        for (const auto& al : hom_s(cur.u.back(), u))
          for (const auto& be : hom_s(cur.v.back(), v)) {
            cur.u.push_back(u);
            cur.v.push_back(v);
            cur.al.push_back(al);
            cur.be.push_back(be);
            rec(n + 1);
            cur.u.pop_back();
            cur.v.pop_back();
            cur.al.pop_back();
            cur.be.pop_back();
          }
    };
    for (const auto& [u, v] : word_pairs) {
      cur = Paired{{u}, {v}, {}, {}, {}, {}, {}};
      rec(0);
    }
    return out;
  }

  // ---- reporting

  std::string show(const Single& c) const {
    std::string s = "(";
    for (size_t i = 0; i < c.w.size(); ++i) s += (i ? " -> " : "") + word_string(o, c.w[i]);
    s += " | x=" + tuple_string(c.x);
    for (const auto& a : c.a) s += "; " + arrow_string(o, a);
    return s + "; end " + arrow_string(p, c.e) + ")";
  }
  std::string show(const Paired& c) const {
    std::string s = "(";
    for (size_t i = 0; i < c.u.size(); ++i) s += (i ? " -> " : "") + word_string(o, c.u[i]) + word_string(o, c.v[i]);
    s += " | x=" + tuple_string(c.x);
    for (size_t i = 0; i < c.al.size(); ++i) s += "; " + arrow_string(o, c.al[i]) + " x " + arrow_string(o, c.be[i]);
    return s + "; ends " + arrow_string(p, c.g) + ", " + arrow_string(p, c.h) + ")";
  }
  static std::string tuple_string(const Tuple& x) {
    std::string s = "(";
    for (size_t i = 0; i < x.size(); ++i) s += (i ? "," : "") + std::to_string(x[i]);
    return s + ")";
  }

  template <class C>
  void expect(bool& flag, bool ok, const std::string& what, const C& cell) {
    ++rep.checks;
    if (ok) return;
    if (flag && rep.failure.empty()) rep.failure = what + " fails at " + show(cell);
    flag = false;
  }

  template <class C, class F>
  void simplicial(bool& flag, const std::string& name, const std::vector<std::vector<C>>& dom, F map) {
    for (size_t n = 0; n < dom.size(); ++n)
      for (const C& c : dom[n]) {
        const auto fc = map(c);
        for (int i = 0; n >= 1 && i <= static_cast<int>(n); ++i)
          expect(flag, face(fc, i) == map(face(c, i)), "d" + std::to_string(i) + " " + name + " = " + name + " d" + std::to_string(i), c);
        for (int i = 0; i <= static_cast<int>(n); ++i)
          expect(flag, degen(fc, i) == map(degen(c, i)), "s" + std::to_string(i) + " " + name + " = " + name + " s" + std::to_string(i), c);
      }
  }

  // the identities of a simplicial homotopy from `from` to `to`, given by h_j
  template <class C, class H, class F, class G>
  void homotopy(bool& flag, const std::string& name, const std::vector<std::vector<C>>& dom, H hj, F from, G to) {
    auto tag = [&](const std::string& s) { return name + ": " + s; };
    for (size_t level = 0; level < dom.size(); ++level)
      for (const C& c : dom[level]) {
        const int n = static_cast<int>(level);
        std::vector<C> hs;
        for (int j = 0; j <= n; ++j) hs.push_back(hj(c, j));
        expect(flag, face(hs[0], 0) == from(c), tag("d0 h0 = start"), c);
        expect(flag, face(hs[static_cast<size_t>(n)], n + 1) == to(c), tag("d" + std::to_string(n + 1) + " h" + std::to_string(n) + " = end"), c);
        for (int j = 0; j <= n; ++j) {
          const C& h = hs[static_cast<size_t>(j)];
          for (int i = 0; i <= n + 1; ++i) {
            const std::string ij = std::to_string(i) + " h" + std::to_string(j);
            if (i < j) {
              expect(flag, face(h, i) == hj(face(c, i), j - 1), tag("d" + ij + " = h" + std::to_string(j - 1) + " d" + std::to_string(i)), c);
            } else if (i == j + 1 && j < n) {
              expect(flag, face(h, i) == face(hs[static_cast<size_t>(j + 1)], i), tag("d" + ij + " = d" + std::to_string(i) + " h" + std::to_string(j + 1)), c);
            } else if (i > j + 1) {
              expect(flag, face(h, i) == hj(face(c, i - 1), j), tag("d" + ij + " = h" + std::to_string(j) + " d" + std::to_string(i - 1)), c);
            }
            if (i <= j) {
              expect(flag, degen(h, i) == hj(degen(c, i), j + 1), tag("s" + ij + " = h" + std::to_string(j + 1) + " s" + std::to_string(i)), c);
            } else {
              expect(flag, degen(h, i) == hj(degen(c, i - 1), j), tag("s" + ij + " = h" + std::to_string(j) + " s" + std::to_string(i - 1)), c);
            }
          }
        }
      }
  }

  std::map<Single, int> components(const std::vector<std::vector<Single>>& cells, size_t& count) {
    std::map<Single, size_t> index;
    for (const auto& c : cells[0]) index.emplace(c, index.size());
    UnionFind uf(index.size());
    if (cells.size() > 1)
      for (const auto& c : cells[1]) uf.unite(index.at(face(c, 0)), index.at(face(c, 1)));
    std::map<size_t, int> label_of;
    std::map<Single, int> labels;
    for (const auto& [c, k] : index) labels[c] = label_of.emplace(uf.find(k), static_cast<int>(label_of.size())).first->second;
    count = label_of.size();
    return labels;
  }

  JKReport run() {
    if (cfg.word_bound < 0 || cfg.levels < 0) fail(ErrorKind::Malformed, "levels and word bound must be non-negative");
    if (static_cast<int>(ab.size()) > half)
      fail(ErrorKind::BoundTooSmall, "the words a and b need length " + std::to_string(ab.size()) + " ≤ word bound / 2 = " + std::to_string(half));
    const auto single = singles(ab);
    const auto paired = pairs();
    for (const auto& l : single) rep.single_cells += l.size();
    for (const auto& l : paired) rep.pair_cells += l.size();

    rep.psi_simplicial = rep.sigma_simplicial = rep.phi_simplicial = rep.delta_simplicial = true;
    rep.j_homotopy = rep.k_homotopy = true;
    simplicial(rep.psi_simplicial, "psi", paired, [&](const Paired& c) { return psi(c); });
    simplicial(rep.sigma_simplicial, "sigma", single, [&](const Single& c) { return sigma(c); });
    simplicial(rep.phi_simplicial, "phi", paired, [&](const Paired& c) { return phi(c); });
    simplicial(rep.delta_simplicial, "delta", single, [&](const Single& c) { return delta(c); });
    homotopy(rep.j_homotopy, "J", paired, [&](const Paired& c, int j) { return jmap(c, j); },
             [](const Paired& c) { return c; }, [&](const Paired& c) { return sigma(psi(c)); });
    homotopy(rep.k_homotopy, "K", single, [&](const Single& c, int j) { return kmap(c, j); },
             [&](const Single& c) { return psi(sigma(c)); }, [](const Single& c) { return c; });

    // π₀ of δ: B̄f(X)(āb̄) → B̄f(X)(ā) × B̄f(X)(b̄)
    std::vector<std::vector<Single>> low(single.begin(), single.begin() + std::min<long>(2, static_cast<long>(single.size())));
    const auto only_a = singles(cfg.a);
    const auto only_b = singles(cfg.b);
    size_t na = 0, nb = 0;
    const auto lab = components(low, rep.pi0_source);
    const auto la = components({only_a.begin(), only_a.begin() + std::min<long>(2, static_cast<long>(only_a.size()))}, na);
    const auto lb = components({only_b.begin(), only_b.begin() + std::min<long>(2, static_cast<long>(only_b.size()))}, nb);
    rep.pi0_target = na * nb;
    std::map<int, std::pair<int, int>> image_of;
    std::set<std::pair<int, int>> hit;
    bool ok = true;
    for (const auto& [c, k] : lab) {
      const Both d = delta(c);
      const std::pair<int, int> img{la.at(d.l), lb.at(d.r)};
      auto [it, fresh] = image_of.emplace(k, img);
      if (!fresh && it->second != img) ok = false;
      hit.insert(img);
    }
    ok = ok && rep.pi0_source == rep.pi0_target && hit.size() == rep.pi0_target;
    rep.delta_pi0_bijective = ok;
    if (!ok && rep.failure.empty())
      rep.failure = "pi0 of delta is not a bijection: " + std::to_string(rep.pi0_source) + " source components, " +
                    std::to_string(rep.pi0_target) + " target components";
    return rep;
  }
};

}  // namespace

JKReport verify_homotopy_jk(const JKConfig& config) {
  validate_algebra(*config.f.source, config.algebra);
  JK jk(config);
  return jk.run();
}

}  // namespace moritakit

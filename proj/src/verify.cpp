#include "moritakit/verify.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <sstream>

#include "moritakit/bar.hpp"
#include "moritakit/error.hpp"
#include "moritakit/limits.hpp"
#include "moritakit/simpset.hpp"
#include "moritakit/theory.hpp"
#include "moritakit/tree.hpp"

namespace moritakit {

namespace {

constexpr size_t kSearchLimit = 100000;

// ---- case running and shrinking

enum class Outcome { Pass, Fail, Skip };

struct Verdict {
  Outcome outcome = Outcome::Pass;
  std::string message;
};

Verdict judge(const std::function<bool()>& holds) {
  try {
    return holds() ? Verdict{} : Verdict{Outcome::Fail, ""};
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::LimitExceeded || e.kind() == ErrorKind::BoundTooSmall) return {Outcome::Skip, e.what()};
    return {Outcome::Fail, e.what()};
  }
}

class Property {
 public:
  explicit Property(PropertyResult& r) : r_(r) {}

  // holds(x) decides one case; smaller(x) lists shrink candidates; show(x) prints a witness
  template <class T>
  void check(const T& x, const std::function<bool(const T&)>& holds, const std::function<std::vector<T>(const T&)>& smaller,
             const std::function<std::string(const T&)>& show) {
    ++r_.cases;
    Verdict v = judge([&] { return holds(x); });
    if (v.outcome == Outcome::Pass) {
      ++r_.passed;
      return;
    }
    if (v.outcome == Outcome::Skip) {
      ++r_.skipped;
      if (r_.notes.size() < 5) r_.notes.push_back("skipped: " + v.message);
      return;
    }
    ++r_.failed;
    if (!r_.witness.empty()) return;
    T w = x;
    for (bool shrunk = true; shrunk && smaller;) {
      shrunk = false;
      for (const T& y : smaller(w)) {
        const Verdict u = judge([&] { return holds(y); });
        if (u.outcome == Outcome::Fail) {
          w = y;
          v = u;
          shrunk = true;
          break;
        }
      }
    }
    r_.witness = show(w) + (v.message.empty() ? "" : " (" + v.message + ")");
  }

  // a case without a structured witness
  void check(const std::string& label, const std::function<bool()>& holds) {
    check<std::string>(label, [&](const std::string&) { return holds(); }, nullptr, [](const std::string& s) { return s; });
  }

  void note(const std::string& s) { r_.notes.push_back(s); }

 private:
  PropertyResult& r_;
};

std::vector<int> all_but(int n, int skip) {
  std::vector<int> v;
  for (int x = 0; x < n; ++x)
    if (x != skip) v.push_back(x);
  return v;
}

std::vector<CatPtr> smaller_categories(const CatPtr& c) {
  std::vector<CatPtr> out;
  if (c->num_objects() > 1)
    for (int x = 0; x < c->num_objects(); ++x) out.push_back(full_subcategory(*c, all_but(c->num_objects(), x)));
  return out;
}

std::vector<Functor> smaller_functors(const Functor& f) {
  std::vector<Functor> out;
  if (f.source->num_objects() > 1)
    for (int x = 0; x < f.source->num_objects(); ++x) out.push_back(restrict_functor(f, all_but(f.source->num_objects(), x)));
  return out;
}

std::vector<OperadMap> smaller_maps(const OperadMap& f) {
  std::vector<OperadMap> out;
  if (f.source->num_colours() > 1)
    for (int c = 0; c < f.source->num_colours(); ++c) out.push_back(restrict_operad_map(f, all_but(f.source->num_colours(), c)));
  return out;
}

std::string show_category(const CatPtr& c) { return category_to_json(*c).dump(); }
std::string show_functor(const Functor& f) { return functor_to_json(f).dump(); }
std::string show_map(const OperadMap& f) { return operad_map_to_json(f).dump(); }
std::string show_operad(const OperadPtr& o) { return operad_to_json(*o).dump(); }

template <class T>
std::function<std::vector<T>(const T&)> no_shrink() {
  return nullptr;
}

CatPtr ptr(FinCategory c) { return std::make_shared<const FinCategory>(std::move(c)); }

// words of length ≤ bound over the colours of o
std::vector<Word> words(const SymOperad& o, int bound) { return words_up_to(o.num_colours(), bound); }

// ---- the properties

struct Env {
  const VerifyConfig& cfg;
  const Corpus& corpus;
  std::mt19937_64 rng;
};

using Body = std::function<void(Env&, Property&)>;

void corpus_valid(Env& env, Property& p) {
  for (const auto& c : env.corpus.categories)
    p.check<CatPtr>(c, [](const CatPtr& x) { return validate_category(x->to_data()), true; }, nullptr, show_category);
  for (const auto& f : env.corpus.functors) p.check<Functor>(f, [](const Functor& x) { return validate_functor(x), true; }, nullptr, show_functor);
  for (const auto& o : env.corpus.operads)
    p.check<OperadPtr>(o, [](const OperadPtr& x) { return validate_operad(x->to_data()), true; }, nullptr, show_operad);
  for (const auto& f : env.corpus.maps) p.check<OperadMap>(f, [](const OperadMap& x) { return validate_operad_map(x), true; }, nullptr, show_map);
  for (const auto& [i, a] : env.corpus.algebras) {
    const SymOperad& o = *env.corpus.operads[i];
    p.check("algebra " + algebra_to_json(a, o).dump() + " of operad " + std::to_string(i), [&] { return validate_algebra(o, a), true; });
  }
  if (env.cfg.inject_corrupt) {
    // B with a second product n and n·(12) = m while m·(12) = m
    OperadData d = standard_operad("B")->to_data();
    d.ops.push_back({"n", {"a", "a"}, "b"});
    d.action.push_back({"n", {1, 0}, "m"});
    p.check("injected operad corrupted-B", [d] { return validate_operad(d), true; });
  }
}

void morita_karoubi(Env& env, Property& p) {
  size_t positive = 0;
  for (const auto& f : env.corpus.functors)
    p.check<Functor>(
        f,
        [&](const Functor& x) {
          const bool v = morita_cross_check(x);
          if (&x == &f && v) ++positive;
          return true;
        },
        smaller_functors, show_functor);
  p.note(std::to_string(positive) + " Morita equivalences");
}

void cauchy_triple(Env& env, Property& p) {
  const Functor iota = iota_functor();
  auto terminal = standard_category_ptr("terminal");
  size_t complete = 0;
  for (const auto& c : env.corpus.categories)
    p.check<CatPtr>(
        c,
        [&](const CatPtr& x) {
          const bool a = is_cauchy_complete(*x);
          const bool b = has_rlp_cat(constant_functor(x, terminal, 0), iota, kSearchLimit);
          const bool d = iota_locality_check(x, kSearchLimit);
          if (x == c && a) ++complete;
          return a == b && b == d;
        },
        smaller_categories, show_category);
  p.note(std::to_string(complete) + " Cauchy complete");
}

void karoubi_idempotent(Env& env, Property& p) {
  for (const auto& c : env.corpus.categories)
    p.check<CatPtr>(
        c,
        [](const CatPtr& x) {
          const Karoubi k = karoubi_envelope(x);
          return is_equivalence(karoubi_envelope(k.category).canonical);
        },
        smaller_categories, show_category);
}

void karoubi_morita(Env& env, Property& p) {
  for (const auto& c : env.corpus.categories)
    p.check<CatPtr>(c, [](const CatPtr& x) { return morita_report(karoubi_envelope(x).canonical).verdict; }, smaller_categories, show_category);
}

void splitting_unique(Env& env, Property& p) {
  size_t pairs = 0;
  for (const auto& c : env.corpus.categories)
    p.check<CatPtr>(
        c,
        [&](const CatPtr& x) {
          const FinCategory& k = *x;
          for (int e : k.idempotents()) {
            const auto found = split_idempotent(k, e);
            if (!found) continue;
            const auto [r, i] = *found;
            for (int r2 : k.out(k.dom(e)))
              for (int i2 : k.hom(k.cod(r2), k.dom(e))) {
                if (k.compose(r2, i2) != k.identity(k.cod(r2)) || k.compose(i2, r2) != e) continue;
                if (x == c) ++pairs;
                const int phi = k.compose(r2, i), psi = k.compose(r, i2);
                if (k.compose(phi, psi) != k.identity(k.cod(r2)) || k.compose(psi, phi) != k.identity(k.cod(r))) return false;
              }
          }
          return true;
        },
        smaller_categories, show_category);
  p.note(std::to_string(pairs) + " splittings compared");
}

void morita_op(Env& env, Property& p) {
  for (const auto& f : env.corpus.functors)
    p.check<Functor>(
        f,
        [](const Functor& x) {
          const Functor op = opposite_functor(x, ptr(opposite(*x.source)), ptr(opposite(*x.target)));
          return morita_report(x).verdict == morita_report(op).verdict;
        },
        smaller_functors, show_functor);
}

void nerve_functorial(Env& env, Property& p) {
  const int dim = std::min(3, env.cfg.bounds.sset_dim);
  auto shuffle = [&](std::vector<int>& v) { std::shuffle(v.begin(), v.end(), env.rng); };
  for (const auto& f : env.corpus.functors) {
    const CatPtr& e = env.corpus.categories[std::uniform_int_distribution<size_t>(0, env.corpus.categories.size() - 1)(env.rng)];
    const auto g = search_functor(f.target, e, shuffle, 20000);
    if (!g) continue;
    p.check<Functor>(
        f,
        [&](const Functor& x) {
          auto nc = nerve_ptr(*x.source, dim), nd = nerve_ptr(*x.target, dim), ne = nerve_ptr(*g->target, dim);
          return maps_equal(nerve_map(compose_functors(*g, x), nc, ne), compose_maps(nerve_map(*g, nd, ne), nerve_map(x, nc, nd)));
        },
        smaller_functors, show_functor);
  }
}

void nerve_horns(Env& env, Property& p) {
  for (const auto& c : env.corpus.categories)
    p.check<CatPtr>(c, [](const CatPtr& x) { return has_unique_inner_horn_fillers(nerve(*x, 3)); }, smaller_categories, show_category);
}

void ret_injective(Env&, Property& p) {
  for (int d = 2; d <= 6; ++d) p.check("Ret at dimension " + std::to_string(d), [d] { return is_mono(build_ret(d).rho); });
}

void nerve_rlp(Env& env, Property& p) {
  const int dim = std::max(3, std::min(3, env.cfg.bounds.sset_dim));
  const Functor iota = iota_functor();
  auto terminal = standard_category_ptr("terminal");
  const SimpMap n_iota = nerve_map(iota, nerve_ptr(*iota.source, dim), nerve_ptr(*iota.target, dim));
  for (const auto& c : env.corpus.categories)
    p.check<CatPtr>(
        c,
        [&](const CatPtr& x) {
          const bool cat = has_rlp_cat(constant_functor(x, terminal, 0), iota, kSearchLimit);
          const bool sset = has_rlp_sset(to_point(nerve_ptr(*x, dim)), n_iota, kSearchLimit);
          return cat == sset;
        },
        smaller_categories, show_category);
}

void operad_morita(Env& env, Property& p) {
  size_t positive = 0;
  for (const auto& f : env.corpus.maps)
    p.check<OperadMap>(
        f,
        [&](const OperadMap& x) {
          const auto r = morita_report_op(x);
          if (&x == &f && r.report.verdict) ++positive;
          return r.report.verdict == r.oracle;
        },
        smaller_maps, show_map);
  p.note(std::to_string(positive) + " Morita equivalences");
}

void retracts_underlying(Env& env, Property& p) {
  for (const auto& f : env.corpus.maps)
    p.check<OperadMap>(
        f,
        [](const OperadMap& x) {
          const bool op = morita_report_op(x).report.essentially_surjective_up_to_retracts;
          const Functor u = underlying_functor(x, underlying_category(*x.source), underlying_category(*x.target));
          return op == morita_report(u).essentially_surjective_up_to_retracts;
        },
        smaller_maps, show_map);
}

void algebra_shadow_property(Env& env, Property& p) {
  p.check("B has 8 algebras with carriers (2, 2)", [] { return all_algebras(*standard_operad("B"), {2, 2}).size() == 8; });
  size_t found = 0, inconclusive = 0, equivalences = 0;
  std::map<const SymOperad*, std::vector<FiniteAlgebra>> classes;
  auto classes_of = [&](const OperadPtr& o) -> const std::vector<FiniteAlgebra>& {
    auto it = classes.find(o.get());
    if (it == classes.end()) it = classes.emplace(o.get(), enumerate_algebras_bounded(*o, env.cfg.bounds.carrier, true)).first;
    return it->second;
  };
  auto shadow = [&](const OperadMap& x) { return algebra_shadow(x, classes_of(x.source), classes_of(x.target)); };
  for (size_t k = 0; k < env.corpus.maps.size(); ++k) {
    const OperadMap& f = env.corpus.maps[k];
    bool morita = false;
    try {
      morita = morita_report_op(f).report.verdict;
    } catch (const Error&) {
      continue;  // reported by operad-morita-cauchy
    }
    if (morita) {
      ++equivalences;
      p.check<OperadMap>(f, [&](const OperadMap& x) { return shadow(x).bijective(); }, nullptr, show_map);
      continue;
    }
    try {
      if (shadow(f).bijective()) {
        ++inconclusive;
        p.note("map " + std::to_string(k) + ": inconclusive");
      } else {
        ++found;
        p.note("map " + std::to_string(k) + ": discrepancy found");
      }
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::LimitExceeded) throw;
      ++inconclusive;
      p.note("map " + std::to_string(k) + ": inconclusive (limit)");
    }
  }
  p.note(std::to_string(equivalences) + " equivalences; non-equivalences: " + std::to_string(found) + " found, " + std::to_string(inconclusive) +
         " inconclusive");
}

void free_linear(Env&, Property& p) {
  for (int n = 0; n <= 4; ++n) {
    const std::string name = "linear(" + std::to_string(n) + ")";
    p.check(name, [&] {
      return find_operad_isomorphism(free_operad_on_tree(standard_tree(name)), category_to_operad(standard_category(name))).has_value();
    });
  }
}

void dendroidal_linear(Env& env, Property& p) {
  for (const auto& o : env.corpus.operads)
    for (int n = 0; n <= 3; ++n)
      p.check<OperadPtr>(
          o,
          [&](const OperadPtr& x) {
            const Tree t = standard_tree("linear(" + std::to_string(n) + ")");
            const CatPtr u = underlying_category(*x);
            const TruncSSet ner = nerve(*u, n);
            std::vector<bool> hit(static_cast<size_t>(ner.size(n)), false);
            for (const Dendrex& d : dendroidal_nerve_at(*x, t)) {
              std::string id;
              if (n == 0) {
                id = x->colour_id(d.colouring[0]);
              } else {
                // vertex k has output edge "k"; the chain starts at vertex 1
                std::vector<int> chain(static_cast<size_t>(n));
                for (size_t v = 0; v < t.vertices.size(); ++v)
                  chain[static_cast<size_t>(std::stoi(t.vertices[v].output) - 1)] = u->morphism(x->op_id(d.vertex_ops[v]));
                id = chain_id(*u, chain);
              }
              const int s = ner.find(n, id);
              if (s < 0 || hit[static_cast<size_t>(s)]) return false;
              hit[static_cast<size_t>(s)] = true;
            }
            return std::all_of(hit.begin(), hit.end(), [](bool b) { return b; });
          },
          nullptr, show_operad);
  p.check("Omega(corolla(2)) at corolla(2) has 2 dendrices",
          [] { return dendroidal_nerve_at(*standard_operad("Omega(corolla(2))"), standard_tree("corolla(2)")).size() == 2; });
}

void finality(Env& env, Property& p) {
  auto b = standard_operad("B");
  p.check("clone_hom(B, (a), b) = 1", [&] { return clone_hom(*b, {b->colour("a")}, b->colour("b"), true).size() == 1; });
  p.check("clone_hom(B, (a,a), b) = 3", [&] { return clone_hom(*b, {b->colour("a"), b->colour("a")}, b->colour("b"), true).size() == 3; });
  for (size_t k = 0; k < env.corpus.operads.size(); ++k) {
    const SymOperad& o = *env.corpus.operads[k];
    for (const Word& c : words(o, env.cfg.bounds.word_length))
      for (int d = 0; d < o.num_colours(); ++d)
        p.check("operad " + std::to_string(k) + " " + word_string(o, c) + " -> " + o.colour_id(d), [&] {
          return clone_hom(o, c, d, true).size() == comma_colimit_size(o, c, d);
        });
  }
}

void ff_transfer(Env& env, Property& p) {
  size_t ff = 0;
  for (const auto& f : env.corpus.maps)
    p.check<OperadMap>(
        f,
        [&](const OperadMap& x) {
          const bool lhs = is_fully_faithful_op(x);
          bool rhs = true;
          for (const Word& c : words(*x.source, env.cfg.bounds.word_length))
            for (int d = 0; d < x.source->num_colours() && rhs; ++d) rhs = induced_bijective(x, c, d);
          if (&x == &f && lhs) ++ff;
          return lhs == rhs;
        },
        smaller_maps, show_map);
  p.note(std::to_string(ff) + " fully faithful");
}

void retract_transfer(Env& env, Property& p) {
  size_t theory = 0, colour = 0;
  for (const auto& o : env.corpus.operads)
    p.check<OperadPtr>(
        o,
        [&](const OperadPtr& x) {
          const SymOperad& k = *x;
          for (int c = 0; c < k.num_colours(); ++c) {
            for (const Word& d : words(k, env.cfg.bounds.word_length)) {
              if (d.empty() || !retract_in_theory(k, c, d)) continue;
              if (x == o) ++theory;
              if (std::none_of(d.begin(), d.end(), [&](int dj) { return colour_retract_witness(k, c, dj).has_value(); })) return false;
            }
            for (int c2 = 0; c2 < k.num_colours(); ++c2) {
              if (!colour_retract_witness(k, c, c2)) continue;
              if (x == o) ++colour;
              if (!retract_in_theory(k, c, Word{c2})) return false;
            }
          }
          return true;
        },
        nullptr, show_operad);
  p.note(std::to_string(theory) + " theory retracts, " + std::to_string(colour) + " colour retracts");
}

void compose_laws(Env& env, Property& p) {
  const int bound = env.cfg.bounds.word_length;
  for (size_t k = 0; k < env.corpus.operads.size(); ++k) {
    const SymOperad& o = *env.corpus.operads[k];
    const auto ws = words(o, bound);
    auto any_word = [&] { return ws[std::uniform_int_distribution<size_t>(0, ws.size() - 1)(env.rng)]; };
    auto any_arrow = [&](const Word& s, const Word& t) -> std::optional<TheoryArrow> {
      if (theory_hom_size(o, s, t) > 5000) return std::nullopt;
      const auto hs = theory_hom(o, s, t);
      if (hs.empty()) return std::nullopt;
      return hs[std::uniform_int_distribution<size_t>(0, hs.size() - 1)(env.rng)];
    };
    for (int trial = 0, done = 0; trial < 200 && done < 10; ++trial) {
      const Word a = any_word(), b = any_word(), c = any_word(), d = any_word();
      const auto g = any_arrow(a, b);
      const auto h = g ? any_arrow(b, c) : std::nullopt;
      const auto e = h ? any_arrow(c, d) : std::nullopt;
      if (!e) continue;
      ++done;
      std::mt19937_64 local(env.rng());
      p.check("operad " + std::to_string(k) + ": " + arrow_string(o, *g) + ", " + arrow_string(o, *h) + ", " + arrow_string(o, *e), [&] {
        const TheoryArrow left = compose_theory(o, *e, compose_theory(o, *h, *g));
        const TheoryArrow right = compose_theory(o, compose_theory(o, *e, *h), *g);
        const bool unital = compose_theory(o, identity_arrow(o, b), *g) == *g && compose_theory(o, *g, identity_arrow(o, a)) == *g;
        const bool independent = compose_theory(o, *h, *g, &local) == compose_theory(o, *h, *g) &&
                                 compose_theory(o, *e, *h, &local) == compose_theory(o, *e, *h);
        return left == right && unital && independent;
      });
    }
  }
}

void product_law(Env& env, Property& p) {
  const int bound = std::min(2, env.cfg.bounds.word_length);
  for (size_t k = 0; k < env.corpus.operads.size(); ++k) {
    const SymOperad& o = *env.corpus.operads[k];
    for (const Word& c : words(o, bound))
      for (const Word& d : words(o, bound))
        p.check("operad " + std::to_string(k) + " " + word_string(o, c) + " -> " + word_string(o, d), [&] {
          size_t product = 1;
          std::vector<std::vector<TheoryClass>> parts;
          for (int x : d) {
            parts.push_back(clone_hom(o, c, x));
            product *= parts.back().size();
          }
          const auto arrows = theory_hom(o, c, d);
          if (arrows.size() != product) return false;
          for (const auto& a : arrows)
            for (size_t i = 0; i < d.size(); ++i)
              if (!std::binary_search(parts[i].begin(), parts[i].end(), a.components[i])) return false;
          return true;
        });
  }
}

void bar_kan(Env& env, Property& p) {
  const Functor iota = iota_functor();
  p.check("iota, h0, d = 1 collapses to one element",
          [&] { return compare_pi0(iota, representable_module(iota.source, 0), iota.target->object("1"), 4) == 1; });
  const int levels = 4;
  size_t done = 0;
  for (size_t k = 0; done < 100 && k < 10 * env.corpus.functors.size(); ++k) {
    const Functor& f = env.corpus.functors[k % env.corpus.functors.size()];
    const CModule x = random_module(env.rng, f.source, 2);
    const int d = std::uniform_int_distribution<int>(0, f.target->num_objects() - 1)(env.rng);
    ++done;
    p.check("functor " + std::to_string(k % env.corpus.functors.size()) + " module " + module_to_json(x).dump() + " at " + f.target->object_id(d),
            [&] { return compare_pi0(f, x, d, levels) == kan_colim_oracle(f, x, d).count; });
  }
}

void jk_homotopy(Env& env, Property& p) {
  struct Instance {
    std::string label;
    OperadMap f;
    FiniteAlgebra a;
    Word u, v;
  };
  std::vector<Instance> instances;
  auto b = standard_operad("B");
  for (const auto& alg : all_algebras(*b, {2, 2}))
    instances.push_back({"B, algebra " + algebra_to_json(alg, *b).dump(), identity_operad_map(b), alg, {b->colour("a")}, {b->colour("b")}});
  for (const auto& [i, alg] : env.corpus.algebras) {
    const OperadPtr& o = env.corpus.operads[i];
    if (instances.size() >= 16) break;
    const int last = o->num_colours() - 1;
    instances.push_back({"operad " + std::to_string(i) + ", carrier algebra", identity_operad_map(o), alg, {0}, {last}});
    const OperadCauchy c = cauchy_completion_operad(o);
    instances.push_back({"operad " + std::to_string(i) + " into its completion", c.canonical, alg, {c.canonical.on_colour(0)}, {c.canonical.on_colour(last)}});
  }
  for (const auto& in : instances) {
    JKConfig cfg{in.f, in.a, in.u, in.v};
    cfg.levels = env.cfg.bounds.bar_levels;
    cfg.word_bound = 4;
    std::string failure;
    p.check(in.label, [&] {
      const JKReport r = verify_homotopy_jk(cfg);
      failure = r.failure;
      if (!r.ok()) throw Error(ErrorKind::PropertyViolation, r.failure);
      std::mt19937_64 local(env.rng());
      cfg.rng = &local;
      const JKReport again = verify_homotopy_jk(cfg);
      if (!again.ok()) throw Error(ErrorKind::PropertyViolation, "with random representatives: " + again.failure);
      return again.pi0_source == r.pi0_source;
    });
  }
}

void bar_functorial(Env& env, Property& p) {
  for (const auto& c : env.corpus.categories) {
    if (c->num_morphisms() < 2) continue;
    const int g = std::uniform_int_distribution<int>(0, c->num_morphisms() - 1)(env.rng);
    const int m = std::uniform_int_distribution<int>(0, c->num_morphisms() - 1)(env.rng);
    p.check<CatPtr>(
        c,
        [&](const CatPtr& k) {
          // (−)∘g: h_cod(g) → h_dom(g) and m∘(−): C(−, dom m) → C(−, cod m)
          const int src = k->cod(g), dst = k->dom(g);
          const CModule x = representable_module(k, src), x2 = representable_module(k, dst);
          const Functor id = identity_functor(k);
          const CComodule y = hom_into(id, k->dom(m)), y2 = hom_into(id, k->cod(m));
          std::vector<std::vector<int>> ex(static_cast<size_t>(k->num_objects())), ey(ex.size());
          for (int o = 0; o < k->num_objects(); ++o) {
            for (int a : k->hom(src, o)) {
              const auto& to = k->hom(dst, o);
              ex[static_cast<size_t>(o)].push_back(static_cast<int>(std::find(to.begin(), to.end(), k->compose(a, g)) - to.begin()));
            }
            for (int a : k->hom(o, k->dom(m))) {
              const auto& to = k->hom(o, k->cod(m));
              ey[static_cast<size_t>(o)].push_back(static_cast<int>(std::find(to.begin(), to.end(), k->compose(m, a)) - to.begin()));
            }
          }
          auto s = std::make_shared<const TruncSSet>(bar_construction(x, y, 3));
          auto t = std::make_shared<const TruncSSet>(bar_construction(x2, y2, 3));
          validate_simp_map(bar_map(ex, ey, s, t, x, y));
          return true;
        },
        nullptr, show_category);
  }
}

void strong_deformation(Env& env, Property& p) {
  size_t ff = 0;
  for (const auto& f : env.corpus.functors) {
    if (!is_fully_faithful(f)) continue;
    ++ff;
    p.check<Functor>(
        f,
        [](const Functor& x) {
          for (int c = 0; c < x.source->num_objects(); ++c)
            for (int c2 = 0; c2 < x.source->num_objects(); ++c2)
              if (compare_pi0(x, representable_module(x.source, c), x.on_object(c2), 1) != static_cast<int>(x.source->hom(c, c2).size())) return false;
          return true;
        },
        smaller_functors, show_functor);
  }
  p.note(std::to_string(ff) + " fully faithful functors");
}

void corpus_determinism(Env& env, Property& p) {
  p.check("corpus rebuilt from seed " + std::to_string(env.cfg.seed), [&] {
    const Corpus again = build_corpus(env.cfg.seed, env.cfg.bounds);
    auto dump = [](const Corpus& k) {
      Json j;
      for (const auto& c : k.categories) j["c"].push_back(category_to_json(*c));
      for (const auto& f : k.functors) j["f"].push_back(functor_to_json(f));
      for (const auto& o : k.operads) j["o"].push_back(operad_to_json(*o));
      for (const auto& f : k.maps) j["m"].push_back(operad_map_to_json(f));
      return j.dump();
    };
    return dump(again) == dump(env.corpus);
  });
}

struct Entry {
  PropertyInfo info;
  Body body;
};

const std::vector<Entry>& registry() {
  static const std::vector<Entry> r = {
      {{"corpus-valid", "cli", "every corpus object passes its validator"}, corpus_valid},
      {{"morita-karoubi", "fincat", "morita_report verdict agrees with equivalence of Karoubi envelopes"}, morita_karoubi},
      {{"cauchy-triple", "fincat", "Cauchy complete iff RLP against iota iff iota-local"}, cauchy_triple},
      {{"karoubi-idempotent", "fincat", "Karoubi(C) -> Karoubi(Karoubi(C)) is an equivalence"}, karoubi_idempotent},
      {{"karoubi-morita", "fincat", "C -> Karoubi(C) is a Morita equivalence"}, karoubi_morita},
      {{"splitting-unique", "fincat", "splittings of an idempotent are unique up to unique iso"}, splitting_unique},
      {{"morita-op", "fincat", "F is Morita iff F^op is"}, morita_op},
      {{"nerve-functorial", "simpset", "nerve(G F) = nerve(G) nerve(F)"}, nerve_functorial},
      {{"nerve-horns", "simpset", "nerves have unique inner 2-horn fillers"}, nerve_horns},
      {{"ret-injective", "simpset", "rho: Ret -> N(Split) is levelwise injective for D <= 6"}, ret_injective},
      {{"nerve-rlp", "simpset", "RLP against iota agrees with RLP of the nerve against N(iota)"}, nerve_rlp},
      {{"operad-morita-cauchy", "operad", "morita_report_op verdict agrees with equivalence of Cauchy completions"}, operad_morita},
      {{"retracts-underlying", "operad", "f is essentially surjective up to retracts iff j*(f) is"}, retracts_underlying},
      {{"algebra-shadow", "operad", "Morita equivalences restrict to bijections on small algebra classes"}, algebra_shadow_property},
      {{"free-linear", "operad", "Omega(linear(n)) is isomorphic to j!(linear(n)) for n <= 4"}, free_linear},
      {{"dendroidal-linear", "operad", "N_d(O) at linear(n) is nerve(j*(O)) in level n for n <= 3"}, dendroidal_linear},
      {{"finality", "theory", "Ord/Sigma_f formula agrees with the comma-category colimit"}, finality},
      {{"ff-transfer", "theory", "f fully faithful iff T(f) is bijective on hom components"}, ff_transfer},
      {{"retract-transfer", "theory", "theory retracts and colour retracts correspond"}, retract_transfer},
      {{"compose-laws", "theory", "theory composition is associative, unital and representative independent"}, compose_laws},
      {{"product-law", "theory", "T(O)(c, d) is the product of its components"}, product_law},
      {{"bar-kan", "bar", "pi0 of the bar construction is the coend"}, bar_kan},
      {{"jk-homotopy", "bar", "psi, sigma, phi, delta are simplicial; J and K are homotopies; delta is a pi0 bijection"}, jk_homotopy},
      {{"bar-functorial", "bar", "module morphisms induce simplicial maps of bar constructions"}, bar_functorial},
      {{"strong-deformation", "bar", "pi0 of ho_kan(f, h_c)(f c') is C(c, c') for fully faithful f"}, strong_deformation},
      {{"corpus-determinism", "cli", "the seed reproduces the corpus exactly"}, corpus_determinism},
  };
  return r;
}

}  // namespace

void parse_bounds(const std::string& text, CorpusBounds& b) {
  std::map<std::string, int*> keys = {{"objects", &b.objects},       {"morphisms", &b.morphisms}, {"colours", &b.colours},
                                      {"operations", &b.operations}, {"word_length", &b.word_length}, {"sset_dim", &b.sset_dim},
                                      {"carrier", &b.carrier},       {"bar_levels", &b.bar_levels}, {"categories", &b.categories},
                                      {"operads", &b.operads},       {"functors", &b.functors},     {"maps", &b.maps}};
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (item.empty()) continue;
    const auto eq = item.find('=');
    if (eq == std::string::npos) fail(ErrorKind::BadParameters, "bound " + item + " is not k=v");
    const std::string k = item.substr(0, eq);
    auto it = keys.find(k);
    if (it == keys.end()) fail(ErrorKind::BadParameters, "unknown bound " + k);
    int v = 0;
    try {
      v = std::stoi(item.substr(eq + 1));
    } catch (const std::exception&) {
      fail(ErrorKind::BadParameters, "bound " + k + " needs an integer");
    }
    if (v <= 0) fail(ErrorKind::BadParameters, "bound " + k + " must be positive");
    *it->second = v;
  }
}

const std::vector<PropertyInfo>& property_registry() {
  static const std::vector<PropertyInfo> infos = [] {
    std::vector<PropertyInfo> v;
    for (const auto& e : registry()) v.push_back(e.info);
    return v;
  }();
  return infos;
}

bool VerifySummary::ok() const {
  return std::all_of(results.begin(), results.end(), [](const PropertyResult& r) { return r.failed == 0; });
}

VerifySummary verify_suite(const VerifyConfig& config) {
  if (!config.only.empty() &&
      std::none_of(registry().begin(), registry().end(), [&](const Entry& e) { return e.info.name == config.only; }))
    fail(ErrorKind::BadParameters, "no property named " + config.only);
  const Corpus corpus = build_corpus(config.seed, config.bounds);
  VerifySummary s{config.seed, config.bounds, {}};
  for (size_t k = 0; k < registry().size(); ++k) {
    const Entry& e = registry()[k];
    if (!config.only.empty() && e.info.name != config.only) continue;
    // each property draws from its own stream so that --only reproduces the full run
    Env env{config, corpus, std::mt19937_64(config.seed * 1000003 + k)};
    PropertyResult r;
    r.info = e.info;
    Property p(r);
    e.body(env, p);
    s.results.push_back(std::move(r));
  }
  return s;
}

std::string summary_text(const VerifySummary& s) {
  std::ostringstream out;
  const CorpusBounds& b = s.bounds;
  out << "verify seed=" << s.seed << " categories=" << b.categories << " functors=" << b.functors << " operads=" << b.operads << " maps=" << b.maps
      << "\n";
  size_t failed = 0;
  for (const auto& r : s.results) {
    out << (r.failed ? "FAIL " : "pass ") << r.info.name << " [" << r.info.module << "] " << r.passed << "/" << r.cases;
    if (r.skipped) out << " (" << r.skipped << " skipped)";
    out << "\n";
    for (const auto& n : r.notes) out << "  note: " << n << "\n";
    if (r.failed) {
      ++failed;
      out << "  witness: " << r.witness << "\n";
    }
  }
  out << "summary: " << s.results.size() << " properties, " << s.results.size() - failed << " passed, " << failed << " failed\n";
  return out.str();
}

Json summary_json(const VerifySummary& s) {
  Json j;
  j["seed"] = s.seed;
  const CorpusBounds& b = s.bounds;
  j["bounds"] = {{"objects", b.objects},       {"morphisms", b.morphisms},     {"colours", b.colours},   {"operations", b.operations},
                 {"word_length", b.word_length}, {"sset_dim", b.sset_dim},     {"carrier", b.carrier},   {"bar_levels", b.bar_levels},
                 {"categories", b.categories},   {"operads", b.operads},       {"functors", b.functors}, {"maps", b.maps}};
  j["properties"] = Json::array();
  size_t failed = 0;
  for (const auto& r : s.results) {
    j["properties"].push_back({{"name", r.info.name},
                               {"module", r.info.module},
                               {"statement", r.info.statement},
                               {"cases", r.cases},
                               {"passed", r.passed},
                               {"failed", r.failed},
                               {"skipped", r.skipped},
                               {"witness", r.witness},
                               {"notes", r.notes}});
    if (r.failed) ++failed;
  }
  j["passed"] = s.results.size() - failed;
  j["failed"] = failed;
  return j;
}

}  // namespace moritakit

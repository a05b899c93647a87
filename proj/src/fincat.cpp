#include "moritakit/fincat.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <set>
#include <unordered_map>

#include "moritakit/error.hpp"
#include "moritakit/limits.hpp"

namespace moritakit {

namespace {

template <class T>
std::vector<size_t> sort_order(const std::vector<T>& keys) {
  std::vector<size_t> order(keys.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](size_t a, size_t b) { return keys[a] < keys[b]; });
  return order;
}

std::string q(const std::string& s) { return "'" + s + "'"; }

}  // namespace

FinCategory FinCategory::build(const CategoryData& data, Check check) {
  FinCategory c;
  c.object_ids_ = data.objects;
  std::sort(c.object_ids_.begin(), c.object_ids_.end());
  for (size_t k = 1; k < c.object_ids_.size(); ++k)
    if (c.object_ids_[k] == c.object_ids_[k - 1]) fail(ErrorKind::Malformed, "duplicate object " + q(c.object_ids_[k]));

  std::vector<std::string> raw_ids;
  raw_ids.reserve(data.morphisms.size());
  for (const auto& m : data.morphisms) raw_ids.push_back(m.id);
  const auto order = sort_order(raw_ids);
  for (size_t k : order) {
    const auto& m = data.morphisms[k];
    if (!c.mor_ids_.empty() && c.mor_ids_.back() == m.id) fail(ErrorKind::Malformed, "duplicate morphism " + q(m.id));
    int d = c.find_object(m.dom), t = c.find_object(m.cod);
    if (d < 0) fail(ErrorKind::UnknownName, "morphism " + q(m.id) + " has unknown domain " + q(m.dom));
    if (t < 0) fail(ErrorKind::UnknownName, "morphism " + q(m.id) + " has unknown codomain " + q(m.cod));
    c.mor_ids_.push_back(m.id);
    c.dom_.push_back(d);
    c.cod_.push_back(t);
  }

  const size_t no = c.object_ids_.size(), nm = c.mor_ids_.size();
  c.identity_.assign(no, -1);
  for (const auto& [obj, mor] : data.identities) {
    int x = c.find_object(obj);
    if (x < 0) fail(ErrorKind::UnknownName, "identity given for unknown object " + q(obj));
    int f = c.find_morphism(mor);
    if (f < 0) fail(ErrorKind::UnknownName, "identity of " + q(obj) + " is unknown morphism " + q(mor));
    if (c.dom(f) != x || c.cod(f) != x)
      fail(ErrorKind::BadIdentity, "identity " + q(mor) + " of " + q(obj) + " is not an endomorphism of it");
    c.identity_[static_cast<size_t>(x)] = f;
  }
  for (size_t x = 0; x < no; ++x)
    if (c.identity_[x] < 0) fail(ErrorKind::BadIdentity, "object " + q(c.object_ids_[x]) + " has no identity");

  c.hom_.assign(no * no, {});
  c.out_.assign(no, {});
  c.in_.assign(no, {});
  for (size_t f = 0; f < nm; ++f) {
    c.hom_[static_cast<size_t>(c.dom_[f]) * no + static_cast<size_t>(c.cod_[f])].push_back(static_cast<int>(f));
    c.out_[static_cast<size_t>(c.dom_[f])].push_back(static_cast<int>(f));
    c.in_[static_cast<size_t>(c.cod_[f])].push_back(static_cast<int>(f));
  }

  c.table_.assign(nm * nm, -1);
  auto slot = [&](int g, int f) -> int& { return c.table_[static_cast<size_t>(g) * nm + static_cast<size_t>(f)]; };
  for (const auto& [gs, fs, hs] : data.compose) {
    int g = c.find_morphism(gs), f = c.find_morphism(fs), h = c.find_morphism(hs);
    if (g < 0 || f < 0 || h < 0) {
      const std::string& bad = g < 0 ? gs : (f < 0 ? fs : hs);
      fail(ErrorKind::UnknownName, "composition entry mentions unknown morphism " + q(bad));
    }
    if (c.cod(f) != c.dom(g)) fail(ErrorKind::Malformed, "composition entry (" + gs + ", " + fs + ") is not composable");
    if (c.dom(h) != c.dom(f) || c.cod(h) != c.cod(g))
      fail(ErrorKind::Malformed, "composite " + gs + "∘" + fs + " = " + hs + " has wrong domain or codomain");
    int& s = slot(g, f);
    if (s >= 0 && s != h) fail(ErrorKind::Malformed, "conflicting entries for " + gs + "∘" + fs);
    s = h;
  }
  // identity composites may be omitted; given ones must obey the unit laws
  for (size_t f = 0; f < nm; ++f) {
    const int fi = static_cast<int>(f);
    int& left = slot(c.identity(c.cod(fi)), fi);
    if (left >= 0 && left != fi)
      fail(ErrorKind::BadIdentity, c.mor_ids_[static_cast<size_t>(c.identity(c.cod(fi)))] + "∘" + c.mor_ids_[f] + " is not " + c.mor_ids_[f]);
    left = fi;
    int& right = slot(fi, c.identity(c.dom(fi)));
    if (right >= 0 && right != fi)
      fail(ErrorKind::BadIdentity, c.mor_ids_[f] + "∘" + c.mor_ids_[static_cast<size_t>(c.identity(c.dom(fi)))] + " is not " + c.mor_ids_[f]);
    right = fi;
  }
  for (size_t f = 0; f < nm; ++f)
    for (int g : c.out_[static_cast<size_t>(c.cod_[f])])
      if (slot(g, static_cast<int>(f)) < 0)
        fail(ErrorKind::MissingComposite, "(" + c.mor_ids_[static_cast<size_t>(g)] + ", " + c.mor_ids_[f] + ")");

  if (check == Check::Full) {
    for (size_t f = 0; f < nm; ++f) {
      const int fi = static_cast<int>(f);
      for (int g : c.out(c.cod(fi)))
        for (int h : c.out(c.cod(g)))
          if (c.compose(h, c.compose(g, fi)) != c.compose(c.compose(h, g), fi))
            fail(ErrorKind::NonAssociative, "(" + c.mor_ids_[static_cast<size_t>(h)] + ", " + c.mor_ids_[static_cast<size_t>(g)] + ", " + c.mor_ids_[f] + ")");
    }
  }
  return c;
}

int FinCategory::find_object(const std::string& id) const {
  auto it = std::lower_bound(object_ids_.begin(), object_ids_.end(), id);
  return (it != object_ids_.end() && *it == id) ? static_cast<int>(it - object_ids_.begin()) : -1;
}

int FinCategory::find_morphism(const std::string& id) const {
  auto it = std::lower_bound(mor_ids_.begin(), mor_ids_.end(), id);
  return (it != mor_ids_.end() && *it == id) ? static_cast<int>(it - mor_ids_.begin()) : -1;
}

int FinCategory::object(const std::string& id) const {
  int x = find_object(id);
  if (x < 0) fail(ErrorKind::UnknownName, "no object " + q(id));
  return x;
}

int FinCategory::morphism(const std::string& id) const {
  int f = find_morphism(id);
  if (f < 0) fail(ErrorKind::UnknownName, "no morphism " + q(id));
  return f;
}

std::vector<int> FinCategory::idempotents() const {
  std::vector<int> out;
  for (int f = 0; f < num_morphisms(); ++f)
    if (is_idempotent(f)) out.push_back(f);
  return out;
}

CategoryData FinCategory::to_data() const {
  CategoryData d;
  d.objects = object_ids_;
  for (int f = 0; f < num_morphisms(); ++f) d.morphisms.push_back({mor_ids_[static_cast<size_t>(f)], object_id(dom(f)), object_id(cod(f))});
  for (int x = 0; x < num_objects(); ++x) d.identities[object_id(x)] = morphism_id(identity(x));
  for (int f = 0; f < num_morphisms(); ++f)
    for (int g : out(cod(f)))
      d.compose.push_back({morphism_id(g), morphism_id(f), morphism_id(compose(g, f))});
  return d;
}

CatPtr make_category(const CategoryData& data, Check check) {
  return std::make_shared<const FinCategory>(FinCategory::build(data, check));
}

FinCategory validate_category(const CategoryData& raw) { return FinCategory::build(raw, Check::Full); }

namespace {

CategoryData linear_data(int n) {
  CategoryData d;
  for (int k = 0; k <= n; ++k) {
    d.objects.push_back(std::to_string(k));
    d.morphisms.push_back({"id" + std::to_string(k), std::to_string(k), std::to_string(k)});
    d.identities[std::to_string(k)] = "id" + std::to_string(k);
  }
  auto arrow = [](int a, int b) {
    return a == b ? "id" + std::to_string(a) : std::to_string(a) + "->" + std::to_string(b);
  };
  for (int a = 0; a <= n; ++a)
    for (int b = a + 1; b <= n; ++b) d.morphisms.push_back({arrow(a, b), std::to_string(a), std::to_string(b)});
  for (int a = 0; a <= n; ++a)
    for (int b = a; b <= n; ++b)
      for (int c = b; c <= n; ++c) d.compose.push_back({arrow(b, c), arrow(a, b), arrow(a, c)});
  return d;
}

}  // namespace

FinCategory standard_category(const std::string& name) {
  CategoryData d;
  if (name == "Idem") {
    d.objects = {"0"};
    d.morphisms = {{"id0", "0", "0"}, {"e", "0", "0"}};
    d.identities = {{"0", "id0"}};
    d.compose = {{"e", "e", "e"}};
  } else if (name == "Split") {
    d.objects = {"0", "1"};
    d.morphisms = {{"id0", "0", "0"}, {"id1", "1", "1"}, {"r", "0", "1"}, {"i", "1", "0"}, {"ir", "0", "0"}};
    d.identities = {{"0", "id0"}, {"1", "id1"}};
    d.compose = {{"r", "i", "id1"}, {"i", "r", "ir"}, {"ir", "ir", "ir"}, {"r", "ir", "r"}, {"ir", "i", "i"}};
  } else if (name == "I") {
    d.objects = {"0", "1"};
    d.morphisms = {{"id0", "0", "0"}, {"id1", "1", "1"}, {"f", "0", "1"}};
    d.identities = {{"0", "id0"}, {"1", "id1"}};
  } else if (name == "P") {
    d.objects = {"0", "1"};
    d.morphisms = {{"id0", "0", "0"}, {"id1", "1", "1"}, {"f", "0", "1"}, {"g", "0", "1"}};
    d.identities = {{"0", "id0"}, {"1", "id1"}};
  } else if (name == "J") {
    d.objects = {"0", "1"};
    d.morphisms = {{"id0", "0", "0"}, {"id1", "1", "1"}, {"f", "0", "1"}, {"g", "1", "0"}};
    d.identities = {{"0", "id0"}, {"1", "id1"}};
    d.compose = {{"g", "f", "id0"}, {"f", "g", "id1"}};
  } else if (name == "terminal") {
    d.objects = {"0"};
    d.morphisms = {{"id0", "0", "0"}};
    d.identities = {{"0", "id0"}};
  } else if (name.rfind("linear(", 0) == 0 && name.size() > 8 && name.back() == ')') {
    const std::string digits = name.substr(7, name.size() - 8);
    if (digits.empty() || digits.size() > 2 || !std::all_of(digits.begin(), digits.end(), ::isdigit))
      fail(ErrorKind::UnknownName, "bad linear category " + q(name));
    d = linear_data(std::stoi(digits));
  } else {
    fail(ErrorKind::UnknownName, "no standard category " + q(name));
  }
  return FinCategory::build(d, Check::Full);
}

CatPtr standard_category_ptr(const std::string& name) {
  return std::make_shared<const FinCategory>(standard_category(name));
}

FinCategory opposite(const FinCategory& c) {
  CategoryData d = c.to_data();
  for (auto& m : d.morphisms) std::swap(m.dom, m.cod);
  for (auto& e : d.compose) std::swap(e[0], e[1]);
  return FinCategory::build(d, Check::Trusted);
}

// ---- functors

void validate_functor(const Functor& f) {
  const FinCategory& s = *f.source;
  const FinCategory& t = *f.target;
  if (f.obj_map.size() != static_cast<size_t>(s.num_objects()) || f.mor_map.size() != static_cast<size_t>(s.num_morphisms()))
    fail(ErrorKind::Malformed, "functor maps do not cover the source");
  for (int x : f.obj_map)
    if (x < 0 || x >= t.num_objects()) fail(ErrorKind::Malformed, "functor object image out of range");
  for (int g = 0; g < s.num_morphisms(); ++g) {
    int h = f(g);
    if (h < 0 || h >= t.num_morphisms()) fail(ErrorKind::Malformed, "functor morphism image out of range");
    if (t.dom(h) != f.on_object(s.dom(g)) || t.cod(h) != f.on_object(s.cod(g)))
      fail(ErrorKind::Malformed, "image of " + q(s.morphism_id(g)) + " has wrong domain or codomain");
  }
  for (int x = 0; x < s.num_objects(); ++x)
    if (f(s.identity(x)) != t.identity(f.on_object(x)))
      fail(ErrorKind::Malformed, "identity of " + q(s.object_id(x)) + " is not preserved");
  for (int a = 0; a < s.num_morphisms(); ++a)
    for (int b : s.out(s.cod(a)))
      if (f(s.compose(b, a)) != t.compose(f(b), f(a)))
        fail(ErrorKind::Malformed, "composite " + s.morphism_id(b) + "∘" + s.morphism_id(a) + " is not preserved");
}

Functor identity_functor(const CatPtr& c) {
  Functor f{c, c, {}, {}};
  f.obj_map.resize(static_cast<size_t>(c->num_objects()));
  f.mor_map.resize(static_cast<size_t>(c->num_morphisms()));
  std::iota(f.obj_map.begin(), f.obj_map.end(), 0);
  std::iota(f.mor_map.begin(), f.mor_map.end(), 0);
  return f;
}

Functor compose_functors(const Functor& g, const Functor& f) {
  Functor h{f.source, g.target, {}, {}};
  for (int x : f.obj_map) h.obj_map.push_back(g.on_object(x));
  for (int m : f.mor_map) h.mor_map.push_back(g(m));
  return h;
}

Functor opposite_functor(const Functor& f, const CatPtr& source_op, const CatPtr& target_op) {
  return Functor{source_op, target_op, f.obj_map, f.mor_map};
}

bool functors_equal(const Functor& a, const Functor& b) {
  return a.obj_map == b.obj_map && a.mor_map == b.mor_map;
}

Functor iota_functor() {
  auto idem = standard_category_ptr("Idem");
  auto split = standard_category_ptr("Split");
  Functor f{idem, split, {split->object("0")}, {}};
  f.mor_map.resize(2);
  f.mor_map[static_cast<size_t>(idem->morphism("id0"))] = split->morphism("id0");
  f.mor_map[static_cast<size_t>(idem->morphism("e"))] = split->morphism("ir");
  return f;
}

Functor constant_functor(const CatPtr& source, const CatPtr& target, int x) {
  Functor f{source, target, std::vector<int>(static_cast<size_t>(source->num_objects()), x),
            std::vector<int>(static_cast<size_t>(source->num_morphisms()), target->identity(x))};
  return f;
}

// ---- idempotents

std::optional<std::pair<int, int>> split_idempotent(const FinCategory& c, int e) {
  if (!c.is_idempotent(e)) fail(ErrorKind::NotIdempotent, q(c.morphism_id(e)) + " is not idempotent");
  if (c.is_identity(e)) return std::make_pair(e, e);
  const int x = c.dom(e);
  for (int r : c.out(x))
    for (int i : c.hom(c.cod(r), x))
      if (c.compose(r, i) == c.identity(c.cod(r)) && c.compose(i, r) == e) return std::make_pair(r, i);
  return std::nullopt;
}

bool is_cauchy_complete(const FinCategory& c) {
  for (int e : c.idempotents())
    if (!split_idempotent(c, e)) return false;
  return true;
}

int Karoubi::find_object(int x, int e) const {
  for (size_t k = 0; k < objects.size(); ++k)
    if (objects[k].first == x && objects[k].second == e) return static_cast<int>(k);
  return -1;
}

int Karoubi::find_morphism(int dom, int cod, int g) const {
  for (int m : category->hom(dom, cod))
    if (underlying[static_cast<size_t>(m)] == g) return m;
  return -1;
}

Karoubi karoubi_envelope(const CatPtr& cp) {
  const FinCategory& c = *cp;
  struct Obj {
    int x, e;
    std::string id;
  };
  std::vector<Obj> objs;
  for (int x = 0; x < c.num_objects(); ++x)
    for (int e : c.hom(x, x))
      if (c.is_idempotent(e)) objs.push_back({x, e, "(" + c.object_id(x) + "," + c.morphism_id(e) + ")"});

  CategoryData d;
  std::map<std::string, std::pair<int, int>> obj_of;
  std::map<std::string, int> mor_of;
  const size_t n = objs.size();
  // per (source object, target object): underlying morphism -> envelope morphism id
  std::vector<std::map<int, std::string>> homs(n * n);
  for (size_t a = 0; a < n; ++a) {
    d.objects.push_back(objs[a].id);
    obj_of[objs[a].id] = {objs[a].x, objs[a].e};
  }
  for (size_t a = 0; a < n; ++a)
    for (size_t b = 0; b < n; ++b)
      for (int g : c.hom(objs[a].x, objs[b].x)) {
        if (c.compose(g, objs[a].e) != g || c.compose(objs[b].e, g) != g) continue;
        std::string id = objs[a].id + "-" + c.morphism_id(g) + "->" + objs[b].id;
        d.morphisms.push_back({id, objs[a].id, objs[b].id});
        mor_of[id] = g;
        homs[a * n + b][g] = id;
        if (a == b && g == objs[a].e) d.identities[objs[a].id] = id;
      }
  for (size_t a = 0; a < n; ++a)
    for (size_t b = 0; b < n; ++b)
      for (size_t t = 0; t < n; ++t)
        for (const auto& [f, fid] : homs[a * n + b])
          for (const auto& [g, gid] : homs[b * n + t]) d.compose.push_back({gid, fid, homs[a * n + t].at(c.compose(g, f))});

  Karoubi k;
  k.category = make_category(d, Check::Trusted);
  const FinCategory& kc = *k.category;
  for (int o = 0; o < kc.num_objects(); ++o) k.objects.push_back(obj_of.at(kc.object_id(o)));
  for (int m = 0; m < kc.num_morphisms(); ++m) k.underlying.push_back(mor_of.at(kc.morphism_id(m)));

  k.canonical = Functor{cp, k.category, {}, {}};
  for (int x = 0; x < c.num_objects(); ++x) k.canonical.obj_map.push_back(k.find_object(x, c.identity(x)));
  for (int f = 0; f < c.num_morphisms(); ++f)
    k.canonical.mor_map.push_back(k.find_morphism(k.canonical.on_object(c.dom(f)), k.canonical.on_object(c.cod(f)), f));
  return k;
}

Functor karoubi_functor(const Functor& f, const Karoubi& ks, const Karoubi& kt) {
  Functor g{ks.category, kt.category, {}, {}};
  for (const auto& [x, e] : ks.objects) g.obj_map.push_back(kt.find_object(f.on_object(x), f(e)));
  const FinCategory& kc = *ks.category;
  for (int m = 0; m < kc.num_morphisms(); ++m)
    g.mor_map.push_back(kt.find_morphism(g.on_object(kc.dom(m)), g.on_object(kc.cod(m)), f(ks.underlying[static_cast<size_t>(m)])));
  return g;
}

// ---- Morita decision

namespace {

std::optional<std::pair<int, int>> first_ff_failure(const Functor& f) {
  const FinCategory& s = *f.source;
  const FinCategory& t = *f.target;
  std::vector<char> hit(static_cast<size_t>(t.num_morphisms()), 0);
  for (int x = 0; x < s.num_objects(); ++x)
    for (int y = 0; y < s.num_objects(); ++y) {
      const auto& src = s.hom(x, y);
      const auto& dst = t.hom(f.on_object(x), f.on_object(y));
      bool ok = src.size() == dst.size();
      for (int g : src) {
        if (!ok) break;
        char& h = hit[static_cast<size_t>(f(g))];
        if (h) ok = false;
        h = 1;
      }
      for (int g : src) hit[static_cast<size_t>(f(g))] = 0;
      if (!ok) return std::make_pair(x, y);
    }
  return std::nullopt;
}

}  // namespace

bool is_fully_faithful(const Functor& f) { return !first_ff_failure(f).has_value(); }

MoritaReport morita_report(const Functor& f) {
  const FinCategory& s = *f.source;
  const FinCategory& t = *f.target;
  MoritaReport rep;
  rep.ff_failure = first_ff_failure(f);
  rep.fully_faithful = !rep.ff_failure;
  rep.essentially_surjective = true;
  rep.essentially_surjective_up_to_retracts = true;
  for (int d = 0; d < t.num_objects(); ++d) {
    ObjectWitness w;
    w.target_object = d;
    for (int c = 0; c < s.num_objects() && !(w.retract && w.iso); ++c) {
      const int fc = f.on_object(c);
      for (int r : t.hom(fc, d))
        for (int i : t.hom(d, fc)) {
          if (t.compose(r, i) != t.identity(d)) continue;
          if (!w.retract) w.retract = Triple{c, r, i};
          if (!w.iso && t.compose(i, r) == t.identity(fc)) w.iso = Triple{c, r, i};
        }
    }
    rep.essentially_surjective = rep.essentially_surjective && w.iso.has_value();
    rep.essentially_surjective_up_to_retracts = rep.essentially_surjective_up_to_retracts && w.retract.has_value();
    rep.witnesses.push_back(w);
  }
  rep.verdict = rep.fully_faithful && rep.essentially_surjective_up_to_retracts;
  return rep;
}

bool is_essentially_surjective(const Functor& f) { return morita_report(f).essentially_surjective; }

bool is_equivalence(const Functor& f) {
  if (!is_fully_faithful(f)) return false;
  return is_essentially_surjective(f);
}

bool morita_cross_check(const Functor& f) {
  const bool verdict = morita_report(f).verdict;
  Karoubi ks = karoubi_envelope(f.source);
  Karoubi kt = karoubi_envelope(f.target);
  const bool oracle = is_equivalence(karoubi_functor(f, ks, kt));
  if (verdict != oracle)
    fail(ErrorKind::OracleDisagreement, std::string("definitional Morita verdict ") + (verdict ? "true" : "false") +
                                            " but Karoubi equivalence " + (oracle ? "true" : "false"));
  return verdict;
}

// ---- functor enumeration

namespace {

struct FunctorSearch {
  const FinCategory& c;
  const FinCategory& d;
  EnumBudget& budget;
  // composable triples (g, f, g∘f) grouped by the largest index among them
  std::vector<std::vector<std::array<int, 3>>> triples;
  std::vector<int> obj, mor;

  FunctorSearch(const FinCategory& c_, const FinCategory& d_, EnumBudget& b) : c(c_), d(d_), budget(b) {
    triples.resize(static_cast<size_t>(c.num_morphisms()));
    for (int f = 0; f < c.num_morphisms(); ++f)
      for (int g : c.out(c.cod(f))) {
        const int h = c.compose(g, f);
        triples[static_cast<size_t>(std::max({f, g, h}))].push_back({g, f, h});
      }
  }

  bool consistent(int k) const {
    for (const auto& [g, f, h] : triples[static_cast<size_t>(k)])
      if (d.compose(mor[static_cast<size_t>(g)], mor[static_cast<size_t>(f)]) != mor[static_cast<size_t>(h)]) return false;
    return true;
  }

  // visit returns false to stop; order is deterministic unless shuffle is given
  bool run(const std::function<bool()>& visit, const std::function<void(std::vector<int>&)>* shuffle) {
    obj.assign(static_cast<size_t>(c.num_objects()), -1);
    mor.assign(static_cast<size_t>(c.num_morphisms()), -1);
    return objects(0, visit, shuffle);
  }

  bool objects(int x, const std::function<bool()>& visit, const std::function<void(std::vector<int>&)>* shuffle) {
    if (x == c.num_objects()) return morphisms(0, visit, shuffle);
    std::vector<int> cands(static_cast<size_t>(d.num_objects()));
    std::iota(cands.begin(), cands.end(), 0);
    if (shuffle) (*shuffle)(cands);
    for (int y : cands) {
      budget.tick();
      obj[static_cast<size_t>(x)] = y;
      bool feasible = true;
      for (int f : c.out(x))
        if (c.cod(f) <= x && d.hom(y, obj[static_cast<size_t>(c.cod(f))]).empty()) feasible = false;
      for (int f : c.in(x))
        if (c.dom(f) <= x && d.hom(obj[static_cast<size_t>(c.dom(f))], y).empty()) feasible = false;
      if (feasible && !objects(x + 1, visit, shuffle)) return false;
    }
    obj[static_cast<size_t>(x)] = -1;
    return true;
  }

  bool morphisms(int k, const std::function<bool()>& visit, const std::function<void(std::vector<int>&)>* shuffle) {
    if (k == c.num_morphisms()) return visit();
    const int a = obj[static_cast<size_t>(c.dom(k))], b = obj[static_cast<size_t>(c.cod(k))];
    std::vector<int> cands;
    if (c.is_identity(k))
      cands = {d.identity(a)};
    else
      cands = d.hom(a, b);
    if (shuffle) (*shuffle)(cands);
    for (int g : cands) {
      budget.tick();
      mor[static_cast<size_t>(k)] = g;
      if (consistent(k) && !morphisms(k + 1, visit, shuffle)) return false;
    }
    mor[static_cast<size_t>(k)] = -1;
    return true;
  }
};

}  // namespace

std::vector<Functor> enumerate_functors(const CatPtr& c, const CatPtr& d, size_t limit) {
  EnumBudget budget("functor enumeration");
  FunctorSearch search(*c, *d, budget);
  std::vector<Functor> out;
  search.run(
      [&] {
        if (out.size() == limit)
          fail(ErrorKind::LimitExceeded, "more than " + std::to_string(limit) + " functors");
        out.push_back(Functor{c, d, search.obj, search.mor});
        return true;
      },
      nullptr);
  return out;
}

std::optional<Functor> search_functor(const CatPtr& c, const CatPtr& d,
                                      const std::function<void(std::vector<int>&)>& shuffle,
                                      std::uint64_t cap) {
  EnumBudget budget("random functor search", cap);
  FunctorSearch search(*c, *d, budget);
  std::optional<Functor> found;
  try {
    search.run(
        [&] {
          found = Functor{c, d, search.obj, search.mor};
          return false;
        },
        &shuffle);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::LimitExceeded) throw;
  }
  return found;
}

bool has_rlp_cat(const Functor& p, const Functor& i, size_t limit) {
  const CatPtr a = i.source, b = i.target, x = p.source, y = p.target;
  const auto tops = enumerate_functors(a, x, limit);
  const auto bottoms = enumerate_functors(b, y, limit);
  const auto lifts = enumerate_functors(b, x, limit);
  using Key = std::pair<std::vector<int>, std::vector<int>>;
  auto key = [](const Functor& f) { return Key{f.obj_map, f.mor_map}; };
  std::set<std::pair<Key, Key>> solvable;
  for (const auto& l : lifts) solvable.insert({key(compose_functors(l, i)), key(compose_functors(p, l))});
  for (const auto& u : tops)
    for (const auto& v : bottoms) {
      if (!functors_equal(compose_functors(p, u), compose_functors(v, i))) continue;
      if (!solvable.count({key(u), key(v)})) return false;
    }
  return true;
}

FunctorGroupoid iso_functor_groupoid(const CatPtr& cp, const CatPtr& dp, size_t limit) {
  const FinCategory& c = *cp;
  const FinCategory& d = *dp;
  FunctorGroupoid g;
  g.functors = enumerate_functors(cp, dp, limit);

  std::vector<int> inverse_of(static_cast<size_t>(d.num_morphisms()), -1);
  for (int f = 0; f < d.num_morphisms(); ++f)
    for (int h : d.hom(d.cod(f), d.dom(f)))
      if (d.compose(h, f) == d.identity(d.dom(f)) && d.compose(f, h) == d.identity(d.cod(f))) inverse_of[static_cast<size_t>(f)] = h;

  EnumBudget budget("natural isomorphism search");
  struct Nat {
    int s, t;
    std::vector<int> comp;
  };
  std::vector<Nat> nats;
  const int nc = c.num_objects();
  for (size_t s = 0; s < g.functors.size(); ++s)
    for (size_t t = 0; t < g.functors.size(); ++t) {
      const Functor& F = g.functors[s];
      const Functor& G = g.functors[t];
      std::vector<int> comp(static_cast<size_t>(nc), -1);
      std::function<void(int)> rec = [&](int x) {
        if (x == nc) {
          nats.push_back({static_cast<int>(s), static_cast<int>(t), comp});
          return;
        }
        for (int h : d.hom(F.on_object(x), G.on_object(x))) {
          budget.tick();
          if (inverse_of[static_cast<size_t>(h)] < 0) continue;
          comp[static_cast<size_t>(x)] = h;
          bool ok = true;
          for (int f = 0; f < c.num_morphisms() && ok; ++f) {
            const int a = c.dom(f), b = c.cod(f);
            if (a > x || b > x) continue;
            ok = d.compose(G(f), comp[static_cast<size_t>(a)]) == d.compose(comp[static_cast<size_t>(b)], F(f));
          }
          if (ok) rec(x + 1);
        }
        comp[static_cast<size_t>(x)] = -1;
      };
      rec(0);
    }

  auto pad = [](const char* prefix, size_t k) {
    std::string s = std::to_string(k);
    return prefix + std::string(s.size() < 6 ? 6 - s.size() : 0, '0') + s;
  };
  CategoryData data;
  for (size_t k = 0; k < g.functors.size(); ++k) data.objects.push_back(pad("F", k));
  std::map<std::tuple<int, int, std::vector<int>>, size_t> index;
  for (size_t k = 0; k < nats.size(); ++k) {
    data.morphisms.push_back({pad("n", k), pad("F", static_cast<size_t>(nats[k].s)), pad("F", static_cast<size_t>(nats[k].t))});
    index[{nats[k].s, nats[k].t, nats[k].comp}] = k;
  }
  for (size_t k = 0; k < g.functors.size(); ++k) {
    std::vector<int> ids;
    for (int x = 0; x < nc; ++x) ids.push_back(d.identity(g.functors[k].on_object(x)));
    data.identities[pad("F", k)] = pad("n", index.at({static_cast<int>(k), static_cast<int>(k), ids}));
  }
  std::vector<std::vector<size_t>> by_source(g.functors.size());
  for (size_t k = 0; k < nats.size(); ++k) by_source[static_cast<size_t>(nats[k].s)].push_back(k);
  for (size_t a = 0; a < nats.size(); ++a)
    for (size_t b : by_source[static_cast<size_t>(nats[a].t)]) {
      std::vector<int> comp(static_cast<size_t>(nc));
      for (int x = 0; x < nc; ++x) comp[static_cast<size_t>(x)] = d.compose(nats[b].comp[static_cast<size_t>(x)], nats[a].comp[static_cast<size_t>(x)]);
      data.compose.push_back({pad("n", b), pad("n", a), pad("n", index.at({nats[a].s, nats[b].t, comp}))});
    }
  g.category = make_category(data, Check::Trusted);
  // ids are zero padded, so index order matches enumeration order
  for (const auto& n : nats) g.components.push_back(n.comp);
  return g;
}

bool iota_locality_check(const CatPtr& c, size_t limit) {
  const Functor iota = iota_functor();
  const FunctorGroupoid gs = iso_functor_groupoid(iota.target, c, limit);
  const FunctorGroupoid gi = iso_functor_groupoid(iota.source, c, limit);

  std::map<std::pair<std::vector<int>, std::vector<int>>, int> functor_index;
  for (size_t k = 0; k < gi.functors.size(); ++k)
    functor_index[{gi.functors[k].obj_map, gi.functors[k].mor_map}] = static_cast<int>(k);
  std::map<std::tuple<int, int, std::vector<int>>, int> nat_index;
  for (int m = 0; m < gi.category->num_morphisms(); ++m)
    nat_index[{gi.category->dom(m), gi.category->cod(m), gi.components[static_cast<size_t>(m)]}] = m;

  Functor restrict{gs.category, gi.category, {}, {}};
  for (const auto& f : gs.functors) {
    Functor r = compose_functors(f, iota);
    restrict.obj_map.push_back(functor_index.at({r.obj_map, r.mor_map}));
  }
  const int zero = iota.on_object(0);
  for (int m = 0; m < gs.category->num_morphisms(); ++m) {
    const int s = restrict.on_object(gs.category->dom(m)), t = restrict.on_object(gs.category->cod(m));
    restrict.mor_map.push_back(nat_index.at({s, t, {gs.components[static_cast<size_t>(m)][static_cast<size_t>(zero)]}}));
  }
  return is_equivalence(restrict);
}

std::string describe_category(const FinCategory& c) {
  return std::to_string(c.num_objects()) + " objects, " + std::to_string(c.num_morphisms()) + " morphisms";
}

}  // namespace moritakit

#include "moritakit/operad.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <set>

#include "moritakit/error.hpp"
#include "moritakit/limits.hpp"
#include "moritakit/tree.hpp"

namespace moritakit {

namespace {

std::string q(const std::string& s) { return "'" + s + "'"; }

const std::vector<Perm>& perms_of(int n) {
  static std::vector<std::vector<Perm>> cache;
  while (cache.size() <= static_cast<size_t>(n)) cache.push_back(all_perms(static_cast<int>(cache.size())));
  return cache[static_cast<size_t>(n)];
}

const std::vector<int> kNoOps;

// All tuples choosing one element from each list.
void for_each_tuple(const std::vector<const std::vector<int>*>& lists, const std::function<void(const std::vector<int>&)>& fn) {
  std::vector<int> cur(lists.size());
  std::function<void(size_t)> rec = [&](size_t k) {
    if (k == lists.size()) {
      fn(cur);
      return;
    }
    for (int v : *lists[k]) {
      cur[k] = v;
      rec(k + 1);
    }
  };
  rec(0);
}

}  // namespace

std::string signature_string(const SymOperad& o, const std::vector<int>& inputs, int output) {
  std::string s = "(";
  for (size_t k = 0; k < inputs.size(); ++k) {
    if (k) s += ",";
    s += o.colour_id(inputs[k]);
  }
  return s + ";" + o.colour_id(output) + ")";
}

int SymOperad::find_colour(const std::string& id) const {
  auto it = std::lower_bound(colour_ids_.begin(), colour_ids_.end(), id);
  return (it != colour_ids_.end() && *it == id) ? static_cast<int>(it - colour_ids_.begin()) : -1;
}

int SymOperad::find_op(const std::string& id) const {
  auto it = std::lower_bound(op_ids_.begin(), op_ids_.end(), id);
  return (it != op_ids_.end() && *it == id) ? static_cast<int>(it - op_ids_.begin()) : -1;
}

int SymOperad::colour(const std::string& id) const {
  int c = find_colour(id);
  if (c < 0) fail(ErrorKind::UnknownName, "no colour " + q(id));
  return c;
}

int SymOperad::op(const std::string& id) const {
  int o = find_op(id);
  if (o < 0) fail(ErrorKind::UnknownName, "no operation " + q(id));
  return o;
}

int SymOperad::act(int o, const Perm& sigma) const {
  return action_[static_cast<size_t>(o)][static_cast<size_t>(perm_rank(sigma))];
}

int SymOperad::compose(int o, const std::vector<int>& inners) const {
  std::vector<int> key;
  key.reserve(inners.size() + 1);
  key.push_back(o);
  key.insert(key.end(), inners.begin(), inners.end());
  auto it = compose_.find(key);
  return it == compose_.end() ? -1 : it->second;
}

const std::vector<int>& SymOperad::ops_of(const std::vector<int>& inputs, int output) const {
  auto it = by_signature_.find({inputs, output});
  return it == by_signature_.end() ? kNoOps : it->second;
}

int SymOperad::max_arity() const {
  int m = 0;
  for (const auto& in : inputs_) m = std::max(m, static_cast<int>(in.size()));
  return m;
}

SymOperad SymOperad::build(const OperadData& data, Check check) {
  SymOperad o;
  o.colour_ids_ = data.colours;
  std::sort(o.colour_ids_.begin(), o.colour_ids_.end());
  for (size_t k = 1; k < o.colour_ids_.size(); ++k)
    if (o.colour_ids_[k] == o.colour_ids_[k - 1]) fail(ErrorKind::Malformed, "duplicate colour " + q(o.colour_ids_[k]));

  std::vector<size_t> order(data.ops.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](size_t a, size_t b) { return data.ops[a].id < data.ops[b].id; });
  for (size_t k : order) {
    const auto& op = data.ops[k];
    if (!o.op_ids_.empty() && o.op_ids_.back() == op.id) fail(ErrorKind::Malformed, "duplicate operation " + q(op.id));
    std::vector<int> in;
    for (const auto& c : op.inputs) {
      int ci = o.find_colour(c);
      if (ci < 0) fail(ErrorKind::UnknownName, "operation " + q(op.id) + " has unknown input colour " + q(c));
      in.push_back(ci);
    }
    int out = o.find_colour(op.output);
    if (out < 0) fail(ErrorKind::UnknownName, "operation " + q(op.id) + " has unknown output colour " + q(op.output));
    o.op_ids_.push_back(op.id);
    o.inputs_.push_back(std::move(in));
    o.output_.push_back(out);
  }
  const int nops = o.num_ops();
  o.into_.assign(static_cast<size_t>(o.num_colours()), {});
  for (int k = 0; k < nops; ++k) {
    o.by_signature_[{o.inputs_[static_cast<size_t>(k)], o.output_[static_cast<size_t>(k)]}].push_back(k);
    o.into_[static_cast<size_t>(o.output_[static_cast<size_t>(k)])].push_back(k);
  }

  o.identity_.assign(static_cast<size_t>(o.num_colours()), -1);
  for (const auto& [cs, os] : data.identities) {
    int c = o.find_colour(cs);
    if (c < 0) fail(ErrorKind::UnknownName, "identity given for unknown colour " + q(cs));
    int op = o.find_op(os);
    if (op < 0) fail(ErrorKind::UnknownName, "identity of " + q(cs) + " is unknown operation " + q(os));
    if (o.arity(op) != 1 || o.inputs(op)[0] != c || o.output(op) != c)
      fail(ErrorKind::BadUnit, "identity " + q(os) + " of " + q(cs) + " does not have signature (" + cs + ";" + cs + ")");
    o.identity_[static_cast<size_t>(c)] = op;
  }
  for (int c = 0; c < o.num_colours(); ++c)
    if (o.identity_[static_cast<size_t>(c)] < 0) fail(ErrorKind::BadUnit, "colour " + q(o.colour_id(c)) + " has no identity");

  // symmetric action: listed entries, then closure under o·(στ) = (o·σ)·τ
  o.action_.resize(static_cast<size_t>(nops));
  for (int k = 0; k < nops; ++k) {
    o.action_[static_cast<size_t>(k)].assign(perms_of(o.arity(k)).size(), -1);
    o.action_[static_cast<size_t>(k)][0] = k;
  }
  auto set_action = [&](int op, const Perm& s, int res) {
    int& slot = o.action_[static_cast<size_t>(op)][static_cast<size_t>(perm_rank(s))];
    if (slot >= 0 && slot != res)
      fail(ErrorKind::NotEquivariant, o.op_id(op) + "·" + perm_to_string(s) + " is both " + o.op_id(slot) + " and " + o.op_id(res));
    const bool changed = slot < 0;
    slot = res;
    return changed;
  };
  for (const auto& a : data.action) {
    int op = o.find_op(a.op), res = o.find_op(a.result);
    if (op < 0 || res < 0) fail(ErrorKind::UnknownName, "action entry mentions unknown operation " + q(op < 0 ? a.op : a.result));
    if (static_cast<int>(a.perm.size()) != o.arity(op) || !is_perm(a.perm))
      fail(ErrorKind::Malformed, "action entry for " + q(a.op) + " has a bad permutation " + perm_to_string(a.perm));
    bool sig_ok = o.output(res) == o.output(op) && o.arity(res) == o.arity(op);
    for (int i = 0; sig_ok && i < o.arity(op); ++i)
      sig_ok = o.inputs(res)[static_cast<size_t>(i)] == o.inputs(op)[static_cast<size_t>(a.perm[static_cast<size_t>(i)])];
    if (!sig_ok)
      fail(ErrorKind::NotEquivariant, o.op_id(op) + "·" + perm_to_string(a.perm) + " = " + o.op_id(res) + " has the wrong signature");
    set_action(op, a.perm, res);
  }
  for (bool changed = true; changed;) {
    changed = false;
    for (int op = 0; op < nops; ++op) {
      const auto& ps = perms_of(o.arity(op));
      for (size_t s = 0; s < ps.size(); ++s) {
        const int p = o.action_[static_cast<size_t>(op)][s];
        if (p < 0) continue;
        changed |= set_action(p, inverse(ps[s]), op);
        for (size_t t = 0; t < ps.size(); ++t) {
          const int r = o.action_[static_cast<size_t>(p)][t];
          if (r >= 0) changed |= set_action(op, moritakit::compose(ps[s], ps[t]), r);
        }
      }
    }
  }
  for (int op = 0; op < nops; ++op) {
    const auto& ps = perms_of(o.arity(op));
    for (size_t s = 0; s < ps.size(); ++s)
      if (o.action_[static_cast<size_t>(op)][s] < 0)
        fail(ErrorKind::NotClosed, "action " + o.op_id(op) + "·" + perm_to_string(ps[s]) + " is not determined");
  }

  // composition
  auto key_string = [&](const std::vector<int>& key) {
    std::string s = "γ(" + o.op_id(key[0]) + ";";
    for (size_t k = 1; k < key.size(); ++k) s += (k > 1 ? "," : "") + o.op_id(key[k]);
    return s + ")";
  };
  for (const auto& c : data.compose) {
    int outer = o.find_op(c.outer), res = o.find_op(c.result);
    if (outer < 0) fail(ErrorKind::UnknownName, "composition entry mentions unknown operation " + q(c.outer));
    if (res < 0) fail(ErrorKind::NotClosed, "composite " + q(c.result) + " is not a declared operation");
    std::vector<int> key{outer};
    std::vector<int> in;
    for (const auto& is : c.inners) {
      int inner = o.find_op(is);
      if (inner < 0) fail(ErrorKind::UnknownName, "composition entry mentions unknown operation " + q(is));
      key.push_back(inner);
      in.insert(in.end(), o.inputs(inner).begin(), o.inputs(inner).end());
    }
    if (static_cast<int>(c.inners.size()) != o.arity(outer))
      fail(ErrorKind::Malformed, key_string(key) + " has the wrong number of inner operations");
    for (int i = 0; i < o.arity(outer); ++i)
      if (o.output(key[static_cast<size_t>(i) + 1]) != o.inputs(outer)[static_cast<size_t>(i)])
        fail(ErrorKind::Malformed, key_string(key) + " does not match colours at input " + std::to_string(i));
    if (o.inputs(res) != in || o.output(res) != o.output(outer))
      fail(ErrorKind::NotClosed, key_string(key) + " = " + o.op_id(res) + " has the wrong signature");
    auto [it, fresh] = o.compose_.emplace(key, res);
    if (!fresh && it->second != res) fail(ErrorKind::Malformed, "conflicting entries for " + key_string(key));
  }
  for (int op = 0; op < nops; ++op) {
    std::vector<int> key{op};
    for (int c : o.inputs(op)) key.push_back(o.identity(c));
    auto [it, fresh] = o.compose_.emplace(key, op);
    if (!fresh && it->second != op) fail(ErrorKind::BadUnit, key_string(key) + " is not " + o.op_id(op));
    std::vector<int> left{o.identity(o.output(op)), op};
    auto [it2, fresh2] = o.compose_.emplace(left, op);
    if (!fresh2 && it2->second != op) fail(ErrorKind::BadUnit, key_string(left) + " is not " + o.op_id(op));
  }
  EnumBudget budget("operad validation");
  for (int op = 0; op < nops; ++op) {
    std::vector<const std::vector<int>*> lists;
    for (int c : o.inputs(op)) lists.push_back(&o.ops_into(c));
    for_each_tuple(lists, [&](const std::vector<int>& inners) {
      budget.tick();
      if (o.compose(op, inners) < 0) {
        std::vector<int> key{op};
        key.insert(key.end(), inners.begin(), inners.end());
        fail(ErrorKind::NotClosed, key_string(key) + " is missing");
      }
    });
  }
  if (check == Check::Trusted) return o;

  // equivariance (b): γ(o; q_i·τ_i) = γ(o; q)·(τ_1 ⊕ ... ⊕ τ_n)
  for (int op = 0; op < nops; ++op) {
    std::vector<const std::vector<int>*> lists;
    for (int c : o.inputs(op)) lists.push_back(&o.ops_into(c));
    for_each_tuple(lists, [&](const std::vector<int>& qs) {
      const int base = o.compose(op, qs);
      std::vector<size_t> choice(qs.size(), 0);
      std::function<void(size_t, Perm)> rec = [&](size_t k, Perm tau) {
        if (k == qs.size()) {
          budget.tick();
          std::vector<int> moved(qs.size());
          for (size_t i = 0; i < qs.size(); ++i) moved[i] = o.action_[static_cast<size_t>(qs[i])][choice[i]];
          if (o.compose(op, moved) != o.act(base, tau)) {
            std::vector<int> key{op};
            key.insert(key.end(), moved.begin(), moved.end());
            fail(ErrorKind::NotEquivariant, key_string(key) + " is not " + o.op_id(base) + "·" + perm_to_string(tau));
          }
          return;
        }
        const auto& ps = perms_of(o.arity(qs[k]));
        for (size_t s = 0; s < ps.size(); ++s) {
          choice[k] = s;
          rec(k + 1, block_sum(tau, ps[s]));
        }
      };
      rec(0, {});
    });
  }
  // equivariance (a): γ(o·σ; q) = γ(o; q_σ⁻¹(1), ..., q_σ⁻¹(n))·ρ
  for (int op = 0; op < nops; ++op) {
    const int n = o.arity(op);
    for (const Perm& sigma : perms_of(n)) {
      const int p = o.act(op, sigma);
      const Perm sinv = inverse(sigma);
      std::vector<const std::vector<int>*> lists;
      for (int c : o.inputs(p)) lists.push_back(&o.ops_into(c));
      for_each_tuple(lists, [&](const std::vector<int>& qs) {
        budget.tick();
        std::vector<int> reordered(static_cast<size_t>(n));
        for (int j = 0; j < n; ++j) reordered[static_cast<size_t>(j)] = qs[static_cast<size_t>(sinv[static_cast<size_t>(j)])];
        std::vector<int> start(static_cast<size_t>(n) + 1, 0), start2(static_cast<size_t>(n) + 1, 0);
        for (int i = 0; i < n; ++i) {
          start[static_cast<size_t>(i) + 1] = start[static_cast<size_t>(i)] + o.arity(qs[static_cast<size_t>(i)]);
          start2[static_cast<size_t>(i) + 1] = start2[static_cast<size_t>(i)] + o.arity(reordered[static_cast<size_t>(i)]);
        }
        Perm rho(static_cast<size_t>(start[static_cast<size_t>(n)]));
        for (int i = 0; i < n; ++i)
          for (int t = 0; t < o.arity(qs[static_cast<size_t>(i)]); ++t)
            rho[static_cast<size_t>(start[static_cast<size_t>(i)] + t)] = start2[static_cast<size_t>(sigma[static_cast<size_t>(i)])] + t;
        const int lhs = o.compose(p, qs);
        const int rhs = o.act(o.compose(op, reordered), rho);
        if (lhs != rhs) {
          std::vector<int> key{p};
          key.insert(key.end(), qs.begin(), qs.end());
          fail(ErrorKind::NotEquivariant, key_string(key) + " is not " + o.op_id(rhs) + " (outer " + o.op_id(op) + "·" + perm_to_string(sigma) + ")");
        }
      });
    }
  }
  // associativity
  for (int op = 0; op < nops; ++op) {
    std::vector<const std::vector<int>*> lists;
    for (int c : o.inputs(op)) lists.push_back(&o.ops_into(c));
    for_each_tuple(lists, [&](const std::vector<int>& qs) {
      const int mid = o.compose(op, qs);
      std::vector<const std::vector<int>*> rl;
      for (int c : o.inputs(mid)) rl.push_back(&o.ops_into(c));
      for_each_tuple(rl, [&](const std::vector<int>& rs) {
        budget.tick();
        std::vector<int> inner(qs.size());
        size_t pos = 0;
        for (size_t i = 0; i < qs.size(); ++i) {
          const std::vector<int> block(rs.begin() + static_cast<long>(pos), rs.begin() + static_cast<long>(pos) + o.arity(qs[i]));
          pos += static_cast<size_t>(o.arity(qs[i]));
          inner[i] = o.compose(qs[i], block);
        }
        if (o.compose(mid, rs) != o.compose(op, inner)) {
          std::string w = o.op_id(op) + "; ";
          for (int x : qs) w += o.op_id(x) + " ";
          w += "; ";
          for (int x : rs) w += o.op_id(x) + " ";
          fail(ErrorKind::NonAssociative, "(" + w + ")");
        }
      });
    });
  }
  return o;
}

OperadData SymOperad::to_data() const {
  OperadData d;
  d.colours = colour_ids_;
  for (int k = 0; k < num_ops(); ++k) {
    OperadData::Op op{op_id(k), {}, colour_id(output(k))};
    for (int c : inputs(k)) op.inputs.push_back(colour_id(c));
    d.ops.push_back(op);
    const auto& ps = perms_of(arity(k));
    for (size_t s = 1; s < ps.size(); ++s) d.action.push_back({op_id(k), ps[s], op_id(action_[static_cast<size_t>(k)][s])});
  }
  for (const auto& [key, res] : compose_) {
    OperadData::Composite c{op_id(key[0]), {}, op_id(res)};
    for (size_t k = 1; k < key.size(); ++k) c.inners.push_back(op_id(key[k]));
    d.compose.push_back(c);
  }
  for (int c = 0; c < num_colours(); ++c) d.identities[colour_id(c)] = op_id(identity(c));
  return d;
}

OperadPtr make_operad(const OperadData& data, Check check) {
  return std::make_shared<const SymOperad>(SymOperad::build(data, check));
}

SymOperad validate_operad(const OperadData& raw) { return SymOperad::build(raw, Check::Full); }

// ---- maps

void validate_operad_map(const OperadMap& f) {
  const SymOperad& s = *f.source;
  const SymOperad& t = *f.target;
  if (f.colour_map.size() != static_cast<size_t>(s.num_colours()) || f.op_map.size() != static_cast<size_t>(s.num_ops()))
    fail(ErrorKind::Malformed, "operad map does not cover the source");
  for (int c : f.colour_map)
    if (c < 0 || c >= t.num_colours()) fail(ErrorKind::Malformed, "colour image out of range");
  for (int o = 0; o < s.num_ops(); ++o) {
    const int p = f(o);
    if (p < 0 || p >= t.num_ops()) fail(ErrorKind::Malformed, "operation image out of range");
    std::vector<int> in;
    for (int c : s.inputs(o)) in.push_back(f.on_colour(c));
    if (t.inputs(p) != in || t.output(p) != f.on_colour(s.output(o)))
      fail(ErrorKind::Malformed, "image of " + q(s.op_id(o)) + " has the wrong signature");
  }
  for (int c = 0; c < s.num_colours(); ++c)
    if (f(s.identity(c)) != t.identity(f.on_colour(c))) fail(ErrorKind::Malformed, "identity of " + q(s.colour_id(c)) + " is not preserved");
  for (int o = 0; o < s.num_ops(); ++o)
    for (const Perm& sigma : perms_of(s.arity(o)))
      if (f(s.act(o, sigma)) != t.act(f(o), sigma))
        fail(ErrorKind::Malformed, "action on " + q(s.op_id(o)) + " by " + perm_to_string(sigma) + " is not preserved");
  for (int o = 0; o < s.num_ops(); ++o) {
    std::vector<const std::vector<int>*> lists;
    for (int c : s.inputs(o)) lists.push_back(&s.ops_into(c));
    for_each_tuple(lists, [&](const std::vector<int>& qs) {
      std::vector<int> img;
      for (int x : qs) img.push_back(f(x));
      if (f(s.compose(o, qs)) != t.compose(f(o), img)) fail(ErrorKind::Malformed, "composition with outer " + q(s.op_id(o)) + " is not preserved");
    });
  }
}

OperadMap identity_operad_map(const OperadPtr& o) {
  OperadMap f{o, o, std::vector<int>(static_cast<size_t>(o->num_colours())), std::vector<int>(static_cast<size_t>(o->num_ops()))};
  std::iota(f.colour_map.begin(), f.colour_map.end(), 0);
  std::iota(f.op_map.begin(), f.op_map.end(), 0);
  return f;
}

OperadMap compose_operad_maps(const OperadMap& g, const OperadMap& f) {
  OperadMap h{f.source, g.target, {}, {}};
  for (int c : f.colour_map) h.colour_map.push_back(g.on_colour(c));
  for (int o : f.op_map) h.op_map.push_back(g(o));
  return h;
}


// ---- categories and operads

CatPtr underlying_category(const SymOperad& o) {
  CategoryData d;
  for (int c = 0; c < o.num_colours(); ++c) {
    d.objects.push_back(o.colour_id(c));
    d.identities[o.colour_id(c)] = o.op_id(o.identity(c));
  }
  for (int f = 0; f < o.num_ops(); ++f)
    if (o.arity(f) == 1) d.morphisms.push_back({o.op_id(f), o.colour_id(o.inputs(f)[0]), o.colour_id(o.output(f))});
  for (int f = 0; f < o.num_ops(); ++f) {
    if (o.arity(f) != 1) continue;
    for (int c = 0; c < o.num_colours(); ++c)
      for (int g : o.ops_of({o.output(f)}, c)) d.compose.push_back({o.op_id(g), o.op_id(f), o.op_id(o.compose1(g, f))});
  }
  return make_category(d, Check::Trusted);
}

OperadPtr category_to_operad(const FinCategory& c) {
  OperadData d;
  for (int x = 0; x < c.num_objects(); ++x) {
    d.colours.push_back(c.object_id(x));
    d.identities[c.object_id(x)] = c.morphism_id(c.identity(x));
  }
  for (int f = 0; f < c.num_morphisms(); ++f) d.ops.push_back({c.morphism_id(f), {c.object_id(c.dom(f))}, c.object_id(c.cod(f))});
  for (int f = 0; f < c.num_morphisms(); ++f)
    for (int g : c.out(c.cod(f))) d.compose.push_back({c.morphism_id(g), {c.morphism_id(f)}, c.morphism_id(c.compose(g, f))});
  return make_operad(d, Check::Trusted);
}

OperadMap functor_to_operad_map(const Functor& f, const OperadPtr& source, const OperadPtr& target) {
  OperadMap m{source, target, {}, {}};
  for (int c = 0; c < source->num_colours(); ++c)
    m.colour_map.push_back(target->colour(f.target->object_id(f.on_object(f.source->object(source->colour_id(c))))));
  for (int o = 0; o < source->num_ops(); ++o)
    m.op_map.push_back(target->op(f.target->morphism_id(f(f.source->morphism(source->op_id(o))))));
  return m;
}

Functor underlying_functor(const OperadMap& f, const CatPtr& source, const CatPtr& target) {
  Functor g{source, target, {}, {}};
  for (int x = 0; x < source->num_objects(); ++x)
    g.obj_map.push_back(target->object(f.target->colour_id(f.on_colour(f.source->colour(source->object_id(x))))));
  for (int m = 0; m < source->num_morphisms(); ++m)
    g.mor_map.push_back(target->morphism(f.target->op_id(f(f.source->op(source->morphism_id(m))))));
  return g;
}

// ---- Cauchy completion

int OperadCauchy::find_colour(int c, int e) const {
  for (size_t k = 0; k < colours.size(); ++k)
    if (colours[k].first == c && colours[k].second == e) return static_cast<int>(k);
  return -1;
}

OperadCauchy cauchy_completion_operad(const OperadPtr& op) {
  const SymOperad& o = *op;
  struct Col {
    int c, e;
    std::string id;
  };
  std::vector<Col> cols;
  std::vector<std::vector<int>> cols_over(static_cast<size_t>(o.num_colours()));
  for (int c = 0; c < o.num_colours(); ++c)
    for (int e : o.ops_of({c}, c))
      if (o.compose1(e, e) == e) {
        cols_over[static_cast<size_t>(c)].push_back(static_cast<int>(cols.size()));
        cols.push_back({c, e, "(" + o.colour_id(c) + "," + o.op_id(e) + ")"});
      }

  OperadData d;
  // completed op id -> (underlying op, colour signature with output last)
  std::map<std::string, std::pair<int, std::vector<int>>> op_of;
  std::map<std::pair<int, std::vector<int>>, std::string> id_of;
  for (const auto& col : cols) d.colours.push_back(col.id);
  for (int p = 0; p < o.num_ops(); ++p) {
    std::vector<const std::vector<int>*> lists;
    for (int c : o.inputs(p)) lists.push_back(&cols_over[static_cast<size_t>(c)]);
    lists.push_back(&cols_over[static_cast<size_t>(o.output(p))]);
    for_each_tuple(lists, [&](const std::vector<int>& sig) {
      std::vector<int> es;
      for (size_t i = 0; i + 1 < sig.size(); ++i) es.push_back(cols[static_cast<size_t>(sig[i])].e);
      if (o.compose(p, es) != p || o.compose1(cols[static_cast<size_t>(sig.back())].e, p) != p) return;
      std::string id = o.op_id(p) + "@";
      for (size_t k = 0; k + 1 < sig.size(); ++k) id += (k ? "," : "") + cols[static_cast<size_t>(sig[k])].id;
      id += ";" + cols[static_cast<size_t>(sig.back())].id;
      OperadData::Op entry{id, {}, cols[static_cast<size_t>(sig.back())].id};
      for (size_t i = 0; i + 1 < sig.size(); ++i) entry.inputs.push_back(cols[static_cast<size_t>(sig[i])].id);
      d.ops.push_back(entry);
      op_of[id] = {p, sig};
      id_of[{p, sig}] = id;
    });
  }
  for (size_t k = 0; k < cols.size(); ++k)
    d.identities[cols[k].id] = id_of.at({cols[k].e, {static_cast<int>(k), static_cast<int>(k)}});
  for (const auto& [id, entry] : op_of) {
    const auto& [p, sig] = entry;
    const int n = o.arity(p);
    for (const Perm& sigma : perms_of(n)) {
      if (sigma == identity_perm(n)) continue;
      std::vector<int> moved(sig.size());
      for (int i = 0; i < n; ++i) moved[static_cast<size_t>(i)] = sig[static_cast<size_t>(sigma[static_cast<size_t>(i)])];
      moved.back() = sig.back();
      d.action.push_back({id, sigma, id_of.at({o.act(p, sigma), moved})});
    }
    // composites γ(p@sig; q_1@sig_1, ...) over completed ops matching each input
    std::vector<std::vector<std::pair<int, std::vector<int>>>> inner_choices(static_cast<size_t>(n));
    for (const auto& [id2, entry2] : op_of)
      for (int i = 0; i < n; ++i)
        if (entry2.second.back() == sig[static_cast<size_t>(i)]) inner_choices[static_cast<size_t>(i)].push_back(entry2);
    std::vector<int> pick(static_cast<size_t>(n));
    std::function<void(int)> rec = [&](int i) {
      if (i == n) {
        std::vector<int> inner_ops, rsig;
        OperadData::Composite comp{id, {}, ""};
        for (int k = 0; k < n; ++k) {
          const auto& [q, qsig] = inner_choices[static_cast<size_t>(k)][static_cast<size_t>(pick[static_cast<size_t>(k)])];
          inner_ops.push_back(q);
          rsig.insert(rsig.end(), qsig.begin(), qsig.end() - 1);
          comp.inners.push_back(id_of.at({q, qsig}));
        }
        rsig.push_back(sig.back());
        comp.result = id_of.at({o.compose(p, inner_ops), rsig});
        d.compose.push_back(comp);
        return;
      }
      for (size_t k = 0; k < inner_choices[static_cast<size_t>(i)].size(); ++k) {
        pick[static_cast<size_t>(i)] = static_cast<int>(k);
        rec(i + 1);
      }
    };
    rec(0);
  }

  OperadCauchy out;
  out.operad = make_operad(d, Check::Trusted);
  const SymOperad& co = *out.operad;
  std::map<std::string, std::pair<int, int>> col_of;
  for (const auto& col : cols) col_of[col.id] = {col.c, col.e};
  for (int k = 0; k < co.num_colours(); ++k) out.colours.push_back(col_of.at(co.colour_id(k)));
  for (int k = 0; k < co.num_ops(); ++k) out.underlying.push_back(op_of.at(co.op_id(k)).first);
  out.canonical = OperadMap{op, out.operad, {}, {}};
  for (int c = 0; c < o.num_colours(); ++c) out.canonical.colour_map.push_back(out.find_colour(c, o.identity(c)));
  for (int p = 0; p < o.num_ops(); ++p) {
    std::vector<int> in;
    for (int c : o.inputs(p)) in.push_back(out.canonical.on_colour(c));
    int img = -1;
    for (int k : co.ops_of(in, out.canonical.on_colour(o.output(p))))
      if (out.underlying[static_cast<size_t>(k)] == p) img = k;
    out.canonical.op_map.push_back(img);
  }
  return out;
}

OperadMap cauchy_operad_map(const OperadMap& f, const OperadCauchy& cs, const OperadCauchy& ct) {
  OperadMap g{cs.operad, ct.operad, {}, {}};
  for (const auto& [c, e] : cs.colours) g.colour_map.push_back(ct.find_colour(f.on_colour(c), f(e)));
  const SymOperad& so = *cs.operad;
  for (int k = 0; k < so.num_ops(); ++k) {
    std::vector<int> in;
    for (int c : so.inputs(k)) in.push_back(g.on_colour(c));
    const int target_op = f(cs.underlying[static_cast<size_t>(k)]);
    int img = -1;
    for (int m : ct.operad->ops_of(in, g.on_colour(so.output(k))))
      if (ct.underlying[static_cast<size_t>(m)] == target_op) img = m;
    g.op_map.push_back(img);
  }
  return g;
}

// ---- Morita decision

std::optional<std::pair<int, int>> colour_retract_witness(const SymOperad& o, int c, int c2) {
  if (c == c2) return std::make_pair(o.identity(c), o.identity(c));
  for (int r : o.ops_of({c2}, c))
    for (int i : o.ops_of({c}, c2))
      if (o.compose1(r, i) == o.identity(c)) return std::make_pair(r, i);
  return std::nullopt;
}

std::vector<std::pair<std::vector<int>, int>> relevant_signatures(const OperadMap& f) {
  const SymOperad& s = *f.source;
  const SymOperad& t = *f.target;
  std::set<std::pair<std::vector<int>, int>> sigs;
  for (int o = 0; o < s.num_ops(); ++o) sigs.insert({s.inputs(o), s.output(o)});
  std::vector<std::vector<int>> preimage(static_cast<size_t>(t.num_colours()));
  for (int c = 0; c < s.num_colours(); ++c) preimage[static_cast<size_t>(f.on_colour(c))].push_back(c);
  std::set<std::pair<std::vector<int>, int>> target_sigs;
  for (int p = 0; p < t.num_ops(); ++p) target_sigs.insert({t.inputs(p), t.output(p)});
  for (const auto& [in, out] : target_sigs) {
    std::vector<const std::vector<int>*> lists;
    for (int d : in) lists.push_back(&preimage[static_cast<size_t>(d)]);
    lists.push_back(&preimage[static_cast<size_t>(out)]);
    for_each_tuple(lists, [&](const std::vector<int>& sig) {
      sigs.insert({std::vector<int>(sig.begin(), sig.end() - 1), sig.back()});
    });
  }
  return {sigs.begin(), sigs.end()};
}

namespace {

std::optional<std::pair<std::vector<int>, int>> first_ff_failure_op(const OperadMap& f) {
  const SymOperad& t = *f.target;
  for (const auto& [in, out] : relevant_signatures(f)) {
    const auto& src = f.source->ops_of(in, out);
    std::vector<int> img_in;
    for (int c : in) img_in.push_back(f.on_colour(c));
    const auto& dst = t.ops_of(img_in, f.on_colour(out));
    std::set<int> hit;
    for (int o : src) hit.insert(f(o));
    if (src.size() != dst.size() || hit.size() != src.size()) return std::make_pair(in, out);
  }
  return std::nullopt;
}

}  // namespace

bool is_fully_faithful_op(const OperadMap& f) { return !first_ff_failure_op(f).has_value(); }

bool is_operad_equivalence(const OperadMap& f) {
  if (!is_fully_faithful_op(f)) return false;
  const SymOperad& t = *f.target;
  for (int d = 0; d < t.num_colours(); ++d) {
    bool found = false;
    for (int c = 0; c < f.source->num_colours() && !found; ++c) {
      const int fc = f.on_colour(c);
      for (int r : t.ops_of({fc}, d))
        for (int i : t.ops_of({d}, fc))
          if (t.compose1(r, i) == t.identity(d) && t.compose1(i, r) == t.identity(fc)) found = true;
    }
    if (!found) return false;
  }
  return true;
}

OperadMoritaReport morita_report_op(const OperadMap& f) {
  const SymOperad& t = *f.target;
  OperadMoritaReport out;
  MoritaReport& rep = out.report;
  rep.fully_faithful = is_fully_faithful_op(f);
  rep.essentially_surjective = true;
  rep.essentially_surjective_up_to_retracts = true;
  for (int d = 0; d < t.num_colours(); ++d) {
    ObjectWitness w;
    w.target_object = d;
    for (int c = 0; c < f.source->num_colours() && !(w.retract && w.iso); ++c) {
      const int fc = f.on_colour(c);
      if (!w.retract)
        if (auto ri = colour_retract_witness(t, d, fc)) w.retract = Triple{c, ri->first, ri->second};
      for (int r : t.ops_of({fc}, d))
        for (int i : t.ops_of({d}, fc))
          if (!w.iso && t.compose1(r, i) == t.identity(d) && t.compose1(i, r) == t.identity(fc)) w.iso = Triple{c, r, i};
    }
    rep.essentially_surjective = rep.essentially_surjective && w.iso.has_value();
    rep.essentially_surjective_up_to_retracts = rep.essentially_surjective_up_to_retracts && w.retract.has_value();
    rep.witnesses.push_back(w);
  }
  rep.verdict = rep.fully_faithful && rep.essentially_surjective_up_to_retracts;
  const OperadCauchy cs = cauchy_completion_operad(f.source);
  const OperadCauchy ct = cauchy_completion_operad(f.target);
  out.oracle = is_operad_equivalence(cauchy_operad_map(f, cs, ct));
  if (out.oracle != rep.verdict)
    fail(ErrorKind::OracleDisagreement, std::string("definitional operadic Morita verdict ") + (rep.verdict ? "true" : "false") +
                                            " but Cauchy completion equivalence " + (out.oracle ? "true" : "false"));
  return out;
}

// ---- map search

namespace {

struct OperadMapSearch {
  const SymOperad& s;
  const SymOperad& t;
  bool bijective;
  EnumBudget budget{"operad map search"};
  // constraints grouped by the largest op index they mention
  std::vector<std::vector<std::pair<int, int>>> action_checks;  // (op, perm index) with result
  std::vector<std::vector<std::vector<int>>> compose_checks;    // (outer, inners..., result)
  std::vector<int> col, ops;
  std::vector<char> col_used, op_used;

  OperadMapSearch(const SymOperad& s_, const SymOperad& t_, bool bij) : s(s_), t(t_), bijective(bij) {
    action_checks.resize(static_cast<size_t>(s.num_ops()));
    compose_checks.resize(static_cast<size_t>(s.num_ops()));
    for (int o = 0; o < s.num_ops(); ++o) {
      const auto& ps = perms_of(s.arity(o));
      for (size_t k = 1; k < ps.size(); ++k)
        action_checks[static_cast<size_t>(std::max(o, s.act(o, ps[k])))].push_back({o, static_cast<int>(k)});
      std::vector<const std::vector<int>*> lists;
      for (int c : s.inputs(o)) lists.push_back(&s.ops_into(c));
      for_each_tuple(lists, [&](const std::vector<int>& qs) {
        std::vector<int> entry{o};
        entry.insert(entry.end(), qs.begin(), qs.end());
        entry.push_back(s.compose(o, qs));
        compose_checks[static_cast<size_t>(*std::max_element(entry.begin(), entry.end()))].push_back(entry);
      });
    }
  }

  bool consistent(int k) const {
    for (const auto& [o, pk] : action_checks[static_cast<size_t>(k)]) {
      const Perm& sigma = perms_of(s.arity(o))[static_cast<size_t>(pk)];
      if (ops[static_cast<size_t>(s.act(o, sigma))] != t.act(ops[static_cast<size_t>(o)], sigma)) return false;
    }
    for (const auto& e : compose_checks[static_cast<size_t>(k)]) {
      std::vector<int> inner;
      for (size_t i = 1; i + 1 < e.size(); ++i) inner.push_back(ops[static_cast<size_t>(e[i])]);
      if (t.compose(ops[static_cast<size_t>(e[0])], inner) != ops[static_cast<size_t>(e.back())]) return false;
    }
    return true;
  }

  bool run(const std::function<bool()>& visit) {
    col.assign(static_cast<size_t>(s.num_colours()), -1);
    ops.assign(static_cast<size_t>(s.num_ops()), -1);
    col_used.assign(static_cast<size_t>(t.num_colours()), 0);
    op_used.assign(static_cast<size_t>(t.num_ops()), 0);
    if (bijective && (s.num_colours() != t.num_colours() || s.num_ops() != t.num_ops())) return true;
    return colours(0, visit);
  }

  bool colours(int c, const std::function<bool()>& visit) {
    if (c == s.num_colours()) return operations(0, visit);
    for (int d = 0; d < t.num_colours(); ++d) {
      if (bijective && col_used[static_cast<size_t>(d)]) continue;
      budget.tick();
      col[static_cast<size_t>(c)] = d;
      col_used[static_cast<size_t>(d)] = 1;
      const bool go_on = colours(c + 1, visit);
      col_used[static_cast<size_t>(d)] = 0;
      if (!go_on) return false;
    }
    col[static_cast<size_t>(c)] = -1;
    return true;
  }

  bool operations(int k, const std::function<bool()>& visit) {
    if (k == s.num_ops()) return visit();
    std::vector<int> in;
    for (int c : s.inputs(k)) in.push_back(col[static_cast<size_t>(c)]);
    const int out = col[static_cast<size_t>(s.output(k))];
    std::vector<int> cands = s.is_identity(k) ? std::vector<int>{t.identity(out)} : t.ops_of(in, out);
    for (int p : cands) {
      if (bijective && op_used[static_cast<size_t>(p)]) continue;
      budget.tick();
      ops[static_cast<size_t>(k)] = p;
      op_used[static_cast<size_t>(p)] = 1;
      bool go_on = true;
      if (consistent(k)) go_on = operations(k + 1, visit);
      op_used[static_cast<size_t>(p)] = 0;
      if (!go_on) return false;
    }
    ops[static_cast<size_t>(k)] = -1;
    return true;
  }
};

}  // namespace

std::optional<OperadMap> find_operad_isomorphism(const OperadPtr& o, const OperadPtr& p) {
  OperadMapSearch search(*o, *p, true);
  std::optional<OperadMap> found;
  search.run([&] {
    found = OperadMap{o, p, search.col, search.ops};
    return false;
  });
  return found;
}

std::vector<OperadMap> enumerate_operad_maps(const OperadPtr& o, const OperadPtr& p, size_t limit) {
  OperadMapSearch search(*o, *p, false);
  std::vector<OperadMap> out;
  search.run([&] {
    if (out.size() == limit) fail(ErrorKind::LimitExceeded, "more than " + std::to_string(limit) + " operad maps");
    out.push_back(OperadMap{o, p, search.col, search.ops});
    return true;
  });
  return out;
}

// ---- standard operads

OperadPtr standard_operad(const std::string& name) {
  if (name == "B") {
    OperadData d;
    d.colours = {"a", "b"};
    d.ops = {{"id_a", {"a"}, "a"}, {"id_b", {"b"}, "b"}, {"m", {"a", "a"}, "b"}};
    d.identities = {{"a", "id_a"}, {"b", "id_b"}};
    d.action = {{"m", {1, 0}, "m"}};
    return make_operad(d, Check::Full);
  }
  if (name == "unit") return category_to_operad(standard_category("terminal"));
  if (name.rfind("j!(", 0) == 0 && name.back() == ')')
    return category_to_operad(standard_category(name.substr(3, name.size() - 4)));
  if (name.rfind("Omega(", 0) == 0 && name.back() == ')')
    return free_operad_on_tree(standard_tree(name.substr(6, name.size() - 7)));
  fail(ErrorKind::UnknownName, "no standard operad " + q(name));
}

}  // namespace moritakit

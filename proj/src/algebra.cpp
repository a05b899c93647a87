#include "moritakit/algebra.hpp"

#include <algorithm>
#include <set>

#include "moritakit/error.hpp"
#include "moritakit/limits.hpp"
#include "moritakit/union_find.hpp"

namespace moritakit {

namespace {

size_t encode(const SymOperad& o, const std::vector<int>& carrier, int op, const std::vector<int>& args) {
  size_t idx = 0;
  const auto& in = o.inputs(op);
  for (size_t i = 0; i < in.size(); ++i) idx = idx * static_cast<size_t>(carrier[static_cast<size_t>(in[i])]) + static_cast<size_t>(args[i]);
  return idx;
}

std::vector<int> decode(const SymOperad& o, const std::vector<int>& carrier, int op, size_t idx) {
  const auto& in = o.inputs(op);
  std::vector<int> args(in.size());
  for (size_t i = in.size(); i-- > 0;) {
    const auto k = static_cast<size_t>(carrier[static_cast<size_t>(in[i])]);
    args[i] = static_cast<int>(idx % k);
    idx /= k;
  }
  return args;
}

// y with y_σ(i) = x_i, the arguments of o for the entry x of o·σ
std::vector<int> unpermute(const Perm& sigma, const std::vector<int>& x) {
  std::vector<int> y(x.size());
  for (size_t i = 0; i < x.size(); ++i) y[static_cast<size_t>(sigma[i])] = x[i];
  return y;
}

template <class Fn>
void for_each_composite(const SymOperad& o, Fn fn) {
  for (int outer = 0; outer < o.num_ops(); ++outer) {
    if (o.is_identity(outer)) continue;
    const int n = o.arity(outer);
    std::vector<int> inners(static_cast<size_t>(n));
    std::function<void(int)> rec = [&](int i) {
      if (i == n) {
        if (std::all_of(inners.begin(), inners.end(), [&](int q) { return o.is_identity(q); })) return;
        fn(outer, inners, o.compose(outer, inners));
        return;
      }
      for (int q : o.ops_into(o.inputs(outer)[static_cast<size_t>(i)])) {
        inners[static_cast<size_t>(i)] = q;
        rec(i + 1);
      }
    };
    rec(0);
  }
}

std::string tuple_string(const std::vector<int>& x) {
  std::string s = "(";
  for (size_t i = 0; i < x.size(); ++i) s += (i ? "," : "") + std::to_string(x[i]);
  return s + ")";
}

}  // namespace

size_t tuple_count(const SymOperad& o, const std::vector<int>& carrier, int op) {
  size_t n = 1;
  for (int c : o.inputs(op)) n *= static_cast<size_t>(carrier[static_cast<size_t>(c)]);
  return n;
}

int apply_op(const SymOperad& o, const FiniteAlgebra& a, int op, const std::vector<int>& args) {
  return a.act[static_cast<size_t>(op)][encode(o, a.carrier, op, args)];
}

void validate_algebra(const SymOperad& o, const FiniteAlgebra& a) {
  if (a.carrier.size() != static_cast<size_t>(o.num_colours()) || a.act.size() != static_cast<size_t>(o.num_ops()))
    fail(ErrorKind::Malformed, "algebra does not match the operad's colours and operations");
  for (int c : a.carrier)
    if (c < 0) fail(ErrorKind::Malformed, "negative carrier size");
  for (int op = 0; op < o.num_ops(); ++op) {
    const auto& table = a.act[static_cast<size_t>(op)];
    if (table.size() != tuple_count(o, a.carrier, op)) fail(ErrorKind::Malformed, "table of " + o.op_id(op) + " has the wrong size");
    for (int v : table)
      if (v < 0 || v >= a.carrier[static_cast<size_t>(o.output(op))]) fail(ErrorKind::Malformed, "value out of range in " + o.op_id(op));
  }
  for (int c = 0; c < o.num_colours(); ++c)
    for (int x = 0; x < a.carrier[static_cast<size_t>(c)]; ++x)
      if (apply_op(o, a, o.identity(c), {x}) != x) fail(ErrorKind::Malformed, "identity of " + o.colour_id(c) + " moves " + std::to_string(x));
  for (int op = 0; op < o.num_ops(); ++op) {
    const int n = o.arity(op);
    for (const Perm& sigma : all_perms(n)) {
      const int moved = o.act(op, sigma);
      for (size_t t = 0; t < tuple_count(o, a.carrier, moved); ++t) {
        const auto x = decode(o, a.carrier, moved, t);
        if (apply_op(o, a, moved, x) != apply_op(o, a, op, unpermute(sigma, x)))
          fail(ErrorKind::Malformed, "action of " + o.op_id(op) + "·" + perm_to_string(sigma) + " at " + tuple_string(x) + " is not equivariant");
      }
    }
  }
  for_each_composite(o, [&](int outer, const std::vector<int>& inners, int r) {
    for (size_t t = 0; t < tuple_count(o, a.carrier, r); ++t) {
      const auto x = decode(o, a.carrier, r, t);
      std::vector<int> mid;
      size_t pos = 0;
      for (int q : inners) {
        std::vector<int> part(x.begin() + static_cast<long>(pos), x.begin() + static_cast<long>(pos) + o.arity(q));
        pos += static_cast<size_t>(o.arity(q));
        mid.push_back(apply_op(o, a, q, part));
      }
      if (apply_op(o, a, outer, mid) != apply_op(o, a, r, x))
        fail(ErrorKind::Malformed, "composite " + o.op_id(r) + " of " + o.op_id(outer) + " not respected at " + tuple_string(x));
    }
  });
}

namespace {

struct Slot {
  int var = -1;     // class of the table entry, -1 when the value is literal
  int literal = 0;  // value for identities
};

struct Instance {
  Slot target;
  std::vector<Slot> inner;
  int outer = 0;
};

class AlgebraSearch {
 public:
  AlgebraSearch(const SymOperad& o, const std::vector<int>& carrier) : o_(o), carrier_(carrier) {
    offset_.assign(static_cast<size_t>(o.num_ops()), -1);
    int total = 0;
    for (int op = 0; op < o.num_ops(); ++op) {
      if (o.is_identity(op)) continue;
      offset_[static_cast<size_t>(op)] = total;
      total += static_cast<int>(tuple_count(o, carrier, op));
    }
    UnionFind uf(static_cast<size_t>(total));
    for (int op = 0; op < o.num_ops(); ++op) {
      if (o.is_identity(op)) continue;
      for (const Perm& sigma : all_perms(o.arity(op))) {
        const int moved = o.act(op, sigma);
        for (size_t t = 0; t < tuple_count(o, carrier, moved); ++t)
          uf.unite(static_cast<size_t>(offset_[static_cast<size_t>(moved)]) + t,
                   static_cast<size_t>(offset_[static_cast<size_t>(op)]) + encode(o, carrier, op, unpermute(sigma, decode(o, carrier, moved, t))));
      }
    }
    // classes numbered by their least entry
    class_of_.assign(static_cast<size_t>(total), -1);
    std::vector<int> class_of_root(static_cast<size_t>(total), -1);
    for (int g = 0; g < total; ++g) {
      const auto root = uf.find(static_cast<size_t>(g));
      if (class_of_root[root] == -1) {
        class_of_root[root] = static_cast<int>(domain_.size());
        domain_.push_back(0);
      }
      class_of_[static_cast<size_t>(g)] = class_of_root[root];
    }
    for (int op = 0; op < o.num_ops(); ++op)
      if (!o.is_identity(op))
        for (size_t t = 0; t < tuple_count(o, carrier, op); ++t)
          domain_[static_cast<size_t>(var(op, t))] = carrier[static_cast<size_t>(o.output(op))];
    value_.assign(domain_.size(), -1);
    watch_.resize(domain_.size());
    dynamic_.resize(domain_.size());

    for_each_composite(o, [&](int outer, const std::vector<int>& inners, int r) {
      for (size_t t = 0; t < tuple_count(o, carrier, r); ++t) {
        const auto x = decode(o, carrier, r, t);
        Instance in;
        in.outer = outer;
        in.target = slot(r, x);
        size_t pos = 0;
        for (int q : inners) {
          std::vector<int> part(x.begin() + static_cast<long>(pos), x.begin() + static_cast<long>(pos) + o.arity(q));
          pos += static_cast<size_t>(o.arity(q));
          in.inner.push_back(slot(q, part));
        }
        const int id = static_cast<int>(instances_.size());
        instances_.push_back(in);
        std::set<int> vars;
        if (in.target.var != -1) vars.insert(in.target.var);
        for (const auto& s : in.inner)
          if (s.var != -1) vars.insert(s.var);
        for (int v : vars) watch_[static_cast<size_t>(v)].push_back(id);
      }
    });
  }

  void run(const std::function<bool(const FiniteAlgebra&)>& visit) {
    for (int d : domain_)
      if (d == 0) return;
    visit_ = &visit;
    search(0);
  }

 private:
  int var(int op, size_t t) const { return class_of_[static_cast<size_t>(offset_[static_cast<size_t>(op)]) + t]; }

  Slot slot(int op, const std::vector<int>& args) const {
    if (o_.is_identity(op)) return {-1, args[0]};
    return {var(op, encode(o_, carrier_, op, args)), 0};
  }

  int value(const Slot& s) const { return s.var == -1 ? s.literal : value_[static_cast<size_t>(s.var)]; }

  // 0 pending, 1 satisfied, 2 violated; blocked receives the outer variable when only it is missing
  int check(const Instance& in, int& blocked) const {
    blocked = -1;
    std::vector<int> mid;
    for (const auto& s : in.inner) {
      const int v = value(s);
      if (v < 0) return 0;
      mid.push_back(v);
    }
    const int want = value(in.target);
    if (want < 0) return 0;
    const int ov = var(in.outer, encode(o_, carrier_, in.outer, mid));
    const int got = value_[static_cast<size_t>(ov)];
    if (got < 0) {
      blocked = ov;
      return 0;
    }
    return got == want ? 1 : 2;
  }

  bool assign_ok(int v, std::vector<int>& registered) {
    for (int id : watch_[static_cast<size_t>(v)]) {
      int blocked;
      const int st = check(instances_[static_cast<size_t>(id)], blocked);
      if (st == 2) return false;
      if (blocked != -1) {
        dynamic_[static_cast<size_t>(blocked)].push_back(id);
        registered.push_back(blocked);
      }
    }
    for (int id : dynamic_[static_cast<size_t>(v)]) {
      int blocked;
      if (check(instances_[static_cast<size_t>(id)], blocked) == 2) return false;
    }
    return true;
  }

  bool search(size_t v) {
    if (v == domain_.size()) return (*visit_)(materialize());
    for (int x = 0; x < domain_[v]; ++x) {
      budget_.tick();
      value_[v] = x;
      std::vector<int> registered;
      const bool ok = assign_ok(static_cast<int>(v), registered);
      bool go_on = true;
      if (ok) go_on = search(v + 1);
      for (auto it = registered.rbegin(); it != registered.rend(); ++it) dynamic_[static_cast<size_t>(*it)].pop_back();
      if (!go_on) {
        value_[v] = -1;
        return false;
      }
    }
    value_[v] = -1;
    return true;
  }

  FiniteAlgebra materialize() const {
    FiniteAlgebra a{carrier_, {}};
    for (int op = 0; op < o_.num_ops(); ++op) {
      std::vector<int> table(tuple_count(o_, carrier_, op));
      for (size_t t = 0; t < table.size(); ++t)
        table[t] = o_.is_identity(op) ? static_cast<int>(t) : value_[static_cast<size_t>(var(op, t))];
      a.act.push_back(std::move(table));
    }
    return a;
  }

  const SymOperad& o_;
  std::vector<int> carrier_;
  std::vector<int> offset_, class_of_, domain_, value_;
  std::vector<Instance> instances_;
  std::vector<std::vector<int>> watch_, dynamic_;
  const std::function<bool(const FiniteAlgebra&)>* visit_ = nullptr;
  EnumBudget budget_{"algebra enumeration"};
};

}  // namespace

void enumerate_algebras(const SymOperad& o, const std::vector<int>& carrier,
                        const std::function<bool(const FiniteAlgebra&)>& visit) {
  if (carrier.size() != static_cast<size_t>(o.num_colours())) fail(ErrorKind::BadParameters, "one carrier size per colour expected");
  AlgebraSearch(o, carrier).run(visit);
}

std::vector<FiniteAlgebra> all_algebras(const SymOperad& o, const std::vector<int>& carrier) {
  std::vector<FiniteAlgebra> out;
  enumerate_algebras(o, carrier, [&](const FiniteAlgebra& a) {
    out.push_back(a);
    return true;
  });
  return out;
}

std::vector<int> canonical_form(const SymOperad& o, const FiniteAlgebra& a) {
  const size_t nc = a.carrier.size();
  std::vector<std::vector<Perm>> choices;
  for (int k : a.carrier) choices.push_back(all_perms(k));
  // identity tables are the same for every relabelling
  std::vector<int> ops;
  std::vector<std::vector<std::vector<int>>> tuples;
  for (int op = 0; op < o.num_ops(); ++op) {
    if (o.is_identity(op)) continue;
    ops.push_back(op);
    tuples.emplace_back();
    for (size_t t = 0; t < tuple_count(o, a.carrier, op); ++t) tuples.back().push_back(decode(o, a.carrier, op, t));
  }
  std::vector<size_t> pick(nc, 0);
  std::vector<Perm> inverse(nc);
  std::vector<int> best, code, y;
  while (true) {
    for (size_t c = 0; c < nc; ++c) {
      const Perm& p = choices[c][pick[c]];
      inverse[c].assign(p.size(), 0);
      for (size_t i = 0; i < p.size(); ++i) inverse[c][static_cast<size_t>(p[i])] = static_cast<int>(i);
    }
    code.assign(a.carrier.begin(), a.carrier.end());
    // 0: equal to best so far, 1: already smaller, -1: larger
    int state = best.empty() ? 1 : 0;
    for (size_t k = 0; k < ops.size() && state >= 0; ++k) {
      const int op = ops[k];
      const auto& in = o.inputs(op);
      const Perm& out = choices[static_cast<size_t>(o.output(op))][pick[static_cast<size_t>(o.output(op))]];
      for (const auto& x : tuples[k]) {
        // entry at relabelled arguments x is π(A(π⁻¹ x))
        y.resize(x.size());
        for (size_t i = 0; i < x.size(); ++i) y[i] = inverse[static_cast<size_t>(in[i])][static_cast<size_t>(x[i])];
        const int v = out[static_cast<size_t>(a.act[static_cast<size_t>(op)][encode(o, a.carrier, op, y)])];
        if (state == 0) {
          const int b = best[code.size()];
          if (v < b) state = 1;
          if (v > b) {
            state = -1;
            break;
          }
        }
        code.push_back(v);
      }
    }
    if (state > 0) best = code;
    size_t c = 0;
    while (c < nc && ++pick[c] == choices[c].size()) pick[c++] = 0;
    if (c == nc) break;
  }
  return best;
}

std::vector<FiniteAlgebra> enumerate_algebras_bounded(const SymOperad& o, int size_bound, bool iso_classes) {
  std::vector<FiniteAlgebra> out;
  std::set<std::vector<int>> seen;
  std::vector<int> sizes(static_cast<size_t>(o.num_colours()), 0);
  while (true) {
    enumerate_algebras(o, sizes, [&](const FiniteAlgebra& a) {
      if (!iso_classes || seen.insert(canonical_form(o, a)).second) out.push_back(a);
      return true;
    });
    size_t c = sizes.size();
    while (c > 0 && sizes[c - 1] == size_bound) sizes[--c] = 0;
    if (c == 0) break;
    ++sizes[c - 1];
  }
  return out;
}

FiniteAlgebra restrict_algebra(const OperadMap& f, const FiniteAlgebra& a) {
  FiniteAlgebra r;
  for (int c : f.colour_map) r.carrier.push_back(a.carrier[static_cast<size_t>(c)]);
  for (int op : f.op_map) r.act.push_back(a.act[static_cast<size_t>(op)]);
  return r;
}

AlgebraShadow algebra_shadow(const OperadMap& f, int size_bound) {
  return algebra_shadow(f, enumerate_algebras_bounded(*f.source, size_bound, true), enumerate_algebras_bounded(*f.target, size_bound, true));
}

AlgebraShadow algebra_shadow(const OperadMap& f, const std::vector<FiniteAlgebra>& source, const std::vector<FiniteAlgebra>& target) {
  std::set<std::vector<int>> images, sources;
  for (const auto& a : target) images.insert(canonical_form(*f.source, restrict_algebra(f, a)));
  for (const auto& a : source) sources.insert(canonical_form(*f.source, a));
  AlgebraShadow s;
  s.source_classes = sources.size();
  s.target_classes = target.size();
  s.injective = images.size() == target.size();
  s.surjective = std::includes(images.begin(), images.end(), sources.begin(), sources.end());
  return s;
}

}  // namespace moritakit

#include "moritakit/tree.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>

#include "moritakit/error.hpp"
#include "moritakit/limits.hpp"

namespace moritakit {

namespace {

std::string q(const std::string& s) { return "'" + s + "'"; }

struct TreeIndex {
  std::map<std::string, int> edge;
  std::vector<int> produced_by;  // per edge, vertex with that output or -1
  std::vector<int> consumed_by;  // per edge, vertex with that input or -1
  std::vector<int> parent;       // per vertex
};

TreeIndex index_tree(const Tree& t) {
  TreeIndex ix;
  for (size_t e = 0; e < t.edges.size(); ++e)
    if (!ix.edge.emplace(t.edges[e], static_cast<int>(e)).second) fail(ErrorKind::IllFormed, "duplicate edge " + q(t.edges[e]));
  auto edge_of = [&](const std::string& id) {
    auto it = ix.edge.find(id);
    if (it == ix.edge.end()) fail(ErrorKind::IllFormed, "unknown edge " + q(id));
    return it->second;
  };
  if (t.edges.empty()) fail(ErrorKind::IllFormed, "a tree needs at least one edge");
  edge_of(t.root);
  ix.produced_by.assign(t.edges.size(), -1);
  ix.consumed_by.assign(t.edges.size(), -1);
  for (size_t v = 0; v < t.vertices.size(); ++v) {
    const int out = edge_of(t.vertices[v].output);
    if (ix.produced_by[static_cast<size_t>(out)] != -1) fail(ErrorKind::IllFormed, "edge " + q(t.vertices[v].output) + " is the output of two vertices");
    ix.produced_by[static_cast<size_t>(out)] = static_cast<int>(v);
    for (const auto& in : t.vertices[v].inputs) {
      const int e = edge_of(in);
      if (ix.consumed_by[static_cast<size_t>(e)] != -1) fail(ErrorKind::IllFormed, "edge " + q(in) + " is an input of two vertices");
      ix.consumed_by[static_cast<size_t>(e)] = static_cast<int>(v);
    }
  }
  for (size_t e = 0; e < t.edges.size(); ++e) {
    const bool is_root = t.edges[e] == t.root;
    if (is_root && ix.consumed_by[e] != -1) fail(ErrorKind::IllFormed, "root " + q(t.root) + " is an input of a vertex");
    if (!is_root && ix.consumed_by[e] == -1) fail(ErrorKind::IllFormed, "edge " + q(t.edges[e]) + " is a second root");
  }
  for (size_t v = 0; v < t.vertices.size(); ++v) {
    const int out = ix.edge.at(t.vertices[v].output);
    ix.parent.push_back(ix.consumed_by[static_cast<size_t>(out)]);
  }
  // walking down from each vertex has to reach the root
  for (size_t v = 0; v < t.vertices.size(); ++v) {
    int w = static_cast<int>(v);
    for (size_t steps = 0; w != -1; ++steps) {
      if (steps > t.vertices.size()) fail(ErrorKind::IllFormed, "cycle through vertex " + q(t.vertices[v].output));
      w = ix.parent[static_cast<size_t>(w)];
    }
  }
  return ix;
}

// Operations of Ω(T) other than identities.
struct TreeOp {
  std::string id;
  unsigned mask = 0;
  std::vector<std::string> ordering;
  std::string output;
};

std::string tree_op_id(const Tree& t, unsigned mask, const std::vector<std::string>& ordering) {
  std::vector<std::string> names;
  for (size_t v = 0; v < t.vertices.size(); ++v)
    if (mask >> v & 1u) names.push_back(t.vertices[v].output);
  std::sort(names.begin(), names.end());
  std::string id = "{";
  for (size_t k = 0; k < names.size(); ++k) id += (k ? "," : "") + names[k];
  id += "}(";
  for (size_t k = 0; k < ordering.size(); ++k) id += (k ? "," : "") + ordering[k];
  return id + ")";
}

std::vector<TreeOp> tree_ops(const Tree& t, const TreeIndex& ix) {
  if (t.vertices.size() > 16) fail(ErrorKind::LimitExceeded, "trees with more than 16 vertices are not supported");
  std::vector<TreeOp> ops;
  for (const auto& e : t.edges) ops.push_back({"id_" + e, 0, {e}, e});
  const unsigned n = static_cast<unsigned>(t.vertices.size());
  for (unsigned mask = 1; mask < (1u << n); ++mask) {
    int top = -1, tops = 0;
    for (unsigned v = 0; v < n; ++v) {
      if (!(mask >> v & 1u)) continue;
      const int p = ix.parent[v];
      if (p == -1 || !(mask >> p & 1u)) {
        top = static_cast<int>(v);
        ++tops;
      }
    }
    if (tops != 1) continue;
    std::set<std::string> outs;
    for (unsigned v = 0; v < n; ++v)
      if (mask >> v & 1u) outs.insert(t.vertices[v].output);
    std::vector<std::string> leaves;
    for (unsigned v = 0; v < n; ++v)
      if (mask >> v & 1u)
        for (const auto& in : t.vertices[v].inputs)
          if (!outs.count(in)) leaves.push_back(in);
    std::sort(leaves.begin(), leaves.end());
    do {
      ops.push_back({tree_op_id(t, mask, leaves), mask, leaves, t.vertices[static_cast<size_t>(top)].output});
    } while (std::next_permutation(leaves.begin(), leaves.end()));
  }
  return ops;
}

}  // namespace

void validate_tree(const Tree& t) { index_tree(t); }

std::vector<std::string> tree_leaves(const Tree& t) {
  const TreeIndex ix = index_tree(t);
  std::vector<std::string> out;
  for (size_t e = 0; e < t.edges.size(); ++e)
    if (ix.produced_by[e] == -1) out.push_back(t.edges[e]);
  return out;
}

Tree standard_tree(const std::string& name) {
  auto parse_n = [&](const std::string& prefix) -> int {
    const std::string digits = name.substr(prefix.size(), name.size() - prefix.size() - 1);
    if (digits.empty() || digits.size() > 2 || !std::all_of(digits.begin(), digits.end(), ::isdigit))
      fail(ErrorKind::BadParameters, "bad tree parameter in " + q(name));
    return std::stoi(digits);
  };
  Tree t;
  if (name == "eta") {
    t.edges = {"r"};
    t.root = "r";
    return t;
  }
  if (name.rfind("corolla(", 0) == 0 && name.back() == ')') {
    const int n = parse_n("corolla(");
    if (n > 8) fail(ErrorKind::BadParameters, "corolla arity above 8 in " + q(name));
    Tree::Vertex v{{}, "r"};
    for (int k = 0; k < n; ++k) {
      t.edges.push_back(std::string(1, static_cast<char>('a' + k)));
      v.inputs.push_back(t.edges.back());
    }
    t.edges.push_back("r");
    t.root = "r";
    t.vertices.push_back(v);
    return t;
  }
  if (name.rfind("linear(", 0) == 0 && name.back() == ')') {
    const int n = parse_n("linear(");
    for (int k = 0; k <= n; ++k) t.edges.push_back(std::to_string(k));
    for (int k = 1; k <= n; ++k) t.vertices.push_back({{std::to_string(k - 1)}, std::to_string(k)});
    t.root = std::to_string(n);
    return t;
  }
  fail(ErrorKind::UnknownName, "no standard tree " + q(name));
}

OperadPtr free_operad_on_tree(const Tree& t) {
  const TreeIndex ix = index_tree(t);
  const std::vector<TreeOp> ops = tree_ops(t, ix);
  std::map<std::pair<unsigned, std::vector<std::string>>, const TreeOp*> by_shape;
  std::map<std::string, std::vector<const TreeOp*>> into;
  for (const auto& o : ops) {
    by_shape[{o.mask, o.ordering}] = &o;
    into[o.output].push_back(&o);
  }
  OperadData d;
  d.colours = t.edges;
  for (const auto& o : ops) {
    d.ops.push_back({o.id, o.ordering, o.output});
    if (o.mask == 0) {
      d.identities[o.output] = o.id;
      continue;
    }
    const int n = static_cast<int>(o.ordering.size());
    for (const Perm& sigma : all_perms(n)) {
      std::vector<std::string> moved;
      for (int i = 0; i < n; ++i) moved.push_back(o.ordering[static_cast<size_t>(sigma[static_cast<size_t>(i)])]);
      d.action.push_back({o.id, sigma, by_shape.at({o.mask, moved})->id});
    }
    std::vector<const TreeOp*> pick(static_cast<size_t>(n));
    std::function<void(int)> rec = [&](int i) {
      if (i == n) {
        unsigned mask = o.mask;
        std::vector<std::string> ordering;
        OperadData::Composite c{o.id, {}, ""};
        for (const TreeOp* p : pick) {
          mask |= p->mask;
          ordering.insert(ordering.end(), p->ordering.begin(), p->ordering.end());
          c.inners.push_back(p->id);
        }
        if (mask == o.mask) return;
        c.result = by_shape.at({mask, ordering})->id;
        d.compose.push_back(c);
        return;
      }
      for (const TreeOp* p : into[o.ordering[static_cast<size_t>(i)]]) {
        pick[static_cast<size_t>(i)] = p;
        rec(i + 1);
      }
    };
    rec(0);
  }
  return make_operad(d, Check::Full);
}

std::vector<Dendrex> dendroidal_nerve_at(const SymOperad& o, const Tree& t) {
  const TreeIndex ix = index_tree(t);
  // vertices ordered from the root upwards
  std::vector<int> order;
  std::vector<int> frontier{ix.produced_by[static_cast<size_t>(ix.edge.at(t.root))]};
  while (!frontier.empty()) {
    const int v = frontier.back();
    frontier.pop_back();
    if (v == -1) continue;
    order.push_back(v);
    for (auto it = t.vertices[static_cast<size_t>(v)].inputs.rbegin(); it != t.vertices[static_cast<size_t>(v)].inputs.rend(); ++it)
      frontier.push_back(ix.produced_by[static_cast<size_t>(ix.edge.at(*it))]);
  }
  std::vector<Dendrex> out;
  EnumBudget budget("dendroidal nerve");
  Dendrex cur{std::vector<int>(t.edges.size(), -1), std::vector<int>(t.vertices.size(), -1)};
  std::function<void(size_t)> rec = [&](size_t k) {
    if (k == order.size()) {
      budget.tick();
      out.push_back(cur);
      return;
    }
    const auto& v = t.vertices[static_cast<size_t>(order[k])];
    const int colour = cur.colouring[static_cast<size_t>(ix.edge.at(v.output))];
    for (int p : o.ops_into(colour)) {
      if (o.arity(p) != static_cast<int>(v.inputs.size())) continue;
      budget.tick();
      cur.vertex_ops[static_cast<size_t>(order[k])] = p;
      for (size_t i = 0; i < v.inputs.size(); ++i) cur.colouring[static_cast<size_t>(ix.edge.at(v.inputs[i]))] = o.inputs(p)[i];
      rec(k + 1);
    }
  };
  for (int c = 0; c < o.num_colours(); ++c) {
    cur.colouring[static_cast<size_t>(ix.edge.at(t.root))] = c;
    rec(0);
  }
  return out;
}

OperadMap dendrex_to_map(const OperadPtr& omega, const OperadPtr& o, const Tree& t, const Dendrex& x) {
  const TreeIndex ix = index_tree(t);
  const std::vector<TreeOp> ops = tree_ops(t, ix);
  OperadMap f{omega, o, std::vector<int>(static_cast<size_t>(omega->num_colours())), std::vector<int>(static_cast<size_t>(omega->num_ops()))};
  for (size_t e = 0; e < t.edges.size(); ++e) f.colour_map[static_cast<size_t>(omega->colour(t.edges[e]))] = x.colouring[e];
  for (const auto& op : ops) {
    int image;
    if (op.mask == 0) {
      image = o->identity(x.colouring[static_cast<size_t>(ix.edge.at(op.output))]);
    } else {
      // composite in the listed input order, then permuted to the requested leaf order
      std::vector<std::string> leaves;
      std::function<int(int)> eval = [&](int v) {
        std::vector<int> inners;
        for (const auto& in : t.vertices[static_cast<size_t>(v)].inputs) {
          const int w = ix.produced_by[static_cast<size_t>(ix.edge.at(in))];
          if (w != -1 && (op.mask >> w & 1u)) {
            inners.push_back(eval(w));
          } else {
            leaves.push_back(in);
            inners.push_back(o->identity(x.colouring[static_cast<size_t>(ix.edge.at(in))]));
          }
        }
        return o->compose(x.vertex_ops[static_cast<size_t>(v)], inners);
      };
      const int p = eval(ix.produced_by[static_cast<size_t>(ix.edge.at(op.output))]);
      Perm sigma;
      for (const auto& l : op.ordering)
        sigma.push_back(static_cast<int>(std::find(leaves.begin(), leaves.end(), l) - leaves.begin()));
      image = o->act(p, sigma);
    }
    f.op_map[static_cast<size_t>(omega->op(op.id))] = image;
  }
  return f;
}

}  // namespace moritakit

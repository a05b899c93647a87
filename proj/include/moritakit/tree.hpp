#pragma once

#include <string>
#include <vector>

#include "moritakit/operad.hpp"

namespace moritakit {

/// A rooted tree given by its edges and vertices. Each vertex has a list of
/// input edges and one output edge; leaves are edges not produced by a vertex.
struct Tree {
  struct Vertex {
    std::vector<std::string> inputs;
    std::string output;
  };
  std::vector<std::string> edges;
  std::string root;
  std::vector<Vertex> vertices;
};

/// Throws IllFormed when the data is not a rooted tree.
void validate_tree(const Tree& t);

/// "eta", "corolla(n)" (leaves a, b, ..., root r), "linear(n)" (edges 0..n,
/// the k-th vertex has input k-1 and output k).
Tree standard_tree(const std::string& name);

std::vector<std::string> tree_leaves(const Tree& t);

/// Ω(T). Colours are the edges; besides identities there is one operation per
/// subtree and ordering of its leaves, written "{v1,v2}(l1,l2)" with vertices
/// named by their output edges.
OperadPtr free_operad_on_tree(const Tree& t);

/// A dendrex of shape T: an edge colouring and one operation per vertex whose
/// inputs follow the vertex's listed input order.
struct Dendrex {
  std::vector<int> colouring;   // per edge of T, in the order of t.edges
  std::vector<int> vertex_ops;  // per vertex of T
};

/// N_d(O)_T in deterministic order. Throws LimitExceeded beyond max_enum().
std::vector<Dendrex> dendroidal_nerve_at(const SymOperad& o, const Tree& t);

/// The operad map Ω(T) → O determined by a dendrex.
OperadMap dendrex_to_map(const OperadPtr& omega, const OperadPtr& o, const Tree& t, const Dendrex& x);

}  // namespace moritakit

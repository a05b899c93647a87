#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "moritakit/fincat.hpp"

namespace moritakit {

/// A simplicial set truncated at dimension `dim`.
/// face[n][k][x] is d_k of the n-simplex x (n ≥ 1), degen[n][k][x] is s_k of
/// the n-simplex x (n < dim).
class TruncSSet {
 public:
  explicit TruncSSet(int dim = 0);

  int dim() const { return dim_; }
  int size(int n) const { return static_cast<int>(ids_[static_cast<size_t>(n)].size()); }
  const std::string& id(int n, int x) const { return ids_[static_cast<size_t>(n)][static_cast<size_t>(x)]; }
  int find(int n, const std::string& id) const;

  int face(int n, int k, int x) const { return face_[static_cast<size_t>(n)][static_cast<size_t>(k)][static_cast<size_t>(x)]; }
  int degen(int n, int k, int x) const { return degen_[static_cast<size_t>(n)][static_cast<size_t>(k)][static_cast<size_t>(x)]; }

  // construction
  int add(int n, const std::string& id);
  void set_face(int n, int k, int x, int y);
  void set_degen(int n, int k, int x, int y);

 private:
  int dim_;
  std::vector<std::vector<std::string>> ids_;
  std::vector<std::unordered_map<std::string, int>> index_;
  std::vector<std::vector<std::vector<int>>> face_, degen_;
};

using SSetPtr = std::shared_ptr<const TruncSSet>;

/// Throws IllFormed naming the first violated simplicial identity.
void validate_sset(const TruncSSet& x);

struct SimpMap {
  SSetPtr source, target;
  std::vector<std::vector<int>> level_map;

  int operator()(int n, int x) const { return level_map[static_cast<size_t>(n)][static_cast<size_t>(x)]; }
};

/// Throws IllFormed when the map does not commute with faces or degeneracies.
void validate_simp_map(const SimpMap& f);
SimpMap compose_maps(const SimpMap& g, const SimpMap& f);
SimpMap identity_map(const SSetPtr& x);
bool maps_equal(const SimpMap& a, const SimpMap& b);

// ---- nerves

/// Level n holds the composable chains (f_1, ..., f_n), f_1 applied first;
/// chain ids join morphism ids with '|', level 0 uses object ids.
TruncSSet nerve(const FinCategory& c, int dim);
SSetPtr nerve_ptr(const FinCategory& c, int dim);
std::string chain_id(const FinCategory& c, const std::vector<int>& chain);
SimpMap nerve_map(const Functor& f, const SSetPtr& source_nerve, const SSetPtr& target_nerve);

// ---- standard cells

/// "simplex(n)", "boundary(n)", "horn(n,k)", "empty"; simplices are monotone
/// vertex tuples written "0,1,2".
TruncSSet standard_cells(const std::string& name, int dim);
SSetPtr standard_cells_ptr(const std::string& name, int dim);
std::string tuple_id(const std::vector<int>& t);

/// The image of the n-simplex x under the simplicial operator given by the
/// monotone tuple t: [m] → [n].
int apply_operator(const TruncSSet& x, int n, int simplex, const std::vector<int>& t);

/// The map Δ[n] → X classifying the n-simplex x (within the truncation).
SimpMap classifying_map(const SSetPtr& delta_n, int n, const SSetPtr& x, int simplex);

/// The map Δ[m] → Δ[n] induced by a monotone tuple t: [m] → [n].
SimpMap simplex_operator_map(const SSetPtr& delta_m, const SSetPtr& delta_n, const std::vector<int>& t);

// ---- pushouts and Ret

struct Pushout {
  SSetPtr object;
  SimpMap left, right;  // B → P, C → P
};

/// Levelwise pushout of f: A → B and g: A → C. Simplices are labelled "0:id"
/// (from B) or "1:id" (from C); a class is named by its least label.
Pushout pushout(const SimpMap& f, const SimpMap& g);

struct RetConstruction {
  Pushout ret;
  SSetPtr split_nerve;
  SimpMap rho;
};

/// Ret = Δ[2] ⊔_{Δ[1]} Δ[0] along (d_1, s_0) with ρ: Ret → N(Split).
RetConstruction build_ret(int dim);

// ---- queries

std::vector<int> nondegenerate_counts(const TruncSSet& x);
std::vector<int> level_sizes(const TruncSSet& x);
int pi0(const TruncSSet& x);
bool is_mono(const SimpMap& f);
/// Number of fillers per Λ[2,1] horn; true when every horn has exactly one.
bool has_unique_inner_horn_fillers(const TruncSSet& x);

// ---- maps and lifting

/// Enumerate simplicial maps A → B in a deterministic order; allowed(n, a, b)
/// restricts the image of the n-simplex a. visit returns false to stop.
void enumerate_simp_maps(const SSetPtr& a, const SSetPtr& b,
                         const std::function<bool(int, int, int)>& allowed,
                         const std::function<bool(const SimpMap&)>& visit);
std::vector<SimpMap> all_simp_maps(const SSetPtr& a, const SSetPtr& b, size_t limit);

/// Diagonal-filler search for all squares from i: A → B to p: X → Y.
/// Only meaningful up to the common truncation dimension.
bool has_rlp_sset(const SimpMap& p, const SimpMap& i, size_t limit);

/// The unique map X → Δ[0] (Δ[0] truncated at the same dimension).
SimpMap to_point(const SSetPtr& x);

}  // namespace moritakit

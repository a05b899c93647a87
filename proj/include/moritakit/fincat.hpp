#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace moritakit {

/// Raw, unvalidated description of a finite category, as read from JSON.
struct CategoryData {
  struct Mor {
    std::string id, dom, cod;
  };
  std::vector<std::string> objects;
  std::vector<Mor> morphisms;
  std::map<std::string, std::string> identities;
  // entries (g, f, g∘f); composites with an identity may be omitted
  std::vector<std::array<std::string, 3>> compose;
};

enum class Check { Full, Trusted };

/// A finite category with a total composition table. Objects and morphisms are
/// indexed in lexicographic order of their ids.
class FinCategory {
 public:
  static FinCategory build(const CategoryData& data, Check check = Check::Full);

  int num_objects() const { return static_cast<int>(object_ids_.size()); }
  int num_morphisms() const { return static_cast<int>(mor_ids_.size()); }

  const std::string& object_id(int x) const { return object_ids_.at(static_cast<size_t>(x)); }
  const std::string& morphism_id(int f) const { return mor_ids_.at(static_cast<size_t>(f)); }
  int dom(int f) const { return dom_[static_cast<size_t>(f)]; }
  int cod(int f) const { return cod_[static_cast<size_t>(f)]; }
  int identity(int x) const { return identity_[static_cast<size_t>(x)]; }
  bool is_identity(int f) const { return identity(dom(f)) == f; }
  bool is_idempotent(int f) const { return dom(f) == cod(f) && compose(f, f) == f; }

  /// g∘f; requires cod(f) == dom(g).
  int compose(int g, int f) const { return table_[static_cast<size_t>(g) * mor_ids_.size() + static_cast<size_t>(f)]; }

  const std::vector<int>& hom(int x, int y) const { return hom_[static_cast<size_t>(x) * object_ids_.size() + static_cast<size_t>(y)]; }
  const std::vector<int>& out(int x) const { return out_[static_cast<size_t>(x)]; }
  const std::vector<int>& in(int y) const { return in_[static_cast<size_t>(y)]; }

  /// -1 when absent.
  int find_object(const std::string& id) const;
  int find_morphism(const std::string& id) const;
  /// Throw UnknownName when absent.
  int object(const std::string& id) const;
  int morphism(const std::string& id) const;

  std::vector<int> idempotents() const;
  CategoryData to_data() const;

 private:
  std::vector<std::string> object_ids_, mor_ids_;
  std::vector<int> dom_, cod_, identity_, table_;
  std::vector<std::vector<int>> hom_, out_, in_;
};

using CatPtr = std::shared_ptr<const FinCategory>;

CatPtr make_category(const CategoryData& data, Check check = Check::Full);

/// Validate a raw description; throws MissingComposite, NonAssociative,
/// BadIdentity, UnknownName or Malformed naming the first violation.
FinCategory validate_category(const CategoryData& raw);

/// Idem, Split, I, P, J, terminal, linear(n).
FinCategory standard_category(const std::string& name);
CatPtr standard_category_ptr(const std::string& name);

FinCategory opposite(const FinCategory& c);

struct Functor {
  CatPtr source, target;
  std::vector<int> obj_map, mor_map;

  int operator()(int f) const { return mor_map[static_cast<size_t>(f)]; }
  int on_object(int x) const { return obj_map[static_cast<size_t>(x)]; }
};

/// Checks dom/cod, identities and composites; throws Malformed otherwise.
void validate_functor(const Functor& f);
Functor identity_functor(const CatPtr& c);
/// g∘f
Functor compose_functors(const Functor& g, const Functor& f);
Functor opposite_functor(const Functor& f, const CatPtr& source_op, const CatPtr& target_op);
bool functors_equal(const Functor& a, const Functor& b);
/// The functor Idem → Split with e ↦ i∘r.
Functor iota_functor();
/// Constant functor at object x of the target.
Functor constant_functor(const CatPtr& source, const CatPtr& target, int x);

// ---- idempotents and Karoubi envelopes

/// Least (r, i) by morphism ids with r∘i = id and i∘r = e.
std::optional<std::pair<int, int>> split_idempotent(const FinCategory& c, int e);
bool is_cauchy_complete(const FinCategory& c);

struct Karoubi {
  CatPtr category;
  Functor canonical;  // x ↦ (x, id_x)
  std::vector<std::pair<int, int>> objects;  // (x, e) per envelope object
  std::vector<int> underlying;               // envelope morphism -> morphism of C
  int find_object(int x, int e) const;
  int find_morphism(int dom, int cod, int g) const;
};

Karoubi karoubi_envelope(const CatPtr& c);

/// The functor Karoubi(F): (x, e) ↦ (Fx, Fe) between precomputed envelopes.
Functor karoubi_functor(const Functor& f, const Karoubi& ks, const Karoubi& kt);

// ---- Morita decision

struct Triple {
  int source_object = -1;
  int r = -1;  // F(c) → d
  int i = -1;  // d → F(c)
};

struct ObjectWitness {
  int target_object = -1;
  std::optional<Triple> retract;  // r∘i = id_d
  std::optional<Triple> iso;      // additionally i∘r = id_F(c)
};

struct MoritaReport {
  bool fully_faithful = false;
  bool essentially_surjective = false;
  bool essentially_surjective_up_to_retracts = false;
  bool verdict = false;
  std::vector<ObjectWitness> witnesses;
  // first pair (x, y) where the hom map is not a bijection
  std::optional<std::pair<int, int>> ff_failure;
};

MoritaReport morita_report(const Functor& f);
bool is_fully_faithful(const Functor& f);
bool is_essentially_surjective(const Functor& f);
bool is_equivalence(const Functor& f);

/// Compares the definitional verdict with is_equivalence(Karoubi(F));
/// throws OracleDisagreement when they differ, otherwise returns the verdict.
bool morita_cross_check(const Functor& f);

// ---- functor enumeration and lifting

std::vector<Functor> enumerate_functors(const CatPtr& c, const CatPtr& d, size_t limit);

/// First functor found when candidates are visited in the order produced by
/// shuffle; none if the search examines more than cap candidates.
std::optional<Functor> search_functor(const CatPtr& c, const CatPtr& d,
                                      const std::function<void(std::vector<int>&)>& shuffle,
                                      std::uint64_t cap);

/// Diagonal-filler search for every square from i: A→B to p: X→Y.
bool has_rlp_cat(const Functor& p, const Functor& i, size_t limit);

/// The groupoid of natural isomorphisms between functors C → D.
struct FunctorGroupoid {
  CatPtr category;
  std::vector<Functor> functors;  // object k of category
  // per morphism: its component at each object of C
  std::vector<std::vector<int>> components;
};

FunctorGroupoid iso_functor_groupoid(const CatPtr& c, const CatPtr& d, size_t limit);

/// Whether ι*: Iso(Fun(Split, C)) → Iso(Fun(Idem, C)) is an equivalence.
bool iota_locality_check(const CatPtr& c, size_t limit);

std::string describe_category(const FinCategory& c);

}  // namespace moritakit

#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "moritakit/fincat.hpp"
#include "moritakit/perm.hpp"

namespace moritakit {

/// Raw description of a finite coloured symmetric operad.
struct OperadData {
  struct Op {
    std::string id;
    std::vector<std::string> inputs;
    std::string output;
  };
  struct Action {
    std::string op;
    Perm perm;
    std::string result;
  };
  struct Composite {
    std::string outer;
    std::vector<std::string> inners;
    std::string result;
  };
  std::vector<std::string> colours;
  std::vector<Op> ops;
  // entries o·σ = result; the rest of the action is generated from these
  std::vector<Action> action;
  // γ(outer; inners) = result; composites with identities may be omitted
  std::vector<Composite> compose;
  std::map<std::string, std::string> identities;
};

/// Finite coloured symmetric operad. The symmetric groups act on the right:
/// o·σ has inputs (c_σ(1), ..., c_σ(n)) and o·(σ∘τ) = (o·σ)·τ.
/// Colours and operations are indexed in lexicographic order of their ids.
class SymOperad {
 public:
  static SymOperad build(const OperadData& data, Check check = Check::Full);

  int num_colours() const { return static_cast<int>(colour_ids_.size()); }
  int num_ops() const { return static_cast<int>(op_ids_.size()); }
  const std::string& colour_id(int c) const { return colour_ids_.at(static_cast<size_t>(c)); }
  const std::string& op_id(int o) const { return op_ids_.at(static_cast<size_t>(o)); }
  int find_colour(const std::string& id) const;
  int find_op(const std::string& id) const;
  int colour(const std::string& id) const;
  int op(const std::string& id) const;

  const std::vector<int>& inputs(int o) const { return inputs_[static_cast<size_t>(o)]; }
  int output(int o) const { return output_[static_cast<size_t>(o)]; }
  int arity(int o) const { return static_cast<int>(inputs_[static_cast<size_t>(o)].size()); }
  int identity(int c) const { return identity_[static_cast<size_t>(c)]; }
  bool is_identity(int o) const { return arity(o) == 1 && identity(output(o)) == o; }

  int act(int o, const Perm& sigma) const;
  /// γ(o; q_1, ..., q_n); -1 if the inputs do not match.
  int compose(int o, const std::vector<int>& inners) const;
  /// Unary composite g∘f = γ(g; f).
  int compose1(int g, int f) const { return compose(g, {f}); }

  /// Operations with the given signature (possibly empty).
  const std::vector<int>& ops_of(const std::vector<int>& inputs, int output) const;
  /// Operations whose output is c.
  const std::vector<int>& ops_into(int c) const { return into_[static_cast<size_t>(c)]; }
  int max_arity() const;

  OperadData to_data() const;

 private:
  std::vector<std::string> colour_ids_, op_ids_;
  std::vector<std::vector<int>> inputs_;
  std::vector<int> output_, identity_;
  std::vector<std::vector<int>> action_;  // per op, indexed by perm_rank
  std::map<std::vector<int>, int> compose_;  // key (outer, inners...)
  std::map<std::pair<std::vector<int>, int>, std::vector<int>> by_signature_;
  std::vector<std::vector<int>> into_;
};

using OperadPtr = std::shared_ptr<const SymOperad>;

OperadPtr make_operad(const OperadData& data, Check check = Check::Full);

/// Throws NotClosed, NonAssociative, NotEquivariant, BadUnit, UnknownName or
/// Malformed naming the first violation.
SymOperad validate_operad(const OperadData& raw);

struct OperadMap {
  OperadPtr source, target;
  std::vector<int> colour_map, op_map;

  int operator()(int o) const { return op_map[static_cast<size_t>(o)]; }
  int on_colour(int c) const { return colour_map[static_cast<size_t>(c)]; }
};

/// Throws Malformed when the map does not preserve signatures, identities,
/// the symmetric action or composition.
void validate_operad_map(const OperadMap& f);
OperadMap identity_operad_map(const OperadPtr& o);
OperadMap compose_operad_maps(const OperadMap& g, const OperadMap& f);

/// "B", "unit", "j!(<category name>)", "Omega(<tree name>)".
OperadPtr standard_operad(const std::string& name);

// ---- categories and operads

/// j*(O): colours as objects, unary operations as morphisms.
CatPtr underlying_category(const SymOperad& o);
/// j_!(C): only unary operations C(c, d).
OperadPtr category_to_operad(const FinCategory& c);
/// j_!(F)
OperadMap functor_to_operad_map(const Functor& f, const OperadPtr& source, const OperadPtr& target);
/// j*(f)
Functor underlying_functor(const OperadMap& f, const CatPtr& source, const CatPtr& target);

// ---- Cauchy completion

struct OperadCauchy {
  OperadPtr operad;
  OperadMap canonical;                       // c ↦ (c, id_c)
  std::vector<std::pair<int, int>> colours;  // (c, e) per completed colour
  std::vector<int> underlying;               // completed op -> op of O
  int find_colour(int c, int e) const;
};

OperadCauchy cauchy_completion_operad(const OperadPtr& o);
OperadMap cauchy_operad_map(const OperadMap& f, const OperadCauchy& cs, const OperadCauchy& ct);

// ---- Morita decision

/// r ∈ O(c'; c), i ∈ O(c; c') with r∘i = id_c, least by op ids.
std::optional<std::pair<int, int>> colour_retract_witness(const SymOperad& o, int c, int c2);

/// Source signatures on which full faithfulness has to be checked.
std::vector<std::pair<std::vector<int>, int>> relevant_signatures(const OperadMap& f);
bool is_fully_faithful_op(const OperadMap& f);
bool is_operad_equivalence(const OperadMap& f);

struct OperadMoritaReport {
  MoritaReport report;  // witnesses are indexed by target colour; Triple holds op ids
  bool oracle = false;  // equivalence of Cauchy completions
};

/// Throws OracleDisagreement when the definitional verdict and the Cauchy
/// completion route disagree.
OperadMoritaReport morita_report_op(const OperadMap& f);

/// An isomorphism O → P if one exists.
std::optional<OperadMap> find_operad_isomorphism(const OperadPtr& o, const OperadPtr& p);

/// All operad maps O → P in deterministic order.
std::vector<OperadMap> enumerate_operad_maps(const OperadPtr& o, const OperadPtr& p, size_t limit);

std::string signature_string(const SymOperad& o, const std::vector<int>& inputs, int output);

}  // namespace moritakit

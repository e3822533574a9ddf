#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "tracelearn/atom.hpp"
#include "tracelearn/diagnostics.hpp"
#include "tracelearn/trace.hpp"
#include "tracelearn/vocabulary.hpp"

namespace tracelearn {

// Inequality constraints inside validity conditions are encoded as ordinary
// atoms over this reserved predicate, e.g. neq(V1,V2).
inline const std::string kNeqPredicate = "neq";
// Equality sensor predicate; its reflexive static facts drive the
// closed-world derivation of the inequalities above.
inline const std::string kEqPredicate = "eq";

// One executed step of one instance, with the full surrounding states.
struct Occurrence {
  std::string instance_id;
  int state_id = 0;
  GroundAction action;
  std::set<Atom> pre_props;
  std::set<Atom> post_props;
};

using SchemaKey = std::pair<std::string, int>;  // (action name, arity)

std::map<SchemaKey, std::vector<Occurrence>> collect_occurrences(
    const Corpus& corpus);

// Positional parameter names V1..Vn; concrete names are not recoverable from
// ground observations.
std::vector<std::string> schema_params(int arity);

// Replaces each term equal to args[i] by params[i]. Returns nullopt when the
// atom mentions a constant outside the argument list (not liftable).
// Callers must ensure args are pairwise distinct.
std::optional<Atom> lift(const Atom& atom, const GroundAction& action,
                         const std::vector<std::string>& params);

bool args_distinct(const GroundAction& action);

// Inverse of lift: substitutes args[i] for params[i], leaving constants and
// unknown variables untouched.
Atom ground_atom(const Atom& lifted, const std::vector<std::string>& params,
                 const std::vector<std::string>& args);
std::set<Atom> ground_atoms(const std::set<Atom>& lifted,
                            const std::vector<std::string>& params,
                            const std::vector<std::string>& args);

struct ActionSchema {
  std::string name;
  std::vector<std::string> params;
  std::set<Atom> preconditions;
  std::set<Atom> pos_effects;
  std::set<Atom> neg_effects;
  // Static typing atoms followed by neq atoms, in canonical emission order
  // (ascending arity, then ascending extension, then lexicographic).
  std::vector<Atom> validity;

  int arity() const { return static_cast<int>(params.size()); }
  std::set<Atom> ground_preconditions(const GroundAction& action) const;
  std::set<Atom> ground_pos_effects(const GroundAction& action) const;
  std::set<Atom> ground_neg_effects(const GroundAction& action) const;

  bool operator==(const ActionSchema&) const = default;
};

// Intersection over occurrences of the liftable fluent pre-state atoms.
std::set<Atom> learn_preconditions(const std::vector<Occurrence>& occurrences,
                                   const std::set<Atom>& fluents,
                                   Diagnostics* diag = nullptr);

// Intersection of the lifted per-occurrence state diffs. Ungeneralizable
// diff atoms and occurrences deviating from the common effects are reported.
std::pair<std::set<Atom>, std::set<Atom>> learn_effects(
    const std::vector<Occurrence>& occurrences, Diagnostics* diag = nullptr);

// vi != vj is included exactly when no occurrence has eq(args[i],args[j])
// among the statics (closed-world negation of the equality sensor).
std::vector<Atom> derive_inequalities(
    const std::vector<Occurrence>& occurrences, const std::set<Atom>& statics);

// Static atoms over distinct parameter tuples covering every occurrence,
// searched smallest-extension-first with at most one atom kept per tuple,
// plus the derived inequalities.
std::vector<Atom> learn_validity_condition(
    const std::vector<Occurrence>& occurrences, const std::set<Atom>& statics);

std::vector<ActionSchema> learn_action_schemas(const Corpus& corpus,
                                               const Vocabulary& vocab,
                                               Diagnostics* diag = nullptr);

const ActionSchema* find_schema(const std::vector<ActionSchema>& schemas,
                                const GroundAction& action);

}  // namespace tracelearn

#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "tracelearn/action_model.hpp"
#include "tracelearn/atom.hpp"

namespace tracelearn {

// A schema instantiated over concrete objects, with ground precondition and
// effect sets ready for search.
struct GroundedAction {
  GroundAction action;
  std::set<Atom> preconditions;
  std::set<Atom> add;
  std::set<Atom> del;
};

// All bindings of schema parameters to objects whose validity condition holds
// (static atoms checked against statics, neq atoms as distinctness), sorted
// by (name, args).
std::vector<GroundedAction> ground_actions(
    const std::vector<ActionSchema>& schemas,
    const std::set<std::string>& objects, const std::set<Atom>& statics);

// (state - del) | add. Throws when the preconditions are not satisfied.
std::set<Atom> apply(const std::set<Atom>& state, const GroundedAction& action);

struct PlanningProblem {
  std::set<Atom> initial;  // fluent atoms only; statics are kept separate
  std::set<Atom> goal;
  std::vector<ActionSchema> schemas;
  std::set<Atom> statics;
  std::set<std::string> objects;
  int max_plan_length = 20;
};

struct Plan {
  std::vector<GroundAction> steps;

  int length() const { return static_cast<int>(steps.size()); }
};

// Breadth-first search over canonical fluent states with a visited set and
// lexicographic action expansion, so the result is a shortest plan with a
// deterministic tie-break. Returns nullopt when no plan exists within
// max_plan_length.
std::optional<Plan> plan(const PlanningProblem& problem);

// One "action ..." line per step followed by "length N".
std::string serialize_plan(const Plan& plan);

}  // namespace tracelearn

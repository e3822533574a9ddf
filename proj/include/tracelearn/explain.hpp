#pragma once

#include <compare>
#include <set>
#include <string>
#include <vector>

#include "tracelearn/action_model.hpp"
#include "tracelearn/atom.hpp"
#include "tracelearn/goals.hpp"
#include "tracelearn/trace.hpp"

namespace tracelearn {

// Proposition prop held at state_id and was a ground precondition of the
// action executed there: the state of affairs contributed to that action.
struct ContributedFact {
  int state_id = 0;
  Atom prop;
  GroundAction action;

  auto operator<=>(const ContributedFact&) const = default;
};

// Why a produced atom mattered: it was a goal, or it fed a later action.
struct Justification {
  Atom prop;
  bool is_goal = false;
  int consumer_state = -1;
  GroundAction consumer_action;

  auto operator<=>(const Justification&) const = default;
};

// The action at state_id achieved exactly the produced atoms that later
// mattered (possibly none: an unexplained action).
struct AchievedFact {
  int state_id = 0;
  GroundAction action;
  std::set<Atom> relevant;

  auto operator<=>(const AchievedFact&) const = default;
};

struct Explanation {
  std::string instance_id;
  std::vector<ContributedFact> contributed;
  std::vector<AchievedFact> achieved;                     // one per step
  std::vector<std::vector<Justification>> justifications;  // per achieved fact

  // Deterministic report body: one line per fact sorted by (state id, text),
  // with each achieved line followed by indented justification lines linking
  // its relevant atoms to the goal or to the consuming action.
  std::string render() const;
};

std::vector<ContributedFact> contributed(
    const BehavioralInstance& instance,
    const std::vector<ActionSchema>& schemas);

// True when p holds in every state of the closed range [s_i, s_j].
bool path_true(const BehavioralInstance& instance, int s_i, int s_j,
               const Atom& p);

// Ground positive effects of the action at state_id that were goals or were
// consumed later along an unbroken span of truth.
std::set<Atom> relevant_effects(const BehavioralInstance& instance,
                                int state_id,
                                const std::vector<ActionSchema>& schemas,
                                const GoalModel& goals,
                                const std::vector<ContributedFact>& facts);

Explanation explain_trace(const BehavioralInstance& instance,
                          const std::vector<ActionSchema>& schemas,
                          const GoalModel& goals);

}  // namespace tracelearn

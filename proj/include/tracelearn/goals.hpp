#pragma once

#include <set>

#include "tracelearn/atom.hpp"
#include "tracelearn/trace.hpp"
#include "tracelearn/vocabulary.hpp"

namespace tracelearn {

// Goals are the fluents every observed episode ends with: the intersection of
// final-state fluent atoms across all instances.
struct GoalModel {
  std::set<Atom> goal;

  bool desired(const Atom& p) const { return goal.count(p) != 0; }

  bool operator==(const GoalModel&) const = default;
};

GoalModel learn_goals(const Corpus& corpus, const Vocabulary& vocab);

}  // namespace tracelearn

#pragma once

#include <set>
#include <utility>

#include "tracelearn/action_model.hpp"
#include "tracelearn/atom.hpp"
#include "tracelearn/goals.hpp"
#include "tracelearn/trace.hpp"

namespace tracelearn {

// How p1 precedes p2 inside one instance:
//   Actual      - some state where p1 holds is later followed by a state
//                 where p2 newly holds, and no intervening executed action
//                 needed p1 as a ground precondition (p1 was not consumed to
//                 produce p2);
//   InitialOnly - both atoms merely hold in the initial state;
//   None        - neither clause applies.
enum class PrecedenceKind { None, InitialOnly, Actual };

PrecedenceKind precedes_in_instance(const BehavioralInstance& instance,
                                    const Atom& p1, const Atom& p2,
                                    const std::vector<ActionSchema>& schemas);

// (p1,p2) is kept when p1 precedes p2 in every instance where both atoms
// occur, and at least one of those instances shows an Actual precedence.
// Deliberately non-transitive; restricted to distinct fluent pairs.
std::set<std::pair<Atom, Atom>> must_precede(
    const Corpus& corpus, const std::vector<ActionSchema>& schemas,
    const std::set<Atom>& fluents);

// Non-goal atoms that must precede something: inferred intermediate
// requirements of the behavior.
std::set<Atom> mandatory(const std::set<std::pair<Atom, Atom>>& must_precede,
                         const GoalModel& goals);

struct PrecedenceModel {
  std::set<std::pair<Atom, Atom>> must_precede;
  std::set<Atom> mandatory;

  bool operator==(const PrecedenceModel&) const = default;
};

}  // namespace tracelearn

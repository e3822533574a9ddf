#include "tracelearn/goals.hpp"

#include <algorithm>
#include <stdexcept>

namespace tracelearn {

GoalModel learn_goals(const Corpus& corpus, const Vocabulary& vocab) {
  if (corpus.instances.empty())
    throw std::runtime_error("cannot learn goals from an empty corpus");
  GoalModel model;
  bool first = true;
  for (const auto& instance : corpus.instances) {
    std::set<Atom> final_fluents;
    for (const auto& atom : instance.final_state().props)
      if (vocab.is_fluent(atom)) final_fluents.insert(atom);
    if (first) {
      model.goal = std::move(final_fluents);
      first = false;
    } else {
      std::set<Atom> kept;
      std::set_intersection(model.goal.begin(), model.goal.end(),
                            final_fluents.begin(), final_fluents.end(),
                            std::inserter(kept, kept.begin()));
      model.goal = std::move(kept);
    }
    if (model.goal.empty()) break;
  }
  return model;
}

}  // namespace tracelearn

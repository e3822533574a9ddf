#include "tracelearn/vocabulary.hpp"

#include <algorithm>
#include <stdexcept>

namespace tracelearn {

Vocabulary learn_vocabulary(const Corpus& corpus) {
  if (corpus.instances.empty())
    throw std::runtime_error("cannot learn vocabulary from an empty corpus");

  Vocabulary vocab;
  bool first_state = true;
  for (const auto& instance : corpus.instances) {
    if (instance.states.empty())
      throw std::runtime_error("instance " + instance.id + " has no states");
    for (const auto& state : instance.states) {
      vocab.propositions.insert(state.props.begin(), state.props.end());
      if (first_state) {
        vocab.statics = state.props;
        first_state = false;
      } else {
        std::set<Atom> kept;
        std::set_intersection(vocab.statics.begin(), vocab.statics.end(),
                              state.props.begin(), state.props.end(),
                              std::inserter(kept, kept.begin()));
        vocab.statics = std::move(kept);
      }
    }
    vocab.actions.insert(instance.actions.begin(), instance.actions.end());
  }
  std::set_difference(vocab.propositions.begin(), vocab.propositions.end(),
                      vocab.statics.begin(), vocab.statics.end(),
                      std::inserter(vocab.fluents, vocab.fluents.begin()));
  return vocab;
}

}  // namespace tracelearn

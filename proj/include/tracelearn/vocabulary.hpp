#pragma once

#include <set>

#include "tracelearn/atom.hpp"
#include "tracelearn/trace.hpp"

namespace tracelearn {

// Partition of everything the corpus ever exhibited. Statics are the atoms
// true in every state of every instance (closed world); fluents are the rest.
struct Vocabulary {
  std::set<Atom> propositions;
  std::set<Atom> statics;
  std::set<Atom> fluents;
  std::set<GroundAction> actions;

  bool is_static(const Atom& a) const { return statics.count(a) != 0; }
  bool is_fluent(const Atom& a) const { return fluents.count(a) != 0; }

  bool operator==(const Vocabulary&) const = default;
};

Vocabulary learn_vocabulary(const Corpus& corpus);

}  // namespace tracelearn

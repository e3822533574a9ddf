#pragma once

#include <istream>
#include <set>
#include <string>
#include <vector>

#include "tracelearn/action_model.hpp"
#include "tracelearn/diagnostics.hpp"
#include "tracelearn/goals.hpp"
#include "tracelearn/precedence.hpp"
#include "tracelearn/trace.hpp"
#include "tracelearn/vocabulary.hpp"

namespace tracelearn {

struct LearnedModel {
  Vocabulary vocabulary;
  std::vector<ActionSchema> schemas;
  GoalModel goals;
  PrecedenceModel precedence;

  bool operator==(const LearnedModel&) const = default;
};

// Runs the full learning pipeline: vocabulary, action schemas, goals,
// precedence constraints, mandatory atoms. Symmetric must_precede pairs are
// surfaced as diagnostics.
LearnedModel learn_model(const Corpus& corpus, Diagnostics* diag = nullptr);

// Model file format (line oriented, '#' comments): sections in fixed order
// statics, fluents, actions, goal, one "action <head>" block per schema with
// pre/add/del/valid subsections, must_precede ("p -> q" lines), mandatory.
// parse_model(serialize_model(m)) == m.
std::string serialize_model(const LearnedModel& model);
LearnedModel parse_model(std::istream& in);
LearnedModel parse_model(const std::string& text);

// Every constant mentioned by the model; the planning object pool.
std::set<std::string> model_constants(const LearnedModel& model);

// Goal atoms that are also ground preconditions of some valid action whose
// effects achieve another goal atom: candidates for being necessities rather
// than genuinely desired outcomes. Diagnostic only.
std::set<Atom> goal_necessity_suspects(const LearnedModel& model);

}  // namespace tracelearn

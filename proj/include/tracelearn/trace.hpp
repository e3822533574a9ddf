#pragma once

#include <filesystem>
#include <istream>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "tracelearn/atom.hpp"

namespace tracelearn {

// One observed world state: consecutive id within its trace plus the set of
// ground atoms the observer saw as true.
struct StateRecord {
  int id = 0;
  std::set<Atom> props;

  bool operator==(const StateRecord&) const = default;
};

// A full observed episode: states[i] --actions[i]--> states[i+1].
struct BehavioralInstance {
  std::string id;
  std::vector<StateRecord> states;
  std::vector<GroundAction> actions;

  int step_count() const { return static_cast<int>(actions.size()); }
  const std::set<Atom>& props(int state_id) const;
  const StateRecord& final_state() const { return states.back(); }

  bool operator==(const BehavioralInstance&) const = default;
};

struct Corpus {
  std::string class_name;
  std::vector<BehavioralInstance> instances;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& message, int line)
      : std::runtime_error("line " + std::to_string(line) + ": " + message),
        line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

// Trace file grammar (UTF-8, line oriented, '#' at column 0 starts a comment
// line, blank lines ignored):
//
//   trace    := "behavior" SP id NL block+ "end" NL
//   block    := stateln atomln* [actionln]
//   stateln  := "state" SP nat NL
//   atomln   := "  " atom NL
//   actionln := "action" SP atom NL
//
// State ids must be consecutive from 0, every non-final block carries exactly
// one action line and the final block carries none. Atoms are ground.
BehavioralInstance parse_trace(std::istream& in);
BehavioralInstance parse_trace(const std::string& text);

// Canonical serialization: states in id order, atoms sorted, two-space
// indent, no comments. parse_trace(serialize_trace(x)) == x.
std::string serialize_trace(const BehavioralInstance& instance);

// Parses every file (aborting with the offending path on failure), checks
// instance ids are unique, and refuses an empty corpus.
Corpus load_corpus(const std::vector<std::filesystem::path>& paths,
                   const std::string& class_name);

// Reads a single "state N" block (same atom syntax as traces); used for
// planner initial states.
std::set<Atom> parse_state_block(std::istream& in);
std::set<Atom> parse_state_block(const std::string& text);

}  // namespace tracelearn

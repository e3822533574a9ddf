#pragma once

#include <compare>
#include <iosfwd>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace tracelearn {

// Identifiers follow the textual grammar: constants match [a-z][a-z0-9_]*,
// schema variables match [A-Z][A-Za-z0-9_]*. The case of the first character
// is the sole ground/variable distinction.
bool is_constant_name(std::string_view name);
bool is_variable_name(std::string_view name);
inline bool is_variable_term(std::string_view term) {
  return !term.empty() && term.front() >= 'A' && term.front() <= 'Z';
}

// A positive atomic proposition: predicate plus ordered terms. States and
// traces hold only ground atoms; learned schemas may carry variables.
struct Atom {
  std::string predicate;
  std::vector<std::string> terms;

  bool ground() const;
  int arity() const { return static_cast<int>(terms.size()); }
  std::string str() const;

  auto operator<=>(const Atom&) const = default;
};

struct GroundAction {
  std::string name;
  std::vector<std::string> args;

  int arity() const { return static_cast<int>(args.size()); }
  std::string str() const;

  auto operator<=>(const GroundAction&) const = default;
};

std::ostream& operator<<(std::ostream&, const Atom&);
std::ostream& operator<<(std::ostream&, const GroundAction&);

// Parses "on(a,b)" or a bare 0-ary name. Throws std::invalid_argument on
// malformed input; with allow_variables=false an uppercase term is reported
// as an uppercase constant in a ground position.
Atom parse_atom(std::string_view text, bool allow_variables);
GroundAction parse_ground_action(std::string_view text);

std::string atom_set_str(const std::set<Atom>& atoms);

}  // namespace tracelearn

#include "tracelearn/atom.hpp"

#include <ostream>
#include <sstream>
#include <stdexcept>

namespace tracelearn {

namespace {

bool lower_alpha(char c) { return c >= 'a' && c <= 'z'; }
bool upper_alpha(char c) { return c >= 'A' && c <= 'Z'; }
bool constant_tail(char c) {
  return lower_alpha(c) || (c >= '0' && c <= '9') || c == '_';
}
bool variable_tail(char c) { return constant_tail(c) || upper_alpha(c); }

// Scans one term starting at pos. Accepts constants always, variables only
// when allowed; positions the cursor one past the term.
std::string scan_term(std::string_view text, size_t& pos, bool allow_variables) {
  if (pos >= text.size())
    throw std::invalid_argument("expected term");
  size_t start = pos;
  if (lower_alpha(text[pos])) {
    ++pos;
    while (pos < text.size() && constant_tail(text[pos])) ++pos;
  } else if (upper_alpha(text[pos])) {
    ++pos;
    while (pos < text.size() && variable_tail(text[pos])) ++pos;
    if (!allow_variables)
      throw std::invalid_argument("uppercase constant '" +
                                  std::string(text.substr(start, pos - start)) +
                                  "' in a ground position");
  } else {
    throw std::invalid_argument(std::string("unexpected character '") +
                                text[pos] + "' in term");
  }
  return std::string(text.substr(start, pos - start));
}

std::string scan_predicate(std::string_view text, size_t& pos) {
  if (pos >= text.size() || !lower_alpha(text[pos]))
    throw std::invalid_argument("expected predicate name");
  size_t start = pos;
  ++pos;
  while (pos < text.size() && constant_tail(text[pos])) ++pos;
  return std::string(text.substr(start, pos - start));
}

void format_with_terms(std::ostream& os, const std::string& head,
                       const std::vector<std::string>& terms) {
  os << head;
  if (terms.empty()) return;
  os << '(';
  for (size_t i = 0; i < terms.size(); ++i) {
    if (i) os << ',';
    os << terms[i];
  }
  os << ')';
}

}  // namespace

bool is_constant_name(std::string_view name) {
  if (name.empty() || !lower_alpha(name.front())) return false;
  for (char c : name.substr(1))
    if (!constant_tail(c)) return false;
  return true;
}

bool is_variable_name(std::string_view name) {
  if (name.empty() || !upper_alpha(name.front())) return false;
  for (char c : name.substr(1))
    if (!variable_tail(c)) return false;
  return true;
}

bool Atom::ground() const {
  for (const auto& t : terms)
    if (is_variable_term(t)) return false;
  return true;
}

std::string Atom::str() const {
  std::ostringstream os;
  format_with_terms(os, predicate, terms);
  return os.str();
}

std::string GroundAction::str() const {
  std::ostringstream os;
  format_with_terms(os, name, args);
  return os.str();
}

std::ostream& operator<<(std::ostream& os, const Atom& a) {
  return os << a.str();
}

std::ostream& operator<<(std::ostream& os, const GroundAction& a) {
  return os << a.str();
}

Atom parse_atom(std::string_view text, bool allow_variables) {
  size_t pos = 0;
  Atom atom;
  atom.predicate = scan_predicate(text, pos);
  if (pos < text.size() && text[pos] == '(') {
    ++pos;
    while (true) {
      atom.terms.push_back(scan_term(text, pos, allow_variables));
      if (pos >= text.size())
        throw std::invalid_argument("unterminated term list");
      if (text[pos] == ',') {
        ++pos;
        continue;
      }
      if (text[pos] == ')') {
        ++pos;
        break;
      }
      throw std::invalid_argument(std::string("unexpected character '") +
                                  text[pos] + "' in term list");
    }
  }
  if (pos != text.size())
    throw std::invalid_argument("trailing characters after atom: '" +
                                std::string(text.substr(pos)) + "'");
  return atom;
}

GroundAction parse_ground_action(std::string_view text) {
  Atom atom = parse_atom(text, /*allow_variables=*/false);
  return GroundAction{std::move(atom.predicate), std::move(atom.terms)};
}

std::string atom_set_str(const std::set<Atom>& atoms) {
  std::ostringstream os;
  os << '{';
  bool first = true;
  for (const auto& a : atoms) {
    if (!first) os << ", ";
    first = false;
    os << a.str();
  }
  os << '}';
  return os.str();
}

}  // namespace tracelearn

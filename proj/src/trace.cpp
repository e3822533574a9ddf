#include "tracelearn/trace.hpp"

#include <fstream>
#include <map>
#include <sstream>

namespace tracelearn {

const std::set<Atom>& BehavioralInstance::props(int state_id) const {
  if (state_id < 0 || state_id >= static_cast<int>(states.size()))
    throw std::out_of_range("state id " + std::to_string(state_id) +
                            " out of range for instance " + id);
  return states[state_id].props;
}

namespace {

struct Line {
  int number;
  std::string text;
};

// Splits into lines, dropping comment lines ('#' at column 0), blank lines
// and a trailing '\r' (CRLF tolerance).
std::vector<Line> meaningful_lines(std::istream& in) {
  std::vector<Line> lines;
  std::string raw;
  int number = 0;
  while (std::getline(in, raw)) {
    ++number;
    if (!raw.empty() && raw.back() == '\r') raw.pop_back();
    if (raw.empty()) continue;
    if (raw.front() == '#') continue;
    if (raw.find_first_not_of(' ') == std::string::npos) continue;
    lines.push_back({number, raw});
  }
  return lines;
}

bool has_keyword(const std::string& text, const char* keyword,
                 std::string* rest) {
  std::string prefix = std::string(keyword) + ' ';
  if (text.rfind(prefix, 0) != 0) return false;
  *rest = text.substr(prefix.size());
  return true;
}

int parse_nat(const std::string& text, int line) {
  if (text.empty()) throw ParseError("expected state id", line);
  for (char c : text)
    if (c < '0' || c > '9')
      throw ParseError("malformed state id '" + text + "'", line);
  try {
    return std::stoi(text);
  } catch (const std::exception&) {
    throw ParseError("state id out of range '" + text + "'", line);
  }
}

Atom parse_ground_atom(const std::string& text, int line) {
  try {
    return parse_atom(text, /*allow_variables=*/false);
  } catch (const std::invalid_argument& e) {
    throw ParseError(e.what(), line);
  }
}

}  // namespace

BehavioralInstance parse_trace(std::istream& in) {
  std::vector<Line> lines = meaningful_lines(in);
  size_t i = 0;
  auto fail_eof = [&](const char* what) -> ParseError {
    int line = lines.empty() ? 1 : lines.back().number;
    return ParseError(std::string("unexpected end of file, expected ") + what,
                      line);
  };

  if (i >= lines.size()) throw fail_eof("behavior header");
  BehavioralInstance instance;
  {
    std::string rest;
    if (!has_keyword(lines[i].text, "behavior", &rest))
      throw ParseError("expected 'behavior <id>'", lines[i].number);
    if (!is_constant_name(rest))
      throw ParseError("malformed behavior id '" + rest + "'",
                       lines[i].number);
    instance.id = rest;
    ++i;
  }

  bool pending_action = false;  // an action line closed the previous block
  while (true) {
    if (i >= lines.size()) throw fail_eof("'state' or 'end'");
    const Line& line = lines[i];
    std::string rest;
    if (line.text == "end") {
      if (pending_action)
        throw ParseError("action line not between two states", line.number);
      if (instance.states.empty())
        throw ParseError("trace has no states", line.number);
      ++i;
      break;
    }
    if (!has_keyword(line.text, "state", &rest))
      throw ParseError("expected 'state <n>', 'action' or 'end'", line.number);
    if (!instance.states.empty() && !pending_action)
      throw ParseError("missing action line before state " + rest,
                       line.number);
    int id = parse_nat(rest, line.number);
    if (id != static_cast<int>(instance.states.size()))
      throw ParseError("non-consecutive state id " + std::to_string(id) +
                           " (expected " +
                           std::to_string(instance.states.size()) + ")",
                       line.number);
    ++i;
    pending_action = false;

    StateRecord state;
    state.id = id;
    while (i < lines.size() && lines[i].text.rfind("  ", 0) == 0) {
      const std::string& text = lines[i].text;
      if (text.size() > 2 && text[2] == ' ')
        throw ParseError("atom lines are indented by exactly two spaces",
                         lines[i].number);
      state.props.insert(parse_ground_atom(text.substr(2), lines[i].number));
      ++i;
    }
    instance.states.push_back(std::move(state));

    if (i < lines.size() && has_keyword(lines[i].text, "action", &rest)) {
      try {
        instance.actions.push_back(parse_ground_action(rest));
      } catch (const std::invalid_argument& e) {
        throw ParseError(e.what(), lines[i].number);
      }
      pending_action = true;
      ++i;
    }
  }

  if (i < lines.size())
    throw ParseError("unexpected content after 'end' (one trace per file)",
                     lines[i].number);
  return instance;
}

BehavioralInstance parse_trace(const std::string& text) {
  std::istringstream in(text);
  return parse_trace(in);
}

std::string serialize_trace(const BehavioralInstance& instance) {
  std::ostringstream os;
  os << "behavior " << instance.id << '\n';
  for (size_t s = 0; s < instance.states.size(); ++s) {
    os << "state " << instance.states[s].id << '\n';
    for (const Atom& atom : instance.states[s].props)
      os << "  " << atom.str() << '\n';
    if (s < instance.actions.size())
      os << "action " << instance.actions[s].str() << '\n';
  }
  os << "end\n";
  return os.str();
}

Corpus load_corpus(const std::vector<std::filesystem::path>& paths,
                   const std::string& class_name) {
  if (paths.empty())
    throw std::runtime_error("empty corpus: no trace files given");
  Corpus corpus;
  corpus.class_name = class_name;
  std::map<std::string, std::filesystem::path> seen;
  for (const auto& path : paths) {
    std::ifstream in(path);
    if (!in)
      throw std::runtime_error("cannot open trace file " + path.string());
    BehavioralInstance instance;
    try {
      instance = parse_trace(in);
    } catch (const ParseError& e) {
      throw std::runtime_error(path.string() + ": " + e.what());
    }
    auto [it, inserted] = seen.emplace(instance.id, path);
    if (!inserted)
      throw std::runtime_error("duplicate instance id '" + instance.id +
                               "' in " + path.string() + " and " +
                               it->second.string());
    corpus.instances.push_back(std::move(instance));
  }
  return corpus;
}

std::set<Atom> parse_state_block(std::istream& in) {
  std::vector<Line> lines = meaningful_lines(in);
  if (lines.empty()) throw ParseError("expected 'state <n>'", 1);
  size_t i = 0;
  std::string rest;
  if (!has_keyword(lines[i].text, "state", &rest))
    throw ParseError("expected 'state <n>'", lines[i].number);
  parse_nat(rest, lines[i].number);
  ++i;
  std::set<Atom> props;
  for (; i < lines.size(); ++i) {
    if (lines[i].text.rfind("  ", 0) != 0)
      throw ParseError("expected indented atom line", lines[i].number);
    if (lines[i].text.size() > 2 && lines[i].text[2] == ' ')
      throw ParseError("atom lines are indented by exactly two spaces",
                       lines[i].number);
    props.insert(parse_ground_atom(lines[i].text.substr(2), lines[i].number));
  }
  return props;
}

std::set<Atom> parse_state_block(const std::string& text) {
  std::istringstream in(text);
  return parse_state_block(in);
}

}  // namespace tracelearn

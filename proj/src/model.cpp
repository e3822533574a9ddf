#include "tracelearn/model.hpp"

#include <algorithm>
#include <sstream>

#include "tracelearn/planner.hpp"

namespace tracelearn {

LearnedModel learn_model(const Corpus& corpus, Diagnostics* diag) {
  LearnedModel model;
  model.vocabulary = learn_vocabulary(corpus);
  model.schemas = learn_action_schemas(corpus, model.vocabulary, diag);
  model.goals = learn_goals(corpus, model.vocabulary);
  model.precedence.must_precede =
      must_precede(corpus, model.schemas, model.vocabulary.fluents);
  model.precedence.mandatory =
      mandatory(model.precedence.must_precede, model.goals);
  if (diag) {
    for (const auto& [p1, p2] : model.precedence.must_precede) {
      if (p1 < p2 && model.precedence.must_precede.count({p2, p1}))
        diag->warn("symmetric precedence between " + p1.str() + " and " +
                   p2.str() + ": the corpus never orders them apart");
    }
  }
  return model;
}

namespace {

void emit_section(std::ostringstream& os, const char* header,
                  const std::set<Atom>& atoms) {
  os << header << ":\n";
  for (const Atom& atom : atoms) os << "  " << atom.str() << '\n';
}

void emit_schema_section(std::ostringstream& os, const char* header,
                         const std::set<Atom>& atoms) {
  os << "  " << header << ":\n";
  for (const Atom& atom : atoms) os << "    " << atom.str() << '\n';
}

}  // namespace

std::string serialize_model(const LearnedModel& model) {
  std::ostringstream os;
  emit_section(os, "statics", model.vocabulary.statics);
  emit_section(os, "fluents", model.vocabulary.fluents);
  os << "actions:\n";
  for (const GroundAction& action : model.vocabulary.actions)
    os << "  " << action.str() << '\n';
  emit_section(os, "goal", model.goals.goal);

  std::vector<const ActionSchema*> schemas;
  for (const auto& schema : model.schemas) schemas.push_back(&schema);
  std::sort(schemas.begin(), schemas.end(),
            [](const ActionSchema* a, const ActionSchema* b) {
              return std::tie(a->name, a->params) < std::tie(b->name, b->params);
            });
  for (const ActionSchema* schema : schemas) {
    os << "action " << schema->name;
    if (!schema->params.empty()) {
      os << '(';
      for (size_t i = 0; i < schema->params.size(); ++i) {
        if (i) os << ',';
        os << schema->params[i];
      }
      os << ')';
    }
    os << '\n';
    emit_schema_section(os, "pre", schema->preconditions);
    emit_schema_section(os, "add", schema->pos_effects);
    emit_schema_section(os, "del", schema->neg_effects);
    os << "  valid:\n";
    for (const Atom& atom : schema->validity) os << "    " << atom.str() << '\n';
  }

  os << "must_precede:\n";
  for (const auto& [p1, p2] : model.precedence.must_precede)
    os << "  " << p1.str() << " -> " << p2.str() << '\n';
  os << "mandatory:\n";
  for (const Atom& atom : model.precedence.mandatory)
    os << "  " << atom.str() << '\n';
  return os.str();
}

namespace {

struct ModelLine {
  int number;
  std::string text;
};

std::vector<ModelLine> model_lines(std::istream& in) {
  std::vector<ModelLine> lines;
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

Atom parse_model_atom(const std::string& text, int line, bool allow_vars) {
  try {
    return parse_atom(text, allow_vars);
  } catch (const std::invalid_argument& e) {
    throw ParseError(e.what(), line);
  }
}

// Reads "  <atom>" lines following a top-level section header.
std::set<Atom> read_atom_section(const std::vector<ModelLine>& lines,
                                 size_t& i, bool allow_vars) {
  std::set<Atom> atoms;
  while (i < lines.size() && lines[i].text.rfind("  ", 0) == 0 &&
         lines[i].text.rfind("    ", 0) != 0) {
    atoms.insert(
        parse_model_atom(lines[i].text.substr(2), lines[i].number, allow_vars));
    ++i;
  }
  return atoms;
}

void expect_header(const std::vector<ModelLine>& lines, size_t& i,
                   const std::string& header) {
  if (i >= lines.size())
    throw ParseError("missing section '" + header + "'",
                     lines.empty() ? 1 : lines.back().number);
  if (lines[i].text != header + ":")
    throw ParseError("expected section '" + header + ":'", lines[i].number);
  ++i;
}

}  // namespace

LearnedModel parse_model(std::istream& in) {
  std::vector<ModelLine> lines = model_lines(in);
  size_t i = 0;
  LearnedModel model;

  expect_header(lines, i, "statics");
  model.vocabulary.statics = read_atom_section(lines, i, false);
  expect_header(lines, i, "fluents");
  model.vocabulary.fluents = read_atom_section(lines, i, false);
  expect_header(lines, i, "actions");
  for (const Atom& atom : read_atom_section(lines, i, false))
    model.vocabulary.actions.insert(GroundAction{atom.predicate, atom.terms});
  expect_header(lines, i, "goal");
  model.goals.goal = read_atom_section(lines, i, false);

  std::set_union(model.vocabulary.statics.begin(),
                 model.vocabulary.statics.end(),
                 model.vocabulary.fluents.begin(),
                 model.vocabulary.fluents.end(),
                 std::inserter(model.vocabulary.propositions,
                               model.vocabulary.propositions.begin()));

  while (i < lines.size() && lines[i].text.rfind("action ", 0) == 0) {
    int head_line = lines[i].number;
    Atom head =
        parse_model_atom(lines[i].text.substr(7), head_line, /*vars=*/true);
    ActionSchema schema;
    schema.name = head.predicate;
    schema.params = head.terms;
    std::set<std::string> distinct;
    for (const auto& p : schema.params) {
      if (!is_variable_name(p))
        throw ParseError("schema parameter '" + p + "' is not a variable",
                         head_line);
      if (!distinct.insert(p).second)
        throw ParseError("duplicate schema parameter '" + p + "'", head_line);
    }
    ++i;

    auto read_sub = [&](const std::string& header) {
      if (i >= lines.size() || lines[i].text != "  " + header + ":")
        throw ParseError("expected schema section '" + header + ":'",
                         i < lines.size() ? lines[i].number
                                          : lines.back().number);
      ++i;
      std::vector<Atom> atoms;
      while (i < lines.size() && lines[i].text.rfind("    ", 0) == 0) {
        Atom atom = parse_model_atom(lines[i].text.substr(4), lines[i].number,
                                     /*vars=*/true);
        for (const auto& term : atom.terms)
          if (is_variable_term(term) && !distinct.count(term))
            throw ParseError("variable '" + term + "' is not a parameter of " +
                                 schema.name,
                             lines[i].number);
        atoms.push_back(std::move(atom));
        ++i;
      }
      return atoms;
    };
    auto as_set = [](std::vector<Atom> v) {
      return std::set<Atom>(v.begin(), v.end());
    };
    schema.preconditions = as_set(read_sub("pre"));
    schema.pos_effects = as_set(read_sub("add"));
    schema.neg_effects = as_set(read_sub("del"));
    schema.validity = read_sub("valid");
    model.schemas.push_back(std::move(schema));
  }

  expect_header(lines, i, "must_precede");
  while (i < lines.size() && lines[i].text.rfind("  ", 0) == 0) {
    const std::string body = lines[i].text.substr(2);
    size_t sep = body.find(" -> ");
    if (sep == std::string::npos)
      throw ParseError("expected '<atom> -> <atom>'", lines[i].number);
    Atom p1 = parse_model_atom(body.substr(0, sep), lines[i].number, false);
    Atom p2 = parse_model_atom(body.substr(sep + 4), lines[i].number, false);
    model.precedence.must_precede.insert({std::move(p1), std::move(p2)});
    ++i;
  }
  expect_header(lines, i, "mandatory");
  model.precedence.mandatory = read_atom_section(lines, i, false);

  if (i < lines.size())
    throw ParseError("unexpected content after mandatory section",
                     lines[i].number);
  return model;
}

LearnedModel parse_model(const std::string& text) {
  std::istringstream in(text);
  return parse_model(in);
}

std::set<std::string> model_constants(const LearnedModel& model) {
  std::set<std::string> constants;
  auto take_atom = [&](const Atom& atom) {
    for (const auto& term : atom.terms)
      if (!is_variable_term(term)) constants.insert(term);
  };
  for (const Atom& atom : model.vocabulary.statics) take_atom(atom);
  for (const Atom& atom : model.vocabulary.fluents) take_atom(atom);
  for (const Atom& atom : model.goals.goal) take_atom(atom);
  for (const GroundAction& action : model.vocabulary.actions)
    for (const auto& arg : action.args) constants.insert(arg);
  return constants;
}

std::set<Atom> goal_necessity_suspects(const LearnedModel& model) {
  std::set<Atom> suspects;
  std::vector<GroundedAction> grounded = ground_actions(
      model.schemas, model_constants(model), model.vocabulary.statics);
  for (const GroundedAction& ga : grounded) {
    bool achieves_goal = false;
    for (const Atom& p : ga.add)
      if (model.goals.desired(p)) {
        achieves_goal = true;
        break;
      }
    if (!achieves_goal) continue;
    for (const Atom& p : ga.preconditions)
      if (model.goals.desired(p)) suspects.insert(p);
  }
  return suspects;
}

}  // namespace tracelearn

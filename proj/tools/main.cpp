// Command line front end: generate the blocks corpus, learn a model from a
// trace directory, explain a trace against a model, plan from an initial
// state, or run the whole demonstration pipeline.
//
// Exit codes: 0 success, 1 malformed input, 2 I/O failure, 3 no plan found.

#include <CLI11.hpp>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "tracelearn/blocksworld.hpp"
#include "tracelearn/explain.hpp"
#include "tracelearn/io.hpp"
#include "tracelearn/model.hpp"
#include "tracelearn/planner.hpp"
#include "tracelearn/trace.hpp"

namespace fs = std::filesystem;
using namespace tracelearn;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInput = 1;
constexpr int kExitIo = 2;
constexpr int kExitNoPlan = 3;

void print_diagnostics(const Diagnostics& diag) {
  for (const auto& message : diag.messages)
    std::cerr << "warning: " << message << '\n';
}

std::vector<fs::path> trace_files(const fs::path& dir) {
  std::vector<fs::path> paths;
  for (const auto& entry : fs::directory_iterator(dir))
    if (entry.is_regular_file() && entry.path().extension() == ".trace")
      paths.push_back(entry.path());
  std::sort(paths.begin(), paths.end());
  return paths;
}

LearnedModel load_model(const fs::path& path) {
  std::istringstream in(read_file(path));
  try {
    return parse_model(in);
  } catch (const ParseError& e) {
    throw std::runtime_error(path.string() + ": " + e.what());
  }
}

BehavioralInstance load_trace(const fs::path& path) {
  std::istringstream in(read_file(path));
  try {
    return parse_trace(in);
  } catch (const ParseError& e) {
    throw std::runtime_error(path.string() + ": " + e.what());
  }
}

LearnedModel learn_from_dir(const fs::path& dir, const std::string& class_name,
                            Corpus* corpus_out = nullptr) {
  std::vector<fs::path> paths = trace_files(dir);
  if (paths.empty())
    throw std::runtime_error("empty corpus: no .trace files in " +
                             dir.string());
  Corpus corpus = load_corpus(paths, class_name);
  Diagnostics diag;
  LearnedModel model = learn_model(corpus, &diag);
  print_diagnostics(diag);
  if (corpus_out) *corpus_out = std::move(corpus);
  return model;
}

// Checks the trace only uses actions the model has schemas for.
void check_coverage(const LearnedModel& model,
                    const BehavioralInstance& instance) {
  for (const GroundAction& action : instance.actions)
    if (!find_schema(model.schemas, action))
      throw std::runtime_error("model has no schema for action " +
                               action.str() + " in instance " + instance.id);
}

std::string render_explanation(const LearnedModel& model,
                               const BehavioralInstance& instance) {
  check_coverage(model, instance);
  Explanation ex = explain_trace(instance, model.schemas, model.goals);
  for (const auto& fact : ex.achieved)
    if (fact.relevant.empty())
      std::cerr << "warning: unexplained action " << fact.action.str()
                << " at state " << fact.state_id << " of " << instance.id
                << " (no relevant effects)\n";
  return ex.render();
}

PlanningProblem make_problem(const LearnedModel& model,
                             const std::set<Atom>& initial, int max_steps) {
  PlanningProblem problem;
  problem.statics = model.vocabulary.statics;
  std::set_difference(
      initial.begin(), initial.end(), problem.statics.begin(),
      problem.statics.end(),
      std::inserter(problem.initial, problem.initial.begin()));
  problem.goal = model.goals.goal;
  problem.schemas = model.schemas;
  problem.objects = model_constants(model);
  for (const Atom& atom : initial)
    for (const auto& term : atom.terms) problem.objects.insert(term);
  problem.max_plan_length = max_steps;
  return problem;
}

int cmd_generate(const fs::path& out_dir, bool inject_gpp) {
  if (!inject_gpp) {
    blocksworld::generate_corpus(out_dir);
    return kExitOk;
  }
  fs::create_directories(out_dir);
  Corpus injected =
      blocksworld::inject_goal_preceding_prop(blocksworld::build_corpus());
  for (const auto& instance : injected.instances)
    write_file_atomic(out_dir / (instance.id + ".trace"),
                      serialize_trace(instance));
  return kExitOk;
}

int cmd_learn(const fs::path& trace_dir, const fs::path& out,
              std::string class_name) {
  if (class_name.empty())
    class_name = trace_dir.filename().empty()
                     ? trace_dir.parent_path().filename().string()
                     : trace_dir.filename().string();
  LearnedModel model = learn_from_dir(trace_dir, class_name);
  write_file_atomic(out, serialize_model(model));
  return kExitOk;
}

int cmd_explain(const fs::path& model_path, const fs::path& trace_path,
                const fs::path& out) {
  LearnedModel model = load_model(model_path);
  BehavioralInstance instance = load_trace(trace_path);
  std::string report = render_explanation(model, instance);
  if (out.empty())
    std::cout << report;
  else
    write_file_atomic(out, report);
  return kExitOk;
}

int cmd_plan(const fs::path& model_path, const fs::path& state_path,
             const fs::path& out, int max_steps) {
  LearnedModel model = load_model(model_path);
  std::set<Atom> initial;
  {
    std::istringstream in(read_file(state_path));
    try {
      initial = parse_state_block(in);
    } catch (const ParseError& e) {
      throw std::runtime_error(state_path.string() + ": " + e.what());
    }
  }
  std::optional<Plan> result = plan(make_problem(model, initial, max_steps));
  if (!result) {
    std::cerr << "no plan within " << max_steps << " steps\n";
    return kExitNoPlan;
  }
  std::string text = serialize_plan(*result);
  std::cout << text;
  if (!out.empty()) write_file_atomic(out, text);
  return kExitOk;
}

int cmd_pipeline(const fs::path& out_dir) {
  fs::create_directories(out_dir);
  const fs::path traces_dir = out_dir / "traces";
  const fs::path gpp_dir = out_dir / "traces_gpp";
  cmd_generate(traces_dir, false);
  cmd_generate(gpp_dir, true);

  Diagnostics diag;
  Corpus corpus = load_corpus(trace_files(traces_dir), "blocks");
  LearnedModel model = learn_model(corpus, &diag);
  write_file_atomic(out_dir / "blocks.model", serialize_model(model));

  Diagnostics gpp_diag;
  Corpus gpp_corpus = load_corpus(trace_files(gpp_dir), "blocks");
  LearnedModel gpp_model = learn_model(gpp_corpus, &gpp_diag);
  write_file_atomic(out_dir / "blocks_gpp.model", serialize_model(gpp_model));
  print_diagnostics(diag);
  print_diagnostics(gpp_diag);

  const fs::path explain_dir = out_dir / "explanations";
  fs::create_directories(explain_dir);
  for (const auto& instance : corpus.instances) {
    Explanation ex = explain_trace(instance, model.schemas, model.goals);
    write_file_atomic(explain_dir / (instance.id + ".explain"), ex.render());
  }

  const fs::path plans_dir = out_dir / "plans";
  fs::create_directories(plans_dir);
  int improved = 0;
  int planned_total = 0;
  int executed_total = 0;
  std::string showcase_id;
  const std::set<Atom> showcase_start{Atom{"on", {"a", "c"}},
                                      Atom{"on", {"b", "p1"}},
                                      Atom{"on", {"c", "p3"}}};
  for (const auto& instance : corpus.instances) {
    std::optional<Plan> result =
        plan(make_problem(model, instance.states.front().props, 20));
    if (!result)
      throw std::runtime_error("no plan for instance " + instance.id);
    write_file_atomic(plans_dir / (instance.id + ".plan"),
                      serialize_plan(*result));
    planned_total += result->length();
    executed_total += instance.step_count();
    if (result->length() < instance.step_count()) ++improved;
    bool is_showcase = true;
    for (const Atom& atom : showcase_start)
      if (!instance.states.front().props.count(atom)) is_showcase = false;
    if (is_showcase) showcase_id = instance.id;
  }

  std::ostringstream summary;
  summary << "behavior class: " << corpus.class_name << " ("
          << corpus.instances.size() << " instances, traces/)\n\n";
  summary << "vocabulary: " << model.vocabulary.statics.size()
          << " static atoms, " << model.vocabulary.fluents.size()
          << " fluent atoms, " << model.vocabulary.actions.size()
          << " distinct observed actions\n\n";
  summary << "goal:\n";
  std::set<Atom> suspects = goal_necessity_suspects(model);
  for (const Atom& atom : model.goals.goal) {
    summary << "  " << atom.str();
    if (suspects.count(atom))
      summary << "  (also feeds goal-achieving actions; may be a necessity "
                 "rather than a desire)";
    summary << '\n';
  }
  summary << "\nlearned schemas:\n";
  for (const auto& schema : model.schemas) {
    summary << "  " << schema.name << "(";
    for (size_t i = 0; i < schema.params.size(); ++i)
      summary << (i ? "," : "") << schema.params[i];
    summary << ")\n";
    summary << "    pre:   " << atom_set_str(schema.preconditions) << '\n';
    summary << "    add:   " << atom_set_str(schema.pos_effects) << '\n';
    summary << "    del:   " << atom_set_str(schema.neg_effects) << '\n';
    summary << "    valid: {";
    for (size_t i = 0; i < schema.validity.size(); ++i)
      summary << (i ? ", " : "") << schema.validity[i].str();
    summary << "}\n";
  }
  summary << "\nmust_precede:\n";
  for (const auto& [p1, p2] : model.precedence.must_precede)
    summary << "  " << p1.str() << " -> " << p2.str() << '\n';
  summary << "\nmandatory (clean corpus): "
          << atom_set_str(model.precedence.mandatory) << '\n';
  summary << "mandatory (injected corpus traces_gpp/): "
          << atom_set_str(gpp_model.precedence.mandatory) << '\n';
  if (!showcase_id.empty()) {
    summary << "\nexample explanation (" << showcase_id << "):\n";
    std::istringstream body(
        read_file(explain_dir / (showcase_id + ".explain")));
    std::string line;
    while (std::getline(body, line)) summary << "  " << line << '\n';
  }
  summary << "\nplanning vs observed behavior: all "
          << corpus.instances.size() << " configurations solved; plans total "
          << planned_total << " steps vs " << executed_total
          << " executed; strictly shorter on " << improved
          << " configuration(s)\n";
  write_file_atomic(out_dir / "summary.txt", summary.str());
  std::cout << "pipeline artifacts written to " << out_dir.string() << '\n';
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"learn goals, action models, precedence constraints and "
               "explanations from behavior traces"};
  app.require_subcommand(1);

  auto* generate = app.add_subcommand(
      "generate", "write the 120-configuration blocks corpus");
  std::string gen_out;
  bool inject_gpp = false;
  generate->add_option("--out", gen_out, "output directory")->required();
  generate->add_flag("--inject-gpp", inject_gpp,
                     "emit the variant with goal_preceding_prop injected");

  auto* learn = app.add_subcommand("learn", "learn a model from traces");
  std::string learn_dir, learn_out, learn_class;
  learn->add_option("trace_dir", learn_dir, "directory of .trace files")
      ->required();
  learn->add_option("-o,--out", learn_out, "model file to write")->required();
  learn->add_option("--class", learn_class, "behavior class name");

  auto* explain =
      app.add_subcommand("explain", "explain one trace against a model");
  std::string explain_model, explain_trace_path, explain_out;
  explain->add_option("model", explain_model, "model file")->required();
  explain->add_option("trace", explain_trace_path, "trace file")->required();
  explain->add_option("-o,--out", explain_out,
                      "report file (defaults to stdout)");

  auto* plan_cmd =
      app.add_subcommand("plan", "find a shortest plan to the learned goal");
  std::string plan_model, plan_state, plan_out;
  int plan_max_steps = 20;
  plan_cmd->add_option("model", plan_model, "model file")->required();
  plan_cmd->add_option("state", plan_state, "initial state file")->required();
  plan_cmd->add_option("-o,--out", plan_out, "plan file (stdout always)");
  plan_cmd->add_option("--max-steps", plan_max_steps, "search bound");

  auto* pipeline = app.add_subcommand(
      "pipeline", "generate, learn, explain and plan in one run");
  std::string pipeline_out;
  pipeline->add_option("--out", pipeline_out, "output directory")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (generate->parsed()) return cmd_generate(gen_out, inject_gpp);
    if (learn->parsed()) return cmd_learn(learn_dir, learn_out, learn_class);
    if (explain->parsed())
      return cmd_explain(explain_model, explain_trace_path, explain_out);
    if (plan_cmd->parsed())
      return cmd_plan(plan_model, plan_state, plan_out, plan_max_steps);
    if (pipeline->parsed()) return cmd_pipeline(pipeline_out);
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitIo;
  } catch (const fs::filesystem_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitIo;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInput;
  }
  return kExitOk;
}

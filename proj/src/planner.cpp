#include "tracelearn/planner.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <sstream>
#include <stdexcept>

namespace tracelearn {

namespace {

bool subset(const std::set<Atom>& small, const std::set<Atom>& big) {
  return std::includes(big.begin(), big.end(), small.begin(), small.end());
}

bool validity_holds(const ActionSchema& schema,
                    const std::vector<std::string>& args,
                    const std::set<Atom>& statics) {
  for (const Atom& atom : schema.validity) {
    Atom fact = ground_atom(atom, schema.params, args);
    if (atom.predicate == kNeqPredicate) {
      if (fact.terms.size() != 2 || fact.terms[0] == fact.terms[1])
        return false;
    } else if (!statics.count(fact)) {
      return false;
    }
  }
  return true;
}

}  // namespace

std::vector<GroundedAction> ground_actions(
    const std::vector<ActionSchema>& schemas,
    const std::set<std::string>& objects, const std::set<Atom>& statics) {
  std::vector<std::string> pool(objects.begin(), objects.end());
  std::vector<GroundedAction> grounded;
  for (const ActionSchema& schema : schemas) {
    std::vector<std::string> args(schema.params.size());
    auto rec = [&](auto&& self, size_t depth) -> void {
      if (depth == args.size()) {
        if (!validity_holds(schema, args, statics)) return;
        GroundedAction ga;
        ga.action = GroundAction{schema.name, args};
        ga.preconditions = ground_atoms(schema.preconditions, schema.params, args);
        ga.add = ground_atoms(schema.pos_effects, schema.params, args);
        ga.del = ground_atoms(schema.neg_effects, schema.params, args);
        grounded.push_back(std::move(ga));
        return;
      }
      for (const std::string& obj : pool) {
        args[depth] = obj;
        self(self, depth + 1);
      }
    };
    rec(rec, 0);
  }
  std::sort(grounded.begin(), grounded.end(),
            [](const GroundedAction& a, const GroundedAction& b) {
              return a.action < b.action;
            });
  return grounded;
}

std::set<Atom> apply(const std::set<Atom>& state, const GroundedAction& action) {
  if (!subset(action.preconditions, state))
    throw std::runtime_error("action " + action.action.str() +
                             " is not applicable in the given state");
  std::set<Atom> next;
  std::set_difference(state.begin(), state.end(), action.del.begin(),
                      action.del.end(), std::inserter(next, next.begin()));
  next.insert(action.add.begin(), action.add.end());
  return next;
}

std::optional<Plan> plan(const PlanningProblem& problem) {
  std::set<Atom> initial;
  std::set_difference(problem.initial.begin(), problem.initial.end(),
                      problem.statics.begin(), problem.statics.end(),
                      std::inserter(initial, initial.begin()));
  if (subset(problem.goal, initial)) return Plan{};

  const std::vector<GroundedAction> grounded =
      ground_actions(problem.schemas, problem.objects, problem.statics);

  struct Node {
    std::set<Atom> state;
    int parent;
    int action;
    int depth;
  };
  std::vector<Node> nodes;
  nodes.push_back({initial, -1, -1, 0});
  std::set<std::set<Atom>> visited{initial};
  std::deque<int> frontier{0};

  auto reconstruct = [&](int idx) {
    Plan plan;
    for (int at = idx; nodes[at].parent >= 0; at = nodes[at].parent)
      plan.steps.push_back(grounded[nodes[at].action].action);
    std::reverse(plan.steps.begin(), plan.steps.end());
    return plan;
  };

  while (!frontier.empty()) {
    int idx = frontier.front();
    frontier.pop_front();
    if (nodes[idx].depth >= problem.max_plan_length) continue;
    for (size_t a = 0; a < grounded.size(); ++a) {
      if (!subset(grounded[a].preconditions, nodes[idx].state)) continue;
      std::set<Atom> succ = tracelearn::apply(nodes[idx].state, grounded[a]);
      if (!visited.insert(succ).second) continue;
      nodes.push_back({std::move(succ), idx, static_cast<int>(a),
                       nodes[idx].depth + 1});
      int child = static_cast<int>(nodes.size()) - 1;
      if (subset(problem.goal, nodes[child].state)) return reconstruct(child);
      frontier.push_back(child);
    }
  }
  return std::nullopt;
}

std::string serialize_plan(const Plan& plan) {
  std::ostringstream os;
  for (const GroundAction& step : plan.steps)
    os << "action " << step.str() << '\n';
  os << "length " << plan.steps.size() << '\n';
  return os.str();
}

}  // namespace tracelearn

#include "tracelearn/precedence.hpp"

#include <stdexcept>

namespace tracelearn {

namespace {

std::vector<std::set<Atom>> step_preconditions(
    const BehavioralInstance& instance,
    const std::vector<ActionSchema>& schemas) {
  std::vector<std::set<Atom>> pre;
  pre.reserve(instance.actions.size());
  for (const auto& action : instance.actions) {
    const ActionSchema* schema = find_schema(schemas, action);
    if (!schema)
      throw std::runtime_error("no schema for action " + action.str() +
                               " in instance " + instance.id);
    pre.push_back(schema->ground_preconditions(action));
  }
  return pre;
}

PrecedenceKind evaluate(const BehavioralInstance& instance,
                        const std::vector<std::set<Atom>>& step_pre,
                        const Atom& p1, const Atom& p2) {
  const int n = static_cast<int>(instance.states.size());
  // Actual precedence: p1 holds at s1, p2 newly holds at some later s2, and
  // p1 is not a ground precondition of any action executed on the way (a
  // consumed p1 would make this causal enablement, not precedence).
  for (int s1 = 0; s1 < n; ++s1) {
    if (!instance.states[s1].props.count(p1)) continue;
    // p2 must be absent at s1 so that it is newly achieved at s2.
    if (instance.states[s1].props.count(p2)) continue;
    for (int s2 = s1 + 1; s2 < n; ++s2) {
      if (!instance.states[s2].props.count(p2)) continue;
      bool consumed = false;
      for (int k = s1; k < s2; ++k) {
        if (step_pre[k].count(p1)) {
          consumed = true;
          break;
        }
      }
      if (!consumed) return PrecedenceKind::Actual;
    }
  }
  if (instance.states.front().props.count(p1) &&
      instance.states.front().props.count(p2))
    return PrecedenceKind::InitialOnly;
  return PrecedenceKind::None;
}

}  // namespace

PrecedenceKind precedes_in_instance(const BehavioralInstance& instance,
                                    const Atom& p1, const Atom& p2,
                                    const std::vector<ActionSchema>& schemas) {
  return evaluate(instance, step_preconditions(instance, schemas), p1, p2);
}

std::set<std::pair<Atom, Atom>> must_precede(
    const Corpus& corpus, const std::vector<ActionSchema>& schemas,
    const std::set<Atom>& fluents) {
  struct Context {
    const BehavioralInstance* instance;
    std::set<Atom> occurs;
    std::vector<std::set<Atom>> step_pre;
  };
  std::vector<Context> contexts;
  contexts.reserve(corpus.instances.size());
  for (const auto& instance : corpus.instances) {
    Context ctx;
    ctx.instance = &instance;
    for (const auto& state : instance.states)
      ctx.occurs.insert(state.props.begin(), state.props.end());
    ctx.step_pre = step_preconditions(instance, schemas);
    contexts.push_back(std::move(ctx));
  }

  std::set<std::pair<Atom, Atom>> result;
  for (const Atom& p1 : fluents) {
    for (const Atom& p2 : fluents) {
      if (p1 == p2) continue;
      bool holds_everywhere = true;
      bool any_actual = false;
      for (const auto& ctx : contexts) {
        const bool occ1 = ctx.occurs.count(p1) > 0;
        const bool occ2 = ctx.occurs.count(p2) > 0;
        // An instance that brings p2 about from scratch without p1 ever
        // holding is a counterexample: the class achieves p2 independently
        // of p1, so no class-wide precedence can be claimed.
        if (!occ1 && occ2 &&
            !ctx.instance->states.front().props.count(p2)) {
          holds_everywhere = false;
          break;
        }
        if (!occ1 || !occ2)
          continue;  // otherwise instances lacking either atom are discarded
        PrecedenceKind kind = evaluate(*ctx.instance, ctx.step_pre, p1, p2);
        if (kind == PrecedenceKind::None) {
          holds_everywhere = false;
          break;
        }
        if (kind == PrecedenceKind::Actual) any_actual = true;
      }
      if (holds_everywhere && any_actual) result.insert({p1, p2});
    }
  }
  return result;
}

std::set<Atom> mandatory(const std::set<std::pair<Atom, Atom>>& must_precede,
                         const GoalModel& goals) {
  std::set<Atom> result;
  for (const auto& [p1, p2] : must_precede)
    if (!goals.desired(p1)) result.insert(p1);
  return result;
}

}  // namespace tracelearn

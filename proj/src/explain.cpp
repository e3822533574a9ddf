#include "tracelearn/explain.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <stdexcept>

namespace tracelearn {

namespace {

const ActionSchema& schema_for(const std::vector<ActionSchema>& schemas,
                               const GroundAction& action,
                               const std::string& instance_id) {
  const ActionSchema* schema = find_schema(schemas, action);
  if (!schema)
    throw std::runtime_error("no schema for action " + action.str() +
                             " in instance " + instance_id);
  return *schema;
}

}  // namespace

std::vector<ContributedFact> contributed(
    const BehavioralInstance& instance,
    const std::vector<ActionSchema>& schemas) {
  std::vector<ContributedFact> facts;
  for (int s = 0; s < instance.step_count(); ++s) {
    const GroundAction& action = instance.actions[s];
    std::set<Atom> pre = schema_for(schemas, action, instance.id)
                             .ground_preconditions(action);
    for (const Atom& p : instance.states[s].props)
      if (pre.count(p)) facts.push_back({s, p, action});
  }
  return facts;
}

bool path_true(const BehavioralInstance& instance, int s_i, int s_j,
               const Atom& p) {
  if (s_i < 0 || s_j >= static_cast<int>(instance.states.size()) || s_i > s_j)
    throw std::out_of_range("path_true range [" + std::to_string(s_i) + "," +
                            std::to_string(s_j) + "] invalid for instance " +
                            instance.id);
  for (int s = s_i; s <= s_j; ++s)
    if (!instance.states[s].props.count(p)) return false;
  return true;
}

std::set<Atom> relevant_effects(const BehavioralInstance& instance,
                                int state_id,
                                const std::vector<ActionSchema>& schemas,
                                const GoalModel& goals,
                                const std::vector<ContributedFact>& facts) {
  if (state_id < 0 || state_id >= instance.step_count())
    throw std::out_of_range("no action at state " + std::to_string(state_id) +
                            " in instance " + instance.id);
  std::set<std::pair<int, Atom>> consumed;
  for (const auto& fact : facts) consumed.insert({fact.state_id, fact.prop});

  const GroundAction& action = instance.actions[state_id];
  std::set<Atom> produced = schema_for(schemas, action, instance.id)
                                .ground_pos_effects(action);
  std::set<Atom> relevant;
  const int last = static_cast<int>(instance.states.size()) - 1;
  for (const Atom& p : produced) {
    if (goals.desired(p)) {
      relevant.insert(p);
      continue;
    }
    // Scan forward along the span where p stays true; the first consuming
    // action on that span makes p relevant.
    for (int t = state_id + 1;
         t <= last && instance.states[t].props.count(p); ++t) {
      if (consumed.count({t, p})) {
        relevant.insert(p);
        break;
      }
    }
  }
  return relevant;
}

Explanation explain_trace(const BehavioralInstance& instance,
                          const std::vector<ActionSchema>& schemas,
                          const GoalModel& goals) {
  Explanation ex;
  ex.instance_id = instance.id;
  ex.contributed = contributed(instance, schemas);

  std::map<std::pair<int, Atom>, GroundAction> consumer;
  for (const auto& fact : ex.contributed)
    consumer.emplace(std::make_pair(fact.state_id, fact.prop), fact.action);

  const int last = static_cast<int>(instance.states.size()) - 1;
  for (int s = 0; s < instance.step_count(); ++s) {
    const GroundAction& action = instance.actions[s];
    std::set<Atom> relevant =
        relevant_effects(instance, s, schemas, goals, ex.contributed);
    std::vector<Justification> justs;
    for (const Atom& p : relevant) {
      Justification j;
      j.prop = p;
      if (goals.desired(p)) {
        j.is_goal = true;
      } else {
        for (int t = s + 1; t <= last && instance.states[t].props.count(p);
             ++t) {
          auto it = consumer.find({t, p});
          if (it != consumer.end()) {
            j.consumer_state = t;
            j.consumer_action = it->second;
            break;
          }
        }
      }
      justs.push_back(std::move(j));
    }
    ex.achieved.push_back({s, action, std::move(relevant)});
    ex.justifications.push_back(std::move(justs));
  }
  return ex;
}

std::string Explanation::render() const {
  struct Entry {
    int state_id;
    std::string text;
    std::vector<std::string> sublines;
  };
  std::vector<Entry> entries;
  for (const auto& fact : contributed) {
    std::ostringstream os;
    os << "contributed(" << fact.state_id << ", " << fact.prop.str() << ", "
       << fact.action.str() << ")";
    entries.push_back({fact.state_id, os.str(), {}});
  }
  for (size_t i = 0; i < achieved.size(); ++i) {
    const auto& fact = achieved[i];
    std::ostringstream os;
    os << "achieved(" << fact.state_id << ", " << fact.action.str() << ", "
       << atom_set_str(fact.relevant) << ")";
    Entry entry{fact.state_id, os.str(), {}};
    for (const auto& j : justifications[i]) {
      std::ostringstream sub;
      sub << "  " << j.prop.str() << ": ";
      if (j.is_goal)
        sub << "goal";
      else
        sub << "precondition of " << j.consumer_action.str() << " at state "
            << j.consumer_state;
      entry.sublines.push_back(sub.str());
    }
    entries.push_back(std::move(entry));
  }
  std::sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) {
    if (a.state_id != b.state_id) return a.state_id < b.state_id;
    return a.text < b.text;
  });
  std::ostringstream os;
  for (const auto& entry : entries) {
    os << entry.text << '\n';
    for (const auto& sub : entry.sublines) os << sub << '\n';
  }
  return os.str();
}

}  // namespace tracelearn

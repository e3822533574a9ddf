#include "tracelearn/action_model.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace tracelearn {

namespace {

std::set<Atom> set_intersection(const std::set<Atom>& a,
                                const std::set<Atom>& b) {
  std::set<Atom> out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(),
                        std::inserter(out, out.begin()));
  return out;
}

std::set<Atom> set_difference(const std::set<Atom>& a,
                              const std::set<Atom>& b) {
  std::set<Atom> out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(),
                      std::inserter(out, out.begin()));
  return out;
}

std::vector<Occurrence> usable_occurrences(
    const std::vector<Occurrence>& occurrences, Diagnostics* diag) {
  std::vector<Occurrence> usable;
  int skipped = 0;
  for (const auto& occ : occurrences) {
    if (args_distinct(occ.action)) {
      usable.push_back(occ);
    } else {
      ++skipped;
      warn(diag, "ambiguous lift: occurrence of " + occ.action.str() + " at " +
                     occ.instance_id + "/state " +
                     std::to_string(occ.state_id) +
                     " repeats an argument constant; occurrence skipped");
    }
  }
  (void)skipped;
  return usable;
}

std::string schema_label(const std::vector<Occurrence>& occurrences) {
  if (occurrences.empty()) return "<unknown>";
  return occurrences.front().action.name + "/" +
         std::to_string(occurrences.front().action.arity());
}

}  // namespace

std::map<SchemaKey, std::vector<Occurrence>> collect_occurrences(
    const Corpus& corpus) {
  std::map<SchemaKey, std::vector<Occurrence>> occurrences;
  for (const auto& instance : corpus.instances) {
    for (int s = 0; s < instance.step_count(); ++s) {
      const GroundAction& action = instance.actions[s];
      Occurrence occ;
      occ.instance_id = instance.id;
      occ.state_id = s;
      occ.action = action;
      occ.pre_props = instance.states[s].props;
      occ.post_props = instance.states[s + 1].props;
      occurrences[{action.name, action.arity()}].push_back(std::move(occ));
    }
  }
  return occurrences;
}

std::vector<std::string> schema_params(int arity) {
  std::vector<std::string> params;
  params.reserve(arity);
  for (int i = 1; i <= arity; ++i) params.push_back("V" + std::to_string(i));
  return params;
}

bool args_distinct(const GroundAction& action) {
  for (size_t i = 0; i < action.args.size(); ++i)
    for (size_t j = i + 1; j < action.args.size(); ++j)
      if (action.args[i] == action.args[j]) return false;
  return true;
}

std::optional<Atom> lift(const Atom& atom, const GroundAction& action,
                         const std::vector<std::string>& params) {
  Atom lifted;
  lifted.predicate = atom.predicate;
  lifted.terms.reserve(atom.terms.size());
  for (const auto& term : atom.terms) {
    auto it = std::find(action.args.begin(), action.args.end(), term);
    if (it == action.args.end()) return std::nullopt;
    lifted.terms.push_back(params[it - action.args.begin()]);
  }
  return lifted;
}

Atom ground_atom(const Atom& lifted, const std::vector<std::string>& params,
                 const std::vector<std::string>& args) {
  Atom ground;
  ground.predicate = lifted.predicate;
  ground.terms.reserve(lifted.terms.size());
  for (const auto& term : lifted.terms) {
    auto it = std::find(params.begin(), params.end(), term);
    ground.terms.push_back(it == params.end() ? term
                                              : args[it - params.begin()]);
  }
  return ground;
}

std::set<Atom> ground_atoms(const std::set<Atom>& lifted,
                            const std::vector<std::string>& params,
                            const std::vector<std::string>& args) {
  std::set<Atom> out;
  for (const auto& atom : lifted) out.insert(ground_atom(atom, params, args));
  return out;
}

std::set<Atom> ActionSchema::ground_preconditions(
    const GroundAction& action) const {
  return ground_atoms(preconditions, params, action.args);
}

std::set<Atom> ActionSchema::ground_pos_effects(
    const GroundAction& action) const {
  return ground_atoms(pos_effects, params, action.args);
}

std::set<Atom> ActionSchema::ground_neg_effects(
    const GroundAction& action) const {
  return ground_atoms(neg_effects, params, action.args);
}

std::set<Atom> learn_preconditions(const std::vector<Occurrence>& occurrences,
                                   const std::set<Atom>& fluents,
                                   Diagnostics* diag) {
  std::vector<Occurrence> usable = usable_occurrences(occurrences, diag);
  if (usable.empty())
    throw std::runtime_error("zero usable occurrences for schema " +
                             schema_label(occurrences));
  std::vector<std::string> params =
      schema_params(usable.front().action.arity());
  std::set<Atom> preconditions;
  bool first = true;
  for (const auto& occ : usable) {
    std::set<Atom> contribution;
    for (const auto& atom : occ.pre_props) {
      if (!fluents.count(atom)) continue;
      if (auto lifted = lift(atom, occ.action, params))
        contribution.insert(*lifted);
    }
    preconditions = first ? std::move(contribution)
                          : set_intersection(preconditions, contribution);
    first = false;
    if (preconditions.empty()) break;
  }
  return preconditions;
}

std::pair<std::set<Atom>, std::set<Atom>> learn_effects(
    const std::vector<Occurrence>& occurrences, Diagnostics* diag) {
  std::vector<Occurrence> usable = usable_occurrences(occurrences, diag);
  if (usable.empty())
    throw std::runtime_error("zero usable occurrences for schema " +
                             schema_label(occurrences));
  std::vector<std::string> params =
      schema_params(usable.front().action.arity());

  std::set<Atom> dropped;  // ground effect atoms naming non-argument constants
  auto lift_diff = [&](const std::set<Atom>& diff, const GroundAction& action) {
    std::set<Atom> lifted;
    for (const auto& atom : diff) {
      if (auto l = lift(atom, action, params))
        lifted.insert(*l);
      else
        dropped.insert(atom);
    }
    return lifted;
  };

  std::vector<std::set<Atom>> pos_diffs, neg_diffs;
  pos_diffs.reserve(usable.size());
  neg_diffs.reserve(usable.size());
  for (const auto& occ : usable) {
    pos_diffs.push_back(
        lift_diff(set_difference(occ.post_props, occ.pre_props), occ.action));
    neg_diffs.push_back(
        lift_diff(set_difference(occ.pre_props, occ.post_props), occ.action));
  }

  std::set<Atom> pos = pos_diffs.front();
  std::set<Atom> neg = neg_diffs.front();
  for (size_t i = 1; i < usable.size(); ++i) {
    pos = set_intersection(pos, pos_diffs[i]);
    neg = set_intersection(neg, neg_diffs[i]);
  }

  if (diag) {
    const std::string label = schema_label(occurrences);
    if (!dropped.empty())
      diag->warn("effects of " + label + ": dropped " +
                 std::to_string(dropped.size()) +
                 " ungeneralizable effect atom(s) naming non-argument "
                 "constants: " +
                 atom_set_str(dropped));
    auto report_deviation = [&](const std::vector<std::set<Atom>>& diffs,
                                const std::set<Atom>& common,
                                const char* side) {
      std::set<Atom> extras;
      int deviating = 0;
      for (const auto& diff : diffs) {
        std::set<Atom> extra = set_difference(diff, common);
        if (!extra.empty()) {
          ++deviating;
          extras.insert(extra.begin(), extra.end());
        }
      }
      if (deviating > 0)
        diag->warn("effects of " + label + " look non-deterministic: " +
                   std::to_string(deviating) + " occurrence(s) show extra " +
                   side + " effects " + atom_set_str(extras) +
                   " beyond the common set");
    };
    report_deviation(pos_diffs, pos, "positive");
    report_deviation(neg_diffs, neg, "negative");
  }
  return {std::move(pos), std::move(neg)};
}

std::vector<Atom> derive_inequalities(
    const std::vector<Occurrence>& occurrences, const std::set<Atom>& statics) {
  if (occurrences.empty()) return {};
  int arity = occurrences.front().action.arity();
  std::vector<std::string> params = schema_params(arity);
  std::vector<Atom> out;
  for (int i = 0; i < arity; ++i) {
    for (int j = i + 1; j < arity; ++j) {
      bool ever_equal = false;
      for (const auto& occ : occurrences) {
        Atom eq{kEqPredicate, {occ.action.args[i], occ.action.args[j]}};
        if (statics.count(eq)) {
          ever_equal = true;
          break;
        }
      }
      if (!ever_equal) out.push_back(Atom{kNeqPredicate, {params[i], params[j]}});
    }
  }
  return out;
}

std::vector<Atom> learn_validity_condition(
    const std::vector<Occurrence>& occurrences, const std::set<Atom>& statics) {
  if (occurrences.empty()) return {};
  int arity = occurrences.front().action.arity();
  std::vector<std::string> params = schema_params(arity);

  // Static predicates grouped by (name, arity) with extension sizes.
  std::map<SchemaKey, int> extensions;
  for (const auto& atom : statics) ++extensions[{atom.predicate, atom.arity()}];

  std::set<int> arities;
  for (const auto& [key, count] : extensions) arities.insert(key.second);

  struct Emitted {
    int arity;
    int extension;
    Atom atom;
  };
  std::vector<Emitted> emitted;

  // Ordered tuples of k distinct parameter indices, lexicographic.
  auto for_each_tuple = [&](int k, auto&& body) {
    std::vector<int> tuple;
    auto rec = [&](auto&& self) -> void {
      if (static_cast<int>(tuple.size()) == k) {
        body(tuple);
        return;
      }
      for (int i = 0; i < arity; ++i) {
        if (std::find(tuple.begin(), tuple.end(), i) != tuple.end()) continue;
        tuple.push_back(i);
        self(self);
        tuple.pop_back();
      }
    };
    rec(rec);
  };

  for (int k : arities) {
    if (k < 1 || k > arity) continue;
    // Candidate predicates of this arity, smallest extension first. Trying
    // narrow predicates before wide ones and keeping only the first match per
    // tuple avoids overgeneral conditions (e.g. a type that happens to hold
    // for every object).
    std::vector<std::pair<int, std::string>> candidates;
    for (const auto& [key, count] : extensions)
      if (key.second == k) candidates.push_back({count, key.first});
    std::sort(candidates.begin(), candidates.end());

    for_each_tuple(k, [&](const std::vector<int>& tuple) {
      for (const auto& [extension, predicate] : candidates) {
        bool covers = true;
        for (const auto& occ : occurrences) {
          Atom fact;
          fact.predicate = predicate;
          for (int idx : tuple) fact.terms.push_back(occ.action.args[idx]);
          if (!statics.count(fact)) {
            covers = false;
            break;
          }
        }
        if (covers) {
          Atom atom;
          atom.predicate = predicate;
          for (int idx : tuple) atom.terms.push_back(params[idx]);
          emitted.push_back({k, extension, std::move(atom)});
          break;  // one covering atom per tuple
        }
      }
    });
  }

  // Inequalities slot in with the equality sensor's extension.
  auto eq_ext = extensions.find({kEqPredicate, 2});
  int neq_extension = eq_ext == extensions.end() ? 0 : eq_ext->second;
  for (Atom& atom : derive_inequalities(occurrences, statics))
    emitted.push_back({2, neq_extension, std::move(atom)});

  std::stable_sort(emitted.begin(), emitted.end(),
                   [](const Emitted& a, const Emitted& b) {
                     if (a.arity != b.arity) return a.arity < b.arity;
                     if (a.extension != b.extension)
                       return a.extension < b.extension;
                     return a.atom < b.atom;
                   });
  std::vector<Atom> out;
  out.reserve(emitted.size());
  for (auto& e : emitted) out.push_back(std::move(e.atom));
  return out;
}

std::vector<ActionSchema> learn_action_schemas(const Corpus& corpus,
                                               const Vocabulary& vocab,
                                               Diagnostics* diag) {
  std::vector<ActionSchema> schemas;
  for (const auto& [key, occurrences] : collect_occurrences(corpus)) {
    std::vector<Occurrence> usable = usable_occurrences(occurrences, diag);
    if (usable.empty())
      throw std::runtime_error("zero usable occurrences for schema " +
                               key.first + "/" + std::to_string(key.second));
    ActionSchema schema;
    schema.name = key.first;
    schema.params = schema_params(key.second);
    schema.preconditions = learn_preconditions(usable, vocab.fluents, nullptr);
    auto [pos, neg] = learn_effects(usable, diag);
    schema.pos_effects = std::move(pos);
    schema.neg_effects = std::move(neg);
    schema.validity = learn_validity_condition(occurrences, vocab.statics);
    schemas.push_back(std::move(schema));
  }
  return schemas;
}

const ActionSchema* find_schema(const std::vector<ActionSchema>& schemas,
                                const GroundAction& action) {
  for (const auto& schema : schemas)
    if (schema.name == action.name && schema.arity() == action.arity())
      return &schema;
  return nullptr;
}

}  // namespace tracelearn

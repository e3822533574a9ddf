#pragma once
// Independent cross-checks for the library. Everything here recomputes its
// answer from first principles -- ground-truth blocks dynamics, direct
// definition evaluation, exhaustive search -- instead of calling the code
// under test, so agreement is meaningful.

#include <algorithm>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "tracelearn/action_model.hpp"
#include "tracelearn/explain.hpp"
#include "tracelearn/trace.hpp"
#include "tracelearn/vocabulary.hpp"

namespace oracles {

using tracelearn::ActionSchema;
using tracelearn::Atom;
using tracelearn::BehavioralInstance;
using tracelearn::Corpus;
using tracelearn::GroundAction;
using tracelearn::StateRecord;

// ---------------------------------------------------------------- grounding

inline Atom subst(const Atom& atom, const std::vector<std::string>& params,
                  const std::vector<std::string>& args) {
  Atom out{atom.predicate, {}};
  for (const auto& term : atom.terms) {
    auto it = std::find(params.begin(), params.end(), term);
    out.terms.push_back(it == params.end()
                            ? term
                            : args[static_cast<size_t>(it - params.begin())]);
  }
  return out;
}

inline std::set<Atom> ground(const std::set<Atom>& atoms,
                             const ActionSchema& schema,
                             const GroundAction& act) {
  std::set<Atom> out;
  for (const Atom& atom : atoms) out.insert(subst(atom, schema.params, act.args));
  return out;
}

inline const ActionSchema& schema_for(const std::vector<ActionSchema>& schemas,
                                      const GroundAction& act) {
  for (const auto& s : schemas)
    if (s.name == act.name && s.params.size() == act.args.size()) return s;
  throw std::runtime_error("oracle: no schema for " + act.str());
}

// ------------------------------------------------- blocks ground truth

inline const std::vector<std::string> kBlocks{"a", "b", "c"};
inline const std::vector<std::string> kPlaces{"p1", "p2", "p3", "p4"};

// block -> what it rests on
using Support = std::map<std::string, std::string>;

inline bool occupied(const Support& on, const std::string& loc) {
  for (const auto& [blk, sup] : on)
    if (sup == loc) return true;
  return false;
}

inline bool goal_reached(const Support& on) {
  return on.at("a") == "b" && on.at("b") == "c";
}

struct Move {
  std::string block, from, to;
};

inline std::vector<Move> legal_moves(const Support& on) {
  std::vector<Move> moves;
  for (const auto& blk : kBlocks) {
    if (occupied(on, blk)) continue;  // something rests on it
    std::vector<std::string> targets;
    for (const auto& other : kBlocks)
      if (other != blk && !occupied(on, other)) targets.push_back(other);
    for (const auto& place : kPlaces)
      if (!occupied(on, place)) targets.push_back(place);
    for (const auto& to : targets)
      if (to != on.at(blk)) moves.push_back({blk, on.at(blk), to});
  }
  return moves;
}

// True transition check straight from the physics: moved thing is a clear
// block, source matches, destination is a different clear location, and the
// post-state follows by swapping the support.
inline bool legal_transition(const std::set<Atom>& pre, const GroundAction& act,
                             const std::set<Atom>& post) {
  if (act.name != "move" || act.args.size() != 3) return false;
  const auto& [blk, from, to] = std::tie(act.args[0], act.args[1], act.args[2]);
  if (std::find(kBlocks.begin(), kBlocks.end(), blk) == kBlocks.end())
    return false;
  if (blk == from || blk == to || from == to) return false;
  if (!pre.count(Atom{"on", {blk, from}})) return false;
  if (!pre.count(Atom{"clear", {blk}}) || !pre.count(Atom{"clear", {to}}))
    return false;
  std::set<Atom> expect = pre;
  expect.erase(Atom{"on", {blk, from}});
  expect.erase(Atom{"clear", {to}});
  expect.insert(Atom{"on", {blk, to}});
  expect.insert(Atom{"clear", {from}});
  return expect == post;
}

// Optimal plan length by iterative deepening over the true dynamics.
inline bool reachable_within(Support& on, int depth) {
  if (goal_reached(on)) return true;
  if (depth == 0) return false;
  for (const Move& m : legal_moves(on)) {
    on[m.block] = m.to;
    bool hit = reachable_within(on, depth - 1);
    on[m.block] = m.from;
    if (hit) return true;
  }
  return false;
}

inline int optimal_length(Support on, int cap = 10) {
  for (int d = 0; d <= cap; ++d)
    if (reachable_within(on, d)) return d;
  return -1;
}

inline Support support_of_state(const std::set<Atom>& props) {
  Support on;
  for (const Atom& a : props)
    if (a.predicate == "on" && a.terms.size() == 2) on[a.terms[0]] = a.terms[1];
  return on;
}

// Number of arrangements of n distinct blocks into ordered stacks placed on
// p distinct places: sum over k stacks of C(n-1,k-1)*n!/k! * p!/(p-k)!.
inline long closed_form_config_count(int n, int p) {
  auto fact = [](int x) {
    long r = 1;
    for (int i = 2; i <= x; ++i) r *= i;
    return r;
  };
  auto choose = [&](int a, int b) {
    return b < 0 || b > a ? 0L : fact(a) / (fact(b) * fact(a - b));
  };
  long total = 0;
  for (int k = 1; k <= n && k <= p; ++k)
    total += choose(n - 1, k - 1) * fact(n) / fact(k) * (fact(p) / fact(p - k));
  return total;
}

// ------------------------------------------------------- vocabulary oracle

struct VocabCounts {
  std::set<Atom> propositions, statics, fluents;
  std::set<GroundAction> actions;
};

inline VocabCounts naive_vocabulary(const Corpus& corpus) {
  VocabCounts out;
  std::map<Atom, size_t> seen;
  size_t total_states = 0;
  for (const auto& instance : corpus.instances) {
    total_states += instance.states.size();
    for (const auto& state : instance.states)
      for (const Atom& p : state.props) ++seen[p];
    for (const auto& act : instance.actions) out.actions.insert(act);
  }
  for (const auto& [atom, count] : seen) {
    out.propositions.insert(atom);
    if (count == total_states)
      out.statics.insert(atom);
    else
      out.fluents.insert(atom);
  }
  return out;
}

// ------------------------------------------------------ precedence oracle

inline bool occurs_in(const BehavioralInstance& b, const Atom& p) {
  for (const auto& s : b.states)
    if (s.props.count(p)) return true;
  return false;
}

inline bool oracle_precedes(const BehavioralInstance& b,
                            const std::vector<ActionSchema>& schemas,
                            const Atom& p1, const Atom& p2, bool* actual) {
  *actual = false;
  const int n = static_cast<int>(b.states.size());
  for (int s1 = 0; s1 < n && !*actual; ++s1) {
    if (!b.states[s1].props.count(p1) || b.states[s1].props.count(p2)) continue;
    for (int s2 = s1 + 1; s2 < n; ++s2) {
      if (!b.states[s2].props.count(p2)) continue;
      bool consumed = false;
      for (int k = s1; k < s2; ++k) {
        const auto& schema = schema_for(schemas, b.actions[k]);
        if (ground(schema.preconditions, schema, b.actions[k]).count(p1))
          consumed = true;
      }
      if (!consumed) {
        *actual = true;
        break;
      }
    }
  }
  if (*actual) return true;
  return b.states.front().props.count(p1) && b.states.front().props.count(p2);
}

inline std::set<std::pair<Atom, Atom>> oracle_must_precede(
    const Corpus& corpus, const std::vector<ActionSchema>& schemas,
    const std::set<Atom>& fluents) {
  std::set<std::pair<Atom, Atom>> result;
  for (const Atom& p1 : fluents) {
    for (const Atom& p2 : fluents) {
      if (p1 == p2) continue;
      bool all_hold = true, any_actual = false;
      for (const auto& b : corpus.instances) {
        const bool o1 = occurs_in(b, p1), o2 = occurs_in(b, p2);
        if (!o1 && o2 && !b.states.front().props.count(p2)) {
          all_hold = false;  // p2 achieved from scratch without p1
          break;
        }
        if (!o1 || !o2) continue;
        bool actual = false;
        if (!oracle_precedes(b, schemas, p1, p2, &actual)) {
          all_hold = false;
          break;
        }
        any_actual = any_actual || actual;
      }
      if (all_hold && any_actual) result.insert({p1, p2});
    }
  }
  return result;
}

// ----------------------------------------------------- explanation oracle

struct OracleExplanation {
  std::set<std::tuple<int, Atom, GroundAction>> contributed;
  std::map<int, std::set<Atom>> achieved;  // state id -> relevant effects
};

inline OracleExplanation oracle_explain(const BehavioralInstance& b,
                                        const std::vector<ActionSchema>& schemas,
                                        const std::set<Atom>& goal) {
  OracleExplanation out;
  const int steps = static_cast<int>(b.actions.size());
  std::vector<std::set<Atom>> pre(steps), pos(steps);
  for (int s = 0; s < steps; ++s) {
    const auto& schema = schema_for(schemas, b.actions[s]);
    pre[s] = ground(schema.preconditions, schema, b.actions[s]);
    pos[s] = ground(schema.pos_effects, schema, b.actions[s]);
  }
  for (int s = 0; s < steps; ++s)
    for (const Atom& p : b.states[s].props)
      if (pre[s].count(p)) out.contributed.insert({s, p, b.actions[s]});
  for (int s = 0; s < steps; ++s) {
    std::set<Atom> relevant;
    for (const Atom& p : pos[s]) {
      if (goal.count(p)) {
        relevant.insert(p);
        continue;
      }
      for (int t = s + 1; t <= steps && b.states[t].props.count(p); ++t) {
        if (t < steps && pre[t].count(p)) {
          relevant.insert(p);
          break;
        }
      }
    }
    out.achieved[s] = relevant;
  }
  return out;
}

// ----------------------------------------------------- corpus generators

// Random ground corpora for parser/vocabulary fuzzing.
inline Corpus random_corpus(std::mt19937& rng) {
  std::uniform_int_distribution<int> d_instances(1, 4), d_states(1, 5),
      d_props(0, 6), d_arity(0, 2), d_pred(0, 4), d_const(0, 5);
  const std::vector<std::string> preds{"p", "q", "r", "holds", "near"};
  const std::vector<std::string> consts{"x1", "x2", "foo", "bar", "k9", "z"};
  Corpus corpus;
  corpus.class_name = "fuzz";
  const int n = d_instances(rng);
  for (int i = 0; i < n; ++i) {
    BehavioralInstance inst;
    inst.id = "f_" + std::to_string(i);
    const int states = d_states(rng);
    for (int s = 0; s < states; ++s) {
      StateRecord rec;
      rec.id = s;
      const int props = d_props(rng);
      for (int k = 0; k < props; ++k) {
        Atom a{preds[static_cast<size_t>(d_pred(rng))], {}};
        const int arity = d_arity(rng);
        for (int t = 0; t < arity; ++t)
          a.terms.push_back(consts[static_cast<size_t>(d_const(rng))]);
        rec.props.insert(a);
      }
      inst.states.push_back(std::move(rec));
      if (s + 1 < states) {
        GroundAction act{"step", {consts[static_cast<size_t>(d_const(rng))]}};
        inst.actions.push_back(act);
      }
    }
    corpus.instances.push_back(std::move(inst));
  }
  return corpus;
}

// Synthetic domain with a known generating model: connect(X,Y) requires both
// nodes free, links X to Y and marks X used. The learner must recover it
// exactly once every node has been a source somewhere in the corpus.
inline Corpus switchworld(std::mt19937& rng, int node_count = 5,
                          int extra_instances = 4) {
  std::vector<std::string> nodes;
  for (int i = 1; i <= node_count; ++i) nodes.push_back("n" + std::to_string(i));
  std::set<Atom> background;
  for (const auto& n : nodes) {
    background.insert(Atom{"node", {n}});
    background.insert(Atom{"eq", {n, n}});
  }

  Corpus corpus;
  corpus.class_name = "switch";
  auto run = [&](const std::string& id,
                 const std::vector<std::pair<int, int>>& script) {
    BehavioralInstance inst;
    inst.id = id;
    std::set<std::string> free(nodes.begin(), nodes.end());
    std::set<Atom> fluents;
    for (const auto& n : nodes) fluents.insert(Atom{"free", {n}});
    auto snapshot = [&](int sid) {
      StateRecord rec;
      rec.id = sid;
      rec.props = background;
      rec.props.insert(fluents.begin(), fluents.end());
      inst.states.push_back(std::move(rec));
    };
    snapshot(0);
    for (const auto& [si, ti] : script) {
      const std::string &src = nodes[static_cast<size_t>(si)],
                        &dst = nodes[static_cast<size_t>(ti)];
      inst.actions.push_back(GroundAction{"connect", {src, dst}});
      fluents.erase(Atom{"free", {src}});
      fluents.insert(Atom{"linked", {src, dst}});
      fluents.insert(Atom{"used", {src}});
      free.erase(src);
      snapshot(static_cast<int>(inst.states.size()));
    }
    corpus.instances.push_back(std::move(inst));
  };

  // Two fixed instances guarantee every node acts as a source at least once,
  // so no free(n) atom survives as a static.
  std::vector<std::pair<int, int>> chain;
  for (int i = 0; i + 1 < node_count; ++i) chain.push_back({i, i + 1});
  run("sw_chain", chain);
  run("sw_tail", {{node_count - 1, 0}, {0, 1}});

  std::uniform_int_distribution<int> d_steps(1, node_count - 1);
  for (int k = 0; k < extra_instances; ++k) {
    std::vector<std::pair<int, int>> script;
    std::set<int> free;
    for (int i = 0; i < node_count; ++i) free.insert(i);
    const int steps = d_steps(rng);
    for (int s = 0; s < steps && free.size() >= 2; ++s) {
      std::vector<int> pool(free.begin(), free.end());
      std::uniform_int_distribution<size_t> pick(0, pool.size() - 1);
      int src = pool[pick(rng)];
      int dst = src;
      while (dst == src) dst = pool[pick(rng)];
      script.push_back({src, dst});
      free.erase(src);
    }
    run("sw_rand" + std::to_string(k), script);
  }
  return corpus;
}

inline ActionSchema expected_connect_schema() {
  ActionSchema s;
  s.name = "connect";
  s.params = {"V1", "V2"};
  s.preconditions = {Atom{"free", {"V1"}}, Atom{"free", {"V2"}}};
  s.pos_effects = {Atom{"linked", {"V1", "V2"}}, Atom{"used", {"V1"}}};
  s.neg_effects = {Atom{"free", {"V1"}}};
  s.validity = {Atom{"node", {"V1"}}, Atom{"node", {"V2"}},
                Atom{"neq", {"V1", "V2"}}};
  return s;
}

}  // namespace oracles

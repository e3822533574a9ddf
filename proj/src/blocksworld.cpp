#include "tracelearn/blocksworld.hpp"

#include <algorithm>
#include <optional>
#include <stdexcept>

#include "tracelearn/io.hpp"

namespace tracelearn::blocksworld {

namespace {

bool is_block(const std::string& x) {
  return std::find(kBlocks.begin(), kBlocks.end(), x) != kBlocks.end();
}

bool is_place(const std::string& x) {
  return std::find(kPlaces.begin(), kPlaces.end(), x) != kPlaces.end();
}

// The block resting directly on x, if any.
std::optional<std::string> top_of(const BlocksConfig& cfg,
                                  const std::string& x) {
  for (const auto& [block, support] : cfg.on)
    if (support == x) return block;
  return std::nullopt;
}

// Follows the chain of blocks upward from x; returns x itself when clear.
std::string stack_top(const BlocksConfig& cfg, const std::string& x) {
  std::string at = x;
  while (auto above = top_of(cfg, at)) at = *above;
  return at;
}

std::set<std::string> stack_members(const BlocksConfig& cfg,
                                    const std::string& base) {
  std::set<std::string> members{base};
  std::string at = base;
  while (auto above = top_of(cfg, at)) {
    at = *above;
    members.insert(at);
  }
  return members;
}

std::vector<std::string> free_places(const BlocksConfig& cfg) {
  std::vector<std::string> free;
  for (const auto& p : kPlaces)
    if (!top_of(cfg, p)) free.push_back(p);
  return free;
}

std::vector<std::string> clear_blocks(const BlocksConfig& cfg) {
  std::vector<std::string> clear;
  for (const auto& b : kBlocks)
    if (!top_of(cfg, b)) clear.push_back(b);
  return clear;
}

}  // namespace

bool BlocksConfig::valid() const {
  if (on.size() != kBlocks.size()) return false;
  std::set<std::string> supports;
  for (const auto& block : kBlocks) {
    auto it = on.find(block);
    if (it == on.end()) return false;
    const std::string& support = it->second;
    if (support == block) return false;
    if (!is_block(support) && !is_place(support)) return false;
    if (!supports.insert(support).second) return false;  // shared support
  }
  // Acyclicity: every support chain must bottom out at a table place.
  for (const auto& block : kBlocks) {
    std::string at = block;
    int hops = 0;
    while (is_block(at)) {
      at = on.at(at);
      if (++hops > static_cast<int>(kBlocks.size())) return false;
    }
  }
  return true;
}

std::vector<BlocksConfig> enumerate_configs() {
  // Candidate supports per block: table places first, then the other blocks.
  auto candidates = [](const std::string& block) {
    std::vector<std::string> c = kPlaces;
    for (const auto& other : kBlocks)
      if (other != block) c.push_back(other);
    return c;
  };
  std::vector<BlocksConfig> configs;
  for (const auto& sa : candidates("a")) {
    for (const auto& sb : candidates("b")) {
      for (const auto& sc : candidates("c")) {
        BlocksConfig cfg{{{"a", sa}, {"b", sb}, {"c", sc}}};
        if (cfg.valid()) configs.push_back(std::move(cfg));
      }
    }
  }
  return configs;
}

std::set<Atom> config_to_state(const BlocksConfig& config) {
  if (!config.valid())
    throw std::invalid_argument("invalid blocks configuration");
  std::set<Atom> state;
  for (const auto& [block, support] : config.on)
    state.insert(Atom{"on", {block, support}});
  for (const auto& block : kBlocks)
    if (!top_of(config, block)) state.insert(Atom{"clear", {block}});
  for (const auto& place : kPlaces)
    if (!top_of(config, place)) state.insert(Atom{"clear", {place}});
  for (const auto& block : kBlocks) {
    state.insert(Atom{"block", {block}});
    state.insert(Atom{"place", {block}});  // blocks are stackable locations
    state.insert(Atom{"eq", {block, block}});
  }
  for (const auto& place : kPlaces) {
    state.insert(Atom{"place", {place}});
    state.insert(Atom{"eq", {place, place}});
  }
  return state;
}

BehavioralInstance run_executor(const BlocksConfig& config,
                                const std::string& instance_id) {
  if (!config.valid())
    throw std::invalid_argument("invalid blocks configuration");
  BehavioralInstance instance;
  instance.id = instance_id;
  BlocksConfig cfg = config;

  auto snapshot = [&]() {
    StateRecord state;
    state.id = static_cast<int>(instance.states.size());
    state.props = config_to_state(cfg);
    instance.states.push_back(std::move(state));
  };
  auto move = [&](const std::string& block, const std::string& to) {
    instance.actions.push_back(GroundAction{"move", {block, cfg.on.at(block), to}});
    cfg.on.at(block) = to;
    snapshot();
  };

  snapshot();
  int guard = 0;
  while (!(cfg.on.at("b") == "c" && cfg.on.at("a") == "b")) {
    if (++guard > 64)
      throw std::logic_error("executor failed to reach the goal");
    if (cfg.on.at("b") != "c") {
      if (top_of(cfg, "c")) {
        // Dig c out. Preferred parking spot: the lowest-named clear block
        // outside c's stack; otherwise the lowest-indexed free place.
        std::string top = stack_top(cfg, "c");
        std::set<std::string> stack = stack_members(cfg, "c");
        std::string dest;
        for (const auto& b : clear_blocks(cfg)) {
          if (!stack.count(b)) {
            dest = b;
            break;
          }
        }
        if (dest.empty()) dest = free_places(cfg).front();
        move(top, dest);
      } else if (top_of(cfg, "b")) {
        move(stack_top(cfg, "b"), free_places(cfg).front());
      } else if (is_block(cfg.on.at("c"))) {
        // c itself sits on a block; it must reach a table place before b can
        // be stacked on it, otherwise the dig-out loop never terminates.
        move("c", free_places(cfg).front());
      } else {
        move("b", "c");
      }
    } else {
      if (top_of(cfg, "b")) {
        move(stack_top(cfg, "b"), free_places(cfg).front());
      } else if (top_of(cfg, "a")) {
        move(stack_top(cfg, "a"), free_places(cfg).front());
      } else {
        move("a", "b");
      }
    }
  }
  return instance;
}

Corpus build_corpus(const std::string& class_name) {
  Corpus corpus;
  corpus.class_name = class_name;
  std::vector<BlocksConfig> configs = enumerate_configs();
  for (size_t i = 0; i < configs.size(); ++i) {
    std::string id = "bw_" + std::string(i < 10 ? "00" : i < 100 ? "0" : "") +
                     std::to_string(i);
    corpus.instances.push_back(run_executor(configs[i], id));
  }
  return corpus;
}

void generate_corpus(const std::filesystem::path& out_dir) {
  std::filesystem::create_directories(out_dir);
  for (const auto& instance : build_corpus().instances)
    write_file_atomic(out_dir / (instance.id + ".trace"),
                      serialize_trace(instance));
}

Corpus inject_goal_preceding_prop(const Corpus& corpus) {
  const Atom on_a_b{"on", {"a", "b"}};
  Corpus injected;
  injected.class_name = corpus.class_name;
  for (const auto& instance : corpus.instances) {
    BehavioralInstance copy = instance;
    size_t first = 0;
    while (first < copy.states.size() &&
           !copy.states[first].props.count(on_a_b))
      ++first;
    for (size_t s = 0; s < first; ++s)
      copy.states[s].props.insert(kGoalPrecedingProp);
    injected.instances.push_back(std::move(copy));
  }
  return injected;
}

}  // namespace tracelearn::blocksworld

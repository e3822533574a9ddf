#pragma once

#include <filesystem>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "tracelearn/atom.hpp"
#include "tracelearn/trace.hpp"

namespace tracelearn::blocksworld {

inline const std::vector<std::string> kBlocks{"a", "b", "c"};
inline const std::vector<std::string> kPlaces{"p1", "p2", "p3", "p4"};
inline const Atom kGoalPrecedingProp{"goal_preceding_prop", {}};

// A legal arrangement: every block rests on a table place or another block,
// supports are injective and chains are acyclic.
struct BlocksConfig {
  std::map<std::string, std::string> on;  // block -> support

  bool valid() const;
  bool operator==(const BlocksConfig&) const = default;
  auto operator<=>(const BlocksConfig&) const = default;
};

// All 120 legal configurations in a fixed deterministic order.
std::vector<BlocksConfig> enumerate_configs();

// Ground state atoms: on/2 facts, clear/1 for uncovered blocks and free table
// places, plus the static background (block/1 for blocks, place/1 for every
// location a block can rest on - table places and blocks alike - and the
// reflexive eq/2 sensor facts).
std::set<Atom> config_to_state(const BlocksConfig& config);

// Scripted agent: stacks a on b on c, with the deliberately wasteful habit of
// parking a dug-out block on another clear block when one is available.
BehavioralInstance run_executor(const BlocksConfig& config,
                                const std::string& instance_id);

// Writes bw_000.trace .. bw_119.trace (canonical serialization).
void generate_corpus(const std::filesystem::path& out_dir);

// Builds the full corpus in memory, ids bw_000..bw_119.
Corpus build_corpus(const std::string& class_name = "blocks");

// Adds goal_preceding_prop to every state before on(a,b) first holds, in
// every instance that does not start with on(a,b). Instances that do start
// with it are returned unchanged.
Corpus inject_goal_preceding_prop(const Corpus& corpus);

}  // namespace tracelearn::blocksworld

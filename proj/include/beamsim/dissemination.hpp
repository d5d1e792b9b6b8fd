#pragma once

#include "beamsim/graph.hpp"
#include "beamsim/types.hpp"

#include <compare>
#include <cstdint>
#include <string>
#include <vector>

namespace beamsim {

struct PacketId {
  NodeId source_id = -1;
  int seq = 0;
  int version = 0;
  auto operator<=>(const PacketId&) const = default;
};

enum class ScenarioKind { SsSp, SsUp, SsMp, MsSp, MsMp, MsMpJoin };

std::string to_string(ScenarioKind k);
// Accepts SS-SP, SS-UP, SS-MP, MS-SP, MS-MP, MS-MP-join (case-insensitive).
ScenarioKind parse_scenario(const std::string& text);

struct ScenarioConfig {
  ScenarioKind kind = ScenarioKind::SsSp;
  int n_sources = 40;
  int packet_gen_horizon = 30;
  int source_join_horizon = 20;
  int update_horizon = 10;
  double gen_prob = 0.5;

  bool multi_source() const;
  bool updates() const { return kind == ScenarioKind::SsUp; }
  int source_count() const { return multi_source() ? n_sources : 1; }
  void validate(int T) const;
};

struct Source {
  NodeId node = -1;
  int join_time = 0;
};

// Distinct uniformly drawn source nodes. Join times are uniform on
// [0, source_join_horizon] for MS-MP-join and 0 otherwise.
std::vector<Source> init_sources(Rng& rng, const ScenarioConfig& scenario,
                                 int n_nodes);

// Packets emitted at step t. Source i is identified by its index in
// `sources` only through PacketId::source_id (the node id).
std::vector<PacketId> generate(int t, const std::vector<Source>& sources,
                               const ScenarioConfig& scenario, Rng& rng);

// Growable bitset over dense packet indices.
class PacketBits {
 public:
  void set(std::size_t i);
  bool test(std::size_t i) const;
  void merge(const PacketBits& other);
  bool contains(const PacketBits& other) const;
  std::size_t count() const;
  bool operator==(const PacketBits&) const = default;

 private:
  std::vector<std::uint64_t> words_;
};

struct NodeBuffer {
  PacketBits held;
  // Per source slot, newest version held (-1 for none). Update scenario only.
  std::vector<int> latest_version;
  bool operator==(const NodeBuffer&) const = default;
};

// Packet bookkeeping for one run: dense indices, source slots and what has
// been emitted so far.
class PacketLedger {
 public:
  PacketLedger() = default;
  PacketLedger(const std::vector<Source>& sources, bool updates);

  bool updates() const { return updates_; }
  std::size_t source_slots() const { return source_nodes_.size(); }
  int slot_of(NodeId source) const;

  // Registers the packet and gives it to its source's buffer.
  void emit(const PacketId& p, int t, std::vector<NodeBuffer>& buffers);

  const std::vector<PacketId>& packets() const { return packets_; }
  const std::vector<int>& birth_steps() const { return births_; }
  const PacketBits& emitted() const { return emitted_; }
  const std::vector<int>& latest_emitted() const { return latest_; }
  bool empty() const { return packets_.empty(); }

  std::vector<PacketId> held_packets(const NodeBuffer& b) const;

 private:
  bool updates_ = false;
  std::vector<NodeId> source_nodes_;
  std::vector<PacketId> packets_;
  std::vector<int> births_;
  PacketBits emitted_;
  std::vector<int> latest_;
};

std::vector<NodeBuffer> make_buffers(int n, const PacketLedger& ledger);

// Synchronous SI round: each node sends its whole buffer along every
// outgoing link. In update mode receivers keep the newest version per source.
std::vector<NodeBuffer> broadcast_step(const LinkSet& links,
                                       const std::vector<NodeBuffer>& buffers,
                                       bool updates);

// Fraction of nodes holding everything emitted so far (newest versions in
// update mode); 0 while nothing has been emitted.
double coverage(const std::vector<NodeBuffer>& buffers, const PacketLedger& ledger);

}  // namespace beamsim

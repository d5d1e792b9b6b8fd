#pragma once

#include "beamsim/antenna.hpp"
#include "beamsim/graph.hpp"
#include "beamsim/types.hpp"

#include <iosfwd>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace beamsim {

enum class StabilityClass { Zero, Low, Mid, High };
enum class DegreeClass { Zero, Low, High };

struct NodeClass {
  StabilityClass stability = StabilityClass::Zero;
  DegreeClass degree = DegreeClass::Zero;
  bool operator==(const NodeClass&) const = default;
};

std::string to_string(StabilityClass c);
std::string to_string(DegreeClass c);
std::string to_string(NodeClass c);

struct PolicyConfig {
  double S_min = 1e-6;
  double S_max = 0.7;
  // Degrees at or above this are "high".
  double degree_threshold = 2.827433388;
  int M = 6;
  double r = 30.0;
  BeamKind antenna = BeamKind::Ula;
  AntennaConfig antenna_cfg;
};

NodeClass classify(double S, int degree, const PolicyConfig& cfg);

// Beamformers: low stability at any degree, or zero stability and zero degree.
bool is_beamformer(NodeClass c);

// Targets of a (zero, zero) beamformer are unrestricted; otherwise only high
// or zero stability nodes qualify.
bool is_target(NodeClass target, NodeClass beamformer);

struct CandidateInfo {
  NodeId node_id = -1;
  Position position = Position::Zero();
  double stability = 0.0;
  int degree = 0;
  // Current one-hop omni neighbor of the sweeping node.
  bool hop1 = false;
};

enum class BeamAction { StayOmni, Beamform };

struct BeamDecision {
  NodeId node_id = -1;
  NodeClass node_class;
  BeamAction action = BeamAction::StayOmni;
  int m = 1;
  double boresight = 0.0;
  // Qualifying nodes covered by the chosen beam.
  std::vector<NodeId> targets;
};

// How a sweep decides which covered nodes count.
enum class TargetRule {
  Table,    // stability/degree table plus the two-hop rule
  Anyone,   // every covered node (random baseline)
};

// Visits the m^2 sectors around `node` and keeps the one with the largest
// summed stability of high-stability qualifying targets. Ties (including all
// zero weights) go to the sector with more qualifying targets, then to the
// lower sector index. With no qualifying target anywhere the node stays omni.
BeamDecision sweep(const CandidateInfo& node,
                   std::span<const CandidateInfo> candidates, int m,
                   const PolicyConfig& cfg, TargetRule rule = TargetRule::Table);

// Per-node view of the network after moving, as the probe/reply exchange
// reports it: positions, omni adjacency and each node's stability estimate.
struct NetworkView {
  const Positions* positions = nullptr;
  const LinkSet* omni = nullptr;
  std::span<const double> stability;

  std::vector<CandidateInfo> candidates_for(NodeId v) const;
  int degree(NodeId v) const { return static_cast<int>(omni->out(v).size()); }
};

// Proposed policy: Table 3 beamformers, m drawn uniformly from [2, M].
std::vector<BeamDecision> decide_all(const NetworkView& view, Rng& rng,
                                     const PolicyConfig& cfg);

// Neighborhood-stability baseline: beamform when the realized stability is
// below S_min; targets follow the same table.
std::vector<BeamDecision> decide_neighborhood(const NetworkView& view, Rng& rng,
                                              const PolicyConfig& cfg);

// Random-selection baseline: `count` nodes chosen uniformly beamform toward
// the sector with the most covered nodes.
std::vector<BeamDecision> decide_random(const NetworkView& view, int count,
                                        Rng& rng, const PolicyConfig& cfg);

int beamformer_count(const std::vector<BeamDecision>& decisions);
// Nodes the table marks as beamformers, whether or not they found a target.
int table_beamformer_count(const NetworkView& view, const PolicyConfig& cfg);

// Forward links to every target plus the transient reverse link each target
// sends back.
LinkSet handshake(const std::vector<BeamDecision>& decisions, int n);

void write_decision_log_header(std::ostream& os);
void write_decision_log(std::ostream& os, int t,
                        const std::vector<BeamDecision>& decisions);

}  // namespace beamsim

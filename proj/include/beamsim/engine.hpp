#pragma once

#include "beamsim/antenna.hpp"
#include "beamsim/dissemination.hpp"
#include "beamsim/graph.hpp"
#include "beamsim/mobility.hpp"
#include "beamsim/policy.hpp"
#include "beamsim/quadrature.hpp"

#include <Eigen/Core>

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace beamsim {

// Per-run random stream tags for make_stream. Each purpose has its own
// generator, so policies that consume different amounts of randomness still
// see the same placement, mobility and traffic.
namespace stream {
inline constexpr std::uint64_t kPlacement = 1;
inline constexpr std::uint64_t kMobility = 2;
inline constexpr std::uint64_t kTraffic = 3;
inline constexpr std::uint64_t kPolicy = 4;
}  // namespace stream

enum class PolicyKind { Proposed, None, Neighborhood, Random };

std::string to_string(PolicyKind p);
PolicyKind parse_policy(const std::string& text);
std::string to_string(BeamKind k);
BeamKind parse_antenna(const std::string& text);

struct ExperimentConfig {
  MobilityConfig mobility;  // arena extents live here
  double rho = 1e-3;
  // Explicit population; non-positive means ceil(rho * area).
  int n_nodes = 0;
  double r = 30.0;
  int M = 6;
  double S_min = 1e-6;
  double S_max = 0.7;
  // Non-positive means the expected omni degree rho * pi * r^2.
  double degree_threshold = 0.0;
  int T = 100;
  int n_topologies = 50;
  ScenarioConfig scenario;
  PolicyKind policy = PolicyKind::Proposed;
  BeamKind antenna = BeamKind::Ula;
  AntennaConfig antenna_cfg;
  std::uint64_t seed = 1;
  QuadratureConfig quadrature;
  // Test hook: positions never change.
  bool freeze_mobility = false;
  int workers = 1;

  int node_count() const;
  double effective_degree_threshold() const;
  PolicyConfig policy_config() const;
  // Throws std::invalid_argument naming the offending field.
  void validate() const;
};

struct RunResult {
  std::vector<double> coverage;      // t = 0..T
  std::vector<int> beamformer_count; // t = 0..T
  std::uint64_t seed = 0;
  bool operator==(const RunResult&) const = default;
};

struct Aggregate {
  std::vector<double> mean;
  std::vector<double> half_width;
  int n_runs = 0;
  std::vector<RunResult> runs;

  double ci_low(std::size_t t) const { return mean[t] - half_width[t]; }
  double ci_high(std::size_t t) const { return mean[t] + half_width[t]; }
};

// Everything observable about one simulated step.
struct StepRecord {
  int t = 0;
  const Positions* positions = nullptr;
  const LinkSet* omni = nullptr;
  const LinkSet* links = nullptr;
  const std::vector<BeamDecision>* decisions = nullptr;
  const std::vector<double>* stability = nullptr;
  double coverage = 0.0;
};

using StepObserver = std::function<void(const StepRecord&)>;

// Omni transmitters link to every node within r (reception is always omni);
// a beamformer's beam replaces its disk and links to every node it covers;
// targets answer with a transient reverse link.
LinkSet build_graph(const Positions& positions, const LinkSet& omni,
                    const std::vector<BeamDecision>& decisions,
                    const PolicyConfig& cfg);

RunResult run_once(const ExperimentConfig& cfg, std::uint64_t seed,
                   const StepObserver& observer = {});

// Per-t mean and Student-t 95% half-width over the runs.
Aggregate aggregate(std::vector<RunResult> runs);

// Runs seeds seed, seed+1, ... seed+n_topologies-1.
Aggregate run_experiment(const ExperimentConfig& cfg);

// First step whose coverage reaches `threshold`, or T + 1 if none does.
int time_to_coverage(const std::vector<double>& series, double threshold);
double median_time_to_coverage(const Aggregate& agg, double threshold);

// Parameters sweep_parameter accepts.
const std::vector<std::string>& sweepable_parameters();

struct SweepPoint {
  std::string value;
  Aggregate result;
};

// One aggregate per value with every run sharing the base seeds.
std::vector<SweepPoint> sweep_parameter(const ExperimentConfig& cfg,
                                        const std::string& name,
                                        const std::vector<std::string>& values);

}  // namespace beamsim

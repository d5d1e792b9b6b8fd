#include "beamsim/engine.hpp"

#include "beamsim/config.hpp"
#include "beamsim/predictor.hpp"
#include "beamsim/stability.hpp"

#include <boost/math/distributions/students_t.hpp>

#include <algorithm>
#include <atomic>
#include <cctype>
#include <cmath>
#include <stdexcept>
#include <thread>

namespace beamsim {
namespace {

std::string lower(std::string s) {
  for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return s;
}

std::vector<std::vector<NeighborRecord>> neighbor_records(const Positions& positions,
                                                          const LinkSet& omni) {
  std::vector<std::vector<NeighborRecord>> out(static_cast<std::size_t>(omni.size()));
  for (NodeId v = 0; v < omni.size(); ++v)
    for (NodeId u : omni.out(v))
      out[static_cast<std::size_t>(v)].push_back({u, positions.col(u)});
  return out;
}

}  // namespace

std::string to_string(PolicyKind p) {
  switch (p) {
    case PolicyKind::Proposed: return "proposed";
    case PolicyKind::None: return "none";
    case PolicyKind::Neighborhood: return "neighborhood";
    case PolicyKind::Random: return "random";
  }
  return "?";
}

PolicyKind parse_policy(const std::string& text) {
  const std::string s = lower(text);
  if (s == "proposed") return PolicyKind::Proposed;
  if (s == "none") return PolicyKind::None;
  if (s == "neighborhood") return PolicyKind::Neighborhood;
  if (s == "random") return PolicyKind::Random;
  throw std::invalid_argument("unknown policy '" + text + "'");
}

std::string to_string(BeamKind k) {
  switch (k) {
    case BeamKind::Omni: return "omni";
    case BeamKind::Sector: return "sector";
    case BeamKind::Ula: return "ula";
  }
  return "?";
}

BeamKind parse_antenna(const std::string& text) {
  const std::string s = lower(text);
  if (s == "ula") return BeamKind::Ula;
  if (s == "sector") return BeamKind::Sector;
  throw std::invalid_argument("unknown antenna kind '" + text + "'");
}

int ExperimentConfig::node_count() const {
  if (n_nodes > 0) return n_nodes;
  return static_cast<int>(
      std::ceil(rho * mobility.area_width * mobility.area_height - 1e-9));
}

double ExperimentConfig::effective_degree_threshold() const {
  if (degree_threshold > 0.0) return degree_threshold;
  return rho * kPi * r * r;
}

PolicyConfig ExperimentConfig::policy_config() const {
  PolicyConfig p;
  p.S_min = S_min;
  p.S_max = S_max;
  p.degree_threshold = effective_degree_threshold();
  p.M = M;
  p.r = r;
  p.antenna = antenna;
  p.antenna_cfg = antenna_cfg;
  p.antenna_cfg.M = M;
  return p;
}

void ExperimentConfig::validate() const {
  mobility.validate();
  if (n_nodes <= 0 && !(rho > 0.0)) throw std::invalid_argument("rho must be > 0");
  if (node_count() < 1) throw std::invalid_argument("n_nodes must be >= 1");
  if (!(r > 0.0)) throw std::invalid_argument("r must be > 0");
  if (M < 2) throw std::invalid_argument("M must be >= 2");
  if (!(S_min > 0.0) || !(S_max > 0.0) || S_min > S_max)
    throw std::invalid_argument("S_min and S_max must be > 0 with S_min <= S_max");
  if (T < 1) throw std::invalid_argument("T must be >= 1");
  if (n_topologies < 1) throw std::invalid_argument("n_topologies must be >= 1");
  if (workers < 1) throw std::invalid_argument("workers must be >= 1");
  if (antenna == BeamKind::Omni) throw std::invalid_argument("antenna must be ula or sector");
  scenario.validate(T);
  if (scenario.source_count() > node_count())
    throw std::invalid_argument("n_sources exceeds the node count");
  antenna_cfg.validate();
}

LinkSet build_graph(const Positions& positions, const LinkSet& omni,
                    const std::vector<BeamDecision>& decisions,
                    const PolicyConfig& cfg) {
  const int n = omni.size();
  LinkSet links(n);
  for (NodeId u = 0; u < n; ++u) {
    const auto& d = decisions[static_cast<std::size_t>(u)];
    if (d.action != BeamAction::Beamform) {
      for (NodeId v : omni.out(u)) links.add(u, v);
      continue;
    }
    const Beam beam = make_beam(cfg.antenna, positions.col(u), d.boresight, d.m, cfg.r);
    for (NodeId v = 0; v < n; ++v)
      if (v != u && covers(beam, positions.col(v), cfg.antenna_cfg)) links.add(u, v);
  }
  const LinkSet shake = handshake(decisions, n);
  for (NodeId u = 0; u < n; ++u)
    for (NodeId v : shake.out(u)) links.add(u, v);
  return links;
}

RunResult run_once(const ExperimentConfig& cfg, std::uint64_t seed,
                   const StepObserver& observer) {
  cfg.validate();
  const int n = cfg.node_count();
  const JumpLaw law(cfg.mobility);
  const PolicyConfig pcfg = cfg.policy_config();

  Rng placement = make_stream(seed, stream::kPlacement);
  Rng mobility = make_stream(seed, stream::kMobility);
  Rng traffic = make_stream(seed, stream::kTraffic);
  Rng policy_rng = make_stream(seed, stream::kPolicy);

  RunResult result;
  result.seed = seed;
  result.coverage.reserve(static_cast<std::size_t>(cfg.T + 1));

  Positions positions = scatter(n, placement, cfg.mobility);
  const auto sources = init_sources(traffic, cfg.scenario, n);
  PacketLedger ledger(sources, cfg.scenario.updates());
  auto buffers = make_buffers(n, ledger);

  LinkSet omni = disk_links(positions, cfg.r);
  std::vector<BeamDecision> decisions(static_cast<std::size_t>(n));
  for (NodeId v = 0; v < n; ++v) decisions[static_cast<std::size_t>(v)].node_id = v;
  std::vector<double> stability(static_cast<std::size_t>(n), 0.0);

  const auto disseminate = [&](int t, const LinkSet& links) {
    for (const auto& p : generate(t, sources, cfg.scenario, traffic))
      ledger.emit(p, t, buffers);
    buffers = broadcast_step(links, buffers, ledger.updates());
    result.coverage.push_back(coverage(buffers, ledger));
    result.beamformer_count.push_back(beamformer_count(decisions));
    if (observer)
      observer({t, &positions, &omni, &links, &decisions, &stability,
                result.coverage.back()});
  };

  disseminate(0, omni);
  auto records = neighbor_records(positions, omni);

  for (int t = 1; t <= cfg.T; ++t) {
    const Positions previous = positions;
    if (!cfg.freeze_mobility) positions = step(positions, mobility, law);
    const LinkSet previous_omni = omni;
    omni = disk_links(positions, cfg.r);

    const bool predicts =
        cfg.policy == PolicyKind::Proposed || cfg.policy == PolicyKind::Random;
    if (predicts) {
      for (NodeId v = 0; v < n; ++v) {
        PredictionInput in;
        in.own_new_position = positions.col(v);
        in.own_jump = (positions.col(v) - previous.col(v)).norm();
        in.records = records[static_cast<std::size_t>(v)];
        in.r = cfg.r;
        stability[static_cast<std::size_t>(v)] =
            predict_node_stability(in, law, cfg.quadrature);
      }
    } else if (cfg.policy == PolicyKind::Neighborhood) {
      for (NodeId v = 0; v < n; ++v) {
        const auto& o = previous_omni.out(v);
        const auto& w = omni.out(v);
        stability[static_cast<std::size_t>(v)] = neighborhood_stability(
            std::set<NodeId>(o.begin(), o.end()), std::set<NodeId>(w.begin(), w.end()));
      }
    }

    const NetworkView view{&positions, &omni, stability};
    switch (cfg.policy) {
      case PolicyKind::Proposed:
        decisions = decide_all(view, policy_rng, pcfg);
        break;
      case PolicyKind::Neighborhood:
        decisions = decide_neighborhood(view, policy_rng, pcfg);
        break;
      case PolicyKind::Random:
        decisions = decide_random(view, table_beamformer_count(view, pcfg),
                                  policy_rng, pcfg);
        break;
      case PolicyKind::None:
        for (NodeId v = 0; v < n; ++v)
          decisions[static_cast<std::size_t>(v)] = BeamDecision{v, {}, BeamAction::StayOmni, 1, 0.0, {}};
        break;
    }

    const LinkSet links = build_graph(positions, omni, decisions, pcfg);
    disseminate(t, links);
    records = neighbor_records(positions, omni);
  }
  return result;
}

Aggregate aggregate(std::vector<RunResult> runs) {
  Aggregate agg;
  agg.n_runs = static_cast<int>(runs.size());
  if (runs.empty()) return agg;
  const std::size_t len = runs.front().coverage.size();
  agg.mean.assign(len, 0.0);
  agg.half_width.assign(len, 0.0);
  const double n = static_cast<double>(runs.size());
  double quantile = 0.0;
  if (runs.size() >= 2) {
    const boost::math::students_t dist(n - 1.0);
    quantile = boost::math::quantile(dist, 0.975);
  }
  for (std::size_t t = 0; t < len; ++t) {
    double sum = 0.0;
    for (const auto& r : runs) sum += r.coverage[t];
    const double mean = sum / n;
    double ss = 0.0;
    for (const auto& r : runs) ss += (r.coverage[t] - mean) * (r.coverage[t] - mean);
    agg.mean[t] = mean;
    if (runs.size() >= 2) agg.half_width[t] = quantile * std::sqrt(ss / (n - 1.0) / n);
  }
  agg.runs = std::move(runs);
  return agg;
}

Aggregate run_experiment(const ExperimentConfig& cfg) {
  cfg.validate();
  const int total = cfg.n_topologies;
  std::vector<RunResult> runs(static_cast<std::size_t>(total));
  std::atomic<int> next{0};
  const auto worker = [&] {
    for (int i = next++; i < total; i = next++)
      runs[static_cast<std::size_t>(i)] = run_once(cfg, cfg.seed + static_cast<std::uint64_t>(i));
  };
  const int threads = std::min(cfg.workers, total);
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (int k = 0; k < threads; ++k) pool.emplace_back(worker);
  }
  return aggregate(std::move(runs));
}

int time_to_coverage(const std::vector<double>& series, double threshold) {
  for (std::size_t t = 0; t < series.size(); ++t)
    if (series[t] >= threshold) return static_cast<int>(t);
  return static_cast<int>(series.size());
}

double median_time_to_coverage(const Aggregate& agg, double threshold) {
  std::vector<int> times;
  for (const auto& r : agg.runs) times.push_back(time_to_coverage(r.coverage, threshold));
  if (times.empty()) return 0.0;
  std::sort(times.begin(), times.end());
  const std::size_t k = times.size();
  return k % 2 ? times[k / 2] : 0.5 * (times[k / 2 - 1] + times[k / 2]);
}

const std::vector<std::string>& sweepable_parameters() {
  static const std::vector<std::string> names = {
      "rho", "alpha", "beta", "r", "M", "S_min", "S_max", "antenna_kind", "n_sources"};
  return names;
}

std::vector<SweepPoint> sweep_parameter(const ExperimentConfig& cfg,
                                        const std::string& name,
                                        const std::vector<std::string>& values) {
  const auto& allowed = sweepable_parameters();
  if (std::find(allowed.begin(), allowed.end(), name) == allowed.end())
    throw std::invalid_argument("cannot sweep unknown parameter '" + name + "'");
  std::vector<SweepPoint> out;
  for (const auto& v : values) {
    ExperimentConfig c = cfg;
    set_config_value(c, name == "antenna_kind" ? "antenna" : name, v);
    out.push_back({v, run_experiment(c)});
  }
  return out;
}

}  // namespace beamsim

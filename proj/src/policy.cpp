#include "beamsim/policy.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <ostream>
#include <stdexcept>

namespace beamsim {

std::string to_string(StabilityClass c) {
  switch (c) {
    case StabilityClass::Zero: return "zero";
    case StabilityClass::Low: return "low";
    case StabilityClass::Mid: return "mid";
    case StabilityClass::High: return "high";
  }
  return "?";
}

std::string to_string(DegreeClass c) {
  switch (c) {
    case DegreeClass::Zero: return "zero";
    case DegreeClass::Low: return "low";
    case DegreeClass::High: return "high";
  }
  return "?";
}

std::string to_string(NodeClass c) {
  return to_string(c.stability) + "/" + to_string(c.degree);
}

NodeClass classify(double S, int degree, const PolicyConfig& cfg) {
  NodeClass c;
  if (S <= 0.0)
    c.stability = StabilityClass::Zero;
  else if (S < cfg.S_min)
    c.stability = StabilityClass::Low;
  else if (S >= cfg.S_max)
    c.stability = StabilityClass::High;
  else
    c.stability = StabilityClass::Mid;

  if (degree <= 0)
    c.degree = DegreeClass::Zero;
  else if (degree >= cfg.degree_threshold)
    c.degree = DegreeClass::High;
  else
    c.degree = DegreeClass::Low;
  return c;
}

bool is_beamformer(NodeClass c) {
  return c.stability == StabilityClass::Low ||
         (c.stability == StabilityClass::Zero && c.degree == DegreeClass::Zero);
}

bool is_target(NodeClass target, NodeClass beamformer) {
  if (beamformer.stability == StabilityClass::Zero &&
      beamformer.degree == DegreeClass::Zero)
    return true;
  return target.stability == StabilityClass::High ||
         target.stability == StabilityClass::Zero;
}

BeamDecision sweep(const CandidateInfo& node,
                   std::span<const CandidateInfo> candidates, int m,
                   const PolicyConfig& cfg, TargetRule rule) {
  if (m < 2 || m > cfg.M) throw std::invalid_argument("sweep: m must lie in [2, M]");
  BeamDecision best;
  best.node_id = node.node_id;
  best.node_class = classify(node.stability, node.degree, cfg);

  const double width = sector_geometry(m, cfg.r).width;
  const int sectors = sector_count(m);

  // Candidates that pass the class rule, independent of direction.
  double max_reach = m * cfg.r;
  if (cfg.antenna == BeamKind::Ula)
    max_reach = cfg.r * std::pow(ula_peak_gain(m, cfg.antenna_cfg.electrical_spacing()),
                                 1.0 / cfg.antenna_cfg.path_loss_exponent);
  std::vector<const CandidateInfo*> eligible;
  std::vector<bool> high;
  for (const auto& c : candidates) {
    if (c.node_id == node.node_id) continue;
    if ((c.position - node.position).norm() > max_reach * (1.0 + 1e-9)) continue;
    const NodeClass cc = classify(c.stability, c.degree, cfg);
    if (rule == TargetRule::Table && (c.hop1 || !is_target(cc, best.node_class)))
      continue;
    eligible.push_back(&c);
    high.push_back(cc.stability == StabilityClass::High);
  }

  double best_weight = -1.0;
  std::size_t best_count = 0;
  for (int j = 0; j < sectors; ++j) {
    const double boresight = (j + 0.5) * width;
    const Beam beam = make_beam(cfg.antenna, node.position, boresight, m, cfg.r);
    double weight = 0.0;
    std::vector<NodeId> inside;
    for (std::size_t k = 0; k < eligible.size(); ++k) {
      if (!covers(beam, eligible[k]->position, cfg.antenna_cfg)) continue;
      inside.push_back(eligible[k]->node_id);
      if (rule == TargetRule::Table && high[k]) weight += eligible[k]->stability;
    }
    if (inside.empty()) continue;
    const bool better = weight > best_weight ||
                        (weight == best_weight && inside.size() > best_count);
    if (better) {
      best_weight = weight;
      best_count = inside.size();
      best.action = BeamAction::Beamform;
      best.m = m;
      best.boresight = boresight;
      best.targets = std::move(inside);
    }
  }
  if (best.action == BeamAction::StayOmni) {
    best.m = 1;
    best.boresight = 0.0;
  }
  return best;
}

std::vector<CandidateInfo> NetworkView::candidates_for(NodeId v) const {
  std::vector<CandidateInfo> out;
  const auto n = static_cast<NodeId>(positions->cols());
  out.reserve(static_cast<std::size_t>(n));
  for (NodeId u = 0; u < n; ++u) {
    CandidateInfo c;
    c.node_id = u;
    c.position = positions->col(u);
    c.stability = stability[static_cast<std::size_t>(u)];
    c.degree = degree(u);
    c.hop1 = omni->has(v, u);
    out.push_back(c);
  }
  return out;
}

namespace {

CandidateInfo self_info(const NetworkView& view, NodeId v) {
  CandidateInfo c;
  c.node_id = v;
  c.position = view.positions->col(v);
  c.stability = view.stability[static_cast<std::size_t>(v)];
  c.degree = view.degree(v);
  return c;
}

template <typename Select>
std::vector<BeamDecision> decide_by(const NetworkView& view, Rng& rng,
                                    const PolicyConfig& cfg, Select select) {
  const auto n = static_cast<NodeId>(view.positions->cols());
  std::vector<BeamDecision> decisions(static_cast<std::size_t>(n));
  for (NodeId v = 0; v < n; ++v) {
    const CandidateInfo self = self_info(view, v);
    const NodeClass c = classify(self.stability, self.degree, cfg);
    auto& d = decisions[static_cast<std::size_t>(v)];
    d.node_id = v;
    d.node_class = c;
    if (!select(self, c)) continue;
    const int m = uniform_int(rng, 2, cfg.M);
    const auto candidates = view.candidates_for(v);
    d = sweep(self, candidates, m, cfg, TargetRule::Table);
  }
  return decisions;
}

}  // namespace

std::vector<BeamDecision> decide_all(const NetworkView& view, Rng& rng,
                                     const PolicyConfig& cfg) {
  return decide_by(view, rng, cfg,
                   [](const CandidateInfo&, NodeClass c) { return is_beamformer(c); });
}

std::vector<BeamDecision> decide_neighborhood(const NetworkView& view, Rng& rng,
                                              const PolicyConfig& cfg) {
  return decide_by(view, rng, cfg, [&](const CandidateInfo& self, NodeClass) {
    return self.stability < cfg.S_min;
  });
}

std::vector<BeamDecision> decide_random(const NetworkView& view, int count,
                                        Rng& rng, const PolicyConfig& cfg) {
  const auto n = static_cast<NodeId>(view.positions->cols());
  if (count < 0 || count > n)
    throw std::invalid_argument("decide_random: count out of range");
  std::vector<NodeId> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  for (int i = 0; i < count; ++i)
    std::swap(order[static_cast<std::size_t>(i)],
              order[static_cast<std::size_t>(uniform_int(rng, i, n - 1))]);
  std::vector<NodeId> chosen(order.begin(), order.begin() + count);
  std::sort(chosen.begin(), chosen.end());

  std::vector<BeamDecision> decisions(static_cast<std::size_t>(n));
  for (NodeId v = 0; v < n; ++v) {
    auto& d = decisions[static_cast<std::size_t>(v)];
    d.node_id = v;
    d.node_class = classify(view.stability[static_cast<std::size_t>(v)], view.degree(v), cfg);
  }
  for (NodeId v : chosen) {
    const int m = uniform_int(rng, 2, cfg.M);
    const auto candidates = view.candidates_for(v);
    decisions[static_cast<std::size_t>(v)] =
        sweep(self_info(view, v), candidates, m, cfg, TargetRule::Anyone);
  }
  return decisions;
}

int beamformer_count(const std::vector<BeamDecision>& decisions) {
  return static_cast<int>(std::count_if(decisions.begin(), decisions.end(), [](const auto& d) {
    return d.action == BeamAction::Beamform;
  }));
}

int table_beamformer_count(const NetworkView& view, const PolicyConfig& cfg) {
  int count = 0;
  const auto n = static_cast<NodeId>(view.positions->cols());
  for (NodeId v = 0; v < n; ++v)
    count += is_beamformer(
        classify(view.stability[static_cast<std::size_t>(v)], view.degree(v), cfg));
  return count;
}

LinkSet handshake(const std::vector<BeamDecision>& decisions, int n) {
  LinkSet links(n);
  for (const auto& d : decisions) {
    if (d.action != BeamAction::Beamform) continue;
    for (NodeId t : d.targets) {
      links.add(d.node_id, t);
      links.add(t, d.node_id);
    }
  }
  return links;
}

void write_decision_log_header(std::ostream& os) {
  os << "t,node_id,class,action,m,boresight,target_count\n";
}

void write_decision_log(std::ostream& os, int t,
                        const std::vector<BeamDecision>& decisions) {
  const auto old_precision = os.precision(10);
  for (const auto& d : decisions)
    os << t << ',' << d.node_id << ',' << to_string(d.node_class) << ','
       << (d.action == BeamAction::Beamform ? "beamform" : "stay_omni") << ','
       << d.m << ',' << d.boresight << ',' << d.targets.size() << '\n';
  os.precision(old_precision);
}

}  // namespace beamsim

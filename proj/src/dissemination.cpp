#include "beamsim/dissemination.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <numeric>
#include <stdexcept>

namespace beamsim {

std::string to_string(ScenarioKind k) {
  switch (k) {
    case ScenarioKind::SsSp: return "SS-SP";
    case ScenarioKind::SsUp: return "SS-UP";
    case ScenarioKind::SsMp: return "SS-MP";
    case ScenarioKind::MsSp: return "MS-SP";
    case ScenarioKind::MsMp: return "MS-MP";
    case ScenarioKind::MsMpJoin: return "MS-MP-join";
  }
  return "?";
}

ScenarioKind parse_scenario(const std::string& text) {
  std::string s;
  for (char c : text) s.push_back(static_cast<char>(std::toupper(static_cast<unsigned char>(c))));
  std::replace(s.begin(), s.end(), '_', '-');
  if (s == "SS-SP") return ScenarioKind::SsSp;
  if (s == "SS-UP") return ScenarioKind::SsUp;
  if (s == "SS-MP") return ScenarioKind::SsMp;
  if (s == "MS-SP") return ScenarioKind::MsSp;
  if (s == "MS-MP") return ScenarioKind::MsMp;
  if (s == "MS-MP-JOIN") return ScenarioKind::MsMpJoin;
  throw std::invalid_argument("unknown scenario '" + text + "'");
}

bool ScenarioConfig::multi_source() const {
  return kind == ScenarioKind::MsSp || kind == ScenarioKind::MsMp ||
         kind == ScenarioKind::MsMpJoin;
}

void ScenarioConfig::validate(int T) const {
  if (n_sources < 1) throw std::invalid_argument("scenario: n_sources must be >= 1");
  if (gen_prob < 0.0 || gen_prob > 1.0)
    throw std::invalid_argument("scenario: gen_prob must lie in [0, 1]");
  // Only horizons the scenario uses are bound by T.
  const auto within = [T](int h, const char* what) {
    if (h < 0 || h > T)
      throw std::invalid_argument(std::string("scenario: ") + what + " must lie in [0, T]");
  };
  if (updates()) within(update_horizon, "update_horizon");
  if (kind == ScenarioKind::SsMp || kind == ScenarioKind::MsMp || kind == ScenarioKind::MsMpJoin)
    within(packet_gen_horizon, "packet_gen_horizon");
  if (kind == ScenarioKind::MsMpJoin) within(source_join_horizon, "source_join_horizon");
}

std::vector<Source> init_sources(Rng& rng, const ScenarioConfig& scenario,
                                 int n_nodes) {
  const int k = scenario.source_count();
  if (k > n_nodes) throw std::invalid_argument("init_sources: more sources than nodes");
  std::vector<NodeId> ids(static_cast<std::size_t>(n_nodes));
  std::iota(ids.begin(), ids.end(), 0);
  std::vector<Source> out;
  for (int i = 0; i < k; ++i) {
    std::swap(ids[static_cast<std::size_t>(i)],
              ids[static_cast<std::size_t>(uniform_int(rng, i, n_nodes - 1))]);
    Source s;
    s.node = ids[static_cast<std::size_t>(i)];
    if (scenario.kind == ScenarioKind::MsMpJoin)
      s.join_time = uniform_int(rng, 0, scenario.source_join_horizon);
    out.push_back(s);
  }
  return out;
}

std::vector<PacketId> generate(int t, const std::vector<Source>& sources,
                               const ScenarioConfig& scenario, Rng& rng) {
  std::vector<PacketId> out;
  switch (scenario.kind) {
    case ScenarioKind::SsSp:
    case ScenarioKind::MsSp:
      if (t == 0)
        for (const auto& s : sources) out.push_back({s.node, 0, 0});
      break;
    case ScenarioKind::SsUp:
      if (t == 0) {
        for (const auto& s : sources) out.push_back({s.node, 0, 0});
      } else if (t <= scenario.update_horizon) {
        for (const auto& s : sources)
          if (uniform01(rng) < scenario.gen_prob) out.push_back({s.node, 0, t});
      }
      break;
    case ScenarioKind::SsMp:
    case ScenarioKind::MsMp:
    case ScenarioKind::MsMpJoin:
      if (t <= scenario.packet_gen_horizon)
        for (const auto& s : sources) {
          // One draw per source per step keeps streams aligned across runs.
          const bool fire = uniform01(rng) < scenario.gen_prob;
          if (fire && t >= s.join_time) out.push_back({s.node, t, 0});
        }
      break;
  }
  return out;
}

void PacketBits::set(std::size_t i) {
  if (words_.size() <= i / 64) words_.resize(i / 64 + 1, 0);
  words_[i / 64] |= std::uint64_t{1} << (i % 64);
}

bool PacketBits::test(std::size_t i) const {
  return i / 64 < words_.size() && ((words_[i / 64] >> (i % 64)) & 1u);
}

void PacketBits::merge(const PacketBits& other) {
  if (words_.size() < other.words_.size()) words_.resize(other.words_.size(), 0);
  for (std::size_t w = 0; w < other.words_.size(); ++w) words_[w] |= other.words_[w];
}

bool PacketBits::contains(const PacketBits& other) const {
  for (std::size_t w = 0; w < other.words_.size(); ++w) {
    const std::uint64_t mine = w < words_.size() ? words_[w] : 0;
    if ((other.words_[w] & ~mine) != 0) return false;
  }
  return true;
}

std::size_t PacketBits::count() const {
  std::size_t n = 0;
  for (auto w : words_) n += static_cast<std::size_t>(std::popcount(w));
  return n;
}

PacketLedger::PacketLedger(const std::vector<Source>& sources, bool updates)
    : updates_(updates) {
  for (const auto& s : sources) source_nodes_.push_back(s.node);
  latest_.assign(source_nodes_.size(), -1);
}

int PacketLedger::slot_of(NodeId source) const {
  const auto it = std::find(source_nodes_.begin(), source_nodes_.end(), source);
  if (it == source_nodes_.end()) throw std::invalid_argument("packet from unknown source");
  return static_cast<int>(it - source_nodes_.begin());
}

void PacketLedger::emit(const PacketId& p, int t, std::vector<NodeBuffer>& buffers) {
  const std::size_t index = packets_.size();
  packets_.push_back(p);
  births_.push_back(t);
  emitted_.set(index);
  auto& own = buffers[static_cast<std::size_t>(p.source_id)];
  own.held.set(index);
  if (updates_) {
    const auto slot = static_cast<std::size_t>(slot_of(p.source_id));
    latest_[slot] = std::max(latest_[slot], p.version);
    own.latest_version[slot] = std::max(own.latest_version[slot], p.version);
  }
}

std::vector<PacketId> PacketLedger::held_packets(const NodeBuffer& b) const {
  std::vector<PacketId> out;
  for (std::size_t i = 0; i < packets_.size(); ++i) {
    if (updates_) {
      const auto slot = static_cast<std::size_t>(slot_of(packets_[i].source_id));
      if (packets_[i].version == b.latest_version[slot]) out.push_back(packets_[i]);
    } else if (b.held.test(i)) {
      out.push_back(packets_[i]);
    }
  }
  return out;
}

std::vector<NodeBuffer> make_buffers(int n, const PacketLedger& ledger) {
  NodeBuffer empty;
  empty.latest_version.assign(ledger.source_slots(), -1);
  return std::vector<NodeBuffer>(static_cast<std::size_t>(n), empty);
}

std::vector<NodeBuffer> broadcast_step(const LinkSet& links,
                                       const std::vector<NodeBuffer>& buffers,
                                       bool updates) {
  std::vector<NodeBuffer> next = buffers;
  for (NodeId u = 0; u < links.size(); ++u) {
    const auto& from = buffers[static_cast<std::size_t>(u)];
    for (NodeId v : links.out(u)) {
      auto& to = next[static_cast<std::size_t>(v)];
      to.held.merge(from.held);
      if (updates)
        for (std::size_t s = 0; s < to.latest_version.size(); ++s)
          to.latest_version[s] = std::max(to.latest_version[s], from.latest_version[s]);
    }
  }
  return next;
}

double coverage(const std::vector<NodeBuffer>& buffers, const PacketLedger& ledger) {
  if (buffers.empty() || ledger.empty()) return 0.0;
  std::size_t complete = 0;
  for (const auto& b : buffers) {
    bool ok = true;
    if (ledger.updates()) {
      const auto& latest = ledger.latest_emitted();
      for (std::size_t s = 0; s < latest.size() && ok; ++s)
        ok = latest[s] < 0 || b.latest_version[s] >= latest[s];
    } else {
      ok = b.held.contains(ledger.emitted());
    }
    complete += ok;
  }
  return static_cast<double>(complete) / static_cast<double>(buffers.size());
}

}  // namespace beamsim

#include <doctest.h>

#include "beamsim/dissemination.hpp"
#include "beamsim/mobility.hpp"
#include "oracles.hpp"

#include <set>

using namespace beamsim;

namespace {

ScenarioConfig scenario(ScenarioKind k) {
  ScenarioConfig s;
  s.kind = k;
  return s;
}

struct World {
  std::vector<Source> sources;
  PacketLedger ledger;
  std::vector<NodeBuffer> buffers;
};

World single_packet_world(int n, NodeId src) {
  World w;
  w.sources = {{src, 0}};
  w.ledger = PacketLedger(w.sources, false);
  w.buffers = make_buffers(n, w.ledger);
  w.ledger.emit({src, 0, 0}, 0, w.buffers);
  return w;
}

}  // namespace

TEST_CASE("scenario names round-trip") {
  for (auto k : {ScenarioKind::SsSp, ScenarioKind::SsUp, ScenarioKind::SsMp, ScenarioKind::MsSp,
                 ScenarioKind::MsMp, ScenarioKind::MsMpJoin})
    CHECK(parse_scenario(to_string(k)) == k);
  CHECK(parse_scenario("ms_mp_join") == ScenarioKind::MsMpJoin);
  CHECK_THROWS_AS(parse_scenario("XX"), std::invalid_argument);
}

TEST_CASE("source selection") {
  Rng rng(1);
  CHECK(init_sources(rng, scenario(ScenarioKind::SsSp), 250).size() == 1);
  const auto ms = init_sources(rng, scenario(ScenarioKind::MsSp), 250);
  CHECK(ms.size() == 40);
  std::set<NodeId> distinct;
  for (const auto& s : ms) {
    distinct.insert(s.node);
    CHECK(s.join_time == 0);
  }
  CHECK(distinct.size() == 40);
  for (int trial = 0; trial < 20; ++trial)
    for (const auto& s : init_sources(rng, scenario(ScenarioKind::MsMpJoin), 250)) {
      CHECK(s.join_time >= 0);
      CHECK(s.join_time <= 20);
    }
  CHECK_THROWS_AS(init_sources(rng, scenario(ScenarioKind::MsSp), 10), std::invalid_argument);
}

TEST_CASE("packet generation schedules") {
  Rng rng(2);
  const auto ss = init_sources(rng, scenario(ScenarioKind::SsSp), 50);
  const auto ms = init_sources(rng, scenario(ScenarioKind::MsSp), 50);
  CHECK(generate(0, ss, scenario(ScenarioKind::SsSp), rng).size() == 1);
  CHECK(generate(0, ms, scenario(ScenarioKind::MsSp), rng).size() == 40);
  CHECK(generate(1, ms, scenario(ScenarioKind::MsSp), rng).empty());

  const ScenarioConfig up = scenario(ScenarioKind::SsUp);
  CHECK(generate(0, ss, up, rng).size() == 1);
  for (int t = 11; t <= 100; ++t) CHECK(generate(t, ss, up, rng).empty());
  for (int t = 1; t <= 10; ++t)
    for (const auto& p : generate(t, ss, up, rng)) CHECK(p.version == t);

  const ScenarioConfig join = scenario(ScenarioKind::MsMpJoin);
  Rng r2(3);
  const auto js = init_sources(r2, join, 250);
  for (int t = 0; t <= 100; ++t)
    for (const auto& p : generate(t, js, join, r2)) {
      const auto it = std::find_if(js.begin(), js.end(), [&](const Source& s) { return s.node == p.source_id; });
      CHECK(t >= it->join_time);
      CHECK(t <= 30);
    }
}

TEST_CASE("multi-packet generation matches the binomial mean") {
  const ScenarioConfig mp = scenario(ScenarioKind::MsMp);
  double total = 0;
  long sources = 0;
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    Rng rng(seed);
    const auto src = init_sources(rng, mp, 250);
    for (int t = 0; t <= 100; ++t) total += static_cast<double>(generate(t, src, mp, rng).size());
    sources += static_cast<long>(src.size());
  }
  // Steps 0..30 each fire with probability 0.5.
  const double per_source = total / static_cast<double>(sources);
  const double expected = 31 * 0.5;
  const double se = std::sqrt(31 * 0.25 / static_cast<double>(sources));
  CHECK(std::abs(per_source - expected) < 4 * se);
}

TEST_CASE("chain propagation is synchronous") {
  World w = single_packet_world(3, 0);
  LinkSet chain(3);
  chain.add(0, 1);
  chain.add(1, 2);
  auto b1 = broadcast_step(chain, w.buffers, false);
  CHECK(b1[1].held.test(0));
  CHECK_FALSE(b1[2].held.test(0));
  auto b2 = broadcast_step(chain, b1, false);
  CHECK(b2[2].held.test(0));
  CHECK(coverage(b2, w.ledger) == 1.0);
  CHECK(broadcast_step(LinkSet(3), w.buffers, false) == w.buffers);
}

TEST_CASE("update mode keeps the newest version") {
  World w;
  w.sources = {{0, 0}};
  w.ledger = PacketLedger(w.sources, true);
  w.buffers = make_buffers(2, w.ledger);
  w.ledger.emit({0, 0, 2}, 2, w.buffers);
  w.buffers[1].latest_version[0] = 3;
  LinkSet l(2);
  l.add(0, 1);
  const auto next = broadcast_step(l, w.buffers, true);
  CHECK(next[1].latest_version[0] == 3);
  CHECK(coverage(next, w.ledger) == 1.0);
  w.ledger.emit({0, 0, 5}, 5, w.buffers);
  CHECK(coverage(w.buffers, w.ledger) == 0.5);
  CHECK(w.ledger.held_packets(w.buffers[0]).front().version == 5);
}

TEST_CASE("coverage conventions") {
  World w;
  w.sources = {{0, 0}};
  w.ledger = PacketLedger(w.sources, false);
  w.buffers = make_buffers(4, w.ledger);
  CHECK(coverage(w.buffers, w.ledger) == 0.0);
  w.ledger.emit({0, 0, 0}, 0, w.buffers);
  w.buffers[1].held.set(0);
  CHECK(coverage(w.buffers, w.ledger) == 0.5);
}

TEST_CASE("SI broadcast on a frozen graph equals BFS layering") {
  const MobilityConfig mc;
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    Rng rng(seed);
    const Positions pos = scatter(30, rng, mc);
    const LinkSet links = disk_links(pos, 120.0);
    std::vector<std::vector<int>> adj(30);
    for (int u = 0; u < 30; ++u) adj[u] = links.out(u);
    const std::vector<int> srcs = {static_cast<int>(seed % 30), static_cast<int>((seed * 7 + 3) % 30)};
    const auto dist = oracle::bfs_layers(adj, srcs);

    World w;
    for (int s : srcs) w.sources.push_back({s, 0});
    if (srcs[0] == srcs[1]) w.sources.pop_back();
    w.ledger = PacketLedger(w.sources, false);
    w.buffers = make_buffers(30, w.ledger);
    // One packet known at every source: the layers are reached in step k.
    w.ledger.emit({srcs[0], 0, 0}, 0, w.buffers);
    for (int s : srcs) w.buffers[static_cast<std::size_t>(s)].held.set(0);
    for (int k = 0; k <= 30; ++k) {
      for (int v = 0; v < 30; ++v) {
        const bool expect = dist[v] >= 0 && dist[v] <= k;
        REQUIRE(w.buffers[static_cast<std::size_t>(v)].held.test(0) == expect);
      }
      w.buffers = broadcast_step(links, w.buffers, false);
    }
  }
}

TEST_CASE("static connected graph saturates within its diameter") {
  // 5-cycle plus a pendant: diameter 3.
  LinkSet g(6);
  for (int i = 0; i < 5; ++i) g.add_symmetric(i, (i + 1) % 5);
  g.add_symmetric(2, 5);
  World w = single_packet_world(6, 0);
  for (int k = 0; k < 3; ++k) w.buffers = broadcast_step(g, w.buffers, false);
  CHECK(coverage(w.buffers, w.ledger) == 1.0);
}

TEST_CASE("packet bits") {
  PacketBits a, b;
  a.set(3);
  a.set(130);
  b.set(3);
  CHECK(a.contains(b));
  CHECK_FALSE(b.contains(a));
  b.merge(a);
  CHECK(b.count() == 2);
  CHECK(b.test(130));
  CHECK_FALSE(b.test(1000));
}

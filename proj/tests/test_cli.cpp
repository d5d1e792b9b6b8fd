#include <doctest.h>

#include "beamsim/cli.hpp"
#include "beamsim/config.hpp"
#include "beamsim/stability.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace beamsim;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  int code;
  std::string out, err;
};

Outcome cli(std::vector<std::string> args) {
  std::ostringstream o, e;
  const int code = run_cli(args, o, e);
  return {code, o.str(), e.str()};
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream is(text);
  for (std::string l; std::getline(is, l);) out.push_back(l);
  return out;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "beamsim_cli_tests";
  fs::create_directories(dir);
  return dir / name;
}

const std::vector<std::string> kQuick = {"--set", "n_topologies=2", "--set", "T=30",
                                         "--no-timestamp"};

std::vector<std::string> with_quick(std::vector<std::string> a) {
  a.insert(a.end(), kQuick.begin(), kQuick.end());
  return a;
}

}  // namespace

TEST_CASE("config parsing") {
  std::istringstream in(
      "# comment\n"
      "T = 40\n"
      "[mobility]\n"
      "alpha = 1.4   ; trailing\n"
      "[scenario]\n"
      "scenario = MS-MP-join\n"
      "[antenna]\n"
      "antenna = sector\n");
  const ExperimentConfig c = parse_config(in);
  CHECK(c.T == 40);
  CHECK(c.mobility.alpha == 1.4);
  CHECK(c.scenario.kind == ScenarioKind::MsMpJoin);
  CHECK(c.antenna == BeamKind::Sector);

  std::istringstream bad_key("[mobility]\ngamma = 3\n");
  try {
    parse_config(bad_key);
    FAIL("expected a config error");
  } catch (const ConfigError& e) {
    CHECK(e.key() == "mobility.gamma");
  }
  std::istringstream wrong_section("[policy]\nalpha = 3\n");
  CHECK_THROWS_AS(parse_config(wrong_section), ConfigError);
  ExperimentConfig o;
  apply_override(o, "mobility.beta=100");
  apply_override(o, "antenna_kind=sector");
  CHECK(o.mobility.beta == 100.0);
  CHECK(o.antenna == BeamKind::Sector);
  CHECK_THROWS_AS(apply_override(o, "beta"), ConfigError);
  CHECK_THROWS_AS(apply_override(o, "beta=abc"), ConfigError);
}

TEST_CASE("config round-trip and defaults") {
  ExperimentConfig c;
  c.mobility.alpha = 1.8;
  c.policy = PolicyKind::Random;
  c.scenario.gen_prob = 0.25;
  std::ostringstream os;
  write_config(os, c);
  std::istringstream is(os.str());
  const ExperimentConfig back = parse_config(is);
  CHECK(config_entries(back) == config_entries(c));

  // An empty file reproduces the defaults.
  std::istringstream empty("");
  CHECK(config_entries(parse_config(empty)) == config_entries(ExperimentConfig{}));
}

TEST_CASE("run writes T+1 rows and the metadata header") {
  const Outcome r = cli(with_quick({"run"}));
  REQUIRE(r.code == kExitOk);
  const auto ls = lines(r.out);
  const auto header = std::find(ls.begin(), ls.end(), "t,mean_coverage,ci_low,ci_high,policy,scenario");
  REQUIRE(header != ls.end());
  CHECK(std::distance(header + 1, ls.end()) == 31);
  CHECK(std::find(ls.begin(), ls.end(), "# mobility.alpha = 1.6") != ls.end());
  CHECK(std::find(ls.begin(), ls.end(), "# seeds = 1..2") != ls.end());
  CHECK(ls.back().rfind("30,", 0) == 0);
  CHECK(ls.back().find(",proposed,SS-SP") != std::string::npos);
}

TEST_CASE("identical invocations give byte-identical files") {
  const fs::path a = scratch("a.csv"), b = scratch("b.csv");
  REQUIRE(cli(with_quick({"run", "--out", a.string(), "--seed", "7"})).code == kExitOk);
  REQUIRE(cli(with_quick({"run", "--out", b.string(), "--seed", "7"})).code == kExitOk);
  CHECK(slurp(a) == slurp(b));
  // Worker count changes only its own metadata line.
  const Outcome par = cli(with_quick({"run", "--seed", "7", "--workers", "2"}));
  const std::string serial = slurp(a);
  const auto body = [](const std::string& s) { return s.substr(s.find("\nt,mean_coverage")); };
  CHECK(body(par.out) == body(serial));
  CHECK(slurp(a).find("# network.seed = 7") != std::string::npos);
  // Timestamps appear unless suppressed.
  const Outcome stamped = cli({"run", "--set", "n_topologies=2", "--set", "T=30"});
  CHECK(stamped.out.find("# generated = ") != std::string::npos);
}

TEST_CASE("sweep tags one block per value") {
  const Outcome r = cli(with_quick({"sweep", "r=20,30,40"}));
  REQUIRE(r.code == kExitOk);
  int blocks = 0;
  for (const auto& l : lines(r.out)) blocks += l.rfind("# sweep r = ", 0) == 0;
  CHECK(blocks == 3);
  CHECK(r.out.find("# sweep r = 40") != std::string::npos);
  CHECK(cli(with_quick({"sweep", "T=10,20"})).code == kExitConfig);
  CHECK(cli(with_quick({"sweep", "r=20,abc"})).code == kExitConfig);
}

TEST_CASE("config and I/O errors map to exit codes") {
  const Outcome unknown = cli({"run", "--set", "bogus=1"});
  CHECK(unknown.code == kExitConfig);
  CHECK(unknown.err.find("bogus") != std::string::npos);

  const fs::path cfg = scratch("bad.ini");
  std::ofstream(cfg) << "[network]\nr = thirty\n";
  const Outcome bad = cli({"run", "--config", cfg.string()});
  CHECK(bad.code == kExitConfig);
  CHECK(bad.err.find("network.r") != std::string::npos);

  CHECK(cli({"run", "--set", "S_min=2"}).code == kExitConfig);
  CHECK(cli({"frobnicate"}).code == kExitConfig);
  CHECK(cli({"run", "--config", scratch("missing.ini").string()}).code == kExitIo);
  CHECK(cli(with_quick({"run", "--out", "/nonexistent-dir/x.csv"})).code == kExitIo);
}

TEST_CASE("entropy subcommand") {
  const Outcome w = cli({"entropy", "--worst-case", "--ell", "4"});
  REQUIRE(w.code == kExitOk);
  CHECK(w.out.find("T = " + std::to_string(worst_case_T(4, 0)) + "\n") != std::string::npos);
  CHECK(w.out.find("T = 98\n") != std::string::npos);
  CHECK(w.out.find("n = 30\n") != std::string::npos);
  const Outcome b = cli({"entropy", "--bits", "111"});
  REQUIRE(b.code == kExitOk);
  CHECK(b.out.find("n = 2\n") != std::string::npos);
  CHECK(b.out.find("entropy = 0.46209812") != std::string::npos);
  CHECK(cli({"entropy", "--bits", "01"}).out.find("undefined") != std::string::npos);
  CHECK(cli({"entropy", "--bits", "012"}).code == kExitConfig);
  CHECK(cli({"entropy"}).code == kExitConfig);
  CHECK(cli({"entropy", "--best-case", "--ell", "3", "--Z", "5"}).code == kExitConfig);
}

TEST_CASE("gain subcommand") {
  const Outcome g = cli({"gain", "--m", "8", "--points", "360"});
  REQUIRE(g.code == kExitOk);
  const auto ls = lines(g.out);
  CHECK(ls.front() == "phi,gain,reach");
  CHECK(ls.size() == 361);
  CHECK(cli({"gain", "--antenna", "sector", "--m", "3"}).code == kExitOk);
  CHECK(cli({"gain", "--antenna", "uca"}).code == kExitConfig);
  CHECK(cli({"gain", "--steer", "30", "--m", "4"}).code == kExitOk);
}

TEST_CASE("metrics subcommand replays traces") {
  const fs::path trace = scratch("trace.csv");
  const Outcome sim = cli({"metrics", "--set", "T=5", "--trace-out", trace.string()});
  REQUIRE(sim.code == kExitOk);
  CHECK(lines(sim.out).size() == 6);  // header + five consecutive pairs
  const Outcome replay = cli({"metrics", "--set", "T=5", "--trace", trace.string()});
  REQUIRE(replay.code == kExitOk);
  CHECK(replay.out == sim.out);

  const fs::path broken = scratch("broken.csv");
  std::ofstream(broken) << "t,node,x,y\n0,0,1\n";
  CHECK(cli({"metrics", "--trace", broken.string()}).code == kExitConfig);
}

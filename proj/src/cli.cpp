#include "beamsim/cli.hpp"

#include "beamsim/antenna.hpp"
#include "beamsim/config.hpp"
#include "beamsim/engine.hpp"
#include "beamsim/policy.hpp"
#include "beamsim/report.hpp"
#include "beamsim/stability.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <sstream>

namespace beamsim {
namespace {

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Common {
  std::string config_path;
  std::vector<std::string> overrides;
  std::string out_path;
  long long seed = -1;
  int workers = 0;
  bool no_timestamp = false;
};

ExperimentConfig resolve_config(const Common& c) {
  ExperimentConfig cfg;
  if (!c.config_path.empty()) {
    std::ifstream in(c.config_path);
    if (!in) throw IoError("cannot open config file '" + c.config_path + "'");
    cfg = parse_config(in);
  }
  for (const auto& o : c.overrides) apply_override(cfg, o);
  if (c.seed >= 0) cfg.seed = static_cast<std::uint64_t>(c.seed);
  if (c.workers > 0) cfg.workers = c.workers;
  try {
    cfg.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError("", std::string("invalid configuration: ") + e.what());
  }
  return cfg;
}

// Output goes to a string first so a failed run never leaves a partial file.
void emit(const Common& c, const std::string& text, std::ostream& fallback) {
  if (c.out_path.empty()) {
    fallback << text;
    return;
  }
  std::ofstream f(c.out_path, std::ios::binary | std::ios::trunc);
  if (!f) throw IoError("cannot write output file '" + c.out_path + "'");
  f << text;
  if (!f) throw IoError("failed writing output file '" + c.out_path + "'");
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep))
    if (!item.empty()) out.push_back(item);
  return out;
}

// Positions trace: rows "t,node,x,y" with an optional header.
std::vector<Snapshot> read_trace(const std::string& path, double r) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open trace file '" + path + "'");
  std::map<int, std::map<int, Position>> steps;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#' || line.rfind("t,", 0) == 0) continue;
    const auto f = split(line, ',');
    if (f.size() != 4)
      throw ConfigError("trace", "trace line " + std::to_string(lineno) + ": expected t,node,x,y");
    try {
      steps[std::stoi(f[0])][std::stoi(f[1])] = Position(std::stod(f[2]), std::stod(f[3]));
    } catch (const std::exception&) {
      throw ConfigError("trace", "trace line " + std::to_string(lineno) + ": bad number");
    }
  }
  std::vector<Snapshot> out;
  for (const auto& [t, nodes] : steps) {
    Positions p(2, static_cast<Eigen::Index>(nodes.size()));
    Eigen::Index i = 0;
    for (const auto& [id, pos] : nodes) {
      if (id != i) throw ConfigError("trace", "trace step " + std::to_string(t) + ": node ids must be 0..n-1");
      p.col(i++) = pos;
    }
    out.push_back(disk_snapshot(p, r, t));
  }
  return out;
}

std::vector<Snapshot> simulate_trace(const ExperimentConfig& cfg) {
  std::vector<Snapshot> out;
  ExperimentConfig c = cfg;
  c.policy = PolicyKind::None;
  run_once(c, cfg.seed, [&](const StepRecord& s) {
    out.push_back(disk_snapshot(*s.positions, cfg.r, s.t));
  });
  return out;
}

void write_trace(std::ostream& os, const std::vector<Snapshot>& snaps) {
  os << "t,node,x,y\n";
  os.precision(12);
  for (const auto& s : snaps)
    for (Eigen::Index i = 0; i < s.positions.cols(); ++i)
      os << s.t << ',' << i << ',' << s.positions(0, i) << ',' << s.positions(1, i) << '\n';
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Beamforming-assisted dissemination simulator"};
  app.require_subcommand(1);
  Common common;
  const auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", common.config_path, "Config file");
    sub->add_option("--set", common.overrides, "Override key=value (repeatable)");
    sub->add_option("--out", common.out_path, "Output file (default stdout)");
    sub->add_option("--seed", common.seed, "Base seed");
    sub->add_option("--workers", common.workers, "Parallel runs");
    sub->add_flag("--no-timestamp", common.no_timestamp, "Omit the timestamp line");
  };

  auto* run = app.add_subcommand("run", "Run an experiment and write the aggregate table");
  add_common(run);
  std::string decision_log;
  run->add_option("--decision-log", decision_log, "Per-step decisions of the first topology");

  auto* sweep = app.add_subcommand("sweep", "Sweep one parameter");
  add_common(sweep);
  std::string sweep_spec;
  sweep->add_option("spec", sweep_spec, "name=v1,v2,...")->required();

  auto* metrics = app.add_subcommand("metrics", "Stability metrics over consecutive snapshots");
  add_common(metrics);
  std::string trace_path, trace_out;
  double nu_fraction = 0.5;
  metrics->add_option("--trace", trace_path, "Positions trace t,node,x,y (default: simulate)");
  metrics->add_option("--trace-out", trace_out, "Write the simulated trace here");
  metrics->add_option("--nu-fraction", nu_fraction, "Rank overlap list size as a fraction of |V|");

  auto* gain = app.add_subcommand("gain", "Gain pattern table");
  add_common(gain);
  int gain_m = 8;
  std::string gain_kind = "ula";
  double boresight_deg = 0.0;
  double steer_deg = std::nan("");
  int points = 360;
  gain->add_option("--m", gain_m, "Antenna elements");
  gain->add_option("--antenna", gain_kind, "ula | sector | omni");
  gain->add_option("--boresight", boresight_deg, "Boresight in degrees");
  gain->add_option("--steer", steer_deg,
                   "ULA only: fixed array axis along x, phase-steered this many degrees off the axis");
  gain->add_option("--points", points, "Samples over the circle")->check(CLI::PositiveNumber);

  auto* entropy = app.add_subcommand("entropy", "Link entropy of a bit sequence");
  add_common(entropy);
  std::string bits;
  bool worst = false, best = false;
  int ell = 0;
  long long z = 0;
  entropy->add_option("--bits", bits, "Sequence of 0/1");
  entropy->add_flag("--worst-case", worst, "Generate the worst-case sequence");
  entropy->add_flag("--best-case", best, "Generate the all-ones sequence");
  entropy->add_option("--ell", ell, "Longest word length for generated sequences");
  entropy->add_option("--Z", z, "Best case: extra symbols beyond ell(ell+1)/2");

  std::vector<std::string> argv(args.rbegin(), args.rend());
  try {
    app.parse(argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "beamsim: " << e.what() << '\n';
    return kExitConfig;
  }

  ReportOptions ropt;
  ropt.timestamp = !common.no_timestamp;
  try {
    std::ostringstream text;
    if (*run) {
      const ExperimentConfig cfg = resolve_config(common);
      const Aggregate agg = run_experiment(cfg);
      write_aggregate(text, cfg, agg, ropt);
      if (!decision_log.empty()) {
        std::ofstream log(decision_log, std::ios::trunc);
        if (!log) throw IoError("cannot write decision log '" + decision_log + "'");
        write_decision_log_header(log);
        run_once(cfg, cfg.seed, [&](const StepRecord& s) {
          write_decision_log(log, s.t, *s.decisions);
        });
      }
    } else if (*sweep) {
      const ExperimentConfig cfg = resolve_config(common);
      const auto eq = sweep_spec.find('=');
      if (eq == std::string::npos)
        throw ConfigError(sweep_spec, "sweep spec must look like name=v1,v2,...");
      const std::string name = sweep_spec.substr(0, eq);
      const auto values = split(sweep_spec.substr(eq + 1), ',');
      if (values.empty()) throw ConfigError(name, "sweep needs at least one value");
      const auto& allowed = sweepable_parameters();
      if (std::find(allowed.begin(), allowed.end(), name) == allowed.end())
        throw ConfigError(name, "cannot sweep unknown parameter '" + name + "'");
      for (const auto& v : values) {
        ExperimentConfig probe = cfg;
        set_config_value(probe, name == "antenna_kind" ? "antenna" : name, v);
      }
      const auto points_out = sweep_parameter(cfg, name, values);
      write_sweep(text, cfg, name == "antenna_kind" ? "antenna" : name, points_out, ropt);
    } else if (*metrics) {
      const ExperimentConfig cfg = resolve_config(common);
      const auto snaps = trace_path.empty() ? simulate_trace(cfg) : read_trace(trace_path, cfg.r);
      if (!trace_out.empty()) {
        std::ofstream t(trace_out, std::ios::trunc);
        if (!t) throw IoError("cannot write trace '" + trace_out + "'");
        write_trace(t, snaps);
      }
      write_metric_report(text, metric_report(snaps, nu_fraction));
    } else if (*gain) {
      const ExperimentConfig cfg = resolve_config(common);
      AntennaConfig acfg = cfg.antenna_cfg;
      const double boresight = boresight_deg * kPi / 180.0;
      if (!std::isnan(steer_deg)) {
        if (gain_kind != "ula") throw ConfigError("steer", "--steer applies to the ula antenna only");
        text << "phi,gain,reach\n";
        text.precision(10);
        const double steer = steer_deg * kPi / 180.0;
        for (int i = 0; i < points; ++i) {
          const double phi = kTwoPi * i / points;
          const double g = ula_steered_gain(phi, gain_m, steer, acfg.electrical_spacing());
          text << phi << ',' << g << ',' << cfg.r * std::pow(g, 1.0 / acfg.path_loss_exponent)
               << '\n';
        }
      } else {
        BeamKind kind;
        if (gain_kind == "omni")
          kind = BeamKind::Omni;
        else
          try {
            kind = parse_antenna(gain_kind);
          } catch (const std::invalid_argument& e) {
            throw ConfigError("antenna", e.what());
          }
        if (kind != BeamKind::Omni && gain_m < 2)
          throw ConfigError("m", "beams need m >= 2");
        const Beam beam = make_beam(kind, Position::Zero(), boresight, gain_m, cfg.r);
        write_gain_table(text, beam, acfg, points);
      }
    } else if (*entropy) {
      LinkHistory h;
      if (worst + best + !bits.empty() != 1)
        throw ConfigError("entropy", "give exactly one of --bits, --worst-case, --best-case");
      if ((worst || best) && ell < 1) throw ConfigError("ell", "--ell must be >= 1");
      try {
        if (worst) h = worst_case_sequence(ell);
        if (best) h = best_case_sequence(ell, z);
        if (!bits.empty()) h = LinkHistory::parse(bits);
      } catch (const std::invalid_argument& e) {
        throw ConfigError("entropy", e.what());
      }
      const auto T = static_cast<long long>(h.length());
      text.precision(10);
      text << "sequence = " << h.str() << '\n';
      text << "T = " << T << '\n';
      text << "n = " << lz_word_count(h) << '\n';
      if (T >= 3) {
        text << "entropy = " << link_entropy(h) << '\n';
        const EntropyCase c = best ? EntropyCase::Best : EntropyCase::Worst;
        const bool rem = best ? z != 0 : false;
        text << "closed_form_ell = " << closed_form_ell(T, c, rem) << '\n';
        if (!best) text << "closed_form_n = " << closed_form_n_worst(T, rem) << '\n';
      } else {
        text << "entropy = undefined (T < 3)\n";
      }
      if (worst) text << "worst_case_T = " << worst_case_T(ell, 0) << '\n';
      if (best) text << "best_case_T = " << best_case_T(ell, z) << '\n';
    }
    emit(common, text.str(), out);
  } catch (const ConfigError& e) {
    err << "beamsim: config error";
    if (!e.key().empty()) err << " [" << e.key() << "]";
    err << ": " << e.what() << '\n';
    return kExitConfig;
  } catch (const IoError& e) {
    err << "beamsim: " << e.what() << '\n';
    return kExitIo;
  } catch (const std::invalid_argument& e) {
    err << "beamsim: " << e.what() << '\n';
    return kExitConfig;
  }
  return kExitOk;
}

}  // namespace beamsim

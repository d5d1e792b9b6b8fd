#include "beamsim/report.hpp"

#include "beamsim/config.hpp"

#include <chrono>
#include <ctime>
#include <iomanip>
#include <ostream>

namespace beamsim {

void write_metadata(std::ostream& os, const ExperimentConfig& cfg,
                    const ReportOptions& opt) {
  os << "# beamsim results\n";
  if (opt.timestamp) {
    const std::time_t now =
        std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    os << "# generated = " << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ") << '\n';
  }
  for (const auto& [key, value] : config_entries(cfg))
    os << "# " << key << " = " << value << '\n';
  os << "# nodes = " << cfg.node_count() << '\n';
  os << "# seeds = " << cfg.seed << ".." << cfg.seed + cfg.n_topologies - 1 << '\n';
}

void write_aggregate_rows(std::ostream& os, const ExperimentConfig& cfg,
                          const Aggregate& agg, const ReportOptions& opt) {
  const auto old_precision = os.precision(8);
  for (double level : opt.milestones)
    os << "# median_time_to_" << level << " = " << median_time_to_coverage(agg, level)
       << '\n';
  os << "t,mean_coverage,ci_low,ci_high,policy,scenario\n";
  const std::string policy = to_string(cfg.policy);
  const std::string scenario = to_string(cfg.scenario.kind);
  for (std::size_t t = 0; t < agg.mean.size(); ++t)
    os << t << ',' << agg.mean[t] << ',' << agg.ci_low(t) << ',' << agg.ci_high(t) << ','
       << policy << ',' << scenario << '\n';
  os.precision(old_precision);
}

void write_aggregate(std::ostream& os, const ExperimentConfig& cfg,
                     const Aggregate& agg, const ReportOptions& opt) {
  write_metadata(os, cfg, opt);
  write_aggregate_rows(os, cfg, agg, opt);
}

void write_sweep(std::ostream& os, const ExperimentConfig& cfg,
                 const std::string& name, const std::vector<SweepPoint>& points,
                 const ReportOptions& opt) {
  write_metadata(os, cfg, opt);
  for (const auto& p : points) {
    os << "\n# sweep " << name << " = " << p.value << '\n';
    ExperimentConfig c = cfg;
    set_config_value(c, name, p.value);
    write_aggregate_rows(os, c, p.result, opt);
  }
}

}  // namespace beamsim

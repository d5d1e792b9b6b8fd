#pragma once

#include "beamsim/engine.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace beamsim {

struct ReportOptions {
  bool timestamp = true;
  // Coverage levels reported as median time-to-coverage in the header.
  std::vector<double> milestones = {0.9, 0.99};
};

// "# key = value" lines for every config entry plus the seed range.
void write_metadata(std::ostream& os, const ExperimentConfig& cfg,
                    const ReportOptions& opt);

// Header row and T+1 rows: t,mean_coverage,ci_low,ci_high,policy,scenario.
void write_aggregate_rows(std::ostream& os, const ExperimentConfig& cfg,
                          const Aggregate& agg, const ReportOptions& opt);

void write_aggregate(std::ostream& os, const ExperimentConfig& cfg,
                     const Aggregate& agg, const ReportOptions& opt);

void write_sweep(std::ostream& os, const ExperimentConfig& cfg,
                 const std::string& name, const std::vector<SweepPoint>& points,
                 const ReportOptions& opt);

}  // namespace beamsim

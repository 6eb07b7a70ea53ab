#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "nhc/config.hpp"
#include "nhc/run.hpp"

namespace nhc {

struct SweepPoint {
  double value = 0.0;
  bool ok = false;
  std::string error;   // set when the point failed
  RunSummary summary;  // valid when ok
};

struct SweepTable {
  std::vector<SweepPoint> points;  // sorted by swept value
  InverseFit inverse_fit;
  bool inverse_fit_valid = false;
  int n_failed = 0;

  std::string csv(const std::string& param) const;
};

/// Run every grid point (in parallel up to the plan's limit), write per-point
/// artifacts plus the aggregated CSV and the inverse-law fit JSON.
/// Point failures are recorded and the sweep continues.
SweepTable run_sweep(const SweepPlan& plan,
                     const std::filesystem::path& out_dir);

}  // namespace nhc

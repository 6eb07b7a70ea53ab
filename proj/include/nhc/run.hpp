#pragma once

#include <filesystem>
#include <optional>
#include <string>

#include "nhc/config.hpp"
#include "nhc/fitting.hpp"
#include "nhc/observables.hpp"

namespace nhc {

struct RunSummary {
  std::string name;
  double final_sz = 0.0;
  double final_time = 0.0;
  double threshold = 0.99;
  bool collapsed = false;          // |sz| reached the threshold
  int collapse_direction = 0;      // sign of the final polarization when collapsed
  std::optional<double> threshold_crossing_time;
  LogisticFit fit;
  std::optional<CollapseTime> tau;  // present for converged fits with b > 0
  double log_growth_total = 0.0;    // sum of log pre-normalization factors
  double boundary_mass_max = 0.0;
  bool boundary_warning = false;
  long n_steps = 0;
  long total_substeps = 0;

  std::string to_json_string() const;
};

struct RunOutcome {
  RunConfig config;
  Trajectory trajectory;
  RunSummary summary;
};

/// Build the operator and initial state from the config, evolve, fit.
/// Errors are rethrown with the failing stage named. No file output.
RunOutcome simulate(const RunConfig& config);

/// simulate() plus the artifact set: config.json, trajectory.csv, snapshot
/// and sz-density CSVs, fit.json, summary.json and a gnuplot script.
RunOutcome run_simulation(const RunConfig& config,
                          const std::filesystem::path& out_dir);

std::string trajectory_csv(const Trajectory& traj);
std::string fit_json(const LogisticFit& fit,
                     const std::optional<CollapseTime>& tau);

}  // namespace nhc

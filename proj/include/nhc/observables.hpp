#pragma once

#include <optional>
#include <string>
#include <vector>

#include "nhc/state.hpp"
#include "nhc/types.hpp"

namespace nhc {

/// Sampled record of one evolution run. Times are in hbar/gamma0 units.
struct Trajectory {
  std::vector<double> times;   // strictly increasing sample times
  std::vector<double> sz;      // <S_z> at each sample, in [-1, 1]
  std::vector<long> sample_steps;  // step index of each sample
  std::vector<double> growth;  // pre-normalization norm factor, one per step

  struct Snapshot {
    double time = 0.0;
    SpinorField field;
  };
  std::vector<Snapshot> snapshots;

  double dt = 0.0;
  long n_steps = 0;
  long total_substeps = 0;        // > n_steps when the exp action split a step
  double boundary_mass_max = 0.0; // peak mass seen in the outer 2-site frame
  bool boundary_warning = false;

  double total_growth() const;  // product of per-step growth factors
  void check_invariants() const;
};

/// Sum over sites of |up|^2 - |down|^2 (sigma_z convention, range [-1, 1]).
/// Throws if the state norm deviates from 1 by more than 1e-8.
double expect_sz(const SpinorField& state);

/// Per-site |up|^2 - |down|^2; sums to expect_sz for unit-norm states.
VectorXd sz_density(const SpinorField& state);

/// First time |sz| reaches the threshold, linearly interpolated between
/// samples; nullopt when never reached. Throws on an empty trajectory.
std::optional<double> collapse_time_threshold(const Trajectory& traj,
                                              double threshold);

/// Mass inside the outer `frame`-site border of the lattice.
double boundary_mass(const SpinorField& state, const LatticeSpec& lattice,
                     int frame = 2);

}  // namespace nhc

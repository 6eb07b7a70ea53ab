#include "nhc/observables.hpp"

#include <cmath>
#include <stdexcept>

namespace nhc {

double Trajectory::total_growth() const {
  double p = 1.0;
  for (double g : growth) p *= g;
  return p;
}

void Trajectory::check_invariants() const {
  if (times.size() != sz.size())
    throw std::logic_error("trajectory: times/sz size mismatch");
  for (size_t i = 1; i < times.size(); ++i)
    if (times[i] <= times[i - 1])
      throw std::logic_error("trajectory: times not strictly increasing");
  for (double v : sz)
    if (std::abs(v) > 1.0 + 1e-12)
      throw std::logic_error("trajectory: |sz| above 1");
}

double expect_sz(const SpinorField& state) {
  const double up = state.up.squaredNorm();
  const double down = state.down.squaredNorm();
  if (std::abs(up + down - 1.0) > 1e-8)
    throw std::invalid_argument("expect_sz requires a unit-norm state");
  return up - down;
}

VectorXd sz_density(const SpinorField& state) {
  return state.up.cwiseAbs2() - state.down.cwiseAbs2();
}

std::optional<double> collapse_time_threshold(const Trajectory& traj,
                                              double threshold) {
  if (traj.times.empty())
    throw std::invalid_argument("collapse_time_threshold: empty trajectory");
  if (!(threshold > 0.0 && threshold < 1.0))
    throw std::invalid_argument("collapse_time_threshold: threshold must be in (0,1)");

  double prev = std::abs(traj.sz[0]);
  if (prev >= threshold) return traj.times[0];
  for (size_t i = 1; i < traj.times.size(); ++i) {
    const double cur = std::abs(traj.sz[i]);
    if (cur >= threshold) {
      const double f = (threshold - prev) / (cur - prev);
      return traj.times[i - 1] + f * (traj.times[i] - traj.times[i - 1]);
    }
    prev = cur;
  }
  return std::nullopt;
}

double boundary_mass(const SpinorField& state, const LatticeSpec& lattice,
                     int frame) {
  double mass = 0.0;
  const bool use_y = lattice.ny > 2 * frame;  // skip the frame along degenerate axes
  for (int y = 0; y < lattice.ny; ++y) {
    const bool y_edge = use_y && (y < frame || y >= lattice.ny - frame);
    for (int x = 0; x < lattice.nx; ++x) {
      if (!y_edge && x >= frame && x < lattice.nx - frame) continue;
      const int i = lattice.site(x, y);
      mass += std::norm(state.up[i]) + std::norm(state.down[i]);
    }
  }
  return mass;
}

}  // namespace nhc

#pragma once

#include <vector>

#include "nhc/lattice.hpp"
#include "nhc/observables.hpp"
#include "nhc/state.hpp"
#include "nhc/types.hpp"

namespace nhc {

enum class EvolutionMethod { krylov, dense_oracle };

struct EvolutionConfig {
  double dt = 0.01;       // step in hbar/gamma0 units
  double t_max = 1.0;
  EvolutionMethod method = EvolutionMethod::krylov;
  int krylov_dim = 30;    // Arnoldi subspace cap
  double tol = 1e-12;     // relative accuracy of the exp action per step
  int record_every = 1;   // steps between samples
  double boundary_mass_threshold = 1e-4;  // warn level for the 2-site frame
};

/// Sampling plan for evolve(); snapshots are taken at the nearest step.
struct Recorder {
  std::vector<double> snapshot_times;
};

/// Dense matrix exponential by Pade approximation with scaling and squaring.
MatrixXcd expm_dense(const MatrixXcd& a);

struct ExpmvResult {
  VectorXcd vec;
  int krylov_dim_used = 0;
  int substeps = 1;  // > 1 when the step was split to reach the tolerance
};

/// w ~= exp(scale*A)*v via an Arnoldi subspace, to relative accuracy tol.
/// Falls back to recursive step halving when the subspace cap is hit.
ExpmvResult krylov_expmv(const SparseCd& a, const VectorXcd& v, Complex scale,
                         int max_dim, double tol);

/// exp(-i*H*dt) materialized densely; the validation oracle for the Krylov
/// path. Holds the spatial block only (the full operator is block-diagonal).
class DensePropagator {
 public:
  DensePropagator(MatrixXcd block, int full_dim);

  const MatrixXcd& block() const { return block_; }
  MatrixXcd full_matrix() const;  // 2N x 2N, for small operators
  SpinorField apply(const SpinorField& state) const;

 private:
  MatrixXcd block_;
  int full_dim_;
};

/// Requires H.dimension() <= 4096.
DensePropagator dense_propagator(const HamiltonianOperator& h, double dt);

struct StepResult {
  SpinorField state;   // normalize(exp(-i*H*dt) * input)
  double growth = 1.0; // pre-normalization norm factor
  int substeps = 1;
};

/// One renormalized non-unitary step with the Krylov exp action.
StepResult step(const SpinorField& state, const HamiltonianOperator& h,
                double dt, int krylov_dim = 30, double tol = 1e-12);

/// Propagate with per-step renormalization, sampling <S_z>, growth factors,
/// boundary mass and requested field snapshots. Deterministic.
Trajectory evolve(const SpinorField& initial, const HamiltonianOperator& h,
                  const EvolutionConfig& config, const Recorder& recorder = {});

/// Convergence utility: |final <S_z>(dt) - final <S_z>(dt/2)|.
double dt_convergence_check(const SpinorField& initial,
                            const HamiltonianOperator& h,
                            const EvolutionConfig& config);

}  // namespace nhc

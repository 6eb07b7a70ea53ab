#include "nhc/evolution.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

#include <Eigen/Dense>

namespace nhc {

namespace {

// Pade coefficient tables and switch points from the scaling-and-squaring
// literature; backward error stays at the double rounding level.
constexpr double kTheta3 = 1.495585217958292e-2;
constexpr double kTheta5 = 2.539398330063230e-1;
constexpr double kTheta7 = 9.504178996162932e-1;
constexpr double kTheta9 = 2.097847961257068e0;
constexpr double kTheta13 = 5.371920351148152e0;

MatrixXcd pade_low(const MatrixXcd& a, const std::vector<double>& b) {
  const int n = a.rows();
  const MatrixXcd ident = MatrixXcd::Identity(n, n);
  const MatrixXcd a2 = a * a;
  MatrixXcd even = b[0] * ident;
  MatrixXcd odd = b[1] * ident;
  MatrixXcd pw = a2;
  for (size_t k = 2; k < b.size(); k += 2) {
    even += b[k] * pw;
    if (k + 1 < b.size()) odd += b[k + 1] * pw;
    if (k + 2 < b.size()) pw = pw * a2;
  }
  const MatrixXcd u = a * odd;
  return (even - u).partialPivLu().solve(even + u);
}

MatrixXcd pade13(const MatrixXcd& a) {
  static const double b[] = {64764752532480000.0, 32382376266240000.0,
                             7771770303897600.0,  1187353796428800.0,
                             129060195264000.0,   10559470521600.0,
                             670442572800.0,      33522128640.0,
                             1323241920.0,        40840800.0,
                             960960.0,            16380.0,
                             182.0,               1.0};
  const int n = a.rows();
  const MatrixXcd ident = MatrixXcd::Identity(n, n);
  const MatrixXcd a2 = a * a;
  const MatrixXcd a4 = a2 * a2;
  const MatrixXcd a6 = a4 * a2;
  const MatrixXcd u =
      a * (a6 * (b[13] * a6 + b[11] * a4 + b[9] * a2) + b[7] * a6 + b[5] * a4 +
           b[3] * a2 + b[1] * ident);
  const MatrixXcd v = a6 * (b[12] * a6 + b[10] * a4 + b[8] * a2) + b[6] * a6 +
                      b[4] * a4 + b[2] * a2 + b[0] * ident;
  return (v - u).partialPivLu().solve(v + u);
}

double one_norm(const MatrixXcd& a) {
  double best = 0.0;
  for (int c = 0; c < a.cols(); ++c)
    best = std::max(best, a.col(c).cwiseAbs().sum());
  return best;
}

}  // namespace

MatrixXcd expm_dense(const MatrixXcd& a) {
  if (a.rows() != a.cols())
    throw std::invalid_argument("expm_dense: matrix must be square");
  if (a.rows() == 0) return a;
  if (!a.allFinite())
    throw std::runtime_error("expm_dense: non-finite entries");

  const double nrm = one_norm(a);
  if (nrm <= kTheta3) return pade_low(a, {120.0, 60.0, 12.0, 1.0});
  if (nrm <= kTheta5)
    return pade_low(a, {30240.0, 15120.0, 3360.0, 420.0, 30.0, 1.0});
  if (nrm <= kTheta7)
    return pade_low(a, {17297280.0, 8648640.0, 1995840.0, 277200.0, 25200.0,
                        1512.0, 56.0, 1.0});
  if (nrm <= kTheta9)
    return pade_low(a, {17643225600.0, 8821612800.0, 2075673600.0, 302702400.0,
                        30270240.0, 2162160.0, 110880.0, 3960.0, 90.0, 1.0});

  const int s =
      std::max(0, static_cast<int>(std::ceil(std::log2(nrm / kTheta13))));
  MatrixXcd e = pade13(a / std::pow(2.0, s));
  for (int k = 0; k < s; ++k) e = e * e;
  return e;
}

ExpmvResult krylov_expmv(const SparseCd& a, const VectorXcd& v, Complex scale,
                         int max_dim, double tol) {
  const int n = static_cast<int>(v.size());
  ExpmvResult res;
  const double beta = v.norm();
  if (beta == 0.0) {
    res.vec = VectorXcd::Zero(n);
    return res;
  }
  if (!(tol > 0.0)) tol = 1e-12;
  const int m_cap = std::min(std::max(max_dim, 2), n);

  MatrixXcd basis(n, m_cap + 1);
  MatrixXcd hess = MatrixXcd::Zero(m_cap + 1, m_cap);
  basis.col(0) = v / beta;

  VectorXcd w(n);
  int m = 0;
  bool happy = false;
  MatrixXcd small_exp;
  double err_est = std::numeric_limits<double>::infinity();

  for (int j = 0; j < m_cap; ++j) {
    w.noalias() = a * basis.col(j);
    const double pre = w.norm();
    // modified Gram-Schmidt with one conditional reorthogonalization pass
    for (int i = 0; i <= j; ++i) {
      const Complex h = basis.col(i).dot(w);
      w -= h * basis.col(i);
      hess(i, j) += h;
    }
    if (w.norm() < 0.7 * pre) {
      for (int i = 0; i <= j; ++i) {
        const Complex h = basis.col(i).dot(w);
        w -= h * basis.col(i);
        hess(i, j) += h;
      }
    }
    const double hnext = w.norm();
    hess(j + 1, j) = hnext;
    m = j + 1;

    small_exp = expm_dense(scale * hess.topLeftCorner(m, m));
    if (hnext <= 1e-14) {  // invariant subspace: the projection is exact
      happy = true;
      break;
    }
    err_est = hnext * std::abs(small_exp(m - 1, 0));
    if (err_est <= tol) break;
    basis.col(j + 1) = w / hnext;
  }

  if (!happy && err_est > tol) {
    // subspace cap reached: split the step and recurse
    ExpmvResult first = krylov_expmv(a, v, scale * 0.5, max_dim, tol * 0.5);
    ExpmvResult second =
        krylov_expmv(a, first.vec, scale * 0.5, max_dim, tol * 0.5);
    second.substeps += first.substeps;
    second.krylov_dim_used =
        std::max(first.krylov_dim_used, second.krylov_dim_used);
    return second;
  }

  res.vec.noalias() =
      basis.leftCols(m) * (beta * small_exp.col(0).head(m)).eval();
  res.krylov_dim_used = m;
  return res;
}

DensePropagator::DensePropagator(MatrixXcd block, int full_dim)
    : block_(std::move(block)), full_dim_(full_dim) {}

MatrixXcd DensePropagator::full_matrix() const {
  const int n = block_.rows();
  MatrixXcd out = MatrixXcd::Zero(2 * n, 2 * n);
  out.topLeftCorner(n, n) = block_;
  out.bottomRightCorner(n, n) = block_;
  return out;
}

SpinorField DensePropagator::apply(const SpinorField& state) const {
  SpinorField out;
  out.up.noalias() = block_ * state.up;
  out.down.noalias() = block_ * state.down;
  out.boundary_warning = state.boundary_warning;
  return out;
}

DensePropagator dense_propagator(const HamiltonianOperator& h, double dt) {
  if (h.dimension() > 4096)
    throw std::invalid_argument("dense_propagator: dimension above 4096");
  const MatrixXcd dense = MatrixXcd(h.spatial());
  return DensePropagator(expm_dense(Complex(0.0, -dt) * dense), h.dimension());
}

namespace {

StepResult finish_step(SpinorField&& evolved, double in_norm, int substeps) {
  StepResult r;
  const double post = norm(evolved);
  if (!std::isfinite(post) || post == 0.0)
    throw std::runtime_error("evolution step produced non-finite or zero amplitudes");
  r.growth = post / in_norm;
  evolved.up /= post;
  evolved.down /= post;
  r.state = std::move(evolved);
  r.substeps = substeps;
  return r;
}

}  // namespace

StepResult step(const SpinorField& state, const HamiltonianOperator& h,
                double dt, int krylov_dim, double tol) {
  const double in_norm = norm(state);
  if (!(in_norm > 0.0)) throw std::invalid_argument("step: zero-norm state");
  const Complex scale(0.0, -dt);
  ExpmvResult up = krylov_expmv(h.spatial(), state.up, scale, krylov_dim, tol);
  ExpmvResult down =
      krylov_expmv(h.spatial(), state.down, scale, krylov_dim, tol);
  SpinorField evolved;
  evolved.up = std::move(up.vec);
  evolved.down = std::move(down.vec);
  evolved.boundary_warning = state.boundary_warning;
  return finish_step(std::move(evolved), in_norm,
                     std::max(up.substeps, down.substeps));
}

Trajectory evolve(const SpinorField& initial, const HamiltonianOperator& h,
                  const EvolutionConfig& config, const Recorder& recorder) {
  if (!(config.dt > 0.0)) throw std::invalid_argument("evolve: dt must be positive");
  if (!(config.t_max > 0.0)) throw std::invalid_argument("evolve: t_max must be positive");
  const long n_steps = std::max<long>(1, std::llround(config.t_max / config.dt));
  const int every = std::max(1, config.record_every);

  // map snapshot times onto step indices (nearest step, deduplicated)
  std::map<long, double> snap_steps;
  for (double t : recorder.snapshot_times) {
    const long k = std::llround(t / config.dt);
    if (k >= 0 && k <= n_steps) snap_steps.emplace(k, t);
  }

  DensePropagator oracle(MatrixXcd(), 0);
  const bool dense = config.method == EvolutionMethod::dense_oracle;
  if (dense) oracle = dense_propagator(h, config.dt);

  SpinorField state = normalize(initial);
  Trajectory traj;
  traj.dt = config.dt;
  traj.n_steps = n_steps;
  traj.growth.reserve(n_steps);

  auto sample = [&](long k) {
    traj.times.push_back(k * config.dt);
    traj.sz.push_back(expect_sz(state));
    traj.sample_steps.push_back(k);
    traj.boundary_mass_max = std::max(
        traj.boundary_mass_max, boundary_mass(state, h.lattice(), 2));
  };
  auto snapshot = [&](long k) {
    auto it = snap_steps.find(k);
    if (it != snap_steps.end())
      traj.snapshots.push_back({k * config.dt, state});
  };

  sample(0);
  snapshot(0);
  for (long k = 1; k <= n_steps; ++k) {
    StepResult r =
        dense ? finish_step(oracle.apply(state), norm(state), 1)
              : step(state, h, config.dt, config.krylov_dim, config.tol);
    state = std::move(r.state);
    traj.growth.push_back(r.growth);
    traj.total_substeps += r.substeps;
    if (k % every == 0 || k == n_steps) sample(k);
    snapshot(k);
  }
  traj.boundary_warning = traj.boundary_mass_max > config.boundary_mass_threshold;
  traj.check_invariants();
  return traj;
}

double dt_convergence_check(const SpinorField& initial,
                            const HamiltonianOperator& h,
                            const EvolutionConfig& config) {
  EvolutionConfig coarse = config;
  coarse.record_every = 1;
  EvolutionConfig fine = coarse;
  fine.dt = config.dt / 2.0;
  const Trajectory a = evolve(initial, h, coarse);
  const Trajectory b = evolve(initial, h, fine);
  return std::abs(a.sz.back() - b.sz.back());
}

}  // namespace nhc

#include "nhc/fitting.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <stdexcept>

#include <Eigen/Dense>

namespace nhc {

LMResult levenberg_marquardt(
    const std::function<void(const VectorXd&, VectorXd&)>& residuals,
    const std::function<void(const VectorXd&, MatrixXd&)>& jacobian,
    const VectorXd& p0, int n_residuals, const LMOptions& opts) {
  const int np = static_cast<int>(p0.size());
  LMResult res;
  res.params = p0;

  VectorXd r(n_residuals);
  MatrixXd jac(n_residuals, np);
  residuals(res.params, r);
  double sse = r.squaredNorm();
  double lambda = opts.lambda0;

  for (res.iterations = 1; res.iterations <= opts.max_iter; ++res.iterations) {
    jacobian(res.params, jac);
    const VectorXd grad = jac.transpose() * r;
    res.grad_inf = grad.lpNorm<Eigen::Infinity>();
    if (res.grad_inf < opts.gtol) {
      res.converged = true;
      break;
    }

    MatrixXd normal = jac.transpose() * jac;
    VectorXd diag = normal.diagonal().cwiseMax(1e-12);
    normal.diagonal() += lambda * diag;
    const VectorXd delta = normal.ldlt().solve(-grad);
    res.last_step = delta.norm();
    if (!delta.allFinite()) {
      lambda *= 10.0;
      if (lambda > 1e14) break;
      continue;
    }
    if (res.last_step < opts.steptol) {
      res.converged = true;
      break;
    }

    VectorXd trial = res.params + delta;
    VectorXd r_try(n_residuals);
    residuals(trial, r_try);
    const double sse_try = r_try.squaredNorm();
    if (std::isfinite(sse_try) && sse_try < sse) {
      res.params = trial;
      r = r_try;
      sse = sse_try;
      lambda = std::max(lambda * 0.1, 1e-14);
    } else {
      lambda *= 10.0;
      if (lambda > 1e14) break;
    }
  }
  res.residual_rms = std::sqrt(sse / n_residuals);
  return res;
}

double logistic_model(double t, double a, double b, double c, double t0) {
  const double x = std::clamp(-b * (t + t0), -500.0, 500.0);
  return a / (1.0 + std::exp(x)) + c;
}

std::array<double, 4> logistic_gradient(double t, double a, double b, double c,
                                        double t0) {
  (void)c;
  const double x = std::clamp(-b * (t + t0), -500.0, 500.0);
  const double u = std::exp(x);
  const double s = 1.0 / (1.0 + u);
  const double s2u = s * s * u;
  return {s, a * s2u * (t + t0), 1.0, a * s2u * b};
}

namespace {

// Naive standard errors from the Jacobian at the solution.
template <typename JacFn>
std::array<double, 4> naive_std_err(const JacFn& jac_fn, const VectorXd& p,
                                    int n, double rms) {
  MatrixXd jac(n, p.size());
  jac_fn(p, jac);
  const MatrixXd normal = jac.transpose() * jac;
  const MatrixXd cov =
      normal.ldlt().solve(MatrixXd::Identity(p.size(), p.size()));
  std::array<double, 4> err{};
  const double dof = std::max(1, n - static_cast<int>(p.size()));
  const double s2 = rms * rms * n / dof;
  for (int i = 0; i < p.size() && i < 4; ++i)
    err[i] = std::sqrt(std::max(0.0, cov(i, i) * s2));
  return err;
}

}  // namespace

LogisticFit fit_logistic(const std::vector<double>& times,
                         const std::vector<double>& sz) {
  if (times.size() != sz.size())
    throw std::invalid_argument("fit_logistic: times/sz size mismatch");
  const int n = static_cast<int>(times.size());
  if (n < 8) throw std::invalid_argument("fit_logistic: need at least 8 samples");

  LogisticFit fit;
  const double lo = *std::min_element(sz.begin(), sz.end());
  const double hi = *std::max_element(sz.begin(), sz.end());
  if (hi - lo < 1e-3) {
    fit.no_collapse = true;  // collapse absent, e.g. the G = 0 scenario
    return fit;
  }

  // steepest consecutive slope decides the direction of the transition
  double steepest = 0.0;
  for (int i = 0; i + 1 < n; ++i) {
    const double s = (sz[i + 1] - sz[i]) / (times[i + 1] - times[i]);
    if (std::abs(s) > std::abs(steepest)) steepest = s;
  }
  fit.sign_flipped = steepest < 0.0;
  std::vector<double> y(sz);
  if (fit.sign_flipped)
    for (double& v : y) v = -v;

  const double ylo = fit.sign_flipped ? -hi : lo;
  const double yhi = fit.sign_flipped ? -lo : hi;

  // half-rise time for the t0 start value
  const double half = 0.5 * (ylo + yhi);
  double t_half = times[n - 1];
  for (int i = 0; i < n; ++i)
    if (y[i] >= half) {
      t_half = times[i];
      break;
    }

  VectorXd p0(4);
  p0[0] = yhi - ylo;                                     // a
  p0[1] = std::max(4.0 * std::abs(steepest) / p0[0], 1e-3);  // b
  p0[2] = ylo;                                           // c
  p0[3] = -t_half;                                       // t0

  auto resid = [&](const VectorXd& p, VectorXd& r) {
    for (int i = 0; i < n; ++i)
      r[i] = logistic_model(times[i], p[0], p[1], p[2], p[3]) - y[i];
  };
  auto jac = [&](const VectorXd& p, MatrixXd& m) {
    for (int i = 0; i < n; ++i) {
      const auto g = logistic_gradient(times[i], p[0], p[1], p[2], p[3]);
      for (int k = 0; k < 4; ++k) m(i, k) = g[k];
    }
  };

  const LMResult lm = levenberg_marquardt(resid, jac, p0, n);
  fit.a = lm.params[0];
  fit.b = lm.params[1];
  fit.c = lm.params[2];
  fit.t0 = lm.params[3];
  fit.residual_rms = lm.residual_rms;
  fit.converged = lm.converged;
  fit.iterations = lm.iterations;
  fit.std_err = naive_std_err(jac, lm.params, n, lm.residual_rms);
  return fit;
}

LogisticFit fit_logistic(const Trajectory& traj) {
  return fit_logistic(traj.times, traj.sz);
}

CollapseTime collapse_time(const LogisticFit& fit,
                           std::optional<double> gamma0_ev) {
  if (fit.no_collapse)
    throw std::invalid_argument("collapse_time: no-collapse fit has no tau");
  if (!fit.converged)
    throw std::invalid_argument("collapse_time: fit did not converge");
  if (!(fit.b > 0.0))
    throw std::invalid_argument("collapse_time: requires b > 0");
  CollapseTime out;
  out.tau = 1.0 / fit.b;  // hbar = 1 in simulation units
  if (gamma0_ev) {
    if (!(*gamma0_ev > 0.0))
      throw std::invalid_argument("collapse_time: gamma0_ev must be positive");
    out.tau_fs = out.tau * kHbarEvFs / *gamma0_ev;
  }
  return out;
}

double inverse_model(double g, double alpha, double beta, double gamma_off) {
  return alpha / (beta + g) + gamma_off;
}

InverseFit fit_inverse_law(
    const std::vector<std::pair<double, double>>& points) {
  const int n = static_cast<int>(points.size());
  if (n < 4) throw std::invalid_argument("fit_inverse_law: need >= 4 points");
  std::set<double> distinct;
  for (const auto& p : points) distinct.insert(p.first);
  if (distinct.size() < 2)
    throw std::invalid_argument("fit_inverse_law: degenerate design, all G equal");

  const double g_min = *distinct.begin();
  const double g_max = *distinct.rbegin();

  auto resid = [&](const VectorXd& p, VectorXd& r) {
    for (int i = 0; i < n; ++i) {
      const double den = p[1] + points[i].first;
      r[i] = den > 1e-12 ? inverse_model(points[i].first, p[0], p[1], p[2]) -
                               points[i].second
                         : 1e30;  // beta + G must stay positive
    }
  };
  auto jac = [&](const VectorXd& p, MatrixXd& m) {
    for (int i = 0; i < n; ++i) {
      const double den = std::max(p[1] + points[i].first, 1e-12);
      m(i, 0) = 1.0 / den;
      m(i, 1) = -p[0] / (den * den);
      m(i, 2) = 1.0;
    }
  };

  // coarse beta scan with the conditionally linear (alpha, gamma) solved exactly
  double best_sse = std::numeric_limits<double>::infinity();
  VectorXd p0(3);
  p0 << 0.0, 1.0, 0.0;
  const double span = std::max(g_max - g_min, 1e-3);
  for (int k = 0; k < 40; ++k) {
    const double beta = -g_min + span * std::pow(10.0, -4.0 + 5.0 * k / 39.0);
    Eigen::Matrix2d ata = Eigen::Matrix2d::Zero();
    Eigen::Vector2d atb = Eigen::Vector2d::Zero();
    for (const auto& pt : points) {
      const Eigen::Vector2d row(1.0 / (beta + pt.first), 1.0);
      ata += row * row.transpose();
      atb += row * pt.second;
    }
    const Eigen::Vector2d ag = ata.ldlt().solve(atb);
    double sse = 0.0;
    for (const auto& pt : points) {
      const double d = inverse_model(pt.first, ag[0], beta, ag[1]) - pt.second;
      sse += d * d;
    }
    if (sse < best_sse) {
      best_sse = sse;
      p0 << ag[0], beta, ag[1];
    }
  }

  const LMResult lm = levenberg_marquardt(resid, jac, p0, n);
  InverseFit fit;
  fit.alpha = lm.params[0];
  fit.beta = lm.params[1];
  fit.gamma_off = lm.params[2];
  fit.residual_rms = lm.residual_rms;
  fit.converged = lm.converged;
  fit.iterations = lm.iterations;
  return fit;
}

}  // namespace nhc

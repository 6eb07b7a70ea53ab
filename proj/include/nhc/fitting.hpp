#pragma once

#include <array>
#include <functional>
#include <optional>
#include <vector>

#include "nhc/observables.hpp"
#include "nhc/types.hpp"

namespace nhc {

struct LMOptions {
  double lambda0 = 1e-3;  // initial damping; x10 on reject, /10 on accept
  int max_iter = 200;
  double gtol = 1e-10;    // gradient infinity-norm convergence
  double steptol = 1e-12; // step norm convergence
};

struct LMResult {
  VectorXd params;
  bool converged = false;
  int iterations = 0;
  double residual_rms = 0.0;
  double grad_inf = 0.0;
  double last_step = 0.0;
};

/// Damped Gauss-Newton least squares with analytic Jacobian.
/// residuals(p, r) fills r with model - data; jacobian(p, J) fills d r/d p.
LMResult levenberg_marquardt(
    const std::function<void(const VectorXd&, VectorXd&)>& residuals,
    const std::function<void(const VectorXd&, MatrixXd&)>& jacobian,
    const VectorXd& p0, int n_residuals, const LMOptions& opts = {});

// Logistic collapse curve f(t) = a/(1 + e^{-b(t+t0)}) + c (hbar = 1 units).
double logistic_model(double t, double a, double b, double c, double t0);
std::array<double, 4> logistic_gradient(double t, double a, double b, double c,
                                        double t0);  // d f/d(a,b,c,t0)

struct LogisticFit {
  double a = 0.0, b = 0.0, c = 0.0, t0 = 0.0;
  double residual_rms = 0.0;
  std::array<double, 4> std_err{};  // naive standard errors for (a,b,c,t0)
  bool converged = false;
  bool sign_flipped = false;  // data fell toward -1; fit ran on -sz
  bool no_collapse = false;   // sz essentially constant, no fit performed
  int iterations = 0;
};

/// Fit the polarization samples to the logistic curve. Needs >= 8 samples.
/// A flat trajectory (range below 1e-3) returns no_collapse instead of a fit.
LogisticFit fit_logistic(const std::vector<double>& times,
                         const std::vector<double>& sz);
LogisticFit fit_logistic(const Trajectory& traj);

struct CollapseTime {
  double tau = 0.0;                // hbar/gamma0 units
  std::optional<double> tau_fs;    // set when gamma0 in eV was supplied
};

/// tau = hbar/b. Throws unless the fit converged with b > 0.
CollapseTime collapse_time(const LogisticFit& fit,
                           std::optional<double> gamma0_ev = std::nullopt);

// Inverse law h(G) = alpha/(beta + G) + gamma_off for the tau(G) curve.
double inverse_model(double g, double alpha, double beta, double gamma_off);

struct InverseFit {
  double alpha = 0.0, beta = 0.0, gamma_off = 0.0;
  double residual_rms = 0.0;
  bool converged = false;
  int iterations = 0;
};

/// Least-squares fit of (G, tau) points; needs >= 4 points with at least
/// two distinct G values.
InverseFit fit_inverse_law(const std::vector<std::pair<double, double>>& points);

}  // namespace nhc

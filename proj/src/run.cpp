#include "nhc/run.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "nhc/csv.hpp"
#include "nhc/evolution.hpp"

namespace nhc {

namespace {

using nlohmann::json;

template <typename Fn>
auto stage(const char* label, Fn&& fn) {
  try {
    return fn();
  } catch (const std::exception& e) {
    throw std::runtime_error(std::string("stage ") + label + ": " + e.what());
  }
}

json fit_to_json(const LogisticFit& fit,
                 const std::optional<CollapseTime>& tau) {
  json j;
  j["no_collapse"] = fit.no_collapse;
  if (fit.no_collapse) return j;
  j["a"] = fit.a;
  j["b"] = fit.b;
  j["c"] = fit.c;
  j["t0"] = fit.t0;
  j["residual_rms"] = fit.residual_rms;
  j["std_err"] = fit.std_err;
  j["converged"] = fit.converged;
  j["sign_flipped"] = fit.sign_flipped;
  j["iterations"] = fit.iterations;
  j["tau"] = tau ? json(tau->tau) : json(nullptr);
  j["tau_fs"] = (tau && tau->tau_fs) ? json(*tau->tau_fs) : json(nullptr);
  return j;
}

}  // namespace

std::string RunSummary::to_json_string() const {
  json j;
  j["schema_version"] = 1;
  j["name"] = name;
  j["final_sz"] = final_sz;
  j["final_time"] = final_time;
  j["collapse_threshold"] = threshold;
  j["collapsed"] = collapsed;
  j["collapse_direction"] = collapse_direction;
  j["threshold_crossing_time"] =
      threshold_crossing_time ? json(*threshold_crossing_time) : json(nullptr);
  j["fit"] = fit_to_json(fit, tau);
  j["log_growth_total"] = log_growth_total;
  j["boundary_mass_max"] = boundary_mass_max;
  j["boundary_warning"] = boundary_warning;
  j["n_steps"] = n_steps;
  j["total_substeps"] = total_substeps;
  return j.dump(2) + "\n";
}

RunOutcome simulate(const RunConfig& config) {
  RunOutcome out;
  out.config = config;

  const HamiltonianOperator h = stage("lattice", [&] {
    return build_hamiltonian(config.lattice, config.regions, config.gains);
  });
  const SpinorField initial = stage("state", [&] {
    return entangled_initial_state(config.up_packet, config.down_packet,
                                   config.lattice, config.weight_up,
                                   config.weight_down);
  });
  out.trajectory = stage("evolution", [&] {
    Recorder rec;
    rec.snapshot_times = config.snapshot_times;
    return evolve(initial, h, config.evolution, rec);
  });

  RunSummary& s = out.summary;
  s.name = config.name;
  s.threshold = config.collapse_threshold;
  s.final_sz = out.trajectory.sz.back();
  s.final_time = out.trajectory.times.back();
  s.threshold_crossing_time = stage("observables", [&] {
    return collapse_time_threshold(out.trajectory, config.collapse_threshold);
  });
  s.collapsed = s.threshold_crossing_time.has_value();
  s.collapse_direction = s.collapsed ? (s.final_sz > 0.0 ? 1 : -1) : 0;
  stage("fitting", [&] {
    s.fit = fit_logistic(out.trajectory);
    if (!s.fit.no_collapse && s.fit.converged && s.fit.b > 0.0)
      s.tau = collapse_time(s.fit, config.gamma0_ev);
    return 0;
  });
  for (double g : out.trajectory.growth) s.log_growth_total += std::log(g);
  s.boundary_mass_max = out.trajectory.boundary_mass_max;
  s.boundary_warning = out.trajectory.boundary_warning;
  s.n_steps = out.trajectory.n_steps;
  s.total_substeps = out.trajectory.total_substeps;
  return out;
}

std::string trajectory_csv(const Trajectory& traj) {
  std::ostringstream os;
  os << "t,sz,norm_growth\n";
  // growth column: product of the per-step factors in the interval ending
  // at this sample (1 for the t = 0 row)
  size_t step = 0;
  for (size_t i = 0; i < traj.times.size(); ++i) {
    const size_t step_end =
        i < traj.sample_steps.size()
            ? static_cast<size_t>(traj.sample_steps[i])
            : step;
    double growth = 1.0;
    for (; step < step_end && step < traj.growth.size(); ++step)
      growth *= traj.growth[step];
    os << fmt_double(traj.times[i]) << ',' << fmt_double(traj.sz[i]) << ','
       << fmt_double(growth) << '\n';
  }
  return os.str();
}

std::string fit_json(const LogisticFit& fit,
                     const std::optional<CollapseTime>& tau) {
  return fit_to_json(fit, tau).dump(2) + "\n";
}

namespace {

std::string density_csv(const SpinorField& field, const LatticeSpec& lattice) {
  const VectorXd dens = sz_density(field);
  std::ostringstream os;
  os << "site_x,site_y,sz\n";
  for (int y = 0; y < lattice.ny; ++y)
    for (int x = 0; x < lattice.nx; ++x)
      os << x << ',' << y << ',' << fmt_double(dens[lattice.site(x, y)])
         << '\n';
  return os.str();
}

constexpr const char* kTrajectoryPlot =
    "set datafile separator ','\n"
    "set xlabel 't (hbar/gamma0)'\n"
    "set ylabel '<S_z>'\n"
    "set yrange [-1.05:1.05]\n"
    "set grid\n"
    "plot 'trajectory.csv' using 1:2 skip 1 with lines title 'S_z(t)'\n";

}  // namespace

RunOutcome run_simulation(const RunConfig& config,
                          const std::filesystem::path& out_dir) {
  RunOutcome out = simulate(config);
  stage("output", [&] {
    std::filesystem::create_directories(out_dir);
    write_text_file(out_dir / "config.json", config.to_json_string());
    write_text_file(out_dir / "trajectory.csv", trajectory_csv(out.trajectory));
    write_text_file(out_dir / "fit.json",
                    fit_json(out.summary.fit, out.summary.tau));
    write_text_file(out_dir / "summary.json", out.summary.to_json_string());
    write_text_file(out_dir / "plot_trajectory.gp", kTrajectoryPlot);
    for (const auto& snap : out.trajectory.snapshots) {
      char label[48];
      std::snprintf(label, sizeof(label), "%g", snap.time);
      std::ostringstream field_os;
      dump_state_csv(snap.field, config.lattice, field_os);
      write_text_file(out_dir / (std::string("snapshot_t") + label + ".csv"),
                      field_os.str());
      write_text_file(out_dir / (std::string("szdensity_t") + label + ".csv"),
                      density_csv(snap.field, config.lattice));
    }
    return 0;
  });
  return out;
}

}  // namespace nhc

// Command-line front end: simulate / sweep / spectrum / fit / preset.
// Exit codes: 0 success, 1 partial failure (some sweep points), 2 failure.

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "nhc/config.hpp"
#include "nhc/csv.hpp"
#include "nhc/run.hpp"
#include "nhc/spectrum.hpp"
#include "nhc/sweep.hpp"

namespace {

std::vector<double> parse_grid(const std::string& text) {
  double a, b;
  int n;
  if (std::sscanf(text.c_str(), "%lf:%lf:%d", &a, &b, &n) != 3 || n < 1)
    throw std::invalid_argument("grid must be 'start:stop:count', got '" +
                                text + "'");
  std::vector<double> grid;
  for (int i = 0; i < n; ++i)
    grid.push_back(n == 1 ? a : a + (b - a) * i / (n - 1));
  return grid;
}

nhc::RunConfig load_config(const std::string& config_file,
                           const std::string& preset) {
  if (!config_file.empty())
    return nhc::RunConfig::from_json_string(nhc::read_text_file(config_file));
  return nhc::make_preset(preset);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"non-Hermitian wavepacket collapse simulator"};
  app.require_subcommand(1);

  std::string config_file, preset, out_dir = "out", grid_text, param = "G";
  std::string input_file, out_file;
  std::optional<double> gamma0_ev;
  int jobs = 0;
  bool dump_spectra = false;

  auto* sim = app.add_subcommand("simulate", "run one scenario");
  sim->add_option("--config", config_file, "RunConfig JSON file");
  sim->add_option("--preset", preset, "built-in preset name");
  sim->add_option("--out", out_dir, "output directory");

  auto* swp = app.add_subcommand("sweep", "scan a parameter grid");
  swp->add_option("--config", config_file,
                  "SweepPlan JSON, or RunConfig JSON when --grid is given");
  swp->add_option("--preset", preset, "built-in sweep or run preset");
  swp->add_option("--param", param, "swept parameter: G or z");
  swp->add_option("--grid", grid_text, "grid as start:stop:count");
  swp->add_option("--jobs", jobs, "parallel worker limit (0 = hardware)");
  swp->add_option("--out", out_dir, "output directory");

  auto* spc = app.add_subcommand("spectrum", "eigenvalue sweep over g");
  spc->add_option("--config", config_file, "RunConfig JSON for the geometry");
  spc->add_option("--preset", preset, "built-in preset name")
      ->default_val("spectrum");
  spc->add_option("--g-grid", grid_text, "grid as start:stop:count")
      ->default_val("0:1:5");
  spc->add_flag("--dump-spectra", dump_spectra, "write per-g eigenvalue CSVs");
  spc->add_option("--jobs", jobs, "parallel worker limit (0 = hardware)");
  spc->add_option("--out", out_dir, "output directory");

  auto* fit = app.add_subcommand("fit", "logistic fit of a trajectory CSV");
  fit->add_option("--input", input_file, "trajectory CSV")->required();
  fit->add_option("--gamma0-ev", gamma0_ev, "gamma0 in eV for fs reporting");
  fit->add_option("--out", out_file, "fit JSON file (default stdout)");

  auto* pre = app.add_subcommand("preset", "list or export presets");
  auto* pre_list = pre->add_subcommand("list", "list preset names");
  auto* pre_export = pre->add_subcommand("export", "write a preset as JSON");
  std::string export_name;
  pre_export->add_option("name", export_name, "preset name")->required();
  pre_export->add_option("--out", out_file, "target file (default stdout)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (sim->parsed()) {
      if (config_file.empty() && preset.empty())
        throw std::invalid_argument("simulate: need --config or --preset");
      const nhc::RunConfig cfg = load_config(config_file, preset);
      const nhc::RunOutcome out = nhc::run_simulation(cfg, out_dir);
      std::cout << out.summary.to_json_string();
      return 0;
    }

    if (swp->parsed()) {
      nhc::SweepPlan plan;
      if (!grid_text.empty()) {
        if (config_file.empty() && preset.empty())
          throw std::invalid_argument("sweep: need --config or --preset");
        plan.base = load_config(config_file, preset.empty() ? "fig2" : preset);
        plan.param = param;
        plan.grid = parse_grid(grid_text);
      } else if (!config_file.empty()) {
        plan = nhc::SweepPlan::from_json_string(
            nhc::read_text_file(config_file));
      } else {
        plan = nhc::make_sweep_preset(preset.empty() ? "fig3" : preset);
      }
      if (jobs > 0) plan.parallelism = jobs;
      const nhc::SweepTable table = nhc::run_sweep(plan, out_dir);
      for (const auto& p : table.points)
        if (!p.ok)
          std::cerr << "point " << nhc::fmt_double(p.value)
                    << " failed: " << p.error << "\n";
      std::cout << "sweep finished: " << table.points.size() - table.n_failed
                << "/" << table.points.size() << " points ok\n";
      return table.n_failed == 0 ? 0 : 1;
    }

    if (spc->parsed()) {
      const nhc::RunConfig cfg = load_config(config_file, preset);
      std::vector<nhc::HatanoRegion> tmpl = cfg.regions;
      for (auto& r : tmpl) r.g = r.g != 0.0 ? 1.0 : 0.0;
      const std::vector<double> grid = parse_grid(grid_text);
      const auto results =
          nhc::max_imag_vs_g(cfg.lattice, tmpl, grid, jobs);
      std::filesystem::create_directories(out_dir);
      std::ostringstream os;
      os << "g,max_imag\n";
      for (const auto& r : results)
        os << nhc::fmt_double(r.g) << ',' << nhc::fmt_double(r.max_imag)
           << '\n';
      nhc::write_text_file(std::filesystem::path(out_dir) / "max_imag.csv",
                           os.str());
      if (dump_spectra) {
        for (const auto& r : results) {
          std::ostringstream ss;
          ss << "re,im\n";
          for (const auto& ev : r.eigenvalues)
            ss << nhc::fmt_double(ev.real()) << ','
               << nhc::fmt_double(ev.imag()) << '\n';
          char name[64];
          std::snprintf(name, sizeof(name), "spectrum_g%g.csv", r.g);
          nhc::write_text_file(std::filesystem::path(out_dir) / name,
                               ss.str());
        }
      }
      std::cout << "wrote " << out_dir << "/max_imag.csv\n";
      return 0;
    }

    if (fit->parsed()) {
      const auto [times, sz] =
          nhc::read_trajectory_csv(nhc::read_text_file(input_file));
      const nhc::LogisticFit lf = nhc::fit_logistic(times, sz);
      std::optional<nhc::CollapseTime> tau;
      if (!lf.no_collapse && lf.converged && lf.b > 0.0)
        tau = nhc::collapse_time(lf, gamma0_ev);
      const std::string text = nhc::fit_json(lf, tau);
      if (out_file.empty())
        std::cout << text;
      else
        nhc::write_text_file(out_file, text);
      return 0;
    }

    if (pre->parsed()) {
      if (pre_list->parsed() || !pre_export->parsed()) {
        for (const auto& n : nhc::preset_names()) std::cout << n << "\n";
        for (const auto& n : nhc::sweep_preset_names())
          std::cout << n << " (sweep)\n";
        return 0;
      }
      std::string text;
      try {
        text = nhc::make_preset(export_name).to_json_string();
      } catch (const std::invalid_argument&) {
        text = nhc::make_sweep_preset(export_name).to_json_string();
      }
      if (out_file.empty())
        std::cout << text;
      else
        nhc::write_text_file(out_file, text);
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}

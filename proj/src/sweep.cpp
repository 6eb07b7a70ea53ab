#include "nhc/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "nhc/csv.hpp"

namespace nhc {

std::string SweepTable::csv(const std::string& param) const {
  std::ostringstream os;
  os << param
     << ",tau,tau_fs,b,a,c,t0,residual_rms,fit_converged,collapsed,final_sz,"
        "status\n";
  for (const auto& p : points) {
    os << fmt_double(p.value) << ',';
    if (p.ok && p.summary.tau) {
      os << fmt_double(p.summary.tau->tau) << ',';
      os << (p.summary.tau->tau_fs ? fmt_double(*p.summary.tau->tau_fs) : "")
         << ',';
    } else {
      os << ",,";
    }
    if (p.ok && !p.summary.fit.no_collapse) {
      const auto& f = p.summary.fit;
      os << fmt_double(f.b) << ',' << fmt_double(f.a) << ',' << fmt_double(f.c)
         << ',' << fmt_double(f.t0) << ',' << fmt_double(f.residual_rms) << ','
         << (f.converged ? "true" : "false") << ',';
    } else {
      os << ",,,,,,";
    }
    if (p.ok)
      os << (p.summary.collapsed ? "true" : "false") << ','
         << fmt_double(p.summary.final_sz) << ",ok\n";
    else
      os << ",,failed\n";
  }
  return os.str();
}

namespace {

std::string inverse_fit_json(const SweepTable& table) {
  nlohmann::json j;
  j["valid"] = table.inverse_fit_valid;
  if (table.inverse_fit_valid) {
    j["alpha"] = table.inverse_fit.alpha;
    j["beta"] = table.inverse_fit.beta;
    j["gamma"] = table.inverse_fit.gamma_off;
    j["residual_rms"] = table.inverse_fit.residual_rms;
    j["converged"] = table.inverse_fit.converged;
    j["iterations"] = table.inverse_fit.iterations;
  }
  return j.dump(2) + "\n";
}

constexpr const char* kSweepPlotTemplate =
    "set datafile separator ','\n"
    "set xlabel 'G'\n"
    "set ylabel 'tau (hbar/gamma0)'\n"
    "set grid\n"
    "h(x) = %s/(%s + x) + %s\n"
    "plot 'sweep.csv' using 1:2 skip 1 with points pt 7 title 'tau(G)', \\\n"
    "     h(x) with lines title 'inverse-law fit'\n";

}  // namespace

SweepTable run_sweep(const SweepPlan& plan,
                     const std::filesystem::path& out_dir) {
  if (plan.grid.empty()) throw std::invalid_argument("sweep: empty grid");
  std::filesystem::create_directories(out_dir);

  const size_t n = plan.grid.size();
  SweepTable table;
  table.points.resize(n);

  int jobs = plan.parallelism;
  if (jobs <= 0)
    jobs = std::max(1u, std::thread::hardware_concurrency());
  jobs = std::min<int>(jobs, static_cast<int>(n));

  std::atomic<size_t> next{0};
  auto worker = [&]() {
    for (size_t i = next.fetch_add(1); i < n; i = next.fetch_add(1)) {
      SweepPoint& pt = table.points[i];
      pt.value = plan.grid[i];
      try {
        const RunConfig cfg = plan.config_for(pt.value);
        char sub[96];
        std::snprintf(sub, sizeof(sub), "point_%s_%g", plan.param.c_str(),
                      pt.value);
        pt.summary = run_simulation(cfg, out_dir / sub).summary;
        pt.ok = true;
      } catch (const std::exception& e) {
        pt.ok = false;
        pt.error = e.what();
      }
    }
  };
  std::vector<std::thread> pool;
  for (int t = 1; t < jobs; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  std::stable_sort(table.points.begin(), table.points.end(),
                   [](const SweepPoint& a, const SweepPoint& b) {
                     return a.value < b.value;
                   });
  for (const auto& p : table.points)
    if (!p.ok) ++table.n_failed;

  std::vector<std::pair<double, double>> tau_points;
  for (const auto& p : table.points)
    if (p.ok && p.summary.tau) tau_points.emplace_back(p.value, p.summary.tau->tau);
  if (tau_points.size() >= 4) {
    table.inverse_fit = fit_inverse_law(tau_points);
    table.inverse_fit_valid = true;
  }

  write_text_file(out_dir / "sweep.csv", table.csv(plan.param));
  write_text_file(out_dir / "inverse_fit.json", inverse_fit_json(table));
  if (table.inverse_fit_valid) {
    char script[512];
    std::snprintf(script, sizeof(script), kSweepPlotTemplate,
                  fmt_double(table.inverse_fit.alpha).c_str(),
                  fmt_double(table.inverse_fit.beta).c_str(),
                  fmt_double(table.inverse_fit.gamma_off).c_str());
    write_text_file(out_dir / "plot_sweep.gp", script);
  }
  return table;
}

}  // namespace nhc

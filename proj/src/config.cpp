#include "nhc/config.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

#include <json.hpp>

namespace nhc {

namespace {

using nlohmann::json;

std::string boundary_str(Boundary b) {
  return b == Boundary::open ? "open" : "periodic";
}
Boundary boundary_from(const std::string& s) {
  if (s == "open") return Boundary::open;
  if (s == "periodic") return Boundary::periodic;
  throw std::invalid_argument("config: unknown boundary '" + s + "'");
}

std::string method_str(EvolutionMethod m) {
  return m == EvolutionMethod::krylov ? "krylov" : "dense-oracle";
}
EvolutionMethod method_from(const std::string& s) {
  if (s == "krylov") return EvolutionMethod::krylov;
  if (s == "dense-oracle") return EvolutionMethod::dense_oracle;
  throw std::invalid_argument("config: unknown evolution method '" + s + "'");
}

std::string profile_str(GainProfile p) {
  return p == GainProfile::gaussian ? "gaussian" : "exponential";
}
GainProfile profile_from(const std::string& s) {
  if (s == "gaussian") return GainProfile::gaussian;
  if (s == "exponential") return GainProfile::exponential;
  throw std::invalid_argument("config: unknown gain profile '" + s + "'");
}

json packet_to_json(const PacketSpec& p) {
  return {{"x", p.x}, {"y", p.y}, {"kx", p.kx}, {"ky", p.ky},
          {"sigma_r", p.sigma_r}};
}
PacketSpec packet_from_json(const json& j) {
  PacketSpec p;
  p.x = j.at("x");
  p.y = j.at("y");
  p.kx = j.at("kx");
  p.ky = j.at("ky");
  p.sigma_r = j.at("sigma_r");
  return p;
}

json config_to_json(const RunConfig& c) {
  json j;
  j["schema_version"] = c.schema_version;
  j["name"] = c.name;
  j["lattice"] = {{"nx", c.lattice.nx},
                  {"ny", c.lattice.ny},
                  {"boundary_x", boundary_str(c.lattice.boundary_x)},
                  {"boundary_y", boundary_str(c.lattice.boundary_y)},
                  {"gamma0", c.lattice.gamma0}};
  j["regions"] = json::array();
  for (const auto& r : c.regions)
    j["regions"].push_back({{"x0", r.x0},
                            {"x1", r.x1},
                            {"y0", r.y0},
                            {"y1", r.y1},
                            {"g", r.g}});
  j["gains"] = json::array();
  for (const auto& g : c.gains)
    j["gains"].push_back({{"cx", g.cx},
                          {"cy", g.cy},
                          {"width", g.width},
                          {"z_imag", g.z.imag()},
                          {"profile", profile_str(g.profile)}});
  j["state"] = {{"up", packet_to_json(c.up_packet)},
                {"down", packet_to_json(c.down_packet)},
                {"weight_up", c.weight_up},
                {"weight_down", c.weight_down}};
  j["evolution"] = {{"dt", c.evolution.dt},
                    {"t_max", c.evolution.t_max},
                    {"method", method_str(c.evolution.method)},
                    {"krylov_dim", c.evolution.krylov_dim},
                    {"tol", c.evolution.tol},
                    {"record_every", c.evolution.record_every}};
  j["observables"] = {{"snapshot_times", c.snapshot_times},
                      {"collapse_threshold", c.collapse_threshold}};
  j["units"] = {{"gamma0_ev",
                 c.gamma0_ev ? json(*c.gamma0_ev) : json(nullptr)}};
  return j;
}

RunConfig config_from_json(const json& j) {
  RunConfig c;
  c.schema_version = j.at("schema_version");
  if (c.schema_version != 1)
    throw std::invalid_argument("config: unsupported schema_version");
  c.name = j.value("name", "run");
  const json& lat = j.at("lattice");
  c.lattice.nx = lat.at("nx");
  c.lattice.ny = lat.at("ny");
  c.lattice.boundary_x = boundary_from(lat.at("boundary_x"));
  c.lattice.boundary_y = boundary_from(lat.at("boundary_y"));
  c.lattice.gamma0 = lat.at("gamma0");
  for (const json& r : j.value("regions", json::array())) {
    HatanoRegion reg;
    reg.x0 = r.at("x0");
    reg.x1 = r.at("x1");
    reg.y0 = r.at("y0");
    reg.y1 = r.at("y1");
    reg.g = r.at("g");
    c.regions.push_back(reg);
  }
  for (const json& g : j.value("gains", json::array())) {
    LocalizedGain gain;
    gain.cx = g.at("cx");
    gain.cy = g.at("cy");
    gain.width = g.at("width");
    gain.z = Complex(0.0, g.at("z_imag").get<double>());
    gain.profile = profile_from(g.at("profile"));
    c.gains.push_back(gain);
  }
  const json& st = j.at("state");
  c.up_packet = packet_from_json(st.at("up"));
  c.down_packet = packet_from_json(st.at("down"));
  c.weight_up = st.value("weight_up", 1.0);
  c.weight_down = st.value("weight_down", 1.0);
  const json& ev = j.at("evolution");
  c.evolution.dt = ev.at("dt");
  c.evolution.t_max = ev.at("t_max");
  c.evolution.method = method_from(ev.at("method"));
  c.evolution.krylov_dim = ev.value("krylov_dim", 30);
  c.evolution.tol = ev.value("tol", 1e-12);
  c.evolution.record_every = ev.value("record_every", 1);
  const json& obs = j.at("observables");
  c.snapshot_times = obs.value("snapshot_times", std::vector<double>{});
  c.collapse_threshold = obs.value("collapse_threshold", 0.99);
  if (j.contains("units") && !j["units"].value("gamma0_ev", json(nullptr)).is_null())
    c.gamma0_ev = j["units"]["gamma0_ev"].get<double>();
  return c;
}

}  // namespace

std::string RunConfig::to_json_string() const {
  return config_to_json(*this).dump(2) + "\n";
}

RunConfig RunConfig::from_json_string(const std::string& text) {
  return config_from_json(json::parse(text));
}

std::string SweepPlan::to_json_string() const {
  json j;
  j["base"] = config_to_json(base);
  j["param"] = param;
  j["grid"] = grid;
  j["parallelism"] = parallelism;
  return j.dump(2) + "\n";
}

SweepPlan SweepPlan::from_json_string(const std::string& text) {
  const json j = json::parse(text);
  SweepPlan plan;
  plan.base = config_from_json(j.at("base"));
  plan.param = j.at("param");
  plan.grid = j.at("grid").get<std::vector<double>>();
  plan.parallelism = j.value("parallelism", 0);
  if (plan.grid.empty())
    throw std::invalid_argument("sweep plan: empty grid");
  for (double v : plan.grid)
    if (!std::isfinite(v))
      throw std::invalid_argument("sweep plan: non-finite grid value");
  return plan;
}

RunConfig SweepPlan::config_for(double value) const {
  RunConfig c = base;
  char label[64];
  if (param == "G") {
    if (c.regions.empty())
      throw std::invalid_argument("sweep: param G needs at least one region");
    c.regions[0].g = value;  // g1; the remaining regions keep their g
  } else if (param == "z") {
    if (c.gains.empty())
      throw std::invalid_argument("sweep: param z needs at least one gain");
    c.gains[0].z = Complex(0.0, value);
  } else {
    throw std::invalid_argument("sweep: unknown param '" + param + "'");
  }
  std::snprintf(label, sizeof(label), "%s_%s_%g", base.name.c_str(),
                param.c_str(), value);
  c.name = label;
  return c;
}

namespace {

constexpr double kQuarterPi = 0.78539816339744831;

RunConfig desk_scale_base() {
  // Desk-scale geometry: packets launched at 45 degrees from the Hermitian
  // strip at small x, regions covering the two y halves over x in [32, 72].
  RunConfig c;
  c.lattice = {96, 184, Boundary::open, Boundary::open, 1.0};
  c.regions = {{32, 72, 92, 183, 0.5},  // upper, g1
               {32, 72, 0, 91, 0.0}};   // lower, g2
  c.up_packet = {16.0, 107.5, kQuarterPi, kQuarterPi, 4.0};
  c.down_packet = {16.0, 75.5, kQuarterPi, -kQuarterPi, 4.0};
  c.evolution.dt = 0.05;
  c.evolution.t_max = 40.0;
  c.evolution.method = EvolutionMethod::krylov;
  c.evolution.krylov_dim = 30;
  c.evolution.tol = 1e-12;
  c.evolution.record_every = 1;
  c.snapshot_times = {0.0, 1.5, 3.0, 12.0, 25.0, 38.0};
  c.collapse_threshold = 0.99;
  return c;
}

}  // namespace

RunConfig make_preset(const std::string& name) {
  if (name == "fig2") {
    RunConfig c = desk_scale_base();
    c.name = "fig2";
    return c;
  }
  if (name == "hermitian") {
    RunConfig c = desk_scale_base();
    c.name = "hermitian";
    c.regions[0].g = 0.0;
    c.evolution.t_max = 50.0;  // 1000 steps at dt = 0.05
    return c;
  }
  if (name == "fig4") {
    RunConfig c = desk_scale_base();
    c.name = "fig4";
    c.regions.clear();
    // gain centred on the straight-line path of the upper branch
    c.gains = {{48.0, 139.5, 3.0, Complex(0.0, 5.0), GainProfile::gaussian}};
    return c;
  }
  if (name == "spectrum") {
    // reduced lattice so the full dense spectrum stays below dimension 4096
    RunConfig c;
    c.name = "spectrum";
    c.lattice = {32, 22, Boundary::open, Boundary::open, 1.0};
    c.regions = {{10, 26, 11, 21, 1.0},  // upper, swept
                 {10, 26, 0, 10, 0.0}};  // lower, Hermitian
    c.up_packet = {5.0, 13.5, kQuarterPi, kQuarterPi, 2.0};
    c.down_packet = {5.0, 7.5, kQuarterPi, -kQuarterPi, 2.0};
    c.up_packet.sigma_r = c.down_packet.sigma_r = 2.0;
    c.evolution.dt = 0.05;
    c.evolution.t_max = 20.0;
    return c;
  }
  throw std::invalid_argument("unknown preset '" + name + "'");
}

SweepPlan make_sweep_preset(const std::string& name) {
  if (name == "fig3") {
    SweepPlan plan;
    plan.base = make_preset("fig2");
    plan.base.name = "fig3";
    plan.param = "G";
    for (int i = 1; i <= 10; ++i) plan.grid.push_back(0.1 * i);
    plan.parallelism = 0;
    return plan;
  }
  throw std::invalid_argument("unknown sweep preset '" + name + "'");
}

std::vector<std::string> preset_names() {
  return {"fig2", "fig4", "hermitian", "spectrum"};
}

std::vector<std::string> sweep_preset_names() { return {"fig3"}; }

}  // namespace nhc

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "nhc/evolution.hpp"
#include "nhc/lattice.hpp"
#include "nhc/state.hpp"

namespace nhc {

/// Complete description of one run. Fully serializable; a run is reproducible
/// bit-for-bit from its config (there is no randomness in the pipeline).
struct RunConfig {
  int schema_version = 1;
  std::string name = "run";

  LatticeSpec lattice;
  std::vector<HatanoRegion> regions;
  std::vector<LocalizedGain> gains;

  PacketSpec up_packet;
  PacketSpec down_packet;
  double weight_up = 1.0;
  double weight_down = 1.0;

  EvolutionConfig evolution;

  std::vector<double> snapshot_times;
  double collapse_threshold = 0.99;

  std::optional<double> gamma0_ev;  // enables femtosecond reporting

  std::string to_json_string() const;          // pretty, stable key order
  static RunConfig from_json_string(const std::string& text);
};

/// One-parameter scan over a base config.
struct SweepPlan {
  RunConfig base;
  std::string param = "G";     // "G": regions[0].g; "z": gains[0] imag strength
  std::vector<double> grid;
  int parallelism = 0;         // 0 = hardware concurrency

  std::string to_json_string() const;
  static SweepPlan from_json_string(const std::string& text);

  RunConfig config_for(double value) const;  // base with the parameter applied
};

// Shipped scenario presets: "fig2" (split Hatano regions, G = 0.5),
// "fig3" handled as a sweep preset, "fig4" (localized gain), "hermitian"
// (all g = 0), "spectrum" (reduced lattice for dense eigensolves).
RunConfig make_preset(const std::string& name);
SweepPlan make_sweep_preset(const std::string& name);
std::vector<std::string> preset_names();
std::vector<std::string> sweep_preset_names();

}  // namespace nhc

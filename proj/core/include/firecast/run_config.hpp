#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "firecast/grid.hpp"
#include "firecast/neighborhood.hpp"
#include "firecast/simulator.hpp"

namespace firecast {

/// Wind series specification: calm, constant, a pulsed schedule (on with the
/// given components while ((t - phase) mod period) < duty, 0-based t), or a
/// "t,u,v" file.
struct WindSchedule {
  enum class Kind { None, Constant, Pulsed, File };
  Kind kind = Kind::None;
  double u = 0.0, v = 0.0;
  int period = 10, duty = 5, phase = 0;
  std::string path;
};
std::vector<WindRecord> resolve_winds(const WindSchedule& schedule, int steps,
                                      const std::string& base_dir);

struct InitialStateSpec {
  enum class Kind { Block, File };
  Kind kind = Kind::Block;
  int col = 0, row = 0, width = 1, height = 1;  // burning block
  std::string path;                              // first row of a state file
};
std::vector<std::int8_t> resolve_initial(const InitialStateSpec& spec,
                                         const GridSpec& grid,
                                         const std::string& base_dir);

struct SimulateSection {
  int steps = 1;
  InitialStateSpec initial;
  TransitionRule ignite;
  TransitionRule extinguish;
  WindSchedule wind;
};

struct ClassifySection {
  std::string raster;           // long-format file
  std::string raster_manifest;  // or per-frame manifest
  int coarsen_x = 1, coarsen_y = 1;
  ClassifierConfig classifier;
};

struct BasisSection {
  std::string kind = "eof";  // eof | bisquare
  std::string states, temps, winds;
  int train_steps = 0;  // 0 = all steps in the file
  int horizon = 5;
  int rank = 5;
  int knots_x = 3, knots_y = 2;
  double bandwidth = 0.0;  // 0 = 1.5x knot spacing
  std::vector<std::pair<double, double>> knots;  // explicit, overrides grid
};

struct PriorSection {
  double sigma_b = 2.0, sigma_m = 2.0, sigma_0 = 5.0;
  double nu_q = 1.0;
  double c_q_scale = 0.0;  // 0 = r (the default scale r * I)
  double lambda_upper = 0.0;  // 0 = unbounded flat prior
};

struct FitSection {
  std::string states, winds, basis;
  int train_steps = 0;
  int iterations = 10000, burn_in = 5000, thinning = 1;
  int chains = 1;
  int store_z_every = 0;
  bool monotone_likelihood = true;
  PriorSection priors;
};

struct ForecastSection {
  std::string posterior, states, winds, basis;
  std::string wind_forecast;  // file; empty = persistence of last observed
  int train_steps = 0;
  int horizon = 5;
  int draws = 500;
};

struct ScoreSection {
  std::string forecast, truth;
  int offset = 0;  // truth steps offset+1 .. offset+horizon are compared
};

struct RunConfig {
  std::uint64_t seed = 0;
  bool seed_set = false;
  std::string out = ".";
  std::string base_dir = ".";  // directory of the config file
  GridSpec grid;
  NeighborhoodSpec neighborhood;
  std::optional<SimulateSection> simulate;
  std::optional<ClassifySection> classify;
  std::optional<BasisSection> basis;
  std::optional<FitSection> fit;
  std::optional<ForecastSection> forecast;
  std::optional<ScoreSection> score;
};

/// Parse a config file. A run manifest is accepted too (its embedded
/// effective_config is used), so any run can be replayed from its manifest.
RunConfig load_run_config(const std::string& path);
RunConfig parse_run_config(const std::string& json_text,
                           const std::string& base_dir);

/// Canonical JSON for the fully defaulted config; hashing this gives the
/// config fingerprint recorded in manifests.
std::string effective_config_json(const RunConfig& config);
std::uint64_t config_hash(const RunConfig& config);

}  // namespace firecast

#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "firecast/basis.hpp"
#include "firecast/grid.hpp"
#include "firecast/inference.hpp"
#include "firecast/neighborhood.hpp"

namespace firecast {

struct ForecastConfig {
  int horizon = 1;
  /// Winds for the forecast window; shorter series are padded by persisting
  /// the last entry (an empty series means calm).
  std::vector<WindRecord> winds;
  int max_draws = 500;
  std::uint64_t seed = 0;
  /// Observation noise: when off, states evolve deterministically through the
  /// cutpoints instead of being sampled from the link probabilities.
  bool include_obs_noise = true;
  /// Latent VAR innovation noise.
  bool include_innovation = true;
  double hpd_mass = 0.95;
};

/// Per-horizon categorical forecast with uncertainty bands. mean/lo/hi hold
/// one n x 3 matrix per horizon step; probabilities carry monotone fire
/// semantics (mass below a cell's current state is lumped into it, so burnt
/// stays burnt with probability 1). trajectories are the per-draw sampled
/// state paths used for covariate feedback.
struct ForecastDistribution {
  int horizon = 0;
  int cells = 0;
  std::vector<Eigen::MatrixXd> mean, lo, hi;
  std::vector<StateMatrix> trajectories;
};

/// Propagate the fitted model forward from the last observed state row. Per
/// posterior draw: the latent coefficients evolve by the draw's VAR, the
/// covariates are rebuilt from the draw's own sampled states, and state
/// probabilities come from the cutpoint link. Aggregation over draws gives
/// means and HPD bands.
ForecastDistribution forecast(const PosteriorSamples& posterior,
                              std::span<const std::int8_t> last_state,
                              const BasisMatrix* basis,
                              const ForecastConfig& cfg,
                              const NeighborhoodSpec& spec,
                              const GridSpec& grid);

/// Shortest contiguous window of sorted samples containing ceil(mass*count)
/// of them; ties resolve to the leftmost window.
std::pair<double, double> hpd_interval(std::vector<double> samples,
                                       double mass = 0.95);

/// Hard classification: per cell and horizon the argmax of the mean
/// probabilities, ties broken toward the lower state.
StateField most_probable_states(const ForecastDistribution& fd);

}  // namespace firecast

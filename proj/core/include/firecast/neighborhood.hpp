#pragma once

#include <Eigen/Dense>
#include <span>
#include <vector>

#include "firecast/grid.hpp"

namespace firecast {

/// Wind components in m/s, one record per time step.
/// u: east-west (positive = blowing eastward), v: north-south (positive =
/// blowing northward).
struct WindRecord {
  double u = 0.0;
  double v = 0.0;
};

/// Wind-dependent neighborhood rule. The base set is the 8 Moore neighbors;
/// when a wind component exceeds wind_threshold the neighborhood grows by a
/// wedge at Chebyshev distance 2 on the wind's source side (extend_upwind,
/// the default) or its lee side.
struct NeighborhoodSpec {
  double wind_threshold = 2.0;
  bool extend_upwind = true;

  void validate() const;
};

/// Per-time covariate matrix: counts(k, j-1) = number of neighbors of cell k
/// in state j at the previous step, j in {1,2,3}.
struct CovariateMatrix {
  int t = 0;  // 0-based step the counts feed into
  Eigen::MatrixXd counts;
};

/// Neighbor cell indices of `cell` under the given wind. Out-of-grid
/// neighbors are dropped. Both wind components above threshold add the
/// 3-cell diagonal wedge at distance 2; exactly one adds a single cardinal
/// cell at distance 2.
std::vector<int> dynamic_neighbors(int cell, const WindRecord& wind,
                                   const NeighborhoodSpec& spec,
                                   const GridSpec& grid);

/// Covariate row for a single cell from a single state row.
Eigen::Vector3d covariate_row(int cell, std::span<const std::int8_t> prev,
                              const WindRecord& wind,
                              const NeighborhoodSpec& spec,
                              const GridSpec& grid);

/// Covariates for the transition into step t (0-based, t >= 1): neighbor
/// state counts taken from step t-1 under the wind at step t.
CovariateMatrix build_covariates(const StateField& sf, int t,
                                 std::span<const WindRecord> winds,
                                 const NeighborhoodSpec& spec,
                                 const GridSpec& grid);

}  // namespace firecast

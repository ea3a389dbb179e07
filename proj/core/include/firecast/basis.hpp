#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "firecast/grid.hpp"
#include "firecast/neighborhood.hpp"
#include "firecast/simulator.hpp"

namespace firecast {

/// n x r spatial basis. EOF columns are orthonormal with the sign fixed so
/// each column's largest-magnitude entry is positive.
struct BasisMatrix {
  enum class Kind { Eof, Bisquare };

  Kind kind = Kind::Eof;
  Eigen::MatrixXd H;  // n x r
  std::uint64_t seed = 0;

  int rank() const { return static_cast<int>(H.cols()); }
};

/// Leading r spatial patterns of a time-by-cell field: remove each cell's
/// temporal mean, then truncate the SVD. Columns are ordered by decreasing
/// singular value.
BasisMatrix compute_eofs(const Eigen::MatrixXd& field, int rank);

/// Simulation-augmented EOFs: fit the crude multinomial simulator on the
/// observed states, evolve the most probable states `horizon` steps past the
/// record, impute their temperatures from the per-state pools, and take EOFs
/// of the stacked (T+horizon) x n field. horizon = 0 reduces to EOFs of the
/// observed temperatures alone.
BasisMatrix construct_eofs(const StateField& sf, const Eigen::MatrixXd& temps,
                           int horizon, int rank,
                           std::span<const WindRecord> winds,
                           const NeighborhoodSpec& spec, const GridSpec& grid,
                           std::uint64_t seed);

/// Compactly supported bisquare columns {1 - (d/bandwidth)^2}^2 around each
/// knot (knot coordinates in cell units: (col, row)). Knots outside the grid
/// are allowed as long as their support still touches it.
BasisMatrix bisquare_basis(const GridSpec& grid,
                           const std::vector<std::pair<double, double>>& knots,
                           double bandwidth);

/// Equally spaced interior knot layout (kx by ky) plus the matching default
/// bandwidth of 1.5x the knot spacing.
std::vector<std::pair<double, double>> equally_spaced_knots(
    const GridSpec& grid, int kx, int ky);
double default_bisquare_bandwidth(const GridSpec& grid, int kx, int ky);

}  // namespace firecast

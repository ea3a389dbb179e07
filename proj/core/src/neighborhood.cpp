#include "firecast/neighborhood.hpp"

#include <array>
#include <cmath>
#include <string>

#include "firecast/errors.hpp"

namespace firecast {

namespace {

// (dcol, drow) Moore offsets.
constexpr std::array<std::array<int, 2>, 8> kMoore = {{{-1, -1},
                                                       {0, -1},
                                                       {1, -1},
                                                       {-1, 0},
                                                       {1, 0},
                                                       {-1, 1},
                                                       {0, 1},
                                                       {1, 1}}};

}  // namespace

void NeighborhoodSpec::validate() const {
  if (wind_threshold <= 0.0) {
    throw ConfigError("neighborhood: wind_threshold must be positive");
  }
}

std::vector<int> dynamic_neighbors(int cell, const WindRecord& wind,
                                   const NeighborhoodSpec& spec,
                                   const GridSpec& grid) {
  if (cell < 0 || cell >= grid.cells()) {
    throw DataError("dynamic_neighbors: cell index " + std::to_string(cell) +
                    " out of bounds for " + std::to_string(grid.cells()) +
                    " cells");
  }
  if (!std::isfinite(wind.u) || !std::isfinite(wind.v)) {
    throw DataError("dynamic_neighbors: wind components must be finite");
  }
  const int c = grid.col_of(cell);
  const int r = grid.row_of(cell);

  std::vector<int> out;
  out.reserve(11);
  for (const auto& off : kMoore) {
    const int nc = c + off[0];
    const int nr = r + off[1];
    if (grid.contains(nc, nr)) out.push_back(grid.cell_index(nc, nr));
  }

  const bool u_over = std::fabs(wind.u) > spec.wind_threshold;
  const bool v_over = std::fabs(wind.v) > spec.wind_threshold;
  if (!u_over && !v_over) return out;

  // Extension cells sit on the wind's source side by default (a wind blowing
  // north-east, u>0 v>0, extends toward the south-west).
  const int side = spec.extend_upwind ? -1 : 1;
  const int sx = side * (wind.u > 0.0 ? 1 : -1);
  const int sy = side * (wind.v > 0.0 ? 1 : -1);

  auto push = [&](int dc, int dr) {
    const int nc = c + dc;
    const int nr = r + dr;
    if (grid.contains(nc, nr)) out.push_back(grid.cell_index(nc, nr));
  };

  if (u_over && v_over) {
    push(2 * sx, 2 * sy);
    push(2 * sx, sy);
    push(sx, 2 * sy);
  } else if (u_over) {
    push(2 * sx, 0);
  } else {
    push(0, 2 * sy);
  }
  return out;
}

Eigen::Vector3d covariate_row(int cell, std::span<const std::int8_t> prev,
                              const WindRecord& wind,
                              const NeighborhoodSpec& spec,
                              const GridSpec& grid) {
  Eigen::Vector3d counts = Eigen::Vector3d::Zero();
  for (int nb : dynamic_neighbors(cell, wind, spec, grid)) {
    const int s = prev[static_cast<std::size_t>(nb)];
    counts(s - 1) += 1.0;
  }
  return counts;
}

CovariateMatrix build_covariates(const StateField& sf, int t,
                                 std::span<const WindRecord> winds,
                                 const NeighborhoodSpec& spec,
                                 const GridSpec& grid) {
  if (t < 1) {
    throw DataError(
        "build_covariates: step must be at least 1 (counts come from the "
        "previous step)");
  }
  if (t >= sf.steps()) {
    throw DataError("build_covariates: step " + std::to_string(t) +
                    " beyond field with " + std::to_string(sf.steps()) +
                    " steps");
  }
  if (sf.cells() != grid.cells()) {
    throw DataError("build_covariates: field does not match grid");
  }
  const WindRecord wind =
      (static_cast<std::size_t>(t) < winds.size()) ? winds[t] : WindRecord{};

  CovariateMatrix cm;
  cm.t = t;
  cm.counts.resize(grid.cells(), 3);
  std::span<const std::int8_t> prev = sf.row(t - 1);
  for (int k = 0; k < grid.cells(); ++k) {
    cm.counts.row(k) = covariate_row(k, prev, wind, spec, grid).transpose();
  }
  return cm;
}

}  // namespace firecast

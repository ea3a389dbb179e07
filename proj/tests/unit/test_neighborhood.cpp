#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <set>

#include "firecast/errors.hpp"
#include "firecast/grid.hpp"
#include "firecast/neighborhood.hpp"
#include "firecast/rng.hpp"

using namespace firecast;

namespace {

std::set<int> neighbor_set(int col, int row, const WindRecord& wind,
                           const NeighborhoodSpec& spec, const GridSpec& grid) {
  const auto v = dynamic_neighbors(grid.cell_index(col, row), wind, spec, grid);
  return {v.begin(), v.end()};
}

}  // namespace

TEST_CASE("calm wind gives the 8 Moore neighbors") {
  GridSpec grid{10, 10};
  NeighborhoodSpec spec;
  const auto got = neighbor_set(5, 5, {0.0, 0.0}, spec, grid);
  std::set<int> want;
  for (int dr = -1; dr <= 1; ++dr) {
    for (int dc = -1; dc <= 1; ++dc) {
      if (dr == 0 && dc == 0) continue;
      want.insert(grid.cell_index(5 + dc, 5 + dr));
    }
  }
  CHECK(got == want);
}

TEST_CASE("diagonal wind adds the three-cell wedge on the source side") {
  GridSpec grid{10, 10};
  NeighborhoodSpec spec;
  // wind blowing toward the north-east, i.e. from the south-west
  const auto got = neighbor_set(5, 5, {3.0, 3.0}, spec, grid);
  CHECK(got.size() == 11);
  CHECK(got.count(grid.cell_index(3, 3)) == 1);
  CHECK(got.count(grid.cell_index(3, 4)) == 1);
  CHECK(got.count(grid.cell_index(4, 3)) == 1);

  // flipping the rule to the lee side mirrors the wedge
  NeighborhoodSpec lee;
  lee.extend_upwind = false;
  const auto leeward = neighbor_set(5, 5, {3.0, 3.0}, lee, grid);
  CHECK(leeward.size() == 11);
  CHECK(leeward.count(grid.cell_index(7, 7)) == 1);
  CHECK(leeward.count(grid.cell_index(7, 6)) == 1);
  CHECK(leeward.count(grid.cell_index(6, 7)) == 1);
}

TEST_CASE("single-component wind adds one cardinal cell") {
  GridSpec grid{10, 10};
  NeighborhoodSpec spec;
  // from the south (blowing north): one extra cell two rows south
  const auto south = neighbor_set(5, 5, {0.0, 3.0}, spec, grid);
  CHECK(south.size() == 9);
  CHECK(south.count(grid.cell_index(5, 3)) == 1);

  const auto east = neighbor_set(5, 5, {-2.5, 1.0}, spec, grid);
  CHECK(east.size() == 9);
  CHECK(east.count(grid.cell_index(7, 5)) == 1);
}

TEST_CASE("threshold is strict") {
  GridSpec grid{10, 10};
  NeighborhoodSpec spec;
  CHECK(neighbor_set(5, 5, {2.0, 2.0}, spec, grid).size() == 8);
  CHECK(neighbor_set(5, 5, {2.0 + 1e-9, 0.0}, spec, grid).size() == 9);
}

TEST_CASE("boundary truncation drops out-of-grid cells") {
  GridSpec grid{10, 10};
  NeighborhoodSpec spec;
  CHECK(neighbor_set(0, 0, {0.0, 0.0}, spec, grid).size() == 3);
  CHECK(neighbor_set(0, 5, {0.0, 0.0}, spec, grid).size() == 5);
  // wedge cells outside the grid vanish as well
  CHECK(neighbor_set(1, 1, {3.0, 3.0}, spec, grid).size() == 8);
  CHECK_THROWS_AS(dynamic_neighbors(-1, {0, 0}, spec, grid), DataError);
  CHECK_THROWS_AS(dynamic_neighbors(100, {0, 0}, spec, grid), DataError);
}

TEST_CASE("covariates count previous-step neighbor states") {
  GridSpec grid{10, 10};
  NeighborhoodSpec spec;
  std::vector<WindRecord> calm(3);

  StateField sf(3, grid.cells(), kUnburnt);
  CovariateMatrix cm = build_covariates(sf, 1, calm, spec, grid);
  CHECK(cm.counts.row(grid.cell_index(5, 5)) ==
        Eigen::RowVector3d(8.0, 0.0, 0.0));

  // put three burning neighbors around (5,5) at step 1
  StateField mixed(3, grid.cells(), kUnburnt);
  mixed.at(1, grid.cell_index(4, 4)) = kBurning;
  mixed.at(1, grid.cell_index(5, 4)) = kBurning;
  mixed.at(1, grid.cell_index(6, 4)) = kBurning;
  cm = build_covariates(mixed, 2, calm, spec, grid);
  CHECK(cm.counts.row(grid.cell_index(5, 5)) ==
        Eigen::RowVector3d(5.0, 3.0, 0.0));

  // the same configuration under a diagonal wind picks up 3 unburnt cells
  std::vector<WindRecord> windy(3, WindRecord{3.0, 3.0});
  cm = build_covariates(mixed, 2, windy, spec, grid);
  CHECK(cm.counts.row(grid.cell_index(5, 5)) ==
        Eigen::RowVector3d(8.0, 3.0, 0.0));

  CHECK_THROWS_AS(build_covariates(mixed, 0, calm, spec, grid), DataError);
}

TEST_CASE("covariate rows sum to the neighborhood size, at most 11") {
  GridSpec grid{8, 6};
  NeighborhoodSpec spec;
  RngStream rng(21);
  StateField sf(4, grid.cells(), kUnburnt);
  for (int t = 0; t < 4; ++t) {
    for (int i = 0; i < grid.cells(); ++i) {
      sf.at(t, i) = static_cast<std::int8_t>(1 + rng.uniform_index(3));
    }
  }
  for (int t = 1; t < 4; ++t) {
    std::vector<WindRecord> winds(4, WindRecord{t == 2 ? 3.0 : 0.0, 3.0});
    CovariateMatrix cm = build_covariates(sf, t, winds, spec, grid);
    for (int k = 0; k < grid.cells(); ++k) {
      const double total = cm.counts.row(k).sum();
      const auto nbs = dynamic_neighbors(k, winds[t], spec, grid);
      CHECK(total == doctest::Approx(double(nbs.size())));
      CHECK(total <= 11.0);
      for (int j = 0; j < 3; ++j) {
        CHECK(cm.counts(k, j) == doctest::Approx(std::round(cm.counts(k, j))));
      }
    }
  }
}

TEST_CASE("neighborhoods commute with quarter-turn rotations of grid and wind") {
  GridSpec grid{9, 9};
  NeighborhoodSpec spec;
  // the map (col,row) -> (row, n-1-col) sends offset vectors (dc,dr) to
  // (dr,-dc), so the wind transforms as (u,v) -> (v,-u)
  auto rotate_cell = [&](int i) {
    return grid.cell_index(grid.row_of(i), grid.nx - 1 - grid.col_of(i));
  };
  for (const WindRecord wind : {WindRecord{3, 3}, WindRecord{0, -3}, WindRecord{2.5, 0.5}}) {
    const WindRecord rotated_wind{wind.v, -wind.u};
    for (int cell : {0, 13, 40, 76}) {
      auto base = dynamic_neighbors(cell, wind, spec, grid);
      std::set<int> rotated_base;
      for (int nb : base) rotated_base.insert(rotate_cell(nb));
      auto direct = dynamic_neighbors(rotate_cell(cell), rotated_wind, spec, grid);
      CHECK(rotated_base == std::set<int>(direct.begin(), direct.end()));
    }
  }
}

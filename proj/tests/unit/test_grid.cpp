#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <string>

#include "firecast/errors.hpp"
#include "firecast/grid.hpp"
#include "firecast/rng.hpp"

using namespace firecast;

namespace {

TemperatureRaster constant_raster(int nx, int ny, int steps, double value) {
  TemperatureRaster r;
  r.nx = nx;
  r.ny = ny;
  for (int t = 0; t < steps; ++t) {
    r.times.push_back(t + 1);
    r.frames.push_back(Eigen::MatrixXd::Constant(ny, nx, value));
  }
  return r;
}

// one cell's temperature trajectory on a 1x1 grid
TemperatureRaster series_raster(std::initializer_list<double> temps) {
  TemperatureRaster r;
  r.nx = 1;
  r.ny = 1;
  int t = 0;
  for (double v : temps) {
    r.times.push_back(++t);
    r.frames.push_back(Eigen::MatrixXd::Constant(1, 1, v));
  }
  return r;
}

}  // namespace

TEST_CASE("cell indexing is a round-trip bijection") {
  GridSpec grid{7, 5};
  std::vector<bool> seen(grid.cells(), false);
  for (int r = 0; r < grid.ny; ++r) {
    for (int c = 0; c < grid.nx; ++c) {
      const int i = grid.cell_index(c, r);
      REQUIRE(i >= 0);
      REQUIRE(i < grid.cells());
      REQUIRE_FALSE(seen[i]);
      seen[i] = true;
      CHECK(grid.col_of(i) == c);
      CHECK(grid.row_of(i) == r);
    }
  }
  CHECK_THROWS_AS((GridSpec{0, 3}.validate()), ConfigError);
}

TEST_CASE("coarsening block-averages and keeps the time index") {
  TemperatureRaster fine = constant_raster(320, 240, 3, 300.0);
  TemperatureRaster coarse = coarsen_raster(fine, 10, 10);
  CHECK(coarse.nx == 32);
  CHECK(coarse.ny == 24);
  CHECK(coarse.times == fine.times);
  CHECK(coarse.frames[0](0, 0) == doctest::Approx(300.0));

  TemperatureRaster two = constant_raster(2, 2, 1, 300.0);
  CHECK(coarsen_raster(two, 2, 2).frames[0](0, 0) == doctest::Approx(300.0));
  two.frames[0] << 300.0, 300.0, 500.0, 500.0;
  CHECK(coarsen_raster(two, 2, 2).frames[0](0, 0) == doctest::Approx(400.0));
}

TEST_CASE("coarsening rejects non-divisible dimensions naming the axis") {
  TemperatureRaster fine = constant_raster(3, 4, 1, 300.0);
  CHECK_THROWS_WITH_AS(coarsen_raster(fine, 2, 1),
                       doctest::Contains("x dimension 3"), DataError);
  CHECK_THROWS_WITH_AS(coarsen_raster(fine, 1, 3),
                       doctest::Contains("y dimension 4"), DataError);
}

TEST_CASE("coarsening preserves the total (mean preservation)") {
  RngStream rng(11);
  TemperatureRaster fine = constant_raster(12, 8, 2, 0.0);
  for (auto& frame : fine.frames) {
    for (int r = 0; r < fine.ny; ++r) {
      for (int c = 0; c < fine.nx; ++c) frame(r, c) = 250.0 + 200.0 * rng.uniform01();
    }
  }
  TemperatureRaster coarse = coarsen_raster(fine, 4, 2);
  for (int t = 0; t < 2; ++t) {
    CHECK(coarse.frames[t].sum() * 8.0 ==
          doctest::Approx(fine.frames[t].sum()).epsilon(1e-10));
  }
}

TEST_CASE("classification follows the threshold rules") {
  ClassifierConfig cfg;  // background 300, threshold 100, extinction 300

  StateField constant = classify_states(series_raster({300, 300, 300}), cfg);
  for (int t = 0; t < 3; ++t) CHECK(constant.at(t, 0) == kUnburnt);

  StateField burn = classify_states(series_raster({300, 600, 600, 300, 300}), cfg);
  CHECK(burn.at(0, 0) == kUnburnt);
  CHECK(burn.at(1, 0) == kBurning);
  CHECK(burn.at(2, 0) == kBurning);
  CHECK(burn.at(3, 0) == kBurnt);
  CHECK(burn.at(4, 0) == kBurnt);

  // re-ignition is ignored once the cell has burnt out
  StateField mono = classify_states(series_raster({300, 600, 290, 600, 300}), cfg);
  CHECK(mono.at(0, 0) == kUnburnt);
  CHECK(mono.at(1, 0) == kBurning);
  CHECK(mono.at(2, 0) == kBurnt);
  CHECK(mono.at(3, 0) == kBurnt);
  CHECK(mono.at(4, 0) == kBurnt);
}

TEST_CASE("classification always yields a valid state field") {
  RngStream rng(13);
  ClassifierConfig cfg;
  for (int rep = 0; rep < 20; ++rep) {
    TemperatureRaster raster = constant_raster(6, 4, 10, 0.0);
    for (auto& frame : raster.frames) {
      for (int r = 0; r < raster.ny; ++r) {
        for (int c = 0; c < raster.nx; ++c) {
          frame(r, c) = 280.0 + 400.0 * rng.uniform01();
        }
      }
    }
    CHECK(validate_statefield(classify_states(raster, cfg)).empty());
  }
}

TEST_CASE("appending background frames only extends the final state") {
  ClassifierConfig cfg;
  TemperatureRaster base = series_raster({300, 600, 600});
  StateField head = classify_states(base, cfg);
  TemperatureRaster longer = series_raster({300, 600, 600, 300, 300});
  StateField full = classify_states(longer, cfg);
  for (int t = 0; t < head.steps(); ++t) CHECK(full.at(t, 0) == head.at(t, 0));
  // the suffix continues monotonically from the last prefix state
  CHECK(full.at(3, 0) >= head.at(2, 0));
  CHECK(full.at(4, 0) == full.at(3, 0));
}

TEST_CASE("classifier configuration is validated") {
  TemperatureRaster raster = series_raster({300});
  ClassifierConfig bad;
  bad.ignition_threshold = 0.0;
  CHECK_THROWS_AS(classify_states(raster, bad), ConfigError);
  bad = ClassifierConfig{};
  bad.extinction_temp = 250.0;
  CHECK_THROWS_AS(classify_states(raster, bad), ConfigError);
  CHECK_THROWS_AS(classify_states(TemperatureRaster{}, ClassifierConfig{}),
                  DataError);
}

TEST_CASE("state field validation reports violations with location") {
  StateField ok(4, 10, kUnburnt);
  ok.at(2, 3) = kBurning;
  ok.at(3, 3) = kBurnt;
  CHECK(validate_statefield(ok).empty());

  StateField reversal(5, 10, kUnburnt);
  reversal.at(2, 5) = kBurning;
  reversal.at(3, 5) = kUnburnt;  // 2 -> 1
  reversal.at(4, 5) = kUnburnt;
  auto violations = validate_statefield(reversal);
  REQUIRE(violations.size() == 1);
  CHECK(violations[0].cell == 5);
  CHECK(violations[0].time == 3);

  StateField range(2, 4, kUnburnt);
  range.at(1, 2) = 4;
  violations = validate_statefield(range);
  REQUIRE(violations.size() == 1);
  CHECK(violations[0].reason.find("outside") != std::string::npos);
}

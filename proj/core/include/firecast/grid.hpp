#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace firecast {

inline constexpr std::int8_t kUnburnt = 1;
inline constexpr std::int8_t kBurning = 2;
inline constexpr std::int8_t kBurnt = 3;
inline constexpr int kNumStates = 3;

// Row-major so a time step is one contiguous row.
using StateMatrix =
    Eigen::Matrix<std::int8_t, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

/// Rectangular lattice. Cells are indexed row-major from the south-west
/// corner: index = row * nx + col, row 0 = southernmost row, col 0 =
/// westernmost column.
struct GridSpec {
  int nx = 0;
  int ny = 0;

  int cells() const { return nx * ny; }
  bool contains(int col, int row) const {
    return col >= 0 && col < nx && row >= 0 && row < ny;
  }
  int cell_index(int col, int row) const { return row * nx + col; }
  int col_of(int index) const { return index % nx; }
  int row_of(int index) const { return index / nx; }

  void validate() const;
};

/// Gridded Kelvin temperatures over time. frames[k](row, col) with row 0 =
/// southern row; times strictly increasing.
struct TemperatureRaster {
  int nx = 0;
  int ny = 0;
  std::vector<int> times;
  std::vector<Eigen::MatrixXd> frames;

  int steps() const { return static_cast<int>(frames.size()); }
  void validate() const;
};

/// Observed fire history: values(t, i) in {1,2,3}, one row per time step.
struct StateField {
  StateMatrix values;

  StateField() = default;
  StateField(int steps, int cells, std::int8_t fill = kUnburnt)
      : values(StateMatrix::Constant(steps, cells, fill)) {}

  int steps() const { return static_cast<int>(values.rows()); }
  int cells() const { return static_cast<int>(values.cols()); }
  std::int8_t at(int t, int i) const { return values(t, i); }
  std::int8_t& at(int t, int i) { return values(t, i); }
  std::span<const std::int8_t> row(int t) const {
    return {values.row(t).data(), static_cast<std::size_t>(cells())};
  }
};

struct ClassifierConfig {
  double background_temp = 300.0;
  double ignition_threshold = 100.0;  // Kelvin offset above background
  double extinction_temp = 300.0;

  void validate() const;
};

struct StateViolation {
  int cell = 0;
  int time = 0;  // 0-based step
  std::string reason;
};

/// Block-average a fine raster onto a coarser grid. Fine dimensions must be
/// divisible by the factors; the offending axis is named otherwise.
TemperatureRaster coarsen_raster(const TemperatureRaster& fine, int factor_x,
                                 int factor_y);

/// Threshold classification into the three ordered fire states. A cell starts
/// unburnt, turns burning the first time temp >= background + threshold, and
/// turns burnt the first later time temp <= extinction_temp. Monotone by
/// construction.
StateField classify_states(const TemperatureRaster& raster,
                           const ClassifierConfig& cfg);

/// Empty iff per-cell monotonicity and the {1,2,3} range both hold.
std::vector<StateViolation> validate_statefield(const StateField& sf);

}  // namespace firecast

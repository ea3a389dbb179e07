#include "firecast/grid.hpp"

#include <string>

#include "firecast/errors.hpp"

namespace firecast {

void GridSpec::validate() const {
  if (nx < 1 || ny < 1) {
    throw ConfigError("grid: nx and ny must be at least 1 (got " +
                      std::to_string(nx) + "x" + std::to_string(ny) + ")");
  }
}

void TemperatureRaster::validate() const {
  if (frames.size() != times.size()) {
    throw DataError("raster: frame count does not match time index");
  }
  for (std::size_t k = 0; k < frames.size(); ++k) {
    if (frames[k].rows() != ny || frames[k].cols() != nx) {
      throw DataError("raster: frame " + std::to_string(k) +
                      " has wrong shape");
    }
    if ((frames[k].array() <= 0.0).any()) {
      throw DataError("raster: nonpositive temperature at step " +
                      std::to_string(k));
    }
    if (k > 0 && times[k] <= times[k - 1]) {
      throw DataError("raster: time index not strictly increasing at step " +
                      std::to_string(k));
    }
  }
}

void ClassifierConfig::validate() const {
  if (ignition_threshold <= 0.0) {
    throw ConfigError("classifier: ignition_threshold must be positive");
  }
  if (extinction_temp < background_temp) {
    throw ConfigError(
        "classifier: extinction_temp must be at least background_temp");
  }
}

TemperatureRaster coarsen_raster(const TemperatureRaster& fine, int factor_x,
                                 int factor_y) {
  if (factor_x < 1 || factor_y < 1) {
    throw ConfigError("coarsen: factors must be at least 1");
  }
  if (fine.nx % factor_x != 0) {
    throw DataError("coarsen: x dimension " + std::to_string(fine.nx) +
                    " not divisible by factor " + std::to_string(factor_x));
  }
  if (fine.ny % factor_y != 0) {
    throw DataError("coarsen: y dimension " + std::to_string(fine.ny) +
                    " not divisible by factor " + std::to_string(factor_y));
  }
  TemperatureRaster coarse;
  coarse.nx = fine.nx / factor_x;
  coarse.ny = fine.ny / factor_y;
  coarse.times = fine.times;
  coarse.frames.reserve(fine.frames.size());
  for (const auto& frame : fine.frames) {
    Eigen::MatrixXd out(coarse.ny, coarse.nx);
    for (int r = 0; r < coarse.ny; ++r) {
      for (int c = 0; c < coarse.nx; ++c) {
        out(r, c) =
            frame.block(r * factor_y, c * factor_x, factor_y, factor_x).mean();
      }
    }
    coarse.frames.push_back(std::move(out));
  }
  return coarse;
}

StateField classify_states(const TemperatureRaster& raster,
                           const ClassifierConfig& cfg) {
  if (raster.steps() == 0 || raster.nx < 1 || raster.ny < 1) {
    throw DataError("classify: raster is empty");
  }
  cfg.validate();
  const int T = raster.steps();
  const int n = raster.nx * raster.ny;
  const double ignite_at = cfg.background_temp + cfg.ignition_threshold;
  StateField sf(T, n, kUnburnt);
  for (int r = 0; r < raster.ny; ++r) {
    for (int c = 0; c < raster.nx; ++c) {
      const int i = r * raster.nx + c;
      std::int8_t state = kUnburnt;
      for (int t = 0; t < T; ++t) {
        const double temp = raster.frames[t](r, c);
        if (state == kUnburnt && temp >= ignite_at) {
          state = kBurning;
        } else if (state == kBurning && temp <= cfg.extinction_temp) {
          state = kBurnt;
        }
        sf.at(t, i) = state;
      }
    }
  }
  return sf;
}

std::vector<StateViolation> validate_statefield(const StateField& sf) {
  std::vector<StateViolation> out;
  for (int i = 0; i < sf.cells(); ++i) {
    for (int t = 0; t < sf.steps(); ++t) {
      const std::int8_t s = sf.at(t, i);
      if (s < kUnburnt || s > kBurnt) {
        out.push_back({i, t, "state " + std::to_string(int(s)) +
                                 " outside {1,2,3}"});
        continue;
      }
      if (t > 0 && s < sf.at(t - 1, i)) {
        out.push_back({i, t, "state decreased from " +
                                 std::to_string(int(sf.at(t - 1, i))) +
                                 " to " + std::to_string(int(s))});
      }
    }
  }
  return out;
}

}  // namespace firecast

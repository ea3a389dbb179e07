#include "firecast/basis.hpp"

#include <Eigen/SVD>
#include <cmath>
#include <string>

#include "firecast/errors.hpp"

namespace firecast {

BasisMatrix compute_eofs(const Eigen::MatrixXd& field, int rank) {
  const int rows = static_cast<int>(field.rows());
  const int n = static_cast<int>(field.cols());
  if (rank < 1) throw ConfigError("eof: rank must be at least 1");
  if (rank > std::min(rows, n)) {
    throw ConfigError("eof: rank " + std::to_string(rank) +
                      " exceeds min(cells, steps) = " +
                      std::to_string(std::min(rows, n)));
  }
  Eigen::MatrixXd centered = field;
  centered.rowwise() -= field.colwise().mean();

  Eigen::BDCSVD<Eigen::MatrixXd> svd(centered, Eigen::ComputeThinV);
  const Eigen::VectorXd& sv = svd.singularValues();
  const double tol =
      std::max(rows, n) * std::numeric_limits<double>::epsilon() * sv(0);
  for (int k = 0; k < rank; ++k) {
    if (!(sv(k) > tol)) {
      throw DataError("eof: field has numerical rank " + std::to_string(k) +
                      ", below the requested " + std::to_string(rank));
    }
  }

  BasisMatrix basis;
  basis.kind = BasisMatrix::Kind::Eof;
  basis.H = svd.matrixV().leftCols(rank);
  // Sign convention: largest-magnitude entry of each column is positive.
  for (int k = 0; k < rank; ++k) {
    int imax = 0;
    basis.H.col(k).cwiseAbs().maxCoeff(&imax);
    if (basis.H(imax, k) < 0.0) basis.H.col(k) = -basis.H.col(k);
  }
  return basis;
}

BasisMatrix construct_eofs(const StateField& sf, const Eigen::MatrixXd& temps,
                           int horizon, int rank,
                           std::span<const WindRecord> winds,
                           const NeighborhoodSpec& spec, const GridSpec& grid,
                           std::uint64_t seed) {
  const int T = sf.steps();
  if (T < 2) throw DataError("construct_eofs: need at least 2 time steps");
  if (horizon < 0) throw ConfigError("construct_eofs: horizon must be >= 0");
  if (temps.rows() != T || temps.cols() != sf.cells()) {
    throw DataError("construct_eofs: temps shape does not match states");
  }

  Eigen::MatrixXd stacked(T + horizon, sf.cells());
  stacked.topRows(T) = temps;
  if (horizon > 0) {
    const SimpleMultinomialModel model = fit_fsim(sf, winds, spec, grid);
    // Winds past the record: use supplied values where available, then hold
    // the last one.
    std::vector<WindRecord> future(static_cast<std::size_t>(horizon));
    for (int k = 0; k < horizon; ++k) {
      const std::size_t want = static_cast<std::size_t>(T + k);
      if (want < winds.size()) {
        future[static_cast<std::size_t>(k)] = winds[want];
      } else if (!winds.empty()) {
        future[static_cast<std::size_t>(k)] = winds.back();
      }
    }
    const StateField evolved = forward_most_probable(
        model, sf.row(T - 1), horizon, future, spec, grid);
    const StateTemperaturePools pools = state_temperature_pools(sf, temps);
    RngStream rng = RngStream::derive(seed, "gsim");
    stacked.bottomRows(horizon) = gsim_impute(evolved, pools, rng);
  }

  BasisMatrix basis = compute_eofs(stacked, rank);
  basis.seed = seed;
  return basis;
}

BasisMatrix bisquare_basis(const GridSpec& grid,
                           const std::vector<std::pair<double, double>>& knots,
                           double bandwidth) {
  grid.validate();
  if (knots.empty()) throw ConfigError("bisquare: need at least one knot");
  if (!(bandwidth > 0.0)) {
    throw ConfigError("bisquare: bandwidth must be positive");
  }
  const int n = grid.cells();
  BasisMatrix basis;
  basis.kind = BasisMatrix::Kind::Bisquare;
  basis.H.setZero(n, static_cast<int>(knots.size()));
  for (std::size_t k = 0; k < knots.size(); ++k) {
    for (int i = 0; i < n; ++i) {
      const double dx = grid.col_of(i) - knots[k].first;
      const double dy = grid.row_of(i) - knots[k].second;
      const double d = std::hypot(dx, dy);
      if (d < bandwidth) {
        const double u = 1.0 - (d / bandwidth) * (d / bandwidth);
        basis.H(i, static_cast<int>(k)) = u * u;
      }
    }
    if (basis.H.col(static_cast<int>(k)).isZero(0.0)) {
      throw DataError("bisquare: knot " + std::to_string(k) +
                      " has no support on the grid");
    }
  }
  return basis;
}

std::vector<std::pair<double, double>> equally_spaced_knots(
    const GridSpec& grid, int kx, int ky) {
  if (kx < 1 || ky < 1) throw ConfigError("knots: counts must be positive");
  std::vector<std::pair<double, double>> knots;
  knots.reserve(static_cast<std::size_t>(kx) * static_cast<std::size_t>(ky));
  for (int j = 0; j < ky; ++j) {
    for (int i = 0; i < kx; ++i) {
      const double x = (grid.nx - 1.0) * (i + 1.0) / (kx + 1.0);
      const double y = (grid.ny - 1.0) * (j + 1.0) / (ky + 1.0);
      knots.emplace_back(x, y);
    }
  }
  return knots;
}

double default_bisquare_bandwidth(const GridSpec& grid, int kx, int ky) {
  const double sx = (grid.nx - 1.0) / (kx + 1.0);
  const double sy = (grid.ny - 1.0) / (ky + 1.0);
  return 1.5 * std::max(sx, sy);
}

}  // namespace firecast

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/Eigenvalues>
#include <cmath>

#include "firecast/basis.hpp"
#include "firecast/errors.hpp"
#include "firecast/rng.hpp"
#include "firecast/simulator.hpp"
#include "firecast/stats.hpp"

using namespace firecast;

namespace {

Eigen::MatrixXd random_field(int rows, int cols, std::uint64_t seed) {
  RngStream rng(seed);
  Eigen::MatrixXd f(rows, cols);
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) f(i, j) = 300.0 + 40.0 * rng.normal();
  }
  return f;
}

// brute-force oracle: eigen-decomposition of the sample covariance
Eigen::MatrixXd covariance_eigenvectors(const Eigen::MatrixXd& field, int rank) {
  Eigen::MatrixXd centered = field;
  centered.rowwise() -= field.colwise().mean();
  const Eigen::MatrixXd cov =
      centered.transpose() * centered / double(field.rows());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(cov);
  // eigenvalues ascend; take the trailing columns in descending order
  Eigen::MatrixXd out(field.cols(), rank);
  for (int k = 0; k < rank; ++k) {
    out.col(k) = es.eigenvectors().col(field.cols() - 1 - k);
  }
  return out;
}

}  // namespace

TEST_CASE("eof columns are orthonormal with the positive-peak convention") {
  for (std::uint64_t seed : {1ull, 2ull, 3ull}) {
    const Eigen::MatrixXd field = random_field(12, 20, seed);
    BasisMatrix basis = compute_eofs(field, 5);
    const Eigen::MatrixXd gram = basis.H.transpose() * basis.H;
    CHECK((gram - Eigen::MatrixXd::Identity(5, 5)).norm() < 1e-8);
    for (int k = 0; k < 5; ++k) {
      int imax = 0;
      basis.H.col(k).cwiseAbs().maxCoeff(&imax);
      CHECK(basis.H(imax, k) > 0.0);
    }
  }
}

TEST_CASE("eofs match the brute-force covariance eigendecomposition") {
  const Eigen::MatrixXd field = random_field(10, 8, 42);
  BasisMatrix basis = compute_eofs(field, 4);
  const Eigen::MatrixXd oracle = covariance_eigenvectors(field, 4);
  for (int k = 0; k < 4; ++k) {
    const double align = std::fabs(basis.H.col(k).dot(oracle.col(k)));
    CHECK(align == doctest::Approx(1.0).epsilon(1e-8));
  }
}

TEST_CASE("hand-sized matrix: leading pattern and optimal truncation") {
  Eigen::MatrixXd field(6, 4);
  field << 5.0, 1.0, 0.5, -0.2,  //
      4.0, 0.8, 0.3, 0.1,        //
      3.0, 1.2, 0.8, -0.4,       //
      6.0, 0.9, 0.2, 0.3,        //
      2.0, 1.1, 0.6, -0.1,       //
      5.5, 1.0, 0.4, 0.0;
  BasisMatrix basis = compute_eofs(field, 2);
  const Eigen::MatrixXd oracle = covariance_eigenvectors(field, 2);
  for (int k = 0; k < 2; ++k) {
    CHECK(std::fabs(basis.H.col(k).dot(oracle.col(k))) ==
          doctest::Approx(1.0).epsilon(1e-9));
  }

  // rank-2 truncation error equals the oracle's (optimal among rank-2)
  Eigen::MatrixXd centered = field;
  centered.rowwise() -= field.colwise().mean();
  const double err_basis = (centered - centered * basis.H * basis.H.transpose()).norm();
  const double err_oracle = (centered - centered * oracle * oracle.transpose()).norm();
  CHECK(err_basis == doctest::Approx(err_oracle).epsilon(1e-9));
}

TEST_CASE("a rank-one field yields its pattern and full reconstruction") {
  Eigen::VectorXd pattern(5);
  pattern << 1.0, -2.0, 0.5, 3.0, -1.0;
  Eigen::VectorXd loading(7);
  loading << 1.0, 2.0, -1.0, 0.5, 3.0, -2.0, 0.7;
  const Eigen::MatrixXd field = loading * pattern.transpose();
  BasisMatrix basis = compute_eofs(field, 1);
  const Eigen::VectorXd unit = pattern / pattern.norm();
  CHECK(std::fabs(basis.H.col(0).dot(unit)) == doctest::Approx(1.0).epsilon(1e-10));
  Eigen::MatrixXd centered = field;
  centered.rowwise() -= field.colwise().mean();
  CHECK((centered - centered * basis.H * basis.H.transpose()).norm() <
        1e-8 * centered.norm());
}

TEST_CASE("degenerate fields and bad ranks are rejected") {
  const Eigen::MatrixXd constant = Eigen::MatrixXd::Constant(8, 6, 300.0);
  CHECK_THROWS_AS(compute_eofs(constant, 1), DataError);
  const Eigen::MatrixXd field = random_field(6, 4, 9);
  CHECK_THROWS_AS(compute_eofs(field, 5), ConfigError);
  CHECK_THROWS_AS(compute_eofs(field, 0), ConfigError);
}

TEST_CASE("constructed eofs run the full augmentation pipeline") {
  GridSpec grid{8, 6};
  NeighborhoodSpec spec;
  RuleTable rules;
  rules.ignite = TransitionRule::make_probit(0.0, {-0.5, 0.95, 0.15});
  rules.extinguish = TransitionRule::make_probit(-2.5, {-0.5, 0.95, 0.15});
  SimConfig sim;
  sim.grid = grid;
  sim.steps = 14;
  sim.seed = 5;
  sim.initial.assign(grid.cells(), kUnburnt);
  sim.initial[grid.cell_index(2, 2)] = kBurning;
  sim.initial[grid.cell_index(3, 2)] = kBurning;
  StateField sf = simulate_fire(rules, sim);

  RngStream temp_rng(17);
  Eigen::MatrixXd temps(sf.steps(), sf.cells());
  for (int t = 0; t < sf.steps(); ++t) {
    for (int i = 0; i < sf.cells(); ++i) {
      const double base = sf.at(t, i) == kUnburnt ? 300.0
                          : sf.at(t, i) == kBurning ? 600.0
                                                    : 320.0;
      temps(t, i) = base + 5.0 * temp_rng.normal();
    }
  }

  BasisMatrix eofs = construct_eofs(sf, temps, 4, 5, {}, spec, grid, 77);
  CHECK(eofs.rank() == 5);
  CHECK(eofs.H.rows() == grid.cells());
  CHECK((eofs.H.transpose() * eofs.H - Eigen::MatrixXd::Identity(5, 5)).norm() <
        1e-8);

  BasisMatrix again = construct_eofs(sf, temps, 4, 5, {}, spec, grid, 77);
  CHECK(eofs.H == again.H);

  // horizon 0 reduces to plain eofs of the observed record
  BasisMatrix plain = construct_eofs(sf, temps, 0, 3, {}, spec, grid, 77);
  BasisMatrix direct = compute_eofs(temps, 3);
  CHECK((plain.H - direct.H).norm() < 1e-12);
}

TEST_CASE("bisquare basis evaluates the compact kernel") {
  GridSpec grid{9, 7};
  const double bw = 4.0;
  BasisMatrix basis = bisquare_basis(grid, {{4.0, 3.0}}, bw);
  CHECK(basis.H(grid.cell_index(4, 3), 0) == doctest::Approx(1.0));
  CHECK(basis.H(grid.cell_index(0, 3), 0) == doctest::Approx(0.0));  // d == bw
  CHECK(basis.H(grid.cell_index(6, 3), 0) ==
        doctest::Approx(0.5625).epsilon(1e-12));  // d = bw/2
  CHECK((basis.H.array() >= 0.0).all());
  CHECK((basis.H.array() <= 1.0).all());

  // a knot outside the grid is fine while its support intersects
  BasisMatrix edge = bisquare_basis(grid, {{-1.0, 3.0}}, bw);
  CHECK(edge.H.col(0).maxCoeff() > 0.0);
  CHECK_THROWS_AS(bisquare_basis(grid, {{-20.0, 3.0}}, bw), DataError);
  CHECK_THROWS_AS(bisquare_basis(grid, {{4.0, 3.0}}, 0.0), ConfigError);
  CHECK_THROWS_AS(bisquare_basis(grid, {}, bw), ConfigError);
}

TEST_CASE("equally spaced knots cover the interior") {
  GridSpec grid{24, 32};
  const auto knots = equally_spaced_knots(grid, 3, 2);
  REQUIRE(knots.size() == 6);
  for (const auto& [x, y] : knots) {
    CHECK(x > 0.0);
    CHECK(x < grid.nx - 1.0);
    CHECK(y > 0.0);
    CHECK(y < grid.ny - 1.0);
  }
  CHECK(default_bisquare_bandwidth(grid, 3, 2) > 0.0);
}

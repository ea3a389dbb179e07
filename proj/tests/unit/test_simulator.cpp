#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <map>

#include "firecast/errors.hpp"
#include "firecast/grid.hpp"
#include "firecast/simulator.hpp"
#include "firecast/stats.hpp"

using namespace firecast;

namespace {

std::vector<double> table3_ignition() {
  std::vector<double> p(9);
  for (int k = 0; k <= 8; ++k) p[k] = normal_cdf(-4.0 + 1.45 * k);
  return p;
}

SimConfig basic_config(int nx, int ny, int steps, std::uint64_t seed) {
  SimConfig cfg;
  cfg.grid = {nx, ny};
  cfg.steps = steps;
  cfg.seed = seed;
  cfg.initial.assign(cfg.grid.cells(), kUnburnt);
  return cfg;
}

}  // namespace

TEST_CASE("transition rules evaluate and validate") {
  CHECK_THROWS_AS(TransitionRule::make_constant(1.5), ConfigError);
  CHECK_THROWS_AS(TransitionRule::make_burning_table({0.5, -0.1}), ConfigError);

  TransitionRule table = TransitionRule::make_burning_table({0.1, 0.2, 0.3});
  CHECK(table(Eigen::Vector3d(7, 1, 0)) == doctest::Approx(0.2));
  CHECK_THROWS_WITH_AS(table(Eigen::Vector3d(0, 5, 3)),
                       doctest::Contains("5 burning"), ConfigError);

  TransitionRule probit =
      TransitionRule::make_probit(0.0, {-0.5, 0.95, 0.15});
  CHECK(probit(Eigen::Vector3d(5, 3, 0)) ==
        doctest::Approx(normal_cdf(0.35)).epsilon(1e-12));
}

TEST_CASE("zero ignition probability freezes the field") {
  SimConfig cfg = basic_config(6, 6, 10, 1);
  cfg.initial[cfg.grid.cell_index(2, 2)] = kBurning;
  RuleTable rules;
  rules.ignite = TransitionRule::make_constant(0.0);
  rules.extinguish = TransitionRule::make_constant(0.0);
  StateField sf = simulate_fire(rules, cfg);
  for (int t = 0; t < 10; ++t) {
    for (int i = 0; i < cfg.grid.cells(); ++i) {
      CHECK(sf.at(t, i) == cfg.initial[i]);
    }
  }
}

TEST_CASE("certain extinguishment on a single cell") {
  SimConfig cfg = basic_config(1, 1, 4, 1);
  cfg.initial[0] = kBurning;
  RuleTable rules;
  rules.ignite = TransitionRule::make_constant(0.0);
  rules.extinguish = TransitionRule::make_constant(1.0);
  StateField sf = simulate_fire(rules, cfg);
  CHECK(sf.at(0, 0) == kBurning);
  CHECK(sf.at(1, 0) == kBurnt);
  CHECK(sf.at(2, 0) == kBurnt);
  CHECK(sf.at(3, 0) == kBurnt);
}

TEST_CASE("identical seeds reproduce identical fields bit for bit") {
  SimConfig cfg = basic_config(12, 10, 20, 99);
  cfg.initial[cfg.grid.cell_index(5, 5)] = kBurning;
  RuleTable rules;
  rules.ignite = TransitionRule::make_burning_table(table3_ignition());
  rules.extinguish = TransitionRule::make_probit(-2.5, {-0.5, 0.95, 0.15});
  StateField a = simulate_fire(rules, cfg);
  StateField b = simulate_fire(rules, cfg);
  CHECK(a.values == b.values);
  cfg.seed = 100;
  StateField c = simulate_fire(rules, cfg);
  CHECK(a.values != c.values);
}

TEST_CASE("simulated fields always satisfy the monotone invariant") {
  RuleTable rules;
  rules.ignite = TransitionRule::make_probit(0.0, {-0.5, 0.95, 0.15});
  rules.extinguish = TransitionRule::make_probit(-2.5, {-0.5, 0.95, 0.15});
  for (std::uint64_t seed = 1; seed <= 8; ++seed) {
    SimConfig cfg = basic_config(10, 12, 25, seed);
    cfg.initial[cfg.grid.cell_index(4, 5)] = kBurning;
    cfg.initial[cfg.grid.cell_index(5, 5)] = kBurning;
    cfg.winds.assign(25, WindRecord{0.0, 3.0});
    CHECK(validate_statefield(simulate_fire(rules, cfg)).empty());
  }
}

TEST_CASE("empirical ignition frequency matches the table probability") {
  // among at-risk cells with exactly 3 burning and 5 unburnt neighbors the
  // ignition rate converges to the configured 0.6368
  RuleTable rules;
  rules.ignite = TransitionRule::make_burning_table(table3_ignition());
  rules.extinguish = TransitionRule::make_probit(-2.5, {-0.5, 0.95, 0.15});
  const double p = normal_cdf(0.35);

  long at_risk = 0, ignited = 0;
  NeighborhoodSpec spec;
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    SimConfig cfg = basic_config(20, 30, 45, seed);
    for (int r = 14; r < 16; ++r) {
      for (int c = 9; c < 11; ++c) {
        cfg.initial[cfg.grid.cell_index(c, r)] = kBurning;
      }
    }
    StateField sf = simulate_fire(rules, cfg);
    for (int t = 1; t < sf.steps(); ++t) {
      std::span<const std::int8_t> prev = sf.row(t - 1);
      for (int i = 0; i < cfg.grid.cells(); ++i) {
        if (prev[i] != kUnburnt) continue;
        const Eigen::Vector3d x = covariate_row(i, prev, {}, spec, cfg.grid);
        if (x(0) == 5.0 && x(1) == 3.0 && x(2) == 0.0) {
          at_risk++;
          if (sf.at(t, i) >= kBurning) ignited++;
        }
      }
    }
  }
  REQUIRE(at_risk > 300);
  const double freq = double(ignited) / double(at_risk);
  const double tol = 3.0 * std::sqrt(p * (1.0 - p) / double(at_risk));
  CHECK(std::fabs(freq - p) < tol);
}

TEST_CASE("fit_fsim recovers a known multinomial rule") {
  // draw states at each step directly from a known softmax of the previous
  // step's neighbor counts, then refit
  GridSpec grid{12, 12};
  NeighborhoodSpec spec;
  Eigen::Matrix<double, 2, 4> truth;
  truth << -2.0, -0.1, 0.8, 0.2,  // class burning vs unburnt
      -4.0, -0.2, 0.4, 0.9;       // class burnt vs unburnt
  SimpleMultinomialModel true_model(truth);

  RngStream rng(7);
  const int T = 60;
  StateField sf(T, grid.cells(), kUnburnt);
  for (int i = 0; i < grid.cells(); ++i) {
    sf.at(0, i) = static_cast<std::int8_t>(1 + rng.uniform_index(3));
  }
  for (int t = 1; t < T; ++t) {
    std::span<const std::int8_t> prev = sf.row(t - 1);
    for (int i = 0; i < grid.cells(); ++i) {
      const Eigen::Vector3d p =
          true_model.probabilities(covariate_row(i, prev, {}, spec, grid));
      const double u = rng.uniform01();
      sf.at(t, i) = u < p(0) ? kUnburnt : (u < p(0) + p(1) ? kBurning : kBurnt);
    }
  }

  SimpleMultinomialModel fit = fit_fsim(sf, {}, spec, grid);

  // empirical frequencies are the oracle for well-populated configurations
  std::map<std::array<int, 3>, std::array<long, 4>> freq;
  for (int t = 1; t < T; ++t) {
    std::span<const std::int8_t> prev = sf.row(t - 1);
    for (int i = 0; i < grid.cells(); ++i) {
      const Eigen::Vector3d x = covariate_row(i, prev, {}, spec, grid);
      auto& bin = freq[{int(x(0)), int(x(1)), int(x(2))}];
      bin[sf.at(t, i) - 1]++;
      bin[3]++;
    }
  }
  int checked = 0;
  for (const auto& [key, counts] : freq) {
    if (counts[3] < 100) continue;
    const Eigen::Vector3d x(key[0], key[1], key[2]);
    const Eigen::Vector3d p = fit.probabilities(x);
    for (int j = 0; j < 3; ++j) {
      const double empirical = double(counts[j]) / double(counts[3]);
      CHECK(std::fabs(p(j) - empirical) < 0.05);
    }
    checked++;
  }
  CHECK(checked >= 3);
}

TEST_CASE("fit_fsim keeps rare transitions improbable") {
  // ignition only ever happens at 4+ burning neighbors
  RuleTable rules;
  rules.ignite =
      TransitionRule::make_burning_table({0, 0, 0, 0, 0.9, 0.9, 0.9, 0.9, 0.9});
  rules.extinguish = TransitionRule::make_constant(0.15);
  SimConfig cfg = basic_config(14, 14, 40, 3);
  for (int r = 6; r < 9; ++r) {
    for (int c = 6; c < 9; ++c) {
      cfg.initial[cfg.grid.cell_index(c, r)] = kBurning;
    }
  }
  StateField sf = simulate_fire(rules, cfg);
  SimpleMultinomialModel fit = fit_fsim(sf, {}, cfg.neighborhood, cfg.grid);
  for (int k = 0; k <= 3; ++k) {
    const Eigen::Vector3d x(8 - k, k, 0);
    CHECK(fit.probabilities(x)(1) < 0.5);
  }
}

TEST_CASE("degenerate training data is rejected") {
  StateField all_burnt(5, 9, kBurnt);
  CHECK_THROWS_AS(fit_fsim(all_burnt, {}, NeighborhoodSpec{}, GridSpec{3, 3}),
                  DataError);
}

TEST_CASE("most-probable forward evolution is deterministic and monotone") {
  GridSpec grid{8, 8};
  NeighborhoodSpec spec;

  // stay-unburnt weights: huge negative intercepts for both upper classes
  Eigen::Matrix<double, 2, 4> stay;
  stay << -8.0, 0.0, 0.0, 0.0, -12.0, 0.0, 0.0, 0.0;
  SimpleMultinomialModel freeze(stay);
  std::vector<std::int8_t> last(grid.cells(), kUnburnt);
  last[grid.cell_index(3, 3)] = kBurning;
  StateField frozen = forward_most_probable(freeze, last, 4, {}, spec, grid);
  for (int k = 0; k < 4; ++k) {
    for (int i = 0; i < grid.cells(); ++i) CHECK(frozen.at(k, i) == last[i]);
  }

  // ignition at 5 burning neighbors beats staying put
  Eigen::Matrix<double, 2, 4> spread;
  spread << -4.0, 0.0, 0.9, 0.0, -20.0, 0.0, 0.0, 0.0;
  SimpleMultinomialModel model(spread);
  std::vector<std::int8_t> block(grid.cells(), kUnburnt);
  for (int r = 2; r <= 4; ++r) {
    for (int c = 2; c <= 4; ++c) block[grid.cell_index(c, r)] = kBurning;
  }
  block[grid.cell_index(3, 3)] = kBurning;
  StateField step = forward_most_probable(model, block, 1, {}, spec, grid);
  // the cell east of the block sees 3 burning neighbors: stays unburnt;
  // the block's inner cell sees 8: P(burning) = softmax(.. 0.9*8-4=3.2 ..)
  CHECK(step.at(0, grid.cell_index(5, 3)) == kUnburnt);
  CHECK(step.at(0, grid.cell_index(3, 3)) == kBurning);

  StateField again = forward_most_probable(model, block, 1, {}, spec, grid);
  CHECK(step.values == again.values);

  StateField monotone = forward_most_probable(model, block, 6, {}, spec, grid);
  StateField with_prefix(7, grid.cells());
  for (int i = 0; i < grid.cells(); ++i) with_prefix.at(0, i) = block[i];
  with_prefix.values.bottomRows(6) = monotone.values;
  CHECK(validate_statefield(with_prefix).empty());
}

TEST_CASE("state-pool imputation draws from the right pools") {
  StateField sf(2, 3);
  sf.values << 1, 2, 3, 1, 2, 3;
  Eigen::MatrixXd temps(2, 3);
  temps << 300.0, 500.0, 310.0, 302.0, 520.0, 300.0;
  StateTemperaturePools pools = state_temperature_pools(sf, temps);
  CHECK(pools.temps[0].size() == 2);
  CHECK(pools.temps[1].size() == 2);
  CHECK(pools.temps[2].size() == 2);

  // singleton pool: every burnt draw is that value
  StateTemperaturePools singleton;
  singleton.temps[0] = {300.0};
  singleton.temps[1] = {480.0, 520.0};
  singleton.temps[2] = {300.0};
  StateField future(3, 3, kBurnt);
  RngStream rng(5);
  Eigen::MatrixXd imputed = gsim_impute(future, singleton, rng);
  CHECK((imputed.array() == 300.0).all());

  // draws stay inside the pool's range and repeat under the same seed
  StateField burning(4, 3, kBurning);
  RngStream r1(9), r2(9);
  Eigen::MatrixXd a = gsim_impute(burning, singleton, r1);
  Eigen::MatrixXd b = gsim_impute(burning, singleton, r2);
  CHECK(a == b);
  CHECK((a.array() >= 480.0).all());
  CHECK((a.array() <= 520.0).all());

  StateTemperaturePools empty_pool;
  empty_pool.temps[1] = {500.0};
  CHECK_THROWS_AS(gsim_impute(future, empty_pool, rng), DataError);
}

#include "firecast/simulator.hpp"

#include <cmath>
#include <string>

#include "firecast/errors.hpp"
#include "firecast/stats.hpp"

namespace firecast {

TransitionRule TransitionRule::make_constant(double p) {
  if (p < 0.0 || p > 1.0) {
    throw ConfigError("rule: constant probability must lie in [0,1]");
  }
  TransitionRule r;
  r.kind = Kind::Constant;
  r.constant = p;
  return r;
}

TransitionRule TransitionRule::make_burning_table(std::vector<double> p) {
  for (double v : p) {
    if (v < 0.0 || v > 1.0) {
      throw ConfigError("rule: table probabilities must lie in [0,1]");
    }
  }
  TransitionRule r;
  r.kind = Kind::BurningTable;
  r.burning_table = std::move(p);
  return r;
}

TransitionRule TransitionRule::make_probit(double intercept,
                                           const Eigen::Vector3d& coef) {
  TransitionRule r;
  r.kind = Kind::Probit;
  r.intercept = intercept;
  r.coef = coef;
  return r;
}

double TransitionRule::operator()(const Eigen::Vector3d& counts) const {
  switch (kind) {
    case Kind::Constant:
      return constant;
    case Kind::BurningTable: {
      const int k = static_cast<int>(std::lround(counts(1)));
      if (k < 0 || static_cast<std::size_t>(k) >= burning_table.size()) {
        throw ConfigError("rule: no table entry for " + std::to_string(k) +
                          " burning neighbors");
      }
      return burning_table[static_cast<std::size_t>(k)];
    }
    case Kind::Probit:
      return normal_cdf(intercept + coef.dot(counts));
  }
  throw ConfigError("rule: unknown kind");
}

void SimConfig::validate() const {
  grid.validate();
  neighborhood.validate();
  if (steps < 1) throw ConfigError("simulate: steps must be at least 1");
  if (static_cast<int>(initial.size()) != grid.cells()) {
    throw ConfigError("simulate: initial state has " +
                      std::to_string(initial.size()) + " cells, grid has " +
                      std::to_string(grid.cells()));
  }
  for (std::int8_t s : initial) {
    if (s < kUnburnt || s > kBurnt) {
      throw ConfigError("simulate: initial state outside {1,2,3}");
    }
  }
  if (!winds.empty() && static_cast<int>(winds.size()) < steps) {
    throw ConfigError("simulate: wind series shorter than the simulation");
  }
}

StateField simulate_fire(const RuleTable& rules, const SimConfig& cfg) {
  cfg.validate();
  const int n = cfg.grid.cells();
  StateField sf(cfg.steps, n);
  for (int i = 0; i < n; ++i) sf.at(0, i) = cfg.initial[i];

  RngStream rng = RngStream::derive(cfg.seed, "simulate");
  for (int t = 1; t < cfg.steps; ++t) {
    const WindRecord wind = cfg.winds.empty() ? WindRecord{} : cfg.winds[t];
    std::span<const std::int8_t> prev = sf.row(t - 1);
    for (int i = 0; i < n; ++i) {
      const std::int8_t s = prev[i];
      if (s == kBurnt) {
        sf.at(t, i) = kBurnt;
        continue;
      }
      const Eigen::Vector3d x =
          covariate_row(i, prev, wind, cfg.neighborhood, cfg.grid);
      if (s == kUnburnt) {
        const double p = rules.ignite(x);
        sf.at(t, i) = (rng.uniform01() < p) ? kBurning : kUnburnt;
      } else {
        const double p = rules.extinguish(x);
        sf.at(t, i) = (rng.uniform01() < p) ? kBurnt : kBurning;
      }
    }
  }
  return sf;
}

Eigen::Vector3d SimpleMultinomialModel::probabilities(
    const Eigen::Vector3d& counts) const {
  Eigen::Vector4d f(1.0, counts(0), counts(1), counts(2));
  Eigen::Vector3d eta(0.0, weights_.row(0).dot(f), weights_.row(1).dot(f));
  const double m = eta.maxCoeff();
  Eigen::Vector3d e = (eta.array() - m).exp();
  return e / e.sum();
}

SimpleMultinomialModel fit_fsim(const StateField& sf,
                                std::span<const WindRecord> winds,
                                const NeighborhoodSpec& spec,
                                const GridSpec& grid) {
  const int T = sf.steps();
  const int n = sf.cells();
  if (T < 2) throw DataError("fit_fsim: need at least 2 time steps");
  if (n != grid.cells()) throw DataError("fit_fsim: field does not match grid");

  // Assemble rows (features, class) for t = 1..T-1.
  const int rows = (T - 1) * n;
  Eigen::MatrixXd F(rows, 4);
  std::vector<int> cls(static_cast<std::size_t>(rows));
  bool seen[3] = {false, false, false};
  int row = 0;
  for (int t = 1; t < T; ++t) {
    const CovariateMatrix cm = build_covariates(sf, t, winds, spec, grid);
    for (int i = 0; i < n; ++i, ++row) {
      F(row, 0) = 1.0;
      F.row(row).segment(1, 3) = cm.counts.row(i);
      const int c = sf.at(t, i) - 1;
      cls[static_cast<std::size_t>(row)] = c;
      seen[c] = true;
    }
  }
  if ((seen[0] ? 1 : 0) + (seen[1] ? 1 : 0) + (seen[2] ? 1 : 0) < 2) {
    throw DataError("fit_fsim: degenerate training data (single state)");
  }

  // Newton iterations on the 8 free weights (classes 2,3 vs baseline 1),
  // ridge 1e-4 keeps separable data bounded.
  const double ridge = 1e-4;
  Eigen::VectorXd w = Eigen::VectorXd::Zero(8);
  for (int iter = 0; iter < 100; ++iter) {
    Eigen::VectorXd g = ridge * w;
    Eigen::MatrixXd Hs = ridge * Eigen::MatrixXd::Identity(8, 8);
    for (int rix = 0; rix < rows; ++rix) {
      const Eigen::Vector4d f = F.row(rix).transpose();
      const double e2 = w.segment(0, 4).dot(f);
      const double e3 = w.segment(4, 4).dot(f);
      const double m = std::max({0.0, e2, e3});
      const double z1 = std::exp(-m);
      const double z2 = std::exp(e2 - m);
      const double z3 = std::exp(e3 - m);
      const double zs = z1 + z2 + z3;
      const double p2 = z2 / zs;
      const double p3 = z3 / zs;
      const int c = cls[static_cast<std::size_t>(rix)];
      const double y2 = (c == 1) ? 1.0 : 0.0;
      const double y3 = (c == 2) ? 1.0 : 0.0;
      g.segment(0, 4) += (p2 - y2) * f;
      g.segment(4, 4) += (p3 - y3) * f;
      const Eigen::Matrix4d ff = f * f.transpose();
      Hs.block(0, 0, 4, 4) += p2 * (1.0 - p2) * ff;
      Hs.block(4, 4, 4, 4) += p3 * (1.0 - p3) * ff;
      Hs.block(0, 4, 4, 4) += -p2 * p3 * ff;
      Hs.block(4, 0, 4, 4) += -p2 * p3 * ff;
    }
    const Eigen::VectorXd step = Hs.ldlt().solve(g);
    w -= step;
    if (step.norm() < 1e-10 * (1.0 + w.norm())) break;
  }
  Eigen::Matrix<double, 2, 4> W;
  W.row(0) = w.segment(0, 4).transpose();
  W.row(1) = w.segment(4, 4).transpose();
  return SimpleMultinomialModel(W);
}

StateField forward_most_probable(const SimpleMultinomialModel& model,
                                 std::span<const std::int8_t> last,
                                 int horizon,
                                 std::span<const WindRecord> winds,
                                 const NeighborhoodSpec& spec,
                                 const GridSpec& grid) {
  if (horizon < 1) throw ConfigError("forward: horizon must be at least 1");
  const int n = grid.cells();
  if (static_cast<int>(last.size()) != n) {
    throw DataError("forward: state row does not match grid");
  }
  StateField out(horizon, n);
  std::vector<std::int8_t> prev(last.begin(), last.end());
  for (int k = 0; k < horizon; ++k) {
    const WindRecord wind =
        winds.empty() ? WindRecord{}
                      : winds[std::min<std::size_t>(k, winds.size() - 1)];
    for (int i = 0; i < n; ++i) {
      const Eigen::Vector3d x = covariate_row(i, prev, wind, spec, grid);
      const Eigen::Vector3d p = model.probabilities(x);
      const int lo = prev[static_cast<std::size_t>(i)] - 1;
      int best = lo;
      for (int j = lo + 1; j < 3; ++j) {
        if (p(j) > p(best)) best = j;  // ties resolve to the lower state
      }
      out.at(k, i) = static_cast<std::int8_t>(best + 1);
    }
    for (int i = 0; i < n; ++i) prev[static_cast<std::size_t>(i)] = out.at(k, i);
  }
  return out;
}

StateTemperaturePools state_temperature_pools(const StateField& sf,
                                              const Eigen::MatrixXd& temps) {
  if (temps.rows() != sf.steps() || temps.cols() != sf.cells()) {
    throw DataError("temperature pools: temps shape does not match states");
  }
  StateTemperaturePools pools;
  for (int t = 0; t < sf.steps(); ++t) {
    for (int i = 0; i < sf.cells(); ++i) {
      pools.temps[sf.at(t, i) - 1].push_back(temps(t, i));
    }
  }
  return pools;
}

Eigen::MatrixXd gsim_impute(const StateField& states,
                            const StateTemperaturePools& pools,
                            RngStream& rng) {
  Eigen::MatrixXd out(states.steps(), states.cells());
  for (int t = 0; t < states.steps(); ++t) {
    for (int i = 0; i < states.cells(); ++i) {
      const auto& pool = pools.temps[states.at(t, i) - 1];
      if (pool.empty()) {
        throw DataError("gsim_impute: empty temperature pool for state " +
                        std::to_string(int(states.at(t, i))));
      }
      out(t, i) = pool[rng.uniform_index(pool.size())];
    }
  }
  return out;
}

}  // namespace firecast

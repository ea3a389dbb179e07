#include "firecast/forecast.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

#include "firecast/errors.hpp"
#include "firecast/linalg.hpp"
#include "firecast/stats.hpp"

namespace firecast {

namespace {

Eigen::Vector3d link_probabilities(double m, double lambda2) {
  const double c1 = normal_cdf(-m);
  const double c2 = normal_cdf(lambda2 - m);
  return {c1, c2 - c1, 1.0 - c2};
}

// Monotone fire semantics: a categorical draw below the current state is
// overridden to the current state, i.e. its mass is lumped there.
Eigen::Vector3d lump_below(const Eigen::Vector3d& p, int current) {
  Eigen::Vector3d out = Eigen::Vector3d::Zero();
  for (int j = 0; j < 3; ++j) out(std::max(j, current - 1)) += p(j);
  return out;
}

int categorical_draw(const Eigen::Vector3d& p, RngStream& rng) {
  const double u = rng.uniform01();
  double acc = 0.0;
  for (int j = 0; j < 3; ++j) {
    acc += p(j);
    if (u <= acc) return j + 1;
  }
  return 3;
}

int cutpoint_state(double m, double lambda2) {
  if (m <= 0.0) return 1;
  if (m <= lambda2) return 2;
  return 3;
}

}  // namespace

std::pair<double, double> hpd_interval(std::vector<double> samples,
                                       double mass) {
  if (samples.size() < 2) {
    throw DataError("hpd_interval: need at least 2 samples");
  }
  if (!(mass > 0.0 && mass < 1.0)) {
    throw ConfigError("hpd_interval: mass must lie in (0,1)");
  }
  std::sort(samples.begin(), samples.end());
  const std::size_t n = samples.size();
  std::size_t m = static_cast<std::size_t>(
      std::ceil(mass * static_cast<double>(n)));
  m = std::clamp<std::size_t>(m, 1, n);
  std::size_t best = 0;
  double best_width = samples[m - 1] - samples[0];
  for (std::size_t i = 1; i + m <= n; ++i) {
    const double width = samples[i + m - 1] - samples[i];
    if (width < best_width) {
      best_width = width;
      best = i;
    }
  }
  return {samples[best], samples[best + m - 1]};
}

ForecastDistribution forecast(const PosteriorSamples& posterior,
                              std::span<const std::int8_t> last_state,
                              const BasisMatrix* basis,
                              const ForecastConfig& cfg,
                              const NeighborhoodSpec& spec,
                              const GridSpec& grid) {
  if (posterior.draws() < 1) throw DataError("forecast: posterior is empty");
  if (cfg.horizon < 1) throw ConfigError("forecast: horizon must be >= 1");
  const int n = grid.cells();
  if (static_cast<int>(last_state.size()) != n) {
    throw DataError("forecast: state row does not match grid");
  }
  const int r = posterior.r;
  Eigen::MatrixXd H(n, 0);
  if (r > 0) {
    if (basis == nullptr) {
      throw ConfigError("forecast: posterior has latent rank " +
                        std::to_string(r) + " but no basis was supplied");
    }
    if (basis->H.rows() != n || basis->H.cols() != r) {
      throw ConfigError("forecast: basis is " + std::to_string(basis->H.rows()) +
                        "x" + std::to_string(basis->H.cols()) +
                        ", posterior expects " + std::to_string(n) + "x" +
                        std::to_string(r));
    }
    H = basis->H;
  }

  const int total = posterior.draws();
  const int use = std::min(std::max(cfg.max_draws, 1), total);
  const int tau = cfg.horizon;

  auto wind_at = [&cfg](int k) -> WindRecord {
    if (cfg.winds.empty()) return {};
    const std::size_t idx =
        std::min(static_cast<std::size_t>(k), cfg.winds.size() - 1);
    return cfg.winds[idx];
  };

  // samples[k][j] is n x use.
  std::vector<std::array<Eigen::MatrixXd, 3>> samples(
      static_cast<std::size_t>(tau));
  for (auto& row : samples) {
    for (auto& mat : row) mat.resize(n, use);
  }

  ForecastDistribution fd;
  fd.horizon = tau;
  fd.cells = n;
  fd.trajectories.reserve(static_cast<std::size_t>(use));

  std::vector<std::int8_t> state(last_state.begin(), last_state.end());
  for (int d = 0; d < use; ++d) {
    const int draw = static_cast<int>(
        (static_cast<long long>(d) * total) / use);
    RngStream rng =
        RngStream::derive(cfg.seed, "forecast", static_cast<std::uint64_t>(d));
    const Eigen::VectorXd beta = posterior.beta.row(draw).transpose();
    const double lambda2 = posterior.lambda2(draw);
    Eigen::VectorXd y;
    Eigen::MatrixXd M, Lq;
    if (r > 0) {
      y = posterior.y_last.row(draw).transpose();
      M = posterior.M[static_cast<std::size_t>(draw)];
      Lq = chol_lower(posterior.Q[static_cast<std::size_t>(draw)],
                      "forecast: Q draw");
    }

    std::copy(last_state.begin(), last_state.end(), state.begin());
    StateMatrix traj(tau, n);
    for (int k = 0; k < tau; ++k) {
      if (r > 0) {
        y = M * y;
        if (cfg.include_innovation) {
          Eigen::VectorXd z(r);
          for (int j = 0; j < r; ++j) z(j) = rng.normal();
          y += Lq * z;
        }
      }
      const WindRecord wind = wind_at(k);
      const Eigen::VectorXd hy =
          r > 0 ? Eigen::VectorXd(H * y) : Eigen::VectorXd::Zero(n);
      std::span<const std::int8_t> prev(state.data(), state.size());
      std::vector<std::int8_t> next(static_cast<std::size_t>(n));
      for (int i = 0; i < n; ++i) {
        const Eigen::Vector3d x = covariate_row(i, prev, wind, spec, grid);
        const double m = beta.dot(x) + hy(i);
        const Eigen::Vector3d p =
            lump_below(link_probabilities(m, lambda2), prev[i]);
        for (int j = 0; j < 3; ++j) {
          samples[static_cast<std::size_t>(k)][static_cast<std::size_t>(j)](
              i, d) = p(j);
        }
        int s_next;
        if (cfg.include_obs_noise) {
          s_next = categorical_draw(p, rng);
        } else {
          s_next = std::max(cutpoint_state(m, lambda2), int(prev[i]));
        }
        next[static_cast<std::size_t>(i)] = static_cast<std::int8_t>(s_next);
        traj(k, i) = static_cast<std::int8_t>(s_next);
      }
      state = std::move(next);
    }
    fd.trajectories.push_back(std::move(traj));
  }

  fd.mean.resize(static_cast<std::size_t>(tau));
  fd.lo.resize(static_cast<std::size_t>(tau));
  fd.hi.resize(static_cast<std::size_t>(tau));
  std::vector<double> buf(static_cast<std::size_t>(use));
  for (int k = 0; k < tau; ++k) {
    auto& mean = fd.mean[static_cast<std::size_t>(k)];
    auto& lo = fd.lo[static_cast<std::size_t>(k)];
    auto& hi = fd.hi[static_cast<std::size_t>(k)];
    mean.resize(n, 3);
    lo.resize(n, 3);
    hi.resize(n, 3);
    for (int j = 0; j < 3; ++j) {
      const auto& mat =
          samples[static_cast<std::size_t>(k)][static_cast<std::size_t>(j)];
      for (int i = 0; i < n; ++i) {
        mean(i, j) = mat.row(i).mean();
        if (use >= 2) {
          for (int d = 0; d < use; ++d) {
            buf[static_cast<std::size_t>(d)] = mat(i, d);
          }
          auto [l, h] = hpd_interval(buf, cfg.hpd_mass);
          // The shortest window can exclude a heavy atom on one side; widen
          // so the band always contains the mean.
          lo(i, j) = std::min(l, mean(i, j));
          hi(i, j) = std::max(h, mean(i, j));
        } else {
          lo(i, j) = hi(i, j) = mean(i, j);
        }
      }
    }
  }
  return fd;
}

StateField most_probable_states(const ForecastDistribution& fd) {
  StateField out(fd.horizon, fd.cells);
  for (int k = 0; k < fd.horizon; ++k) {
    const auto& mean = fd.mean[static_cast<std::size_t>(k)];
    for (int i = 0; i < fd.cells; ++i) {
      int best = 0;
      for (int j = 1; j < 3; ++j) {
        if (mean(i, j) > mean(i, best)) best = j;
      }
      out.at(k, i) = static_cast<std::int8_t>(best + 1);
    }
  }
  return out;
}

}  // namespace firecast

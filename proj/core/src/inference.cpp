#include "firecast/inference.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <string>

#include "firecast/errors.hpp"
#include "firecast/forecast.hpp"
#include "firecast/linalg.hpp"
#include "firecast/stats.hpp"

namespace firecast {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Exponential-proposal rejection for a standard normal restricted to
// [lo, hi] with lo in the far right tail. The proposal is the shifted
// exponential restricted to the same interval, so narrow windows do not
// stall.
double tail_sample(double lo, double hi, RngStream& rng) {
  const double alpha = 0.5 * (lo + std::sqrt(lo * lo + 4.0));
  const double range =
      std::isinf(hi) ? 1.0 : 1.0 - std::exp(-alpha * (hi - lo));
  while (true) {
    const double u = rng.uniform01();
    double z = lo - std::log1p(-range * u) / alpha;
    if (z > hi) z = hi;  // guards round-off at the upper edge
    const double d = z - alpha;
    if (rng.uniform01() <= std::exp(-0.5 * d * d)) return z;
  }
}

double truncated_standard_normal(double lo, double hi, RngStream& rng) {
  constexpr double kTail = 4.0;
  if (lo >= kTail) return tail_sample(lo, hi, rng);
  if (hi <= -kTail) return -tail_sample(-hi, -lo, rng);
  const double a = std::isinf(lo) ? 0.0 : normal_cdf(lo);
  const double b = std::isinf(hi) ? 1.0 : normal_cdf(hi);
  const double u = a + (b - a) * rng.uniform01();
  double z = normal_quantile(std::min(std::max(u, 1e-300), 1.0 - 1e-16));
  if (z < lo) z = lo;
  if (z > hi) z = hi;
  return z;
}

// Draw x ~ N(P^{-1} a, P^{-1}) from the natural parameterization.
Eigen::VectorXd sample_from_precision(const Eigen::MatrixXd& precision,
                                      const Eigen::VectorXd& a,
                                      RngStream& rng, const char* context) {
  const auto llt = safe_llt(precision, context);
  const Eigen::VectorXd mean = llt.solve(a);
  Eigen::VectorXd z(a.size());
  for (Eigen::Index i = 0; i < z.size(); ++i) z(i) = rng.normal();
  return mean + llt.matrixU().solve(z);
}

// Wishart(scale, df) via the Bartlett construction.
Eigen::MatrixXd wishart_sample(const Eigen::MatrixXd& scale, double df,
                               RngStream& rng, const char* context) {
  const int r = static_cast<int>(scale.rows());
  const Eigen::MatrixXd L = chol_lower(scale, context);
  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(r, r);
  for (int i = 0; i < r; ++i) {
    A(i, i) = std::sqrt(rng.chi_squared(df - i));
    for (int j = 0; j < i; ++j) A(i, j) = rng.normal();
  }
  const Eigen::MatrixXd LA = L * A;
  return LA * LA.transpose();
}

// Latent interval for observed state s. Vanilla ordinal truncation uses
// (lambda_{s-1}, lambda_s]; monotone semantics open the lower bound when the
// state did not advance (prev == s), and leave already-burnt rows free.
std::pair<double, double> state_interval(std::int8_t s, double lambda2) {
  switch (s) {
    case kUnburnt:
      return {-kInf, 0.0};
    case kBurning:
      return {0.0, lambda2};
    default:
      return {lambda2, kInf};
  }
}

// Transition-conditional intervals: a cell at risk of igniting is cut by the
// first cutpoint only (advance <=> Z > 0), a burning cell by the second
// (extinguish <=> Z > lambda2), and an already-burnt cell is unconstrained.
std::pair<double, double> state_interval_monotone(std::int8_t s,
                                                  std::int8_t prev,
                                                  double lambda2) {
  if (prev == kUnburnt) {
    return s == kUnburnt ? std::pair<double, double>{-kInf, 0.0}
                         : std::pair<double, double>{0.0, kInf};
  }
  if (prev == kBurning) {
    return s == kBurning ? std::pair<double, double>{-kInf, lambda2}
                         : std::pair<double, double>{lambda2, kInf};
  }
  return {-kInf, kInf};
}

}  // namespace

Priors Priors::defaults(int p, int r) {
  Priors pr;
  pr.mu_b = Eigen::VectorXd::Zero(p);
  pr.sigma_b = 2.0 * Eigen::MatrixXd::Identity(p, p);
  pr.mu_m = Eigen::VectorXd::Zero(r * r);
  pr.sigma_m = 2.0 * Eigen::MatrixXd::Identity(r * r, r * r);
  pr.mu_0 = Eigen::VectorXd::Zero(r);
  pr.sigma_0 = 5.0 * Eigen::MatrixXd::Identity(r, r);
  pr.nu_q = 1.0;
  pr.c_q = static_cast<double>(std::max(r, 1)) * Eigen::MatrixXd::Identity(r, r);
  return pr;
}

void Priors::validate(int p, int r) const {
  if (mu_b.size() != p || sigma_b.rows() != p || sigma_b.cols() != p) {
    throw ConfigError("priors: beta hyperparameters do not match p=" +
                      std::to_string(p));
  }
  if (r > 0) {
    if (mu_m.size() != r * r || sigma_m.rows() != r * r) {
      throw ConfigError("priors: vec(M) hyperparameters do not match r=" +
                        std::to_string(r));
    }
    if (mu_0.size() != r || sigma_0.rows() != r) {
      throw ConfigError("priors: Y_0 hyperparameters do not match r");
    }
    if (c_q.rows() != r || c_q.cols() != r) {
      throw ConfigError("priors: C_q must be r x r");
    }
    if (nu_q <= 0.0) throw ConfigError("priors: nu_q must be positive");
  }
  if (!(lambda_upper > 0.0)) {
    throw ConfigError("priors: lambda_upper must be positive");
  }
}

void ChainConfig::validate() const {
  if (iterations < 1) throw ConfigError("chain: iterations must be positive");
  if (burn_in < 0 || burn_in >= iterations) {
    throw ConfigError("chain: burn_in must lie in [0, iterations)");
  }
  if (thinning < 1) throw ConfigError("chain: thinning must be positive");
}

double truncated_normal(double mean, double sd, double lower, double upper,
                        RngStream& rng) {
  if (!(lower < upper)) {
    throw DataError("truncated_normal: lower bound must be below upper");
  }
  if (!(sd > 0.0)) throw DataError("truncated_normal: sd must be positive");
  const double lo = std::isinf(lower) ? -kInf : (lower - mean) / sd;
  const double hi = std::isinf(upper) ? kInf : (upper - mean) / sd;
  return mean + sd * truncated_standard_normal(lo, hi, rng);
}

GaussianSystem y_block_system(const ModelParams& params,
                              const Eigen::MatrixXd& H,
                              const std::vector<Eigen::MatrixXd>& X,
                              const Priors& priors, int block) {
  const int K = static_cast<int>(params.Z.rows());
  const int r = static_cast<int>(H.cols());
  const Eigen::MatrixXd Qi = pd_inverse(params.Q, "Y update: Q");
  const Eigen::MatrixXd HtH = H.transpose() * H;
  const Eigen::MatrixXd MtQiM = params.M.transpose() * Qi * params.M;
  const Eigen::MatrixXd QiM = Qi * params.M;

  GaussianSystem sys;
  if (block == 0) {
    const Eigen::MatrixXd S0i = pd_inverse(priors.sigma_0, "Y update: Sigma_0");
    sys.precision = MtQiM + S0i;
    sys.a = QiM.transpose() * params.Y.row(1).transpose() + S0i * priors.mu_0;
    return sys;
  }
  const int s = block - 1;  // data slice feeding this block
  const Eigen::VectorXd resid =
      params.Z.row(s).transpose() - X[static_cast<std::size_t>(s)] * params.beta;
  Eigen::VectorXd data_term = H.transpose() * resid;
  if (block < K) {
    sys.precision = HtH + Qi + MtQiM;
    sys.a = data_term + QiM * params.Y.row(block - 1).transpose() +
            QiM.transpose() * params.Y.row(block + 1).transpose();
  } else {
    sys.precision = HtH + Qi;
    sys.a = data_term + QiM * params.Y.row(block - 1).transpose();
  }
  (void)r;
  return sys;
}

std::pair<Eigen::VectorXd, Eigen::MatrixXd> y_block_conditional(
    const ModelParams& params, const Eigen::MatrixXd& H,
    const std::vector<Eigen::MatrixXd>& X, const Priors& priors, int block) {
  const GaussianSystem sys = y_block_system(params, H, X, priors, block);
  const auto llt = safe_llt(sys.precision, "Y conditional");
  return {llt.solve(sys.a), pd_inverse(sys.precision, "Y conditional")};
}

void update_Y(ModelParams& params, const Eigen::MatrixXd& H,
              const std::vector<Eigen::MatrixXd>& X, const Priors& priors,
              RngStream& rng) {
  const int K = static_cast<int>(params.Z.rows());
  for (int block = 0; block <= K; ++block) {
    const GaussianSystem sys = y_block_system(params, H, X, priors, block);
    params.Y.row(block) =
        sample_from_precision(sys.precision, sys.a, rng, "Y update")
            .transpose();
  }
}

void update_Q(ModelParams& params, const Priors& priors, RngStream& rng) {
  const int r = static_cast<int>(params.Q.rows());
  const int K = static_cast<int>(params.Y.rows()) - 1;
  const double df = priors.nu_q + static_cast<double>(K);
  if (df <= static_cast<double>(r - 1)) {
    throw ConfigError("Q update: posterior degrees of freedom " +
                      std::to_string(df) + " too small for r=" +
                      std::to_string(r));
  }
  Eigen::MatrixXd ss = priors.nu_q * priors.c_q;
  for (int k = 1; k <= K; ++k) {
    const Eigen::VectorXd resid =
        params.Y.row(k).transpose() - params.M * params.Y.row(k - 1).transpose();
    ss += resid * resid.transpose();
  }
  const Eigen::MatrixXd scale = pd_inverse(ss, "Q update: scale");
  const Eigen::MatrixXd q_inv = wishart_sample(scale, df, rng, "Q update");
  params.Q = pd_inverse(q_inv, "Q update: invert draw");
}

void update_M(ModelParams& params, const Priors& priors, RngStream& rng) {
  const int r = static_cast<int>(params.Q.rows());
  const int K = static_cast<int>(params.Y.rows()) - 1;
  const Eigen::MatrixXd Qi = pd_inverse(params.Q, "M update: Q");
  Eigen::MatrixXd s_lag = Eigen::MatrixXd::Zero(r, r);    // sum Y_{t-1} Y_{t-1}'
  Eigen::MatrixXd s_cross = Eigen::MatrixXd::Zero(r, r);  // sum Y_t Y_{t-1}'
  for (int k = 1; k <= K; ++k) {
    const Eigen::VectorXd prev = params.Y.row(k - 1).transpose();
    const Eigen::VectorXd cur = params.Y.row(k).transpose();
    s_lag += prev * prev.transpose();
    s_cross += cur * prev.transpose();
  }
  const Eigen::MatrixXd sm_inv = pd_inverse(priors.sigma_m, "M update: Sigma_m");
  const Eigen::MatrixXd precision = kronecker(s_lag, Qi) + sm_inv;
  const Eigen::MatrixXd qi_cross = Qi * s_cross;
  Eigen::VectorXd a =
      Eigen::Map<const Eigen::VectorXd>(qi_cross.data(), r * r) +
      sm_inv * priors.mu_m;
  const Eigen::VectorXd vec_m =
      sample_from_precision(precision, a, rng, "M update");
  params.M = Eigen::Map<const Eigen::MatrixXd>(vec_m.data(), r, r);
}

void update_beta(ModelParams& params, const std::vector<Eigen::MatrixXd>& X,
                 const Eigen::MatrixXd& H, const Priors& priors,
                 RngStream& rng) {
  const int p = static_cast<int>(params.beta.size());
  const Eigen::MatrixXd sb_inv =
      pd_inverse(priors.sigma_b, "beta update: Sigma_b");
  Eigen::MatrixXd precision = sb_inv;
  Eigen::VectorXd a = sb_inv * priors.mu_b;
  const bool latent = H.cols() > 0;
  for (std::size_t s = 0; s < X.size(); ++s) {
    precision += X[s].transpose() * X[s];
    Eigen::VectorXd resid = params.Z.row(static_cast<int>(s)).transpose();
    if (latent) {
      resid -= H * params.Y.row(static_cast<int>(s) + 1).transpose();
    }
    a += X[s].transpose() * resid;
  }
  (void)p;
  params.beta = sample_from_precision(precision, a, rng, "beta update");
}

void update_Z(ModelParams& params, const StateMatrix& S,
              const std::vector<Eigen::MatrixXd>& X, const Eigen::MatrixXd& H,
              RngStream& rng, const StateMatrix* prev) {
  const int K = static_cast<int>(S.rows());
  const int n = static_cast<int>(S.cols());
  const bool latent = H.cols() > 0;
  for (int s = 0; s < K; ++s) {
    Eigen::VectorXd mu = X[static_cast<std::size_t>(s)] * params.beta;
    if (latent) mu += H * params.Y.row(s + 1).transpose();
    for (int i = 0; i < n; ++i) {
      const auto [lo, hi] =
          prev != nullptr
              ? state_interval_monotone(S(s, i), (*prev)(s, i), params.lambda2)
              : state_interval(S(s, i), params.lambda2);
      if (std::isinf(lo) && std::isinf(hi)) {
        params.Z(s, i) = mu(i) + rng.normal();
      } else {
        params.Z(s, i) = truncated_normal(mu(i), 1.0, lo, hi, rng);
      }
    }
  }
}

void update_lambda(ModelParams& params, const StateMatrix& S,
                   const Priors& priors, RngStream& rng, long* retained,
                   const StateMatrix* prev) {
  double lower = 0.0;  // falls back to the fixed cutpoint lambda_1 = 0
  double upper = priors.lambda_upper;
  const int K = static_cast<int>(S.rows());
  const int n = static_cast<int>(S.cols());
  for (int s = 0; s < K; ++s) {
    for (int i = 0; i < n; ++i) {
      const double z = params.Z(s, i);
      if (prev != nullptr) {
        // Transition-conditional semantics: only rows that were burning are
        // cut by lambda2.
        if ((*prev)(s, i) != kBurning) continue;
        if (S(s, i) == kBurning) {
          if (z > lower) lower = z;
        } else if (z < upper) {
          upper = z;
        }
        continue;
      }
      if (S(s, i) == kBurning) {
        if (z > lower) lower = z;
      } else if (S(s, i) == kBurnt) {
        if (z < upper) upper = z;
      }
    }
  }
  if (std::isinf(upper)) {
    if (retained != nullptr) ++*retained;
    return;
  }
  if (!(lower < upper)) {
    throw NumericalError("lambda update: empty interval [" +
                         std::to_string(lower) + ", " + std::to_string(upper) +
                         "]; latent field violates cutpoint truncation");
  }
  params.lambda2 = rng.uniform(lower, upper);
}

std::pair<Eigen::VectorXd, double> ordered_probit_init(
    const StateMatrix& S, const std::vector<Eigen::MatrixXd>& X,
    const StateMatrix* prev) {
  const int K = static_cast<int>(S.rows());
  const int n = static_cast<int>(S.cols());
  const int p = static_cast<int>(X.at(0).cols());

  // Advance margin rows: all rows (plain ordinal) or the rows still at risk
  // of advancing past the first cutpoint (monotone semantics, prev unburnt).
  std::vector<int> adv_slice, adv_cell, cut_slice, cut_cell;
  for (int s = 0; s < K; ++s) {
    for (int i = 0; i < n; ++i) {
      const std::int8_t before = prev != nullptr ? (*prev)(s, i) : kUnburnt;
      if (prev == nullptr || before == kUnburnt) {
        adv_slice.push_back(s);
        adv_cell.push_back(i);
      }
      if (prev == nullptr || before == kBurning) {
        cut_slice.push_back(s);
        cut_cell.push_back(i);
      }
    }
  }

  Eigen::VectorXd beta = Eigen::VectorXd::Zero(p);
  {
    const auto N = static_cast<Eigen::Index>(adv_slice.size());
    Eigen::MatrixXd F(N, p);
    Eigen::VectorXd y2(N);
    double events = 0.0;
    for (Eigen::Index k = 0; k < N; ++k) {
      F.row(k) = X[static_cast<std::size_t>(adv_slice[k])].row(adv_cell[k]);
      y2(k) = S(adv_slice[k], adv_cell[k]) >= kBurning ? 1.0 : 0.0;
      events += y2(k);
    }
    if (N > 0 && events > 0.0 && events < static_cast<double>(N)) {
      for (int iter = 0; iter < 50; ++iter) {
        Eigen::MatrixXd xtwx = 1e-6 * Eigen::MatrixXd::Identity(p, p);
        Eigen::VectorXd xtwz = Eigen::VectorXd::Zero(p);
        for (Eigen::Index k = 0; k < N; ++k) {
          double eta = F.row(k).dot(beta);
          eta = std::clamp(eta, -6.0, 6.0);
          const double mu = std::clamp(normal_cdf(eta), 1e-9, 1.0 - 1e-9);
          const double dens = normal_pdf(eta);
          const double w = dens * dens / (mu * (1.0 - mu));
          const double z = eta + (y2(k) - mu) / dens;
          xtwx += w * F.row(k).transpose() * F.row(k);
          xtwz += w * z * F.row(k).transpose();
        }
        const Eigen::VectorXd next = xtwx.ldlt().solve(xtwz);
        const double delta = (next - beta).norm();
        beta = next;
        if (delta < 1e-8 * (1.0 + beta.norm())) break;
      }
    }
  }

  // Cutpoint margin: P(burnt) = Phi(eta - lambda2). Bisect the score over
  // the rows at risk of crossing the second cutpoint.
  double lambda2 = 1.0;
  {
    const auto N = static_cast<Eigen::Index>(cut_slice.size());
    Eigen::VectorXd eta(N), y3(N);
    double events = 0.0;
    for (Eigen::Index k = 0; k < N; ++k) {
      eta(k) =
          X[static_cast<std::size_t>(cut_slice[k])].row(cut_cell[k]) * beta;
      y3(k) = S(cut_slice[k], cut_cell[k]) == kBurnt ? 1.0 : 0.0;
      events += y3(k);
    }
    if (N > 0 && events > 0.0) {
      auto score = [&](double lam) {
        double g = 0.0;
        for (Eigen::Index k = 0; k < N; ++k) {
          const double u = std::clamp(lam - eta(k), -8.0, 8.0);
          const double cdf = std::clamp(normal_cdf(u), 1e-12, 1.0 - 1e-12);
          const double dens = normal_pdf(u);
          g += y3(k) > 0.5 ? -dens / (1.0 - cdf) : dens / cdf;
        }
        return g;
      };
      double lo = 1e-3, hi = 60.0;
      if (score(lo) > 0.0 && score(hi) < 0.0) {
        for (int iter = 0; iter < 200; ++iter) {
          const double mid = 0.5 * (lo + hi);
          (score(mid) > 0.0 ? lo : hi) = mid;
        }
        lambda2 = 0.5 * (lo + hi);
      }
    }
  }
  return {beta, std::max(lambda2, 1e-3)};
}

PosteriorSamples run_gibbs(const StateMatrix& S,
                           const std::vector<Eigen::MatrixXd>& X,
                           const Eigen::MatrixXd& H, const Priors& priors,
                           const ChainConfig& cfg, const StateMatrix* prev) {
  cfg.validate();
  const int K = static_cast<int>(S.rows());
  const int n = static_cast<int>(S.cols());
  if (K < 1) throw DataError("gibbs: no data slices");
  if (static_cast<int>(X.size()) != K) {
    throw DataError("gibbs: covariate slices do not match data slices");
  }
  const int p = static_cast<int>(X[0].cols());
  for (const auto& x : X) {
    if (x.rows() != n || x.cols() != p) {
      throw DataError("gibbs: covariate slice has inconsistent shape");
    }
  }
  const int r = static_cast<int>(H.cols());
  if (r > 0 && H.rows() != n) {
    throw ConfigError("gibbs: basis has " + std::to_string(H.rows()) +
                      " rows, data has " + std::to_string(n) + " cells");
  }
  priors.validate(p, r);
  if (r > 0 && priors.nu_q + K <= r - 1) {
    throw ConfigError("gibbs: nu_q + T must exceed r - 1 for a proper Q draw");
  }
  if (cfg.monotone_likelihood) {
    if (prev == nullptr) {
      throw DataError("gibbs: monotone likelihood needs the previous states");
    }
    if (prev->rows() != K || prev->cols() != n) {
      throw DataError("gibbs: previous states have the wrong shape");
    }
    for (int s = 0; s < K; ++s) {
      for (int i = 0; i < n; ++i) {
        if (S(s, i) < (*prev)(s, i)) {
          throw DataError("gibbs: state decreased at slice " +
                          std::to_string(s) + ", cell " + std::to_string(i) +
                          "; monotone likelihood needs nondecreasing states");
        }
      }
    }
  } else {
    prev = nullptr;  // plain ordinal regression ignores history
  }

  ModelParams params;
  auto [beta0, lambda0] = ordered_probit_init(S, X, prev);
  params.beta = beta0;
  params.lambda2 = std::min(lambda0, priors.lambda_upper * 0.5 + 0.0);
  if (!(params.lambda2 > 0.0) || !std::isfinite(params.lambda2)) {
    params.lambda2 = 1.0;
  }
  params.M = Eigen::MatrixXd::Zero(r, r);
  params.Q = Eigen::MatrixXd::Identity(r, r);
  params.Y = Eigen::MatrixXd::Zero(K + 1, r);
  params.Z = Eigen::MatrixXd::Zero(K, n);

  RngStream rng = RngStream::derive(cfg.seed, "gibbs");
  update_Z(params, S, X, H, rng, prev);

  const int total_draws = (cfg.iterations - cfg.burn_in) / cfg.thinning;
  PosteriorSamples post;
  post.p = p;
  post.r = r;
  post.beta.resize(total_draws, p);
  post.lambda2.resize(total_draws);
  post.y_last.resize(total_draws, r);
  post.M.reserve(r > 0 ? total_draws : 0);
  post.Q.reserve(r > 0 ? total_draws : 0);

  int kept = 0;
  for (int sweep = 1; sweep <= cfg.iterations; ++sweep) {
    try {
      if (r > 0) {
        update_Y(params, H, X, priors, rng);
        update_Q(params, priors, rng);
        update_M(params, priors, rng);
      }
      update_beta(params, X, H, priors, rng);
      update_Z(params, S, X, H, rng, prev);
      update_lambda(params, S, priors, rng, &post.lambda_retained, prev);
    } catch (const NumericalError& err) {
      throw NumericalError("sweep " + std::to_string(sweep) + ": " +
                           err.what());
    }
    if (sweep > cfg.burn_in && (sweep - cfg.burn_in) % cfg.thinning == 0 &&
        kept < total_draws) {
      post.beta.row(kept) = params.beta.transpose();
      post.lambda2(kept) = params.lambda2;
      post.y_last.row(kept) = params.Y.row(K);
      if (r > 0) {
        post.M.push_back(params.M);
        post.Q.push_back(params.Q);
      }
      if (cfg.store_z_every > 0 && kept % cfg.store_z_every == 0) {
        post.Z.push_back(params.Z);
      }
      ++kept;
    }
  }
  return post;
}

PosteriorSamples run_gibbs(const StateField& data,
                           std::span<const WindRecord> winds,
                           const NeighborhoodSpec& spec, const GridSpec& grid,
                           const BasisMatrix* basis, const Priors& priors,
                           const ChainConfig& cfg) {
  const int T = data.steps();
  if (T < 2) throw DataError("gibbs: need at least 2 time steps");
  const int K = T - 1;
  const int n = data.cells();

  StateMatrix S(K, n);
  StateMatrix prev(K, n);
  std::vector<Eigen::MatrixXd> X;
  X.reserve(static_cast<std::size_t>(K));
  for (int t = 1; t < T; ++t) {
    S.row(t - 1) = data.values.row(t);
    prev.row(t - 1) = data.values.row(t - 1);
    X.push_back(build_covariates(data, t, winds, spec, grid).counts);
  }
  const Eigen::MatrixXd H =
      basis != nullptr ? basis->H : Eigen::MatrixXd(n, 0);
  return run_gibbs(S, X, H, priors, cfg, &prev);
}

TransitionSummary transition_probability(const PosteriorSamples& posterior,
                                         const Eigen::VectorXd& covariate_row,
                                         double mass) {
  const int D = posterior.draws();
  if (D < 2) throw DataError("transition_probability: posterior is empty");
  if (covariate_row.size() != posterior.p) {
    throw DataError("transition_probability: covariate row has wrong length");
  }
  std::array<std::vector<double>, 3> probs;
  std::vector<double> advance(static_cast<std::size_t>(D));
  for (auto& v : probs) v.resize(static_cast<std::size_t>(D));
  for (int d = 0; d < D; ++d) {
    const double m = posterior.beta.row(d).dot(covariate_row);
    const double c1 = normal_cdf(-m);
    const double c2 = normal_cdf(posterior.lambda2(d) - m);
    probs[0][static_cast<std::size_t>(d)] = c1;
    probs[1][static_cast<std::size_t>(d)] = c2 - c1;
    probs[2][static_cast<std::size_t>(d)] = 1.0 - c2;
    advance[static_cast<std::size_t>(d)] = 1.0 - c1;
  }
  TransitionSummary out;
  for (int j = 0; j < 3; ++j) {
    const auto& v = probs[static_cast<std::size_t>(j)];
    out.mean(j) =
        std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(D);
    const auto [lo, hi] = hpd_interval(v, mass);
    out.lo(j) = lo;
    out.hi(j) = hi;
  }
  out.advance_mean = std::accumulate(advance.begin(), advance.end(), 0.0) /
                     static_cast<double>(D);
  std::tie(out.advance_lo, out.advance_hi) = hpd_interval(advance, mass);
  out.burnt_mean = out.mean(2);
  out.burnt_lo = out.lo(2);
  out.burnt_hi = out.hi(2);
  return out;
}

}  // namespace firecast

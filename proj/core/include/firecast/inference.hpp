#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <limits>
#include <span>
#include <utility>
#include <vector>

#include "firecast/basis.hpp"
#include "firecast/grid.hpp"
#include "firecast/neighborhood.hpp"
#include "firecast/rng.hpp"

namespace firecast {

/// Hyperparameters for the hierarchical model. Defaults: zero means,
/// Sigma_b = Sigma_m = 2 I, Sigma_0 = 5 I, nu_q = 1, C_q = r I, improper flat
/// cutpoint prior (lambda_upper = +inf). A finite lambda_upper makes the
/// cutpoint prior Uniform(0, lambda_upper); used by the sampler-validation
/// tests, which need every prior proper.
struct Priors {
  Eigen::VectorXd mu_b;
  Eigen::MatrixXd sigma_b;
  Eigen::VectorXd mu_m;  // prior on vec(M), length r^2
  Eigen::MatrixXd sigma_m;
  Eigen::VectorXd mu_0;
  Eigen::MatrixXd sigma_0;
  double nu_q = 1.0;
  Eigen::MatrixXd c_q;
  double lambda_upper = std::numeric_limits<double>::infinity();

  static Priors defaults(int p, int r);
  void validate(int p, int r) const;
};

/// One state of the sampler. Y holds latent coefficients as rows: Y.row(0)
/// is the pre-sample anchor, Y.row(k+1) pairs with data slice k. Z(k, i) is
/// the latent field for slice k. Cutpoints are (-inf, 0, lambda2, +inf).
struct ModelParams {
  Eigen::VectorXd beta;
  double lambda2 = 1.0;
  Eigen::MatrixXd M;
  Eigen::MatrixXd Q;
  Eigen::MatrixXd Y;  // (K+1) x r
  Eigen::MatrixXd Z;  // K x n
};

struct ChainConfig {
  int iterations = 10000;
  int burn_in = 5000;
  int thinning = 1;
  std::uint64_t seed = 0;
  int store_z_every = 0;  // 0 = do not store latent fields
  /// Monotone fire semantics in the likelihood: a row whose state equals its
  /// previous state has its latent interval opened downward (mass of skipped
  /// lower states lumped into staying put), and rows already burnt carry no
  /// information. Matches the forecast semantics; off = plain ordinal
  /// regression of the states on the covariates.
  bool monotone_likelihood = true;

  void validate() const;
};

struct PosteriorSamples {
  int p = 0;
  int r = 0;
  Eigen::MatrixXd beta;     // draws x p
  Eigen::VectorXd lambda2;  // draws
  std::vector<Eigen::MatrixXd> M;
  std::vector<Eigen::MatrixXd> Q;
  Eigen::MatrixXd y_last;  // draws x r, latent coefficients at the final slice
  std::vector<Eigen::MatrixXd> Z;  // optional, thinned per store_z_every
  long lambda_retained = 0;  // sweeps where the cutpoint had no proper interval

  int draws() const { return static_cast<int>(beta.rows()); }
};

/// Draw from N(mean, sd^2) conditioned to (lower, upper]. Infinite bounds
/// allowed; far-tail intervals are handled by exponential-proposal rejection
/// restricted to the interval, so calls like bounds (8,9) return without
/// degenerate loops.
double truncated_normal(double mean, double sd, double lower, double upper,
                        RngStream& rng);

/// Precision and shift of the full conditional for latent block Y.row(j):
/// the block is N(P^{-1} a, P^{-1}).
struct GaussianSystem {
  Eigen::VectorXd a;
  Eigen::MatrixXd precision;
};
GaussianSystem y_block_system(const ModelParams& params,
                              const Eigen::MatrixXd& H,
                              const std::vector<Eigen::MatrixXd>& X,
                              const Priors& priors, int block);
std::pair<Eigen::VectorXd, Eigen::MatrixXd> y_block_conditional(
    const ModelParams& params, const Eigen::MatrixXd& H,
    const std::vector<Eigen::MatrixXd>& X, const Priors& priors, int block);

/// Single Gibbs pass over the latent coefficient blocks Y.row(0..K).
void update_Y(ModelParams& params, const Eigen::MatrixXd& H,
              const std::vector<Eigen::MatrixXd>& X, const Priors& priors,
              RngStream& rng);

/// Conjugate Wishart refresh of the innovation covariance Q.
void update_Q(ModelParams& params, const Priors& priors, RngStream& rng);

/// Conjugate Gaussian refresh of vec(M) from the VAR(1) regression of the
/// latent coefficients on their lags.
void update_M(ModelParams& params, const Priors& priors, RngStream& rng);

/// Conjugate Gaussian refresh of the covariate effects.
void update_beta(ModelParams& params, const std::vector<Eigen::MatrixXd>& X,
                 const Eigen::MatrixXd& H, const Priors& priors,
                 RngStream& rng);

/// Data augmentation: each latent Z(k,i) ~ N(mean, 1) truncated to its state's
/// cutpoint interval. With `prev` given, monotone semantics apply: a row
/// whose state equals its previous state is truncated above only, and rows
/// already burnt are unconstrained.
void update_Z(ModelParams& params, const StateMatrix& S,
              const std::vector<Eigen::MatrixXd>& X, const Eigen::MatrixXd& H,
              RngStream& rng, const StateMatrix* prev = nullptr);

/// Uniform refresh of the free cutpoint between the largest burning latent
/// and smallest burnt latent. With no burnt latents and an infinite prior
/// bound the interval is improper; the previous value is retained and
/// `retained` (if given) incremented. Under monotone semantics (`prev`
/// given), latents of rows burnt at the previous step are unconstrained and
/// excluded from the bounds.
void update_lambda(ModelParams& params, const StateMatrix& S,
                   const Priors& priors, RngStream& rng,
                   long* retained = nullptr, const StateMatrix* prev = nullptr);

/// Deterministic two-stage ordered-probit MLE (probit IRLS for the advance
/// margin, then a 1-D solve for the cutpoint) used to initialize chains.
/// With `prev`, each margin is estimated from the rows at risk for it.
std::pair<Eigen::VectorXd, double> ordered_probit_init(
    const StateMatrix& S, const std::vector<Eigen::MatrixXd>& X,
    const StateMatrix* prev = nullptr);

/// Gibbs sampler on preassembled slices: S is K x n (slice k = states at
/// data step k+1), X[k] the matching covariates, H the spatial basis (n x 0
/// for the covariate-only model). Update order per sweep: Y, Q, M (when
/// r > 0), beta, Z, lambda. Reproducible from cfg.seed.
/// cfg.monotone_likelihood requires `prev` (slice k's previous states).
PosteriorSamples run_gibbs(const StateMatrix& S,
                           const std::vector<Eigen::MatrixXd>& X,
                           const Eigen::MatrixXd& H, const Priors& priors,
                           const ChainConfig& cfg,
                           const StateMatrix* prev = nullptr);

/// Convenience entry: builds covariates from a training StateField and winds;
/// basis == nullptr selects the covariate-only model.
PosteriorSamples run_gibbs(const StateField& data,
                           std::span<const WindRecord> winds,
                           const NeighborhoodSpec& spec, const GridSpec& grid,
                           const BasisMatrix* basis, const Priors& priors,
                           const ChainConfig& cfg);

/// Posterior summary of the cutpoint-link state probabilities for one
/// covariate row (latent process excluded): per-state means with HPD bounds,
/// plus the advance margin P(state >= burning) and P(state = burnt).
struct TransitionSummary {
  Eigen::Vector3d mean, lo, hi;
  double advance_mean = 0, advance_lo = 0, advance_hi = 0;
  double burnt_mean = 0, burnt_lo = 0, burnt_hi = 0;
};
TransitionSummary transition_probability(const PosteriorSamples& posterior,
                                         const Eigen::VectorXd& covariate_row,
                                         double mass = 0.95);

}  // namespace firecast

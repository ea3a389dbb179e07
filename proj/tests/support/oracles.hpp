#pragma once

// Test-only oracles, independent of the implementation paths they check.

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <utility>
#include <vector>

#include "firecast/inference.hpp"
#include "firecast/stats.hpp"

namespace firecast::test {

/// Joint Gaussian over the stacked latent blocks (Y_0 ... Y_K) implied by the
/// VAR(1) prior and the per-slice observation terms, assembled brute-force
/// from the model equations: precision P and potential b with the joint being
/// N(P^{-1} b, P^{-1}).
struct JointGaussian {
  Eigen::MatrixXd precision;
  Eigen::VectorXd potential;

  Eigen::VectorXd mean() const { return precision.ldlt().solve(potential); }
  Eigen::MatrixXd covariance() const {
    return precision.ldlt().solve(
        Eigen::MatrixXd::Identity(precision.rows(), precision.cols()));
  }

  /// Conditional of block j (size r) given all other blocks fixed at `values`
  /// (stacked the same way): N(mu, Sigma).
  std::pair<Eigen::VectorXd, Eigen::MatrixXd> block_conditional(
      int j, int r, const Eigen::VectorXd& values) const {
    const int off = j * r;
    const Eigen::MatrixXd pjj = precision.block(off, off, r, r);
    Eigen::VectorXd shift = potential.segment(off, r);
    for (int s = 0; s < precision.rows() / r; ++s) {
      if (s == j) continue;
      shift -= precision.block(off, s * r, r, r) * values.segment(s * r, r);
    }
    const Eigen::MatrixXd cov = pjj.ldlt().solve(
        Eigen::MatrixXd::Identity(r, r));
    return {pjj.ldlt().solve(shift), cov};
  }
};

inline JointGaussian build_y_joint(const Eigen::MatrixXd& H,
                                   const std::vector<Eigen::MatrixXd>& X,
                                   const Eigen::MatrixXd& Z,
                                   const Eigen::VectorXd& beta,
                                   const Eigen::MatrixXd& M,
                                   const Eigen::MatrixXd& Q,
                                   const Priors& priors) {
  const int K = static_cast<int>(Z.rows());
  const int r = static_cast<int>(H.cols());
  const int dim = (K + 1) * r;
  const Eigen::MatrixXd Qi =
      Q.ldlt().solve(Eigen::MatrixXd::Identity(r, r));
  const Eigen::MatrixXd S0i =
      priors.sigma_0.ldlt().solve(Eigen::MatrixXd::Identity(r, r));
  const Eigen::MatrixXd HtH = H.transpose() * H;

  JointGaussian joint;
  joint.precision = Eigen::MatrixXd::Zero(dim, dim);
  joint.potential = Eigen::VectorXd::Zero(dim);

  joint.precision.block(0, 0, r, r) += S0i;
  joint.potential.segment(0, r) += S0i * priors.mu_0;
  for (int k = 1; k <= K; ++k) {
    // transition Y_k = M Y_{k-1} + eta
    joint.precision.block(k * r, k * r, r, r) += Qi;
    joint.precision.block((k - 1) * r, (k - 1) * r, r, r) +=
        M.transpose() * Qi * M;
    joint.precision.block(k * r, (k - 1) * r, r, r) -= Qi * M;
    joint.precision.block((k - 1) * r, k * r, r, r) -= M.transpose() * Qi;
    // observation Z_{k-1} = X_{k-1} beta + H Y_k + eps
    joint.precision.block(k * r, k * r, r, r) += HtH;
    joint.potential.segment(k * r, r) +=
        H.transpose() *
        (Z.row(k - 1).transpose() - X[static_cast<std::size_t>(k - 1)] * beta);
  }
  return joint;
}

/// Two-sided z-comparison of two estimates with independent standard errors.
inline double z_score(double a, double se_a, double b, double se_b) {
  return (a - b) / std::sqrt(se_a * se_a + se_b * se_b + 1e-300);
}

/// One-sample Kolmogorov-Smirnov statistic against a CDF.
template <typename Cdf>
double ks_statistic(std::vector<double> xs, Cdf cdf) {
  std::sort(xs.begin(), xs.end());
  const double n = static_cast<double>(xs.size());
  double d = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double f = cdf(xs[i]);
    d = std::max(d, std::fabs(f - static_cast<double>(i) / n));
    d = std::max(d, std::fabs(static_cast<double>(i + 1) / n - f));
  }
  return d;
}

inline double mean_of(const std::vector<double>& xs) {
  double s = 0.0;
  for (double x : xs) s += x;
  return s / static_cast<double>(xs.size());
}

inline double sd_of(const std::vector<double>& xs) {
  const double m = mean_of(xs);
  double s = 0.0;
  for (double x : xs) s += (x - m) * (x - m);
  return std::sqrt(s / static_cast<double>(xs.size() - 1));
}

/// Standard error of the mean for (near) independent draws.
inline double se_of(const std::vector<double>& xs) {
  return sd_of(xs) / std::sqrt(static_cast<double>(xs.size()));
}

}  // namespace firecast::test

#pragma once

#include <cstdint>
#include <span>
#include <string_view>

namespace firecast {

/// Standard normal density.
double normal_pdf(double x);

/// Standard normal CDF, accurate in both tails (erfc-based).
double normal_cdf(double x);

/// Inverse standard normal CDF for p in (0,1). Acklam's rational
/// approximation polished with one Halley step against erfc; accurate to
/// ~1e-15 over the full open interval.
double normal_quantile(double p);

/// Regularized lower incomplete gamma P(a,x), a > 0, x >= 0.
double gamma_p(double a, double x);

/// CDF of Gamma(shape, rate) at x.
double gamma_cdf(double x, double shape, double rate);

/// FNV-1a 64-bit hash, used for config fingerprints and RNG substream labels.
std::uint64_t fnv1a64(const void* data, std::size_t len);
std::uint64_t fnv1a64(std::string_view s);

/// Monte Carlo standard error of the mean by batch means (~sqrt(n) batches);
/// falls back to the iid formula for short series.
double batch_mean_se(std::span<const double> series);

}  // namespace firecast

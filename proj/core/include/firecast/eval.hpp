#pragma once

#include <Eigen/Dense>
#include <array>
#include <optional>
#include <span>
#include <vector>

#include "firecast/forecast.hpp"
#include "firecast/grid.hpp"

namespace firecast {

/// 2x2 contingency counts for one-vs-rest verification: a = hits,
/// b = false alarms, c = misses, d = correct negatives. Doubles so the
/// scale-invariance of the score is exact.
struct ContingencyTable {
  double a = 0, b = 0, c = 0, d = 0;

  double total() const { return a + b + c + d; }
};

/// Gilbert Skill Score: (a - chance) / (a + b + c - chance) with
/// chance = (a+c)(a+b)/n. Empty when the denominator vanishes; 1 is a
/// perfect forecast.
std::optional<double> gss(const ContingencyTable& table);

ContingencyTable one_vs_rest_table(const StateField& pred,
                                   const StateField& truth, int state);

/// GSS for "state == j vs state != j".
std::optional<double> per_state_gss(const StateField& pred,
                                    const StateField& truth, int state);

/// Mean ranked probability score: per location
/// (1/(J-1)) * sum_j (cumulative p_j - cumulative truth indicator)^2,
/// averaged over locations. 0 is a perfect probabilistic forecast.
double rps(const Eigen::MatrixXd& probabilities,
           std::span<const std::int8_t> truth);

/// RPS of the equal-probability forecast (1/3, 1/3, 1/3) everywhere.
double naive_rps(std::span<const std::int8_t> truth);

struct ScoreReport {
  std::array<long, 3> correct{};    // predicted state j and truth agreed
  std::array<long, 3> incorrect{};  // predicted state j, truth disagreed
  std::array<std::optional<double>, 3> gss{};
  double rps = 0.0;
  double naive_rps = 0.0;
};

/// Verification of per-horizon probability forecasts against observed states.
ScoreReport score_probabilities(const std::vector<Eigen::MatrixXd>& probs,
                                const StateField& truth);
ScoreReport score_forecast(const ForecastDistribution& fd,
                           const StateField& truth);

}  // namespace firecast

#include "firecast/eval.hpp"

#include <cmath>
#include <string>

#include "firecast/errors.hpp"

namespace firecast {

std::optional<double> gss(const ContingencyTable& table) {
  const double n = table.total();
  if (!(n > 0.0)) throw DataError("gss: empty contingency table");
  const double chance = (table.a + table.c) * (table.a + table.b) / n;
  const double denom = table.a + table.b + table.c - chance;
  if (denom == 0.0) return std::nullopt;
  return (table.a - chance) / denom;
}

ContingencyTable one_vs_rest_table(const StateField& pred,
                                   const StateField& truth, int state) {
  if (pred.steps() != truth.steps() || pred.cells() != truth.cells()) {
    throw DataError("contingency: prediction and truth shapes differ");
  }
  ContingencyTable t;
  for (int k = 0; k < pred.steps(); ++k) {
    for (int i = 0; i < pred.cells(); ++i) {
      const bool p = pred.at(k, i) == state;
      const bool o = truth.at(k, i) == state;
      if (p && o) {
        t.a += 1;
      } else if (p && !o) {
        t.b += 1;
      } else if (!p && o) {
        t.c += 1;
      } else {
        t.d += 1;
      }
    }
  }
  return t;
}

std::optional<double> per_state_gss(const StateField& pred,
                                    const StateField& truth, int state) {
  return gss(one_vs_rest_table(pred, truth, state));
}

double rps(const Eigen::MatrixXd& probabilities,
           std::span<const std::int8_t> truth) {
  const auto N = static_cast<Eigen::Index>(truth.size());
  if (N == 0) throw DataError("rps: no locations");
  if (probabilities.rows() != N || probabilities.cols() != 3) {
    throw DataError("rps: probability matrix must be " + std::to_string(N) +
                    "x3");
  }
  double total = 0.0;
  for (Eigen::Index k = 0; k < N; ++k) {
    const double p1 = probabilities(k, 0);
    const double p2 = probabilities(k, 1);
    const double p3 = probabilities(k, 2);
    if (std::fabs(p1 + p2 + p3 - 1.0) > 1e-8) {
      throw DataError("rps: probabilities at location " + std::to_string(k) +
                      " sum to " + std::to_string(p1 + p2 + p3));
    }
    const int s = truth[static_cast<std::size_t>(k)];
    const double i1 = s <= 1 ? 1.0 : 0.0;
    const double i2 = s <= 2 ? 1.0 : 0.0;
    const double d1 = p1 - i1;
    const double d2 = (p1 + p2) - i2;
    total += 0.5 * (d1 * d1 + d2 * d2);
  }
  return total / static_cast<double>(N);
}

double naive_rps(std::span<const std::int8_t> truth) {
  if (truth.empty()) throw DataError("naive_rps: no locations");
  Eigen::MatrixXd p(static_cast<Eigen::Index>(truth.size()), 3);
  p.setConstant(1.0 / 3.0);
  return rps(p, truth);
}

ScoreReport score_probabilities(const std::vector<Eigen::MatrixXd>& probs,
                                const StateField& truth) {
  const int steps = truth.steps();
  const int n = truth.cells();
  if (static_cast<int>(probs.size()) != steps) {
    throw DataError("score: probability steps do not match truth");
  }
  Eigen::MatrixXd stacked(static_cast<Eigen::Index>(steps) * n, 3);
  StateField pred(steps, n);
  for (int k = 0; k < steps; ++k) {
    const auto& p = probs[static_cast<std::size_t>(k)];
    if (p.rows() != n || p.cols() != 3) {
      throw DataError("score: probability matrix at step " +
                      std::to_string(k) + " has wrong shape");
    }
    stacked.middleRows(static_cast<Eigen::Index>(k) * n, n) = p;
    for (int i = 0; i < n; ++i) {
      int best = 0;
      for (int j = 1; j < 3; ++j) {
        if (p(i, j) > p(i, best)) best = j;
      }
      pred.at(k, i) = static_cast<std::int8_t>(best + 1);
    }
  }
  std::span<const std::int8_t> flat(truth.values.data(),
                                    static_cast<std::size_t>(steps) *
                                        static_cast<std::size_t>(n));
  ScoreReport report;
  report.rps = rps(stacked, flat);
  report.naive_rps = naive_rps(flat);
  for (int j = 1; j <= 3; ++j) {
    report.gss[static_cast<std::size_t>(j - 1)] =
        per_state_gss(pred, truth, j);
  }
  for (int k = 0; k < steps; ++k) {
    for (int i = 0; i < n; ++i) {
      const int pj = pred.at(k, i) - 1;
      if (pred.at(k, i) == truth.at(k, i)) {
        ++report.correct[static_cast<std::size_t>(pj)];
      } else {
        ++report.incorrect[static_cast<std::size_t>(pj)];
      }
    }
  }
  return report;
}

ScoreReport score_forecast(const ForecastDistribution& fd,
                           const StateField& truth) {
  if (truth.steps() != fd.horizon || truth.cells() != fd.cells) {
    throw DataError("score: forecast and truth shapes differ");
  }
  return score_probabilities(fd.mean, truth);
}

}  // namespace firecast

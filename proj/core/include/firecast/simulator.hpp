#pragma once

#include <Eigen/Dense>
#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "firecast/grid.hpp"
#include "firecast/neighborhood.hpp"
#include "firecast/rng.hpp"

namespace firecast {

/// One transition-probability rule: a constant, a table keyed by the burning
/// neighbor count, or a probit curve linear in the (unburnt, burning, burnt)
/// neighbor counts.
struct TransitionRule {
  enum class Kind { Constant, BurningTable, Probit };

  Kind kind = Kind::Constant;
  double constant = 0.0;
  std::vector<double> burning_table;  // index = burning neighbor count
  double intercept = 0.0;
  Eigen::Vector3d coef = Eigen::Vector3d::Zero();

  static TransitionRule make_constant(double p);
  static TransitionRule make_burning_table(std::vector<double> p);
  static TransitionRule make_probit(double intercept,
                                    const Eigen::Vector3d& coef);

  /// Probability for a neighbor-count triple. Throws ConfigError on a table
  /// lookup miss, naming the missing key.
  double operator()(const Eigen::Vector3d& counts) const;
};

struct RuleTable {
  TransitionRule ignite;      // unburnt -> burning
  TransitionRule extinguish;  // burning -> burnt
};

struct SimConfig {
  GridSpec grid;
  int steps = 1;
  std::vector<WindRecord> winds;  // empty = calm; else one record per step
  NeighborhoodSpec neighborhood;
  std::uint64_t seed = 0;
  std::vector<std::int8_t> initial;  // one state per cell

  void validate() const;
};

/// Stochastic three-state cellular automaton. Unburnt cells ignite with
/// ignite(counts over the dynamic neighborhood at the previous step), burning
/// cells extinguish with extinguish(counts), burnt is absorbing. Identical
/// seeds reproduce identical fields bit for bit.
StateField simulate_fire(const RuleTable& rules, const SimConfig& cfg);

/// Three-class multinomial logistic model on (1, n_unburnt, n_burning,
/// n_burnt); the crude forward simulator used for basis construction.
class SimpleMultinomialModel {
 public:
  SimpleMultinomialModel() = default;
  explicit SimpleMultinomialModel(const Eigen::Matrix<double, 2, 4>& weights)
      : weights_(weights) {}

  /// Category probabilities for a neighbor-count triple; sums to 1.
  Eigen::Vector3d probabilities(const Eigen::Vector3d& counts) const;

  const Eigen::Matrix<double, 2, 4>& weights() const { return weights_; }

 private:
  Eigen::Matrix<double, 2, 4> weights_ = Eigen::Matrix<double, 2, 4>::Zero();
};

/// Ridge-penalized maximum likelihood fit (Newton, fixed ridge 1e-4 so
/// separable fire fronts still converge). Deterministic given data.
SimpleMultinomialModel fit_fsim(const StateField& sf,
                                std::span<const WindRecord> winds,
                                const NeighborhoodSpec& spec,
                                const GridSpec& grid);

/// Deterministic most-probable-state evolution for `horizon` steps starting
/// from `last`. The argmax is restricted to states >= the cell's current
/// state, so the monotone progression holds by construction.
StateField forward_most_probable(const SimpleMultinomialModel& model,
                                 std::span<const std::int8_t> last,
                                 int horizon,
                                 std::span<const WindRecord> winds,
                                 const NeighborhoodSpec& spec,
                                 const GridSpec& grid);

/// Per-state pools of training-period temperatures.
struct StateTemperaturePools {
  std::array<std::vector<double>, 3> temps;
};

StateTemperaturePools state_temperature_pools(const StateField& sf,
                                              const Eigen::MatrixXd& temps);

/// Impute a temperature for every simulated cell by drawing uniformly from
/// the pool of its state. Rows of `states` are the simulated steps.
Eigen::MatrixXd gsim_impute(const StateField& states,
                            const StateTemperaturePools& pools,
                            RngStream& rng);

}  // namespace firecast

#pragma once

#include <limits>
#include <span>
#include <vector>

#include "tets/model.hpp"

namespace tets {

/// One observation together with the censoring level it was recorded under.
/// A point is censored exactly when value == censor_level; the constructor
/// convention keeps the comparison exact (the simulator writes the level
/// bit-for-bit into censored sales).
struct CensoredObservation {
  double value = 0.0;
  double censor_level = std::numeric_limits<double>::infinity();

  bool is_censored() const { return value == censor_level; }
};

/// Uncensored convenience wrapper.
inline CensoredObservation observed(double value) { return {value}; }

struct FilterResult {
  std::vector<Eigen::VectorXd> states; // x_t after each update
  std::vector<double> fitted;          // one-step predictions w x_{t-1}
  std::vector<double> innovations;     // applied innovations
  std::vector<bool> censored;
  double loglik = 0.0;

  std::size_t size() const { return fitted.size(); }
};

struct StepResult {
  Eigen::VectorXd state;
  double innovation = 0.0;
  double loglik = 0.0;
  bool censored = false;
};

/// E[Z | Z > lower] for Z ~ N(mu, sigma^2). Stable for standardized
/// truncation points out to |z| ~ 38. Throws for sigma <= 0.
double truncated_normal_mean_above(double mu, double sigma, double lower);

/// Single Tobit innovations update. Uncensored points contribute the
/// Gaussian density and the raw innovation; censored points contribute
/// the survival probability and the conditional-mean innovation
/// sigma * mills((L - yhat)/sigma).
StepResult step(const Eigen::VectorXd& state, const CensoredObservation& obs,
                const SystemMatrices& sys);

/// Runs the filter across a series. Throws on an empty series or when an
/// observation exceeds its censoring level.
FilterResult filter_series(std::span<const CensoredObservation> obs,
                           const SystemMatrices& sys,
                           const Eigen::VectorXd& init_state);

/// Log-likelihood only; no trajectory storage. Same recursion as
/// filter_series.
double filter_loglik(std::span<const CensoredObservation> obs,
                     const SystemMatrices& sys,
                     const Eigen::VectorXd& init_state);

/// Default initial state: level set to the first uncensored value
/// (first value if everything is censored), remaining components zero.
Eigen::VectorXd default_init_state(std::span<const CensoredObservation> obs,
                                   Eigen::Index dim);

} // namespace tets

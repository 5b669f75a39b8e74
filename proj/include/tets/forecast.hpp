#pragma once

#include <utility>
#include <vector>

#include "tets/estimation.hpp"
#include "tets/model.hpp"

namespace tets {

/// Gaussian forecast distribution: per-horizon moments plus the moments
/// of the next full cycle sum (cycle_length steps ahead, accumulated).
struct ForecastDistribution {
  std::vector<double> mean;     // index j-1 holds horizon j
  std::vector<double> variance;
  int cycle_length = 1;
  double aggregate_mean = 0.0;
  double aggregate_variance = 0.0;
};

/// Iterated point forecasts w F^{j-1} x for j = 1..h.
std::vector<double> point_forecast(const SystemMatrices& sys,
                                   const Eigen::VectorXd& state, int h);
std::vector<double> point_forecast(const FittedModel& fitted, int h);

/// Innovations-form forecast variances
///   var[j] = sigma2 * (1 + sum_{i<j} (w F^{i-1} g)^2).
std::vector<double> forecast_variance(const SystemMatrices& sys, int h);
std::vector<double> forecast_variance(const FittedModel& fitted, int h);

/// Mean and variance of the sum of the next `cycle_length` observations,
/// propagated through the accumulator-augmented system (reset at the
/// first step of the cycle).
std::pair<double, double> aggregate_next_cycle(const SystemMatrices& sys,
                                               const Eigen::VectorXd& state,
                                               int cycle_length);
std::pair<double, double> aggregate_next_cycle(const FittedModel& fitted);

/// Full distribution out to horizon h; the aggregate block uses the
/// fitted schedule's cycle length (1 when the model is not aggregated).
ForecastDistribution forecast(const FittedModel& fitted, int h);

/// Central interval bounds at the given coverage level.
std::pair<double, double> interval(double mean, double variance, double level);

/// Stock level achieving the target cycle service level: the csl-quantile
/// of the aggregate (next-cycle) demand distribution.
double csl_quantile(const ForecastDistribution& dist, double csl);

} // namespace tets

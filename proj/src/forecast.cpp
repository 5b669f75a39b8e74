#include "tets/forecast.hpp"

#include <cmath>
#include <stdexcept>

#include "tets/aggregation.hpp"
#include "tets/normal.hpp"

namespace tets {

std::vector<double> point_forecast(const SystemMatrices& sys,
                                   const Eigen::VectorXd& state, int h) {
  if (h < 1) throw std::invalid_argument("point_forecast: h must be >= 1");
  if (state.size() != sys.dim()) {
    throw std::invalid_argument("point_forecast: state dimension mismatch");
  }
  std::vector<double> mean(static_cast<std::size_t>(h));
  Eigen::VectorXd x = state;
  for (int j = 0; j < h; ++j) {
    mean[static_cast<std::size_t>(j)] = sys.w.dot(x);
    if (j + 1 < h) x = sys.F * x;
  }
  return mean;
}

std::vector<double> forecast_variance(const SystemMatrices& sys, int h) {
  if (h < 1) throw std::invalid_argument("forecast_variance: h must be >= 1");
  std::vector<double> var(static_cast<std::size_t>(h));
  var[0] = sys.sigma2;
  Eigen::VectorXd u = sys.g;
  double acc = 1.0;
  for (int j = 1; j < h; ++j) {
    const double c = sys.w.dot(u);
    acc += c * c;
    var[static_cast<std::size_t>(j)] = sys.sigma2 * acc;
    u = sys.F * u;
  }
  return var;
}

std::pair<double, double> aggregate_next_cycle(const SystemMatrices& sys,
                                               const Eigen::VectorXd& state,
                                               int cycle_length) {
  if (cycle_length < 1) {
    throw std::invalid_argument("aggregate_next_cycle: cycle length must be >= 1");
  }
  const AugmentedMatrices reset = augment(sys, 0);
  const AugmentedMatrices hold = augment(sys, 1);
  const Eigen::Index last = sys.dim();

  // Mean: propagate the augmented state with zero innovations; the
  // accumulator resets on the first step of the cycle.
  Eigen::VectorXd xa = Eigen::VectorXd::Zero(last + 1);
  xa.head(last) = state;
  for (int j = 1; j <= cycle_length; ++j) {
    xa = (j == 1 ? reset.F : hold.F) * xa;
  }
  const double mean = xa(last);

  // Variance: the step-j innovation reaches the cycle-end accumulator
  // through g+ followed by the hold-transitions of the remaining steps.
  Eigen::RowVectorXd r = Eigen::RowVectorXd::Zero(last + 1);
  r(last) = 1.0;
  double var = 0.0;
  for (int j = cycle_length; j >= 1; --j) {
    const double c = r.dot(reset.g);
    var += c * c;
    if (j > 1) r = r * hold.F;
  }
  return {mean, sys.sigma2 * var};
}

std::vector<double> point_forecast(const FittedModel& fitted, int h) {
  return point_forecast(build_matrices(fitted.spec), fitted.base_state(), h);
}

std::vector<double> forecast_variance(const FittedModel& fitted, int h) {
  return forecast_variance(build_matrices(fitted.spec), h);
}

std::pair<double, double> aggregate_next_cycle(const FittedModel& fitted) {
  const int s = fitted.schedule ? fitted.schedule->s : 1;
  return aggregate_next_cycle(build_matrices(fitted.spec), fitted.base_state(), s);
}

ForecastDistribution forecast(const FittedModel& fitted, int h) {
  const SystemMatrices sys = build_matrices(fitted.spec);
  const Eigen::VectorXd state = fitted.base_state();
  ForecastDistribution dist;
  dist.mean = point_forecast(sys, state, h);
  dist.variance = forecast_variance(sys, h);
  dist.cycle_length = fitted.schedule ? fitted.schedule->s : 1;
  std::tie(dist.aggregate_mean, dist.aggregate_variance) =
      aggregate_next_cycle(sys, state, dist.cycle_length);
  return dist;
}

std::pair<double, double> interval(double mean, double variance, double level) {
  if (!(level > 0.0 && level < 1.0)) {
    throw std::domain_error("interval: level must lie in (0,1)");
  }
  const double half = norm_quantile(0.5 + level / 2.0) * std::sqrt(variance);
  return {mean - half, mean + half};
}

double csl_quantile(const ForecastDistribution& dist, double csl) {
  if (!(csl > 0.0 && csl < 1.0)) {
    throw std::domain_error("csl_quantile: csl must lie in (0,1)");
  }
  return dist.aggregate_mean +
         norm_quantile(csl) * std::sqrt(dist.aggregate_variance);
}

} // namespace tets

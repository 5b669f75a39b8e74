#include "tets/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <stdexcept>

namespace tets {

namespace {

// Largest increment whose floating-point sum with `cum` does not exceed
// `target`; lands on `target` exactly whenever that value is reachable.
// Keeps censoring detectable by equality after the per-hour sales are
// re-summed from a CSV.
double fill_to(double cum, double target) {
  constexpr double inf = std::numeric_limits<double>::infinity();
  double sale = target - cum;
  for (int i = 0; i < 8 && cum + sale > target; ++i) {
    sale = std::nextafter(sale, -inf);
  }
  for (int i = 0; i < 8 && cum + std::nextafter(sale, inf) <= target; ++i) {
    sale = std::nextafter(sale, inf);
  }
  return sale;
}

} // namespace

DemandSeries simulate_ets(const ModelSpec& spec, std::size_t n,
                          const Eigen::VectorXd& init_state,
                          std::uint64_t seed) {
  if (n < 1) throw std::invalid_argument("simulate_ets: n must be >= 1");

  const bool noiseless = spec.sigma2 == 0.0;
  ModelSpec build_spec = spec;
  if (noiseless) build_spec.sigma2 = 1.0; // matrices ignore the variance
  const SystemMatrices sys = build_matrices(build_spec);
  if (init_state.size() != sys.dim()) {
    throw std::invalid_argument("simulate_ets: init state dimension mismatch");
  }

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  const double sd = noiseless ? 0.0 : std::sqrt(spec.sigma2);

  DemandSeries series;
  series.values.reserve(n);
  series.spec = spec;
  series.seed = seed;

  Eigen::VectorXd x = init_state;
  Eigen::VectorXd next(x.size());
  for (std::size_t t = 0; t < n; ++t) {
    const double eps = noiseless ? 0.0 : sd * gauss(rng);
    series.values.push_back(sys.w.dot(x) + eps);
    next.noalias() = sys.F * x;
    next.noalias() += sys.g * eps;
    x.swap(next);
  }
  return series;
}

Eigen::VectorXd case_study_init(const ModelSpec& spec, double level,
                                double amplitude) {
  Eigen::VectorXd x = Eigen::VectorXd::Zero(spec.state_dim());
  x(0) = level;
  if (spec.kind == EtsKind::SES) return x;
  const Eigen::Index offset = (spec.kind == EtsKind::AAA) ? 2 : 1;
  for (int i = 0; i < spec.m; ++i) {
    x(offset + i) =
        amplitude * std::sin(2.0 * std::numbers::pi * i / spec.m);
  }
  return x;
}

std::vector<CensoredObservation> apply_saturation(const DemandSeries& demand,
                                                  double level) {
  std::vector<CensoredObservation> obs;
  obs.reserve(demand.values.size());
  for (double y : demand.values) {
    obs.push_back({std::min(y, level), level});
  }
  return obs;
}

DailyCensoredSeries apply_daily_censoring(const DemandSeries& demand,
                                          double daily_level, int s) {
  if (s <= 0) throw std::domain_error("apply_daily_censoring: s must be positive");
  const std::size_t days = demand.values.size() / static_cast<std::size_t>(s);
  std::vector<double> levels(days, daily_level);
  return apply_daily_censoring(demand, levels, s);
}

DailyCensoredSeries apply_daily_censoring(const DemandSeries& demand,
                                          std::span<const double> daily_levels,
                                          int s) {
  if (s <= 0) throw std::domain_error("apply_daily_censoring: s must be positive");
  const std::size_t days =
      std::min(demand.values.size() / static_cast<std::size_t>(s),
               daily_levels.size());

  DailyCensoredSeries out;
  out.hours_per_day = s;
  out.hourly_sales.reserve(days * static_cast<std::size_t>(s));
  out.cumulative.reserve(days * static_cast<std::size_t>(s));
  out.daily_levels.assign(daily_levels.begin(), daily_levels.begin() + days);

  for (std::size_t d = 0; d < days; ++d) {
    const double level = out.daily_levels[d];
    double cum_demand = 0.0;
    double cum_sales = 0.0;
    bool diverged = false; // cumulative sales left the cumulative-demand track
    for (int h = 0; h < s; ++h) {
      const double y = demand.values[d * static_cast<std::size_t>(s) + h];
      cum_demand += y;
      double sale;
      if (!diverged && cum_demand <= level) {
        // No stockout yet: cumulative sales repeat the cumulative-demand
        // sums bit for bit, so re-summing the sales column reproduces them.
        sale = y;
      } else {
        sale = fill_to(cum_sales, std::min(cum_demand, level));
        diverged = true;
      }
      cum_sales += sale;
      out.hourly_sales.push_back(sale);
      out.cumulative.push_back({cum_sales, level});
    }
  }
  return out;
}

std::vector<double> cycle_sums(std::span<const double> values, int s) {
  if (s <= 0) throw std::domain_error("cycle_sums: s must be positive");
  const std::size_t cycles = values.size() / static_cast<std::size_t>(s);
  std::vector<double> sums(cycles, 0.0);
  for (std::size_t c = 0; c < cycles; ++c) {
    for (int h = 0; h < s; ++h) {
      sums[c] += values[c * static_cast<std::size_t>(s) + h];
    }
  }
  return sums;
}

} // namespace tets

#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "tets/filter.hpp"
#include "tets/model.hpp"

namespace tets {

struct DemandSeries {
  std::vector<double> values; // latent demand, one entry per sampling step
  ModelSpec spec;
  std::uint64_t seed = 0;
};

/// Draws a series from the innovations system of `spec` with seeded
/// Gaussian noise. sigma2 == 0 gives the deterministic trajectory.
DemandSeries simulate_ets(const ModelSpec& spec, std::size_t n,
                          const Eigen::VectorXd& init_state,
                          std::uint64_t seed);

/// Initial state used by the case-study experiments: level 10, zero slope,
/// and a smooth zero-sum intra-cycle seasonal shape of amplitude +/- 2.
Eigen::VectorXd case_study_init(const ModelSpec& spec, double level = 10.0,
                                double amplitude = 2.0);

/// Per-step saturation: value = min(demand, level), censor level attached
/// to every observation.
std::vector<CensoredObservation> apply_saturation(const DemandSeries& demand,
                                                  double level);

struct DailyCensoredSeries {
  std::vector<double> hourly_sales;          // post-stockout hours are zero
  std::vector<CensoredObservation> cumulative; // within-day running sales
  std::vector<double> daily_levels;
  int hours_per_day = 1;

  std::size_t days() const { return daily_levels.size(); }
};

/// Daily censoring of an hourly series: within each day of s hours,
/// cumulative sales = min(cumulative demand, day level). A trailing
/// partial day is dropped.
DailyCensoredSeries apply_daily_censoring(const DemandSeries& demand,
                                          double daily_level, int s);
DailyCensoredSeries apply_daily_censoring(const DemandSeries& demand,
                                          std::span<const double> daily_levels,
                                          int s);

/// Sums of consecutive blocks of s values (trailing partial block dropped).
std::vector<double> cycle_sums(std::span<const double> values, int s);

} // namespace tets

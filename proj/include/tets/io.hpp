#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "tets/estimation.hpp"
#include "tets/inventory.hpp"
#include "tets/simulate.hpp"

namespace tets {

/// Shortest round-trip decimal form; infinities as "inf"/"-inf".
std::string format_double(double v);

/// Parses format_double output; throws std::invalid_argument on junk.
double parse_double(const std::string& token);

/// Row-oriented mirror of the series CSV
/// (t,demand,sales,censor_level,day_index,hour_index).
struct SeriesTable {
  std::vector<double> demand;
  std::vector<double> sales;
  std::vector<double> censor_level;
  std::vector<int> day_index;
  std::vector<int> hour_index;

  std::size_t size() const { return demand.size(); }

  /// Per-row observations: (sales, censor_level).
  std::vector<CensoredObservation> observations(bool tobit = true) const;

  /// Within-cycle cumulative observations for the aggregated filter,
  /// resetting wherever hour_index returns to zero. The running sums
  /// telescope exactly the way the simulator wrote them, so censored
  /// rows compare equal to their level bit-for-bit.
  std::vector<CensoredObservation> cumulative_observations(
      bool tobit = true) const;
};

SeriesTable make_series_table(const DemandSeries& demand,
                              std::span<const CensoredObservation> saturated,
                              int hours_per_day);
SeriesTable make_series_table(const DemandSeries& demand,
                              const DailyCensoredSeries& daily);

void write_series_csv(const std::string& path, const SeriesTable& table);
SeriesTable read_series_csv(const std::string& path);

/// Fitted-values CSV (t,observed,censor_level,fitted,innovation,censored).
void write_fitted_csv(const std::string& path,
                      std::span<const CensoredObservation> obs,
                      const FilterResult& result);

/// Forecast CSV (horizon,mean,lowerXX,upperXX) at the given band level.
void write_forecast_csv(const std::string& path,
                        const std::vector<double>& mean,
                        const std::vector<double>& variance, double level);

/// Cycle-sum forecast CSV (cycle_length,mean,variance,lowerXX,upperXX).
void write_aggregate_forecast_csv(const std::string& path, int cycle_length,
                                  double mean, double variance, double level);

void write_ledger_csv(const std::string& path, const InventoryLedger& ledger);

// --- JSON ---

std::string model_spec_to_json(const ModelSpec& spec);
ModelSpec model_spec_from_json(const std::string& text);

std::string fitted_model_to_json(const FittedModel& model);
FittedModel fitted_model_from_json(const std::string& text);

/// One experiment run, fully reproducible from this config plus the build.
struct ExperimentConfig {
  std::string experiment = "newsvendor"; // saturation | daily_censoring | newsvendor
  ModelSpec spec;                        // demand generator
  std::uint64_t seed = 1;
  std::size_t n = 1440;                  // series length (hours)
  int days = 365;                        // scored newsvendor days
  std::vector<double> censor_levels;
  std::vector<double> target_csl{0.80, 0.90, 0.95, 0.99};
  std::string out_dir = "out";
  int hours_per_day = 12;
  int warmup_days = 28;
  int refit_every = 7;
  int replications = 1;
};

/// Generator used by all three case studies unless overridden.
ModelSpec case_study_spec();

std::string experiment_config_to_json(const ExperimentConfig& config);
ExperimentConfig experiment_config_from_json(const std::string& text);

// --- newsvendor comparison table ---

struct NewsvendorReportTable {
  std::vector<double> csl_grid;
  // reports[i] holds {ETS, TETS, TETSC} at csl_grid[i]; medians across
  // replications when more than one was run.
  std::vector<std::array<SimulationReport, 3>> reports;
  int replications = 1;
};

std::string format_report_text(const NewsvendorReportTable& table);
void write_report_csv(const std::string& path,
                      const NewsvendorReportTable& table);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

} // namespace tets

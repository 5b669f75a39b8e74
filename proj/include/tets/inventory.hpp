#pragma once

#include <utility>
#include <vector>

#include "tets/estimation.hpp"
#include "tets/simulate.hpp"

namespace tets {

/// Forecasting methods competing inside the newsvendor loop:
///   ETS   — daily data, censoring ignored,
///   TETS  — daily data, Tobit with the stock level as censor,
///   TETSC — hourly cumulative data, Tobit with daily aggregation.
enum class ForecastMethod { ETS, TETS, TETSC };

std::string to_string(ForecastMethod method);
ForecastMethod forecast_method_from_string(const std::string& name);

struct NewsvendorOptions {
  int hours_per_day = 12;
  int warmup_days = 28; // censoring disabled while the histories build up
  int refit_every = 7;  // days between parameter re-estimations

  // Estimation budget for the in-loop refits; warm-started from the
  // previous estimate, so a single simplex run is normally enough.
  int fit_max_evals = 600;
  int fit_restarts = 1;
  unsigned fit_seed = 0;
};

struct LedgerRow {
  int day = 0;
  double y_max = 0.0; // stock level set from the previous day's forecast
  double demand = 0.0;
  double sales = 0.0;
  double lost_sales = 0.0;
  double excess_inventory = 0.0;
  bool stockout = false;
  double forecast_mean = 0.0;
  double forecast_sd = 0.0;
};

using InventoryLedger = std::vector<LedgerRow>;

struct SimulationReport {
  double rmse = 0.0;
  double bias = 0.0; // forecast minus actual; under-forecasts come out negative
  double lost_sales_total = 0.0;
  double excess_inventory_total = 0.0;
  double achieved_csl = 0.0; // share of days without a stockout
};

struct NewsvendorRun {
  InventoryLedger ledger;
  SimulationReport report;
};

/// Closed-loop single-period stocking simulation: each day the method is
/// updated on its own observed history, the next day's aggregate demand
/// distribution sets the stock at the target-CSL quantile, sales realize
/// censored at that stock, and the censored observations feed back into
/// the history.
NewsvendorRun run_newsvendor(const DemandSeries& demand_hourly,
                             ForecastMethod method, double target_csl,
                             int days, const NewsvendorOptions& opts = {});

SimulationReport metrics(const InventoryLedger& ledger);

/// ETS and TETS ledgers on the same demand path, for stock-trajectory
/// comparisons.
std::pair<InventoryLedger, InventoryLedger> spiral_down_trace(
    const DemandSeries& demand_hourly, double target_csl, int days,
    const NewsvendorOptions& opts = {});

} // namespace tets

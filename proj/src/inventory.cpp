#include "tets/inventory.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "tets/forecast.hpp"
#include "tets/normal.hpp"

namespace tets {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// One competitor inside the loop: its private observation history, the
// current parameter estimates, and the running filter state.
class LoopModel {
 public:
  LoopModel(ForecastMethod method, const NewsvendorOptions& opts)
      : method_(method), opts_(opts) {
    if (method == ForecastMethod::TETSC) {
      spec_.kind = EtsKind::ANA;
      spec_.gamma = 0.3;
      spec_.m = opts.hours_per_day;
      schedule_ = CumulatorSchedule{opts.hours_per_day, 0};
    } else {
      spec_.kind = EtsKind::SES;
    }
  }

  void append(const CensoredObservation& obs) {
    history_.push_back(obs);
    if (has_fit_) {
      const long t = static_cast<long>(history_.size()) - 1;
      StepResult r = schedule_ ? step_aggregated(state_, obs, t, *aug_)
                               : step(state_, obs, *sys_);
      state_ = std::move(r.state);
    }
  }

  void refit() {
    FitOptions fo;
    fo.max_evals = opts_.fit_max_evals;
    fo.restarts = has_fit_ ? opts_.fit_restarts : 3;
    fo.seed = opts_.fit_seed;
    if (has_fit_) fo.start = pack_params(fitted_.spec);
    try {
      fitted_ = fit(history_, spec_, schedule_, fo);
    } catch (const std::runtime_error&) {
      if (!has_fit_) throw; // nothing to fall back on
      return;               // keep the previous estimates
    }
    has_fit_ = true;
    sys_ = build_matrices(fitted_.spec);
    if (schedule_) aug_.emplace(*sys_, *schedule_);
    state_ = fitted_.final_state;
  }

  // Next-day aggregate demand distribution from the current state.
  std::pair<double, double> forecast_day() const {
    const int s = schedule_ ? schedule_->s : 1;
    const Eigen::VectorXd base =
        schedule_ ? state_.head(state_.size() - 1).eval() : state_;
    return aggregate_next_cycle(*sys_, base, s);
  }

 private:
  ForecastMethod method_;
  NewsvendorOptions opts_;
  ModelSpec spec_;
  std::optional<CumulatorSchedule> schedule_;
  std::vector<CensoredObservation> history_;
  FittedModel fitted_;
  std::optional<SystemMatrices> sys_;
  std::optional<AugmentedSystem> aug_;
  Eigen::VectorXd state_;
  bool has_fit_ = false;
};

} // namespace

std::string to_string(ForecastMethod method) {
  switch (method) {
    case ForecastMethod::ETS: return "ETS";
    case ForecastMethod::TETS: return "TETS";
    case ForecastMethod::TETSC: return "TETSC";
  }
  return "?";
}

ForecastMethod forecast_method_from_string(const std::string& name) {
  if (name == "ETS" || name == "ets") return ForecastMethod::ETS;
  if (name == "TETS" || name == "tets") return ForecastMethod::TETS;
  if (name == "TETSC" || name == "tetsc") return ForecastMethod::TETSC;
  throw std::invalid_argument("unknown forecast method: " + name);
}

NewsvendorRun run_newsvendor(const DemandSeries& demand_hourly,
                             ForecastMethod method, double target_csl,
                             int days, const NewsvendorOptions& opts) {
  if (!(target_csl > 0.0 && target_csl < 1.0)) {
    throw std::domain_error("run_newsvendor: target_csl must lie in (0,1)");
  }
  const int s = opts.hours_per_day;
  const std::size_t need =
      static_cast<std::size_t>(opts.warmup_days + days) * static_cast<std::size_t>(s);
  if (days < 1 || demand_hourly.values.size() < need) {
    throw std::invalid_argument("run_newsvendor: demand series too short");
  }

  const std::vector<double> daily_demand = cycle_sums(demand_hourly.values, s);
  const double z = norm_quantile(target_csl);

  LoopModel model(method, opts);

  // Warm-up: uncensored observations only, then the first fit.
  for (int d = 0; d < opts.warmup_days; ++d) {
    if (method == ForecastMethod::TETSC) {
      double cum = 0.0;
      for (int h = 0; h < s; ++h) {
        cum += demand_hourly.values[static_cast<std::size_t>(d) * s + h];
        model.append({cum, kInf});
      }
    } else {
      model.append({daily_demand[static_cast<std::size_t>(d)], kInf});
    }
  }
  model.refit();

  NewsvendorRun run;
  run.ledger.reserve(static_cast<std::size_t>(days));

  for (int day = 0; day < days; ++day) {
    if (day > 0 && day % opts.refit_every == 0) model.refit();

    const auto [mean, var] = model.forecast_day();
    const double sd = std::sqrt(std::max(var, 0.0));
    const double y_max = mean + z * sd;

    const std::size_t d = static_cast<std::size_t>(opts.warmup_days + day);
    const double demand = daily_demand[d];
    const double sales = std::min(demand, y_max);

    LedgerRow row;
    row.day = day;
    row.y_max = y_max;
    row.demand = demand;
    row.sales = sales;
    row.lost_sales = std::max(0.0, demand - y_max);
    row.excess_inventory = std::max(0.0, y_max - demand);
    row.stockout = demand > y_max;
    row.forecast_mean = mean;
    row.forecast_sd = sd;
    run.ledger.push_back(row);

    switch (method) {
      case ForecastMethod::ETS:
        model.append({sales, kInf}); // sales taken at face value
        break;
      case ForecastMethod::TETS:
        model.append({sales, y_max});
        break;
      case ForecastMethod::TETSC: {
        double cum_demand = 0.0;
        for (int h = 0; h < s; ++h) {
          cum_demand += demand_hourly.values[d * static_cast<std::size_t>(s) + h];
          model.append({std::min(cum_demand, y_max), y_max});
        }
        break;
      }
    }
  }

  run.report = metrics(run.ledger);
  return run;
}

SimulationReport metrics(const InventoryLedger& ledger) {
  SimulationReport rep;
  if (ledger.empty()) return rep;
  double sq = 0.0;
  double err = 0.0;
  std::size_t ok = 0;
  for (const LedgerRow& row : ledger) {
    const double e = row.forecast_mean - row.demand;
    sq += e * e;
    err += e;
    rep.lost_sales_total += row.lost_sales;
    rep.excess_inventory_total += row.excess_inventory;
    if (!row.stockout) ++ok;
  }
  const double n = static_cast<double>(ledger.size());
  rep.rmse = std::sqrt(sq / n);
  rep.bias = err / n;
  rep.achieved_csl = static_cast<double>(ok) / n;
  return rep;
}

std::pair<InventoryLedger, InventoryLedger> spiral_down_trace(
    const DemandSeries& demand_hourly, double target_csl, int days,
    const NewsvendorOptions& opts) {
  auto ets = run_newsvendor(demand_hourly, ForecastMethod::ETS, target_csl,
                            days, opts);
  auto tets = run_newsvendor(demand_hourly, ForecastMethod::TETS, target_csl,
                             days, opts);
  return {std::move(ets.ledger), std::move(tets.ledger)};
}

} // namespace tets

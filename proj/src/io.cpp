#include "tets/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "tets/forecast.hpp"

namespace tets {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = line.find(',', start);
    if (pos == std::string::npos) {
      fields.push_back(line.substr(start));
      break;
    }
    fields.push_back(line.substr(start, pos - start));
    start = pos + 1;
  }
  return fields;
}

int parse_int(const std::string& token, const char* what) {
  int v = 0;
  auto [p, ec] = std::from_chars(token.data(), token.data() + token.size(), v);
  if (ec != std::errc{} || p != token.data() + token.size()) {
    throw std::invalid_argument(std::string("bad integer for ") + what + ": " + token);
  }
  return v;
}

std::vector<std::string> read_lines(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!line.empty()) lines.push_back(line);
  }
  return lines;
}

std::string band_suffix(double level) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", level * 100.0);
  return buf;
}

nlohmann::json spec_to_json_obj(const ModelSpec& spec) {
  nlohmann::json j;
  j["kind"] = to_string(spec.kind);
  j["alpha"] = spec.alpha;
  if (spec.beta) j["beta"] = *spec.beta;
  if (spec.gamma) j["gamma"] = *spec.gamma;
  if (spec.m > 0) j["m"] = spec.m;
  j["sigma2"] = spec.sigma2;
  return j;
}

ModelSpec spec_from_json_obj(const nlohmann::json& j) {
  ModelSpec spec;
  spec.kind = ets_kind_from_string(j.at("kind").get<std::string>());
  spec.alpha = j.at("alpha").get<double>();
  if (j.contains("beta") && !j["beta"].is_null()) spec.beta = j["beta"].get<double>();
  if (j.contains("gamma") && !j["gamma"].is_null()) spec.gamma = j["gamma"].get<double>();
  if (j.contains("m") && !j["m"].is_null()) spec.m = j["m"].get<int>();
  if (j.contains("sigma2")) spec.sigma2 = j["sigma2"].get<double>();
  return spec;
}

} // namespace

std::string format_double(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (std::isnan(v)) return "nan";
  char buf[32];
  auto [p, ec] = std::to_chars(buf, buf + sizeof buf, v);
  if (ec != std::errc{}) throw std::runtime_error("format_double failed");
  return std::string(buf, p);
}

double parse_double(const std::string& token) {
  if (token == "inf") return kInf;
  if (token == "-inf") return -kInf;
  if (token == "nan") return std::numeric_limits<double>::quiet_NaN();
  double v = 0.0;
  auto [p, ec] = std::from_chars(token.data(), token.data() + token.size(), v);
  if (ec != std::errc{} || p != token.data() + token.size()) {
    throw std::invalid_argument("bad number: " + token);
  }
  return v;
}

std::vector<CensoredObservation> SeriesTable::observations(bool tobit) const {
  std::vector<CensoredObservation> obs;
  obs.reserve(size());
  for (std::size_t i = 0; i < size(); ++i) {
    obs.push_back({sales[i], tobit ? censor_level[i] : kInf});
  }
  return obs;
}

std::vector<CensoredObservation> SeriesTable::cumulative_observations(
    bool tobit) const {
  std::vector<CensoredObservation> obs;
  obs.reserve(size());
  double cum = 0.0;
  for (std::size_t i = 0; i < size(); ++i) {
    if (hour_index[i] == 0) cum = 0.0;
    cum += sales[i];
    obs.push_back({cum, tobit ? censor_level[i] : kInf});
  }
  return obs;
}

SeriesTable make_series_table(const DemandSeries& demand,
                              std::span<const CensoredObservation> saturated,
                              int hours_per_day) {
  if (saturated.size() != demand.values.size()) {
    throw std::invalid_argument("make_series_table: length mismatch");
  }
  SeriesTable t;
  const std::size_t n = demand.values.size();
  t.demand = demand.values;
  t.sales.reserve(n);
  t.censor_level.reserve(n);
  for (const auto& o : saturated) {
    t.sales.push_back(o.value);
    t.censor_level.push_back(o.censor_level);
  }
  for (std::size_t i = 0; i < n; ++i) {
    t.day_index.push_back(static_cast<int>(i) / hours_per_day);
    t.hour_index.push_back(static_cast<int>(i) % hours_per_day);
  }
  return t;
}

SeriesTable make_series_table(const DemandSeries& demand,
                              const DailyCensoredSeries& daily) {
  SeriesTable t;
  const std::size_t n = daily.hourly_sales.size();
  t.demand.assign(demand.values.begin(), demand.values.begin() + n);
  t.sales = daily.hourly_sales;
  t.censor_level.reserve(n);
  t.day_index.reserve(n);
  t.hour_index.reserve(n);
  const int s = daily.hours_per_day;
  for (std::size_t i = 0; i < n; ++i) {
    const int day = static_cast<int>(i) / s;
    t.censor_level.push_back(daily.daily_levels[static_cast<std::size_t>(day)]);
    t.day_index.push_back(day);
    t.hour_index.push_back(static_cast<int>(i) % s);
  }
  return t;
}

void write_series_csv(const std::string& path, const SeriesTable& table) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << "t,demand,sales,censor_level,day_index,hour_index\n";
  for (std::size_t i = 0; i < table.size(); ++i) {
    out << i << ',' << format_double(table.demand[i]) << ','
        << format_double(table.sales[i]) << ','
        << format_double(table.censor_level[i]) << ',' << table.day_index[i]
        << ',' << table.hour_index[i] << '\n';
  }
}

SeriesTable read_series_csv(const std::string& path) {
  const auto lines = read_lines(path);
  if (lines.empty()) throw std::runtime_error(path + ": empty file");
  if (lines.front() != "t,demand,sales,censor_level,day_index,hour_index") {
    throw std::runtime_error(path + ": unexpected series header");
  }
  SeriesTable t;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto f = split_csv_line(lines[i]);
    if (f.size() != 6) {
      throw std::runtime_error(path + ": row " + std::to_string(i + 1) +
                               ": expected 6 fields");
    }
    try {
      t.demand.push_back(parse_double(f[1]));
      t.sales.push_back(parse_double(f[2]));
      t.censor_level.push_back(parse_double(f[3]));
      t.day_index.push_back(parse_int(f[4], "day_index"));
      t.hour_index.push_back(parse_int(f[5], "hour_index"));
    } catch (const std::invalid_argument& e) {
      throw std::runtime_error(path + ": row " + std::to_string(i + 1) + ": " +
                               e.what());
    }
  }
  return t;
}

void write_fitted_csv(const std::string& path,
                      std::span<const CensoredObservation> obs,
                      const FilterResult& result) {
  if (obs.size() != result.size()) {
    throw std::invalid_argument("write_fitted_csv: length mismatch");
  }
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << "t,observed,censor_level,fitted,innovation,censored\n";
  for (std::size_t i = 0; i < obs.size(); ++i) {
    out << i << ',' << format_double(obs[i].value) << ','
        << format_double(obs[i].censor_level) << ','
        << format_double(result.fitted[i]) << ','
        << format_double(result.innovations[i]) << ','
        << (result.censored[i] ? 1 : 0) << '\n';
  }
}

void write_forecast_csv(const std::string& path,
                        const std::vector<double>& mean,
                        const std::vector<double>& variance, double level) {
  if (mean.size() != variance.size()) {
    throw std::invalid_argument("write_forecast_csv: length mismatch");
  }
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  const std::string suffix = band_suffix(level);
  out << "horizon,mean,lower" << suffix << ",upper" << suffix << "\n";
  for (std::size_t i = 0; i < mean.size(); ++i) {
    const auto [lo, hi] = interval(mean[i], variance[i], level);
    out << (i + 1) << ',' << format_double(mean[i]) << ',' << format_double(lo)
        << ',' << format_double(hi) << '\n';
  }
}

void write_aggregate_forecast_csv(const std::string& path, int cycle_length,
                                  double mean, double variance, double level) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  const std::string suffix = band_suffix(level);
  const auto [lo, hi] = interval(mean, variance, level);
  out << "cycle_length,mean,variance,lower" << suffix << ",upper" << suffix
      << "\n";
  out << cycle_length << ',' << format_double(mean) << ','
      << format_double(variance) << ',' << format_double(lo) << ','
      << format_double(hi) << '\n';
}

void write_ledger_csv(const std::string& path, const InventoryLedger& ledger) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << "day,y_max,demand,sales,lost_sales,excess_inventory,stockout,"
         "forecast_mean,forecast_sd\n";
  for (const LedgerRow& r : ledger) {
    out << r.day << ',' << format_double(r.y_max) << ','
        << format_double(r.demand) << ',' << format_double(r.sales) << ','
        << format_double(r.lost_sales) << ','
        << format_double(r.excess_inventory) << ',' << (r.stockout ? 1 : 0)
        << ',' << format_double(r.forecast_mean) << ','
        << format_double(r.forecast_sd) << '\n';
  }
}

std::string model_spec_to_json(const ModelSpec& spec) {
  return spec_to_json_obj(spec).dump(2);
}

ModelSpec model_spec_from_json(const std::string& text) {
  return spec_from_json_obj(nlohmann::json::parse(text));
}

std::string fitted_model_to_json(const FittedModel& model) {
  nlohmann::json j;
  j["spec"] = spec_to_json_obj(model.spec);
  j["loglik"] = model.loglik;
  j["final_state"] = std::vector<double>(
      model.final_state.data(), model.final_state.data() + model.final_state.size());
  if (model.schedule) {
    j["schedule"] = {{"s", model.schedule->s}, {"origin", model.schedule->origin}};
  }
  return j.dump(2);
}

FittedModel fitted_model_from_json(const std::string& text) {
  const auto j = nlohmann::json::parse(text);
  FittedModel model;
  model.spec = spec_from_json_obj(j.at("spec"));
  model.loglik = j.at("loglik").get<double>();
  const auto state = j.at("final_state").get<std::vector<double>>();
  model.final_state =
      Eigen::Map<const Eigen::VectorXd>(state.data(), static_cast<long>(state.size()));
  if (j.contains("schedule")) {
    model.schedule = CumulatorSchedule{j["schedule"].at("s").get<int>(),
                                       j["schedule"].at("origin").get<long>()};
  }
  model.params = ParameterVector::from_constrained(pack_params(model.spec));
  return model;
}

ModelSpec case_study_spec() {
  ModelSpec spec;
  spec.kind = EtsKind::ANA;
  spec.alpha = 0.99;
  spec.gamma = 0.006;
  spec.m = 12;
  spec.sigma2 = 0.02;
  return spec;
}

std::string experiment_config_to_json(const ExperimentConfig& config) {
  nlohmann::json j;
  j["experiment"] = config.experiment;
  j["spec"] = spec_to_json_obj(config.spec);
  j["seed"] = config.seed;
  j["n"] = config.n;
  j["days"] = config.days;
  j["censor_levels"] = config.censor_levels;
  j["target_csl"] = config.target_csl;
  j["out"] = config.out_dir;
  j["hours_per_day"] = config.hours_per_day;
  j["warmup_days"] = config.warmup_days;
  j["refit_every"] = config.refit_every;
  j["replications"] = config.replications;
  return j.dump(2);
}

ExperimentConfig experiment_config_from_json(const std::string& text) {
  const auto j = nlohmann::json::parse(text);
  ExperimentConfig c;
  c.spec = case_study_spec();
  if (j.contains("experiment")) c.experiment = j["experiment"].get<std::string>();
  if (j.contains("spec")) c.spec = spec_from_json_obj(j["spec"]);
  if (j.contains("seed")) c.seed = j["seed"].get<std::uint64_t>();
  if (j.contains("n")) c.n = j["n"].get<std::size_t>();
  if (j.contains("days")) c.days = j["days"].get<int>();
  if (j.contains("censor_levels"))
    c.censor_levels = j["censor_levels"].get<std::vector<double>>();
  if (j.contains("target_csl"))
    c.target_csl = j["target_csl"].get<std::vector<double>>();
  if (j.contains("out")) c.out_dir = j["out"].get<std::string>();
  if (j.contains("hours_per_day")) c.hours_per_day = j["hours_per_day"].get<int>();
  if (j.contains("warmup_days")) c.warmup_days = j["warmup_days"].get<int>();
  if (j.contains("refit_every")) c.refit_every = j["refit_every"].get<int>();
  if (j.contains("replications")) c.replications = j["replications"].get<int>();
  return c;
}

namespace {

void append_metric_rows(std::string& out, const NewsvendorReportTable& table,
                        const char* label,
                        double (*get)(const SimulationReport&), bool percent) {
  static const char* kMethods[] = {"ETS", "TETS", "TETSC"};
  for (int m = 0; m < 3; ++m) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%-17s %-6s", label, kMethods[m]);
    out += buf;
    for (std::size_t i = 0; i < table.csl_grid.size(); ++i) {
      const double v = get(table.reports[i][static_cast<std::size_t>(m)]);
      if (percent) {
        std::snprintf(buf, sizeof buf, " %9.1f%%", v * 100.0);
      } else {
        std::snprintf(buf, sizeof buf, " %10.1f", v);
      }
      out += buf;
    }
    out += '\n';
  }
}

} // namespace

std::string format_report_text(const NewsvendorReportTable& table) {
  std::string out;
  char buf[64];
  std::snprintf(buf, sizeof buf, "Newsvendor comparison (%d replication%s)\n",
                table.replications, table.replications == 1 ? "" : "s");
  out += buf;
  out += "Target CSL               ";
  for (double csl : table.csl_grid) {
    std::snprintf(buf, sizeof buf, " %9.0f%%", csl * 100.0);
    out += buf;
  }
  out += '\n';

  append_metric_rows(out, table, "RMSE",
                     [](const SimulationReport& r) { return r.rmse; }, false);
  append_metric_rows(out, table, "Bias",
                     [](const SimulationReport& r) { return r.bias; }, false);
  append_metric_rows(out, table, "Lost sales",
                     [](const SimulationReport& r) { return r.lost_sales_total; },
                     false);
  append_metric_rows(
      out, table, "Excess inventory",
      [](const SimulationReport& r) { return r.excess_inventory_total; }, false);
  append_metric_rows(out, table, "Achieved CSL",
                     [](const SimulationReport& r) { return r.achieved_csl; },
                     true);
  return out;
}

void write_report_csv(const std::string& path,
                      const NewsvendorReportTable& table) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << "target_csl,method,rmse,bias,lost_sales,excess_inventory,achieved_csl\n";
  static const char* kMethods[] = {"ETS", "TETS", "TETSC"};
  for (std::size_t i = 0; i < table.csl_grid.size(); ++i) {
    for (int m = 0; m < 3; ++m) {
      const SimulationReport& r = table.reports[i][static_cast<std::size_t>(m)];
      out << format_double(table.csl_grid[i]) << ',' << kMethods[m] << ','
          << format_double(r.rmse) << ',' << format_double(r.bias) << ','
          << format_double(r.lost_sales_total) << ','
          << format_double(r.excess_inventory_total) << ','
          << format_double(r.achieved_csl) << '\n';
    }
  }
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << content;
}

} // namespace tets

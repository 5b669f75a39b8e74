#include "tets/estimation.hpp"

#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

#include "tets/nelder_mead.hpp"

namespace tets {

namespace {
constexpr double kNegInf = -std::numeric_limits<double>::infinity();

double logistic(double u) { return 1.0 / (1.0 + std::exp(-u)); }

// Variance of first differences, skipping differences across cycle
// resets for cumulative observations.
double diff_variance(std::span<const CensoredObservation> data,
                     const std::optional<CumulatorSchedule>& schedule) {
  std::vector<double> diffs;
  diffs.reserve(data.size());
  for (std::size_t i = 1; i < data.size(); ++i) {
    if (schedule &&
        cumulator(schedule->origin + static_cast<long>(i), *schedule) == 0) {
      continue;
    }
    diffs.push_back(data[i].value - data[i - 1].value);
  }
  if (diffs.size() < 2) return 1.0;
  double mean = 0.0;
  for (double d : diffs) mean += d;
  mean /= static_cast<double>(diffs.size());
  double var = 0.0;
  for (double d : diffs) var += (d - mean) * (d - mean);
  var /= static_cast<double>(diffs.size() - 1);
  return (std::isfinite(var) && var > 0.0) ? var : 1.0;
}

} // namespace

Eigen::VectorXd transform_params(const Eigen::VectorXd& u) {
  Eigen::VectorXd c(u.size());
  for (Eigen::Index i = 0; i + 1 < u.size(); ++i) c(i) = logistic(u(i));
  c(u.size() - 1) = std::exp(u(u.size() - 1));
  return c;
}

Eigen::VectorXd untransform_params(const Eigen::VectorXd& c) {
  Eigen::VectorXd u(c.size());
  for (Eigen::Index i = 0; i + 1 < c.size(); ++i) {
    if (!(c(i) > 0.0 && c(i) < 1.0)) {
      throw std::domain_error("untransform_params: smoothing constant outside (0,1)");
    }
    u(i) = std::log(c(i) / (1.0 - c(i)));
  }
  const double s2 = c(c.size() - 1);
  if (!(s2 > 0.0)) {
    throw std::domain_error("untransform_params: sigma2 must be positive");
  }
  u(c.size() - 1) = std::log(s2);
  return u;
}

Eigen::VectorXd pack_params(const ModelSpec& spec) {
  Eigen::VectorXd c(spec.num_params());
  switch (spec.kind) {
    case EtsKind::SES:
      c << spec.alpha, spec.sigma2;
      break;
    case EtsKind::ANA:
      c << spec.alpha, spec.gamma.value_or(0.3), spec.sigma2;
      break;
    case EtsKind::AAA:
      c << spec.alpha, spec.beta.value_or(0.3), spec.gamma.value_or(0.3),
          spec.sigma2;
      break;
  }
  return c;
}

ModelSpec apply_params(ModelSpec spec, const Eigen::VectorXd& c) {
  if (c.size() != spec.num_params()) {
    throw std::invalid_argument("apply_params: wrong parameter count");
  }
  switch (spec.kind) {
    case EtsKind::SES:
      spec.alpha = c(0);
      spec.sigma2 = c(1);
      break;
    case EtsKind::ANA:
      spec.alpha = c(0);
      spec.gamma = c(1);
      spec.sigma2 = c(2);
      break;
    case EtsKind::AAA:
      spec.alpha = c(0);
      spec.beta = c(1);
      spec.gamma = c(2);
      spec.sigma2 = c(3);
      break;
  }
  return spec;
}

double loglik(const ParameterVector& params,
              std::span<const CensoredObservation> data, const ModelSpec& spec,
              const Eigen::VectorXd& init_state,
              const std::optional<CumulatorSchedule>& schedule) {
  const Eigen::VectorXd c = params.constrained();
  if (c.size() != spec.num_params()) return kNegInf;
  for (Eigen::Index i = 0; i + 1 < c.size(); ++i) {
    if (!(c(i) > 0.0 && c(i) < 1.0)) return kNegInf; // logistic saturated
  }
  const double s2 = c(c.size() - 1);
  if (!(s2 > 0.0) || !std::isfinite(s2)) return kNegInf;

  double ll;
  try {
    const SystemMatrices sys = build_matrices(apply_params(spec, c));
    if (schedule) {
      ll = filter_aggregated_loglik(data, AugmentedSystem(sys, *schedule),
                                    init_state);
    } else {
      ll = filter_loglik(data, sys, init_state);
    }
  } catch (const std::invalid_argument&) {
    return kNegInf;
  }
  return std::isfinite(ll) ? ll : kNegInf;
}

Eigen::VectorXd FittedModel::base_state() const {
  if (!schedule) return final_state;
  return final_state.head(final_state.size() - 1);
}

FittedModel fit(std::span<const CensoredObservation> data, ModelSpec spec,
                const std::optional<CumulatorSchedule>& schedule,
                const FitOptions& options) {
  const int k = spec.num_params();
  if (static_cast<long>(data.size()) <= k + spec.m) {
    throw std::invalid_argument("fit: series too short for the model");
  }

  const Eigen::VectorXd init_state = default_init_state(data, spec.state_dim());

  Eigen::VectorXd start_c;
  if (options.start) {
    start_c = *options.start;
    if (start_c.size() != k) {
      throw std::invalid_argument("fit: warm start has wrong parameter count");
    }
  } else {
    start_c = Eigen::VectorXd::Constant(k, 0.3);
    start_c(k - 1) = diff_variance(data, schedule);
  }
  const Eigen::VectorXd u0 = untransform_params(start_c);

  auto objective = [&](const Eigen::VectorXd& u) {
    return -loglik(ParameterVector{u}, data, spec, init_state, schedule);
  };

  NelderMeadOptions nm;
  nm.max_evals = options.max_evals;
  nm.diameter_tol = options.simplex_tol;

  std::mt19937_64 rng(options.seed);
  std::normal_distribution<double> perturb(0.0, options.restart_spread);

  NelderMeadResult best;
  best.fmin = std::numeric_limits<double>::infinity();
  for (int r = 0; r <= options.restarts; ++r) {
    Eigen::VectorXd u = u0;
    if (r > 0) {
      for (Eigen::Index i = 0; i < u.size(); ++i) u(i) += perturb(rng);
    }
    NelderMeadResult res = nelder_mead(objective, u, nm);
    if (res.fmin < best.fmin) best = std::move(res);
  }

  if (!std::isfinite(best.fmin)) {
    throw std::runtime_error("fit: no starting point gave a finite likelihood");
  }

  FittedModel fitted;
  fitted.params = ParameterVector{best.x};
  fitted.spec = apply_params(spec, fitted.params.constrained());
  fitted.loglik = -best.fmin;
  fitted.schedule = schedule;

  const SystemMatrices sys = build_matrices(fitted.spec);
  if (schedule) {
    FilterResult fr = filter_aggregated(data, AugmentedSystem(sys, *schedule),
                                        init_state);
    fitted.final_state = fr.states.back();
  } else {
    FilterResult fr = filter_series(data, sys, init_state);
    fitted.final_state = fr.states.back();
  }
  return fitted;
}

} // namespace tets

#include "tets/filter.hpp"

#include <cmath>
#include <stdexcept>

#include "tets/detail/filter_core.hpp"
#include "tets/normal.hpp"

namespace tets {

namespace {

struct FixedMatrices {
  const SystemMatrices& sys;
  detail::StepMatrices operator()(std::size_t) const {
    return {sys.F, sys.w, sys.g};
  }
};

} // namespace

double truncated_normal_mean_above(double mu, double sigma, double lower) {
  if (!(sigma > 0.0)) {
    throw std::invalid_argument("truncated_normal_mean_above: sigma must be positive");
  }
  if (std::isinf(lower) && lower < 0.0) return mu; // no truncation
  const double z = (lower - mu) / sigma;
  return mu + sigma * inverse_mills(z);
}

StepResult step(const Eigen::VectorXd& state, const CensoredObservation& obs,
                const SystemMatrices& sys) {
  if (sys.F.cols() != state.size()) {
    throw std::invalid_argument("step: state dimension mismatch");
  }
  if (obs.value > obs.censor_level) {
    throw std::invalid_argument("step: observation above its censor level");
  }
  const double sigma = std::sqrt(sys.sigma2);
  const double yhat = sys.w.dot(state);

  StepResult r;
  r.censored = obs.is_censored();
  if (r.censored) {
    const double z = (obs.censor_level - yhat) / sigma;
    r.innovation = sigma * inverse_mills(z);
    r.loglik = norm_logsf(z);
  } else {
    r.innovation = obs.value - yhat;
    constexpr double kLog2Pi = 1.8378770664093454836;
    r.loglik = -0.5 * (kLog2Pi + std::log(sys.sigma2)) -
               0.5 * r.innovation * r.innovation / sys.sigma2;
  }
  r.state = sys.F * state + sys.g * r.innovation;
  return r;
}

FilterResult filter_series(std::span<const CensoredObservation> obs,
                           const SystemMatrices& sys,
                           const Eigen::VectorXd& init_state) {
  FilterResult out;
  detail::run_filter(obs, FixedMatrices{sys}, sys.sigma2, init_state, &out);
  return out;
}

double filter_loglik(std::span<const CensoredObservation> obs,
                     const SystemMatrices& sys,
                     const Eigen::VectorXd& init_state) {
  return detail::run_filter(obs, FixedMatrices{sys}, sys.sigma2, init_state,
                            nullptr);
}

Eigen::VectorXd default_init_state(std::span<const CensoredObservation> obs,
                                   Eigen::Index dim) {
  Eigen::VectorXd x = Eigen::VectorXd::Zero(dim);
  for (const auto& o : obs) {
    if (!o.is_censored()) {
      x(0) = o.value;
      return x;
    }
  }
  if (!obs.empty()) x(0) = obs.front().value;
  return x;
}

} // namespace tets

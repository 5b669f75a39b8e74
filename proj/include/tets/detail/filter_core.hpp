#pragma once

// Internal filter driver shared by the plain and time-aggregated paths.
// MatrixProvider::operator()(t) returns references to the step-t system
// matrices; the gain and variance are fixed across steps.

#include <cmath>
#include <span>
#include <stdexcept>

#include "tets/filter.hpp"
#include "tets/normal.hpp"

namespace tets::detail {

struct StepMatrices {
  const Eigen::MatrixXd& F;
  const Eigen::RowVectorXd& w;
  const Eigen::VectorXd& g;
};

// Accumulates the two likelihood pieces separately so the Gaussian
// normalization constant is applied once per pass instead of per step.
template <class MatrixProvider>
double run_filter(std::span<const CensoredObservation> obs,
                  MatrixProvider&& mats, double sigma2, Eigen::VectorXd state,
                  FilterResult* out) {
  if (obs.empty()) throw std::invalid_argument("filter: empty series");
  if (!(sigma2 > 0.0)) throw std::invalid_argument("filter: sigma2 must be positive");

  const double sigma = std::sqrt(sigma2);
  const std::size_t n = obs.size();
  if (out) {
    out->states.reserve(n);
    out->fitted.reserve(n);
    out->innovations.reserve(n);
    out->censored.reserve(n);
  }

  Eigen::VectorXd next(state.size());
  double sumsq = 0.0;
  double loglik_censored = 0.0;
  std::size_t n_uncensored = 0;

  for (std::size_t t = 0; t < n; ++t) {
    const StepMatrices m = mats(t);
    if (m.F.cols() != state.size()) {
      throw std::invalid_argument("filter: state dimension mismatch");
    }
    if (obs[t].value > obs[t].censor_level) {
      throw std::invalid_argument("filter: observation above its censor level");
    }

    const double yhat = m.w.dot(state);
    double eps;
    bool censored = obs[t].is_censored();
    if (censored) {
      const double z = (obs[t].censor_level - yhat) / sigma;
      eps = sigma * inverse_mills(z);
      loglik_censored += norm_logsf(z);
    } else {
      eps = obs[t].value - yhat;
      sumsq += eps * eps;
      ++n_uncensored;
    }

    next.noalias() = m.F * state;
    next.noalias() += m.g * eps;
    state.swap(next);

    if (out) {
      out->states.push_back(state);
      out->fitted.push_back(yhat);
      out->innovations.push_back(eps);
      out->censored.push_back(censored);
    }
  }

  constexpr double kLog2Pi = 1.8378770664093454836;
  double loglik = loglik_censored -
                  0.5 * static_cast<double>(n_uncensored) * (kLog2Pi + std::log(sigma2)) -
                  0.5 * sumsq / sigma2;
  if (out) out->loglik = loglik;
  return loglik;
}

} // namespace tets::detail

#pragma once

#include <optional>
#include <span>

#include "tets/aggregation.hpp"
#include "tets/filter.hpp"
#include "tets/model.hpp"

namespace tets {

// Parameter layout is always [smoothing constants..., sigma2]:
// SES -> [alpha, sigma2], ANA -> [alpha, gamma, sigma2],
// AAA -> [alpha, beta, gamma, sigma2].

/// Unconstrained -> constrained: logistic on every smoothing slot,
/// exp on the variance slot.
Eigen::VectorXd transform_params(const Eigen::VectorXd& unconstrained);

/// Constrained -> unconstrained; throws std::domain_error when a value
/// lies outside the admissible region.
Eigen::VectorXd untransform_params(const Eigen::VectorXd& constrained);

/// Optimizer-space view of the parameters.
struct ParameterVector {
  Eigen::VectorXd unconstrained;

  Eigen::VectorXd constrained() const { return transform_params(unconstrained); }

  static ParameterVector from_constrained(const Eigen::VectorXd& c) {
    return {untransform_params(c)};
  }
};

/// Constrained parameter vector drawn from / written into a spec.
Eigen::VectorXd pack_params(const ModelSpec& spec);
ModelSpec apply_params(ModelSpec spec, const Eigen::VectorXd& constrained);

/// Tobit log-likelihood of `params` on `data` under the model family of
/// `spec` (aggregated when a schedule is given). Returns -infinity for
/// inadmissible parameters instead of throwing, so optimizers can probe
/// freely.
double loglik(const ParameterVector& params,
              std::span<const CensoredObservation> data, const ModelSpec& spec,
              const Eigen::VectorXd& init_state,
              const std::optional<CumulatorSchedule>& schedule = {});

struct FitOptions {
  int max_evals = 2000;
  double simplex_tol = 1e-6;   // unconstrained-space simplex diameter
  int restarts = 3;            // random restarts beyond the first start
  unsigned seed = 0;           // seeds the restart perturbations
  double restart_spread = 1.0;
  std::optional<Eigen::VectorXd> start; // constrained warm start
};

struct FittedModel {
  ModelSpec spec; // estimated parameters folded in
  ParameterVector params;
  double loglik = 0.0;
  Eigen::VectorXd final_state; // augmented when schedule is set
  std::optional<CumulatorSchedule> schedule;

  /// Final state without the accumulator component.
  Eigen::VectorXd base_state() const;
};

/// Maximum-likelihood fit via simplex search with restarts. Requires
/// data.size() > num_params + m. Throws std::runtime_error when no
/// starting point yields a finite likelihood.
FittedModel fit(std::span<const CensoredObservation> data, ModelSpec spec,
                const std::optional<CumulatorSchedule>& schedule = {},
                const FitOptions& options = {});

} // namespace tets

#pragma once

#include <span>

#include "tets/filter.hpp"
#include "tets/model.hpp"

namespace tets {

/// Cycle layout for temporal aggregation: s observations per cycle,
/// with the first cycle starting at index `origin`.
struct CumulatorSchedule {
  int s = 1;
  long origin = 0;
};

/// 0 at a cycle start (the accumulator resets there), 1 otherwise.
int cumulator(long t, const CumulatorSchedule& schedule);

struct AugmentedMatrices {
  Eigen::MatrixXd F;    // (n+1) x (n+1)
  Eigen::RowVectorXd w; // 1 x (n+1)
  Eigen::VectorXd g;    // (n+1) x 1
};

/// Appends the accumulator row/column for a given cumulator value:
///   F+ = [[F, 0], [w, C]],  g+ = [g; 1],  w+ = [w, C].
/// The last state component then carries the running within-cycle sum of
/// the (latent) observation signal.
AugmentedMatrices augment(const SystemMatrices& base, int cumulator_value);

/// Base system plus schedule, with both cumulator variants materialized
/// once; per-step selection only flips between them.
class AugmentedSystem {
 public:
  AugmentedSystem(SystemMatrices base, CumulatorSchedule schedule);

  const SystemMatrices& base() const { return base_; }
  const CumulatorSchedule& schedule() const { return schedule_; }
  double sigma2() const { return base_.sigma2; }
  Eigen::Index dim() const { return base_.dim() + 1; }

  const Eigen::MatrixXd& F_at(long t) const {
    return cumulator(t, schedule_) ? hold_.F : reset_.F;
  }
  const Eigen::RowVectorXd& w_at(long t) const {
    return cumulator(t, schedule_) ? hold_.w : reset_.w;
  }
  const Eigen::VectorXd& g() const { return reset_.g; }

  /// [base_state; 0] — the accumulator component is overwritten at every
  /// cycle start, so its initial value only matters mid-cycle.
  Eigen::VectorXd augment_state(const Eigen::VectorXd& base_state) const;

 private:
  SystemMatrices base_;
  CumulatorSchedule schedule_;
  AugmentedMatrices reset_; // C = 0
  AugmentedMatrices hold_;  // C = 1
};

/// Tobit filter over cumulative within-cycle observations. Observation i
/// is taken at time origin + i of the schedule; censor levels apply to the
/// accumulated value. States in the result are augmented (n+1).
FilterResult filter_aggregated(std::span<const CensoredObservation> obs,
                               const AugmentedSystem& sys,
                               const Eigen::VectorXd& init_base_state);

double filter_aggregated_loglik(std::span<const CensoredObservation> obs,
                                const AugmentedSystem& sys,
                                const Eigen::VectorXd& init_base_state);

/// Single update of an already-augmented state at absolute time t.
StepResult step_aggregated(const Eigen::VectorXd& aug_state,
                           const CensoredObservation& obs, long t,
                           const AugmentedSystem& sys);

} // namespace tets

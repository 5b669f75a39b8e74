#include "tets/aggregation.hpp"

#include <stdexcept>
#include <utility>

#include "tets/detail/filter_core.hpp"

namespace tets {

int cumulator(long t, const CumulatorSchedule& schedule) {
  if (schedule.s < 1) throw std::invalid_argument("cumulator: s must be >= 1");
  if (t < schedule.origin) throw std::invalid_argument("cumulator: t before origin");
  return ((t - schedule.origin) % schedule.s == 0) ? 0 : 1;
}

AugmentedMatrices augment(const SystemMatrices& base, int cumulator_value) {
  const Eigen::Index n = base.dim();
  AugmentedMatrices a;
  a.F = Eigen::MatrixXd::Zero(n + 1, n + 1);
  a.F.topLeftCorner(n, n) = base.F;
  a.F.row(n).head(n) = base.w;
  a.F(n, n) = static_cast<double>(cumulator_value);
  a.w = Eigen::RowVectorXd::Zero(n + 1);
  a.w.head(n) = base.w;
  a.w(n) = static_cast<double>(cumulator_value);
  a.g = Eigen::VectorXd::Zero(n + 1);
  a.g.head(n) = base.g;
  a.g(n) = 1.0;
  return a;
}

AugmentedSystem::AugmentedSystem(SystemMatrices base, CumulatorSchedule schedule)
    : base_(std::move(base)),
      schedule_(schedule),
      reset_(augment(base_, 0)),
      hold_(augment(base_, 1)) {
  if (schedule_.s < 1) throw std::invalid_argument("AugmentedSystem: s must be >= 1");
}

Eigen::VectorXd AugmentedSystem::augment_state(
    const Eigen::VectorXd& base_state) const {
  if (base_state.size() != base_.dim()) {
    throw std::invalid_argument("augment_state: dimension mismatch");
  }
  Eigen::VectorXd x = Eigen::VectorXd::Zero(base_state.size() + 1);
  x.head(base_state.size()) = base_state;
  return x;
}

namespace {

struct ScheduledMatrices {
  const AugmentedSystem& sys;
  detail::StepMatrices operator()(std::size_t i) const {
    const long t = sys.schedule().origin + static_cast<long>(i);
    return {sys.F_at(t), sys.w_at(t), sys.g()};
  }
};

} // namespace

FilterResult filter_aggregated(std::span<const CensoredObservation> obs,
                               const AugmentedSystem& sys,
                               const Eigen::VectorXd& init_base_state) {
  FilterResult out;
  detail::run_filter(obs, ScheduledMatrices{sys}, sys.sigma2(),
                     sys.augment_state(init_base_state), &out);
  return out;
}

double filter_aggregated_loglik(std::span<const CensoredObservation> obs,
                                const AugmentedSystem& sys,
                                const Eigen::VectorXd& init_base_state) {
  return detail::run_filter(obs, ScheduledMatrices{sys}, sys.sigma2(),
                            sys.augment_state(init_base_state), nullptr);
}

StepResult step_aggregated(const Eigen::VectorXd& aug_state,
                           const CensoredObservation& obs, long t,
                           const AugmentedSystem& sys) {
  SystemMatrices step_sys;
  step_sys.F = sys.F_at(t);
  step_sys.w = sys.w_at(t);
  step_sys.g = sys.g();
  step_sys.sigma2 = sys.sigma2();
  return step(aug_state, obs, step_sys);
}

} // namespace tets

#include "tets/model.hpp"

#include <stdexcept>

namespace tets {

namespace {

void require_open_unit(double v, const char* name) {
  if (!(v > 0.0 && v < 1.0)) {
    throw std::invalid_argument(std::string(name) + " must lie in (0,1)");
  }
}

void require_positive(double v, const char* name) {
  if (!(v > 0.0)) {
    throw std::invalid_argument(std::string(name) + " must be positive");
  }
}

// Seasonal rotation: row 0 reads the oldest slot, the rest shift down.
void fill_seasonal_block(Eigen::MatrixXd& F, Eigen::Index offset, int m) {
  F(offset, offset + m - 1) = 1.0;
  for (int i = 1; i < m; ++i) {
    F(offset + i, offset + i - 1) = 1.0;
  }
}

} // namespace

std::string to_string(EtsKind kind) {
  switch (kind) {
    case EtsKind::SES: return "SES";
    case EtsKind::ANA: return "ANA";
    case EtsKind::AAA: return "AAA";
  }
  return "?";
}

EtsKind ets_kind_from_string(const std::string& name) {
  if (name == "SES" || name == "ses") return EtsKind::SES;
  if (name == "ANA" || name == "ana") return EtsKind::ANA;
  if (name == "AAA" || name == "aaa") return EtsKind::AAA;
  throw std::invalid_argument("unknown model kind: " + name);
}

int ModelSpec::state_dim() const {
  switch (kind) {
    case EtsKind::SES: return 1;
    case EtsKind::ANA: return 1 + m;
    case EtsKind::AAA: return 2 + m;
  }
  return 0;
}

int ModelSpec::num_params() const {
  switch (kind) {
    case EtsKind::SES: return 2; // alpha, sigma2
    case EtsKind::ANA: return 3; // alpha, gamma, sigma2
    case EtsKind::AAA: return 4; // alpha, beta, gamma, sigma2
  }
  return 0;
}

void ModelSpec::validate() const {
  require_open_unit(alpha, "alpha");
  require_positive(sigma2, "sigma2");
  if (kind == EtsKind::SES) return;
  if (m < 2) throw std::invalid_argument("seasonal period m must be >= 2");
  if (!gamma) throw std::invalid_argument("gamma required for seasonal models");
  require_open_unit(*gamma, "gamma");
  if (kind == EtsKind::AAA) {
    if (!beta) throw std::invalid_argument("beta required for AAA");
    require_open_unit(*beta, "beta");
  }
}

SystemMatrices build_ses(double alpha, double sigma2) {
  require_open_unit(alpha, "alpha");
  require_positive(sigma2, "sigma2");
  SystemMatrices sys;
  sys.F = Eigen::MatrixXd::Ones(1, 1);
  sys.w = Eigen::RowVectorXd::Ones(1);
  sys.g = Eigen::VectorXd::Constant(1, alpha);
  sys.sigma2 = sigma2;
  return sys;
}

SystemMatrices build_ana(double alpha, double gamma, int m, double sigma2) {
  require_open_unit(alpha, "alpha");
  require_open_unit(gamma, "gamma");
  require_positive(sigma2, "sigma2");
  if (m < 2) throw std::invalid_argument("seasonal period m must be >= 2");

  const Eigen::Index n = 1 + m;
  SystemMatrices sys;
  sys.F = Eigen::MatrixXd::Zero(n, n);
  sys.F(0, 0) = 1.0;
  fill_seasonal_block(sys.F, 1, m);
  sys.w = Eigen::RowVectorXd::Zero(n);
  sys.w(0) = 1.0;
  sys.w(n - 1) = 1.0;
  sys.g = Eigen::VectorXd::Zero(n);
  sys.g(0) = alpha;
  sys.g(1) = gamma;
  sys.sigma2 = sigma2;
  return sys;
}

SystemMatrices build_aaa(double alpha, double beta, double gamma, int m,
                         double sigma2) {
  require_open_unit(alpha, "alpha");
  require_open_unit(beta, "beta");
  require_open_unit(gamma, "gamma");
  require_positive(sigma2, "sigma2");
  if (m < 2) throw std::invalid_argument("seasonal period m must be >= 2");

  const Eigen::Index n = 2 + m;
  SystemMatrices sys;
  sys.F = Eigen::MatrixXd::Zero(n, n);
  sys.F(0, 0) = 1.0;
  sys.F(0, 1) = 1.0;
  sys.F(1, 1) = 1.0;
  fill_seasonal_block(sys.F, 2, m);
  sys.w = Eigen::RowVectorXd::Zero(n);
  sys.w(0) = 1.0;
  sys.w(1) = 1.0;
  sys.w(n - 1) = 1.0;
  sys.g = Eigen::VectorXd::Zero(n);
  sys.g(0) = alpha;
  sys.g(1) = beta;
  sys.g(2) = gamma;
  sys.sigma2 = sigma2;
  return sys;
}

SystemMatrices build_matrices(const ModelSpec& spec) {
  spec.validate();
  switch (spec.kind) {
    case EtsKind::SES: return build_ses(spec.alpha, spec.sigma2);
    case EtsKind::ANA: return build_ana(spec.alpha, *spec.gamma, spec.m, spec.sigma2);
    case EtsKind::AAA:
      return build_aaa(spec.alpha, *spec.beta, *spec.gamma, spec.m, spec.sigma2);
  }
  throw std::invalid_argument("unknown model kind");
}

} // namespace tets

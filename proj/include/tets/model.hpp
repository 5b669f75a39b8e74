#pragma once

#include <Eigen/Dense>
#include <optional>
#include <string>

namespace tets {

/// Innovations state-space system: x_t = F x_{t-1} + g e_t, y_t = w x_{t-1} + e_t.
struct SystemMatrices {
  Eigen::MatrixXd F;    // n x n transition
  Eigen::RowVectorXd w; // 1 x n observation loading
  Eigen::VectorXd g;    // n x 1 gain
  double sigma2 = 1.0;  // innovation variance

  Eigen::Index dim() const { return F.rows(); }
};

enum class EtsKind { SES, ANA, AAA };

std::string to_string(EtsKind kind);
EtsKind ets_kind_from_string(const std::string& name);

/// Model family selector plus its smoothing constants and noise variance.
/// SES uses alpha only; ANA adds gamma and a seasonal period m >= 2;
/// AAA adds a slope with beta.
struct ModelSpec {
  EtsKind kind = EtsKind::SES;
  double alpha = 0.3;
  std::optional<double> beta;  // AAA only
  std::optional<double> gamma; // ANA / AAA
  int m = 0;                   // seasonal period, ANA / AAA
  double sigma2 = 1.0;

  /// State dimension: 1, 1+m, or 2+m.
  int state_dim() const;

  /// Number of free parameters including sigma2.
  int num_params() const;

  /// Throws std::invalid_argument when a field is outside its domain.
  void validate() const;
};

/// Level-only system: F=[1], w=[1], g=[alpha].
SystemMatrices build_ses(double alpha, double sigma2);

/// Level + additive seasonal, state [l, s_t, ..., s_{t-m+1}].
SystemMatrices build_ana(double alpha, double gamma, int m, double sigma2);

/// Level + slope + additive seasonal, state [l, b, s_t, ..., s_{t-m+1}].
/// The seasonal block of F is the cyclic rotation; w = [1 1 0 ... 0 1].
SystemMatrices build_aaa(double alpha, double beta, double gamma, int m,
                         double sigma2);

/// Builds the system for a validated spec.
SystemMatrices build_matrices(const ModelSpec& spec);

} // namespace tets

#include "tets/normal.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace tets {

namespace {
constexpr double kSqrt2 = 1.4142135623730950488;
constexpr double kSqrt2Pi = 2.5066282746310005024;
constexpr double kSqrtPi = 1.7724538509055160273;
constexpr double kInvSqrt2Pi = 0.3989422804014326779;
} // namespace

double erfcx(double x) {
  if (std::isnan(x)) return x;
  if (x < 0.0) {
    // erfcx(-x) = 2 exp(x^2) - erfcx(x); overflows below x ~ -26.6,
    // which is the true value of the function there.
    if (x < -26.5) return std::numeric_limits<double>::infinity();
    return 2.0 * std::exp(x * x) - erfcx(-x);
  }
  if (x <= 12.0) {
    // erfc(x) stays normal on this range, so the direct product is accurate.
    return std::exp(x * x) * std::erfc(x);
  }
  // Asymptotic series: erfcx(x) = 1/(x sqrt(pi)) * sum (-1)^k (2k-1)!! / (2x^2)^k.
  // At x = 12 the truncation error after 12 terms is below 1e-17.
  const double i2x2 = 1.0 / (2.0 * x * x);
  double term = 1.0;
  double sum = 1.0;
  for (int k = 1; k <= 12; ++k) {
    term *= -static_cast<double>(2 * k - 1) * i2x2;
    sum += term;
  }
  return sum / (x * kSqrtPi);
}

double norm_pdf(double z) { return kInvSqrt2Pi * std::exp(-0.5 * z * z); }

double norm_cdf(double z) { return 0.5 * std::erfc(-z / kSqrt2); }

double norm_sf(double z) { return 0.5 * std::erfc(z / kSqrt2); }

double norm_logsf(double z) {
  if (z <= 0.0) {
    // erfc(z/sqrt(2)) in [1,2]: direct log is exact enough.
    return std::log(0.5 * std::erfc(z / kSqrt2));
  }
  // log(0.5 erfcx(z/sqrt2)) - z^2/2 avoids the underflow of erfc itself.
  return std::log(0.5 * erfcx(z / kSqrt2)) - 0.5 * z * z;
}

double inverse_mills(double z) {
  if (z <= 0.0) {
    return norm_pdf(z) / (0.5 * std::erfc(z / kSqrt2));
  }
  // phi(z)/sf(z) = sqrt(2/pi) / erfcx(z/sqrt2); the exp factors cancel.
  return (2.0 * kInvSqrt2Pi) / erfcx(z / kSqrt2);
}

double norm_quantile(double p) {
  if (!(p > 0.0 && p < 1.0)) {
    throw std::domain_error("norm_quantile: p must lie in (0,1)");
  }
  // Acklam's rational approximation (~1e-9), polished with one Halley step.
  static const double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                             -2.759285104469687e+02, 1.383577518672690e+02,
                             -3.066479806614716e+01, 2.506628277459239e+00};
  static const double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                             -1.556989798598866e+02, 6.680131188771972e+01,
                             -1.328068155288572e+01};
  static const double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                             -2.400758277161838e+00, -2.549732539343734e+00,
                             4.374664141464968e+00,  2.938163982698783e+00};
  static const double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                             2.445134137142996e+00, 3.754408661907416e+00};
  const double plow = 0.02425;
  double x;
  if (p < plow) {
    double q = std::sqrt(-2.0 * std::log(p));
    x = (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
        ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  } else if (p <= 1.0 - plow) {
    double q = p - 0.5;
    double r = q * q;
    x = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
        (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
  } else {
    double q = std::sqrt(-2.0 * std::log1p(-p));
    x = -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
        ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  }
  // Halley refinement against the exact CDF.
  double e = norm_cdf(x) - p;
  double u = e * kSqrt2Pi * std::exp(0.5 * x * x);
  x = x - u / (1.0 + 0.5 * x * u);
  return x;
}

} // namespace tets

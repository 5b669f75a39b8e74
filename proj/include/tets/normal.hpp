#pragma once

namespace tets {

// Standard normal helpers. Tail quantities are evaluated through the
// scaled complementary error function so they stay usable out to
// |z| ~ 38 without catastrophic cancellation or underflow.

/// exp(x^2) * erfc(x), finite for all x >= 0 and moderate negative x.
double erfcx(double x);

/// Standard normal density.
double norm_pdf(double z);

/// Standard normal CDF.
double norm_cdf(double z);

/// Upper tail probability P(Z > z).
double norm_sf(double z);

/// log P(Z > z), stable deep into the upper tail.
double norm_logsf(double z);

/// Inverse Mills ratio phi(z) / (1 - Phi(z)).
double inverse_mills(double z);

/// Quantile of the standard normal, p in (0,1).
double norm_quantile(double p);

} // namespace tets

#pragma once

#include "qgf/errors.hpp"

namespace qgf {

enum class PolylogRegime { DirectSeries, FermiAsymptotic, BoseSingular };

struct PolylogResult {
  double value = 0.0;
  PolylogRegime regime_used = PolylogRegime::DirectSeries;
  double estimated_abs_error = 0.0;
};

/// Branch thresholds for the polylogarithm evaluation. The defaults keep
/// every branch inside its provable error envelope (<= 1e-10 relative for
/// |z| <= 0.5, <= 1e-6 on the rest of the supported domain); they are
/// grouped here so they can be tuned in one place.
struct PolylogConfig {
  // |z| at or below which the defining power series is used directly.
  double direct_series_z = 0.5;
  // Fermionic arguments: the expansion of Li_s(-e^x) about x = 0 is used for
  // ln(-z) below this value, the Hurwitz-zeta inversion formula above it.
  double fermi_eta_x_max = 2.5;
  // Validity gate of polylog_fermi_large (two-term Sommerfeld form).
  double fermi_large_x_min = 10.0;
  // Validity gate of polylog_bose_singular: requires -x_small < x < 0.
  double bose_x_small = 0.05;
  // Orders s in [-1/2, 4] are accurate as specified; outside, results are
  // best effort and the error estimate is inflated by this factor.
  double out_of_band_error_factor = 100.0;
};

/// Li_s(z) = sum_{k>=1} z^k / k^s for real order s and real argument z <= 1
/// (z < 1 required when s <= 1). Accuracy is guaranteed for s in [-1/2, 4].
/// Throws Error(Domain) outside the argument domain.
PolylogResult polylog(double s, double z, const PolylogConfig& cfg = {});

/// Li_s(-e^x) in the log-argument form, valid for any real x (the fermionic
/// branches never need to form e^x, so x far beyond the exp overflow range
/// is fine).
PolylogResult polylog_neg_exp(double s, double x, const PolylogConfig& cfg = {});

/// Sommerfeld expansion of Li_s(-e^x) for x >= fermi_large_x_min:
///   -sum_{k=0}^{order-1} 2 eta(2k) x^{s-2k} / Gamma(s+1-2k),
/// i.e. -x^s/Gamma(s+1) - pi^2 x^{s-2}/(6 Gamma(s-1)) - ... The error
/// estimate is the magnitude of the first dropped term.
PolylogResult polylog_fermi_large(double s, double x, int order = 2,
                                  const PolylogConfig& cfg = {});

/// Singular expansion of Li_s(e^x) for s < 1 and -x_small < x < 0:
///   Gamma(1-s) (-x)^{s-1} + sum_{k=0}^{order-1} zeta(s-k) x^k / k!.
PolylogResult polylog_bose_singular(double s, double x, int order = 2,
                                    const PolylogConfig& cfg = {});

/// Riemann zeta for s > 1, relative error <= 1e-12. Throws Error(Domain)
/// for s <= 1.
double zeta(double s);

namespace detail {
// Analytic continuation of zeta / eta to all real s (s != 1 for zeta);
// used internally by the expansion branches and exposed for tests.
double zeta_ac(double s);
double eta_ac(double s);
}  // namespace detail

}  // namespace qgf

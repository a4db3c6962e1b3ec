#include "qgf/interactions.hpp"

#include <cmath>
#include <limits>

#include "qgf/constants.hpp"
#include "qgf/polylog.hpp"

namespace qgf {
namespace {

constexpr double kPi = 3.14159265358979323846;

// Adaptive Simpson on [a, b] to the given relative tolerance.
double simpson_rec(const std::function<double(double)>& f, double a, double b,
                   double fa, double fm, double fb, double whole, double tol,
                   int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double flm = f(lm), frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double delta = left + right - whole;
  if (depth <= 0 || std::abs(delta) <= 15.0 * tol) {
    return left + right + delta / 15.0;
  }
  return simpson_rec(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
         simpson_rec(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

double integrate(const std::function<double(double)>& f, double a, double b,
                 double abs_tol) {
  const double m = 0.5 * (a + b);
  const double fa = f(a), fm = f(m), fb = f(b);
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return simpson_rec(f, a, b, fa, fm, fb, whole, abs_tol, 48);
}

}  // namespace

double ContactSpec::thermal_wavelength() const {
  const double hbar = unit_system == UnitSystem::SI ? kHbar : 1.0;
  return std::sqrt(2.0 * kPi * hbar * hbar * beta / mass);
}

double ContactSpec::gamma_coupling() const {
  const double lam = thermal_wavelength();
  return 2.0 * kPi * beta * c / (lam * lam * rho);
}

double ContactSpec::tau_degeneracy() const {
  const double lam = thermal_wavelength();
  return 4.0 * kPi / (lam * lam * rho * rho);
}

GasSpec harmonic_remap(const GasSpec& spec, double coupling, int n_modes) {
  spec.validate();
  if (spec.is_box()) throw_domain("harmonic_remap: trap confinement required");
  if (coupling < 0.0) throw_validation("harmonic_remap: coupling must be >= 0");
  GasSpec out = spec;
  const double shift = 2.0 * coupling * n_modes / spec.mass;
  for (double& w : out.geometry) w = std::sqrt(w * w + shift);
  return out;
}

double meanfield_ideal_density(const GasSpec& base, double beta, double alpha) {
  if (!(alpha < 0.0) && base.statistics == Statistics::Bose) {
    throw_domain("meanfield_ideal_density: alpha must be negative for bosons");
  }
  const double z = std::exp(beta * alpha);
  if (base.is_box()) {
    const double lam = base.thermal_wavelength(beta);
    return polylog(base.dimension / 2.0, z).value / std::pow(lam, base.dimension);
  }
  return polylog(static_cast<double>(base.dimension), z).value /
         std::pow(beta * base.hbar(), base.dimension);
}

double meanfield_critical_density(const GasSpec& base, double beta) {
  if (base.is_box()) {
    if (base.dimension <= 2) return std::numeric_limits<double>::infinity();
    const double lam = base.thermal_wavelength(beta);
    return zeta(base.dimension / 2.0) / std::pow(lam, base.dimension);
  }
  if (base.dimension <= 1) return std::numeric_limits<double>::infinity();
  return zeta(static_cast<double>(base.dimension)) /
         std::pow(beta * base.hbar(), base.dimension);
}

double meanfield_alpha(const MeanFieldSpec& mf, const ThermoPoint& pt) {
  mf.base.validate();
  if (mf.base.is_fermi()) throw_validation("meanfield_alpha: Bose base required");
  if (mf.lambda < 0.0) throw_validation("meanfield_alpha: lambda must be >= 0");
  if (mf.lambda == 0.0) return pt.mu;

  const double rho_c = meanfield_critical_density(mf.base, pt.beta);
  if (pt.mu >= mf.lambda * rho_c) return 0.0;

  auto g = [&](double alpha) {
    return alpha + mf.lambda * meanfield_ideal_density(mf.base, pt.beta, alpha) - pt.mu;
  };
  // Root is negative; g is strictly increasing with g(0-) = lambda rho_c - mu > 0,
  // so halving toward zero always crosses the sign change.
  double hi = -1.0 / pt.beta;
  for (int it = 0; g(hi) < 0.0; ++it) {
    hi *= 0.5;
    if (it > 1100 || hi == 0.0) {
      throw Error(ErrorCode::ConvergenceFailure, "meanfield_alpha: no sign change near 0");
    }
  }
  double lo = std::min(pt.mu, hi * 2.0) - 1.0 / pt.beta;
  int guard = 0;
  while (g(lo) > 0.0) {
    lo = 2.0 * lo - 1.0 / pt.beta;
    if (++guard > 200 || !std::isfinite(lo)) {
      throw Error(ErrorCode::ConvergenceFailure, "meanfield_alpha: bracket failed");
    }
  }
  double alpha = 0.5 * (lo + hi);
  for (int it = 0; it < 300; ++it) {
    const double val = g(alpha);
    const double scale = std::max({std::abs(pt.mu), std::abs(alpha), 1.0 / pt.beta});
    if (std::abs(val) <= 1e-13 * scale) return alpha;
    (val > 0.0 ? hi : lo) = alpha;
    // Newton step with d rho_0/d alpha, safeguarded by the bracket.
    double drho;
    if (mf.base.is_box()) {
      const double lam = mf.base.thermal_wavelength(pt.beta);
      drho = pt.beta * polylog(mf.base.dimension / 2.0 - 1.0, std::exp(pt.beta * alpha)).value /
             std::pow(lam, mf.base.dimension);
    } else {
      drho = pt.beta * polylog(mf.base.dimension - 1.0, std::exp(pt.beta * alpha)).value /
             std::pow(pt.beta * mf.base.hbar(), mf.base.dimension);
    }
    double next = alpha - val / (1.0 + mf.lambda * drho);
    if (!(next > lo) || !(next < hi)) next = 0.5 * (lo + hi);
    alpha = next;
  }
  throw Error(ErrorCode::ConvergenceFailure, "meanfield_alpha: did not converge");
}

double meanfield_fisher_mm(double f0_mm, double lambda, double v_d, double beta) {
  if (!(f0_mm >= 0.0)) throw_validation("meanfield_fisher_mm: f0_mm must be >= 0");
  if (lambda == 0.0) return f0_mm;
  return v_d * beta * f0_mm / (v_d * beta + lambda * f0_mm);
}

double contact_g2(double r, const ContactSpec& cs) {
  const double gamma = cs.gamma_coupling();
  const double tau = cs.tau_degeneracy();
  const double u = cs.rho * tau * r;
  return 1.0 + (1.0 - 4.0 * gamma / (tau * tau) * (1.0 + u)) * std::exp(-u);
}

ContactFisherResult contact_fisher_mm(const ContactSpec& cs, double mean_n) {
  if (!(mean_n > 0.0)) throw_validation("contact_fisher_mm: mean_n must be positive");
  ContactFisherResult out;
  const double lam = cs.thermal_wavelength();
  const double lam2 = lam * lam;
  const double rho = mean_n / cs.l_x;  // fixed-size convention
  const double b2 = cs.beta * cs.beta;
  const double expo = std::exp(-4.0 * kPi * mean_n / (lam2 * rho * rho));
  const double lam4 = lam2 * lam2;
  const double rho2 = rho * rho;
  const double rho4 = rho2 * rho2;
  out.ideal = b2 * mean_n + b2 * lam2 * rho2 / (2.0 * kPi) * mean_n -
              b2 * lam4 * rho4 / (8.0 * kPi * kPi) * (1.0 - expo);
  const double b3 = b2 * cs.beta;
  out.correction =
      cs.c * (3.0 * b3 * lam4 * lam2 * rho4 * rho2 * rho / (16.0 * kPi * kPi * kPi) *
                  (1.0 - expo) -
              b3 * lam4 * rho4 * rho / (4.0 * kPi * kPi) * mean_n * (2.0 + expo));
  out.value = out.ideal + out.correction;
  const double gamma = 2.0 * kPi * cs.beta * cs.c / (lam2 * rho);
  const double tau = 4.0 * kPi / (lam2 * rho2);
  out.gamma_ok = std::sqrt(std::max(0.0, gamma)) <= 0.3 * tau;
  out.tau_ok = tau <= 0.3;
  out.breakdown = std::abs(out.correction) > 0.5 * std::abs(out.ideal);
  return out;
}

double variance_from_g2(const std::function<double(double)>& g2, double rho,
                        double length, double mean_n) {
  if (!(length > 0.0)) throw_validation("variance_from_g2: length must be positive");
  auto integrand = [&](double r) { return (length - r) * (g2(r) - 1.0); };
  // Scale the absolute tolerance to the Poisson part so the result carries
  // ~1e-9 relative accuracy.
  const double tol = 1e-10 * std::max(mean_n, 1.0);
  const double integral = integrate(integrand, 0.0, length, tol);
  const double var = mean_n + 2.0 * rho * rho * integral;
  if (var < -1e-9 * mean_n) {
    throw Error(ErrorCode::NegativeVariance, "variance_from_g2: negative variance");
  }
  return std::max(0.0, var);
}

}  // namespace qgf

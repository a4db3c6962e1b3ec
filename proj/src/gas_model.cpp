#include "qgf/gas_model.hpp"

#include <cmath>

namespace qgf {
namespace {

constexpr double kPi = 3.14159265358979323846;

void check_point(const GasSpec& spec, const ThermoPoint& pt) {
  spec.validate();
  if (!(pt.beta > 0.0)) throw_validation("beta must be positive");
  if (spec.statistics == Statistics::Bose && !(pt.mu < 0.0)) {
    throw_domain("continuum formulas require mu < 0 for bosons");
  }
}

// sgn * Li_s(sgn * e^{beta mu}) with sgn = -1 for fermions, +1 for bosons.
// All continuum formulas are built from this combination. The fermionic
// side uses the log-argument form so deeply degenerate gases (beta mu
// beyond the exp overflow range) evaluate fine.
double gpoly(const GasSpec& spec, const ThermoPoint& pt, double s) {
  if (spec.is_fermi()) return -polylog_neg_exp(s, pt.beta * pt.mu).value;
  return polylog(s, std::exp(pt.beta * pt.mu)).value;
}

// Prefactor V_d/lambda^d (box) or 1/(beta hbar Omega)^d (trap).
double mode_measure(const GasSpec& spec, double beta) {
  if (spec.is_box()) {
    return spec.volume() / std::pow(spec.thermal_wavelength(beta), spec.dimension);
  }
  return std::pow(beta * spec.hbar() * spec.mean_frequency(), -spec.dimension);
}

}  // namespace

double density(const GasSpec& spec, double mean_n) {
  return spec.is_box() ? mean_n / spec.volume()
                       : mean_n * std::pow(spec.mean_frequency(), spec.dimension);
}

double mean_particle_number(const GasSpec& spec, const ThermoPoint& pt) {
  check_point(spec, pt);
  const double d = spec.dimension;
  const double order = spec.is_box() ? d / 2.0 : d;
  return mode_measure(spec, pt.beta) * gpoly(spec, pt, order);
}

double mean_energy(const GasSpec& spec, const ThermoPoint& pt) {
  check_point(spec, pt);
  const double d = spec.dimension;
  if (spec.is_box()) {
    return mode_measure(spec, pt.beta) * (d / (2.0 * pt.beta)) * gpoly(spec, pt, d / 2.0 + 1.0);
  }
  return mode_measure(spec, pt.beta) * (d / pt.beta) * gpoly(spec, pt, d + 1.0);
}

FisherMatrix2 fisher_continuum(const GasSpec& spec, const ThermoPoint& pt) {
  check_point(spec, pt);
  const double d = spec.dimension;
  const double bm = pt.beta * pt.mu;
  const double meas = mode_measure(spec, pt.beta);
  FisherMatrix2 f;
  if (spec.is_box()) {
    const double g_lo = gpoly(spec, pt, d / 2.0 - 1.0);
    const double g_mid = gpoly(spec, pt, d / 2.0);
    const double g_hi = gpoly(spec, pt, d / 2.0 + 1.0);
    f.f_mm = pt.beta * pt.beta * meas * g_lo;
    f.f_bb = meas / (pt.beta * pt.beta) *
             (bm * bm * g_lo - d * bm * g_mid + (d * d + 2.0 * d) / 4.0 * g_hi);
    f.f_bm = meas * (bm * g_lo - d / 2.0 * g_mid);
  } else {
    const double g_lo = gpoly(spec, pt, d - 1.0);
    const double g_mid = gpoly(spec, pt, d);
    const double g_hi = gpoly(spec, pt, d + 1.0);
    f.f_mm = pt.beta * pt.beta * meas * g_lo;
    f.f_bb = meas / (pt.beta * pt.beta) *
             (bm * bm * g_lo - 2.0 * d * bm * g_mid + (d * d + d) * g_hi);
    f.f_bm = meas * (bm * g_lo - d * g_mid);
  }
  return f;
}

FisherMatrix2 fisher_lowT_fermi(const GasSpec& spec, const ThermoPoint& pt) {
  spec.validate();
  if (!spec.is_fermi()) throw_domain("fisher_lowT_fermi: Fermi statistics required");
  const double bm = pt.beta * pt.mu;
  if (!(bm >= 10.0)) throw_domain("fisher_lowT_fermi: requires beta*mu >= 10");
  const double d = spec.dimension;
  const double n = mean_particle_number(spec, pt);
  const double pi2 = kPi * kPi;
  FisherMatrix2 f;
  if (spec.is_box()) {
    f.f_mm = d * pt.beta / (2.0 * pt.mu) * n;
    f.f_bb = d * pi2 / (6.0 * std::pow(pt.beta, 3) * pt.mu) * n;
    f.f_bm = (2.0 - d) * d * pi2 / (12.0 * pt.beta * pt.beta * pt.mu * pt.mu) * n;
  } else {
    f.f_mm = d * pt.beta / pt.mu * n;
    f.f_bb = d * pi2 / (3.0 * std::pow(pt.beta, 3) * pt.mu) * n;
    f.f_bm = (1.0 - d) * d * pi2 / (3.0 * pt.beta * pt.beta * pt.mu * pt.mu) * n;
  }
  return f;
}

std::pair<GasObservables, FisherMatrix2> classical_fisher(const GasSpec& spec,
                                                          const ThermoPoint& pt) {
  spec.validate();
  if (!(pt.beta > 0.0)) throw_validation("beta must be positive");
  const double d = spec.dimension;
  const double zc = mode_measure(spec, pt.beta);  // single-particle partition sum
  const double n = std::exp(pt.beta * pt.mu) * zc;
  const double h1 = spec.is_box() ? d / (2.0 * pt.beta) : d / pt.beta;
  const double var_h1 = spec.is_box() ? d / (2.0 * pt.beta * pt.beta)
                                      : d / (pt.beta * pt.beta);
  GasObservables obs;
  obs.mean_n = n;
  obs.mean_h = n * h1;
  obs.var_n = n;  // Poisson
  obs.compressibility = pt.beta * obs.var_n / (density(spec, n) * n);
  FisherMatrix2 f;
  f.f_mm = pt.beta * pt.beta * n;
  f.f_bb = n * ((pt.mu - h1) * (pt.mu - h1) + var_h1);
  f.f_bm = pt.beta * n * (pt.mu - h1);
  return {obs, f};
}

double compressibility(const GasSpec& spec, const ThermoPoint& pt) {
  const double n = mean_particle_number(spec, pt);
  if (!(n > 0.0)) throw_domain("compressibility: <N> must be positive");
  const double var_n = fisher_continuum(spec, pt).f_mm / (pt.beta * pt.beta);
  return pt.beta * var_n / (density(spec, n) * n);
}

}  // namespace qgf

#include "qgf/eos.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace qgf {
namespace {

constexpr double kPi = 3.14159265358979323846;

double measure(const GasSpec& spec, double beta) {
  return spec.is_box()
             ? spec.volume() / std::pow(spec.thermal_wavelength(beta), spec.dimension)
             : std::pow(beta * spec.hbar() * spec.mean_frequency(), -spec.dimension);
}

}  // namespace

double bose_continuum_max_n(const GasSpec& spec, double beta) {
  const double order = spec.is_box() ? spec.dimension / 2.0 : spec.dimension;
  if (order <= 1.0) return std::numeric_limits<double>::infinity();
  return measure(spec, beta) * zeta(order);
}

ThermoPoint solve_mu(const GasSpec& spec, double beta, double target_n) {
  spec.validate();
  if (!(beta > 0.0)) throw_validation("solve_mu: beta must be positive");
  if (!(target_n > 0.0)) throw_validation("solve_mu: target_n must be positive");

  const bool bose = spec.statistics == Statistics::Bose;
  if (bose) {
    const double nmax = bose_continuum_max_n(spec, beta);
    if (target_n >= nmax) {
      throw Error(ErrorCode::NoSolution,
                  "solve_mu: target exceeds the Bose continuum maximum "
                  "(condensed phase)");
    }
  }

  // Classical inversion as the initial guess; exact in the dilute limit.
  double mu = std::log(target_n / measure(spec, beta)) / beta;
  if (bose && mu >= 0.0) mu = -1.0 / (beta * target_n);

  // Establish a bracket [lo, hi] with N(lo) < target < N(hi).
  auto n_of = [&](double m) {
    return mean_particle_number(spec, ThermoPoint{beta, m});
  };
  double lo = mu, hi = mu;
  double n_mu = n_of(mu);
  const double scale = std::max(std::abs(mu), 1.0 / beta);
  if (n_mu < target_n) {
    double step = scale;
    // For bosons in d <= 2 geometries the continuum <N> is unbounded, but
    // only down to -beta*mu ~ 1e-13 is the fugacity distinguishable from 1
    // in double precision; beyond that the target is unreachable.
    const double mu_wall = -1e-13 / beta;
    while (n_of(hi) < target_n) {
      lo = hi;
      hi = bose ? hi / 2.0 : hi + step;  // bose: mu -> 0- ; fermi: upward
      if (bose && hi > mu_wall) {
        hi = mu_wall;
        if (n_of(hi) < target_n) {
          throw Error(ErrorCode::NoSolution,
                      "solve_mu: target exceeds the numerically representable "
                      "continuum range below mu = 0");
        }
        break;
      }
      step *= 2.0;
    }
  } else {
    double step = scale;
    while (n_of(lo) > target_n) {
      hi = lo;
      lo = bose ? (lo < -1.0 ? lo * 2.0 : lo - step) : lo - step;
      step *= 2.0;
      if (!std::isfinite(lo)) {
        throw Error(ErrorCode::ConvergenceFailure, "solve_mu: bracket expansion failed");
      }
    }
  }

  // Safeguarded Newton with d<N>/dmu = beta Var(N) = F_mm / beta; damped
  // into the bracket, bisection when a step leaves it. Monotonicity of
  // <N>(mu) guarantees the bracket always shrinks.
  for (int it = 0; it < 200; ++it) {
    const double f = n_of(mu) - target_n;
    if (std::abs(f) <= 1e-11 * target_n) return ThermoPoint{beta, mu};
    if (f > 0.0) hi = mu; else lo = mu;
    const double dndmu = fisher_continuum(spec, ThermoPoint{beta, mu}).f_mm / beta;
    double next = mu - f / dndmu;
    if (!(next > lo) || !(next < hi) || !std::isfinite(next)) {
      next = 0.5 * (lo + hi);  // bisection fallback
    }
    if (bose && next >= 0.0) next = 0.5 * (mu + 0.0);
    mu = next;
  }
  const double f = n_of(mu) - target_n;
  if (std::abs(f) <= 1e-8 * target_n) return ThermoPoint{beta, mu};
  throw Error(ErrorCode::ConvergenceFailure, "solve_mu: Newton did not converge");
}

RegimeReport classify_regime(const GasSpec& spec, const ThermoPoint& pt,
                             double mean_n, const RegimeConfig& cfg) {
  spec.validate();
  if (!(mean_n > 0.0)) throw_validation("classify_regime: mean_n must be positive");
  RegimeReport rep;
  rep.fugacity = std::exp(pt.beta * pt.mu);
  const double hbar = spec.hbar();
  if (spec.is_box()) {
    const double two_pi_hbar = 2.0 * kPi * hbar;
    rep.continuum_bound = pt.beta * two_pi_hbar * two_pi_hbar /
                          (2.0 * spec.mass * std::pow(spec.volume(), 2.0 / spec.dimension));
  } else {
    rep.continuum_bound = pt.beta * hbar * spec.mean_frequency();
  }
  rep.ground_bound = std::log1p(1.0 / mean_n);

  const double neg_bm = -pt.beta * pt.mu;
  if (rep.fugacity <= cfg.classical_fugacity) {
    rep.regime = Regime::Classical;
  } else if (spec.is_fermi()) {
    rep.regime = Regime::QuantumContinuum;
  } else if (neg_bm >= rep.continuum_bound) {
    rep.regime = Regime::QuantumContinuum;
  } else if (neg_bm >= rep.ground_bound) {
    rep.regime = Regime::DiscreteRequired;
  } else {
    rep.regime = Regime::Condensed;
  }
  return rep;
}

double continuum_fisher_bound_mm(const GasSpec& spec, const ThermoPoint& pt,
                                 double mean_n) {
  spec.validate();
  if (spec.is_fermi()) throw_domain("continuum_fisher_bound_mm: Bose statistics required");
  const double b2 = pt.beta * pt.beta;
  const double n = mean_n;
  if (spec.is_box()) {
    switch (spec.dimension) {
      case 3: return b2 * std::pow(n, 4.0 / 3.0) / std::pow(zeta(1.5), 4.0 / 3.0);
      case 2: return b2 * n * n / std::log(n);
      case 1: return b2 * n * n / (2.0 * kPi);
    }
  } else {
    switch (spec.dimension) {
      case 3: return kPi * kPi * b2 * n / (6.0 * zeta(3.0));
      case 2: return 3.0 * b2 * n * std::log(n) / (kPi * kPi);
      case 1: return b2 * n * n / std::log(n);
    }
  }
  throw_validation("continuum_fisher_bound_mm: bad dimension");
}

}  // namespace qgf

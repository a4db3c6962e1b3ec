#pragma once

#include <utility>

#include "qgf/polylog.hpp"
#include "qgf/types.hpp"

namespace qgf {

/// <N> in the continuum approximation:
///   boxes  -+ (V_d / lambda_T^d) Li_{d/2}(-+ e^{beta mu})
///   traps  -+ Li_d(-+ e^{beta mu}) / (beta hbar Omega_d)^d
/// (upper signs for fermions). Throws Error(Domain) for Bose mu >= 0.
double mean_particle_number(const GasSpec& spec, const ThermoPoint& pt);

/// <H> in the continuum approximation.
double mean_energy(const GasSpec& spec, const ThermoPoint& pt);

/// Full continuum Fisher matrix from the polylogarithm expressions.
FisherMatrix2 fisher_continuum(const GasSpec& spec, const ThermoPoint& pt);

/// Two-term Sommerfeld forms valid for Fermi statistics with beta*mu >= 10:
///   box:  (d beta/2mu) <N>,  (d pi^2/6 beta^3 mu) <N>,  ((2-d) d pi^2/12 beta^2 mu^2) <N>
///   trap: (d beta/mu) <N>,   (d pi^2/3 beta^3 mu) <N>,  ((1-d) d pi^2/3 beta^2 mu^2) <N>
FisherMatrix2 fisher_lowT_fermi(const GasSpec& spec, const ThermoPoint& pt);

/// Maxwell-Boltzmann baseline, valid for any mu. Single-particle moments are
/// <H1> = d/(2 beta), Var(H1) = d/(2 beta^2) for boxes and d/beta, d/beta^2
/// for traps.
std::pair<GasObservables, FisherMatrix2> classical_fisher(const GasSpec& spec,
                                                          const ThermoPoint& pt);

/// kappa_T = beta Var(N) / (rho <N>) with rho = <N>/V_d for boxes and the
/// trap convention rho~ = <N> Omega_d^d.
double compressibility(const GasSpec& spec, const ThermoPoint& pt);

// Density in the confinement-appropriate convention (<N>/V_d or <N> Omega^d).
double density(const GasSpec& spec, double mean_n);

}  // namespace qgf

#pragma once

#include "qgf/gas_model.hpp"
#include "qgf/types.hpp"

namespace qgf {

/// Tunable thresholds of the regime classifier. The classical threshold on
/// the fugacity keeps next-order polylog corrections below 1%.
struct RegimeConfig {
  double classical_fugacity = 0.01;
};

/// Invert the continuum equation of state: find mu with
/// <N>(beta, mu) = target_n to 1e-8 relative, by safeguarded Newton with the
/// analytic derivative d<N>/dmu = beta Var(N) and bisection fallback.
/// Throws Error(NoSolution) when target_n exceeds the Bose continuum maximum
/// (condensation; switch to the condensate module).
ThermoPoint solve_mu(const GasSpec& spec, double beta, double target_n);

/// Largest <N> reachable in the continuum at mu -> 0- (Bose). Returns +inf
/// when the polylog diverges there (d <= 2 boxes, d = 1 traps).
double bose_continuum_max_n(const GasSpec& spec, double beta);

/// Classify the point against the two -beta*mu bounds: the energy
/// spacing bound of the continuum approximation and the ground-state
/// occupation bound. Fermi gases map to Classical/QuantumContinuum only.
RegimeReport classify_regime(const GasSpec& spec, const ThermoPoint& pt,
                             double mean_n, const RegimeConfig& cfg = {});

/// Saturating upper bound of (F_d)_{mu,mu} for Bose gases near the onset of
/// condensation, as a function of <N>:
///   box:  d=3: beta^2 N^{4/3}/zeta(3/2)^{4/3}; d=2: beta^2 N^2/ln N;
///         d=1: beta^2 N^2/(2 pi)
///   trap: d=3: pi^2 beta^2 N/(6 zeta(3)); d=2: 3 beta^2 N ln N/pi^2;
///         d=1: beta^2 N^2/ln N
double continuum_fisher_bound_mm(const GasSpec& spec, const ThermoPoint& pt,
                                 double mean_n);

}  // namespace qgf

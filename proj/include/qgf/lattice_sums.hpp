#pragma once

#include <vector>

#include "qgf/types.hpp"

namespace qgf {

/// Per-axis summation range for discrete mode sums. Truncate checks the
/// dropped tail against an integral bound and fails loudly; ZetaTail adds
/// the analytic tail estimate instead.
struct ModeCutoff {
  enum class Tail { Truncate, ZetaTail };
  int max_index = 64;
  Tail tail_policy = Tail::Truncate;
};

/// Lowest single-particle energy of the spectrum (0 for periodic boxes and
/// traps, the n_i = 1 corner for Dirichlet boxes).
double ground_energy(const GasSpec& spec);

/// The single-particle spectrum up to the cutoff, in a fixed deterministic
/// order (lexicographic in the mode indices). Periodic boxes run n_i in
/// [-M, M], Dirichlet boxes in [1, M], traps in [0, M].
std::vector<double> mode_energies(const GasSpec& spec, const ModeCutoff& cutoff);

/// Occupancy 1/(e^y -+ ... +- 1) and Fisher weight e^y/(e^y +- 1)^2 at
/// y = beta (eps - mu), stable against exp overflow.
double mode_occupancy(bool fermi, double y);
double mode_fisher_weight(bool fermi, double y);

/// Upper bound on the <N> contribution of the modes dropped by the cutoff
/// (Boltzmann-weight integral bound).
double discrete_tail_bound(const GasSpec& spec, const ThermoPoint& pt,
                           const ModeCutoff& cutoff);

/// Exact finite sums over the spectrum. Throw Error(Domain) if mu >= eps_0
/// for bosons and Error(CutoffTooSmall) when the tail bound exceeds 1e-8 of
/// the sum under the Truncate policy.
double discrete_sum_N(const GasSpec& spec, const ThermoPoint& pt, const ModeCutoff& cutoff);
double discrete_sum_E(const GasSpec& spec, const ThermoPoint& pt, const ModeCutoff& cutoff);
double discrete_sum_Fmm(const GasSpec& spec, const ThermoPoint& pt, const ModeCutoff& cutoff);

/// All three Fisher entries from the same mode sums.
FisherMatrix2 discrete_fisher(const GasSpec& spec, const ThermoPoint& pt,
                              const ModeCutoff& cutoff);

/// sum over nonzero integer vectors n in Z^d with |n_i| <= cutoff of 1/|n|^4.
/// Converges to ~16.5 (d=3) and ~6.03 (d=2) at cutoff 256; the d=1 two-sided
/// sum tends to 2 zeta(4) = pi^4/45 (the one-sided convention used by the
/// dominant-contribution formulas below is zeta(4) = pi^4/90).
double lattice_constant(int d, int cutoff,
                        ModeCutoff::Tail tail = ModeCutoff::Tail::Truncate);

/// Dominant contributions in the intermediate (discrete) regime for
/// isotropic gases, with mu kept in the ground term and set to zero in the
/// excited shells:
///   <N>:  box d=1:  -1/(beta mu) + pi L^2/(6 lambda^2)
///         trap d=1: -1/(beta mu) + ln(1/(beta hbar w)) / (beta hbar w)
///   F_mm: box d=3:  1/mu^2 + C3 beta^2 V^{4/3} / (pi^2 lambda^4)
///         box d=2:  1/mu^2 + C2 beta^2 V^2 / (pi^2 lambda^4)
///         box d=1:  1/mu^2 + zeta(4) beta^2 L^4 / (pi^2 lambda^4)
/// with C3, C2 the lattice constants at cutoff 256.
double discrete_dominant_N(const GasSpec& spec, const ThermoPoint& pt);
double discrete_dominant_Fmm(const GasSpec& spec, const ThermoPoint& pt);

/// Dominant contribution for the Bose d=2 trap in the discrete window:
///   1/mu^2 + (<N>/(2 hbar^2 rho~)) ln(<N>/(beta^2 hbar^2 rho~))
/// which reduces to 1/mu^2 + (1/(hbar Omega)^2) ln(1/(beta hbar Omega)).
double harmonic_discrete_Fmm_2d(const GasSpec& spec, const ThermoPoint& pt);

}  // namespace qgf

#pragma once

#include <string>
#include <vector>

#include "qgf/constants.hpp"
#include "qgf/errors.hpp"

namespace qgf {

enum class Statistics { Fermi, Bose };
enum class Confinement { PeriodicBox, HarmonicTrap, DirichletBox };
enum class UnitSystem { SI, Reduced };

/// Static description of an ideal gas: statistics, confinement, dimension,
/// geometry (box side lengths or trap angular frequencies, one entry per
/// axis) and particle mass. Reduced units set hbar = k_B = 1.
struct GasSpec {
  Statistics statistics = Statistics::Bose;
  Confinement confinement = Confinement::PeriodicBox;
  int dimension = 3;
  std::vector<double> geometry;  // lengths [m] for boxes, omega [rad/s] for traps
  double mass = 1.0;
  UnitSystem unit_system = UnitSystem::Reduced;

  bool is_box() const { return confinement != Confinement::HarmonicTrap; }
  bool is_fermi() const { return statistics == Statistics::Fermi; }

  double hbar() const { return unit_system == UnitSystem::SI ? kHbar : 1.0; }
  double kb() const { return unit_system == UnitSystem::SI ? kBoltzmann : 1.0; }

  double volume() const;           // product of side lengths (boxes only)
  double mean_frequency() const;   // geometric mean of the trap frequencies
  double thermal_wavelength(double beta) const;  // sqrt(2 pi hbar^2 beta / m)
  bool isotropic(double rtol = 1e-12) const;

  void validate() const;  // throws Error(Validation) on malformed specs
};

/// A point in the (beta, mu) parameter plane. beta = 1/(k_B T) carries units
/// of inverse energy; mu is an energy.
struct ThermoPoint {
  double beta = 1.0;
  double mu = 0.0;
};

/// Symmetric 2x2 Fisher matrix for joint (beta, mu) estimation.
/// Entries follow the grand-canonical convention F_bb = Var(mu N - H),
/// F_mm = beta^2 Var(N), F_bm = beta Cov(N, mu N - H); F_bb carries units of
/// energy^2, F_mm of 1/energy^2 and F_bm is dimensionless.
struct FisherMatrix2 {
  double f_bb = 0.0;
  double f_bm = 0.0;
  double f_mm = 0.0;

  double det() const { return f_bb * f_mm - f_bm * f_bm; }
  // PSD up to the numerical slack allowed for round-off in the entries.
  bool positive_semidefinite(double slack = 1e-12) const {
    return f_bb >= 0.0 && f_mm >= 0.0 && det() >= -slack * f_bb * f_mm;
  }
};

/// First and second moments of an ideal gas at one thermodynamic point.
struct GasObservables {
  double mean_n = 0.0;          // <N>
  double mean_h = 0.0;          // <H>
  double var_n = 0.0;           // Var(N)
  double compressibility = 0.0; // kappa_T = beta Var(N) / (rho <N>)
};

enum class Regime { Classical, QuantumContinuum, DiscreteRequired, Condensed };

/// Outcome of the regime classification together with the two chemical
/// potential bounds (expressed as thresholds on -beta*mu) that decided it.
struct RegimeReport {
  Regime regime = Regime::Classical;
  double continuum_bound = 0.0;  // energy-spacing threshold on -beta*mu
  double ground_bound = 0.0;     // ground-state occupation threshold
  double fugacity = 0.0;         // e^{beta mu}
};

const char* regime_name(Regime r);
const char* statistics_name(Statistics s);
const char* confinement_name(Confinement c);

}  // namespace qgf

#pragma once

#include <functional>

#include "qgf/types.hpp"

namespace qgf {

/// Imperfect Bose gas H = H_0 + lambda N^2/(2 V_d); lambda >= 0 (repulsive).
struct MeanFieldSpec {
  double lambda = 0.0;
  GasSpec base;
};

/// Weakly interacting 1D bosons (Yang-Yang model, perturbative regime).
/// Dimensionless couplings: gamma = 2 pi beta c/(lambda_T^2 rho),
/// tau = 4 pi/(lambda_T^2 rho^2).
struct ContactSpec {
  double c = 0.0;     // energy * length
  double rho = 0.0;   // 1/length
  double beta = 1.0;  // inverse energy
  double l_x = 1.0;   // length
  double mass = 1.0;
  UnitSystem unit_system = UnitSystem::Reduced;

  double thermal_wavelength() const;
  double gamma_coupling() const;
  double tau_degeneracy() const;
};

/// Pairwise harmonic interactions amount to a frequency remap of the trap:
/// w_i -> sqrt(w_i^2 + 2 gamma n_modes / m) for each axis (normal-mode
/// convention; the gauge of the phase-space rotation is a modeling choice).
GasSpec harmonic_remap(const GasSpec& spec, double coupling, int n_modes = 1);

/// alpha(mu) of the imperfect Bose gas: zero if mu >= lambda rho_c, else the
/// unique root of alpha + lambda rho_0(alpha) = mu (rho_0 = ideal density).
double meanfield_alpha(const MeanFieldSpec& mf, const ThermoPoint& pt);

/// Ideal density of the base spec at chemical potential alpha, in the
/// confinement-appropriate convention; rho_c is its mu -> 0- supremum.
double meanfield_ideal_density(const GasSpec& base, double beta, double alpha);
double meanfield_critical_density(const GasSpec& base, double beta);

/// F_mm^(lambda) = V beta F0 / (V beta + lambda F0).
double meanfield_fisher_mm(double f0_mm, double lambda, double v_d, double beta);

/// Perturbative pair correlation:
///   g2(r) = 1 + (1 - (4 gamma/tau^2)(1 + rho tau r)) e^{-rho tau r}
double contact_g2(double r, const ContactSpec& cs);

struct ContactFisherResult {
  double value = 0.0;
  double ideal = 0.0;       // c = 0 part
  double correction = 0.0;  // O(c) part
  bool gamma_ok = true;     // sqrt(gamma) << tau
  bool tau_ok = true;       // tau << 1
  bool breakdown = false;   // |correction| > 50% of the ideal value
};

/// Closed-form F_mm of the weakly interacting gas at fixed size l_x
/// (rho = mean_n / l_x), with validity and perturbative-breakdown flags.
ContactFisherResult contact_fisher_mm(const ContactSpec& cs, double mean_n);

/// Delta^2 N = <N> + 2 rho^2 int_0^L (L-r)(g2(r)-1) dr by adaptive
/// quadrature to 1e-9 relative. Throws Error(NegativeVariance) if the result
/// is below -1e-9 <N>.
double variance_from_g2(const std::function<double(double)>& g2, double rho,
                        double length, double mean_n);

}  // namespace qgf

#pragma once

#include <utility>

#include "qgf/types.hpp"

namespace qgf {

/// State of a condensed Bose gas at temperature T < t_c. mu_eff is the
/// finite-size chemical potential, -beta mu_eff = 1/(f <N>). With
/// symmetry_breaking the ground-mode fluctuations are dropped (Delta^2 N_0 = 0)
/// and the Fisher matrix reduces to the excited-state values at mu = 0.
struct CondensedState {
  double temperature = 0.0;
  double t_c = 0.0;
  double fraction = 0.0;
  double mu_eff = 0.0;
  bool symmetry_breaking = false;
};

/// Exponentially anisotropic slab L_x = L_y = gamma e^{alpha L_z} hosting a
/// generalized (two-step) condensation. ell <= 0 selects the thermal
/// wavelength as the characteristic length.
struct SlabSpec {
  double rho = 0.0;        // 1/volume
  double alpha = 0.0;      // 1/length
  double l_z = 0.0;        // length
  double gamma_len = 1.0;  // length prefactor of the transverse growth
  double ell = 0.0;        // characteristic length; <= 0 means lambda_T
};

/// T_c for normal condensation: (2 pi hbar^2 / k_B m)(rho/zeta(3/2))^{2/3}
/// for the isotropic d=3 box, (hbar/k_B)(rho~/zeta(d))^{1/d} for isotropic
/// d=2,3 traps. Throws Error(NoTransition) for other cases.
double critical_temperature(const GasSpec& spec, double density);

/// f = 1 - (T/t_c)^{3/2} (box) or 1 - (T/t_c)^d (trap); requires T <= t_c.
double condensate_fraction(const GasSpec& spec, double temperature, double t_c);

CondensedState make_condensed_state(const GasSpec& spec, double temperature,
                                    double t_c, double mean_n,
                                    bool symmetry_breaking = false);

/// Condensed-phase F_{beta,beta} (the thermal averages taken at beta mu = 0):
///   box:  ((d^2+2d)/4) zeta(d/2+1) V / (beta^2 lambda^d)
///   trap: (d+d^2) zeta(d+1) / (beta^{d+2} (hbar Omega)^d)
double condensed_fbb(const GasSpec& spec, double beta);

/// Full condensed-phase Fisher matrix. Without symmetry breaking the ground
/// mode adds beta^2(f<N> + f^2<N>^2) to F_mm, 1/beta^2 to F_bb and -f<N> to
/// F_bm; the excited-state parts are the mu -> 0 continuum/discrete values.
FisherMatrix2 condensed_fisher(const GasSpec& spec, const CondensedState& cs,
                               double mean_n);

/// Isobaric 2D condensation (Dirichlet box): T_c = sqrt(12 hbar P/(pi m k_B)).
double isobaric_transition(double pressure, double mass, UnitSystem us = UnitSystem::SI);

/// Density asymptote above the isobaric transition:
///   rho = -sqrt(3 m P / (pi^3 hbar^2)) ln(T/T_c - 1), valid T_c < T < 2 T_c.
double isobaric_density(double temperature, double pressure, double mass,
                        UnitSystem us = UnitSystem::SI);

/// (T_c^3D, T_c^2D) of the slab; T_c^2D solves
/// zeta(3/2)/lambda^3 + 2 alpha/lambda^2 = rho by bisection in lambda.
std::pair<double, double> slab_critical_temperatures(const SlabSpec& slab, double mass,
                                                     UnitSystem us = UnitSystem::SI);

/// F_mm/<N> between the two slab transitions, with R = <N>/(rho ell^3):
///   (2 a b^2/(rho l^2 ln R)) (R^{f rho l^2/(2a)} - 1)
///   + (sqrt(pi) b^2/(rho l^3)) R^{f rho l^2/(4a)}
double slab_fisher_per_particle(const SlabSpec& slab, double mass, double temperature,
                                double mean_n, UnitSystem us = UnitSystem::SI);

/// Cigar-trap analog (1D harmonic gas condensing out of a 3D trap):
///   (beta wy wz/(rho~ hbar)) (e^{hbar beta rho~/(wy wz)} - 1)
///   + Li_2(e^{beta mu}) / (rho~ beta hbar^3)
double cigar_fisher_per_particle(double omega_y, double omega_z, double rho_t,
                                 double beta, double mu, UnitSystem us = UnitSystem::SI);

}  // namespace qgf

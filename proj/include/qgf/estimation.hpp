#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "qgf/lattice_sums.hpp"
#include "qgf/types.hpp"

namespace qgf {

/// Dimensionless rescaling constants for joint diagonalization. Defaults for
/// fixed confinement volume: mu0 = 1/beta0 = 2 pi^2 hbar^2/(m V_d^{2/d})
/// (boxes) or hbar Omega_d (traps).
struct ScaleConstants {
  double beta0 = 1.0;
  double mu0 = 1.0;
};
ScaleConstants default_scale_constants(const GasSpec& spec);

struct Covariance2 {
  double var_beta = 0.0;
  double cov = 0.0;
  double var_mu = 0.0;
};

/// Explicit inverse of the Fisher matrix (the Cramer-Rao lower bound).
/// Throws Error(SingularFisher) if det <= 0 or the condition number exceeds
/// 1e12.
Covariance2 cramer_rao_inverse(const FisherMatrix2& f);

/// Orthogonal diagonalization of the rescaled Fisher matrix
/// (F_bb` = beta0^2 F_bb etc.), with eigenvalues ordered
/// f_lambda1 <= f_lambda2. degenerate is set (and R = identity) when the
/// rescaled matrix is proportional to the identity.
struct JointDiag {
  double r11 = 1.0, r12 = 0.0, r21 = 0.0, r22 = 1.0;
  double f_lambda1 = 0.0, f_lambda2 = 0.0;
  bool degenerate = false;
};
JointDiag joint_diagonalize(const FisherMatrix2& f, const ScaleConstants& sc);

/// Affine coefficients of an observable in the operator basis {1, N, H}.
struct ObservableCoeffs {
  double c_id = 0.0;
  double c_n = 0.0;
  double c_h = 0.0;
};

/// Optimal estimators: O_mu = mu 1 + (N - <N>)/(beta Var N),
/// O_beta = beta 1 + (mu N - H - <mu N - H>)/Var(mu N - H), and the joint
/// pair obtained through the diagonalizing rotation.
struct OptimalObservables {
  ObservableCoeffs o_beta, o_mu, o_lambda1, o_lambda2;
  JointDiag diag;
};
OptimalObservables optimal_observable_coeffs(const FisherMatrix2& f,
                                             const ThermoPoint& pt,
                                             const ScaleConstants& sc,
                                             double mean_n, double mean_h);

struct SampleDraw {
  std::uint64_t n = 0;
  double e = 0.0;
};

/// M independent grand-canonical draws of (N, E) with the generating seed.
struct SampleBatch {
  std::vector<SampleDraw> draws;
  std::uint64_t m = 0;
  std::uint64_t seed = 0;
  std::uint64_t spec_hash = 0;
};

/// Per-mode sampling: Bernoulli occupations for fermions, geometric for
/// bosons, driven by a counter-based generator keyed on
/// (seed, draw index, mode index) - bit-reproducible for any thread count.
/// Worker count is capped by the QGF_THREADS environment variable.
SampleBatch sample_grand_canonical(const GasSpec& spec, const ThermoPoint& pt,
                                   std::uint64_t m, std::uint64_t seed,
                                   const ModeCutoff& cutoff);

// Columnar text format: header "draw_index,n,e", one row per draw.
void write_batch_csv(const SampleBatch& batch, std::ostream& os);
SampleBatch read_batch_csv(std::istream& is);
// Binary framing: magic "QGFB", version u16, m u64, then little-endian pairs
// of u64 count and f64 energy.
void write_batch_binary(const SampleBatch& batch, std::ostream& os);
SampleBatch read_batch_binary(std::istream& is);

struct MlEstimate {
  ThermoPoint estimate;
  FisherMatrix2 fisher;  // minus the likelihood Hessian at the solution
  bool hessian_negative_definite = false;
  int iterations = 0;
};

/// Maximum-likelihood estimation by moment matching: solve
/// <N>(beta, mu) = mean(N_i), <H>(beta, mu) = mean(E_i) over the discrete
/// model defined by the cutoff, by damped Newton with the Fisher matrix as
/// the exact Jacobian; nested 1D bisection fallback.
MlEstimate max_likelihood_estimate(const SampleBatch& batch, const GasSpec& spec,
                                   const ThermoPoint& init, const ModeCutoff& cutoff);

/// Invert the discrete equation of state in mu at fixed beta.
double discrete_solve_mu(const GasSpec& spec, double beta, double target_n,
                         const ModeCutoff& cutoff);

/// Hammersley-Chapman-Robbins-Kshirsagar bound J = g / delta^2 for the
/// zero-temperature (non-differentiable) estimation of mu. This is a
/// finite-difference bound for a different regularity regime; it is not
/// comparable entry-by-entry with the Cramer-Rao inverse.
struct HckrQuery {
  int degeneracy = 1;
  double delta = 1.0;
};
double hckr_bound(const HckrQuery& q);

enum class SpacingScenario {
  EdgeAxisBox,     // Fermi momentum along a quantization axis
  BulkBox,         // generic bulk Fermi momentum (constant eta)
  SphericalBox,    // spherical quantization volume
  IsotropicTrap,
  AnisotropicTrap, // alpha_x = alpha_{y,z}^n frequency hierarchy
};

struct SpacingQuery {
  SpacingScenario scenario = SpacingScenario::IsotropicTrap;
  double eta = 1.0;           // BulkBox constant
  double trap_exponent = 1.0; // n of the anisotropic trap family
  double rho_t = 1.0;         // fixed trap density of that family
};

struct SpacingReport {
  double delta = 0.0;
  double degeneracy = 1.0;
  double j = 0.0;  // g / delta^2
  bool degeneracy_estimated = false;
};

/// Energy spacing at the Fermi level, its degeneracy (exact enumeration up
/// to 1e6 states, asymptotic estimate beyond), and the HCKR sensitivity
/// J = g/delta^2 for the given scenario.
SpacingReport fermi_level_spacing(const GasSpec& spec, double mean_n,
                                  const SpacingQuery& q);

namespace detail {
// Counter-based uniform variate in (0,1); exposed for determinism tests.
double philox_uniform(std::uint64_t seed, std::uint64_t draw, std::uint64_t mode);
}

}  // namespace qgf

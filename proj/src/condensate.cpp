#include "qgf/condensate.hpp"

#include <cmath>

#include "qgf/constants.hpp"
#include "qgf/lattice_sums.hpp"
#include "qgf/polylog.hpp"

namespace qgf {
namespace {

constexpr double kPi = 3.14159265358979323846;

double hbar_of(UnitSystem us) { return us == UnitSystem::SI ? kHbar : 1.0; }
double kb_of(UnitSystem us) { return us == UnitSystem::SI ? kBoltzmann : 1.0; }

void require_condensing_geometry(const GasSpec& spec) {
  spec.validate();
  if (spec.is_fermi()) throw_domain("condensate: Bose statistics required");
  const bool ok = (spec.is_box() && spec.dimension == 3) ||
                  (!spec.is_box() && spec.dimension >= 2);
  if (!ok) {
    throw Error(ErrorCode::NoTransition,
                "no finite-temperature condensation for this confinement/dimension");
  }
}

// Excited-state Fisher entries at mu = 0 (continuum values; the discrete
// dominant form where the continuum integral diverges).
FisherMatrix2 excited_fisher_mu0(const GasSpec& spec, double beta) {
  FisherMatrix2 f;
  if (spec.is_box()) {  // d = 3
    const double lam = spec.thermal_wavelength(beta);
    const double v = spec.volume();
    const double meas = v / std::pow(lam, 3);
    f.f_mm = lattice_constant(3, 256) * beta * beta * std::pow(v, 4.0 / 3.0) /
             (kPi * kPi * lam * lam * lam * lam);
    f.f_bb = (15.0 / 4.0) * zeta(2.5) * meas / (beta * beta);
    f.f_bm = -(3.0 / 2.0) * zeta(1.5) * meas;
  } else {
    const double d = spec.dimension;
    const double bhw = beta * spec.hbar() * spec.mean_frequency();
    const double meas = std::pow(bhw, -d);
    if (spec.dimension == 3) {
      f.f_mm = beta * beta * meas * zeta(2.0);
    } else {  // d = 2: continuum Li_1(1) diverges; discrete dominant form
      const double hw = spec.hbar() * spec.mean_frequency();
      f.f_mm = std::log(1.0 / bhw) / (hw * hw);
    }
    f.f_bb = (d + d * d) * zeta(d + 1.0) * meas / (beta * beta);
    f.f_bm = -d * detail::zeta_ac(d) * meas;
  }
  return f;
}

}  // namespace

double critical_temperature(const GasSpec& spec, double density) {
  require_condensing_geometry(spec);
  if (!spec.isotropic(1e-9)) {
    throw_validation("critical_temperature: isotropic geometry required");
  }
  if (!(density > 0.0)) throw_validation("critical_temperature: density must be positive");
  const double hbar = spec.hbar();
  const double kb = spec.kb();
  if (spec.is_box()) {
    return 2.0 * kPi * hbar * hbar / (kb * spec.mass) *
           std::pow(density / zeta(1.5), 2.0 / 3.0);
  }
  return hbar / kb * std::pow(density / zeta(spec.dimension), 1.0 / spec.dimension);
}

double condensate_fraction(const GasSpec& spec, double temperature, double t_c) {
  require_condensing_geometry(spec);
  if (!(t_c > 0.0)) throw_validation("condensate_fraction: t_c must be positive");
  if (temperature > t_c) throw_domain("condensate_fraction: T > t_c");
  const double p = spec.is_box() ? 1.5 : static_cast<double>(spec.dimension);
  return 1.0 - std::pow(temperature / t_c, p);
}

CondensedState make_condensed_state(const GasSpec& spec, double temperature,
                                    double t_c, double mean_n, bool symmetry_breaking) {
  CondensedState cs;
  cs.temperature = temperature;
  cs.t_c = t_c;
  cs.fraction = condensate_fraction(spec, temperature, t_c);
  const double beta = 1.0 / (spec.kb() * temperature);
  cs.mu_eff = cs.fraction > 0.0 ? -1.0 / (beta * cs.fraction * mean_n) : -0.0;
  cs.symmetry_breaking = symmetry_breaking;
  return cs;
}

double condensed_fbb(const GasSpec& spec, double beta) {
  // Defined for every (confinement, d): where no finite-temperature
  // transition exists these values are still the leading order of the
  // zero-temperature expansion of F_bb.
  spec.validate();
  if (spec.is_fermi()) throw_domain("condensed_fbb: Bose statistics required");
  const double d = spec.dimension;
  if (spec.is_box()) {
    const double lam = spec.thermal_wavelength(beta);
    return (d * d + 2.0 * d) / 4.0 * zeta(d / 2.0 + 1.0) * spec.volume() /
           (beta * beta * std::pow(lam, d));
  }
  const double bhw = beta * spec.hbar() * spec.mean_frequency();
  return (d + d * d) * zeta(d + 1.0) / (beta * beta * std::pow(bhw, d));
}

FisherMatrix2 condensed_fisher(const GasSpec& spec, const CondensedState& cs,
                               double mean_n) {
  require_condensing_geometry(spec);
  if (!(cs.temperature < cs.t_c)) throw_domain("condensed_fisher: requires T < t_c");
  if (!(mean_n > 0.0)) throw_validation("condensed_fisher: mean_n must be positive");
  const double beta = 1.0 / (spec.kb() * cs.temperature);
  const double f = cs.fraction;
  FisherMatrix2 out = excited_fisher_mu0(spec, beta);
  if (!cs.symmetry_breaking) {
    const double n0 = f * mean_n;
    out.f_mm += beta * beta * (n0 + n0 * n0);
    out.f_bb += 1.0 / (beta * beta);
    out.f_bm += -n0;
  }
  return out;
}

double isobaric_transition(double pressure, double mass, UnitSystem us) {
  if (!(pressure > 0.0)) throw_validation("isobaric_transition: pressure must be positive");
  if (!(mass > 0.0)) throw_validation("isobaric_transition: mass must be positive");
  return std::sqrt(12.0 * hbar_of(us) * pressure / (kPi * mass * kb_of(us)));
}

double isobaric_density(double temperature, double pressure, double mass, UnitSystem us) {
  const double t_c = isobaric_transition(pressure, mass, us);
  if (!(temperature > t_c)) {
    throw_domain("isobaric_density: the formula is the T > T_c asymptote");
  }
  const double hbar = hbar_of(us);
  return -std::sqrt(3.0 * mass * pressure / (kPi * kPi * kPi * hbar * hbar)) *
         std::log(temperature / t_c - 1.0);
}

std::pair<double, double> slab_critical_temperatures(const SlabSpec& slab, double mass,
                                                     UnitSystem us) {
  if (!(slab.rho > 0.0)) {
    throw Error(ErrorCode::NoSolution, "slab: density must be positive");
  }
  if (!(slab.alpha > 0.0)) throw_validation("slab: alpha must be positive");
  const double hbar = hbar_of(us);
  const double kb = kb_of(us);
  const double z32 = zeta(1.5);
  const double tc3 =
      2.0 * kPi * hbar * hbar / (kb * mass) * std::pow(slab.rho / z32, 2.0 / 3.0);

  // rho(T) = zeta(3/2)/lambda^3 + 2 alpha/lambda^2 is decreasing in lambda;
  // bisect in lambda starting from the pure-3D root.
  auto rho_of_lambda = [&](double lam) {
    return z32 / (lam * lam * lam) + 2.0 * slab.alpha / (lam * lam);
  };
  double lo = std::pow(z32 / slab.rho, 1.0 / 3.0);  // rho_of(lo) > rho
  double hi = lo;
  while (rho_of_lambda(hi) > slab.rho) hi *= 2.0;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    (rho_of_lambda(mid) > slab.rho ? lo : hi) = mid;
    if ((hi - lo) < 1e-15 * hi) break;
  }
  const double lam2d = 0.5 * (lo + hi);
  const double tc2 = 2.0 * kPi * hbar * hbar / (mass * kb * lam2d * lam2d);
  return {tc3, tc2};
}

double slab_fisher_per_particle(const SlabSpec& slab, double mass, double temperature,
                                double mean_n, UnitSystem us) {
  const auto [tc3, tc2] = slab_critical_temperatures(slab, mass, us);
  if (!(temperature >= tc2 && temperature <= tc3)) {
    throw_domain("slab_fisher_per_particle: T outside [T_c^2D, T_c^3D]");
  }
  if (!(mean_n > 0.0)) throw_validation("slab: mean_n must be positive");
  const double hbar = hbar_of(us);
  const double beta = 1.0 / (kb_of(us) * temperature);
  const double lam = std::sqrt(2.0 * kPi * hbar * hbar * beta / mass);
  const double ell = slab.ell > 0.0 ? slab.ell : lam;
  const double f = 1.0 - std::pow(temperature / tc3, 1.5);
  const double r = mean_n / (slab.rho * ell * ell * ell);
  const double b2 = beta * beta;
  const double p = f * slab.rho * lam * lam / (2.0 * slab.alpha);
  const double term2d = 2.0 * slab.alpha * b2 / (slab.rho * lam * lam * std::log(r)) *
                        (std::pow(r, p) - 1.0);
  const double term3d =
      std::sqrt(kPi) * b2 / (slab.rho * lam * lam * lam) * std::pow(r, p / 2.0);
  return term2d + term3d;
}

double cigar_fisher_per_particle(double omega_y, double omega_z, double rho_t,
                                 double beta, double mu, UnitSystem us) {
  if (!(omega_y > 0.0) || !(omega_z > 0.0)) {
    throw_validation("cigar: transverse frequencies must be positive");
  }
  if (!(mu < 0.0)) throw_domain("cigar: requires mu < 0");
  const double hbar = hbar_of(us);
  const double arg = hbar * beta * rho_t / (omega_y * omega_z);
  const double term1d =
      beta * omega_y * omega_z / (rho_t * hbar) * std::expm1(arg);
  const double li2 = polylog(2.0, std::exp(beta * mu)).value;
  const double term3d = li2 / (rho_t * beta * hbar * hbar * hbar);
  return term1d + term3d;
}

}  // namespace qgf

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "oracle.hpp"
#include "qgf/constants.hpp"
#include "qgf/gas_model.hpp"
#include "qgf/interactions.hpp"

using namespace qgf;
using qgf_test::TestRng;

namespace {
constexpr double kPi = 3.14159265358979323846;

GasSpec make_spec(Statistics st, Confinement conf, int d, double geom = 1.0) {
  GasSpec s;
  s.statistics = st;
  s.confinement = conf;
  s.dimension = d;
  s.geometry.assign(d, geom);
  s.mass = 1.0;
  s.unit_system = UnitSystem::Reduced;
  return s;
}
double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }
}  // namespace

TEST_CASE("harmonic remap") {
  GasSpec trap = make_spec(Statistics::Bose, Confinement::HarmonicTrap, 3, 1.0);
  GasSpec same = harmonic_remap(trap, 0.0);
  CHECK(same.geometry == trap.geometry);

  GasSpec shifted = harmonic_remap(trap, 0.3, 4);
  for (double w : shifted.geometry) {
    CHECK(rel(w, std::sqrt(1.0 + 2.0 * 0.3 * 4.0)) < 1e-14);
  }
  // Downstream Fisher computations keep their invariants under the remap.
  const FisherMatrix2 f = fisher_continuum(shifted, ThermoPoint{1.0, -0.4});
  CHECK(f.positive_semidefinite(1e-10));
  // The mu bound keeps its linear-in-N form with the remapped Omega.
  GasSpec box = make_spec(Statistics::Bose, Confinement::PeriodicBox, 3, 1.0);
  CHECK_THROWS_AS(harmonic_remap(box, 0.1), Error);
}

TEST_CASE("mean-field alpha") {
  MeanFieldSpec mf;
  mf.base = make_spec(Statistics::Bose, Confinement::PeriodicBox, 3, 4.0);
  ThermoPoint pt{1.0, -0.8};
  mf.lambda = 0.0;
  CHECK(meanfield_alpha(mf, pt) == pt.mu);

  mf.lambda = 0.7;
  const double rho_c = meanfield_critical_density(mf.base, pt.beta);
  // Exactly at the threshold the condensate branch alpha = 0 applies.
  CHECK(meanfield_alpha(mf, ThermoPoint{1.0, mf.lambda * rho_c}) == 0.0);
  CHECK(meanfield_alpha(mf, ThermoPoint{1.0, mf.lambda * rho_c + 0.1}) == 0.0);

  // Below it, the root satisfies the defining equation to 1e-10.
  TestRng rng(0xA1fAull);
  for (int i = 0; i < 40; ++i) {
    const double beta = rng.uniform(0.4, 2.0);
    const double lam = rng.uniform(0.01, 2.0);
    const double mu = rng.uniform(-3.0, 0.9 * lam * meanfield_critical_density(mf.base, beta));
    mf.lambda = lam;
    const double alpha = meanfield_alpha(mf, ThermoPoint{beta, mu});
    CHECK(alpha < 0.0);
    const double resid =
        alpha + lam * meanfield_ideal_density(mf.base, beta, alpha) - mu;
    CHECK(std::abs(resid) < 1e-10 * std::max({std::abs(mu), std::abs(alpha), 1.0}));
  }

  // Trap variant of the critical density.
  MeanFieldSpec trap;
  trap.base = make_spec(Statistics::Bose, Confinement::HarmonicTrap, 3, 1.0);
  trap.lambda = 0.5;
  CHECK(meanfield_critical_density(trap.base, 1.0) == doctest::Approx(zeta(3.0)));
  CHECK(meanfield_alpha(trap, ThermoPoint{1.0, -0.2}) < 0.0);
  // d = 1 box: no finite critical density, the root branch always applies.
  MeanFieldSpec low;
  low.base = make_spec(Statistics::Bose, Confinement::PeriodicBox, 1, 4.0);
  low.lambda = 0.5;
  CHECK(meanfield_alpha(low, ThermoPoint{1.0, 5.0}) < 0.0);
}

TEST_CASE("mean-field fisher rational form") {
  CHECK(meanfield_fisher_mm(3.7, 0.0, 2.0, 1.5) == 3.7);
  // Extensivity ceiling.
  const double v = 4.0, beta = 1.3, lam = 0.2;
  CHECK(rel(meanfield_fisher_mm(1e9 * v * beta / lam, lam, v, beta), v * beta / lam) < 1e-6);
  // lambda = V beta / f0 halves the ideal value.
  const double f0 = 7.0;
  CHECK(rel(meanfield_fisher_mm(f0, v * beta / f0, v, beta), 0.5 * f0) < 1e-13);

  // Monotone decreasing in lambda, below both ceilings, concave in f0.
  TestRng rng(0x3A11ull);
  for (int i = 0; i < 60; ++i) {
    const double f0r = rng.uniform(0.1, 50.0);
    const double l1 = rng.uniform(0.01, 5.0);
    const double l2 = l1 + rng.uniform(0.01, 5.0);
    const double a = meanfield_fisher_mm(f0r, l1, v, beta);
    const double b = meanfield_fisher_mm(f0r, l2, v, beta);
    CHECK(b < a);
    CHECK(a <= std::min(f0r, v * beta / l1) * (1.0 + 1e-14));
    const double fa = rng.uniform(0.1, 20.0), fb = fa + rng.uniform(0.1, 20.0);
    const double mid = meanfield_fisher_mm(0.5 * (fa + fb), l1, v, beta);
    const double chord = 0.5 * (meanfield_fisher_mm(fa, l1, v, beta) +
                                meanfield_fisher_mm(fb, l1, v, beta));
    CHECK(mid >= chord * (1.0 - 1e-14));
  }
}

TEST_CASE("contact pair correlation") {
  ContactSpec cs;
  cs.c = 0.0;
  cs.rho = 5.0;
  cs.beta = 1.0;
  cs.l_x = 20.0;
  CHECK(rel(contact_g2(0.0, cs), 2.0) < 1e-14);  // ideal-boson bunching
  CHECK(std::abs(contact_g2(1e4, cs) - 1.0) < 1e-300);
  // Repulsion suppresses the peak.
  ContactSpec rep = cs;
  rep.c = 0.05;
  CHECK(contact_g2(0.0, rep) < 2.0);
}

TEST_CASE("variance from g2") {
  // Poisson for a flat correlator.
  CHECK(rel(variance_from_g2([](double) { return 1.0; }, 3.0, 10.0, 30.0), 30.0) < 1e-12);

  // Quadrature agrees with the closed-form ideal variance.
  ContactSpec cs;
  cs.c = 0.0;
  cs.beta = 0.8;
  cs.l_x = 12.0;
  const double n = 60.0;
  cs.rho = n / cs.l_x;
  const double var_quad = variance_from_g2([&](double r) { return contact_g2(r, cs); },
                                           cs.rho, cs.l_x, n);
  const ContactFisherResult closed = contact_fisher_mm(cs, n);
  CHECK(rel(cs.beta * cs.beta * var_quad, closed.value) < 1e-6);

  // Anti-bunching toy correlator deflates the variance (non-degenerate
  // density so the Pauli-hole deficit stays below the Poisson part).
  ContactSpec dilute = cs;
  const double n_dilute = 6.0;
  dilute.rho = n_dilute / dilute.l_x;
  const double tau = dilute.tau_degeneracy();
  const double var_fermi = variance_from_g2(
      [&](double r) { return 1.0 - std::exp(-dilute.rho * tau * r); }, dilute.rho,
      dilute.l_x, n_dilute);
  CHECK(var_fermi < n_dilute);
  CHECK(var_fermi > 0.0);

  // Unphysical correlator that drives the variance negative is rejected.
  CHECK_THROWS_AS(variance_from_g2([](double) { return 0.0; }, 50.0, 10.0, 5.0), Error);
}

TEST_CASE("contact fisher consistency for repulsive couplings") {
  // The closed form equals beta^2 x the quadrature variance for any c
  // (the second line of the closed form is the exact integral of the O(c)
  // part of g2).
  ContactSpec cs;
  cs.beta = 1.2;
  cs.l_x = 9.0;
  const double n = 80.0;
  cs.rho = n / cs.l_x;
  for (double c : {0.0, 1e-6, 1e-5}) {
    cs.c = c;
    const double var_quad = variance_from_g2([&](double r) { return contact_g2(r, cs); },
                                             cs.rho, cs.l_x, n);
    const ContactFisherResult closed = contact_fisher_mm(cs, n);
    CAPTURE(c);
    CHECK(rel(cs.beta * cs.beta * var_quad, closed.value) < 1e-6);
    if (c > 0.0) CHECK(closed.correction < 0.0);
  }
}

TEST_CASE("ideal 1d dominant term at fixed size") {
  // c = 0 in the degenerate window lambda^2 rho^2 >> 2 pi and
  // N >> lambda^2 rho^2/(4 pi): F ~ (beta^2 lambda^2 / 2 pi L^2) N^3.
  ContactSpec cs;
  cs.c = 0.0;
  cs.beta = 1.0;
  const double n = 2e4;
  const double lam = cs.thermal_wavelength();
  cs.rho = 30.0 / lam;  // lambda rho = 30
  cs.l_x = n / cs.rho;
  const double lam2 = lam * lam;
  CHECK(n > 10.0 * lam2 * cs.rho * cs.rho / (4.0 * kPi));
  CHECK(lam2 * cs.rho * cs.rho > 100.0 * 2.0 * kPi);
  const double dominant = cs.beta * cs.beta * lam2 / (2.0 * kPi * cs.l_x * cs.l_x) * n * n * n;
  CHECK(rel(contact_fisher_mm(cs, n).value, dominant) < 0.02);
}

TEST_CASE("perturbative ordering inequality") {
  // At c = 0.1 * 8 pi/(beta lambda^2 rho^3) the correction is a tenth of the
  // reference scale 4 beta^2 lambda^2 rho^2 N / pi used by the comparison.
  TestRng rng(0x0c0ffeeull);
  for (int i = 0; i < 40; ++i) {
    ContactSpec cs;
    cs.beta = rng.uniform(0.5, 2.0);
    cs.l_x = rng.uniform(2.0, 10.0);
    const double n = rng.uniform(500.0, 5000.0);
    cs.rho = n / cs.l_x;
    const double lam2 = std::pow(cs.thermal_wavelength(), 2);
    cs.c = 0.1 * 8.0 * kPi / (cs.beta * lam2 * cs.rho * cs.rho * cs.rho);
    const ContactFisherResult r = contact_fisher_mm(cs, n);
    const double reference = 4.0 * cs.beta * cs.beta * lam2 * cs.rho * cs.rho * n / kPi;
    CHECK(std::abs(r.correction) < 0.15 * reference);
  }
}

TEST_CASE("validity and breakdown flags") {
  ContactSpec cs;
  cs.beta = 1.0;
  cs.l_x = 4.5;
  const double n = 2000.0;
  cs.rho = n / cs.l_x;
  cs.c = 0.0;
  CHECK(contact_fisher_mm(cs, n).gamma_ok);
  CHECK_FALSE(contact_fisher_mm(cs, n).breakdown);
  // A huge coupling trips both the regime flag and the breakdown marker.
  const double lam2 = std::pow(cs.thermal_wavelength(), 2);
  cs.c = 100.0 * 8.0 * kPi / (cs.beta * lam2 * cs.rho * cs.rho * cs.rho);
  const ContactFisherResult r = contact_fisher_mm(cs, n);
  CHECK_FALSE(r.gamma_ok);
  CHECK(r.breakdown);
}

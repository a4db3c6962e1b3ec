#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "oracle.hpp"
#include "qgf/gas_model.hpp"

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

GasSpec random_spec(TestRng& rng, bool allow_fermi = true) {
  const bool fermi = allow_fermi && rng.uniform() < 0.5;
  const bool box = rng.uniform() < 0.5;
  const int d = 1 + static_cast<int>(rng.uniform() * 3.0);
  GasSpec s = make_spec(fermi ? Statistics::Fermi : Statistics::Bose,
                        box ? Confinement::PeriodicBox : Confinement::HarmonicTrap,
                        std::min(d, 3));
  for (double& g : s.geometry) g = rng.uniform(0.5, 8.0);
  s.mass = rng.uniform(0.5, 4.0);
  return s;
}

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }
}  // namespace

TEST_CASE("2D bose box closed form") {
  GasSpec s = make_spec(Statistics::Bose, Confinement::PeriodicBox, 2, 3.0);
  ThermoPoint pt{1.3, -0.4};
  const double lam2 = std::pow(s.thermal_wavelength(pt.beta), 2);
  const double want = -(9.0 / lam2) * std::log(1.0 - std::exp(pt.beta * pt.mu));
  CHECK(rel(mean_particle_number(s, pt), want) < 1e-12);

  // F_mm as an explicit function of <N>.
  const double n = mean_particle_number(s, pt);
  const double want_fmm = pt.beta * pt.beta * 9.0 / lam2 * (std::exp(lam2 * n / 9.0) - 1.0);
  CHECK(rel(fisher_continuum(s, pt).f_mm, want_fmm) < 1e-11);
}

TEST_CASE("classical limits of the moments") {
  TestRng rng(0xC1A551CA1ull);
  for (int i = 0; i < 30; ++i) {
    GasSpec s = random_spec(rng);
    ThermoPoint pt{rng.uniform(0.5, 2.0), 0.0};
    pt.mu = -20.0 / pt.beta;  // fugacity ~ 2e-9
    const double fug = std::exp(pt.beta * pt.mu);
    const double meas = s.is_box()
        ? s.volume() / std::pow(s.thermal_wavelength(pt.beta), s.dimension)
        : std::pow(pt.beta * s.hbar() * s.mean_frequency(), -s.dimension);
    const double n = mean_particle_number(s, pt);
    CHECK(rel(n, meas * fug) < 2.0 * fug);
    const double h = mean_energy(s, pt);
    const double want_h = s.is_box() ? s.dimension / (2.0 * pt.beta) * n
                                     : s.dimension / pt.beta * n;
    CHECK(rel(h, want_h) < 2.0 * fug);
  }
}

TEST_CASE("fermi trap d=1 at mu = 0") {
  GasSpec s = make_spec(Statistics::Fermi, Confinement::HarmonicTrap, 1, 2.0);
  ThermoPoint pt{1.5, 0.0};
  CHECK(rel(mean_particle_number(s, pt), std::log(2.0) / (1.5 * 2.0)) < 1e-13);
}

TEST_CASE("empty gas limit") {
  GasSpec s = make_spec(Statistics::Bose, Confinement::PeriodicBox, 3, 2.0);
  CHECK(mean_energy(s, ThermoPoint{1.0, -600.0}) < 1e-250);
}

TEST_CASE("bose domain error at mu >= 0") {
  GasSpec s = make_spec(Statistics::Bose, Confinement::PeriodicBox, 3, 2.0);
  CHECK_THROWS_AS(mean_particle_number(s, ThermoPoint{1.0, 0.0}), Error);
  CHECK_THROWS_AS(fisher_continuum(s, ThermoPoint{1.0, 0.1}), Error);
}

TEST_CASE("classical fisher closed forms") {
  GasSpec box3 = make_spec(Statistics::Bose, Confinement::PeriodicBox, 3, 2.0);
  ThermoPoint pt{0.7, -3.0};
  auto [obs, f] = classical_fisher(box3, pt);
  const double b = pt.beta, mu = pt.mu;
  CHECK(rel(f.f_bb, obs.mean_n * (mu * mu - 3.0 * mu / b + 15.0 / (4.0 * b * b))) < 1e-13);
  CHECK(rel(f.f_mm, b * b * obs.mean_n) < 1e-13);

  GasSpec trap3 = make_spec(Statistics::Bose, Confinement::HarmonicTrap, 3, 0.8);
  auto [obs_t, f_t] = classical_fisher(trap3, pt);
  CHECK(rel(f_t.f_bm, b * obs_t.mean_n * (mu - 3.0 / b)) < 1e-13);

  // mu at the single-particle mean energy: centered covariance vanishes.
  ThermoPoint crossing{0.7, 3.0 / 0.7};
  auto f_zero = classical_fisher(trap3, crossing).second;
  CHECK(f_zero.f_bm == doctest::Approx(0.0).epsilon(1e-14));
}

TEST_CASE("classical recovery of the full fisher matrix") {
  TestRng rng(0xFE11ACull);
  for (int i = 0; i < 100; ++i) {
    GasSpec s = random_spec(rng);
    const double beta = rng.uniform(0.2, 3.0);
    const double bm = -rng.uniform(14.0, 20.0);  // fugacity <= ~8e-7
    ThermoPoint pt{beta, bm / beta};
    const double fug = std::exp(bm);
    const FisherMatrix2 q = fisher_continuum(s, pt);
    const FisherMatrix2 c = classical_fisher(s, pt).second;
    CHECK(rel(q.f_mm, c.f_mm) < 2.0 * fug);
    CHECK(rel(q.f_bb, c.f_bb) < 2.0 * fug);
    CHECK(rel(q.f_bm, c.f_bm) < 2.0 * fug);
  }
}

TEST_CASE("low temperature fermion forms") {
  GasSpec box2 = make_spec(Statistics::Fermi, Confinement::PeriodicBox, 2, 3.0);
  CHECK(fisher_lowT_fermi(box2, ThermoPoint{1.0, 30.0}).f_bm == 0.0);
  GasSpec trap1 = make_spec(Statistics::Fermi, Confinement::HarmonicTrap, 1, 1.0);
  CHECK(fisher_lowT_fermi(trap1, ThermoPoint{1.0, 30.0}).f_bm == 0.0);

  // At beta*mu = 50 the two-term forms match the full polylog entries to 1%.
  for (bool box : {true, false}) {
    for (int d = 1; d <= 3; ++d) {
      GasSpec s = make_spec(Statistics::Fermi,
                            box ? Confinement::PeriodicBox : Confinement::HarmonicTrap,
                            d, 1.5);
      ThermoPoint pt{2.0, 25.0};  // beta mu = 50
      const FisherMatrix2 lo = fisher_lowT_fermi(s, pt);
      const FisherMatrix2 full = fisher_continuum(s, pt);
      const double scale = std::abs(full.f_bb) * std::abs(full.f_mm);
      CHECK(rel(lo.f_mm, full.f_mm) < 0.01);
      CHECK(rel(lo.f_bb, full.f_bb) < 0.01);
      CHECK(std::abs(lo.f_bm - full.f_bm) < 0.01 * std::sqrt(scale));
    }
  }

  CHECK_THROWS_AS(fisher_lowT_fermi(box2, ThermoPoint{1.0, 5.0}), Error);
  GasSpec bose = make_spec(Statistics::Bose, Confinement::PeriodicBox, 3, 1.0);
  CHECK_THROWS_AS(fisher_lowT_fermi(bose, ThermoPoint{1.0, 30.0}), Error);
}

TEST_CASE("finite-difference consistency of the fisher entries") {
  TestRng rng(0xF1D0ull);
  for (int i = 0; i < 25; ++i) {
    GasSpec s = random_spec(rng);
    const double beta = rng.uniform(0.4, 2.5);
    const double bm = s.is_fermi() ? rng.uniform(-4.0, 4.0) : -rng.uniform(0.05, 4.0);
    ThermoPoint pt{beta, bm / beta};
    const FisherMatrix2 f = fisher_continuum(s, pt);
    const double hm = 1e-5 * std::max(std::abs(pt.mu), 0.1 / beta);
    const double hb = 1e-5 * beta;

    auto n_at = [&](double b, double m) { return mean_particle_number(s, {b, m}); };
    auto w_at = [&](double b, double m) {
      return m * mean_particle_number(s, {b, m}) - mean_energy(s, {b, m});
    };
    const double dn_dmu = (n_at(beta, pt.mu + hm) - n_at(beta, pt.mu - hm)) / (2 * hm);
    CHECK(rel(dn_dmu / beta, f.f_mm / (beta * beta)) < 1e-5);
    const double dn_db = (n_at(beta + hb, pt.mu) - n_at(beta - hb, pt.mu)) / (2 * hb);
    CHECK(std::abs(dn_db - f.f_bm / beta) <=
          1e-5 * std::max(std::abs(f.f_bm / beta), 1e-4 * dn_dmu / beta));
    const double dw_db = (w_at(beta + hb, pt.mu) - w_at(beta - hb, pt.mu)) / (2 * hb);
    CHECK(rel(dw_db, f.f_bb) < 1e-5);
  }
}

TEST_CASE("fisher matrices are positive semidefinite") {
  TestRng rng(0x9511D3ull);
  for (int i = 0; i < 200; ++i) {
    GasSpec s = random_spec(rng);
    const double beta = rng.uniform(0.2, 4.0);
    const double bm = s.is_fermi() ? rng.uniform(-20.0, 40.0) : -rng.uniform(1e-4, 20.0);
    const FisherMatrix2 f = fisher_continuum(s, {beta, bm / beta});
    CAPTURE(i);
    CHECK(f.positive_semidefinite(1e-10));
  }
}

TEST_CASE("linear scaling in the mode measure") {
  GasSpec s = make_spec(Statistics::Bose, Confinement::PeriodicBox, 3, 2.0);
  ThermoPoint pt{1.1, -0.7};
  FisherMatrix2 f1 = fisher_continuum(s, pt);
  s.geometry[0] *= 2.0;  // doubles V_d exactly
  FisherMatrix2 f2 = fisher_continuum(s, pt);
  CHECK(rel(f2.f_mm, 2.0 * f1.f_mm) < 1e-14);
  CHECK(rel(f2.f_bb, 2.0 * f1.f_bb) < 1e-14);
  CHECK(rel(f2.f_bm, 2.0 * f1.f_bm) < 1e-14);

  GasSpec t = make_spec(Statistics::Fermi, Confinement::HarmonicTrap, 2, 1.0);
  FisherMatrix2 g1 = fisher_continuum(t, pt);
  for (double& w : t.geometry) w /= std::sqrt(2.0);  // halves Omega^d
  FisherMatrix2 g2 = fisher_continuum(t, pt);
  CHECK(rel(g2.f_mm, 2.0 * g1.f_mm) < 1e-12);
}

TEST_CASE("bunching raises and antibunching lowers the number fisher") {
  TestRng rng(0xB0B0ull);
  for (int i = 0; i < 50; ++i) {
    GasSpec s = random_spec(rng, false);
    GasSpec fermi = s;
    fermi.statistics = Statistics::Fermi;
    const double beta = rng.uniform(0.3, 2.0);
    ThermoPoint pt{beta, -rng.uniform(0.1, 8.0) / beta};
    const double classical = classical_fisher(s, pt).second.f_mm;
    CHECK(fisher_continuum(s, pt).f_mm >= classical);
    CHECK(fisher_continuum(fermi, pt).f_mm <= classical);
  }
}

TEST_CASE("compressibility") {
  GasSpec s = make_spec(Statistics::Bose, Confinement::PeriodicBox, 3, 2.0);
  ThermoPoint classical{1.0, -18.0};
  const double n = mean_particle_number(s, classical);
  CHECK(rel(compressibility(s, classical), classical.beta / (n / s.volume())) < 1e-5);

  // Fermi T -> 0: kappa -> d/(2 mu rho).
  GasSpec f = make_spec(Statistics::Fermi, Confinement::PeriodicBox, 3, 2.0);
  ThermoPoint cold{40.0, 1.5};
  const double rho = mean_particle_number(f, cold) / f.volume();
  CHECK(rel(compressibility(f, cold), 3.0 / (2.0 * cold.mu * rho)) < 5e-3);
}

TEST_CASE("si units round trip against reduced units") {
  // lambda_T and the polylog arguments are dimensionless combinations, so a
  // consistent SI spec must give the same <N> as its reduced-unit image.
  GasSpec si = make_spec(Statistics::Bose, Confinement::PeriodicBox, 3, 20e-6);
  si.unit_system = UnitSystem::SI;
  si.mass = species_mass_kg("Rb87");
  const double t_kelvin = 100e-9;
  const double beta = 1.0 / (kBoltzmann * t_kelvin);
  ThermoPoint pt{beta, -0.3 / beta};
  const double n_si = mean_particle_number(si, pt);
  // Reduced image: lengths in units of lambda_T.
  GasSpec red = make_spec(Statistics::Bose, Confinement::PeriodicBox, 3, 1.0);
  const double lam = si.thermal_wavelength(beta);
  for (double& L : red.geometry) L = 20e-6 / lam;
  red.mass = 1.0;
  const double beta_red = 1.0 / (2.0 * kPi);          // lambda = 1 in reduced units
  ThermoPoint pt_red{beta_red, -0.3 / beta_red};
  CHECK(rel(mean_particle_number(red, pt_red), n_si) < 1e-12);
}

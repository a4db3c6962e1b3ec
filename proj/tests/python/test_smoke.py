import math

import pytest

import qgf


def test_special_functions():
    assert qgf.zeta(2.0) == pytest.approx(math.pi**2 / 6, rel=1e-13)
    assert qgf.polylog(1.0, 0.5).value == pytest.approx(math.log(2.0), rel=1e-14)
    assert qgf.polylog(1.5, -math.exp(15.0)).value == pytest.approx(
        -43.942522487722176, rel=1e-12
    )
    with pytest.raises(qgf.QgfError):
        qgf.polylog(0.5, 1.0)


def test_equation_of_state_round_trip():
    spec = qgf.GasSpec(
        qgf.Statistics.Bose, qgf.Confinement.PeriodicBox, 3, [4.0, 4.0, 4.0]
    )
    pt = qgf.ThermoPoint(beta=1.0, mu=-2.0)
    n = qgf.mean_particle_number(spec, pt)
    sol = qgf.solve_mu(spec, 1.0, n)
    assert sol.mu == pytest.approx(-2.0, rel=1e-9)
    f = qgf.fisher_continuum(spec, pt)
    assert f.positive_semidefinite()
    rep = qgf.classify_regime(spec, pt, n)
    assert rep.regime == qgf.Regime.QuantumContinuum


def test_condensed_reference_point():
    two_pi = 2.0 * math.pi
    trap = qgf.GasSpec(
        qgf.Statistics.Bose,
        qgf.Confinement.HarmonicTrap,
        3,
        [two_pi * 0.65, two_pi * 1.2, two_pi * 1.81],
        mass=qgf.species_mass_kg("Na23"),
        units=qgf.UnitSystem.SI,
    )
    beta = 1.0 / (qgf.K_BOLTZMANN * 450e-12)
    rel_err = 1.0 / (beta * math.sqrt(qgf.condensed_fbb(trap, beta)))
    assert rel_err == pytest.approx(0.011, abs=1e-3)


def test_sampler_determinism_and_io(tmp_path):
    spec = qgf.GasSpec(
        qgf.Statistics.Bose, qgf.Confinement.PeriodicBox, 1, [20.0 * math.pi]
    )
    pt = qgf.ThermoPoint(beta=1.0, mu=-0.5)
    cut = qgf.ModeCutoff(max_index=100)
    a = qgf.sample_grand_canonical(spec, pt, 400, 11, cut)
    b = qgf.sample_grand_canonical(spec, pt, 400, 11, cut)
    assert [d.n for d in a.draws] == [d.n for d in b.draws]

    path = tmp_path / "batch.qgfb"
    qgf.write_batch(a, str(path), binary=True)
    back = qgf.read_batch(str(path), binary=True)
    assert [d.n for d in back.draws] == [d.n for d in a.draws]
    assert path.read_bytes()[:4] == b"QGFB"


def test_ml_estimation():
    spec = qgf.GasSpec(
        qgf.Statistics.Bose, qgf.Confinement.PeriodicBox, 1, [20.0 * math.pi]
    )
    truth = qgf.ThermoPoint(beta=1.0, mu=-0.5)
    cut = qgf.ModeCutoff(max_index=100)
    batch = qgf.sample_grand_canonical(spec, truth, 20000, 5, cut)
    est = qgf.max_likelihood_estimate(batch, spec, qgf.ThermoPoint(0.8, -1.0), cut)
    assert est.hessian_negative_definite
    assert est.estimate.beta == pytest.approx(1.0, abs=0.05)
    assert est.estimate.mu == pytest.approx(-0.5, abs=0.05)


def test_lattice_and_condensate():
    assert 16.4 < qgf.lattice_constant(3, 256) < 16.6
    slab = qgf.SlabSpec(rho=13e18, alpha=1e7)
    tc3, tc2 = qgf.slab_critical_temperatures(slab, qgf.species_mass_kg("Rb87"))
    assert tc3 == pytest.approx(100e-9, rel=0.05)
    assert tc2 == pytest.approx(20e-9, rel=0.05)

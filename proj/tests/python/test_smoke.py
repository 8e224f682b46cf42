import math

import pytest

try:
    import eulerfan as ef
except ImportError:
    import _core as ef  # build-tree fallback


def test_f0_values():
    assert ef.f0(math.exp(-1.0)) == pytest.approx(1.0, abs=1e-14)
    assert ef.f0(math.exp(-math.e)) == pytest.approx(0.5, abs=1e-14)
    with pytest.raises(Exception):
        ef.f0(1.5)


def test_state_wave_round_trip():
    rho, m1, m2 = ef.state_from_wave(ef.reference["nu_minus"] * 0 + math.sqrt(2), ef.reference["w1"])
    assert rho == pytest.approx(1.0, abs=1e-13)
    assert m2 == pytest.approx(math.sqrt(8.0), abs=1e-13)
    w = ef.wave_from_state(rho, m1, m2)
    assert w["lambda1"] == pytest.approx(math.sqrt(2.0), abs=1e-13)
    assert w["w1"] == pytest.approx(ef.reference["w1"], abs=1e-13)


def test_verify_riemann_passes():
    rep = ef.verify_riemann()
    assert rep["all_pass"]
    names = {c["name"] for c in rep["checks"]}
    assert "rh_residual_right_momentum" in names


def test_interface_solution_matches_reference():
    sol = ef.solve_interface(1.0, math.sqrt(8.0), 4.0, 0.0)
    assert sol.nu_minus == pytest.approx(ef.reference["nu_minus"], abs=1e-13)
    assert sol.beta == pytest.approx(ef.reference["beta"], abs=1e-13)
    r = ef.rh_residuals(1.0, math.sqrt(8.0), 4.0, 0.0, sol)
    assert max(abs(v) for v in r) < 1e-12


def test_small_picard_run_contracts():
    spec = ef.TraceSpec(0.1, 0.03, 0.075)
    eps = ef.picard_solve(spec, grid_size=256, tol=1e-8)
    assert eps.measured_q < 1.0
    assert abs(eps.values[0]) < 1e-2
    assert max(abs(v) for v in eps.values) < 13.0 / 6.0
    fan = ef.fan_curves(eps, spec)
    assert fan.sandwich_ok
    datum = ef.build_initial_datum(fan, 0.3)
    dev = ef.round_trip_check(datum, 1e-4, spec.delta, samples=40)
    assert max(dev) < 1e-6


def test_burgers_evaluator():
    prof = ef.compression_datum(math.sqrt(2.0), -2.0 * math.sqrt(2.0), 1.0, 0.3, 0.1)
    sol = ef.CharSolution(prof, 1.0)
    assert sol.value(0.5, 0.1) == pytest.approx(-0.2, abs=1e-12)
    assert sol.foot(0.0, 2.0) == 2.0

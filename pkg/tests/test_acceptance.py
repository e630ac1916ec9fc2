"""Acceptance criteria A1-A9.

Each test carries a ``criterion`` marker; ``conftest.py`` prints one
PASS/FAIL line per criterion at the end of the run, with the measured
numbers attached. Run just this gate with::

    pytest tests/test_acceptance.py
"""

import math
import time
import warnings

import numpy as np
import pytest
from click.testing import CliRunner

from qlink.cli import main
from qlink.design import DesignConstraint, evaluate, max_length_under_cooling, run_sweep, SweepSpec
from qlink.errors import EtaOutOfRange, StrongCouplingWarning
from qlink.langevin_mc import oracle_grid
from qlink.link import SignalSpec, propagate, thermal_occupation
from qlink.receiver import AntennaSpec, coupling_eta, detect, lc_coupling_coefficient
from qlink.scenarios import (
    DETECTED_NOISE,
    DETECTED_SIGNAL,
    INPUT_PHOTONS,
    aluminium_scenario,
    implied_operating_point,
    reference_scenario,
)
from qlink.waveguide import ConductorModel, WaveguideSpec

A3_CONSTRAINT = DesignConstraint(DETECTED_NOISE, DETECTED_SIGNAL, INPUT_PHOTONS)
C = 299792458.0


def random_setup(rng):
    """A valid waveguide, loop and frequency drawn from broad ranges."""
    width = rng.uniform(0.01, 0.3)
    eps_r = rng.uniform(1.0, 6.0)
    wg = WaveguideSpec(
        width=width,
        height=width * rng.uniform(0.1, 1.0),
        length=10 ** rng.uniform(-1, 3),
        wall=ConductorModel("random", 10 ** rng.uniform(5, 9)),
        eps_r=eps_r,
        mu_r=rng.uniform(1.0, 3.0),
        temperature=rng.uniform(1.0, 500.0),
    )
    omega = rng.uniform(1.01, 6.0) * math.pi * C / (width * math.sqrt(eps_r))
    ant = AntennaSpec(
        width=wg.width * rng.uniform(0.0, 1.0),
        height=wg.height * rng.uniform(0.0, 1.0),
        capacitance=10 ** rng.uniform(-16, -11),
    )
    return wg, ant, omega


@pytest.mark.criterion("A1", "thermal occupation at 10 GHz")
def test_a1_thermal_occupation(record_property):
    n_room = thermal_occupation(10e9, 293.15)
    n_cold = thermal_occupation(10e9, 78.0)
    reps = 10_000
    start = time.perf_counter()
    for _ in range(reps):
        thermal_occupation(10e9, 293.15)
    per_call = (time.perf_counter() - start) / reps
    record_property("detail", f"n_th(293.15 K)={n_room:.4f}, n_th(78 K)={n_cold:.4f}, "
                              f"{per_call * 1e6:.2f} us/call")
    assert n_room == pytest.approx(610.3, abs=0.5)
    assert n_cold == pytest.approx(162.0, abs=0.5)
    assert per_call < 1e-3


@pytest.mark.slow
@pytest.mark.criterion("A2", "Monte Carlo oracle matches the closed form on the 4x3x3 grid")
def test_a2_oracle_equivalence(record_property):
    start = time.perf_counter()
    checks = oracle_grid(n_trajectories=10_000, seed=42)
    elapsed = time.perf_counter() - start
    worst = max(checks, key=lambda c: c.worst_z)
    record_property("detail", f"{len(checks)} points, worst z={worst.worst_z:.3f} at "
                              f"(Gt={worst.gamma_t}, n_th={worst.n_th}, M0={worst.initial_photons}), "
                              f"{elapsed:.1f} s")
    assert len(checks) == 36
    assert all(c.euler.n_effective == c.exact.n_effective == 10_000 for c in checks)
    assert all(c.z_euler <= 3 and c.z_exact <= 3 and c.z_mutual <= 3 for c in checks)
    assert elapsed < 60


@pytest.mark.criterion("A3", "reference photon counts are consistent with the transport and coupling laws")
def test_a3_reference_consistency(record_property):
    point = implied_operating_point()
    n_th = thermal_occupation(10e9, 293.15)
    # forward chain with the implied pair, with the rounded pair, and through a concrete scenario
    chains = {
        "implied": (point.transmission, point.eta),
        "rounded": (0.914, 1.2e-4),
    }
    results = {}
    for name, (x, eta) in chains.items():
        results[name] = (eta * INPUT_PHOTONS * x, eta * n_th * (1 - x))
    budget = evaluate(reference_scenario())
    results["scenario"] = (budget.Ns, budget.Nn)
    record_property("detail", f"exp(-Gt)={point.transmission:.4f}, eta={point.eta:.4e}, "
                    + ", ".join(f"{k}: Ns={v[0]:.3f} Nn={v[1]:.4e}" for k, v in results.items()))
    assert point.transmission == pytest.approx(0.914, abs=5e-4)
    assert point.eta == pytest.approx(1.2e-4, rel=0.01)
    for ns, nn in results.values():
        assert ns == pytest.approx(35.0, abs=1.0)
        assert nn == pytest.approx(6.3e-3, rel=0.05)


@pytest.mark.criterion("A4", "textbook aluminium loss within 3x of the implied decay exponent")
def test_a4_attenuation_plausibility(record_property):
    sc = aluminium_scenario()
    gamma_t = propagate(sc.signal, sc.waveguide).Gamma_t
    implied = implied_operating_point().Gamma_t
    ratio = implied / gamma_t
    record_property("detail", f"Gt(Al, 5 m)={gamma_t:.5f}, implied Gt={implied:.5f}, ratio={ratio:.3f}")
    assert 1 / 3 <= ratio <= 3


@pytest.mark.criterion("A5", "thermal noise saturates by 500 m")
def test_a5_saturation(record_property):
    start = time.perf_counter()
    n_th = thermal_occupation(10e9, 293.15)
    fractions = {}
    for name, sc in (("aluminium", aluminium_scenario(antenna=AntennaSpec(1e-3, 5e-4, 1e-12))),
                     ("calibrated", reference_scenario())):
        rows = run_sweep(SweepSpec("length", 0.0, 500.0, 1001, sc))
        mn = [r.Mn for r in rows]
        assert all(a < b for a, b in zip(mn, mn[1:])), name
        fractions[name] = mn[-1] / n_th
    elapsed = time.perf_counter() - start
    record_property("detail", ", ".join(f"{k}: Mn(500 m)/n_th={v:.4f}" for k, v in fractions.items())
                    + f", {elapsed * 1e3:.0f} ms")
    assert all(f >= 0.95 for f in fractions.values())
    assert elapsed < 1.0


@pytest.mark.criterion("A6", "detection leaves the signal-to-noise ratio unchanged")
def test_a6_snr_neutrality(record_property):
    rng = np.random.default_rng(2024)
    checked, worst = 0, 0.0
    while checked < 1000:
        wg, ant, omega = random_setup(rng)
        transport = propagate(SignalSpec(omega / (2 * math.pi), 10 ** rng.uniform(0, 8)), wg)
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", StrongCouplingWarning)
            try:
                det = detect(transport, ant, wg, omega)
            except EtaOutOfRange:
                continue
        if det.eta == 0 or det.Nn == 0:
            continue
        rel = abs((det.Ns / det.Nn) / (transport.Ms / transport.Mn) - 1)
        worst = max(worst, rel)
        checked += 1
    record_property("detail", f"{checked} scenarios, worst relative deviation {worst:.2e}")
    assert worst <= 1e-12


@pytest.mark.criterion("A7", "78 K cooling extends the feasible length beyond 25 m")
def test_a7_cooling_extension(record_property):
    ref = reference_scenario()
    al = aluminium_scenario(antenna=ref.antenna)
    lengths = {
        "calibrated": max_length_under_cooling(ref, A3_CONSTRAINT, 78.0),
        "aluminium": max_length_under_cooling(al, A3_CONSTRAINT, 78.0),
    }
    temps = (293.15, 250.0, 200.0, 150.0, 100.0, 78.0, 40.0, 4.0)
    ladder = [max_length_under_cooling(ref, A3_CONSTRAINT, t) for t in temps]
    record_property("detail", ", ".join(f"{k}: {v:.2f} m" for k, v in lengths.items())
                    + f"; assumes {ref.waveguide.wall.describe()}")
    assert all(v >= 25.0 for v in lengths.values())
    assert all(a <= b for a, b in zip(ladder, ladder[1:]))


@pytest.mark.criterion("A8", "|LC coupling coefficient|^2 equals eta")
def test_a8_cross_equation_identity(record_property):
    rng = np.random.default_rng(7)
    checked, worst = 0, 0.0
    while checked < 1000:
        wg, ant, omega = random_setup(rng)
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", StrongCouplingWarning)
            try:
                eta = coupling_eta(ant, wg, omega)
            except EtaOutOfRange:
                continue
            k = lc_coupling_coefficient(ant, wg, omega)
        if eta == 0:
            assert k == 0
            continue
        worst = max(worst, abs(abs(k) ** 2 / eta - 1))
        checked += 1
    record_property("detail", f"{checked} parameter sets, worst relative deviation {worst:.2e}")
    assert worst <= 1e-10


@pytest.mark.criterion("A9", "repeated CLI runs are byte-identical")
def test_a9_determinism(record_property, tmp_path):
    from pathlib import Path

    ref = str(Path(__file__).resolve().parent.parent / "configs" / "reference.toml")
    small_mc = ["--set", "mc.n_trajectories=2000", "--set", "mc.gamma_t=[0.5, 5.0]"]
    commands = {
        "link-budget": ["link-budget", ref],
        "sweep": ["sweep", ref, "--format", "csv"],
        "design-antenna": ["design-antenna", ref, "--cooling", "78"],
        "mc-verify": ["mc-verify", "--format", "csv", *small_mc],
    }
    runner = CliRunner()
    identical = {}
    for name, args in commands.items():
        outputs = []
        for i, threads in enumerate(("1", "3", "1")):
            path = tmp_path / f"{name}-{i}.out"
            r = runner.invoke(main, [*args, "-o", str(path)], env={"QLINK_THREADS": threads})
            assert r.exit_code == 0, (name, r.stderr)
            outputs.append(path.read_bytes())
        identical[name] = len(set(outputs)) == 1
    record_property("detail", ", ".join(f"{k}={'same' if v else 'DIFF'}" for k, v in identical.items()))
    assert all(identical.values())

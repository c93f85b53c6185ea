"""Acceptance gate: every headline behavior at its stated tolerance.

Run with ``pytest tests/test_acceptance.py -v -s`` to see one printed
pass/fail line per criterion.
"""

import json
import time

import numpy as np
import pytest

from conftest import multistart_chsh_max, random_product_state

from bellsearch import (
    FiniteShot,
    MeasurementOracle,
    SpsaConfig,
    Untrusted,
    bell_value,
    chsh_max_value,
    gell_mann_basis,
    ghz3,
    make_untrusted,
    max_entangled_qutrits,
    qutrit_projectors,
    random_density_matrix,
    singlet,
    spsa_step,
    unitary_from_coefficients,
)
from bellsearch.cli import main as cli_main
from bellsearch.experiments import run_search_vs_tomography, spsa_repetition

TSIRELSON = 2.0 * np.sqrt(2.0)


def _report(name, ok, detail):
    print(f"[acceptance] {name}: {'PASS' if ok else 'FAIL'} ({detail})")
    assert ok, f"{name}: {detail}"


def _batch_finals(state, scenario, noise, iterations, seeds):
    finals = []
    for seed in seeds:
        trace, _ = spsa_repetition(state, scenario, noise,
                                   SpsaConfig(iterations=iterations), seed)
        finals.append(trace.final_value)
    return np.array(finals)


def test_chsh_noiseless_convergence():
    started = time.perf_counter()
    finals = _batch_finals(singlet(), "chsh", (), 50, range(10))
    elapsed = time.perf_counter() - started
    median = float(np.median(finals))
    best = float(finals.max())
    ok = median >= 2.80 and abs(best - 2.8284) <= 0.01 and elapsed < 5.0
    _report("chsh noiseless convergence", ok,
            f"median={median:.4f} best={best:.6f} runtime={elapsed:.2f}s")


def test_mermin_noiseless_convergence():
    started = time.perf_counter()
    finals = _batch_finals(ghz3(), "mermin3", (), 80, range(10))
    elapsed = time.perf_counter() - started
    median = float(np.median(finals))
    ok = median >= 3.95 and elapsed < 10.0
    _report("three-qubit noiseless convergence", ok,
            f"median={median:.4f} runtime={elapsed:.2f}s")


def test_cglmp_noiseless_convergence():
    started = time.perf_counter()
    finals = _batch_finals(max_entangled_qutrits(), "cglmp3", (), 100, range(10))
    elapsed = time.perf_counter() - started
    median = float(np.median(finals))
    ok = median >= 2.82 and elapsed < 30.0
    _report("two-qutrit noiseless convergence", ok,
            f"median={median:.4f} runtime={elapsed:.2f}s")


def test_shot_noise_robustness():
    stats = {}
    for n in (200, 1000, 10000):
        finals = _batch_finals(singlet(), "chsh", (FiniteShot(n),), 50, range(10))
        stats[n] = (float(finals.mean()), float(finals.std()))
    in_band = 2.65 <= stats[200][0] <= 2.83
    monotone = (stats[1000][0] >= stats[200][0] - stats[200][1]
                and stats[10000][0] >= stats[1000][0] - stats[1000][1])
    ok = in_band and monotone
    _report("shot-noise robustness", ok,
            f"means={[round(stats[n][0], 4) for n in (200, 1000, 10000)]} "
            f"stds={[round(stats[n][1], 4) for n in (200, 1000, 10000)]}")


def test_search_beats_tomography_at_matched_budget(tmp_path):
    payload = run_search_vs_tomography(photons=2000, sigmas=(0.02, 0.05, 0.10), trials=10,
                             seed=0, out_dir=tmp_path)
    margins = {g["sigma"]: g["search_minus_tomography"] for g in payload["groups"]}
    ok = all(margins[sigma] >= 0.0 for sigma in (0.05, 0.10))
    _report("search vs tomography at matched budget", ok,
            f"search-tomography margins={ {k: round(v, 4) for k, v in margins.items()} }")


def test_untrusted_devices():
    finals = _batch_finals(singlet(), "chsh", (Untrusted(),), 50, range(5))
    all_high = bool((finals >= 2.78).all())

    oracle = make_untrusted(singlet(), "chsh", seed=7)
    rng = np.random.default_rng(8)
    translation_exact = all(
        oracle.evaluate(theta) == bell_value(singlet(), "chsh",
                                             theta + oracle.settings_offset)
        for theta in rng.uniform(0, 2 * np.pi, (20, 8)))
    ok = all_high and translation_exact
    _report("untrusted devices", ok,
            f"finals={np.round(finals, 4).tolist()} translation_exact={translation_exact}")


def test_closed_form_maximum_matches_multistart():
    rng = np.random.default_rng(123)
    worst = 0.0
    for _ in range(20):
        state = random_density_matrix(4, rng)
        closed = chsh_max_value(state)
        numeric = multistart_chsh_max(state, restarts=200, seed=int(rng.integers(1 << 30)))
        worst = max(worst, abs(closed - numeric))
    ok = worst <= 1e-3
    _report("closed-form maximum vs multistart", ok, f"max deviation={worst:.2e}")


def test_structural_invariants():
    rng = np.random.default_rng(77)

    unit_dev = 0.0
    for dim in (2, 3):
        for _ in range(25):
            u = unitary_from_coefficients(dim, rng.uniform(-2 * np.pi, 2 * np.pi, dim * dim - 1))
            unit_dev = max(unit_dev, np.abs(u @ u.conj().T - np.eye(dim)).max())
    unitary_ok = unit_dev <= 1e-10

    basis = gell_mann_basis(3)
    ortho_dev = max(abs(np.trace(gi @ gj).real - (2.0 if i == j else 0.0))
                    for i, gi in enumerate(basis) for j, gj in enumerate(basis))
    gell_mann_ok = ortho_dev <= 1e-12

    projector_dev = 0.0
    for _ in range(100):
        stack = qutrit_projectors(rng.uniform(0, 2 * np.pi, 8))
        projector_dev = max(projector_dev, np.abs(stack.sum(axis=0) - np.eye(3)).max())
        for j in range(3):
            for k in range(3):
                want = stack[j] if j == k else 0.0
                projector_dev = max(projector_dev, np.abs(stack[j] @ stack[k] - want).max())
    projectors_ok = projector_dev <= 1e-9

    local_max = 0.0
    for _ in range(1000):
        state = random_product_state(rng)
        local_max = max(local_max, bell_value(state, "chsh", rng.uniform(0, 2 * np.pi, 8)))
    local_ok = local_max <= 2.0 + 1e-9

    sweep_max = 0.0
    state = singlet()
    for _ in range(10_000):
        sweep_max = max(sweep_max, bell_value(state, "chsh", rng.uniform(0, 2 * np.pi, 8)))
    tsirelson_ok = sweep_max <= TSIRELSON + 1e-9

    ok = unitary_ok and gell_mann_ok and projectors_ok and local_ok and tsirelson_ok
    _report("structural invariants", ok,
            f"unitarity={unit_dev:.1e} gell-mann={ortho_dev:.1e} "
            f"projectors={projector_dev:.1e} local_max={local_max:.6f} "
            f"sweep_max={sweep_max:.6f}")


def test_gradient_estimator():
    rng = np.random.default_rng(31)

    linear_dev = 0.0
    for _ in range(100):
        coeffs = rng.normal(size=8)
        theta = rng.normal(size=8)
        beta = rng.uniform(1e-4, 1.0)
        config = SpsaConfig(b=beta, iterations=1)
        _, record = spsa_step(lambda th: float(coeffs @ th), theta, 0, config,
                              np.random.default_rng(int(rng.integers(1 << 31))))
        linear_dev = max(linear_dev, abs(record.g - float(coeffs @ record.delta)))
    linear_ok = linear_dev <= 1e-12

    coeffs = rng.normal(size=6)
    direction = rng.normal(size=6)

    def smooth(th):
        return float(np.sin(coeffs @ th) + (direction @ th) ** 2)

    nonlinear_dev = 0.0
    for _ in range(50):
        theta = rng.normal(size=6)
        config = SpsaConfig(b=1e-5, iterations=1)
        _, record = spsa_step(smooth, theta, 0, config,
                              np.random.default_rng(int(rng.integers(1 << 31))))
        grad = coeffs * np.cos(coeffs @ theta) + 2.0 * (direction @ theta) * direction
        nonlinear_dev = max(nonlinear_dev, abs(record.g - float(grad @ record.delta)))
    nonlinear_ok = nonlinear_dev <= 1e-4

    ok = linear_ok and nonlinear_ok
    _report("gradient estimator", ok,
            f"linear_dev={linear_dev:.1e} nonlinear_dev={nonlinear_dev:.1e}")


def test_reproducible_traces(tmp_path):
    args = ["single", "--scenario", "chsh", "--state", "singlet", "--iterations", "10",
            "--reps", "2", "--seed", "3", "--noise", "shot:25"]
    assert cli_main(args + ["--out", str(tmp_path / "first")]) == 0
    assert cli_main(args + ["--out", str(tmp_path / "second")]) == 0
    identical = all(
        (tmp_path / "first" / name).read_bytes() == (tmp_path / "second" / name).read_bytes()
        for name in ("trace_rep000.csv", "trace_rep001.csv"))
    finals_match = (
        json.loads((tmp_path / "first" / "summary.json").read_text())["finals"]
        == json.loads((tmp_path / "second" / "summary.json").read_text())["finals"])
    ok = identical and finals_match
    _report("byte-identical reproducibility", ok,
            f"traces_identical={identical} finals_match={finals_match}")

"""Stochastic gradient ascent with simultaneous random perturbations.

Each step draws a random sign direction delta_k (components +/-1/sqrt(dim),
unit length), probes the objective at theta +/- beta_k * delta_k, forms the
scalar two-sided estimate

    g_k = (V(theta + beta_k delta_k) - V(theta - beta_k delta_k)) / (2 beta_k)

and moves theta by alpha_k * g_k * delta_k. The gains decay as

    alpha_k = a / (k + 1 + A)^s        beta_k = b / (k + 1)^t

where A is a stability offset that keeps early steps bounded. The unit-length
perturbation makes one gain configuration work across settings spaces of
different dimension, so the defaults below drive all three Bell scenarios.
"""

from dataclasses import dataclass

import numpy as np

from .validation import as_rng


@dataclass(frozen=True)
class SpsaConfig:
    """Gain constants, decay exponents, and iteration count of one ascent run."""

    a: float = 9.0
    b: float = 0.4
    s: float = 0.602
    t: float = 0.101
    stability_offset: float = 8.0
    iterations: int = 50
    seed: int | None = None

    def __post_init__(self):
        for name in ("a", "b", "s", "t"):
            if getattr(self, name) <= 0:
                raise ValueError(f"{name} must be positive")
        if self.stability_offset < 0:
            raise ValueError("stability_offset must be nonnegative")
        if self.iterations < 1:
            raise ValueError("iterations must be at least 1")


@dataclass(frozen=True)
class IterationRecord:
    """Telemetry of a single step, taken before the update at index k."""

    k: int
    theta: np.ndarray
    alpha: float
    beta: float
    delta: np.ndarray
    g: float
    v_plus: float
    v_minus: float
    v_current: float
    shots_used: int


@dataclass(frozen=True)
class RunTrace:
    """Complete record of an ascent run, including the post-run evaluation."""

    config: SpsaConfig
    scenario: str | None
    records: tuple
    final_theta: np.ndarray
    final_value: float


def gain_schedule(k, config):
    """Update and probe gains (alpha_k, beta_k) at iteration ``k``."""
    if k < 0:
        raise ValueError("iteration index must be nonnegative")
    alpha = config.a / (k + 1 + config.stability_offset) ** config.s
    beta = config.b / (k + 1) ** config.t
    return alpha, beta


def sample_perturbation(dim, rng):
    """Random unit-length sign direction: components +/- 1/sqrt(dim)."""
    return (rng.integers(0, 2, size=dim) * 2.0 - 1.0) / np.sqrt(dim)


def random_initial_theta(scenario_or_dim, rng):
    """Initial settings drawn uniformly from [0, scale) per component.

    The scale is the scenario's initialization range (2 pi for Bloch-angle
    parameterizations, a moderate radius for generator coefficients); a bare
    dimension falls back to 2 pi.
    """
    dim = getattr(scenario_or_dim, "theta_dim", scenario_or_dim)
    scale = getattr(scenario_or_dim, "initial_scale", 2.0 * np.pi)
    return rng.uniform(0.0, scale, int(dim))


def spsa_step(objective, theta, k, config, rng, telemetry=None):
    """One perturb-probe-update step; returns (next theta, IterationRecord).

    ``telemetry`` evaluates the value reported for theta_k without affecting
    any budget accounting the objective may keep; it defaults to the
    objective itself.
    """
    theta = np.asarray(theta, dtype=float)
    probe = objective if telemetry is None else telemetry
    v_current = float(probe(theta))
    alpha, beta = gain_schedule(k, config)
    delta = sample_perturbation(theta.size, rng)
    shots_before = getattr(objective, "shot_counter", 0)
    v_plus = float(objective(theta + beta * delta))
    v_minus = float(objective(theta - beta * delta))
    shots_used = getattr(objective, "shot_counter", 0) - shots_before
    g = (v_plus - v_minus) / (2.0 * beta)
    theta_next = theta + alpha * g * delta
    record = IterationRecord(k=k, theta=theta, alpha=alpha, beta=beta, delta=delta,
                             g=g, v_plus=v_plus, v_minus=v_minus, v_current=v_current,
                             shots_used=int(shots_used))
    return theta_next, record


def run(objective, theta0, config, rng=None, scenario=None):
    """Run the full ascent from ``theta0`` and return its trace.

    ``objective`` maps a settings vector to a value. If it exposes a ``peek``
    method (as measurement oracles do), that is used for per-iteration
    telemetry and the final evaluation so probes alone consume the budget.
    """
    rng = as_rng(config.seed if rng is None else rng)
    theta = np.asarray(theta0, dtype=float)
    telemetry = getattr(objective, "peek", None)
    records = []
    for k in range(config.iterations):
        theta, record = spsa_step(objective, theta, k, config, rng, telemetry=telemetry)
        records.append(record)
    final_probe = objective if telemetry is None else telemetry
    final_value = float(final_probe(theta))
    return RunTrace(config=config, scenario=scenario, records=tuple(records),
                    final_theta=theta, final_value=final_value)

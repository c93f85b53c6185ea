"""Simulated measurement oracles: ideal, finite photon statistics, angle error, hidden offsets."""

from dataclasses import dataclass, field

import numpy as np

from .scenarios import (
    SETTING_PAIRS,
    bell_value,
    build_measurements,
    cglmp_combination,
    correlator_terms,
    get_scenario,
    joint_probabilities,
    measured_setting_combos,
)
from .states import as_quantum_state
from .validation import as_rng, check_settings


@dataclass(frozen=True)
class FiniteShot:
    """Finite photon statistics: ``pairs_per_setting`` pairs per joint setting per evaluation."""

    pairs_per_setting: int

    def __post_init__(self):
        if self.pairs_per_setting < 1:
            raise ValueError("pairs_per_setting must be at least 1")


@dataclass(frozen=True)
class SettingError:
    """Fresh Gaussian error (std ``sigma`` radians) on every settings component per evaluation."""

    sigma: float

    def __post_init__(self):
        if self.sigma < 0:
            raise ValueError("sigma must be nonnegative")


@dataclass(frozen=True)
class Untrusted:
    """Hidden fixed settings offset, drawn once per oracle (or supplied for tests)."""

    seed: int | None = None
    offset: tuple = field(default=None, compare=False)


def parse_noise(spec):
    """Normalize a noise spec to a tuple of components.

    Accepts a component, a sequence of components, or a string such as
    ``"ideal"``, ``"shot:200"``, ``"angle:0.05"``, ``"untrusted"``,
    ``"untrusted:7"`` or compositions joined with ``+``
    (e.g. ``"angle:0.05+shot:200"``).
    """
    if spec is None:
        return ()
    if isinstance(spec, (FiniteShot, SettingError, Untrusted)):
        return (spec,)
    if isinstance(spec, str):
        components = []
        for part in spec.split("+"):
            part = part.strip().lower()
            if not part or part == "ideal":
                continue
            name, _, arg = part.partition(":")
            if name == "shot":
                components.append(FiniteShot(int(arg)))
            elif name == "angle":
                components.append(SettingError(float(arg)))
            elif name == "untrusted":
                components.append(Untrusted(seed=int(arg)) if arg else Untrusted())
            else:
                raise ValueError(f"unknown noise component {part!r}")
        spec = components
    components = tuple(spec)
    for c in components:
        if not isinstance(c, (FiniteShot, SettingError, Untrusted)):
            raise ValueError(f"not a noise component: {c!r}")
    if sum(isinstance(c, FiniteShot) for c in components) > 1:
        raise ValueError("at most one finite-shot component is allowed")
    return components


def _sign_table(parties):
    signs = np.array([1.0, -1.0])
    table = signs
    for _ in range(parties - 1):
        table = np.multiply.outer(table, signs)
    return table


class MeasurementOracle:
    """Black-box evaluator mapping a settings vector to a (possibly noisy) Bell value.

    Noise is applied in a fixed order: hidden offsets shift the settings,
    Gaussian angle errors perturb them afresh, and finite photon statistics
    replace exact expectations by empirical estimates. The oracle owns its
    RNG stream and a cumulative photon-pair counter; one oracle serves one
    optimization run at a time.
    """

    def __init__(self, state, scenario, noise=(), rng=None):
        self.scenario = get_scenario(scenario)
        self.state = as_quantum_state(state, dim=self.scenario.total_dim)
        self.noise = parse_noise(noise)
        self._rng = as_rng(rng)
        self.shot_counter = 0

        offset_components = [c for c in self.noise if isinstance(c, Untrusted)]
        if offset_components:
            total = np.zeros(self.scenario.theta_dim)
            for c in offset_components:
                if c.offset is not None:
                    total = total + np.asarray(c.offset, dtype=float)
                else:
                    source = np.random.default_rng(c.seed) if c.seed is not None else self._rng
                    total = total + source.uniform(0.0, 2.0 * np.pi, self.scenario.theta_dim)
            # Test/diagnostic hook; evaluate() never reveals it.
            self.settings_offset = total
        else:
            self.settings_offset = None

        self._sigmas = tuple(c.sigma for c in self.noise if isinstance(c, SettingError))
        shot = [c for c in self.noise if isinstance(c, FiniteShot)]
        self._pairs = shot[0].pairs_per_setting if shot else None

    @property
    def theta_dim(self):
        return self.scenario.theta_dim

    def evaluate(self, theta, record_shots=True):
        """Measure the Bell value at ``theta`` under the oracle's noise model."""
        theta = check_settings(theta, self.scenario)
        if self.settings_offset is not None:
            theta = theta + self.settings_offset
        for sigma in self._sigmas:
            if sigma > 0:
                theta = theta + self._rng.normal(0.0, sigma, theta.size)
        if self._pairs is None:
            return bell_value(self.state, self.scenario, theta)
        value = self._sampled_value(build_measurements(self.scenario, theta))
        if record_shots:
            self.shot_counter += len(measured_setting_combos(self.scenario)) * self._pairs
        return value

    __call__ = evaluate

    def peek(self, theta):
        """Evaluate without charging the photon budget (telemetry only)."""
        return self.evaluate(theta, record_shots=False)

    def _sampled_value(self, measurements):
        rho = self.state.rho
        n = self._pairs
        if self.scenario.outcomes_per_setting == 2:
            signs = _sign_table(self.scenario.parties)
            total = 0.0
            for combo, coeff in correlator_terms(self.scenario):
                probs = joint_probabilities(rho, [measurements[p][s] for p, s in enumerate(combo)])
                counts = self._rng.multinomial(n, _pvals(probs)).reshape(probs.shape)
                total += coeff * float((counts * signs).sum()) / n
            return abs(total)
        tables = {}
        for a, b in SETTING_PAIRS:
            probs = joint_probabilities(rho, [measurements[0][a], measurements[1][b]])
            counts = self._rng.multinomial(n, _pvals(probs)).reshape(3, 3)
            tables[a, b] = counts / n
        return float(cglmp_combination(tables[0, 0], tables[0, 1], tables[1, 0], tables[1, 1]))


def _pvals(probs):
    flat = probs.reshape(-1)
    return flat / flat.sum()


def true_joint_distribution(state, measurements, setting_choice):
    """Exact joint outcome distribution for one setting choice per party."""
    state = as_quantum_state(state)
    chosen = [measurements[party][s] for party, s in enumerate(setting_choice)]
    return joint_probabilities(state.rho, chosen)


def make_untrusted(state, scenario, seed):
    """Oracle whose settings carry a hidden offset drawn uniformly from ``seed``."""
    return MeasurementOracle(state, scenario, noise=(Untrusted(),), rng=seed)

"""Scikit-learn style estimators wrapping the settings search and the tomography baseline."""

import numpy as np
from sklearn.base import BaseEstimator
from sklearn.exceptions import NotFittedError

from .oracles import MeasurementOracle, parse_noise
from .scenarios import get_scenario
from .spsa import SpsaConfig, random_initial_theta, run
from .states import as_quantum_state
from .tomography import chsh_max_value, reconstruct, tomography_measure
from .validation import as_rng, check_settings


def _require_fitted(estimator, attribute):
    if not hasattr(estimator, attribute):
        raise NotFittedError(
            f"this {type(estimator).__name__} instance is not fitted yet; call fit first"
        )


class BellViolationMaximizer(BaseEstimator):
    """Search for the settings maximizing a Bell value via stochastic gradient ascent.

    Parameters
    ----------
    scenario : str, "chsh", "mermin3" or "cglmp3".
    iterations : int or None; None picks the scenario default (50/80/100).
    a, b, s, t, stability_offset : gain constants, decay exponents, and the
        stability offset of the ascent schedule.
    noise : noise spec for the simulated measurements, e.g. "ideal",
        "shot:200", "angle:0.05+shot:200", "untrusted".
    random_state : int, Generator or None.

    After ``fit(rho)`` the fitted attributes are ``theta_`` (settings found),
    ``value_`` (measured Bell value at ``theta_``), ``trace_`` (full run
    telemetry) and ``oracle_`` (the measurement oracle, with its photon budget).
    """

    def __init__(self, scenario="chsh", iterations=None, a=9.0, b=0.4, s=0.602, t=0.101,
                 stability_offset=8.0, noise="ideal", random_state=None):
        self.scenario = scenario
        self.iterations = iterations
        self.a = a
        self.b = b
        self.s = s
        self.t = t
        self.stability_offset = stability_offset
        self.noise = noise
        self.random_state = random_state

    def fit(self, rho, y=None, theta0=None):
        """Run the search against the density matrix ``rho`` (``y`` is ignored)."""
        scenario = get_scenario(self.scenario)
        state = as_quantum_state(rho, dim=scenario.total_dim)
        iterations = scenario.default_iterations if self.iterations is None else int(self.iterations)
        config = SpsaConfig(a=self.a, b=self.b, s=self.s, t=self.t,
                            stability_offset=self.stability_offset, iterations=iterations)
        rng = as_rng(self.random_state)
        oracle = MeasurementOracle(state, scenario, noise=parse_noise(self.noise), rng=rng)
        if theta0 is None:
            theta0 = random_initial_theta(scenario, rng)
        else:
            theta0 = check_settings(theta0, scenario)
        trace = run(oracle, theta0, config, rng, scenario=scenario.id)
        self.trace_ = trace
        self.theta_ = trace.final_theta
        self.value_ = trace.final_value
        self.oracle_ = oracle
        self.n_iterations_ = iterations
        return self

    def score(self, X=None, y=None):
        """Measured Bell value at the fitted settings."""
        _require_fitted(self, "value_")
        return self.value_


class TomographyBaseline(BaseEstimator):
    """Estimate the maximal two-qubit Bell value through full state tomography.

    ``fit(rho)`` simulates counts for the nine Pauli setting pairs, inverts
    them, projects onto the physical set and evaluates the closed-form
    maximum; the result is stored in ``value_`` alongside ``rho_``,
    ``linear_inversion_`` and ``projection_distance_``.
    """

    def __init__(self, shots_per_setting=100_000, noise="ideal", random_state=None):
        self.shots_per_setting = shots_per_setting
        self.noise = noise
        self.random_state = random_state

    def fit(self, rho, y=None):
        state = as_quantum_state(rho, dim=4)
        rng = as_rng(self.random_state)
        data = tomography_measure(state, self.shots_per_setting,
                                  noise=parse_noise(self.noise), rng=rng)
        reconstruction = reconstruct(data)
        self.data_ = data
        self.rho_ = reconstruction.rho
        self.linear_inversion_ = reconstruction.raw_linear_inversion
        self.projection_distance_ = reconstruction.projection_distance
        self.value_ = chsh_max_value(reconstruction.rho)
        return self

    def score(self, X=None, y=None):
        """Estimated maximal Bell value of the reconstructed state."""
        _require_fitted(self, "value_")
        return self.value_

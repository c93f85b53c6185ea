"""Shared test helpers: independent oracles and random-state factories."""

import numpy as np
from scipy.optimize import minimize

from bellsearch import QuantumState, bell_value, random_density_matrix, tensor


def multistart_chsh_max(state, restarts=200, seed=0, maxiter=50):
    """Numeric maximum of the two-qubit Bell value over settings, by multistart ascent.

    Independent oracle for the closed-form maximum: repeated local
    maximization of bell_value from random starting settings.
    """
    rng = np.random.default_rng(seed)
    best = 0.0
    for _ in range(restarts):
        theta0 = rng.uniform(0.0, 2.0 * np.pi, 8)
        result = minimize(lambda th: -bell_value(state, "chsh", th), theta0,
                          method="L-BFGS-B", options={"maxiter": maxiter})
        best = max(best, -result.fun)
    return best


def random_product_state(rng):
    """Random (possibly mixed) two-qubit product state."""
    a = random_density_matrix(2, rng)
    b = random_density_matrix(2, rng)
    return QuantumState(tensor(a.rho, b.rho))

"""Input validation helpers shared across the package."""

import numpy as np

HERMITICITY_ATOL = 1e-10
TRACE_ATOL = 1e-10
EIGENVALUE_ATOL = 1e-9


def as_rng(seed=None):
    """Coerce ``seed`` (None, int, SeedSequence or Generator) to a Generator."""
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.default_rng(seed)


def check_square(matrix, name="matrix"):
    arr = np.asarray(matrix, dtype=complex)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
        raise ValueError(f"{name} must be a square matrix, got shape {arr.shape}")
    if not np.isfinite(arr).all():
        raise ValueError(f"{name} contains non-finite entries")
    return arr


def check_hermitian(matrix, atol=1e-8, name="observable"):
    arr = check_square(matrix, name=name)
    deviation = np.abs(arr - arr.conj().T).max()
    if deviation > atol:
        raise ValueError(f"{name} is not Hermitian (max deviation {deviation:.3e} > {atol:.0e})")
    return arr


def check_density_matrix(rho, dim=None, name="rho"):
    """Validate a density matrix: Hermitian, unit trace, positive semidefinite (all within tolerance)."""
    arr = check_square(rho, name=name)
    if dim is not None and arr.shape[0] != dim:
        raise ValueError(f"{name} must be {dim}x{dim}, got {arr.shape[0]}x{arr.shape[0]}")
    if np.abs(arr - arr.conj().T).max() > HERMITICITY_ATOL:
        raise ValueError(f"{name} is not Hermitian within {HERMITICITY_ATOL:.0e}")
    trace = arr.trace()
    if abs(trace - 1.0) > TRACE_ATOL:
        raise ValueError(f"{name} trace is {trace:.12g}, expected 1 within {TRACE_ATOL:.0e}")
    smallest = np.linalg.eigvalsh(arr)[0]
    if smallest < -EIGENVALUE_ATOL:
        raise ValueError(f"{name} has eigenvalue {smallest:.3e} below -{EIGENVALUE_ATOL:.0e}")
    return arr


def check_settings(theta, scenario):
    """Validate a settings vector against a scenario's parameter count."""
    arr = np.asarray(theta, dtype=float)
    if arr.ndim != 1 or arr.size != scenario.theta_dim:
        raise ValueError(
            f"settings vector for {scenario.id} must have length {scenario.theta_dim}, "
            f"got shape {arr.shape}"
        )
    if not np.isfinite(arr).all():
        raise ValueError("settings vector contains non-finite entries")
    return arr

"""Two-qubit state tomography baseline: measure, reconstruct, maximize.

The baseline measures the nine Pauli setting pairs, inverts the empirical
correlators linearly, projects onto the physical set by eigenvalue
truncation and renormalization, and evaluates the closed-form maximal
two-qubit Bell value of the reconstructed state.
"""

from dataclasses import dataclass

import numpy as np

from .linalg import PAULI, tensor
from .oracles import SettingError, parse_noise
from .scenarios import joint_probabilities, qubit_observable
from .states import QuantumState, as_quantum_state
from .validation import as_rng

# Bloch angles (theta, phi) of the three Pauli axes, in x, y, z order.
PAULI_AXES = ((np.pi / 2, 0.0), (np.pi / 2, np.pi / 2), (0.0, 0.0))


@dataclass(frozen=True)
class TomographyData:
    """Joint outcome counts for the nine Pauli setting pairs.

    ``counts[i, j, s, t]`` counts outcomes (s, t) for axes (i, j), with
    outcome index 0 the +1 eigenvalue. Entries are floats so expected
    (infinite-statistics) data can be represented exactly.
    """

    counts: np.ndarray
    shots_per_setting: float

    def __post_init__(self):
        arr = np.asarray(self.counts, dtype=float)
        if arr.shape != (3, 3, 2, 2):
            raise ValueError(f"counts must have shape (3, 3, 2, 2), got {arr.shape}")
        if self.shots_per_setting <= 0:
            raise ValueError("shots_per_setting must be positive")
        totals = arr.sum(axis=(2, 3))
        if not np.allclose(totals, self.shots_per_setting, rtol=0, atol=1e-6):
            raise ValueError("counts for each setting pair must sum to shots_per_setting")
        object.__setattr__(self, "counts", arr)

    @property
    def total_shots(self):
        return 9 * self.shots_per_setting


@dataclass(frozen=True)
class ReconstructedState:
    """Physical reconstruction together with its raw linear inversion."""

    rho: QuantumState
    raw_linear_inversion: np.ndarray
    projection_distance: float


def tomography_measure(state, shots_per_setting, noise=(), rng=None):
    """Sample tomography counts for a two-qubit state.

    Angle-error components in ``noise`` perturb the nominal Pauli axes the
    same way the measurement oracles perturb settings: every Bloch angle
    gets a fresh Gaussian error per setting pair. The analysis stage still
    assumes the nominal axes, which is what makes this a systematic error.
    """
    state = as_quantum_state(state, dim=4)
    if shots_per_setting < 1:
        raise ValueError("shots_per_setting must be at least 1")
    shots = int(shots_per_setting)
    sigmas = tuple(c.sigma for c in parse_noise(noise) if isinstance(c, SettingError))
    rng = as_rng(rng)
    counts = np.zeros((3, 3, 2, 2))
    for i in range(3):
        for j in range(3):
            angles = np.array(PAULI_AXES[i] + PAULI_AXES[j])
            for sigma in sigmas:
                if sigma > 0:
                    angles = angles + rng.normal(0.0, sigma, 4)
            obs_a = qubit_observable(angles[0], angles[1])
            obs_b = qubit_observable(angles[2], angles[3])
            probs = joint_probabilities(state.rho, [obs_a, obs_b])
            flat = probs.reshape(-1)
            counts[i, j] = rng.multinomial(shots, flat / flat.sum()).reshape(2, 2)
    return TomographyData(counts=counts, shots_per_setting=shots)


def expected_tomography_data(state, shots_per_setting=1.0):
    """Infinite-statistics tomography data: expected counts, no sampling."""
    state = as_quantum_state(state, dim=4)
    counts = np.zeros((3, 3, 2, 2))
    for i in range(3):
        for j in range(3):
            obs_a = qubit_observable(*PAULI_AXES[i])
            obs_b = qubit_observable(*PAULI_AXES[j])
            counts[i, j] = joint_probabilities(state.rho, [obs_a, obs_b]) * shots_per_setting
    return TomographyData(counts=counts, shots_per_setting=shots_per_setting)


def reconstruct(data):
    """Linear inversion of tomography data followed by a physicality projection.

    Single-party terms are averaged over the partner's three settings;
    negative eigenvalues of the inverted matrix are truncated and the trace
    renormalized.
    """
    p = data.counts / data.shots_per_setting
    sign = np.array([1.0, -1.0])
    corr = np.einsum("ijst,s,t->ij", p, sign, sign)
    marg_a = np.einsum("ijst,s->ij", p, sign).mean(axis=1)
    marg_b = np.einsum("ijst,t->ij", p, sign).mean(axis=0)

    eye = np.eye(2)
    rho = tensor(eye, eye).astype(complex)
    for i in range(3):
        rho += marg_a[i] * tensor(PAULI[i], eye)
        rho += marg_b[i] * tensor(eye, PAULI[i])
        for j in range(3):
            rho += corr[i, j] * tensor(PAULI[i], PAULI[j])
    rho_linear = rho / 4.0

    values, vectors = np.linalg.eigh(0.5 * (rho_linear + rho_linear.conj().T))
    clipped = np.clip(values, 0.0, None)
    total = clipped.sum()
    if total <= 0:
        rho_physical = np.eye(4, dtype=complex) / 4.0
    else:
        rho_physical = (vectors * (clipped / total)) @ vectors.conj().T
    distance = float(np.linalg.norm(rho_physical - rho_linear))
    return ReconstructedState(rho=QuantumState(rho_physical),
                              raw_linear_inversion=rho_linear,
                              projection_distance=distance)


def chsh_max_value(state):
    """Closed-form maximum of the two-qubit Bell value over all settings.

    With T_ij = Tr(rho sigma_i x sigma_j), the maximum is 2 sqrt(t1 + t2)
    where t1 >= t2 are the two largest eigenvalues of T^T T.
    """
    state = as_quantum_state(state, dim=4)
    t = np.empty((3, 3))
    for i in range(3):
        for j in range(3):
            t[i, j] = np.trace(state.rho @ tensor(PAULI[i], PAULI[j])).real
    eigenvalues = np.linalg.eigvalsh(t.T @ t)
    return 2.0 * np.sqrt(max(eigenvalues[-1] + eigenvalues[-2], 0.0))


def tomography_estimate(state, shots_per_setting, noise=(), rng=None):
    """One full baseline repetition: measure, reconstruct, maximize."""
    data = tomography_measure(state, shots_per_setting, noise=noise, rng=rng)
    return chsh_max_value(reconstruct(data).rho)


def matched_tomography_shots(pairs_per_setting, iterations=60, tomography_repetitions=60):
    """Tomography shots per setting that match the ascent photon budget.

    The ascent consumes iterations x 2 probes x 4 settings x n pairs; the
    baseline consumes repetitions x 9 settings x shots. Equating the totals
    gives shots = iterations * 8 * n / (9 * repetitions), rounded.
    """
    total = iterations * 2 * 4 * pairs_per_setting
    return max(1, round(total / (9 * tomography_repetitions)))

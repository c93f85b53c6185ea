"""Quantum states: density-matrix container, named presets, and file I/O."""

from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .validation import as_rng, check_density_matrix


@dataclass(frozen=True)
class QuantumState:
    """A (possibly mixed) state stored as a validated density matrix."""

    rho: np.ndarray

    def __post_init__(self):
        arr = check_density_matrix(self.rho)
        arr = np.ascontiguousarray(arr)
        arr.setflags(write=False)
        object.__setattr__(self, "rho", arr)

    @property
    def dim(self):
        return self.rho.shape[0]

    @classmethod
    def from_vector(cls, psi):
        """Rank-1 density matrix |psi><psi| of a (normalized) pure state vector."""
        vec = np.asarray(psi, dtype=complex).reshape(-1)
        norm = np.linalg.norm(vec)
        if norm == 0:
            raise ValueError("cannot build a state from the zero vector")
        vec = vec / norm
        return cls(np.outer(vec, vec.conj()))


def as_quantum_state(state, dim=None):
    if isinstance(state, QuantumState):
        if dim is not None and state.dim != dim:
            raise ValueError(f"state has dimension {state.dim}, expected {dim}")
        return state
    return QuantumState(check_density_matrix(state, dim=dim))


def singlet():
    """Two-qubit singlet (|01> - |10>)/sqrt(2)."""
    return QuantumState.from_vector([0.0, 1.0, -1.0, 0.0])


def ghz3():
    """Three-qubit GHZ state (|000> + |111>)/sqrt(2)."""
    vec = np.zeros(8)
    vec[0] = vec[7] = 1.0
    return QuantumState.from_vector(vec)


def max_entangled_qutrits():
    """Maximally entangled qutrit pair (|00> + |11> + |22>)/sqrt(3)."""
    vec = np.zeros(9)
    vec[0] = vec[4] = vec[8] = 1.0
    return QuantumState.from_vector(vec)


def werner(p):
    """Werner family p * singlet + (1-p) * I/4."""
    _check_mixing(p)
    return QuantumState(p * singlet().rho + (1.0 - p) * np.eye(4) / 4.0)


def partially_entangled(gamma):
    """Pure two-qubit state cos(gamma)|00> + sin(gamma)|11>."""
    return QuantumState.from_vector([np.cos(gamma), 0.0, 0.0, np.sin(gamma)])


def partially_entangled_ghz(gamma):
    """Pure three-qubit state cos(gamma)|000> + sin(gamma)|111>."""
    vec = np.zeros(8)
    vec[0] = np.cos(gamma)
    vec[7] = np.sin(gamma)
    return QuantumState.from_vector(vec)


def ghz_mixed(p):
    """GHZ-diagonal mixture p * GHZ + (1-p) * I/8."""
    _check_mixing(p)
    return QuantumState(p * ghz3().rho + (1.0 - p) * np.eye(8) / 8.0)


def isotropic_qutrits(p):
    """Isotropic qutrit-pair family p * max-entangled + (1-p) * I/9."""
    _check_mixing(p)
    return QuantumState(p * max_entangled_qutrits().rho + (1.0 - p) * np.eye(9) / 9.0)


def weighted_qutrits(gamma):
    """Pure qutrit pair (|00> + gamma|11> + |22>)/sqrt(2 + gamma^2)."""
    vec = np.zeros(9)
    vec[0] = vec[8] = 1.0
    vec[4] = gamma
    return QuantumState.from_vector(vec)


def _check_mixing(p):
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"mixing weight must lie in [0, 1], got {p}")


PRESETS = {
    "singlet": (singlet, False),
    "ghz3": (ghz3, False),
    "max3": (max_entangled_qutrits, False),
    "werner": (werner, True),
    "partial": (partially_entangled, True),
    "partial_ghz": (partially_entangled_ghz, True),
    "ghz_mixed": (ghz_mixed, True),
    "isotropic3": (isotropic_qutrits, True),
    "weighted3": (weighted_qutrits, True),
}


def parse_state_spec(spec):
    """Resolve a state spec: a preset name, ``name:param``, or a state-file path."""
    if isinstance(spec, QuantumState):
        return spec
    text = str(spec)
    if Path(text).is_file():
        return load_state_file(text)
    name, _, param = text.partition(":")
    name = name.strip().lower()
    if name not in PRESETS:
        known = ", ".join(sorted(PRESETS))
        raise ValueError(f"unknown state preset {name!r} (known: {known}) and no such file: {text}")
    builder, needs_param = PRESETS[name]
    if needs_param:
        if not param:
            raise ValueError(f"preset {name!r} needs a parameter, e.g. {name}:0.9")
        return builder(float(param))
    if param:
        raise ValueError(f"preset {name!r} takes no parameter")
    return builder()


def load_state_file(path):
    """Read a density matrix from a text file: first line dim, then dim^2 lines 're im'."""
    lines = [ln.strip() for ln in Path(path).read_text().splitlines() if ln.strip()]
    if not lines:
        raise ValueError(f"state file {path} is empty")
    dim = int(lines[0])
    if len(lines) != 1 + dim * dim:
        raise ValueError(f"state file {path} should have {dim * dim} entry lines, found {len(lines) - 1}")
    entries = []
    for ln in lines[1:]:
        re_part, im_part = ln.split()
        entries.append(complex(float(re_part), float(im_part)))
    rho = np.array(entries, dtype=complex).reshape(dim, dim)
    return QuantumState(rho)


def save_state_file(path, state):
    """Write a density matrix in the plain-text state-file format."""
    state = as_quantum_state(state)
    lines = [str(state.dim)]
    for entry in state.rho.reshape(-1):
        lines.append(f"{float(entry.real)!r} {float(entry.imag)!r}")
    Path(path).write_text("\n".join(lines) + "\n")


def random_density_matrix(dim, rng=None, rank=None):
    """Random density matrix from a complex Wishart draw (full rank by default)."""
    rng = as_rng(rng)
    rank = dim if rank is None else rank
    g = rng.normal(size=(dim, rank)) + 1j * rng.normal(size=(dim, rank))
    m = g @ g.conj().T
    return QuantumState(m / np.trace(m).real)

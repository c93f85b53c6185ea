"""Dense complex linear algebra for small multipartite quantum systems."""

from functools import reduce

import numpy as np

from .validation import check_hermitian

SIGMA_X = np.array([[0, 1], [1, 0]], dtype=complex)
SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
SIGMA_Z = np.array([[1, 0], [0, -1]], dtype=complex)
PAULI = (SIGMA_X, SIGMA_Y, SIGMA_Z)

for _m in PAULI:
    _m.setflags(write=False)


def dagger(matrix):
    return np.conj(matrix).T


def tensor(*matrices):
    """Kronecker product of one or more matrices, composed left to right."""
    if not matrices:
        raise ValueError("tensor() needs at least one matrix")
    return reduce(np.kron, matrices)


def expectation(state, observable, atol=1e-8):
    """Expectation value Tr(rho O) of a Hermitian observable, as a real number.

    ``state`` may be a QuantumState or a density matrix; the tiny imaginary
    residue of the trace (guaranteed below 1e-9 for valid inputs) is dropped.
    """
    obs = check_hermitian(observable, atol=atol)
    rho = state.rho if hasattr(state, "rho") else np.asarray(state, dtype=complex)
    if rho.shape != obs.shape:
        raise ValueError(f"dimension mismatch: state is {rho.shape}, observable is {obs.shape}")
    return float(np.trace(rho @ obs).real)


def hermitian_eig(matrix, atol=1e-8):
    """Eigendecomposition of a Hermitian matrix.

    Returns ascending real eigenvalues and the matrix whose columns are the
    corresponding orthonormal eigenvectors.
    """
    arr = check_hermitian(matrix, atol=atol, name="matrix")
    values, vectors = np.linalg.eigh(0.5 * (arr + arr.conj().T))
    return values, vectors


def unitary_from_hermitian(matrix, atol=1e-8):
    """Matrix exponential U = exp(iH) computed through the eigendecomposition of H."""
    values, vectors = hermitian_eig(matrix, atol=atol)
    return (vectors * np.exp(1j * values)) @ vectors.conj().T


_BASIS_CACHE = {}


def gell_mann_basis(dim):
    """Traceless Hermitian generator basis with Tr(g_i g_j) = 2 delta_ij.

    Fixed ordering: symmetric off-diagonal matrices for index pairs
    (0,1), (0,2), ... in lexicographic order, then the antisymmetric
    off-diagonal matrices in the same pair order, then the diagonal
    matrices. dim=2 reproduces the Pauli triple (x, y, z).
    """
    if dim not in (2, 3):
        raise ValueError(f"generator basis implemented for dim 2 and 3 only, got {dim}")
    if dim not in _BASIS_CACHE:
        mats = []
        for j in range(dim):
            for k in range(j + 1, dim):
                m = np.zeros((dim, dim), dtype=complex)
                m[j, k] = 1.0
                m[k, j] = 1.0
                mats.append(m)
        for j in range(dim):
            for k in range(j + 1, dim):
                m = np.zeros((dim, dim), dtype=complex)
                m[j, k] = -1j
                m[k, j] = 1j
                mats.append(m)
        for level in range(1, dim):
            m = np.zeros((dim, dim), dtype=complex)
            m[:level, :level] = np.eye(level)
            m[level, level] = -level
            mats.append(np.sqrt(2.0 / (level * (level + 1))) * m)
        for m in mats:
            m.setflags(write=False)
        stacked = np.stack(mats)
        stacked.setflags(write=False)
        _BASIS_CACHE[dim] = (tuple(mats), stacked)
    return list(_BASIS_CACHE[dim][0])


def hermitian_from_coefficients(dim, coefficients):
    """Hermitian matrix sum_i c_i g_i over the generator basis of ``dim``."""
    gell_mann_basis(dim)
    _, stacked = _BASIS_CACHE[dim]
    coeffs = np.asarray(coefficients, dtype=float)
    if coeffs.shape != (dim * dim - 1,):
        raise ValueError(f"expected {dim * dim - 1} coefficients, got shape {coeffs.shape}")
    return np.einsum("i,ijk->jk", coeffs, stacked)


def unitary_from_coefficients(dim, coefficients):
    """Unitary exp(i sum_i c_i g_i) parameterized by real generator coefficients."""
    return unitary_from_hermitian(hermitian_from_coefficients(dim, coefficients))

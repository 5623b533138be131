"""Dense complex-matrix helpers: Hilbert-Schmidt geometry and Hermitian eigensolving.

Matrices are plain square ``numpy`` arrays of ``complex128``; every routine
here is a pure function of its inputs.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

DEFAULT_TOL = 1e-9


def as_matrix(a) -> np.ndarray:
    """Coerce to a square complex128 matrix (copies only if needed)."""
    m = np.asarray(a, dtype=np.complex128)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {m.shape}")
    return m


def asymmetry(a: np.ndarray) -> float:
    """Hilbert-Schmidt norm of the anti-Hermitian part, ||A - A^dagger||_2."""
    a = as_matrix(a)
    return float(np.linalg.norm(a - a.conj().T))


def hs_inner(a: np.ndarray, b: np.ndarray) -> complex:
    """Hilbert-Schmidt inner product tr(A^dagger B)."""
    a = as_matrix(a)
    b = as_matrix(b)
    if a.shape != b.shape:
        raise ValueError(f"dimension mismatch: {a.shape[0]} vs {b.shape[0]}")
    return complex(np.trace(a.conj().T @ b))


def hs_norm(a: np.ndarray) -> float:
    """Hilbert-Schmidt (Frobenius) norm sqrt(tr A^dagger A)."""
    return float(np.linalg.norm(as_matrix(a)))


@dataclass(frozen=True)
class EigenDecomposition:
    """Spectral decomposition A = U diag(eigenvalues) U^dagger.

    Eigenvalues are real and sorted ascending; columns of ``unitary`` are the
    matching eigenvectors.
    """

    eigenvalues: np.ndarray
    unitary: np.ndarray

    @property
    def dim(self) -> int:
        return len(self.eigenvalues)

    def reconstruct(self) -> np.ndarray:
        return (self.unitary * self.eigenvalues) @ self.unitary.conj().T

    def rebuild(self, new_eigenvalues: np.ndarray) -> np.ndarray:
        """U diag(new_eigenvalues) U^dagger in the same eigenbasis."""
        return (self.unitary * np.asarray(new_eigenvalues)) @ self.unitary.conj().T


def eig_hermitian(a: np.ndarray, tol: float = DEFAULT_TOL) -> EigenDecomposition:
    """Eigendecomposition of a Hermitian matrix.

    The input must be Hermitian within ``tol`` (measured as ||A - A^dagger||_2);
    it is symmetrized before decomposition so roundoff asymmetry cannot leak
    into the spectrum. Eigenvalues come back sorted ascending, and repeated
    calls on the same input give bitwise-identical results.
    """
    a = as_matrix(a)
    asym = asymmetry(a)
    if asym > tol:
        raise ValueError(f"matrix is not Hermitian: asymmetry {asym:.3e} > tol {tol:.3e}")
    h = (a + a.conj().T) / 2
    w, u = np.linalg.eigh(h)
    return EigenDecomposition(eigenvalues=w, unitary=u)


def is_psd(a: np.ndarray, tol: float = DEFAULT_TOL) -> bool:
    """True iff the Hermitian matrix ``a`` has min eigenvalue >= -tol."""
    dec = eig_hermitian(a, tol)
    return bool(dec.eigenvalues[0] >= -tol)

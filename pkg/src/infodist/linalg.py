"""Dense complex linear-algebra kernel.

Every matrix function here goes through a Hermitian eigendecomposition:
all operators produced by the higher layers are Hermitian by construction,
and the spectral route keeps a single code path that is exact up to
eigensolver accuracy. Eigenvector ordering and phases follow a fixed
convention so that repeated runs produce identical output.
"""

from __future__ import annotations

from typing import NamedTuple

import numpy as np

from .errors import CapacityError, ContractError, PositivityError

# Largest total dimension any operation will produce.
MAX_DIM = 4096

# Max-abs tolerance for accepting a matrix as Hermitian.
HERMITIAN_TOL = 1e-9

# Eigenvalues of a nominally PSD matrix in [-PSD_CLIP_TOL, 0) are clipped to 0.
PSD_CLIP_TOL = 1e-10

_TIE_TOL = 1e-12
_PHASE_TOL = 1e-12


class EigenSystem(NamedTuple):
    """Spectral data of a Hermitian matrix.

    ``eigenvalues`` is real and ascending; ``eigenvectors`` holds the matching
    orthonormal columns with a deterministic phase and tie-break order.
    """

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray


def as_operator(m, name: str = "matrix") -> np.ndarray:
    """Validate a dense square complex matrix with finite entries."""
    a = np.asarray(m, dtype=complex)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ContractError(f"{name} must be square, got shape {a.shape}")
    if not np.all(np.isfinite(a.real)) or not np.all(np.isfinite(a.imag)):
        raise ContractError(f"{name} contains non-finite entries")
    return a


def hermiticity_defect(m) -> float:
    """Max-abs deviation of m from its conjugate transpose."""
    a = np.asarray(m, dtype=complex)
    return float(np.max(np.abs(a - a.conj().T))) if a.size else 0.0


def require_hermitian(m, tol: float = HERMITIAN_TOL, name: str = "matrix") -> np.ndarray:
    """Return the Hermitian part of m, rejecting defects above tol."""
    a = as_operator(m, name)
    defect = hermiticity_defect(a)
    if defect > tol:
        raise ContractError(
            f"{name} is not Hermitian: max deviation {defect:.3e} exceeds {tol:.1e}"
        )
    return (a + a.conj().T) / 2


def tensor_product(a, b, max_dim: int = MAX_DIM) -> np.ndarray:
    """Kronecker product with a capacity guard on the combined dimension."""
    a = as_operator(a, "a")
    b = as_operator(b, "b")
    total = a.shape[0] * b.shape[0]
    if total > max_dim:
        raise CapacityError(
            f"combined dimension {total} exceeds the configured maximum {max_dim}"
        )
    return np.kron(a, b)


def _fix_phases(v: np.ndarray) -> np.ndarray:
    """Rotate each column so its first nonzero component is real positive."""
    v = v.copy()
    for k in range(v.shape[1]):
        col = v[:, k]
        nz = np.flatnonzero(np.abs(col) > _PHASE_TOL)
        if nz.size:
            lead = col[nz[0]]
            v[:, k] = col * (lead.conjugate() / abs(lead))
    return v


def _tie_broken_order(w: np.ndarray, v: np.ndarray) -> np.ndarray:
    """Order for ascending eigenvalues, breaking ties lexicographically on the vectors."""
    n = len(w)
    scale = max(1.0, float(np.max(np.abs(w)))) if n else 1.0

    def key(i: int):
        col = v[:, i]
        return tuple(x for c in col for x in (c.real, c.imag))

    order: list[int] = []
    i = 0
    while i < n:
        j = i + 1
        while j < n and w[j] - w[j - 1] <= _TIE_TOL * scale:
            j += 1
        order.extend(sorted(range(i, j), key=key))
        i = j
    return np.array(order, dtype=int)


def eigendecompose_hermitian(m) -> EigenSystem:
    """Eigendecomposition of a Hermitian matrix with deterministic output.

    Eigenvalues come out ascending; degenerate groups are ordered
    lexicographically on the phase-fixed eigenvectors.
    """
    h = require_hermitian(m)
    w, v = np.linalg.eigh(h)
    v = _fix_phases(v)
    order = _tie_broken_order(w, v)
    return EigenSystem(w[order], v[:, order])


def matrix_exp_hermitian(h, scale: complex) -> np.ndarray:
    """exp(scale * h) for Hermitian h via the spectral decomposition."""
    w, v = eigendecompose_hermitian(h)
    return (v * np.exp(scale * w)) @ v.conj().T


def hermitian_sqrt(p) -> np.ndarray:
    """PSD square root of a Hermitian PSD matrix.

    Eigenvalues in [-PSD_CLIP_TOL, 0) are treated as roundoff and clipped to
    zero; anything below that floor raises PositivityError.
    """
    w, v = eigendecompose_hermitian(p)
    if w.size and w[0] < -PSD_CLIP_TOL:
        raise PositivityError(
            f"matrix is not positive semidefinite: eigenvalue {w[0]:.3e} "
            f"below -{PSD_CLIP_TOL:.0e}"
        )
    w = np.clip(w, 0.0, None)
    return (v * np.sqrt(w)) @ v.conj().T


def operator_norm(m) -> float:
    """Largest singular value, computed from the spectrum of m†m."""
    a = as_operator(m)
    w = np.linalg.eigvalsh(a.conj().T @ a)
    return float(np.sqrt(max(float(w[-1]), 0.0)))

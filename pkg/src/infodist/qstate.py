"""Quantum-state layer: density operators, pure states, bipartite embedding,
partial trace, purification, and unitary evolution.

States are plain complex ndarrays (vectors for pure states, matrices for
density operators); the ``require_*`` validators enforce the type contracts
at API boundaries. All functions are pure; treat returned arrays as
immutable.
"""

from __future__ import annotations

import numpy as np

from .errors import ContractError, PositivityError
from .linalg import (
    HERMITIAN_TOL,
    MAX_DIM,
    PSD_CLIP_TOL,
    as_operator,
    eigendecompose_hermitian,
    hermiticity_defect,
    tensor_product,
)

TRACE_TOL = 1e-10
NORM_TOL = 1e-10
UNITARY_TOL = 1e-9


def require_state(psi, name: str = "state") -> np.ndarray:
    """Validate a normalized pure-state vector."""
    v = np.asarray(psi, dtype=complex)
    if v.ndim != 1 or v.size == 0:
        raise ContractError(f"{name} must be a nonempty vector, got shape {v.shape}")
    if not np.all(np.isfinite(v.real)) or not np.all(np.isfinite(v.imag)):
        raise ContractError(f"{name} contains non-finite entries")
    norm_sq = float(np.sum(np.abs(v) ** 2))
    if abs(norm_sq - 1.0) > NORM_TOL:
        raise ContractError(
            f"{name} is not normalized: |norm^2 - 1| = {abs(norm_sq - 1.0):.3e}"
        )
    return v


def require_density(rho, name: str = "density operator") -> np.ndarray:
    """Validate a unit-trace Hermitian PSD matrix."""
    a = as_operator(rho, name)
    tr = complex(np.trace(a))
    if abs(tr - 1.0) > TRACE_TOL:
        raise ContractError(f"{name} has trace {tr:.12g}, expected 1")
    defect = hermiticity_defect(a)
    if defect > HERMITIAN_TOL:
        raise ContractError(
            f"{name} is not Hermitian: max deviation {defect:.3e}"
        )
    w = np.linalg.eigvalsh((a + a.conj().T) / 2)
    if w[0] < -PSD_CLIP_TOL:
        raise PositivityError(
            f"{name} has negative eigenvalue {w[0]:.3e} below -{PSD_CLIP_TOL:.0e}"
        )
    return a


def projector(psi) -> np.ndarray:
    """Rank-1 projector onto a normalized vector."""
    v = require_state(psi)
    return np.outer(v, v.conj())


def unitarity_defect(u) -> float:
    """Max-abs deviation of u†u from the identity."""
    a = np.asarray(u, dtype=complex)
    return float(np.max(np.abs(a.conj().T @ a - np.eye(a.shape[0]))))


def require_unitary(u, tol: float = UNITARY_TOL, name: str = "unitary") -> np.ndarray:
    a = as_operator(u, name)
    defect = unitarity_defect(a)
    if defect > tol:
        raise ContractError(
            f"{name} is not unitary: max |u†u - 1| = {defect:.3e} exceeds {tol:.1e}"
        )
    return a


def embed(op, side: str, dims: tuple[int, int], max_dim: int = MAX_DIM) -> np.ndarray:
    """Extend a single-factor operator to the composite space.

    Side "A" gives op ⊗ 1, side "B" gives 1 ⊗ op.
    """
    dim_a, dim_b = dims
    a = as_operator(op, "op")
    if side == "A":
        if a.shape[0] != dim_a:
            raise ContractError(
                f"op has dimension {a.shape[0]}, expected {dim_a} for side A"
            )
        return tensor_product(a, np.eye(dim_b), max_dim=max_dim)
    if side == "B":
        if a.shape[0] != dim_b:
            raise ContractError(
                f"op has dimension {a.shape[0]}, expected {dim_b} for side B"
            )
        return tensor_product(np.eye(dim_a), a, max_dim=max_dim)
    raise ContractError(f"side must be 'A' or 'B', got {side!r}")


def partial_trace(rho, dims: tuple[int, int], keep: str) -> np.ndarray:
    """Reduce a bipartite density operator to one factor."""
    dim_a, dim_b = dims
    a = as_operator(rho, "rho")
    if a.shape[0] != dim_a * dim_b:
        raise ContractError(
            f"rho has dimension {a.shape[0]}, not factorizable as {dim_a}x{dim_b}"
        )
    r = a.reshape(dim_a, dim_b, dim_a, dim_b)
    if keep == "A":
        return np.einsum("ijkj->ik", r)
    if keep == "B":
        return np.einsum("ijil->jl", r)
    raise ContractError(f"keep must be 'A' or 'B', got {keep!r}")


def purify(sigma) -> np.ndarray:
    """Vector on system ⊗ environment whose environment trace returns sigma.

    The environment copy has the same dimension as the system. Construction:
    sum_i sqrt(lambda_i) |v_i> ⊗ |i>, with (lambda_i, v_i) in the ascending
    deterministic eigen-order; zero eigenvalues keep their basis slots with
    coefficient 0.
    """
    s = require_density(sigma, "sigma")
    w, v = eigendecompose_hermitian(s)
    # eigenvalues at numerical zero must carry coefficient exactly 0, or the
    # square root amplifies their roundoff into spurious Schmidt weight
    w = np.where(w < PSD_CLIP_TOL, 0.0, w)
    amp = (v * np.sqrt(w)).reshape(-1)
    return amp / np.linalg.norm(amp)


def evolve(rho, u) -> np.ndarray:
    """Conjugate a density operator by a unitary: u rho u†."""
    r = require_density(rho, "rho")
    w = require_unitary(u, name="u")
    if w.shape[0] != r.shape[0]:
        raise ContractError(
            f"dimension mismatch: rho is {r.shape[0]}, u is {w.shape[0]}"
        )
    out = w @ r @ w.conj().T
    return (out + out.conj().T) / 2

"""Distinguishability measures.

Uhlmann fidelity F(s0, s1) = tr sqrt(sqrt(s0) s1 sqrt(s0)), the Bhattacharyya
overlap of measurement statistics, and the projective measurement that
attains the fidelity as the minimum overlap. Random measurement generators
back the minimality tests.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ContractError
from .linalg import as_operator, eigendecompose_hermitian, hermitian_sqrt
from .qstate import require_density

# Overshoot beyond [0, 1] tolerated (and clipped) before it is treated as an error.
FIDELITY_CLIP_TOL = 1e-9

# Structural tolerance for measurement families.
MEASUREMENT_TOL = 1e-9

# Eigenvalues of the reference state above this count as its support.
SUPPORT_TOL = 1e-10


@dataclass(frozen=True)
class Pvm:
    """Projection valued measure: orthogonal projectors summing to identity."""

    projectors: tuple[np.ndarray, ...]

    def __post_init__(self):
        if not self.projectors:
            raise ContractError("a PVM needs at least one projector")
        mats = tuple(as_operator(p, f"projector {i}") for i, p in enumerate(self.projectors))
        object.__setattr__(self, "projectors", mats)
        dim = mats[0].shape[0]
        for i, p in enumerate(mats):
            if p.shape[0] != dim:
                raise ContractError(f"projector {i} has dimension {p.shape[0]}, expected {dim}")
            if np.max(np.abs(p - p.conj().T)) > MEASUREMENT_TOL:
                raise ContractError(f"projector {i} is not Hermitian")
            if np.max(np.abs(p @ p - p)) > MEASUREMENT_TOL:
                raise ContractError(f"projector {i} is not idempotent")
        for i in range(len(mats)):
            for j in range(i + 1, len(mats)):
                if np.max(np.abs(mats[i] @ mats[j])) > MEASUREMENT_TOL:
                    raise ContractError(f"projectors {i} and {j} are not orthogonal")
        total = sum(mats)
        if np.max(np.abs(total - np.eye(dim))) > MEASUREMENT_TOL:
            raise ContractError("projectors do not sum to the identity")

    @property
    def elements(self) -> tuple[np.ndarray, ...]:
        return self.projectors

    @property
    def dim(self) -> int:
        return self.projectors[0].shape[0]


@dataclass(frozen=True)
class Povm:
    """Positive operator valued measure: PSD elements summing to identity."""

    elements: tuple[np.ndarray, ...]

    def __post_init__(self):
        if not self.elements:
            raise ContractError("a POVM needs at least one element")
        mats = tuple(as_operator(e, f"element {i}") for i, e in enumerate(self.elements))
        object.__setattr__(self, "elements", mats)
        dim = mats[0].shape[0]
        for i, e in enumerate(mats):
            if e.shape[0] != dim:
                raise ContractError(f"element {i} has dimension {e.shape[0]}, expected {dim}")
            if np.max(np.abs(e - e.conj().T)) > MEASUREMENT_TOL:
                raise ContractError(f"element {i} is not Hermitian")
            w = np.linalg.eigvalsh((e + e.conj().T) / 2)
            if w[0] < -SUPPORT_TOL:
                raise ContractError(f"element {i} has negative eigenvalue {w[0]:.3e}")
        total = sum(mats)
        if np.max(np.abs(total - np.eye(dim))) > MEASUREMENT_TOL:
            raise ContractError("elements do not sum to the identity")

    @property
    def dim(self) -> int:
        return self.elements[0].shape[0]


def fidelity(s0, s1) -> float:
    """Uhlmann fidelity between two density operators.

    Returns tr sqrt(sqrt(s0) s1 sqrt(s0)) in [0, 1]: 1 iff the states
    coincide, smaller as they become more distinguishable. Numerical
    overshoot up to FIDELITY_CLIP_TOL is clipped; anything larger raises.

    Evaluated as the nuclear norm of sqrt(s0) sqrt(s1), which equals the
    trace formula via A A† = sqrt(s0) s1 sqrt(s0). Taking singular values
    of the product directly avoids the sqrt-of-roundoff amplification that
    the literal trace-of-sqrt route suffers near coincident states.
    """
    a = require_density(s0, "s0")
    b = require_density(s1, "s1")
    if a.shape != b.shape:
        raise ContractError(f"dimension mismatch: {a.shape[0]} vs {b.shape[0]}")
    f = float(np.sum(np.linalg.svd(hermitian_sqrt(a) @ hermitian_sqrt(b), compute_uv=False)))
    if f > 1.0 + FIDELITY_CLIP_TOL or f < -FIDELITY_CLIP_TOL:
        raise ContractError(f"fidelity {f!r} overshoots [0, 1] beyond tolerance")
    return min(max(f, 0.0), 1.0)


def outcome_distribution(rho, measurement: Pvm | Povm) -> np.ndarray:
    """Born-rule outcome probabilities tr(rho E_i) for a measurement family."""
    r = require_density(rho, "rho")
    if r.shape[0] != measurement.dim:
        raise ContractError(
            f"dimension mismatch: state is {r.shape[0]}, measurement is {measurement.dim}"
        )
    p = np.array([float(np.trace(e @ r).real) for e in measurement.elements])
    if np.min(p) < -MEASUREMENT_TOL:
        raise ContractError(f"negative outcome probability {np.min(p):.3e}")
    p = np.clip(p, 0.0, None)
    if abs(float(np.sum(p)) - 1.0) > MEASUREMENT_TOL:
        raise ContractError(f"outcome probabilities sum to {np.sum(p)!r}, expected 1")
    return p


def povm_overlap(s0, s1, measurement: Pvm | Povm) -> float:
    """Bhattacharyya overlap sum_i sqrt(p0_i p1_i) of the induced statistics."""
    p0 = outcome_distribution(s0, measurement)
    p1 = outcome_distribution(s1, measurement)
    v = float(np.sum(np.sqrt(p0 * p1)))
    if v > 1.0 + FIDELITY_CLIP_TOL:
        raise ContractError(f"overlap {v!r} overshoots 1 beyond tolerance")
    return min(max(v, 0.0), 1.0)


def optimal_pvm(s0, s1) -> Pvm:
    """Projective measurement whose overlap attains the fidelity.

    Measures in the eigenbasis of M = s1^{-1/2} sqrt(sqrt(s1) s0 sqrt(s1))
    s1^{-1/2}, with the inverse taken on the support of s1; the kernel of s1
    enters as one orthogonal projector block. M s1 M equals s0 on the
    support, which gives p0 = m^2 p1 outcome-wise and hence overlap
    sum_i m_i p1_i = tr sqrt(sqrt(s1) s0 sqrt(s1)) = F(s0, s1).
    """
    a = require_density(s0, "s0")
    b = require_density(s1, "s1")
    if a.shape != b.shape:
        raise ContractError(f"dimension mismatch: {a.shape[0]} vs {b.shape[0]}")
    dim = a.shape[0]

    w, v = eigendecompose_hermitian(b)
    on_support = w > SUPPORT_TOL
    v_sup = v[:, on_support]
    v_ker = v[:, ~on_support]

    root_b = hermitian_sqrt(b)
    g = hermitian_sqrt(root_b @ a @ root_b)
    inv_root = (v_sup / np.sqrt(w[on_support])) @ v_sup.conj().T
    m = inv_root @ g @ inv_root

    m_sup = v_sup.conj().T @ m @ v_sup
    _, basis = eigendecompose_hermitian((m_sup + m_sup.conj().T) / 2)
    columns = v_sup @ basis

    projectors = [np.outer(c, c.conj()) for c in columns.T]
    if v_ker.shape[1]:
        projectors.append(v_ker @ v_ker.conj().T)
    if not projectors:
        projectors = [np.eye(dim, dtype=complex)]
    return Pvm(tuple(projectors))


def _partition(dim: int, n_outcomes: int) -> list[np.ndarray]:
    """Fixed partition of range(dim) into n_outcomes contiguous groups."""
    base, extra = divmod(dim, n_outcomes)
    sizes = [base + (1 if i < extra else 0) for i in range(n_outcomes)]
    bounds = np.cumsum([0] + sizes)
    return [np.arange(bounds[i], bounds[i + 1]) for i in range(n_outcomes)]


def haar_unitary(dim: int, rng: np.random.Generator) -> np.ndarray:
    """Haar-distributed unitary via QR of a Ginibre matrix with phase fix."""
    g = (rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))) / np.sqrt(2)
    q, r = np.linalg.qr(g)
    d = np.diag(r)
    return q * (d / np.abs(d))


def random_pvm(dim: int, n_outcomes: int, seed: int) -> Pvm:
    """Haar-random PVM: a fixed basis partition conjugated by a random unitary.

    Deterministic for a given seed.
    """
    if n_outcomes < 1:
        raise ContractError("n_outcomes must be at least 1")
    if n_outcomes > dim:
        raise ContractError(f"n_outcomes {n_outcomes} exceeds dimension {dim}")
    rng = np.random.default_rng(seed)
    u = haar_unitary(dim, rng)
    projectors = []
    for group in _partition(dim, n_outcomes):
        cols = u[:, group]
        projectors.append(cols @ cols.conj().T)
    return Pvm(tuple(projectors))


def random_povm(dim: int, n_elements: int, seed: int) -> Povm:
    """Random POVM: Wishart-distributed elements renormalized to completeness.

    Deterministic for a given seed; used as the general-measurement oracle in
    the minimality tests.
    """
    if n_elements < 1:
        raise ContractError("n_elements must be at least 1")
    rng = np.random.default_rng(seed)
    raw = []
    for _ in range(n_elements):
        g = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
        raw.append(g @ g.conj().T)
    total = sum(raw)
    w, v = eigendecompose_hermitian(total)
    inv_root = (v / np.sqrt(w)) @ v.conj().T
    elements = tuple(inv_root @ a @ inv_root for a in raw)
    return Povm(elements)

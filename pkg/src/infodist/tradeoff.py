"""Interaction-strength trade-off for distributing a classical bit.

A bit is encoded in one of two orthogonal pure states of system A, system B
starts in a fixed state sigma, and the composite evolves unitarily. When the
evolution conserves L = L_A + L_B + L_int, the post-interaction
distinguishability on the two sides obeys

    |<psi0| L_A |psi1>|  <=  ||L_B|| F(rho0_A, rho1_A)
                           + ||L_A|| F(rho0_B, rho1_B)
                           + 2 ||L_int||.

This module evaluates every term of that bound, specializes it to the
Hamiltonian as its own conserved quantity, derives the no-go verdict for
perfect distribution, checks the commutator identity behind the left-hand
side, and builds the exactly solvable two-spin demonstration scenario.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ContractError
from .linalg import (
    matrix_exp_hermitian,
    operator_norm,
    require_hermitian,
)
from .qstate import (
    embed,
    evolve,
    partial_trace,
    projector,
    require_density,
    require_state,
    require_unitary,
)
from .fidelity import fidelity

# The conserved-quantity hypothesis ||U L U† - L|| must hold to this tolerance.
CONSERVATION_TOL = 1e-6

# The bound is declared violated when slack drops below -SLACK_TOL.
SLACK_TOL = 1e-8

ORTHOGONALITY_TOL = 1e-9


@dataclass(frozen=True)
class Scenario:
    """Full description of one information-distribution experiment.

    ``part_a``, ``part_b``, ``part_int`` form the conserved quantity
    L = L_A + L_B + L_int; in the energy-bound case they are the Hamiltonian
    pieces and generate the evolution U = exp(-i H time). An explicit
    ``unitary`` overrides the generated evolution (``time`` is then ignored),
    in which case conservation of L is a hypothesis that gets checked, not
    assumed.
    """

    dim_a: int
    dim_b: int
    part_a: np.ndarray
    part_b: np.ndarray
    part_int: np.ndarray
    psi0: np.ndarray
    psi1: np.ndarray
    sigma: np.ndarray
    time: float
    unitary: np.ndarray | None = None

    def __post_init__(self):
        if self.dim_a < 1 or self.dim_b < 1:
            raise ContractError("dimensions must be positive")
        dim = self.dim_a * self.dim_b
        part_a = require_hermitian(self.part_a, name="part_a")
        part_b = require_hermitian(self.part_b, name="part_b")
        part_int = require_hermitian(self.part_int, name="part_int")
        if part_a.shape[0] != self.dim_a:
            raise ContractError(f"part_a has dimension {part_a.shape[0]}, expected {self.dim_a}")
        if part_b.shape[0] != self.dim_b:
            raise ContractError(f"part_b has dimension {part_b.shape[0]}, expected {self.dim_b}")
        if part_int.shape[0] != dim:
            raise ContractError(f"part_int has dimension {part_int.shape[0]}, expected {dim}")
        psi0 = require_state(self.psi0, "psi0")
        psi1 = require_state(self.psi1, "psi1")
        if psi0.size != self.dim_a:
            raise ContractError(f"psi0 has dimension {psi0.size}, expected {self.dim_a}")
        if psi1.size != self.dim_a:
            raise ContractError(f"psi1 has dimension {psi1.size}, expected {self.dim_a}")
        overlap = abs(complex(psi0.conj() @ psi1))
        if overlap > ORTHOGONALITY_TOL:
            raise ContractError(
                f"psi0 and psi1 are not orthogonal: |<psi0|psi1>| = {overlap:.3e}"
            )
        sigma = require_density(self.sigma, "sigma")
        if sigma.shape[0] != self.dim_b:
            raise ContractError(f"sigma has dimension {sigma.shape[0]}, expected {self.dim_b}")
        if not np.isfinite(self.time) or self.time < 0:
            raise ContractError(f"time must be a nonnegative real, got {self.time!r}")
        unitary = self.unitary
        if unitary is not None:
            unitary = require_unitary(unitary, name="unitary")
            if unitary.shape[0] != dim:
                raise ContractError(
                    f"unitary has dimension {unitary.shape[0]}, expected {dim}"
                )
        for field, value in (
            ("part_a", part_a), ("part_b", part_b), ("part_int", part_int),
            ("psi0", psi0), ("psi1", psi1), ("sigma", sigma), ("unitary", unitary),
        ):
            object.__setattr__(self, field, value)
        object.__setattr__(self, "time", float(self.time))

    @property
    def dims(self) -> tuple[int, int]:
        return (self.dim_a, self.dim_b)

    @property
    def generated(self) -> bool:
        """True when the evolution is exp(-i H time) for H the conserved total."""
        return self.unitary is None

    def total_conserved(self) -> np.ndarray:
        """L_A ⊗ 1 + 1 ⊗ L_B + L_int on the composite space."""
        return (
            embed(self.part_a, "A", self.dims)
            + embed(self.part_b, "B", self.dims)
            + self.part_int
        )

    def evolution_unitary(self) -> np.ndarray:
        if self.unitary is not None:
            return self.unitary
        return matrix_exp_hermitian(self.total_conserved(), -1j * self.time)


@dataclass(frozen=True)
class EvolvedStates:
    """Joint and reduced post-interaction states for both encodings."""

    rho0: np.ndarray
    rho1: np.ndarray
    rho0_a: np.ndarray
    rho1_a: np.ndarray
    rho0_b: np.ndarray
    rho1_b: np.ndarray


@dataclass(frozen=True)
class TradeoffReport:
    """All terms of the bound for one scenario.

    rhs = norm_b * fid_a + norm_a * fid_b + 2 * norm_int, slack = rhs - lhs,
    and holds means slack >= -SLACK_TOL (or the tolerance passed to the
    check). conservation_residual is ||U L U† - L||.
    """

    lhs: float
    fid_a: float
    fid_b: float
    norm_a: float
    norm_b: float
    norm_int: float
    rhs: float
    slack: float
    conservation_residual: float
    holds: bool


@dataclass(frozen=True)
class NoncommReport:
    """Commutators N_j = [E_j, L_A] and the residual of
    |tr(N0 N1 E0) - |<psi0|L_A|psi1>|^2|."""

    n0: np.ndarray
    n1: np.ndarray
    identity_residual: float


def _evolve_with(s: Scenario, u: np.ndarray) -> EvolvedStates:
    sigma = s.sigma
    states = []
    for psi in (s.psi0, s.psi1):
        initial = np.kron(projector(psi), sigma)
        states.append(evolve(initial, u))
    rho0, rho1 = states
    return EvolvedStates(
        rho0=rho0,
        rho1=rho1,
        rho0_a=partial_trace(rho0, s.dims, "A"),
        rho1_a=partial_trace(rho1, s.dims, "A"),
        rho0_b=partial_trace(rho0, s.dims, "B"),
        rho1_b=partial_trace(rho1, s.dims, "B"),
    )


def evolve_scenario(s: Scenario) -> EvolvedStates:
    """Post-interaction joint states U(|psi_j><psi_j| ⊗ sigma)U† and their reductions."""
    return _evolve_with(s, s.evolution_unitary())


def encoding_matrix_element(psi0, psi1, l_a) -> float:
    """|<psi0| L_A |psi1>|, the noncommutativity term on the bound's left side."""
    v0 = require_state(psi0, "psi0")
    v1 = require_state(psi1, "psi1")
    op = require_hermitian(l_a, name="l_a")
    if op.shape[0] != v0.size or v0.size != v1.size:
        raise ContractError("dimension mismatch between states and operator")
    return abs(complex(v0.conj() @ op @ v1))


def check_tradeoff(s: Scenario, slack_tol: float = SLACK_TOL) -> TradeoffReport:
    """Evaluate the conserved-quantity bound for one scenario.

    Requires ||U L U† - L|| <= CONSERVATION_TOL: the hypothesis is checked
    rather than assumed, since hand-authored unitaries violate it silently.
    """
    u = s.evolution_unitary()
    total = s.total_conserved()
    residual = operator_norm(u @ total @ u.conj().T - total)
    if residual > CONSERVATION_TOL:
        raise ContractError(
            "conserved-quantity hypothesis fails: ||U L U† - L|| = "
            f"{residual:.3e} exceeds {CONSERVATION_TOL:.1e}"
        )

    ev = _evolve_with(s, u)
    lhs = encoding_matrix_element(s.psi0, s.psi1, s.part_a)
    fid_a = fidelity(ev.rho0_a, ev.rho1_a)
    fid_b = fidelity(ev.rho0_b, ev.rho1_b)
    norm_a = operator_norm(s.part_a)
    norm_b = operator_norm(s.part_b)
    norm_int = operator_norm(s.part_int)
    rhs = norm_b * fid_a + norm_a * fid_b + 2.0 * norm_int
    slack = rhs - lhs
    return TradeoffReport(
        lhs=lhs,
        fid_a=fid_a,
        fid_b=fid_b,
        norm_a=norm_a,
        norm_b=norm_b,
        norm_int=norm_int,
        rhs=rhs,
        slack=slack,
        conservation_residual=residual,
        holds=bool(slack >= -slack_tol),
    )


def check_energy_tradeoff(s: Scenario, slack_tol: float = SLACK_TOL) -> TradeoffReport:
    """Energy special case: the Hamiltonian triple is its own conserved quantity.

    Only applies to generated evolution, where conservation holds by
    construction; explicit-unitary scenarios must go through check_tradeoff.
    """
    if not s.generated:
        raise ContractError(
            "explicit-unitary scenario: the energy bound assumes generated "
            "evolution, use check_tradeoff instead"
        )
    return check_tradeoff(s, slack_tol=slack_tol)


def nogo_verdict(report: TradeoffReport) -> str:
    """"forbidden" when 2||L_int|| < lhs, so both fidelities cannot vanish.

    "allowed" makes no claim of achievability.
    """
    return "forbidden" if 2.0 * report.norm_int < report.lhs else "allowed"


def noncomm_identity(psi0, psi1, l_a) -> NoncommReport:
    """Check tr(N0 N1 E0) = |<psi0|L_A|psi1>|^2 for N_j = [E_j, L_A].

    E_j are the encoding projectors; the identity expresses the bound's
    left-hand side through the noncommutativity of the encoding with L_A.
    """
    v0 = require_state(psi0, "psi0")
    v1 = require_state(psi1, "psi1")
    op = require_hermitian(l_a, name="l_a")
    if op.shape[0] != v0.size or v0.size != v1.size:
        raise ContractError("dimension mismatch between states and operator")
    overlap = abs(complex(v0.conj() @ v1))
    if overlap > ORTHOGONALITY_TOL:
        raise ContractError(
            f"psi0 and psi1 are not orthogonal: |<psi0|psi1>| = {overlap:.3e}"
        )
    e0 = projector(v0)
    e1 = projector(v1)
    n0 = e0 @ op - op @ e0
    n1 = e1 @ op - op @ e1
    trace_value = complex(np.trace(n0 @ n1 @ e0))
    lhs_squared = abs(complex(v0.conj() @ op @ v1)) ** 2
    return NoncommReport(
        n0=n0,
        n1=n1,
        identity_residual=abs(trace_value - lhs_squared),
    )


def build_spin_demo(alpha: complex, beta: complex, eps: float, time: float) -> Scenario:
    """Two-spin scenario with an arbitrarily weak interaction that still
    distributes the bit perfectly when the encoding commutes with L_A.

    System A is a spin-1/2 with L_A the z-component diag(1/2, -1/2) in the
    basis {|1>, |-1>}; system B is a spin-1/2 with L_B = 1 starting in
    (|1> + |-1>)/sqrt(2); the interaction is
    eps (|1><1| ⊗ |1><1| + |-1><-1| ⊗ |-1><-1|), of norm exactly eps.
    Encodings: psi1 = alpha|1> + beta|-1>, psi0 = conj(beta)|1> - conj(alpha)|-1>.
    At time pi/(2 eps) the two reduced B states become orthogonal.
    """
    alpha = complex(alpha)
    beta = complex(beta)
    norm_sq = abs(alpha) ** 2 + abs(beta) ** 2
    if abs(norm_sq - 1.0) > 1e-10:
        raise ContractError(
            f"|alpha|^2 + |beta|^2 = {norm_sq!r}, expected 1"
        )
    if not (eps > 0):
        raise ContractError(f"eps must be positive, got {eps!r}")

    up = np.array([1.0, 0.0], dtype=complex)
    down = np.array([0.0, 1.0], dtype=complex)
    s_z = np.diag([0.5, -0.5]).astype(complex)
    h_b = np.eye(2, dtype=complex)
    h_int = eps * (
        np.kron(np.outer(up, up.conj()), np.outer(up, up.conj()))
        + np.kron(np.outer(down, down.conj()), np.outer(down, down.conj()))
    )
    psi1 = alpha * up + beta * down
    psi0 = np.conj(beta) * up - np.conj(alpha) * down
    omega = (up + down) / np.sqrt(2)
    return Scenario(
        dim_a=2,
        dim_b=2,
        part_a=s_z,
        part_b=h_b,
        part_int=h_int,
        psi0=psi0,
        psi1=psi1,
        sigma=np.outer(omega, omega.conj()),
        time=time,
    )

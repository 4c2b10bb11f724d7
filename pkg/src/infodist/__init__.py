"""Numerical toolkit for the interaction-strength trade-off in distributing
a classical bit between two interacting quantum systems."""

from .errors import CapacityError, ContractError, PositivityError, ScenarioFileError
from .linalg import (
    EigenSystem,
    eigendecompose_hermitian,
    hermitian_sqrt,
    matrix_exp_hermitian,
    operator_norm,
    tensor_product,
)
from .qstate import embed, evolve, partial_trace, projector, purify
from .fidelity import (
    Povm,
    Pvm,
    fidelity,
    optimal_pvm,
    outcome_distribution,
    povm_overlap,
    random_povm,
    random_pvm,
)
from .tradeoff import (
    EvolvedStates,
    NoncommReport,
    Scenario,
    TradeoffReport,
    build_spin_demo,
    check_energy_tradeoff,
    check_tradeoff,
    encoding_matrix_element,
    evolve_scenario,
    nogo_verdict,
    noncomm_identity,
)
from .optimize import (
    InteractionParametrization,
    OptimizationResult,
    SweepRow,
    SweepSummary,
    hermitian_basis,
    minimize_interaction,
    random_commuting_scenario,
    random_scenario,
    sweep_slack,
)

__version__ = "0.1.0"

__all__ = [
    "CapacityError",
    "ContractError",
    "PositivityError",
    "ScenarioFileError",
    "EigenSystem",
    "eigendecompose_hermitian",
    "hermitian_sqrt",
    "matrix_exp_hermitian",
    "operator_norm",
    "tensor_product",
    "embed",
    "evolve",
    "partial_trace",
    "projector",
    "purify",
    "Povm",
    "Pvm",
    "fidelity",
    "optimal_pvm",
    "outcome_distribution",
    "povm_overlap",
    "random_povm",
    "random_pvm",
    "EvolvedStates",
    "NoncommReport",
    "Scenario",
    "TradeoffReport",
    "build_spin_demo",
    "check_energy_tradeoff",
    "check_tradeoff",
    "encoding_matrix_element",
    "evolve_scenario",
    "nogo_verdict",
    "noncomm_identity",
    "InteractionParametrization",
    "OptimizationResult",
    "SweepRow",
    "SweepSummary",
    "hermitian_basis",
    "minimize_interaction",
    "random_commuting_scenario",
    "random_scenario",
    "sweep_slack",
    "__version__",
]

"""Exception types shared across the package."""


class ContractError(ValueError):
    """An input violates a documented precondition or invariant."""


class CapacityError(ContractError):
    """A requested operator dimension exceeds the configured capacity."""


class PositivityError(ContractError):
    """A matrix expected to be positive semidefinite has a negative eigenvalue."""


class ScenarioFileError(ValueError):
    """A scenario or report document failed to parse or validate.

    ``field`` is the path of the offending entry, e.g. ``"psi1"`` or ``"dims.a"``.
    """

    def __init__(self, field: str, message: str):
        self.field = field
        super().__init__(f"{field}: {message}")

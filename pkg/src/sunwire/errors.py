"""Exception types shared across the simulator."""


class DomainError(ValueError):
    """An argument left the physical domain it is defined on (e.g. a wire
    position outside [0, L])."""


class ContractViolation(RuntimeError):
    """An internal contract was broken by calling code. Signals an algorithm
    bug, not an environmental condition."""


class ScenarioError(ValueError):
    """A scenario file failed to parse or violated an invariant.

    ``key`` names the offending scenario key when one is known.
    """

    def __init__(self, message: str, key: str | None = None, line: int | None = None):
        self.key = key
        self.line = line
        prefix = ""
        if line is not None:
            prefix = f"line {line}: "
        if key is not None:
            prefix += f"{key}: "
        super().__init__(prefix + message)

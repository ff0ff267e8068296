"""Exception types shared across the toolkit."""


class DomainError(ValueError):
    """An input lies outside the domain an operation is defined on."""


class InfeasibleDesignError(Exception):
    """No candidate diameter satisfies the requested safety margin."""

    def __init__(self, message: str, best_diameter: float, best_margin: float):
        super().__init__(message)
        self.best_diameter = best_diameter
        self.best_margin = best_margin


class OpeningError(DomainError):
    """The object cannot be accommodated by the gripper opening range."""

    def __init__(self, message: str, fit: str):
        super().__init__(message)
        self.fit = fit

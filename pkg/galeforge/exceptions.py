"""Library specific exception definitions."""
from typing import Any, Sequence


class GaleforgeError(Exception):
    """Base galeforge exception that all others inherit.

    This is done to not pollute the built-in exceptions, which *could* result
    in unintended errors being unexpectedly and incorrectly handled within
    implementers code. Each class carries the process exit code the command
    line front end reports for it.
    """

    exit_code = 1


class InvalidInput(GaleforgeError):
    """Malformed input data (shapes, JSON, labels)."""


class NonSaturated(InvalidInput):
    """The lattice quotient has torsion."""

    def __init__(self, invariant_factors: Sequence[int]):
        """
        :param invariant_factors:
            Nonzero Smith normal form invariant factors of the matrix.
        """
        self.invariant_factors = tuple(invariant_factors)
        super().__init__(self.error_string)

    @property
    def error_string(self):
        return (
            "image of the matrix is not saturated "
            f"(invariant factors {list(self.invariant_factors)})"
        )


class InvalidArrangement(InvalidInput):
    """A polarized arrangement failed validation."""

    def __init__(self, report: Any):
        """
        :param ValidationReport report:
            The failed validation report.
        """
        self.report = report
        super().__init__("; ".join(report.failures))


class InvalidGraph(InvalidInput):
    """A directed graph is unusable as a source of an arrangement."""


class TooLarge(InvalidInput):
    """An enumeration would exceed its configured cap."""

    def __init__(self, size: int, cap: int):
        self.size = size
        self.cap = cap
        super().__init__(f"{size} edges exceeds the enumeration cap of {cap}")


class NotABasis(InvalidInput):
    """A subset of edges does not index a basis."""

    def __init__(self, subset: Sequence[Any]):
        self.subset = tuple(subset)
        super().__init__(f"{list(self.subset)} is not a basis")


class NotBoundedFeasible(InvalidInput):
    """A sign vector is not a bounded feasible chamber."""

    def __init__(self, signs: Any):
        self.signs = signs
        super().__init__(f"{signs} is not bounded and feasible")


class WindowTooSmall(InvalidInput):
    """A loop chamber does not fit the truncation window."""

    def __init__(self, window: int, needed: int):
        self.window = window
        self.needed = needed
        super().__init__(f"truncation window {window} is smaller than {needed}")


class Degenerate(GaleforgeError):
    """Parameters sit on a wall where a generic choice is required."""

    exit_code = 3

    def __init__(self, reason: str):
        self.reason = reason
        super().__init__(f"degenerate parameters: {reason}")


class DegenerateEta(Degenerate):
    """The character lies in a hyperplane spanned by weights."""


class Unsupported(GaleforgeError):
    """Input describes a case the library deliberately does not handle."""

    exit_code = 4


class NonUnimodular(Unsupported):
    """A basis of weights has determinant other than plus or minus one."""

    def __init__(self, subset: Sequence[Any], det: int):
        self.subset = tuple(subset)
        self.det = det
        super().__init__(
            f"weights {list(self.subset)} have determinant {det}; "
            "orbifold quotients are not supported"
        )


class UnsupportedTwist(Unsupported):
    """The closed formula only exists for the untwisted basepoint."""

    def __init__(self, twist: Sequence[int]):
        self.twist = tuple(twist)
        super().__init__(
            f"twist {list(self.twist)} is not supported by the formula pipeline"
        )


class ConventionError(GaleforgeError):
    """A cohomological degree came out odd or negative."""

    exit_code = 2

    def __init__(self, value: int, where: str):
        self.value = value
        self.where = where
        super().__init__(f"degree {value} at {where} is not a nonnegative even integer")

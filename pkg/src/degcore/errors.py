"""Error types shared across the package.

Every failure mode callers are expected to handle gets its own class; anything
raising InternalInvariantBreach is a bug in this package, not in the input.
"""

from __future__ import annotations


class DegcoreError(Exception):
    """Base class for all package errors."""


class UnknownVertex(DegcoreError):
    """An operation referenced a vertex that is not in the graph."""


class DomainError(DegcoreError):
    """Arguments are outside the domain an operation is defined on."""


class GraphFormatError(DegcoreError):
    """Edge-list input could not be parsed."""


class PreconditionViolated(DegcoreError):
    """A documented precondition of an operation does not hold."""


class AdmissibilityViolated(DegcoreError):
    """A replay graph fails one of the admissibility requirements."""

    def __init__(self, requirement: str, detail: str = "") -> None:
        self.requirement = requirement
        msg = requirement if not detail else f"{requirement}: {detail}"
        super().__init__(msg)


class InsufficientEdges(DegcoreError):
    """The input graph has fewer edges than the extraction guarantee needs."""


class InvalidConfig(DegcoreError):
    """Extraction parameters are out of range."""


class NoJPrime(DegcoreError):
    """The bucketed family is too small to carry the required prefix mass."""


class PaletteExhausted(DegcoreError):
    """Greedy list colouring ran out of colours (unreachable if bounds hold)."""


class TooLarge(DegcoreError):
    """Input exceeds a hard size guard (brute-force oracle)."""


class InternalInvariantBreach(DegcoreError):
    """A property the algorithm is supposed to guarantee failed to hold."""

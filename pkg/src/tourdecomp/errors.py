"""Exception types shared across the package."""

from __future__ import annotations


class DigraphError(ValueError):
    """Malformed digraph input: out-of-range vertex, loop, missing edge."""


class CertificationError(AssertionError):
    """A checked rewrite step failed.

    ``vertex`` / ``edge`` / ``index`` name the offending object when known.
    """

    def __init__(self, message: str, *, vertex=None, edge=None, index=None):
        super().__init__(message)
        self.vertex = vertex
        self.edge = edge
        self.index = index


class CyclicInputError(DigraphError):
    def __init__(self, cycle):
        super().__init__(f"digraph is not acyclic; witness cycle {list(cycle)}")
        self.cycle = tuple(cycle)


class NotEulerianError(DigraphError):
    def __init__(self, vertex: int, excess: int):
        super().__init__(f"digraph is not Eulerian: vertex {vertex} has excess {excess}")
        self.vertex = vertex
        self.excess = excess


class InfeasibleCapsError(ValueError):
    """Representative caps cannot be met; ``witness`` is a Hall violator."""

    def __init__(self, message: str, witness=()):
        super().__init__(message)
        self.witness = tuple(witness)


class BudgetExceeded(RuntimeError):
    """Raised inside searches when the node or time budget runs out."""

"""Numerical tolerances shared by every module.

The active set lives in a context variable so that overrides made by the
CLI (or by a caller) stay local to the current thread / task.
"""

from __future__ import annotations

from contextlib import contextmanager
from contextvars import ContextVar
from dataclasses import dataclass, replace
from typing import Iterator


@dataclass(frozen=True)
class Tolerances:
    #: coefficients below ``magnitude_floor * max(1, max|c|)`` are pruned
    magnitude_floor: float = 1e-12
    #: a root with ``abs(|z| - 1) < circle`` lies on the unit circle
    circle: float = 1e-8
    #: roots closer than ``root_merge * max(1, |z|)`` are one repeated root
    root_merge: float = 1e-7
    #: relative circle-l2 change below which a pole is cancelled against the numerator
    cancel: float = 1e-11
    #: distance from +-1 accepted when snapping a factorization signature
    signature: float = 1e-6
    #: relative defect accepted in ``g * g~ = 1`` or ``a a~ = b b~``
    matching: float = 1e-9
    #: residual / solvability-condition threshold of the solver
    solver: float = 1e-8
    #: relative singular-value cutoff for rank decisions
    rank: float = 1e-9
    #: constraint-system residual above which a system is infeasible
    infeasible: float = 1e-7


_current: ContextVar[Tolerances] = ContextVar("toeplitz_hankel_tolerances", default=Tolerances())


def get_tolerances() -> Tolerances:
    return _current.get()


@contextmanager
def using_tolerances(**overrides: float) -> Iterator[Tolerances]:
    """Temporarily override some tolerances.

    >>> with using_tolerances(circle=1e-6):
    ...     get_tolerances().circle
    1e-06
    """
    token = _current.set(replace(_current.get(), **overrides))
    try:
        yield _current.get()
    finally:
        _current.reset(token)

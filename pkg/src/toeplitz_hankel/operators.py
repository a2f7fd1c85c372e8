"""Toeplitz, Hankel and related operators acting on rational Hardy functions.

Conventions: ``T(a) f = P(a f)`` and ``H(b) f = P(b Q(J f))``, so the
matrix of ``T(a) + H(b)`` has entries ``a_{j-k} + b_{j+k+1}``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import IndexNegative, IndexPositive, NotHardy
from .factorization import MatchingFactorization, WienerHopfFactorization
from .symbol import (
    RationalSymbol,
    as_symbol,
    check_no_circle_poles,
    circle_conjugate,
    flip_J,
    fourier_coefficients,
    is_analytic,
    project_P,
    project_Q,
)


class HardyElement(RationalSymbol):
    """A rational symbol with no poles in the closed unit disk."""

    @classmethod
    def of(cls, g) -> HardyElement:
        g = as_symbol(g)
        if isinstance(g, HardyElement):
            return g
        if not is_analytic(g):
            raise NotHardy(f"{g} is not analytic in the closed unit disk")
        return cls(g.num, g.poles, g._zeros_if_known())


def _hardy(f) -> RationalSymbol:
    return HardyElement.of(f)


def _base(fact) -> WienerHopfFactorization:
    return fact.base if isinstance(fact, MatchingFactorization) else fact


def toeplitz_apply(a, f) -> HardyElement:
    a = as_symbol(a)
    check_no_circle_poles(a)
    return HardyElement.of(project_P(a * _hardy(f)))


def hankel_apply(b, f) -> HardyElement:
    b = as_symbol(b)
    check_no_circle_poles(b)
    return HardyElement.of(project_P(b * project_Q(flip_J(_hardy(f)))))


def th_apply(a, b, f) -> HardyElement:
    """``(T(a) + H(b)) f``."""
    f = _hardy(f)
    return HardyElement.of(toeplitz_apply(a, f) + hankel_apply(b, f))


def toeplitz_right_inverse_apply(fact, f) -> HardyElement:
    """``T(plus^-1) T(minus^-1) T(t^-n) f`` for a factorization with index ``n <= 0``."""
    fact = _base(fact)
    if fact.index > 0:
        raise IndexPositive(f"right inverse needs index <= 0, got {fact.index}")
    x = project_P(_hardy(f).shift(-fact.index))
    x = project_P(fact.minus_inv * x)
    return HardyElement.of(project_P(fact.plus_inv * x))


def toeplitz_left_inverse_apply(fact, f) -> HardyElement:
    """``T(t^-n) T(plus^-1) T(minus^-1) f`` for a factorization with index ``n >= 0``."""
    fact = _base(fact)
    if fact.index < 0:
        raise IndexNegative(f"left inverse needs index >= 0, got {fact.index}")
    x = project_P(fact.minus_inv * _hardy(f))
    x = project_P(fact.plus_inv * x)
    return HardyElement.of(project_P(x.shift(-fact.index)))


def w_apply(c_fact, a_tilde_inv, phi) -> HardyElement:
    """``X - J Q c X + J Q a~^-1 phi`` with ``X = T_r^-1(c) T(a~^-1) phi``."""
    base = _base(c_fact)
    phi = _hardy(phi)
    x = toeplitz_right_inverse_apply(base, toeplitz_apply(a_tilde_inv, phi))
    out = x - flip_J(project_Q(base.symbol * x)) + flip_J(project_Q(as_symbol(a_tilde_inv) * phi))
    return HardyElement.of(out)


@dataclass(frozen=True, eq=False)
class FiniteSectionMatrix:
    order: int
    entries: np.ndarray

    def to_json(self) -> list:
        return [[[complex(v).real, complex(v).imag] for v in row] for row in self.entries]


def finite_section(a, b, N: int) -> FiniteSectionMatrix:
    """Leading ``N x N`` block of ``T(a) + H(b)``."""
    if N < 1:
        raise ValueError("order must be positive")
    ahat = fourier_coefficients(as_symbol(a), -(N - 1), N - 1)
    bhat = fourier_coefficients(as_symbol(b), 1, 2 * N - 1)
    j, k = np.indices((N, N))
    entries = ahat[j - k + N - 1] + bhat[j + k]
    return FiniteSectionMatrix(N, entries)


def inner_product(f, g) -> complex:
    """``integral over the circle of f * conj(g) |dt|``, i.e.
    ``2 pi sum_k f_k conj(g_k)``, evaluated in closed form."""
    f, g = as_symbol(f), as_symbol(g)
    check_no_circle_poles(f)
    check_no_circle_poles(g)
    if f.is_zero() or g.is_zero():
        return 0j
    c0 = fourier_coefficients(f * circle_conjugate(g), 0, 0)[0]
    return complex(2 * math.pi * c0)

"""Wiener-Hopf factorization of rational symbols.

Every zero/pole is assigned to the factor on whose side of the circle it
lies, so the factorization is computed directly from root locations:

    g = minus * t**index * plus,   minus(inf) = 1,

with ``minus`` and ``1/minus`` analytic outside the disk and ``plus`` and
``1/plus`` analytic inside.  ``ind T(g) = -index``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .errors import NotMatching, SignatureIndeterminate, ZeroOrPoleOnCircle
from .symbol import RationalSymbol, as_symbol, circle_samples, on_circle, tilde
from .tolerances import get_tolerances


@dataclass(frozen=True, eq=False)
class WienerHopfFactorization:
    minus: RationalSymbol
    index: int
    plus: RationalSymbol

    @cached_property
    def minus_inv(self) -> RationalSymbol:
        return self.minus.inverse()

    @cached_property
    def plus_inv(self) -> RationalSymbol:
        return self.plus.inverse()

    @cached_property
    def symbol(self) -> RationalSymbol:
        return (self.minus * self.plus).shift(self.index)

    @property
    def toeplitz_index(self) -> int:
        """Fredholm index of ``T(g)``."""
        return -self.index

    def reconstruction_error(self, g: RationalSymbol, n: int = 100, seed: int = 0) -> float:
        """Max relative deviation of ``minus * t**n * plus`` from ``g`` on
        pseudo-random circle points."""
        t = circle_samples(n, seed)
        ref = as_symbol(g)(t)
        rec = self.minus(t) * t**self.index * self.plus(t)
        return float(np.max(np.abs(rec - ref) / np.abs(ref)))

    def to_json(self) -> dict:
        return {"minus": self.minus.to_json(), "index": self.index, "plus": self.plus.to_json()}


@dataclass(frozen=True, eq=False)
class MatchingFactorization:
    """Factorization of ``g`` with ``g * g~ = 1``; then
    ``g = plus * t**index * (signature / tilde(plus))``."""

    base: WienerHopfFactorization
    signature: int

    @property
    def minus(self) -> RationalSymbol:
        return self.base.minus

    @property
    def plus(self) -> RationalSymbol:
        return self.base.plus

    @property
    def index(self) -> int:
        return self.base.index

    def to_json(self) -> dict:
        return {**self.base.to_json(), "signature": self.signature}


def _split_roots(g: RationalSymbol):
    for z, m in g.zeros:
        if on_circle(z, m):
            raise ZeroOrPoleOnCircle(f"zero {z:.6g} on the unit circle: T(g) is not Fredholm")
    for p, m in g.poles:
        if on_circle(p, m):
            raise ZeroOrPoleOnCircle(f"pole {p:.6g} on the unit circle: T(g) is not Fredholm")
    zin = [(z, m) for z, m in g.zeros if abs(z) < 1]
    zout = [(z, m) for z, m in g.zeros if abs(z) > 1]
    pin = [(p, m) for p, m in g.poles if abs(p) < 1]
    pout = [(p, m) for p, m in g.poles if abs(p) > 1]
    return zin, zout, pin, pout


def winding_index(g: RationalSymbol) -> int:
    """Winding number of ``g`` about the origin (the factorization index)."""
    g = as_symbol(g)
    if g.is_zero():
        raise ZeroOrPoleOnCircle("the zero symbol is not Fredholm")
    zin, _, pin, _ = _split_roots(g)
    return g.num.low + sum(m for _, m in zin) - sum(m for _, m in pin)


def factorize(g: RationalSymbol) -> WienerHopfFactorization:
    g = as_symbol(g)
    if g.is_zero():
        raise ZeroOrPoleOnCircle("the zero symbol is not Fredholm")
    zin, zout, pin, pout = _split_roots(g)
    nzin = sum(m for _, m in zin)
    npin = sum(m for _, m in pin)
    # prod(1 - z/t) / prod(1 - p/t) = t**(npin - nzin) prod(t - z) / prod(t - p)
    minus = RationalSymbol.from_roots(zin, pin, 1.0, npin - nzin)
    plus = RationalSymbol.from_roots(zout, pout, g.leading)
    return WienerHopfFactorization(minus, g.num.low + nzin - npin, plus)


def matching_defect(g: RationalSymbol, n: int = 64) -> float:
    t = circle_samples(n)
    return float(np.max(np.abs(g(t) * g(1 / t) - 1)))


def matching_factorize(g: RationalSymbol) -> MatchingFactorization:
    g = as_symbol(g)
    tol = get_tolerances()
    defect = matching_defect(g)
    if defect > tol.matching:
        raise NotMatching(f"g * g~ deviates from 1 by {defect:.3g}")
    base = factorize(g)
    value = complex(base.plus(0.0))
    if abs(value - 1) < tol.signature:
        sigma = 1
    elif abs(value + 1) < tol.signature:
        sigma = -1
    else:
        raise SignatureIndeterminate(f"plus(0) = {value:.6g} is not +-1")
    t = circle_samples(32, seed=1)
    shape = sigma / tilde(base.plus)(t)
    if np.max(np.abs(base.minus(t) - shape)) > 1e-8 * max(1.0, float(np.max(np.abs(shape)))):
        raise SignatureIndeterminate("minus factor does not match signature / tilde(plus)")
    return MatchingFactorization(base, sigma)

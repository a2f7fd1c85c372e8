"""Rational functions on the unit circle.

A :class:`RationalSymbol` is stored as a Laurent-polynomial numerator over a
monic polynomial denominator that is kept in factored form (a list of
nonzero poles with multiplicities).  Keeping the poles explicit means the
Riesz projections can be done by exact partial fractions instead of
truncated Fourier series, and products never have to re-find roots that
are already known.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import cached_property
from numbers import Number
from typing import Iterable, Mapping, Sequence

import numpy as np
from numpy.polynomial import polynomial as npoly

from .errors import PoleOnCircle, RootFindingFailure
from .tolerances import get_tolerances

#: roots with multiplicities, ``((z, m), ...)``
Roots = tuple[tuple[complex, int], ...]


def circle_samples(n: int, seed: int | None = None) -> np.ndarray:
    """``n`` points on the unit circle; equispaced, or pseudo-random if a
    seed is given."""
    if seed is None:
        theta = 2 * np.pi * np.arange(n) / n
    else:
        theta = np.random.default_rng(seed).uniform(0, 2 * np.pi, n)
    return np.exp(1j * theta)


# ---------------------------------------------------------------------------
# Laurent polynomials
# ---------------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class LaurentPolynomial:
    """Finite sum ``sum_k coef[k] * t**(low + k)``.

    The coefficient array is pruned on construction so that the first and
    last entries are nonzero; the zero polynomial has an empty array.
    """

    coef: np.ndarray
    low: int = 0

    def __post_init__(self) -> None:
        c = np.array(self.coef, dtype=complex, ndmin=1)
        low = int(self.low)
        if c.size:
            floor = get_tolerances().magnitude_floor
            c[np.abs(c) <= floor * max(1.0, float(np.max(np.abs(c))))] = 0
        nz = np.flatnonzero(c)
        if nz.size == 0:
            c, low = np.zeros(0, dtype=complex), 0
        else:
            c, low = c[nz[0] : nz[-1] + 1], low + int(nz[0])
        c.setflags(write=False)
        object.__setattr__(self, "coef", c)
        object.__setattr__(self, "low", low)

    @classmethod
    def zero(cls) -> LaurentPolynomial:
        return cls(np.zeros(0))

    @classmethod
    def monomial(cls, k: int, c: complex = 1.0) -> LaurentPolynomial:
        return cls([c], k)

    @classmethod
    def from_dict(cls, terms: Mapping[int, complex]) -> LaurentPolynomial:
        if not terms:
            return cls.zero()
        lo, hi = min(terms), max(terms)
        c = np.zeros(hi - lo + 1, dtype=complex)
        for k, v in terms.items():
            c[k - lo] += v
        return cls(c, lo)

    def to_dict(self) -> dict[int, complex]:
        return {self.low + i: complex(v) for i, v in enumerate(self.coef) if v != 0}

    def to_json(self) -> dict[str, list[float]]:
        return {str(k): [v.real, v.imag] for k, v in sorted(self.to_dict().items())}

    @classmethod
    def from_json(cls, obj: Mapping[str, Sequence[float] | float]) -> LaurentPolynomial:
        terms: dict[int, complex] = {}
        for key, val in obj.items():
            k = int(key)
            if isinstance(val, Number):
                terms[k] = complex(val)
            else:
                re, im = val
                terms[k] = complex(float(re), float(im))
        return cls.from_dict(terms)

    @property
    def high(self) -> int:
        return self.low + len(self.coef) - 1

    def is_zero(self) -> bool:
        return self.coef.size == 0

    def coefficient(self, n: int) -> complex:
        i = n - self.low
        return complex(self.coef[i]) if 0 <= i < len(self.coef) else 0j

    def dense(self, lo: int, hi: int) -> np.ndarray:
        return np.array([self.coefficient(n) for n in range(lo, hi + 1)])

    def __call__(self, t):
        t = np.asarray(t, dtype=complex)
        if self.is_zero():
            return np.zeros_like(t)
        return npoly.polyval(t, self.coef) * t ** self.low

    def __add__(self, other: LaurentPolynomial) -> LaurentPolynomial:
        if self.is_zero():
            return other
        if other.is_zero():
            return self
        lo = min(self.low, other.low)
        hi = max(self.high, other.high)
        c = np.zeros(hi - lo + 1, dtype=complex)
        c[self.low - lo : self.high - lo + 1] += self.coef
        c[other.low - lo : other.high - lo + 1] += other.coef
        return LaurentPolynomial(c, lo)

    def __neg__(self) -> LaurentPolynomial:
        return LaurentPolynomial(-self.coef, self.low)

    def __sub__(self, other: LaurentPolynomial) -> LaurentPolynomial:
        return self + (-other)

    def __mul__(self, other) -> LaurentPolynomial:
        if isinstance(other, LaurentPolynomial):
            if self.is_zero() or other.is_zero():
                return LaurentPolynomial.zero()
            return LaurentPolynomial(np.convolve(self.coef, other.coef), self.low + other.low)
        return LaurentPolynomial(self.coef * complex(other), self.low)

    __rmul__ = __mul__

    def shift(self, k: int) -> LaurentPolynomial:
        """Multiply by ``t**k``."""
        return LaurentPolynomial(self.coef, self.low + k)

    def reflect(self) -> LaurentPolynomial:
        """``p(1/t)``."""
        return LaurentPolynomial(self.coef[::-1], -self.high) if not self.is_zero() else self

    def conj(self) -> LaurentPolynomial:
        return LaurentPolynomial(np.conj(self.coef), self.low)

    def __repr__(self) -> str:
        return f"LaurentPolynomial({_format_laurent(self)})"


def _format_laurent(p: LaurentPolynomial) -> str:
    if p.is_zero():
        return "0"
    parts = []
    for k, v in sorted(p.to_dict().items(), reverse=True):
        c = v.real if abs(v.imag) < 1e-14 else v
        cs = f"{c:.6g}" if not isinstance(c, complex) else f"({c:.6g})"
        parts.append(cs if k == 0 else f"{cs}*t^{k}")
    return " + ".join(parts)


# ---------------------------------------------------------------------------
# root bookkeeping
# ---------------------------------------------------------------------------


def _merge_tol(z: complex) -> float:
    return get_tolerances().root_merge * max(1.0, abs(z))


def _cluster(values: Iterable[complex]) -> Roots:
    """Group nearly equal roots into ``(mean, multiplicity)`` pairs."""
    clusters: list[list[complex]] = []
    for z in values:
        for cl in clusters:
            if abs(z - np.mean(cl)) < _merge_tol(z):
                cl.append(z)
                break
        else:
            clusters.append([z])
    return _sorted_roots((complex(np.mean(cl)), len(cl)) for cl in clusters)


def _sorted_roots(roots: Iterable[tuple[complex, int]]) -> Roots:
    return tuple(sorted(((complex(z), int(m)) for z, m in roots if m > 0),
                        key=lambda r: (round(r[0].real, 10), round(r[0].imag, 10))))


def _combine(a: Roots, b: Roots, how: str = "add") -> Roots:
    """Union of two root lists, adding (``how='add'``) or maximizing
    (``how='max'``) multiplicities of coincident roots."""
    out = [list(r) for r in a]
    for z, m in b:
        for r in out:
            if abs(r[0] - z) < _merge_tol(z):
                r[1] = r[1] + m if how == "add" else max(r[1], m)
                break
        else:
            out.append([z, m])
    return _sorted_roots((z, m) for z, m in out)


def _expand(roots: Roots) -> np.ndarray:
    """Ascending coefficients of ``prod (t - z)**m``."""
    flat = [z for z, m in roots for _ in range(m)]
    if not flat:
        return np.ones(1, dtype=complex)
    return np.asarray(np.poly(flat), dtype=complex)[::-1]


def polynomial_roots(coef: np.ndarray) -> Roots:
    """Roots of ``sum coef[k] t**k`` by companion-matrix eigenvalues,
    with repeated roots merged."""
    coef = np.trim_zeros(np.asarray(coef, dtype=complex), "b")
    if coef.size <= 1:
        return ()
    try:
        raw = np.roots(coef[::-1])
    except np.linalg.LinAlgError as exc:
        raise RootFindingFailure(str(exc)) from exc
    if not np.all(np.isfinite(raw)):
        raise RootFindingFailure("non-finite root from companion eigenvalues")
    return _cluster(raw)


def _deflate(coef: np.ndarray, z: complex) -> tuple[np.ndarray, complex]:
    """Divide ``sum coef[k] t**k`` by ``(t - z)``.

    Returns the quotient and the remainder left over by the stable division
    direction: the constant term (``|z| <= 1``, Horner from the top) or the
    ``t**n`` term (``|z| > 1``, division from the bottom).
    """
    n = len(coef) - 1
    q = np.zeros(n, dtype=complex)
    if abs(z) <= 1:
        acc = 0j
        for k in range(n, 0, -1):
            acc = coef[k] + z * acc
            q[k - 1] = acc
        return q, coef[0] + z * acc
    prev = 0j
    for k in range(n):
        prev = (prev - coef[k]) / z
        q[k] = prev
    return q, coef[n] - prev


def _cancel_once(coef: np.ndarray, z: complex, tol: float) -> np.ndarray | None:
    """Quotient by ``(t - z)`` if ``z`` is a root up to ``tol``, else None.

    Dropping the remainder ``rho`` changes ``num / (t - z)`` by a term of
    circle l2 norm ``|rho| / sqrt(||z|**2 - 1|)``; the root is accepted when
    that is below ``tol`` times the l2 norm of the quotient.
    """
    q, rho = _deflate(coef, z)
    gap = math.sqrt(max(abs(abs(z) ** 2 - 1.0), get_tolerances().circle))
    if abs(rho) / gap <= tol * float(np.linalg.norm(q)):
        return q
    return None


def _drop_root(roots: Roots | None, z: complex) -> Roots | None:
    if roots is None:
        return None
    out = [list(r) for r in roots]
    for r in out:
        if abs(r[0] - z) < 10 * _merge_tol(z):
            r[1] -= 1
            return _sorted_roots((a, m) for a, m in out)
    return None


def on_circle(z: complex, multiplicity: int = 1) -> bool:
    tol = get_tolerances()
    band = tol.circle + (tol.root_merge * max(1.0, abs(z)) if multiplicity > 1 else 0.0)
    return abs(abs(z) - 1.0) < band


# ---------------------------------------------------------------------------
# rational symbols
# ---------------------------------------------------------------------------


def _as_laurent(x) -> LaurentPolynomial:
    if isinstance(x, LaurentPolynomial):
        return x
    if isinstance(x, Mapping):
        return LaurentPolynomial.from_dict(x)
    if isinstance(x, Number):
        return LaurentPolynomial([x])
    return LaurentPolynomial(x)


@dataclass(frozen=True, eq=False)
class RationalSymbol:
    """``num(t) / prod (t - p)**m`` with a Laurent numerator.

    Canonical form: the denominator is monic with nonzero roots; any power
    of ``t`` lives in the numerator; common numerator/denominator roots are
    cancelled.  Use :meth:`fraction` to build from two Laurent polynomials.
    """

    num: LaurentPolynomial
    poles: Roots = ()
    known_zeros: Roots | None = field(default=None, repr=False)

    def __post_init__(self) -> None:
        num = _as_laurent(self.num)
        zeros = self.known_zeros
        if num.is_zero():
            object.__setattr__(self, "num", num)
            object.__setattr__(self, "poles", ())
            object.__setattr__(self, "known_zeros", ())
            return
        tol = get_tolerances().cancel
        kept = []
        coef, low = num.coef, num.low
        for p, m in _sorted_roots(self.poles):
            while m and len(coef) > 1:
                quotient = _cancel_once(coef, p, tol)
                if quotient is None:
                    break
                coef = quotient
                zeros = _drop_root(zeros, p)
                m -= 1
            if m:
                kept.append((p, m))
        num = LaurentPolynomial(coef, low)
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "poles", _sorted_roots(kept))
        object.__setattr__(self, "known_zeros", zeros)

    # -- construction ------------------------------------------------------

    @classmethod
    def fraction(cls, num, den=None) -> RationalSymbol:
        """``num / den`` for Laurent polynomials (or anything coercible)."""
        num = _as_laurent(num)
        if den is None:
            return cls(num)
        den = _as_laurent(den)
        if den.is_zero():
            raise ZeroDivisionError("denominator is identically zero")
        lead = den.coef[-1]
        # den = lead * t**low * prod(t - p)
        return cls((num * (1 / lead)).shift(-den.low), polynomial_roots(den.coef))

    @classmethod
    def constant(cls, c: complex) -> RationalSymbol:
        return cls(LaurentPolynomial([c]))

    @classmethod
    def monomial(cls, k: int, c: complex = 1.0) -> RationalSymbol:
        return cls(LaurentPolynomial.monomial(k, c))

    @classmethod
    def from_roots(cls, zeros: Iterable[complex | tuple[complex, int]] = (),
                   poles: Iterable[complex | tuple[complex, int]] = (),
                   scale: complex = 1.0, shift: int = 0) -> RationalSymbol:
        """``scale * t**shift * prod (t - z) / prod (t - p)`` (zeros/poles
        must be nonzero)."""
        z = _cluster_pairs(zeros)
        p = _cluster_pairs(poles)
        num = LaurentPolynomial(_expand(z) * scale, shift)
        return cls(num, p, z)

    # -- basic structure ---------------------------------------------------

    @property
    def den(self) -> LaurentPolynomial:
        return LaurentPolynomial(_expand(self.poles))

    @cached_property
    def zeros(self) -> Roots:
        """Nonzero zeros of the numerator (the power of ``t`` excluded)."""
        if self.known_zeros is not None:
            return self.known_zeros
        return polynomial_roots(self.num.coef)

    def _zeros_if_known(self) -> Roots | None:
        if self.known_zeros is not None:
            return self.known_zeros
        return self.__dict__.get("zeros")

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_laurent(self) -> bool:
        return not self.poles

    @property
    def leading(self) -> complex:
        return complex(self.num.coef[-1]) if not self.is_zero() else 0j

    def __call__(self, t):
        t = np.asarray(t, dtype=complex)
        val = self.num(t)
        for p, m in self.poles:
            val = val / (t - p) ** m
        return val

    # -- arithmetic ----------------------------------------------------------

    def __mul__(self, other) -> RationalSymbol:
        if isinstance(other, Number):
            if other == 0:
                return RationalSymbol(LaurentPolynomial.zero())
            return RationalSymbol(self.num * other, self.poles, self._zeros_if_known())
        other = as_symbol(other)
        za, zb = self._zeros_if_known(), other._zeros_if_known()
        zeros = _combine(za, zb) if za is not None and zb is not None else None
        if self.is_zero() or other.is_zero():
            return RationalSymbol(LaurentPolynomial.zero())
        return RationalSymbol(self.num * other.num, _combine(self.poles, other.poles), zeros)

    __rmul__ = __mul__

    def __neg__(self) -> RationalSymbol:
        return self * -1

    def __add__(self, other) -> RationalSymbol:
        other = as_symbol(other)
        if other.is_zero():
            return self
        if self.is_zero():
            return other
        poles = _combine(self.poles, other.poles, how="max")
        return RationalSymbol(_raise_to(self, poles) + _raise_to(other, poles), poles)

    __radd__ = __add__

    def __sub__(self, other) -> RationalSymbol:
        return self + (-as_symbol(other))

    def __rsub__(self, other) -> RationalSymbol:
        return as_symbol(other) - self

    def inverse(self) -> RationalSymbol:
        if self.is_zero():
            raise ZeroDivisionError("inverse of the zero symbol")
        lead = self.leading
        num = LaurentPolynomial(_expand(self.poles) / lead, -self.num.low)
        return RationalSymbol(num, self.zeros, self.poles)

    def __truediv__(self, other) -> RationalSymbol:
        if isinstance(other, Number):
            return self * (1 / other)
        return self * as_symbol(other).inverse()

    def __rtruediv__(self, other) -> RationalSymbol:
        return as_symbol(other) * self.inverse()

    def __pow__(self, k: int) -> RationalSymbol:
        base = self if k >= 0 else self.inverse()
        out = RationalSymbol.constant(1)
        for _ in range(abs(k)):
            out = out * base
        return out

    def shift(self, k: int) -> RationalSymbol:
        """Multiply by ``t**k``."""
        return RationalSymbol(self.num.shift(k), self.poles, self._zeros_if_known())

    def conj_coefficients(self) -> RationalSymbol:
        z = self._zeros_if_known()
        return RationalSymbol(
            self.num.conj(),
            tuple((p.conjugate(), m) for p, m in self.poles),
            None if z is None else tuple((w.conjugate(), m) for w, m in z),
        )

    # -- comparison / serialization ------------------------------------------

    def is_close(self, other, rtol: float = 1e-9) -> bool:
        """Cross-multiplied comparison ``num1*den2 ~ num2*den1``."""
        other = as_symbol(other)
        lhs = self.num * other.den
        rhs = other.num * self.den
        diff = lhs - rhs
        if diff.is_zero():
            return True
        scale = max([1.0] + [float(np.max(np.abs(p.coef))) for p in (lhs, rhs) if not p.is_zero()])
        return float(np.max(np.abs(diff.coef))) <= rtol * scale

    def to_json(self) -> dict:
        return {"num": self.num.to_json(), "den": self.den.to_json()}

    @classmethod
    def from_json(cls, obj: Mapping) -> RationalSymbol:
        if not isinstance(obj, Mapping):
            raise ValueError("a symbol must be a JSON object with 'num' (and optional 'den')")
        unknown = set(obj) - {"num", "den"}
        if unknown:
            raise ValueError(f"unknown symbol keys: {sorted(unknown)}")
        if "num" not in obj:
            raise ValueError("symbol is missing 'num'")
        num = LaurentPolynomial.from_json(obj["num"])
        den = LaurentPolynomial.from_json(obj["den"]) if "den" in obj else None
        return cls.fraction(num, den)

    def __str__(self) -> str:
        if not self.poles:
            return _format_laurent(self.num)
        return f"({_format_laurent(self.num)}) / ({_format_laurent(self.den)})"

    def __repr__(self) -> str:
        return f"RationalSymbol({self})"


def _cluster_pairs(items) -> Roots:
    flat = []
    for it in items:
        if isinstance(it, tuple):
            flat.extend([complex(it[0])] * int(it[1]))
        else:
            flat.append(complex(it))
    if any(z == 0 for z in flat):
        raise ValueError("zeros/poles at the origin belong in the t-shift")
    return _cluster(flat)


def _raise_to(g: RationalSymbol, poles: Roots) -> LaurentPolynomial:
    """Numerator of ``g`` rewritten over the denominator ``prod (t-p)**m``."""
    extra = []
    for z, m in poles:
        have = next((k for p, k in g.poles if abs(p - z) < _merge_tol(z)), 0)
        if m > have:
            extra.append((z, m - have))
    return g.num * LaurentPolynomial(_expand(tuple(extra)))


def as_symbol(x) -> RationalSymbol:
    if isinstance(x, RationalSymbol):
        return x
    if isinstance(x, Number):
        return RationalSymbol.constant(x)
    return RationalSymbol(_as_laurent(x))


#: the identity function ``t``
T = RationalSymbol.monomial(1)


# ---------------------------------------------------------------------------
# involutions
# ---------------------------------------------------------------------------


def tilde(g: RationalSymbol) -> RationalSymbol:
    """``g(1/t)``."""
    g = as_symbol(g)
    if g.is_zero():
        return g
    total = sum(m for _, m in g.poles)
    factor = complex(np.prod([(-p) ** m for p, m in g.poles])) if g.poles else 1.0
    num = g.num.reflect().shift(total) * (1 / factor)
    poles = tuple((1 / p, m) for p, m in g.poles)
    z = g._zeros_if_known()
    return RationalSymbol(num, poles, None if z is None else tuple((1 / w, m) for w, m in z))


def circle_conjugate(g: RationalSymbol) -> RationalSymbol:
    """The symbol whose values on the circle are ``conj(g(t))``."""
    return tilde(as_symbol(g).conj_coefficients())


def flip_J(g: RationalSymbol) -> RationalSymbol:
    """``t**-1 * g(1/t)``."""
    return tilde(g).shift(-1)


# ---------------------------------------------------------------------------
# partial fractions and projections
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class PoleTerm:
    """``sum_{p=1..order} coeffs[p-1] / (t - location)**p``."""

    location: complex
    order: int
    coeffs: tuple[complex, ...]

    def __call__(self, t):
        t = np.asarray(t, dtype=complex)
        return sum(c / (t - self.location) ** (p + 1) for p, c in enumerate(self.coeffs))

    def fourier(self, n: int) -> complex:
        z = self.location
        total = 0j
        for p0, c in enumerate(self.coeffs):
            p = p0 + 1
            if abs(z) > 1:
                # (t - z)^-p = (-1/z)^p sum_k C(k+p-1, p-1) (t/z)^k
                if n >= 0:
                    total += c * (-1 / z) ** p * math.comb(n + p - 1, p - 1) * z ** (-n)
            else:
                # (t - z)^-p = sum_k C(k+p-1, p-1) z^k t^(-p-k)
                k = -n - p
                if k >= 0:
                    total += c * math.comb(k + p - 1, p - 1) * z**k
        return total

    @property
    def inside(self) -> bool:
        return abs(self.location) < 1


@dataclass(frozen=True)
class PoleDecomposition:
    laurent_part: LaurentPolynomial
    pole_terms: tuple[PoleTerm, ...]

    def __call__(self, t):
        t = np.asarray(t, dtype=complex)
        val = self.laurent_part(t)
        for term in self.pole_terms:
            val = val + term(t)
        return val

    def fourier_coefficients(self, lo: int, hi: int) -> np.ndarray:
        return np.array([
            self.laurent_part.coefficient(n) + sum(term.fourier(n) for term in self.pole_terms)
            for n in range(lo, hi + 1)
        ], dtype=complex)

    def _resum(self, laurent: LaurentPolynomial, terms: Sequence[PoleTerm]) -> RationalSymbol:
        roots = _sorted_roots((tm.location, tm.order) for tm in terms)
        num = laurent * LaurentPolynomial(_expand(roots))
        for tm in terms:
            others = tuple(r for r in roots if r[0] != tm.location)
            for p0, c in enumerate(tm.coeffs):
                rest = others + ((tm.location, tm.order - p0 - 1),)
                num = num + LaurentPolynomial(_expand(_sorted_roots(rest)) * c)
        return RationalSymbol(num, roots)

    def analytic_part(self) -> RationalSymbol:
        lp = self.laurent_part
        nonneg = LaurentPolynomial(lp.coef[max(0, -lp.low):], max(lp.low, 0)) if not lp.is_zero() else lp
        return self._resum(nonneg, [tm for tm in self.pole_terms if not tm.inside])

    def coanalytic_part(self) -> RationalSymbol:
        lp = self.laurent_part
        if lp.is_zero() or lp.low >= 0:
            neg = LaurentPolynomial.zero()
        else:
            neg = LaurentPolynomial(lp.coef[: -lp.low], lp.low)
        return self._resum(neg, [tm for tm in self.pole_terms if tm.inside])


def _taylor_at(coef: np.ndarray, z: complex, order: int) -> np.ndarray:
    """First ``order`` Taylor coefficients of ``sum coef[n] t**n`` at ``z``."""
    out = np.zeros(order, dtype=complex)
    for ell in range(min(order, len(coef))):
        out[ell] = sum(coef[n] * math.comb(n, ell) * z ** (n - ell) for n in range(ell, len(coef)))
    return out


def check_no_circle_poles(g: RationalSymbol) -> None:
    for p, m in g.poles:
        if on_circle(p, m):
            raise PoleOnCircle(f"pole {p:.6g} lies on the unit circle")


def _principal_parts(a: np.ndarray, roots: Roots, selected: Sequence[int]) -> list[tuple[complex, int, tuple]]:
    """Principal parts of ``sum a[n] t**n / prod (t - z)**m`` at the roots
    whose positions are listed in ``selected``."""
    out = []
    for i in selected:
        z, m = roots[i]
        h = _taylor_at(a, z, m)
        for j, (w, mw) in enumerate(roots):
            if j == i:
                continue
            d = z - w
            series = np.array([math.comb(s + mw - 1, mw - 1) * (-1 / d) ** s for s in range(m)]) / d**mw
            h = np.convolve(h, series)[:m]
        out.append((z, m, tuple(complex(h[m - p]) for p in range(1, m + 1))))
    return out


def _with_origin(g: RationalSymbol) -> tuple[np.ndarray, Roots, int]:
    """Write ``g`` as ``a(t) / (t**k prod (t - p)**m)`` with ``a`` a polynomial."""
    k = max(0, -g.num.low)
    a = np.concatenate([np.zeros(g.num.low + k, dtype=complex), g.num.coef])
    roots = (((0j, k),) if k else ()) + tuple(g.poles)
    return a, roots, k


def partial_fractions(g: RationalSymbol) -> PoleDecomposition:
    """Split ``g`` into a Laurent part plus principal parts at its poles.

    Principal parts at the origin are folded into the Laurent part, so every
    :class:`PoleTerm` has a nonzero location strictly off the circle.
    """
    g = as_symbol(g)
    check_no_circle_poles(g)
    if g.is_zero():
        return PoleDecomposition(LaurentPolynomial.zero(), ())
    a, roots, k = _with_origin(g)
    b = np.concatenate([np.zeros(k, dtype=complex), _expand(g.poles)])

    laurent = LaurentPolynomial.zero()
    if len(a) >= len(b):
        quotient, _ = npoly.polydiv(a, b)
        laurent = LaurentPolynomial(quotient)

    terms = []
    for z, m, principal in _principal_parts(a, roots, range(len(roots))):
        if z == 0:
            laurent = laurent + LaurentPolynomial(principal[::-1], -m)
        else:
            terms.append(PoleTerm(z, m, principal))
    return PoleDecomposition(laurent, tuple(terms))


def split_projections(g: RationalSymbol) -> tuple[RationalSymbol, RationalSymbol]:
    """``(P g, Q g)``.

    Write ``g = a / (E D_out)`` with ``E = t**k D_in`` collecting the poles in
    the disk (and at the origin) and ``D_out`` the poles outside.  Then
    ``P g = R / D_out`` and ``Q g = S / E`` where ``a = R E + S D_out`` with
    ``deg S < deg E``.  This is a square Sylvester system; because the roots
    of ``E`` and ``D_out`` are separated by the circle it is well
    conditioned, unlike principal parts at clustered or high-order poles.
    """
    g = as_symbol(g)
    check_no_circle_poles(g)
    zero = RationalSymbol.constant(0.0)
    if g.is_zero():
        return zero, zero
    a, _, k = _with_origin(g)
    inner = tuple(r for r in g.poles if abs(r[0]) < 1)
    outer = tuple(r for r in g.poles if abs(r[0]) > 1)
    if k == 0 and not inner:
        return g, zero
    if not outer:
        quotient, remainder = npoly.polydiv(a, np.concatenate([np.zeros(k, dtype=complex), _expand(inner)]))
        return (RationalSymbol(LaurentPolynomial(quotient), ()),
                RationalSymbol(LaurentPolynomial(remainder, -k), inner))
    e = np.concatenate([np.zeros(k, dtype=complex), _expand(inner)])
    d_out = _expand(outer)
    n_e, n_d, n_a = len(e) - 1, len(d_out) - 1, len(a) - 1
    n_r = max(n_a - n_e, n_d - 1) + 1
    n_eq = max(n_a, n_e + n_d - 1) + 1
    system = np.zeros((n_eq, n_r + n_e), dtype=complex)
    for i in range(n_r):
        system[i:i + n_e + 1, i] = e
    for i in range(n_e):
        system[i:i + n_d + 1, n_r + i] = d_out
    rhs = np.zeros(n_eq, dtype=complex)
    rhs[: n_a + 1] = a
    x = _refined_solve(system, rhs)
    analytic = RationalSymbol(LaurentPolynomial(x[:n_r]), outer)
    coanalytic = RationalSymbol(LaurentPolynomial(x[n_r:], -k), inner)
    return analytic, coanalytic


def _refined_solve(mat: np.ndarray, rhs: np.ndarray, steps: int = 2) -> np.ndarray:
    """``mat x = rhs`` with iterative refinement; residuals are formed in
    extended precision, which recovers the digits lost to conditioning."""
    x = np.linalg.solve(mat, rhs)
    wide = mat.astype(np.clongdouble)
    for _ in range(steps):
        r = rhs.astype(np.clongdouble) - wide @ x.astype(np.clongdouble)
        x = x + np.linalg.solve(mat, r.astype(complex))
    return x


def _series(num: np.ndarray, den: np.ndarray, n: int) -> np.ndarray:
    """First ``n`` power-series coefficients of ``num / den`` (``den[0] != 0``)."""
    out = np.zeros(n, dtype=complex)
    for i in range(n):
        acc = num[i] if i < len(num) else 0j
        for j in range(1, min(i, len(den) - 1) + 1):
            acc -= den[j] * out[i - j]
        out[i] = acc / den[0]
    return out


def fourier_coefficients(g: RationalSymbol, lo: int, hi: int) -> np.ndarray:
    """Exact Fourier coefficients ``g_lo .. g_hi`` of a rational symbol.

    Nonnegative coefficients are the Taylor series of ``P g`` at 0 and
    negative ones the expansion of ``Q g`` at infinity; both recursions run
    against denominators whose roots lie outside the disk."""
    out = np.zeros(max(hi - lo + 1, 0), dtype=complex)
    if hi < lo:
        return out
    plus, minus = split_projections(g)
    if hi >= 0 and not plus.is_zero():
        coef = plus.num.dense(0, max(plus.num.high, 0))
        taylor = _series(coef, _expand(plus.poles), hi + 1)
        start = max(lo, 0)
        out[start - lo:] = taylor[start:]
    if lo < 0 and not minus.is_zero():
        # in u = 1/t: Q = sum s_i u**(m - i) / prod (1 - z u)
        m = sum(mult for _, mult in minus.poles)
        coef = minus.num.dense(minus.num.low, minus.num.high)[::-1]
        u_num = np.concatenate([np.zeros(m - minus.num.high, dtype=complex), coef])
        series = _series(u_num, _expand(minus.poles)[::-1], -lo + 1)
        stop = min(hi, -1)
        for n in range(lo, stop + 1):
            out[n - lo] = series[-n]
    return out


def project_P(g: RationalSymbol) -> RationalSymbol:
    """Riesz projection onto nonnegative frequencies."""
    return split_projections(g)[0]


def project_Q(g: RationalSymbol) -> RationalSymbol:
    """``g - P g``: the strictly negative frequencies."""
    return split_projections(g)[1]


def l2_norm(g: RationalSymbol) -> float:
    """l2 norm of the Fourier coefficient sequence, in closed form."""
    g = as_symbol(g)
    if g.is_zero():
        return 0.0
    val = fourier_coefficients(g * circle_conjugate(g), 0, 0)[0]
    return math.sqrt(max(val.real, 0.0))


def is_analytic(g: RationalSymbol) -> bool:
    """True if ``g`` has no poles in the closed unit disk."""
    g = as_symbol(g)
    if g.is_zero():
        return True
    tol = get_tolerances().circle
    return g.num.low >= 0 and all(abs(p) > 1 + tol for p, _ in g.poles)

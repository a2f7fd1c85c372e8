"""Closed-form solution of ``(T(a) + H(b)) phi = f`` for matching pairs.

For a matching pair ``a a~ = b b~`` the subordinated functions
``c = a / b`` and ``d = b / a~`` satisfy ``c c~ = d d~ = 1``.  The equation
is lifted to the triangular block Toeplitz system with symbol
``[[0, d], [-c, a~^-1]]`` and right-hand side ``(2f, 0)``; the block system
is inverted through scalar one-sided inverses of ``T(c)`` and ``T(d)`` and
mapped back with ``phi = (Phi - J Q c Phi + J Q a~^-1 Psi) / 2``.

Which one-sided inverses are available depends on the signs of
``kappa_c = ind T(c)`` and ``kappa_d = ind T(d)``:

====  ==================  ==========================================
case  indices             outcome
====  ==================  ==========================================
PP    kc >= 0, kd >= 0    always solvable, explicit kernel
NN    kc <= 0, kd <= 0    unique solution if orthogonality holds
PN    kc > 0,  kd < 0     solvable if the d-side conditions hold
NP    kc < 0,  kd > 0     shift ``(a t^-n, b t^n)`` into case PP
====  ==================  ==========================================
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from functools import cached_property
from typing import Literal

import numpy as np

from .errors import ConstraintSystemSingular, KappaNonpositive, NotMatching, WrongCase, ZeroOrPoleOnCircle
from .factorization import MatchingFactorization, factorize, matching_factorize
from .operators import (
    HardyElement,
    th_apply,
    toeplitz_apply,
    toeplitz_left_inverse_apply,
    toeplitz_right_inverse_apply,
    w_apply,
)
from .symbol import (
    LaurentPolynomial,
    RationalSymbol,
    as_symbol,
    circle_conjugate,
    circle_samples,
    flip_J,
    fourier_coefficients,
    l2_norm,
    on_circle,
    project_P,
    project_Q,
    tilde,
)
from .operators import inner_product
from .tolerances import get_tolerances, using_tolerances

log = logging.getLogger(__name__)

CaseTag = Literal["PP", "NN", "PN", "NP"]

NOT_APPLICABLE_NOTE = (
    "solvability conditions fail: (2f, 0) is not in the image of the block "
    "Toeplitz system, so this method produces no solution; the equation "
    "itself may still be solvable for this f"
)


# ---------------------------------------------------------------------------
# pairs
# ---------------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class MatchingPair:
    a: RationalSymbol
    b: RationalSymbol

    def __post_init__(self) -> None:
        a, b = as_symbol(self.a), as_symbol(self.b)
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        for name, g in (("a", a), ("b", b)):
            if g.is_zero():
                raise ZeroOrPoleOnCircle(f"{name} is identically zero")
            for z, m in g.zeros + g.poles:
                if on_circle(z, m):
                    raise ZeroOrPoleOnCircle(f"{name} has a zero or pole at {z:.6g} on the unit circle")
        t = circle_samples(64)
        lhs = a(t) * a(1 / t)
        rhs = b(t) * b(1 / t)
        defect = float(np.max(np.abs(lhs - rhs)) / max(1.0, float(np.max(np.abs(lhs)))))
        if defect > get_tolerances().matching:
            raise NotMatching(f"a a~ - b b~ has relative size {defect:.3g} on the circle")

    @cached_property
    def a_tilde(self) -> RationalSymbol:
        return tilde(self.a)

    @cached_property
    def a_tilde_inv(self) -> RationalSymbol:
        return self.a_tilde.inverse()

    @cached_property
    def b_tilde(self) -> RationalSymbol:
        return tilde(self.b)


@dataclass(frozen=True, eq=False)
class SubordinatedPair:
    pair: MatchingPair
    c: RationalSymbol
    d: RationalSymbol
    c_fact: MatchingFactorization
    d_fact: MatchingFactorization

    @property
    def kappa_c(self) -> int:
        return -self.c_fact.index

    @property
    def kappa_d(self) -> int:
        return -self.d_fact.index

    @property
    def a_tilde_inv(self) -> RationalSymbol:
        return self.pair.a_tilde_inv

    @property
    def case(self) -> CaseTag:
        kc, kd = self.kappa_c, self.kappa_d
        if kc >= 0 and kd >= 0:
            return "PP"
        if kc <= 0 and kd <= 0:
            return "NN"
        return "PN" if kc > 0 else "NP"


def subordinated_pair(p: MatchingPair) -> SubordinatedPair:
    c = p.a / p.b
    d = p.b * p.a_tilde_inv
    return SubordinatedPair(p, c, d, matching_factorize(c), matching_factorize(d))


def kernel_raw_arity(kappa: int) -> int:
    return kappa // 2 if kappa % 2 == 0 else kappa // 2 + 1


def kernel_basis_functions(kappa: int, sigma: int, sign_variant: Literal["plus", "minus"]) -> list[LaurentPolynomial]:
    """Polynomials ``u_k`` spanning the kernel pieces of index ``kappa``.

    ``kappa = 2m``:   ``u_k = t^(m-k-1) +- sigma t^(m+k)``, ``k < m``;
    ``kappa = 2m+1``: ``u_k = t^(m+k) +- sigma t^(m-k)``,   ``k <= m``.
    Identically zero ``u_0`` (odd case) is left out.
    """
    if kappa < 1:
        raise KappaNonpositive(f"kernel generators need kappa >= 1, got {kappa}")
    sign = 1 if sign_variant == "plus" else -1
    m, odd = divmod(kappa, 2)
    out = []
    for k in range(kernel_raw_arity(kappa)):
        if odd:
            u = LaurentPolynomial.from_dict({m + k: 1.0}) + LaurentPolynomial.monomial(m - k, sign * sigma)
        else:
            u = LaurentPolynomial.from_dict({m - k - 1: 1.0, m + k: sign * sigma})
        if not u.is_zero():
            out.append(u)
    return out


# ---------------------------------------------------------------------------
# results
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Condition:
    index: int
    description: str
    value: complex

    def to_json(self) -> dict:
        return {"j": self.index, "test_function": self.description, "value": [self.value.real, self.value.imag]}


@dataclass
class SolvabilityReport:
    conditions: list[Condition] = field(default_factory=list)
    method_applicable: bool = True
    verdict: Literal["solved", "method_not_applicable", "unsolvable"] = "solved"
    notes: list[str] = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "method_applicable": self.method_applicable,
            "verdict": self.verdict,
            "conditions": [c.to_json() for c in self.conditions],
            "notes": list(self.notes),
        }


@dataclass(frozen=True, eq=False)
class KernelBasis:
    elements: tuple[HardyElement, ...] = ()
    raw_arity: int = 0

    @property
    def arity(self) -> int:
        return len(self.elements)

    def coefficient_matrix(self, n: int) -> np.ndarray:
        """Taylor coefficients ``0..n-1`` of each element, one per column."""
        if not self.elements:
            return np.zeros((n, 0), dtype=complex)
        return np.column_stack([fourier_coefficients(e, 0, n - 1) for e in self.elements])

    def numerical_rank(self, n: int = 64) -> int:
        mat = self.coefficient_matrix(n)
        if mat.shape[1] == 0:
            return 0
        s = np.linalg.svd(mat, compute_uv=False)
        return int(np.sum(s > get_tolerances().rank * max(1.0, s[0])))


@dataclass(eq=False)
class SolutionSet:
    case_tag: CaseTag
    particular: HardyElement | None
    kernel: KernelBasis
    report: SolvabilityReport
    residual: float | None = None
    kernel_residual: float = 0.0
    shift: int = 0
    inner: SolutionSet | None = None

    @property
    def solved(self) -> bool:
        return self.report.verdict == "solved"

    def general_solution(self, coefficients) -> RationalSymbol:
        """``particular + sum r_k kernel[k]``."""
        if self.particular is None:
            raise ValueError("no particular solution available")
        out = as_symbol(self.particular)
        for r, e in zip(coefficients, self.kernel.elements, strict=True):
            out = out + e * r
        return out

    def to_json(self) -> dict:
        out = {
            "case": self.case_tag,
            "verdict": self.report.verdict,
            "particular": None if self.particular is None else self.particular.to_json(),
            "kernel": [e.to_json() for e in self.kernel.elements],
            "arity": self.kernel.arity,
            "raw_arity": self.kernel.raw_arity,
            "residual": self.residual,
            "kernel_residual": self.kernel_residual,
            "report": self.report.to_json(),
        }
        if self.inner is not None:
            out["shift"] = self.shift
            out["inner_case"] = self.inner.case_tag
        return out


# ---------------------------------------------------------------------------
# conversions between the scalar equation and the block system
# ---------------------------------------------------------------------------


def convert_matrix_to_th(Phi, Psi, sp: SubordinatedPair) -> HardyElement:
    """``(Phi - J Q c Phi + J Q a~^-1 Psi) / 2``."""
    Phi, Psi = as_symbol(Phi), as_symbol(Psi)
    out = Phi - flip_J(project_Q(sp.c * Phi)) + flip_J(project_Q(sp.a_tilde_inv * Psi))
    return HardyElement.of(out * 0.5)


def convert_th_to_matrix(phi, psi, p: MatchingPair) -> tuple[HardyElement, HardyElement]:
    """``(phi + psi, P(b~ (phi + psi) + a~ J (phi - psi)))``."""
    phi, psi = as_symbol(phi), as_symbol(psi)
    s = phi + psi
    second = project_P(p.b_tilde * s + p.a_tilde * flip_J(phi - psi))
    return HardyElement.of(s), HardyElement.of(second)


def v_matrix(p: MatchingPair) -> tuple[tuple[RationalSymbol, RationalSymbol], tuple[RationalSymbol, RationalSymbol]]:
    """Block symbol ``[[a - b b~ a~^-1, b a~^-1], [-b~ a~^-1, a~^-1]]``."""
    ati = p.a_tilde_inv
    return ((p.a - p.b * p.b_tilde * ati, p.b * ati), (-(p.b_tilde * ati), ati))


def matrix_toeplitz_apply(V, Phi, Psi) -> tuple[HardyElement, HardyElement]:
    """Apply the block Toeplitz operator ``P V P`` to ``(Phi, Psi)``."""
    (v00, v01), (v10, v11) = V
    Phi, Psi = as_symbol(Phi), as_symbol(Psi)
    return (HardyElement.of(project_P(v00 * Phi + v01 * Psi)),
            HardyElement.of(project_P(v10 * Phi + v11 * Psi)))


# ---------------------------------------------------------------------------
# solvability conditions
# ---------------------------------------------------------------------------


def _scale(f: RationalSymbol) -> float:
    return max(1.0, l2_norm(f))


def d_side_conditions(sp: SubordinatedPair, f) -> list[Condition]:
    """``int conj(d_-^-1) t^j conj(f) |dt|`` for ``j < -kappa_d``.

    On the circle this equals ``2 pi conj((d_-^-1 f)_j)``, which is how it is
    evaluated.
    """
    count = -sp.kappa_d
    if count <= 0:
        return []
    coeffs = fourier_coefficients(sp.d_fact.base.minus_inv * as_symbol(f), 0, count - 1)
    return [Condition(j, f"conj(d_-^-1) t^{j}", complex(2 * math.pi * np.conj(v))) for j, v in enumerate(coeffs)]


def c_side_conditions(sp: SubordinatedPair, f) -> list[Condition]:
    """``int [T_r^-1(conj d) T(conj a~^-1) (conj(c_-^-1) t^j)] conj(f) |dt|``
    for ``j < -kappa_c``; needs ``kappa_d <= 0``."""
    count = -sp.kappa_c
    if count <= 0:
        return []
    if sp.kappa_d > 0:
        raise WrongCase("c-side conditions need kappa_d <= 0")
    dbar_fact = factorize(circle_conjugate(sp.d))
    abar = circle_conjugate(sp.a_tilde_inv)
    cm = circle_conjugate(sp.c_fact.base.minus_inv)
    out = []
    for j in range(count):
        w = toeplitz_right_inverse_apply(dbar_fact, toeplitz_apply(abar, cm.shift(j)))
        out.append(Condition(j, f"T_r^-1(conj d) T(conj a~^-1) conj(c_-^-1) t^{j}", inner_product(w, f)))
    return out


def _applicable(conditions: list[Condition], f) -> bool:
    tol = get_tolerances().solver * _scale(f)
    return all(abs(c.value) < tol for c in conditions)


# ---------------------------------------------------------------------------
# case solvers
# ---------------------------------------------------------------------------


def _c_kernel(sp: SubordinatedPair) -> tuple[list[HardyElement], int]:
    if sp.kappa_c <= 0:
        return [], 0
    gens = kernel_basis_functions(sp.kappa_c, sp.c_fact.signature, "minus")
    return [HardyElement.of(sp.c_fact.base.plus_inv * u) for u in gens], kernel_raw_arity(sp.kappa_c)


def _d_kernel(sp: SubordinatedPair) -> tuple[list[HardyElement], int]:
    if sp.kappa_d <= 0:
        return [], 0
    gens = kernel_basis_functions(sp.kappa_d, sp.d_fact.signature, "plus")
    dpi = sp.d_fact.base.plus_inv
    return [w_apply(sp.c_fact, sp.a_tilde_inv, dpi * u) for u in gens], kernel_raw_arity(sp.kappa_d)


def _from_block(sp: SubordinatedPair, c_inverse, d_inverse, f) -> HardyElement:
    psi = d_inverse(sp.d_fact, f)
    phi = c_inverse(sp.c_fact, toeplitz_apply(sp.a_tilde_inv, psi))
    return convert_matrix_to_th(phi * 2, psi * 2, sp)


def residual_norm(a, b, phi, f) -> float:
    """l2 norm of ``(T(a) + H(b)) phi - f``, computed without coefficient
    pruning so that small residuals are reported rather than rounded to 0."""
    with using_tolerances(magnitude_floor=0.0):
        return l2_norm(th_apply(a, b, phi) - as_symbol(f))


def _finish(sp: SubordinatedPair, f, result: SolutionSet) -> SolutionSet:
    a, b = sp.pair.a, sp.pair.b
    if result.particular is not None:
        result.residual = residual_norm(a, b, result.particular, f)
        if result.residual > get_tolerances().solver * _scale(f):
            result.report.notes.append(f"residual {result.residual:.3g} exceeds the solver tolerance")
            log.warning("residual %.3g exceeds tolerance", result.residual)
    if result.kernel.elements:
        result.kernel_residual = max(residual_norm(a, b, e, 0) for e in result.kernel.elements)
    return result


def solve_case_pp(sp: SubordinatedPair, f) -> SolutionSet:
    if sp.kappa_c < 0 or sp.kappa_d < 0:
        raise WrongCase(f"case PP needs kappa_c, kappa_d >= 0, got {sp.kappa_c}, {sp.kappa_d}")
    f = HardyElement.of(f)
    particular = _from_block(sp, toeplitz_right_inverse_apply, toeplitz_right_inverse_apply, f)
    ck, craw = _c_kernel(sp)
    dk, draw = _d_kernel(sp)
    kernel = KernelBasis(tuple(ck + dk), craw + draw)
    report = SolvabilityReport()
    if craw + draw > kernel.arity:
        report.notes.append(f"{craw + draw - kernel.arity} identically zero kernel generator(s) dropped")
    return _finish(sp, f, SolutionSet("PP", particular, kernel, report))


def solve_case_nn(sp: SubordinatedPair, f) -> SolutionSet:
    if sp.kappa_c > 0 or sp.kappa_d > 0:
        raise WrongCase(f"case NN needs kappa_c, kappa_d <= 0, got {sp.kappa_c}, {sp.kappa_d}")
    f = HardyElement.of(f)
    conditions = d_side_conditions(sp, f) + c_side_conditions(sp, f)
    report = SolvabilityReport(conditions)
    if not _applicable(conditions, f):
        report.method_applicable = False
        report.verdict = "method_not_applicable"
        report.notes.append(NOT_APPLICABLE_NOTE)
        return SolutionSet("NN", None, KernelBasis(), report)
    particular = _from_block(sp, toeplitz_left_inverse_apply, toeplitz_left_inverse_apply, f)
    return _finish(sp, f, SolutionSet("NN", particular, KernelBasis(), report))


def solve_case_pn(sp: SubordinatedPair, f) -> SolutionSet:
    if not (sp.kappa_c > 0 and sp.kappa_d < 0):
        raise WrongCase(f"case PN needs kappa_c > 0 > kappa_d, got {sp.kappa_c}, {sp.kappa_d}")
    f = HardyElement.of(f)
    conditions = d_side_conditions(sp, f)
    report = SolvabilityReport(conditions)
    ck, craw = _c_kernel(sp)
    kernel = KernelBasis(tuple(ck), craw)
    if craw > kernel.arity:
        report.notes.append(f"{craw - kernel.arity} identically zero kernel generator(s) dropped")
    if not _applicable(conditions, f):
        report.method_applicable = False
        report.verdict = "method_not_applicable"
        report.notes.append(NOT_APPLICABLE_NOTE)
        return _finish(sp, f, SolutionSet("PN", None, kernel, report))
    particular = _from_block(sp, toeplitz_right_inverse_apply, toeplitz_left_inverse_apply, f)
    return _finish(sp, f, SolutionSet("PN", particular, kernel, report))


def _least_squares(mat: np.ndarray, rhs: np.ndarray):
    """Minimum-norm least squares with rank detection; returns
    ``(x, residual_norm, null_basis)``."""
    if not np.all(np.isfinite(mat)) or not np.all(np.isfinite(rhs)):
        raise ConstraintSystemSingular("constraint system has non-finite entries")
    rows, cols = mat.shape
    if cols == 0:
        return np.zeros(0, dtype=complex), float(np.linalg.norm(rhs)), np.zeros((0, 0), dtype=complex)
    u, s, vh = np.linalg.svd(mat)
    rank = int(np.sum(s > get_tolerances().rank * max(1.0, s[0]))) if s.size else 0
    coeffs = (u[:, :rank].conj().T @ rhs) / s[:rank]
    x = vh[:rank].conj().T @ coeffs
    null = vh[rank:].conj().T
    return x, float(np.linalg.norm(mat @ x - rhs)), null


def solve_case_np(sp: SubordinatedPair, p: MatchingPair, f) -> SolutionSet:
    """Shift to ``(a t^-n, b t^n)`` with ``2n + kappa_c`` in ``{0, 1}``, solve
    there (case PP) and keep the solutions whose first ``n`` Taylor
    coefficients vanish; ``phi = T(t^-n) psi``."""
    if not (sp.kappa_c < 0 and sp.kappa_d > 0):
        raise WrongCase(f"case NP needs kappa_c < 0 < kappa_d, got {sp.kappa_c}, {sp.kappa_d}")
    f = HardyElement.of(f)
    tol = get_tolerances()
    n = (1 - sp.kappa_c) // 2
    shifted = MatchingPair(p.a.shift(-n), p.b.shift(n))
    inner = solve_case_pp(subordinated_pair(shifted), f)
    log.debug("case NP: shift n=%d, inner case %s", n, inner.case_tag)

    mat = inner.kernel.coefficient_matrix(n)
    rhs = -fourier_coefficients(inner.particular, 0, n - 1)
    x, res, null = _least_squares(mat, rhs)

    kernel = KernelBasis(tuple(
        HardyElement.of(project_P(_combination(inner.kernel.elements, v).shift(-n))) for v in null.T
    ), null.shape[1])
    report = SolvabilityReport()
    report.notes.append(f"shifted by n={n}; shifted equation solved in case {inner.case_tag}")
    if res > tol.infeasible * max(1.0, float(np.linalg.norm(rhs))):
        report.method_applicable = False
        report.verdict = "unsolvable"
        report.conditions = [Condition(j, f"constraint residual psi_{j}", complex(v))
                             for j, v in enumerate(mat @ x - rhs)]
        report.notes.append("no solution of the shifted equation lies in im T(t^n): the equation has no solution")
        return _finish(sp, f, SolutionSet("NP", None, kernel, report, shift=n, inner=inner))
    psi = as_symbol(inner.particular) + _combination(inner.kernel.elements, x)
    report.conditions = [Condition(j, f"psi_{j}", complex(v))
                         for j, v in enumerate(fourier_coefficients(psi, 0, n - 1))]
    particular = HardyElement.of(project_P(psi.shift(-n)))
    return _finish(sp, f, SolutionSet("NP", particular, kernel, report, shift=n, inner=inner))


def _combination(elements, coeffs) -> RationalSymbol:
    out = RationalSymbol.constant(0)
    for e, r in zip(elements, coeffs):
        if r != 0:
            out = out + e * complex(r)
    return out


def solve(a, b, f) -> SolutionSet:
    """Solve ``(T(a) + H(b)) phi = f``; dispatches on the signs of the indices
    (a zero index goes to PP when the other is >= 0, else to NN)."""
    pair = MatchingPair(as_symbol(a), as_symbol(b))
    f = HardyElement.of(f)
    sp = subordinated_pair(pair)
    case = sp.case
    log.debug("kappa_c=%d kappa_d=%d -> %s", sp.kappa_c, sp.kappa_d, case)
    if case == "PP":
        return solve_case_pp(sp, f)
    if case == "NN":
        return solve_case_nn(sp, f)
    if case == "PN":
        return solve_case_pn(sp, f)
    return solve_case_np(sp, pair, f)

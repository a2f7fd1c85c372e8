"""Acceptance criteria, one test per criterion.

Each test records a single ``PASS``/``FAIL`` line and then asserts the same
checks. Under pytest the lines are listed in the terminal summary; running the
module as a script prints them directly.
"""

import sys
import time

import numpy as np

from conftest import ACCEPTANCE_LINES
from generators import matching_pair, random_polynomial, random_symbol, symbol_degree
from toeplitz_hankel import (
    MatchingPair,
    RationalSymbol,
    T,
    factorize,
    finite_section_oracle,
    solve,
    subordinated_pair,
    th_apply,
    toeplitz_apply,
    toeplitz_left_inverse_apply,
    toeplitz_right_inverse_apply,
    winding_index,
)
from toeplitz_hankel.symbol import fourier_coefficients, l2_norm

t = T


def argument_principle(g, nodes=2048):
    z = np.exp(2j * np.pi * np.arange(nodes + 1) / nodes)
    phase = np.unwrap(np.angle(g(z)))
    return int(round((phase[-1] - phase[0]) / (2 * np.pi)))


def span_rank(elements, n=24):
    mat = np.column_stack([fourier_coefficients(e, 0, n - 1) for e in elements])
    return np.linalg.matrix_rank(mat, tol=1e-9)


def report(number, title, checks):
    failed = [name for name, ok in checks if not ok]
    line = f"{'PASS' if not failed else 'FAIL'} criterion {number}: {title}"
    if failed:
        line += " (failed: " + ", ".join(failed) + ")"
    ACCEPTANCE_LINES.append(line)
    if __name__ == "__main__":
        print(line)
    assert not failed, line


def coefficient_gap(g, h, n=24):
    return np.max(np.abs(fourier_coefficients(g, 0, n - 1) - fourier_coefficients(h, 0, n - 1)))


def test_criterion_1_monomial_pair():
    start = time.perf_counter()
    res = solve(t**-2, t**2, t**6 + 3 * t**4)
    elapsed = time.perf_counter() - start
    report(1, "(t^-2, t^2) reproduction", [
        ("particular", coefficient_gap(res.particular, t**8 + 3 * t**6) < 1e-10),
        ("arity 2", res.kernel.arity == 2),
        ("kernel span", span_rank(list(res.kernel.elements)) == 2
         and span_rank(list(res.kernel.elements) + [t - t**2, 1 - t**3]) == 2),
        ("runtime < 1 s", elapsed < 1.0),
    ])


def test_criterion_2_linear_pair():
    start = time.perf_counter()
    res = solve(2 * t + 1, 2 * t + 1, (2 * t + 1) * (t**2 + t))
    bad = solve(2 * t + 1, 2 * t + 1, 1)
    elapsed = time.perf_counter() - start
    conds = res.report.conditions
    report(2, "(2t+1, 2t+1) reproduction", [
        ("conditions j=0,1 vanish", [c.index for c in conds] == [0, 1] and all(abs(c.value) < 1e-10 for c in conds)),
        ("solution t^2+t", res.solved and coefficient_gap(res.particular, t**2 + t) < 1e-10),
        ("kernel empty", res.kernel.arity == 0),
        ("f=1 not applicable", bad.report.verdict == "method_not_applicable"),
        ("f=1 condition j=0 > 1e-3", abs(bad.report.conditions[0].value) > 1e-3),
        ("runtime < 1 s", elapsed < 1.0),
    ])


def test_criterion_3_unit_shift_family():
    rng = np.random.default_rng(300)
    worst = 0.0
    inputs = [t**k for k in range(1, 9)]
    for deg in range(1, 9):
        for _ in range(10):
            coef = rng.normal(size=deg + 1) + 1j * rng.normal(size=deg + 1)
            coef[0] = 0
            inputs.append(RationalSymbol(coef))
    all_solved = True
    for f in inputs:
        res = solve(1, t, f)
        all_solved &= res.solved
        expected = fourier_coefficients(f, 0, 8)
        expected[0] = 0
        if res.solved:
            worst = max(worst, np.max(np.abs(fourier_coefficients(res.particular, 0, 8) - expected)))
    distinguished = True
    for f in [RationalSymbol.constant(1), 1 + t, random_polynomial(rng) + 0.5]:
        res = solve(1, t, f)
        distinguished &= (res.report.verdict == "method_not_applicable"
                          and not res.report.method_applicable
                          and any("may still be solvable" in n for n in res.report.notes))
    report(3, "(1, t) family", [
        ("solved for f_0 = 0", all_solved),
        (f"matches coefficient oracle (worst {worst:.1e})", worst < 1e-10),
        ("f_0 != 0 is method-not-applicable, not unsolvable", distinguished),
    ])


def test_criterion_4_fourth_case():
    res = solve(1, t**-2, 1 + t)
    report(4, "fourth-case shift reduction", [
        ("case NP", res.case_tag == "NP"),
        ("shift n = 1", res.shift == 1),
        ("inner solve routed through PP", res.inner is not None and res.inner.case_tag == "PP"),
        ("phi = 1 + t", res.solved and coefficient_gap(res.particular, 1 + t) < 1e-10),
        ("kernel empty", res.kernel.arity == 0),
    ])


def test_criterion_5_property_suite():
    rng = np.random.default_rng(500)
    start = time.perf_counter()
    residual = kernel = recon = 0.0
    winding_ok = True
    count = 0
    while count < 200:
        a, b = matching_pair(rng)
        if max(symbol_degree(a), symbol_degree(b)) > 4:
            continue
        count += 1
        f = random_polynomial(rng, 8)
        res = solve(a, b, f)
        if res.particular is not None:
            residual = max(residual, res.residual)
        for e in res.kernel.elements:
            kernel = max(kernel, l2_norm(th_apply(a, b, e)))
        sp = subordinated_pair(MatchingPair(a, b))
        for g in (a, b, sp.c, sp.d):
            fac = factorize(g)
            recon = max(recon, fac.reconstruction_error(g))
            winding_ok &= fac.index == winding_index(g) == argument_principle(g)
    elapsed = time.perf_counter() - start
    report(5, "property suite on 200 matching pairs", [
        (f"residual < 1e-8 (worst {residual:.1e})", residual < 1e-8),
        (f"kernel annihilated < 1e-8 (worst {kernel:.1e})", kernel < 1e-8),
        (f"reconstruction < 1e-10 (worst {recon:.1e})", recon < 1e-10),
        ("index equals argument-principle winding", winding_ok),
        (f"runtime < 60 s ({elapsed:.1f} s)", elapsed < 60),
    ])


def test_criterion_6_oracle_equivalence():
    checks = []
    for name, (a, b, f) in {
        "(t^-2, t^2)": (t**-2, t**2, t**6 + 3 * t**4),
        "(2t+1, 2t+1)": (2 * t + 1, 2 * t + 1, (2 * t + 1) * (t**2 + t)),
    }.items():
        res = solve(a, b, f)
        rep = finite_section_oracle(a, b, f, 64, res.particular, res.kernel.elements, compared_degree=16)
        checks.append((f"{name} deviation < 1e-6 ({rep.deviation:.1e})", rep.deviation < 1e-6))
        checks.append((f"{name} null dimension {rep.null_dimension} = arity {res.kernel.arity}",
                       rep.null_dimension == res.kernel.arity))
    report(6, "finite-section oracle equivalence at N = 64", checks)


def test_criterion_7_inverse_laws():
    rng = np.random.default_rng(700)
    worst_r = worst_l = 0.0
    n_r = n_l = 0
    for _ in range(500):
        a = random_symbol(rng, 3, 3, max_shift=3)
        fac = factorize(a)
        f = random_polynomial(rng)
        scale = max(1.0, l2_norm(f))
        if fac.index <= 0:
            n_r += 1
            worst_r = max(worst_r, l2_norm(toeplitz_apply(a, toeplitz_right_inverse_apply(fac, f)) - f) / scale)
        if fac.index >= 0:
            n_l += 1
            worst_l = max(worst_l, l2_norm(toeplitz_left_inverse_apply(fac, toeplitz_apply(a, f)) - f) / scale)
    report(7, "one-sided inverse laws on 500 pairs", [
        (f"T(a) T_r^-1(a) = id on {n_r} pairs (worst {worst_r:.1e})", worst_r < 1e-10),
        (f"T_l^-1(a) T(a) = id on {n_l} pairs (worst {worst_l:.1e})", worst_l < 1e-10),
        ("both laws exercised", n_r > 0 and n_l > 0),
    ])


if __name__ == "__main__":
    failures = 0
    for name, fn in sorted((k, v) for k, v in globals().items() if k.startswith("test_criterion_")):
        try:
            fn()
        except AssertionError:
            failures += 1
    sys.exit(1 if failures else 0)

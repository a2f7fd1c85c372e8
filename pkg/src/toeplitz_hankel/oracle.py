"""Finite-section cross-check of closed-form solutions.

The leading ``N x N`` block of ``T(a) + H(b)`` is solved by truncated-SVD
least squares and compared with a closed-form particular solution modulo the
reported kernel.  Null vectors are counted only among coefficient vectors
supported on degrees ``< N - margin``; vectors living near the truncation
edge are artifacts of cutting the matrix.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .operators import finite_section
from .symbol import as_symbol, fourier_coefficients

SINGULAR_THRESHOLD = 1e-6
EDGE_MARGIN = 8


@dataclass(frozen=True)
class OracleReport:
    order: int
    compared_degree: int
    deviation: float | None
    null_dimension: int
    smallest_singular_value: float
    finite_section_coefficients: np.ndarray
    closed_form_coefficients: np.ndarray | None

    def to_json(self) -> dict:
        def pairs(v):
            return None if v is None else [[float(z.real), float(z.imag)] for z in v]

        return {
            "order": self.order,
            "compared_degree": self.compared_degree,
            "max_deviation": self.deviation,
            "null_dimension": self.null_dimension,
            "smallest_singular_value": self.smallest_singular_value,
            "finite_section": pairs(self.finite_section_coefficients[: self.compared_degree]),
            "closed_form": pairs(self.closed_form_coefficients),
        }


def truncated_lstsq(mat: np.ndarray, rhs: np.ndarray, threshold: float = SINGULAR_THRESHOLD) -> np.ndarray:
    """Minimum-norm least squares ignoring singular values below ``threshold``."""
    u, s, vh = np.linalg.svd(mat)
    keep = s > threshold
    return vh[keep].conj().T @ ((u[:, keep].conj().T @ rhs) / s[keep])


def restricted_null_dimension(mat: np.ndarray, margin: int = EDGE_MARGIN,
                              threshold: float = SINGULAR_THRESHOLD) -> int:
    """Number of singular values below ``threshold`` of the columns of degree
    ``< N - margin`` (all columns when ``N <= margin``)."""
    n = mat.shape[1]
    cols = n - margin if n > margin else n
    s = np.linalg.svd(mat[:, :cols], compute_uv=False)
    return int(cols - np.sum(s > threshold))


def finite_section_oracle(a, b, f, order: int, particular=None, kernel=(),
                          compared_degree: int | None = None) -> OracleReport:
    """Solve the order-``N`` finite section for ``f`` and compare the first
    ``compared_degree`` coefficients with ``particular + span(kernel)``."""
    mat = finite_section(a, b, order).entries
    rhs = fourier_coefficients(as_symbol(f), 0, order - 1)
    x = truncated_lstsq(mat, rhs)
    smallest = float(np.linalg.svd(mat, compute_uv=False)[-1])
    if compared_degree is None:
        compared_degree = max(1, min(16, order // 2))
    compared_degree = min(compared_degree, order)
    deviation = closed = None
    if particular is not None:
        closed = fourier_coefficients(as_symbol(particular), 0, compared_degree - 1)
        diff = x[:compared_degree] - closed
        if kernel:
            basis = np.column_stack([fourier_coefficients(as_symbol(e), 0, compared_degree - 1) for e in kernel])
            r, *_ = np.linalg.lstsq(basis, diff, rcond=None)
            diff = diff - basis @ r
        deviation = float(np.max(np.abs(diff)))
    return OracleReport(order, compared_degree, deviation, restricted_null_dimension(mat),
                        smallest, x, closed)

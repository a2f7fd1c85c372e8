"""Closed-form solutions of ``(T(a) + H(b)) phi = f`` for matching pairs of
rational symbols, via Wiener-Hopf factorization of ``c = a/b``, ``d = b/a~``."""

from .errors import ToeplitzHankelError
from .factorization import (
    MatchingFactorization,
    WienerHopfFactorization,
    factorize,
    matching_factorize,
    winding_index,
)
from .operators import (
    FiniteSectionMatrix,
    HardyElement,
    finite_section,
    hankel_apply,
    inner_product,
    th_apply,
    toeplitz_apply,
    toeplitz_left_inverse_apply,
    toeplitz_right_inverse_apply,
    w_apply,
)
from .oracle import OracleReport, finite_section_oracle
from .solver import (
    KernelBasis,
    MatchingPair,
    SolutionSet,
    SolvabilityReport,
    SubordinatedPair,
    solve,
    subordinated_pair,
)
from .symbol import (
    T,
    LaurentPolynomial,
    RationalSymbol,
    circle_conjugate,
    flip_J,
    fourier_coefficients,
    l2_norm,
    project_P,
    project_Q,
    tilde,
)
from .tolerances import Tolerances, get_tolerances, using_tolerances

__all__ = [name for name in dir() if not name.startswith("_")]

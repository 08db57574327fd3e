"""Log-space combinatorial kernels: factorials, binomials, and associated
Laguerre polynomials evaluated at non-positive arguments.

Every closed-form observable in this package is a ratio or sum of binomially
weighted power series whose terms overflow double precision already for a few
dozen atoms.  All quantities here are therefore computed and combined as
natural logarithms of positive numbers.  At argument ``-eta`` with
``eta >= 0`` every term of the Laguerre series is non-negative, so no sign
tracking or cancellation handling is needed.
"""

from __future__ import annotations

import math

import numpy as np

__all__ = [
    "log_factorial",
    "log_binomial",
    "log_laguerre_neg",
    "extend_log_factorial_table",
    "LOG_FACTORIAL_DEFAULT_CAP",
]

LOG_FACTORIAL_DEFAULT_CAP = 10000


def _build_log_factorial_table(cap: int) -> np.ndarray:
    """Cumulative ln(n!) table via compensated summation (error ~1 ulp)."""
    table = np.empty(cap + 1)
    table[0] = 0.0
    total = 0.0
    comp = 0.0
    for i in range(1, cap + 1):
        y = math.log(i) - comp
        t = total + y
        comp = (t - total) - y
        total = t
        table[i] = total
    return table


_LOG_FACT = _build_log_factorial_table(LOG_FACTORIAL_DEFAULT_CAP)


def extend_log_factorial_table(cap: int) -> None:
    """Rebuild the factorial table up to ``cap``.

    Intended for one-time setup before heavy use at very large photon
    numbers; not safe to call concurrently with evaluations.
    """
    global _LOG_FACT
    if cap + 1 > len(_LOG_FACT):
        _LOG_FACT = _build_log_factorial_table(cap)


def log_factorial(n):
    """ln(n!) for integer n >= 0.  Accepts a scalar or an integer array."""
    arr = np.asarray(n)
    if not np.issubdtype(arr.dtype, np.integer):
        raise TypeError(f"log_factorial expects integers, got {arr.dtype}")
    if np.any(arr < 0):
        raise ValueError("log_factorial requires n >= 0")
    if np.any(arr >= len(_LOG_FACT)):
        raise ValueError(
            f"argument exceeds the factorial table cap {len(_LOG_FACT) - 1}; "
            "call extend_log_factorial_table first"
        )
    out = _LOG_FACT[arr]
    return float(out) if np.isscalar(n) or arr.ndim == 0 else out


def log_binomial(n: int, k: int) -> float:
    """ln C(n, k) for n >= 0; -inf when k lies outside [0, n]."""
    if n < 0:
        raise ValueError("log_binomial requires n >= 0")
    if k < 0 or k > n:
        return -math.inf
    return float(_LOG_FACT[n] - _LOG_FACT[k] - _LOG_FACT[n - k])


def log_laguerre_neg(n: int, alpha: int, eta: float) -> float:
    """ln L_n^alpha(-eta) for integer n >= 0, integer alpha >= -n, eta >= 0.

    The finite series sum_k C(n+alpha, n-k) eta^k / k! has only non-negative
    terms, so the value is computed as a shifted log-sum-exp and is exact up
    to rounding.  Returns -inf only in the degenerate corner eta = 0 with
    alpha < 0, where the polynomial value is exactly zero.

    Positive arguments (eta < 0), where the series alternates and cancels,
    are outside this package's domain and are rejected.
    """
    if n < 0:
        raise ValueError("log_laguerre_neg requires n >= 0")
    if alpha < -n:
        raise ValueError("log_laguerre_neg requires alpha >= -n")
    if not eta >= 0.0:
        raise ValueError("log_laguerre_neg requires eta >= 0 (no cancellation regime)")

    if eta == 0.0:
        # Only the k = 0 term survives: L_n^alpha(0) = C(n+alpha, n).
        return log_binomial(n + alpha, n)

    # Terms with k < -alpha carry a zero binomial weight.
    k = np.arange(max(0, -alpha), n + 1)
    log_terms = (
        _LOG_FACT[n + alpha]
        - _LOG_FACT[n - k]
        - _LOG_FACT[alpha + k]
        - _LOG_FACT[k]
        + k * math.log(eta)
    )
    shift = float(log_terms.max())
    # math.fsum gives a correctly rounded, order-independent accumulation.
    return shift + math.log(math.fsum(np.exp(log_terms - shift)))

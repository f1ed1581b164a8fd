"""Limit-point functions on [1/2, 1] and exhaustive dyadic-grid scans for
the extremal constants, with certified convergence bounds.

Every grid point x = 2^m / (2^m + 2n + 1) corresponds to the odd integer
N = 2^m + 2n + 1 via the weight identity theta(x) = binary_weights(N), so
a grid scan is a vectorized sweep of the arithmetic functions over the odd
integers in (2^m, 2^{m+1}).  Scans chunk the grid and can fan out over a
thread pool; the reduction order is fixed, so results do not depend on the
worker count.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

import numpy as np

from . import arith
from .binary import expand_reciprocal, grid_point

__all__ = [
    "energy_form_at",
    "log_kernel_form_at",
    "leja_offset_at",
    "power_sum_at",
    "log_moment_at",
    "batch_eta_values",
    "ScanResult",
    "scan_extremum",
    "interval_estimate",
    "stationarity_residual",
    "child_identities",
    "SCAN_TARGETS",
]

_LOG2 = math.log(2.0)
_LOG4 = math.log(4.0)

SCAN_TARGETS = ("energy_form", "log_kernel_form", "leja_offset")

_CHUNK = 1 << 15


def _weights_at(x, prefer_finite: bool = True):
    exp = expand_reciprocal(x, prefer_finite=prefer_finite)
    if exp.tail_bound != 0.0:
        # no terminating or unit-gap form: buy accuracy with a deeper
        # expansion (evaluation error scales like 2^{-terms (s+1)})
        exp = expand_reciprocal(x, prefer_finite=prefer_finite, max_terms=256)
    return exp.weights()


def energy_form_at(x, s: float, tol: float = 1e-12) -> float:
    """The limit energy form at x in [1/2, 1]; equals 1 at both endpoints
    and for s in {0, 1}.

    Dyadic reciprocals have two expansions; both give the same value, and
    the terminating one is used.
    """
    return arith.energy_form(_weights_at(x), s, tol)


def log_kernel_form_at(x, tol: float = 1e-12) -> float:
    """The limit log-kernel form at x; expansion-independent."""
    return arith.log_kernel_form(_weights_at(x), tol)


def leja_offset_at(x, tol: float = 1e-12) -> float:
    """The limit offset function at x, ranging over [0, log(4/3)]."""
    return arith.leja_offset(_weights_at(x), tol)


def power_sum_at(x, s: float, tol: float = 1e-12) -> float:
    """The limit power sum at x for s > 0.

    Not expansion-independent: at a two-expansion x this uses the
    terminating expansion, which is the left-limit value; the infinite
    expansion gives the (different) right limit.
    """
    return arith.power_sum(_weights_at(x), s, tol)


def log_moment_at(x, tol: float = 1e-12) -> float:
    """The limit log moment at x, in [-2 log 2, 0]; finite-expansion
    convention as in :func:`power_sum_at`."""
    return arith.log_moment(_weights_at(x), tol)


def _chunk_values(ns: np.ndarray, target: str, s: Optional[float]) -> np.ndarray:
    width = int(ns.max()).bit_length()
    exps = np.arange(width - 1, -1, -1)
    bits = ((ns[:, None] >> exps[None, :]) & 1).astype(bool)
    pw = np.exp2(exps).astype(float)
    nf = ns.astype(float)[:, None]
    theta = np.where(bits, pw[None, :] / nf, 0.0)
    cum = np.cumsum(np.where(bits, pw[None, :], 0.0), axis=1)
    b = (nf - cum) / nf
    tsafe = np.where(bits, theta, 1.0)
    if target == "energy_form":
        c = 2.0 * math.expm1(s * _LOG2)
        term = np.where(bits, tsafe ** (s + 1.0) + c * tsafe ** s * b, 0.0)
        return term.sum(axis=1)
    logt = np.where(bits, np.log(tsafe), 0.0)
    if target == "log_kernel_form":
        term = theta * theta * (logt - _LOG4) + 2.0 * theta * logt * b
        return 2.0 * _LOG2 + term.sum(axis=1)
    if target == "leja_offset":
        rank = np.cumsum(bits, axis=1)
        term = np.where(bits, -2.0 * _LOG2 * (rank - 1) * theta - theta * logt, 0.0)
        return term.sum(axis=1)
    raise ValueError(f"unknown target {target!r}")


def batch_eta_values(ns, target: str, s: Optional[float] = None,
                     jobs: int = 1) -> np.ndarray:
    """Evaluate one arithmetic function on binary_weights(n) for an array
    of positive integers, vectorized.

    Matches the exact scalar evaluators to within a few ulps: components
    2^{n_k}/n and suffix masses are formed from exact integer cumsums
    before the single float division.
    """
    if target not in SCAN_TARGETS:
        raise ValueError(f"target must be one of {SCAN_TARGETS}")
    if target == "energy_form" and s is None:
        raise ValueError("energy_form needs s")
    ns = np.ascontiguousarray(ns, dtype=np.int64)
    if ns.size == 0:
        return np.empty(0)
    if ns.min() < 1:
        raise ValueError("integers must be positive")
    chunks = [ns[i:i + _CHUNK] for i in range(0, ns.size, _CHUNK)]
    if jobs > 1 and len(chunks) > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            parts = list(pool.map(lambda c: _chunk_values(c, target, s), chunks))
    else:
        parts = [_chunk_values(c, target, s) for c in chunks]
    return np.concatenate(parts)


@dataclass(frozen=True)
class ScanResult:
    """Exhaustive evaluation of one target over the order-m dyadic grid.

    ``xs``/``values`` hold the grid in decreasing-x order; ``extremum`` is
    the min for the energy form with 0 < s < 1 and the max otherwise, with
    ties resolved to the smallest x.  ``error_bound`` certifies the
    distance to the true extremal constant for the energy form (no such
    certificate is known for the log-kernel or offset targets, whose only
    resolution statement is the grid spacing 2^{-m+1}).
    """

    m: int
    target: str
    s: Optional[float]
    xs: np.ndarray
    values: np.ndarray
    extremum: float
    arg: Fraction
    arg_index: int
    orientation: str
    error_bound: Optional[float]

    def rows(self):
        yield from zip(self.xs, self.values)


def _certified_bound(s: float, m: int) -> float:
    if 0.0 < s < 1.0 or s > 1.0:
        return 2.0 ** s / 2.0 ** (m - 1)
    # -1 < s < 0
    return 2.0 ** ((1 - m) * (s + 1.0)) / (_LOG2 * math.expm1((s + 1.0) * _LOG2))


def scan_extremum(m: int, target: str, s: Optional[float] = None,
                  jobs: int = 1) -> ScanResult:
    """Scan one target over all 2^{m-1} grid points of order m.

    For the energy form: minimum when 0 < s < 1, maximum when -1 < s < 0
    or s > 1; s = 0 and s = 1 are rejected (the target is identically 1).
    The log-kernel and offset targets are maximized.
    """
    if not 1 <= m <= 24:
        raise ValueError("grid order m must be in [1, 24]")
    if target not in SCAN_TARGETS:
        raise ValueError(f"target must be one of {SCAN_TARGETS}")
    error_bound = None
    if target == "energy_form":
        if s is None:
            raise ValueError("energy_form needs s")
        if s in (0.0, 1.0):
            raise ValueError(f"energy form is identically 1 at s = {s}")
        if s <= -1.0:
            raise ValueError("energy form scan needs s > -1")
        error_bound = _certified_bound(s, m)
    ns = (1 << m) + 1 + 2 * np.arange(1 << (m - 1), dtype=np.int64)
    values = batch_eta_values(ns, target, s, jobs)
    xs = float(1 << m) / ns.astype(float)
    minimize = target == "energy_form" and 0.0 < s < 1.0
    extremum = float(values.min() if minimize else values.max())
    # ties break to the smallest x, i.e. the largest odd integer
    idx = int(np.nonzero(values == extremum)[0][-1])
    arg = Fraction(1 << m, int(ns[idx]))
    return ScanResult(m, target, s, xs, values, extremum, arg, idx,
                      "min" if minimize else "max", error_bound)


def interval_estimate(s: float, m: int, jobs: int = 1) -> tuple[float, float]:
    """Estimated closed interval of limit points of the scaled energy
    sequence with parameter s, from the order-m grid scan.

    One endpoint is known exactly (1 for the energy form, 0 for the s = 0
    and s = 1 targets); the other is the scanned extremum.
    """
    if s <= -1.0:
        raise ValueError("interval estimate needs s > -1")
    if s == 0.0:
        hi = scan_extremum(m, "leja_offset", jobs=jobs).extremum
        return (0.0, hi)
    if s == 1.0:
        hi = scan_extremum(m, "log_kernel_form", jobs=jobs).extremum
        return (0.0, hi)
    d = scan_extremum(m, "energy_form", s, jobs=jobs).extremum
    return (d, 1.0) if 0.0 < s < 1.0 else (1.0, d)


def stationarity_residual(x, s: float) -> float:
    """Stationarity diagnostic: the energy form at x minus
    2 (2^s - 1)/(s + 1) times the power sum of the infinite expansion.

    At interior extrema of the energy form (in x, for fixed s > 0, s != 1)
    this residual vanishes; at x = 1 it reduces to 1 - 2/(s + 1) and is a
    boundary diagnostic only.
    """
    if s <= 0.0 or s == 1.0:
        raise ValueError("stationarity diagnostic needs s > 0, s != 1")
    w_inf = expand_reciprocal(x, prefer_finite=False).weights()
    g = arith.power_sum(w_inf, s)
    h = arith.energy_form(w_inf, s)
    return h - 2.0 * math.expm1(s * _LOG2) / (s + 1.0) * g


def child_identities(m: int, n: int, s: float):
    """Evaluate both sides of the two parent-child grid identities linking
    order m to order m + 1.

    The point x = 2^m/(2^m + 2n + 1) has children 2n + 1 (expansion
    extended by the exponent m + 1) and 2n (last exponent m replaced by
    m + 1) at order m + 1.  Returns ((lhs, rhs), (lhs, rhs)) for the two
    identities; each pair agrees to rounding error.
    """
    x = grid_point(m, n)
    x_odd = grid_point(m + 1, 2 * n + 1)
    x_evn = grid_point(m + 1, 2 * n)
    ks = expand_reciprocal(x).exponents
    xf, xof, xef = float(x), float(x_odd), float(x_evn)

    h = energy_form_at(x, s)
    h_odd = energy_form_at(x_odd, s)
    h_evn = energy_form_at(x_evn, s)

    pow_full = math.fsum(2.0 ** (-k * s) for k in ks)
    pow_head = math.fsum(2.0 ** (-k * s) for k in ks[:-1])
    c = math.expm1(s * _LOG2)  # 2^s - 1

    lhs1 = h - h_odd
    rhs1 = ((1.0 - (xof / xf) ** (s + 1.0)) * h
            - xof ** (s + 1.0) * (2.0 ** (-(m + 1) * (s + 1.0))
                                  + c * 2.0 ** (-m) * pow_full))
    lhs2 = h - h_evn
    rhs2 = (((xf / xef) ** (s + 1.0) - 1.0) * h_evn
            + xf ** (s + 1.0) * ((2.0 ** (s + 1.0) - 1.0)
                                 * 2.0 ** (-(m + 1) * (s + 1.0))
                                 + c * 2.0 ** (-m) * pow_head))
    return (lhs1, rhs1), (lhs2, rhs2)

"""Scaled energy sequences, their leading-order predictions, full energy
expansions, remainder-boundedness scans, doubling-gap diagnostics, and the
Cesaro mean of the extremal potential deviations.

Branch points: the scaled sequences change definition at s = -1, 0, 1.
Parameters within 1e-9 of a branch (but not exactly on it) are rejected
instead of silently switched, since the scalings differ by log factors.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple, Optional

from .arith import energy_form, leja_offset, log_kernel_form
from .binary import binary_weights
from .energy import EnergyParams, extremal_potential, greedy_energy
from .special import (EULER_GAMMA, arclength_energy, log_term_constant,
                      sinc_power_series, zeta)

__all__ = [
    "t_sequence",
    "f_sequence",
    "TPrediction",
    "predict_t",
    "expansion_energy",
    "EnergyReport",
    "RemainderScan",
    "remainder_scan",
    "doubling_gap",
    "cesaro_mean",
]

_BRANCH_GUARD = 1e-9
_MAX_SCAN_N = 1 << 14


def _check_branches(s: float) -> None:
    for b in (-1.0, 0.0, 1.0):
        if s != b and abs(s - b) < _BRANCH_GUARD:
            raise ValueError(
                f"s = {s} is within {_BRANCH_GUARD} of the branch point {b}; "
                "pass the branch value exactly or move away from it")


def t_sequence(n: int, s: float) -> float:
    """The translated and scaled greedy energy T at index n.

    Six branches: plain translation for -2 < s < -1, log-normalized at
    s = -1, (E + n log n)/n at s = 0, power-normalized translation for
    |s| < 1, the log-subtracted form at s = 1, and E / n^{1+s} beyond.
    """
    if n < 2:
        raise ValueError("n must be >= 2")
    if s <= -2.0:
        raise ValueError("s must exceed -2")
    _check_branches(s)
    e = greedy_energy(n, EnergyParams(s))
    if s == 0.0:
        return (e + n * math.log(n)) / n
    if s == 1.0:
        return (e - n * n * math.log(n) / math.pi) / (n * n)
    if s > 1.0:
        return e / float(n) ** (1.0 + s)
    cont = arclength_energy(s) * n * n
    if s == -1.0:
        return (e - cont) / math.log(n)
    if s < -1.0:
        return e - cont
    return (e - cont) / float(n) ** (1.0 + s)


def f_sequence(n: int, s: float) -> float:
    """The translated and scaled extremal potential F at index n."""
    if n < 1:
        raise ValueError("n must be >= 1")
    if s <= -2.0:
        raise ValueError("s must exceed -2")
    _check_branches(s)
    u = extremal_potential(n, EnergyParams(s))
    if s == 0.0:
        return -u / math.log(n + 1.0)
    if s == 1.0:
        return (u - n * math.log(n) / math.pi) / n
    if s > 1.0:
        return u / float(n) ** s
    cont = arclength_energy(s) * n
    if s < 0.0:
        return u - cont
    return (u - cont) / float(n) ** s


class TPrediction(NamedTuple):
    value: float
    remainder_scale: float


def predict_t(n: int, s: float) -> TPrediction:
    """Leading-order prediction for T at index n, with the factor the
    remainder must be multiplied by for a boundedness check.

    The prediction is exact at s = 0.  For s >= -1 the remainder scales
    are n^{1+s} (|s| < 1), n^2 (s = 1, s = 2, s > 3), n^{s-1} (1 < s < 3),
    n^2 / log n (s = 3), and log n (s = -1).  Below s = -1 no leading form
    is available here.
    """
    if n < 2:
        raise ValueError("n must be >= 2")
    _check_branches(s)
    if s < -1.0:
        raise ValueError("prediction requires s >= -1")
    w = binary_weights(n)
    if s == 0.0:
        return TPrediction(leja_offset(w), 1.0)
    if s == -1.0:
        return TPrediction(-math.pi / 3.0 * energy_form(w, -1.0) / math.log(n),
                           math.log(n))
    if s == 1.0:
        value = (EULER_GAMMA + math.log(2.0 / math.pi) + log_kernel_form(w)) / math.pi
        return TPrediction(value, float(n) ** 2)
    value = 2.0 * zeta(s) / (2.0 * math.pi) ** s * energy_form(w, s)
    if s < 1.0:
        scale = float(n) ** (1.0 + s)
    elif s == 3.0:
        scale = n * n / math.log(n)
    elif s < 3.0 and s != 2.0:
        scale = float(n) ** (s - 1.0)
    else:
        scale = float(n) ** 2
    return TPrediction(value, scale)


def expansion_energy(n: int, s: float) -> float:
    """Multi-term energy expansion at index n, valid for s >= -1, s != 0.

    Generic s sums v(s) n^2 plus floor((s+1)/2) + 1 zeta-weighted terms;
    positive even integers make this exact.  Odd integers s = 2m + 1 get
    the n^2 log n term and the log-kernel-bearing n^2 term instead of the
    divergent j = m contribution.
    """
    if n < 2:
        raise ValueError("n must be >= 2")
    if s < -1.0 or s == 0.0:
        raise ValueError("expansion requires s >= -1 and s != 0")
    _check_branches(s)
    w = binary_weights(n)
    odd = s == round(s) and int(round(s)) % 2 == 1 and s > 0
    if odd:
        m = (int(round(s)) - 1) // 2
        q = math.gamma(m + 0.5) / (math.sqrt(math.pi) * math.pi * 4.0 ** m
                                   * math.factorial(m))
        terms = [q * n * n * math.log(n),
                 q * (EULER_GAMMA - math.log(math.pi) + log_term_constant(m)
                      + log_kernel_form(w)) * n * n]
        j_top = m - 1
    else:
        terms = [arclength_energy(s) * n * n]
        j_top = math.floor((s + 1.0) / 2.0)
    if j_top >= 0:
        coeffs = sinc_power_series(s, j_top + 1).coeffs
        front = 2.0 / (2.0 * math.pi) ** s
        for j in range(j_top + 1):
            terms.append(front * coeffs[j] * zeta(s - 2.0 * j)
                         * energy_form(w, s - 2.0 * j)
                         * float(n) ** (s - 2.0 * j + 1.0))
    return math.fsum(terms)


@dataclass(frozen=True)
class EnergyReport:
    """One scan row: exact energy, scaled value, prediction, and the
    remainder (scaled_value - prediction) with its boundedness factor."""

    n: int
    s: float
    exact_energy: float
    scaled_value: float
    prediction: float
    remainder: float
    remainder_scale: float

    @property
    def scaled_remainder(self) -> float:
        return self.remainder * self.remainder_scale


@dataclass(frozen=True)
class RemainderScan:
    """Scaled-remainder sweep over a range of indices.

    ``octave_sups`` lists sup |scaled remainder| per dyadic octave of n;
    ``diverging`` flags a top octave exceeding its predecessor by more
    than 20 percent.
    """

    s: float
    n_lo: int
    n_hi: int
    level: str
    rows: tuple[EnergyReport, ...]
    max_scaled: float
    arg_max: int
    octave_sups: tuple[float, ...]
    diverging: bool


def remainder_scan(s: float, n_lo: int, n_hi: int,
                   level: str = "expansion") -> RemainderScan:
    """Sweep |remainder| * scale over n in [n_lo, n_hi].

    level = "expansion" measures the full-expansion remainder
    E - expansion_energy (scale 1; at s = 0 this degenerates to the exact
    identity T = leja offset).  level = "leading" measures the
    leading-order remainder (T - predict_t) * remainder_scale.
    """
    if not 2 <= n_lo <= n_hi <= _MAX_SCAN_N:
        raise ValueError(f"range must sit inside [2, {_MAX_SCAN_N}]")
    if level not in ("expansion", "leading"):
        raise ValueError(f"unknown level {level!r}")
    rows = []
    for n in range(n_lo, n_hi + 1):
        if level == "leading" or s == 0.0:
            t = t_sequence(n, s)
            pred, scale = predict_t(n, s)
            rows.append(EnergyReport(n, s, greedy_energy(n, EnergyParams(s)),
                                     t, pred, t - pred, scale))
        else:
            e = greedy_energy(n, EnergyParams(s))
            pred = expansion_energy(n, s)
            rows.append(EnergyReport(n, s, e, e, pred, e - pred, 1.0))

    octaves: list[float] = []
    k_lo = n_lo.bit_length() - 1
    for row in rows:
        k = row.n.bit_length() - 1 - k_lo
        while len(octaves) <= k:
            octaves.append(0.0)
        octaves[k] = max(octaves[k], abs(row.scaled_remainder))
    if len(octaves) >= 2 and n_hi & (n_hi - 1) == 0:
        # a range ending exactly on a power of two leaves that single
        # point as a degenerate top bin; fold it into the last full octave
        top = octaves.pop()
        octaves[-1] = max(octaves[-1], top)
    max_row = max(rows, key=lambda r: abs(r.scaled_remainder))
    diverging = (len(octaves) >= 2
                 and octaves[-1] > 1.2 * max(octaves[:-1]))
    return RemainderScan(s, n_lo, n_hi, level, tuple(rows),
                         abs(max_row.scaled_remainder), max_row.n,
                         tuple(octaves), diverging)


def doubling_gap(n: int, s: float) -> float:
    """T at 2n minus T at n; tends to 0 for every s >= -1."""
    if n < 2:
        raise ValueError("n must be >= 2")
    return t_sequence(2 * n, s) - t_sequence(n, s)


def cesaro_mean(n: int, s: float) -> float:
    """Average of the first n extremal-potential deviations,
    (1/n) sum_{k<=n} (U_k(a_k) - k I_s), for -2 < s < 0.

    Uses the telescoping identity sum_k U_k(a_k) = E(n+1)/2, so the whole
    mean costs one closed-form energy evaluation rather than n of them.
    Converges to I_s / 2.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    if not -2.0 < s < 0.0:
        raise ValueError("Cesaro mean requires -2 < s < 0")
    cont = arclength_energy(s)
    e_next = greedy_energy(n + 1, EnergyParams(s))
    return (0.5 * e_next - 0.5 * n * (n + 1) * cont) / n

"""The arithmetic functions of normalized binary weight vectors that govern
greedy-energy asymptotics, together with the block partition that
telescopes their double sums.

All evaluators accept a :class:`~rieszgreedy.binary.WeightVector` and
return floats.  Suffix masses b_k = 1 - (theta_1 + ... + theta_k) are
formed in exact rational arithmetic before any rounding, which keeps the
inner double sums O(p) and free of cancellation.  An exact geometric unit
tail (c, c/2, ...) is folded in through closed forms, so vectors coming
from dyadic reciprocals evaluate exactly up to double rounding.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .binary import WeightVector

__all__ = [
    "energy_form",
    "log_kernel_form",
    "leja_offset",
    "power_sum",
    "log_moment",
    "BlockPartition",
    "dyadic_blocks",
    "energy_form_telescoped",
    "DyadicStructureError",
]

_LOG2 = math.log(2.0)
_LOG4 = math.log(4.0)


class DyadicStructureError(ValueError):
    """Raised when consecutive components are not related by powers of two."""


def _pow2m1(s: float) -> float:
    """2^s - 1, accurate near s = 0."""
    return math.expm1(s * _LOG2)


def _expanded(w: WeightVector) -> tuple[list[float], list[float]]:
    """Float components and suffix masses, with any exact unit tail replaced
    by its single-component equivalent 2c.

    The replacement leaves the quadratic-form, log-kernel, and offset
    evaluations unchanged: the geometric tail (c, c/2, ...) contributes to
    each of them exactly what a final component of value 2c does, and the
    head terms only see the tail through its total mass.
    """
    comps = list(w.components)
    if w.unit_tail is not None:
        comps.append(2 * w.unit_tail)
    thetas = [float(t) for t in comps]
    bs: list[float] = []
    running = Fraction(0)
    for t in comps:
        running += t
        bs.append(float(1 - running))
    return thetas, bs


def _check_truncation(w: WeightVector, per_tail_bound: float, tol: float,
                      name: str) -> None:
    if w.tail_bound != 0.0 and per_tail_bound > tol:
        raise ValueError(
            f"{name}: truncated tail may contribute {per_tail_bound:.3e} "
            f"> tol = {tol:.3e}; rebuild the expansion with more terms")


def energy_form(w: WeightVector, s: float, tol: float = 1e-12) -> float:
    """The quadratic-in-weights form
    sum_k theta_k^{s+1} + 2(2^s - 1) sum_k theta_k^s b_k.

    Identically 1 at s = 0 and s = 1.  Finite vectors admit any real s;
    vectors with an infinite or truncated tail require s > -1 (the form is
    unbounded below that).
    """
    if not w.exact or w.unit_tail is not None:
        if s <= -1.0:
            raise ValueError("energy form needs s > -1 for infinite tails")
    p = len(w)
    if w.tail_bound != 0.0:
        # dropped terms are bounded by (2^{s+1}+3) 2^{-(n-1)(s+1)} each
        geom = 2.0 ** (-p * (s + 1.0)) / -math.expm1(-(s + 1.0) * _LOG2)
        _check_truncation(w, (_pow2m1(s + 1.0) + 4.0) * geom, tol, "energy_form")
    thetas, bs = _expanded(w)
    c = 2.0 * _pow2m1(s)
    return math.fsum(t ** (s + 1.0) + c * t ** s * b
                     for t, b in zip(thetas, bs))


def log_kernel_form(w: WeightVector, tol: float = 1e-12) -> float:
    """2 log 2 + sum_k theta_k^2 log(theta_k / 4)
    + 2 sum_k theta_k log(theta_k) b_k.

    Bounded by 5 log 4 in absolute value on vectors from integers.
    """
    p = len(w)
    _check_truncation(w, 6.0 / math.e * 2.0 ** (1 - p), tol, "log_kernel_form")
    thetas, bs = _expanded(w)
    return 2.0 * _LOG2 + math.fsum(
        t * t * (math.log(t) - _LOG4) + 2.0 * t * math.log(t) * b
        for t, b in zip(thetas, bs))


def leja_offset(w: WeightVector, tol: float = 1e-12) -> float:
    """-(2 log 2) sum_k (k-1) theta_k - sum_k theta_k log theta_k.

    For weights of an integer N this equals the translated, scaled
    logarithmic greedy energy at N exactly; it lies in [0, log(4/3)).
    """
    p = len(w)
    _check_truncation(w, _LOG2 * 2.0 ** (1 - p) * (3 * p + 4), tol, "leja_offset")
    thetas, _ = _expanded(w)
    return -math.fsum((2.0 * _LOG2 * k + math.log(t)) * t
                      for k, t in enumerate(thetas))


def power_sum(w: WeightVector, s: float, tol: float = 1e-12) -> float:
    """sum_k theta_k^s, for s > 0 on infinite vectors (any s on finite ones).

    Unlike the three forms above, this sum distinguishes the two
    expansions of a dyadic reciprocal; the exact unit tail is summed in
    closed form rather than collapsed.
    """
    infinite = w.unit_tail is not None or not w.exact
    if infinite and s <= 0.0:
        raise ValueError("power sum needs s > 0 for infinite tails")
    if w.tail_bound != 0.0:
        p = len(w)
        geom = 2.0 ** (-p * s) / -math.expm1(-s * _LOG2)
        _check_truncation(w, geom, tol, "power_sum")
    total = math.fsum(float(t) ** s for t in w.components)
    if w.unit_tail is not None:
        c = float(w.unit_tail)
        total += c ** s / -math.expm1(-s * _LOG2)
    return total


def log_moment(w: WeightVector, tol: float = 1e-12) -> float:
    """sum_k theta_k log theta_k, in [-2 log 2, 0].

    Like :func:`power_sum`, sensitive to which expansion of a dyadic
    reciprocal produced the vector.
    """
    if w.tail_bound != 0.0:
        p = len(w)
        _check_truncation(w, _LOG2 * (p + 1) * 2.0 ** (1 - p), tol, "log_moment")
    total = math.fsum(float(t) * math.log(float(t)) for t in w.components)
    if w.unit_tail is not None:
        c = float(w.unit_tail)
        total += 2.0 * c * (math.log(c) - _LOG2)
    return total


@dataclass(frozen=True)
class BlockPartition:
    """The unique partition of a dyadic weight vector into maximal strings
    of consecutive binary places.

    ``spans`` lists the finite blocks as 1-based inclusive index pairs;
    ``endpoints`` aligns with them, carrying (theta_first, b_first,
    theta_last, b_last) for each.  ``infinite_start`` is the 1-based index
    opening the final all-unit-gap block, when the vector has one, and
    ``infinite_theta`` its first component.
    """

    spans: tuple[tuple[int, int], ...]
    endpoints: tuple[tuple[Fraction, Fraction, Fraction, Fraction], ...]
    infinite_start: Optional[int] = None
    infinite_theta: Optional[Fraction] = None

    def blocks(self) -> list[tuple[int, ...]]:
        """Materialized 1-based index strings (finite blocks only)."""
        return [tuple(range(a, b + 1)) for a, b in self.spans]


def _exponent_gaps(w: WeightVector) -> list[int]:
    """Exponents k_j with theta_j = theta_1 2^{-k_j}, k_1 = 0."""
    lead = w.components[0]
    ks = [0]
    for j, t in enumerate(w.components[1:], start=2):
        ratio = lead / t
        num, den = ratio.numerator, ratio.denominator
        if den != 1 or num & (num - 1):
            raise DyadicStructureError(
                f"component {j} is not the leading one over a power of two")
        ks.append(num.bit_length() - 1)
    return ks


def dyadic_blocks(w: WeightVector) -> BlockPartition:
    """Partition the vector's binary places into maximal consecutive runs.

    Within a run, the components halve step by step; between runs the
    exponents jump by at least 2, which forces theta_end >= 2 b_end at
    every run end.  An exact unit tail extends (or constitutes) a final
    infinite run.  Truncated vectors are rejected: the partition is a
    statement about the exact vector.
    """
    if w.tail_bound != 0.0:
        raise ValueError("partition requires an exact weight vector")
    ks = _exponent_gaps(w)
    p = len(ks)
    runs: list[tuple[int, int]] = []
    start = 0
    for j in range(1, p):
        if ks[j] != ks[j - 1] + 1:
            runs.append((start, j - 1))
            start = j
    runs.append((start, p - 1))

    infinite_start = None
    infinite_theta = None
    if w.unit_tail is not None:
        lead = w.components[0]
        ratio = lead / w.unit_tail
        if ratio.denominator != 1 or ratio.numerator & (ratio.numerator - 1):
            raise DyadicStructureError("unit tail is not a power-of-two part")
        t_exp = ratio.numerator.bit_length() - 1
        if t_exp == ks[-1] + 1:
            # tail is contiguous with the last explicit run
            start, _ = runs.pop()
            infinite_start = start + 1
            infinite_theta = w.components[start]
        else:
            infinite_start = p + 1
            infinite_theta = w.unit_tail

    bs = w.suffix_masses()
    comps = w.components
    spans = []
    endpoints = []
    for a, b in runs:
        spans.append((a + 1, b + 1))
        theta_end, b_end = comps[b], bs[b]
        if w.unit_tail is None and b == p - 1:
            b_end = Fraction(0)
        if theta_end - 2 * b_end < 0:
            raise DyadicStructureError("run end violates theta >= 2b")
        endpoints.append((comps[a], bs[a], theta_end, b_end))
    return BlockPartition(tuple(spans), tuple(endpoints),
                          infinite_start, infinite_theta)


def energy_form_telescoped(w: WeightVector, s: float) -> float:
    """Evaluate the quadratic form block by block:
    each finite run contributes (2 theta_first)^s (2 b_first)
    + theta_last^s (theta_last - 2 b_last), and an infinite final run
    contributes (2 theta_first)^{s+1}.

    Agrees with :func:`energy_form`; useful as an independent route.
    """
    part = dyadic_blocks(w)
    terms = []
    for tf, bf, tl, bl in part.endpoints:
        terms.append((2.0 * float(tf)) ** s * (2.0 * float(bf)))
        terms.append(float(tl) ** s * float(tl - 2 * bl))
    if part.infinite_theta is not None:
        terms.append((2.0 * float(part.infinite_theta)) ** (s + 1.0))
    return math.fsum(terms)

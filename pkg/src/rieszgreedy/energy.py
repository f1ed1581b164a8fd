"""Exact Riesz energies on the unit circle: roots-of-unity energies, the
closed-form energy of greedy configurations via binary decomposition, and
a brute-force greedy construction used as an independent oracle.

Distances are always the chord |e^{ia} - e^{ib}| = 2 |sin((a - b)/2)|,
evaluated in that trigonometric form to avoid cancellation near
coincident points.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Optional

import numpy as np

from .binary import decompose

__all__ = [
    "EnergyParams",
    "CircleConfig",
    "roots_energy",
    "greedy_energy",
    "greedy_oracle",
    "extremal_potential",
    "config_energy",
    "prefix_energies",
]

_TWO_PI = 2.0 * math.pi


@dataclass(frozen=True)
class EnergyParams:
    """Riesz kernel parameter.  s = 0 switches to the -log|z - w| kernel.

    The closed-form greedy machinery requires s > -2; below that greedy
    sequences degenerate onto two antipodal points and are unsupported.
    """

    s: float

    @property
    def log_case(self) -> bool:
        return self.s == 0.0

    def require_greedy_range(self) -> None:
        if self.s <= -2.0:
            raise ValueError(f"s = {self.s} <= -2 is outside the greedy regime")


@dataclass(frozen=True)
class CircleConfig:
    """A configuration of pairwise distinct points on the circle, stored
    as angles in [0, 2 pi)."""

    angles: tuple[float, ...]

    def __post_init__(self):
        if len(set(self.angles)) != len(self.angles):
            raise ValueError("configuration has coincident points")

    def __len__(self) -> int:
        return len(self.angles)

    def write_csv(self, path) -> None:
        """One angle per line, 17 significant digits."""
        with open(path, "w", encoding="utf-8", newline="") as fh:
            for a in self.angles:
                fh.write(f"{a:.17g}\n")


def _kernel_np(chord: np.ndarray, s: float) -> np.ndarray:
    if s == 0.0:
        with np.errstate(divide="ignore"):
            return -np.log(chord)
    with np.errstate(divide="ignore"):
        return chord ** (-s)


def _kernel(chord: float, s: float) -> float:
    if s == 0.0:
        return math.inf if chord == 0.0 else -math.log(chord)
    if chord == 0.0:
        return math.inf if s > 0 else 0.0
    return chord ** (-s)


@lru_cache(maxsize=4096)
def _roots_energy_cached(n: int, s: float) -> float:
    if n <= 1:
        return 0.0
    if s == 0.0:
        return -n * math.log(n)
    # sum (sin pi k/n)^-s over k = 1..n-1, folded onto k <= n/2 where the
    # sine argument stays accurate
    half = np.arange(1, (n + 1) // 2)
    total = 2.0 * float(np.sum(np.sin(np.pi * half / n) ** (-s)))
    if n % 2 == 0:
        total += 1.0  # middle term, sin(pi/2)^-s
    return 2.0 ** (-s) * n * total


def roots_energy(n: int, params: EnergyParams) -> float:
    """Riesz energy of the n-th roots of unity; 0 for n = 1 and
    -n log n for the logarithmic kernel."""
    if n < 1:
        raise ValueError("n must be >= 1")
    return _roots_energy_cached(n, params.s)


def greedy_energy(n: int, params: EnergyParams) -> float:
    """Energy of the first n points of a greedy sequence, from the binary
    decomposition of n.

    With n = 2^{n_1} + ... + 2^{n_p} and suffix sums S_k = sum_{t>k} 2^{n_t},
    the energy is sum_{k<p} (S_k / 2^{n_k}) L(2^{n_k + 1})
    + sum_k (1 - 2 S_k / 2^{n_k}) L(2^{n_k}) where L is the roots-of-unity
    energy.  Costs O(p^2) arithmetic plus p cached root energies.
    """
    params.require_greedy_range()
    if n < 1:
        raise ValueError("n must be >= 1")
    if n == 1:
        return 0.0
    exps = decompose(n).exponents
    p = len(exps)
    suffix = 0
    suffixes = [0] * p
    for k in range(p - 1, -1, -1):
        suffixes[k] = suffix
        suffix += 1 << exps[k]
    terms = []
    for k in range(p):
        ratio = suffixes[k] / (1 << exps[k])  # exact: suffix < 2^{n_k} <= 2^53
        if k < p - 1:
            terms.append(ratio * _roots_energy_cached(1 << (exps[k] + 1), params.s))
        terms.append((1.0 - 2.0 * ratio) * _roots_energy_cached(1 << exps[k], params.s))
    return math.fsum(terms)


def extremal_potential(n: int, params: EnergyParams) -> float:
    """The extremal potential value attained by the (n+1)-st greedy point,
    via U_n(a_n) = (E(n+1) - E(n)) / 2."""
    if n < 1:
        raise ValueError("n must be >= 1")
    return 0.5 * (greedy_energy(n + 1, params) - greedy_energy(n, params))


def config_energy(config: CircleConfig, params: EnergyParams) -> float:
    """Direct pairwise energy of a configuration, O(N^2)."""
    ang = np.asarray(config.angles)
    rows = []
    for i in range(1, len(ang)):
        chord = 2.0 * np.abs(np.sin(0.5 * (ang[i] - ang[:i])))
        rows.append(float(np.sum(_kernel_np(chord, params.s))))
    return 2.0 * math.fsum(rows)


def prefix_energies(config: CircleConfig, params: EnergyParams) -> list[float]:
    """Energies of all prefixes: entry k is the energy of the first k+1
    points (so entry 0 is 0)."""
    ang = np.asarray(config.angles)
    out = [0.0]
    total = 0.0
    for i in range(1, len(ang)):
        chord = 2.0 * np.abs(np.sin(0.5 * (ang[i] - ang[:i])))
        total += 2.0 * float(np.sum(_kernel_np(chord, params.s)))
        out.append(total)
    return out


def _refine_extremum(angles: list[float], s: float, lo: float, hi: float,
                     minimize: bool, tol: float) -> float:
    """Locate the potential extremum in [lo, hi]: golden-section search
    followed by Newton steps on the analytic derivative.

    Golden section alone stalls at sqrt(eps) angle accuracy on a flat
    extremum; polishing the stationarity condition removes the first-order
    error that earlier points would otherwise inject into later steps.
    """
    ang = np.asarray(angles)

    def pot(z: float) -> float:
        chord = 2.0 * np.abs(np.sin(0.5 * (z - ang)))
        return float(np.sum(_kernel_np(chord, s)))

    sign = 1.0 if minimize else -1.0
    invphi = (math.sqrt(5.0) - 1.0) / 2.0
    glo, ghi = lo, hi
    c = ghi - invphi * (ghi - glo)
    d = glo + invphi * (ghi - glo)
    fc, fd = sign * pot(c), sign * pot(d)
    while ghi - glo > 1e-9:
        if fc < fd:
            ghi, d, fd = d, c, fc
            c = ghi - invphi * (ghi - glo)
            fc = sign * pot(c)
        else:
            glo, c, fc = c, d, fd
            d = glo + invphi * (ghi - glo)
            fd = sign * pot(d)
    z = 0.5 * (glo + ghi)

    # Newton on U'(z); with u = (z - a)/2 and T = 2|sin u|,
    #   U'  = -s sum T^{-s-1} sign(sin u) cos u          (s != 0)
    #   U'' =  s sum [(s+1) T^{-s-2} cos^2 u + T^{-s-1} |sin u| / 2]
    # and for the log kernel U' = -(1/2) sum cot u, U'' = (1/4) sum csc^2 u.
    for _ in range(6):
        u = 0.5 * (z - ang)
        su, cu = np.sin(u), np.cos(u)
        if s == 0.0:
            d1 = -0.5 * float(np.sum(cu / su))
            d2 = 0.25 * float(np.sum(1.0 / (su * su)))
        else:
            t = 2.0 * np.abs(su)
            d1 = -s * float(np.sum(t ** (-s - 1.0) * np.sign(su) * cu))
            d2 = s * float(np.sum((s + 1.0) * t ** (-s - 2.0) * cu * cu
                                  + 0.5 * t ** (-s - 1.0) * np.abs(su)))
        if d2 == 0.0 or not math.isfinite(d1) or not math.isfinite(d2):
            break
        step = d1 / d2
        z_new = min(max(z - step, lo), hi)
        if abs(z_new - z) < tol:
            z = z_new
            break
        z = z_new
    return z


def greedy_oracle(n: int, params: EnergyParams, grid_bits: int = 20,
                  refine_tol: float = 1e-12) -> tuple[CircleConfig, float]:
    """Construct the first n greedy points by brute force and return them
    with their directly computed pairwise energy.

    Starts from a_0 = 1 (rotation invariance makes the energy independent
    of this choice) and, at each step, extremizes the potential over a
    uniform grid of 2^grid_bits angles followed by golden-section
    refinement to ``refine_tol``.  Minimizes for s >= 0, maximizes for
    -2 < s < 0.  Ties at grid resolution resolve to the smallest angle.
    """
    params.require_greedy_range()
    if not 2 <= n <= 4096:
        raise ValueError("oracle supports 2 <= n <= 4096")
    if grid_bits < math.ceil(math.log2(n)) + 4:
        raise ValueError(f"grid_bits = {grid_bits} too coarse for n = {n}")
    size = 1 << grid_bits
    grid = _TWO_PI * np.arange(size) / size
    minimize = params.s >= 0.0

    angles = [0.0]
    potential = _kernel_np(2.0 * np.abs(np.sin(0.5 * grid)), params.s)
    cell = _TWO_PI / size
    for _ in range(1, n):
        idx = int(np.argmin(potential) if minimize else np.argmax(potential))
        if not math.isfinite(potential[idx]):
            raise RuntimeError("no usable extremum: all candidates coincide "
                               "with existing points")
        best = _refine_extremum(angles, params.s, grid[idx] - cell,
                                grid[idx] + cell, minimize, refine_tol)
        best %= _TWO_PI
        chord_min = min(2.0 * abs(math.sin(0.5 * (best - a))) for a in angles)
        if chord_min == 0.0:
            raise RuntimeError("refined extremum coincides with an existing point")
        angles.append(best)
        potential += _kernel_np(2.0 * np.abs(np.sin(0.5 * (grid - best))), params.s)

    config = CircleConfig(tuple(angles))
    return config, config_energy(config, params)

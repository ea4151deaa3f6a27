"""
Deterministic scan points for the convexity and Hermite-Hadamard checks.

Every scan enumerates a fixed grid first and seeded random pairs second, so
"the first witness" is well defined and reproducible.
"""
from fractions import Fraction
from itertools import combinations
from typing import List, Optional, Sequence, Tuple, Union

import numpy as np

from hh_lab.config import Config
from hh_lab.exceptions import InvalidArgumentError
from hh_lab.models.interval import Interval
from hh_lab.models.rational import Number, as_float

Pair = Tuple[Number, Number]
DomainLike = Union[Interval, Sequence, str]


def as_interval(domain: Optional[DomainLike], fallback: Optional[Interval] = None) -> Interval:
    if domain is None:
        return fallback or Interval.real_line()
    if isinstance(domain, Interval):
        return domain
    if isinstance(domain, str):
        return Interval.parse(domain)
    lo, hi = domain
    return Interval.parse(lo, hi)


def scan_window(domain: Interval) -> Interval:
    """Finite, strictly interior part of the domain the scans sample from."""
    return domain.window(Config.SAMPLE_RADIUS).shrink(Config.SCAN_MARGIN)


def _at(window: Interval, k: int, steps: int, exact: bool) -> Number:
    point = window.lo + Fraction(k, steps) * (window.hi - window.lo)
    return point if exact else as_float(point)


def grid_points(window: Interval, count: int = None, exact: bool = True) -> List[Number]:
    count = count or Config.GRID_POINTS
    if count < 2:
        raise InvalidArgumentError(f'grid needs at least 2 points, got {count}')
    return [_at(window, k, count - 1, exact) for k in range(count)]


def grid_pairs(window: Interval, count: int = None, exact: bool = True) -> List[Pair]:
    return list(combinations(grid_points(window, count, exact), 2))


def random_pairs(window: Interval, pairs: int, seed: int, exact: bool = True) -> List[Pair]:
    """Seeded pairs x < y on the k/2^bits lattice of the window, at least MIN_SEPARATION apart."""
    if pairs < 1:
        raise InvalidArgumentError(f'pairs must be >= 1, got {pairs}')
    steps = 2 ** Config.RATIONAL_GRID_BITS
    gap = max(1, int(Config.MIN_SEPARATION * steps))
    rng = np.random.default_rng(seed)
    found: List[Pair] = []
    while len(found) < pairs:
        draws = rng.integers(0, steps + 1, size=(2 * (pairs - len(found)) + 8, 2))
        lo, hi = draws.min(axis=1), draws.max(axis=1)
        keep = (hi - lo) >= gap
        for i, j in zip(lo[keep].tolist(), hi[keep].tolist()):
            found.append((_at(window, i, steps, exact), _at(window, j, steps, exact)))
            if len(found) == pairs:
                break
    return found


def scan_pairs(domain: Interval, pairs: int, seed: int, exact: bool = True) -> List[Pair]:
    """Grid pairs followed by `pairs` seeded random pairs."""
    window = scan_window(domain)
    return grid_pairs(window, exact=exact) + random_pairs(window, pairs, seed, exact)


def table_pairs(abscissae: Sequence[Fraction], domain: Interval, pairs: int, seed: int) -> List[Pair]:
    """Pairs drawn from tabulated abscissae only (no interpolation)."""
    window = domain.window(Config.SAMPLE_RADIUS)
    xs = [x for x in abscissae if window.contains_closed(x)]
    if len(xs) < 2:
        raise InvalidArgumentError('a tabulated scan needs at least two abscissae inside the domain')
    ordered = list(combinations(xs, 2))
    if len(ordered) <= pairs:
        return ordered
    rng = np.random.default_rng(seed)
    picks = np.sort(rng.choice(len(ordered), size=pairs, replace=False))
    return [ordered[i] for i in picks.tolist()]


def random_weights(count: int, max_den: int, seed: int) -> List[Fraction]:
    """Seeded weights p/q in (0, 1) with 2 <= q <= max_den."""
    if max_den < 2:
        raise InvalidArgumentError(f'max_den must be >= 2, got {max_den}')
    rng = np.random.default_rng(seed)
    dens = rng.integers(2, max_den + 1, size=count)
    nums = [int(rng.integers(1, den)) for den in dens.tolist()]
    return [Fraction(num, den) for num, den in zip(nums, dens.tolist())]


def probe_points(center: float, radius: float, window: Interval, count: int = None) -> np.ndarray:
    """Evenly spaced float probes of [center - radius, center + radius] clipped to the window."""
    lo, hi = window.bounds_float()
    left, right = max(lo, center - radius), min(hi, center + radius)
    return np.linspace(left, right, count or Config.SUPPORT_PROBES)

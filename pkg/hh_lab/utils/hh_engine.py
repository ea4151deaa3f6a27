"""
Hermite-Hadamard engine.

For a candidate pair (f, F) the sandwich

    f((x+y)/2) <= (F(y) - F(x)) / (y - x) <= (f(x) + f(y)) / 2

holds for all x != y exactly when f is convex and F is a primitive of f.
This module checks it pointwise, over scans, summed along dyadic
Q-partitions (where the middle terms telescope), and in its limit forms.
"""
import logging
import math
from fractions import Fraction
from typing import Iterable, List, Optional, Sequence

import mpmath
import numpy as np

from hh_lab.config import Config
from hh_lab.exceptions import ArithmeticDomainError, InvalidArgumentError
from hh_lab.models.func_def import FuncDef
from hh_lab.models.hh_report import (DerivativeCheck, DerivativeRow, HHPairResult, HHScanReport, IdentityCheck,
                                     ReconstructedPoint, SandwichReport, SandwichRow)
from hh_lab.models.interval import Interval
from hh_lab.models.k_partition import KPartition
from hh_lab.models.rational import Number, as_float, as_number, parse_rational
from hh_lab.models.shape import Provenance, Side
from hh_lab.utils import sampling
from hh_lab.utils.kriemann import TagRule, integrate, tagged_sum, trapezoid_sum
from hh_lab.utils.partition_builder import dyadic

logger = logging.getLogger(__name__)

DEFAULT_H_SCHEDULE = tuple(10.0 ** -k for k in range(1, 7))


def _scalar(value) -> Number:
    """Strings become rationals; Fractions, ints and floats pass through as_number."""
    if isinstance(value, str):
        return parse_rational(value)
    return as_number(value)


def _flags(mid: Number, quotient: Number, average: Number, tol: float):
    return mid - quotient <= tol, quotient - average <= tol


def hh_check_pair(f: FuncDef, F: FuncDef, x: Number, y: Number, tol: float) -> HHPairResult:
    x, y = _scalar(x), _scalar(y)
    if x == y:
        raise InvalidArgumentError(f'the sandwich needs x != y, got x = y = {x}')
    mid = f.value((x + y) / 2)
    quotient = (F.value(y) - F.value(x)) / (y - x)
    average = (f.value(x) + f.value(y)) / 2
    left, right = _flags(mid, quotient, average, tol)
    return HHPairResult(x, y, mid, quotient, average, left, right, tol)


def revalidate_pair(f: FuncDef, F: FuncDef, x: Number, y: Number, side: Side, tol: float) -> bool:
    """Re-evaluate one side with mpmath at doubled precision against tol / 10."""
    prec = Config.WITNESS_PRECISION_BITS
    xq, yq = Fraction(x), Fraction(y)
    step = yq - xq
    with mpmath.workprec(prec):
        quotient = (F.value_mp(yq, prec) - F.value_mp(xq, prec)) / (mpmath.mpf(step.numerator) / step.denominator)
        if side is Side.LEFT:
            margin = f.value_mp((xq + yq) / 2, prec) - quotient
        else:
            margin = quotient - (f.value_mp(xq, prec) + f.value_mp(yq, prec)) / 2
        return margin > tol / 10


def _candidates(f: FuncDef, F: FuncDef, domain: Interval, pairs: int, seed: int):
    if F.is_tabulated:
        return sampling.table_pairs(F.abscissae, domain, pairs, seed), True
    exact = f.exact_capable and F.exact_capable
    return sampling.scan_pairs(domain, pairs, seed, exact), exact


def hh_scan(f: FuncDef, F: FuncDef, domain=None, pairs: int = None, seed: int = None,
            tol: float = 1e-12) -> HHScanReport:
    """hh_check_pair over the grid and seeded random pairs, with per-side counts."""
    pairs = Config.DEFAULT_PAIRS if pairs is None else pairs
    seed = Config.DEFAULT_SEED if seed is None else seed
    if pairs < 1:
        raise InvalidArgumentError(f'pairs must be >= 1, got {pairs}')
    domain = sampling.as_interval(domain, f.domain)
    candidates, exact = _candidates(f, F, domain, pairs, seed)
    if not exact and not f.is_tabulated:
        return _vector_scan(f, F, candidates, seed, tol)
    tested = skipped = left_bad = right_bad = violations = 0
    first = None
    for x, y in candidates:
        try:
            result = hh_check_pair(f, F, x, y, tol)
        except (ArithmeticDomainError, KeyError):
            skipped += 1
            continue
        tested += 1
        if result:
            continue
        violations += 1
        left_bad += not result.left_holds
        right_bad += not result.right_holds
        if first is None:
            first = result
    logger.debug('hh_scan %s/%s: %d of %d pairs violate', f.name, F.name, violations, tested)
    return HHScanReport(tested, violations, left_bad, right_bad, seed, tol, first, skipped,
                        exact=f.exact_capable and F.exact_capable)


def _vector_scan(f: FuncDef, F: FuncDef, candidates, seed: int, tol: float) -> HHScanReport:
    xs = np.array([as_float(x) for x, _ in candidates], dtype=np.float64)
    ys = np.array([as_float(y) for _, y in candidates], dtype=np.float64)
    fx, fy = f.values(xs), f.values(ys)
    mids = f.values((xs + ys) / 2)
    quotients = (F.values(ys) - F.values(xs)) / (ys - xs)
    left_ok, right_ok = _flags(mids, quotients, (fx + fy) / 2, tol)
    bad = ~(left_ok & right_ok)
    first = None
    if bad.any():
        index = int(np.argmax(bad))
        first = hh_check_pair(f, F, float(xs[index]), float(ys[index]), tol)
    logger.debug('hh_scan %s/%s: %d of %d pairs violate', f.name, F.name, int(bad.sum()), len(xs))
    return HHScanReport(len(xs), int(bad.sum()), int((~left_ok).sum()), int((~right_ok).sum()), seed, tol,
                        first, 0, exact=False)


def _delta_F(F: FuncDef, p: KPartition, exact: bool) -> Number:
    """Telescoping sum of F(t_j) - F(t_{j-1}) over the partition."""
    if exact and p.n <= Config.EXACT_MAX_CELLS:
        values = [F.value(t) for t in p.points]
        if all(isinstance(v, Fraction) for v in values):
            return sum((hi - lo for lo, hi in zip(values, values[1:])), Fraction(0))
    return math.fsum(np.diff(F.values(p.points_array())))


def sandwich(f: FuncDef, F: FuncDef, x: Number, y: Number, max_depth: int = 12, tol: float = 1e-12) -> SandwichReport:
    """Midpoint sum <= F(y) - F(x) <= trapezoid sum along dyadic Q-partitions of [x, y].

    Depth d uses 2^(d-1) cells, so depth 1 is the single cell [x, y].
    """
    x, y = _scalar(x), _scalar(y)
    if not x < y:
        raise InvalidArgumentError(f'sandwich needs x < y, got {x}, {y}')
    if max_depth < 1:
        raise InvalidArgumentError(f'max_depth must be >= 1, got {max_depth}')
    x, y = Fraction(x), Fraction(y)
    exact = f.exact_capable and F.exact_capable
    target = F.value(y) - F.value(x)
    rows: List[SandwichRow] = []
    converged = False
    for depth in range(1, max_depth + 1):
        p = dyadic(x, y, depth - 1)
        mid = tagged_sum(f, p, TagRule.MIDPOINT, exact)
        trap = trapezoid_sum(f, p, exact)
        delta = _delta_F(F, p, exact)
        left, right = _flags(mid, delta, trap, tol)
        rows.append(SandwichRow(depth, p.n, mid, delta, trap, trap - mid, left, right))
        logger.debug('sandwich depth %d: %s <= %s <= %s', depth, mid, delta, trap)
        if abs(trap - mid) <= tol:
            converged = True
            break
    last = rows[-1]
    telescoping = all(isinstance(row.delta_F, Fraction) and row.delta_F == target for row in rows)
    return SandwichReport(x, y, rows, converged, (2 * last.midpoint_sum + last.trapezoid_sum) / 3,
                          telescoping, tol, exact)


def derive_primitive_identity(f: FuncDef, F: FuncDef, x: Number, y: Number, tol: float = None,
                              schedule: Optional[str] = None, exact: bool = False) -> IdentityCheck:
    """F(y) - F(x) equals the K-integral of f over [x, y]."""
    x, y = _scalar(x), _scalar(y)
    if not x < y:
        raise InvalidArgumentError(f'primitive identity needs x < y, got {x}, {y}')
    tol = Config.DEFAULT_TOL if tol is None else tol
    estimate = integrate(f, Fraction(x), Fraction(y), tol, schedule, exact=exact)
    delta = F.value(y) - F.value(x)
    allowance = max(tol, as_float(estimate.width))
    passed = abs(as_float(delta) - as_float(estimate.value)) <= allowance
    if estimate.exact and isinstance(delta, Fraction):
        passed = abs(delta - estimate.value) <= max(Fraction(repr(tol)), estimate.width)
    if not estimate.converged:
        logger.info('primitive identity on [%s, %s] is indeterminate: bracket did not converge', x, y)
    return IdentityCheck(delta, estimate.value, estimate.width, tol, passed, indeterminate=not estimate.converged)


def derivative_check(f: FuncDef, F: FuncDef, x: Number, h_schedule: Sequence[Number] = DEFAULT_H_SCHEDULE,
                     tol: float = 1e-4, two_sided: bool = True) -> DerivativeCheck:
    """Squeeze f(x+h/2) <= (F(x+h)-F(x))/h <= (f(x)+f(x+h))/2 for shrinking h, then quotient -> f(x).

    Quotients are one-sided, oriented by the sign of h; with two_sided the
    mirrored step -h is checked as well, so kinks are handled per side.
    """
    x = _scalar(x)
    if not f.domain.contains(x):
        raise InvalidArgumentError(f'x={x} is not interior to {f.domain.to_text()}')
    steps: List[Number] = []
    for h in h_schedule:
        h = Fraction(repr(h)) if isinstance(h, float) else _scalar(h)
        if h == 0:
            raise InvalidArgumentError('h_schedule contains 0')
        steps.append(h)
    if two_sided:
        steps = [side for h in steps for side in (h, -h)]
    for h in steps:
        if not (f.domain.contains(x + h) and F.domain.contains(x + h)):
            raise InvalidArgumentError(f'step h={h} leaves the domain at x={x}')
    if not isinstance(x, Fraction):
        steps = [float(h) for h in steps]
    target = f.value(x)
    fx, Fx = target, F.value(x)
    rows: List[DerivativeRow] = []
    for h in steps:
        mid = f.value(x + h / 2)
        quotient = (F.value(x + h) - Fx) / h
        average = (fx + f.value(x + h)) / 2
        left, right = _flags(mid, quotient, average, tol)
        rows.append(DerivativeRow(h, mid, quotient, average, left and right))
    smallest = min(abs(h) for h in steps)
    final = [row for row in rows if abs(row.h) == smallest]
    final_error = max(abs(as_float(row.quotient) - as_float(target)) for row in final)
    return DerivativeCheck(x=x, target=target, rows=rows, squeeze_holds=all(row.holds for row in rows),
                           converged=final_error <= tol, final_error=final_error, tol=tol)


def reconstruct_primitive(f: FuncDef, base: Number, xs: Iterable[Number], tol: float = None,
                          schedule: Optional[str] = None) -> List[ReconstructedPoint]:
    """F(x) = integral of f from base to x (negated for x < base), so F(base) = 0."""
    base = Fraction(_scalar(base))
    tol = Config.DEFAULT_TOL if tol is None else tol
    if not f.domain.contains(base):
        raise InvalidArgumentError(f'base {base} lies outside {f.domain.to_text()}')
    points: List[ReconstructedPoint] = []
    for x in xs:
        x = Fraction(_scalar(x))
        if x == base:
            points.append(ReconstructedPoint(x, Fraction(0), Fraction(0), Fraction(0), True))
            continue
        lo, hi = min(x, base), max(x, base)
        estimate = integrate(f, lo, hi, tol, schedule)
        if not estimate.converged:
            logger.warning('reconstruct %s: integral on [%s, %s] did not converge', f.name, lo, hi)
        sign = 1 if x > base else -1
        lower, upper = sign * estimate.lower, sign * estimate.upper
        points.append(ReconstructedPoint(x, sign * estimate.value, min(lower, upper), max(lower, upper),
                                         estimate.converged))
    return points


def reconstructed_function(f: FuncDef, base: Number, xs: Iterable[Number], tol: float = None,
                           schedule: Optional[str] = None) -> FuncDef:
    """The reconstructed primitive as a tabulated FuncDef answering only at base and xs."""
    xs = list(xs)
    points = reconstruct_primitive(f, base, [base, *xs], tol, schedule)
    return FuncDef.from_table(f'{f.name}_reconstructed', ((p.x, p.value) for p in points),
                              provenance=Provenance.RECONSTRUCTED, domain=f.domain)


def integral_average_check(f: FuncDef, x: Number, y: Number, tol: float = None,
                           schedule: Optional[str] = None) -> HHPairResult:
    """f((x+y)/2) <= (1/(y-x)) * integral of f over [x, y] <= (f(x)+f(y))/2."""
    x, y = _scalar(x), _scalar(y)
    if not x < y:
        raise InvalidArgumentError(f'integral average needs x < y, got {x}, {y}')
    tol = Config.DEFAULT_TOL if tol is None else tol
    estimate = integrate(f, Fraction(x), Fraction(y), tol, schedule)
    average = estimate.value / (y - x)
    mid = f.value((x + y) / 2)
    ends = (f.value(x) + f.value(y)) / 2
    left, right = _flags(mid, average, ends, tol)
    return HHPairResult(x, y, mid, average, ends, left, right, tol)

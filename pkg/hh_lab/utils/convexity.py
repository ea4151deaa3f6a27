"""
Sample-based convexity checks, numeric support lines and Hermite-Hadamard
violation search.

Verdicts are empirical: NoViolationFound means no tested pair broke the
inequality by more than tol. Every reported witness is re-evaluated with
mpmath at doubled precision and a tenfold tighter tolerance first.
"""
import logging
from fractions import Fraction
from typing import Callable, List, Optional

import mpmath
import numpy as np

from hh_lab.config import Config
from hh_lab.exceptions import ArithmeticDomainError, InvalidArgumentError, NoSupportError
from hh_lab.models.convexity_report import (ConvexityReport, SupportConvexityCheck, SupportLine, Verdict,
                                            ViolationWitness, Witness)
from hh_lab.models.func_def import FuncDef
from hh_lab.models.interval import Interval
from hh_lab.models.k_partition import KField, KPartition
from hh_lab.models.rational import Number, as_float, as_number, parse_rational
from hh_lab.models.shape import Shape
from hh_lab.utils import sampling
from hh_lab.utils.sampling import DomainLike
from hh_lab.utils.hh_engine import hh_check_pair, revalidate_pair
from hh_lab.utils.partition_builder import uniform

logger = logging.getLogger(__name__)

CERTIFY_GRID_CELLS = 64


def _mp(value: Number):
    if isinstance(value, Fraction):
        return mpmath.mpf(value.numerator) / value.denominator
    return mpmath.mpf(value)


def _revalidate_weighted(f: FuncDef, x, y, lam, tol: float) -> bool:
    prec = Config.WITNESS_PRECISION_BITS
    with mpmath.workprec(prec):
        weight = _mp(lam)
        z = lam * x + (1 - lam) * y
        lhs = f.value_mp(z, prec)
        rhs = weight * f.value_mp(x, prec) + (1 - weight) * f.value_mp(y, prec)
        return lhs - rhs > tol / 10


def _weighted_scan(check: str, f: FuncDef, domain: Interval, pairs: int, seed: int, tol: float,
                   weight_for: Callable[[int], Fraction]) -> ConvexityReport:
    if pairs is None or pairs < 1:
        raise InvalidArgumentError(f'pairs must be >= 1, got {pairs}')
    exact = f.exact_capable
    if f.is_tabulated:
        candidates = sampling.table_pairs(f.abscissae, domain, pairs, seed)
    else:
        candidates = sampling.scan_pairs(domain, pairs, seed, exact)
    tested = 0
    for index, (x, y) in enumerate(candidates):
        lam = weight_for(index)
        z = lam * x + (1 - lam) * y if exact or f.is_tabulated else float(lam) * x + (1 - float(lam)) * y
        try:
            lhs = f.value(z)
        except (ArithmeticDomainError, KeyError):
            continue
        tested += 1
        weight = lam if isinstance(lhs, Fraction) else float(lam)
        rhs = weight * f.value(x) + (1 - weight) * f.value(y)
        if lhs - rhs > tol and _revalidate_weighted(f, x, y, lam, tol):
            logger.debug('%s: %s counterexample at x=%s y=%s lam=%s', check, f.name, x, y, lam)
            return ConvexityReport(check, Verdict.COUNTEREXAMPLE, tested, seed, tol,
                                   Witness(x, y, lam, lhs, rhs, z))
    return ConvexityReport(check, Verdict.NO_VIOLATION, tested, seed, tol)


def jensen_check(f: FuncDef, domain: DomainLike = None, pairs: int = None, seed: int = None,
                 tol: float = 1e-12) -> ConvexityReport:
    """Midpoint inequality f((x+y)/2) <= (f(x)+f(y))/2 on grid and seeded random pairs."""
    pairs = Config.DEFAULT_PAIRS if pairs is None else pairs
    seed = Config.DEFAULT_SEED if seed is None else seed
    half = Fraction(1, 2)
    return _weighted_scan('jensen', f, sampling.as_interval(domain, f.domain), pairs, seed, tol,
                          lambda _: half)


def k_convex_check(f: FuncDef, domain: DomainLike = None, pairs: int = None, max_den: int = 16,
                   seed: int = None, tol: float = 1e-12) -> ConvexityReport:
    """Convexity inequality with rational weights of denominator <= max_den."""
    pairs = Config.DEFAULT_PAIRS if pairs is None else pairs
    seed = Config.DEFAULT_SEED if seed is None else seed
    if pairs < 1:
        raise InvalidArgumentError(f'pairs must be >= 1, got {pairs}')
    domain = sampling.as_interval(domain, f.domain)
    weights = sampling.random_weights(Config.GRID_POINTS ** 2 + pairs, max_den, seed + 1)
    return _weighted_scan('k_convex', f, domain, pairs, seed, tol, lambda index: weights[index % len(weights)])


def second_difference_check(f: FuncDef, grid: KPartition, tol: float = 1e-12) -> ConvexityReport:
    """Discrete convexity on consecutive grid triples.

    Each triple (t_prev, t, t_next) is read as the convex combination
    t = lam t_prev + (1 - lam) t_next. Twice the chord gap f(t) - chord(t) must
    stay within tol; on a uniform grid that is the second difference
    f(t_prev) - 2 f(t) + f(t_next) >= -tol.
    """
    if grid.n < 2:
        raise InvalidArgumentError(f'second differences need at least 3 grid points, got {grid.n + 1}')
    exact = grid.field is KField.RATIONALS and f.exact_capable
    points = list(grid.points) if exact or f.is_tabulated else grid.points_array().tolist()
    values = [f.value(t) for t in points]
    for i in range(1, len(points) - 1):
        x, z, y = points[i - 1], points[i], points[i + 1]
        lam = (y - z) / (y - x)
        lhs = values[i]
        rhs = lam * values[i - 1] + (1 - lam) * values[i + 1]
        if 2 * (lhs - rhs) > tol:
            logger.debug('second_difference: %s bends down at t=%s', f.name, z)
            return ConvexityReport('second_difference', Verdict.COUNTEREXAMPLE, i, None, tol,
                                   Witness(x, y, lam, lhs, rhs, z))
    return ConvexityReport('second_difference', Verdict.NO_VIOLATION, len(points) - 2, None, tol)


def _richardson(quotients: List) -> mpmath.mpf:
    """Extrapolate h -> 0 from quotients at halving steps, using the last few levels only."""
    order = min(3, len(quotients) - 1)
    table = list(quotients[-(order + 1):])
    for j in range(1, order + 1):
        factor = 2 ** j - 1
        table = [table[k] + (table[k] - table[k - 1]) / factor for k in range(1, len(table))]
    return table[-1]


def support_line(f: FuncDef, z: Number, h0: float = 1e-2, tol: float = 1e-9) -> SupportLine:
    """Line through (z, f(z)) with slope the midpoint of the one-sided derivatives, checked to lie below f."""
    z = as_number(z)
    if not f.domain.contains(z):
        raise InvalidArgumentError(f'support point {z} is not interior to {f.domain.to_text()}')
    lo, hi = f.domain.bounds_float()
    zf = as_float(z)
    h0 = min(h0, (zf - lo) / 2, (hi - zf) / 2)
    if not h0 > 0:
        raise InvalidArgumentError(f'no room for difference quotients around {z}')
    base = Fraction(repr(h0))
    zq = Fraction(z)
    prec = Config.WITNESS_PRECISION_BITS
    with mpmath.workprec(prec):
        fz = f.value_mp(zq, prec)
        left, right = [], []
        for k in range(Config.RICHARDSON_STEPS):
            h = base / 2 ** k
            step = _mp(h)
            left.append((fz - f.value_mp(zq - h, prec)) / step)
            right.append((f.value_mp(zq + h, prec) - fz) / step)
        d_minus, d_plus = _richardson(left), _richardson(right)
        slope = (d_minus + d_plus) / 2
        intercept = fz - slope * _mp(zq)
        line = SupportLine(z=z, slope=float(slope), intercept=float(intercept),
                           left_slope=float(d_minus), right_slope=float(d_plus))
    f_z = as_float(f.value(z))
    if abs(line(zf) - f_z) > tol * max(1.0, abs(f_z)):
        raise NoSupportError(f'{f.name}: line misses f({z}) by {abs(line(zf) - f_z):.3e}')
    probes = sampling.probe_points(zf, Config.SUPPORT_PROBE_RADIUS, sampling.scan_window(f.domain))
    gaps = f.values(probes) - (line.slope * probes + line.intercept)
    worst = int(np.argmin(gaps))
    if gaps[worst] < -tol * max(1.0, abs(f_z)):
        raise NoSupportError(f'{f.name}: line at z={z} exceeds f at x={probes[worst]:.6g} '
                             f'by {-gaps[worst]:.3e}; f is not convex near z')
    return line


def support_convexity_check(f: FuncDef, x: Number, y: Number, lam, tol: float = 1e-9) -> SupportConvexityCheck:
    """Convexity at z = lam x + (1 - lam) y derived through the support line at z."""
    x, y, lam = as_number(x), as_number(y), parse_rational(lam)
    if not 0 < lam < 1:
        raise InvalidArgumentError(f'lam must lie in (0, 1), got {lam}')
    z = lam * x + (1 - lam) * y
    f_z = f.value(z)
    f_combination = lam * f.value(x) + (1 - lam) * f.value(y)
    try:
        g = support_line(f, z, tol=tol)
    except NoSupportError as exc:
        return SupportConvexityCheck(x, y, lam, z, f_z, float('nan'), f_combination, False, str(exc))
    line_combination = float(lam) * g(x) + (1 - float(lam)) * g(y)
    passed = abs(line_combination - as_float(f_z)) <= tol * max(1.0, abs(as_float(f_z))) \
        and line_combination <= as_float(f_combination) + tol
    return SupportConvexityCheck(x, y, lam, z, f_z, line_combination, f_combination, passed)


def find_violation(f: FuncDef, F: FuncDef, domain: DomainLike = None, budget: int = None, seed: int = None,
                   tol: float = 1e-12) -> Optional[ViolationWitness]:
    """First pair, in grid-then-random order, breaking either side of the Hermite-Hadamard sandwich."""
    budget = Config.DEFAULT_PAIRS if budget is None else budget
    seed = Config.DEFAULT_SEED if seed is None else seed
    if budget < 1:
        raise InvalidArgumentError(f'budget must be >= 1, got {budget}')
    domain = sampling.as_interval(domain, f.domain)
    if F.is_tabulated:
        candidates = sampling.table_pairs(F.abscissae, domain, budget, seed)
    else:
        candidates = sampling.scan_pairs(domain, budget, seed, f.exact_capable and F.exact_capable)
    for x, y in candidates:
        try:
            result = hh_check_pair(f, F, x, y, tol)
        except (ArithmeticDomainError, KeyError):
            continue
        if result.left_holds and result.right_holds:
            continue
        witness = result.witness()
        if revalidate_pair(f, F, x, y, witness.side, tol):
            logger.debug('violation: %s/%s %s side at x=%s y=%s', f.name, F.name, witness.side.value, x, y)
            return ViolationWitness(witness.x, witness.y, witness.side, witness.lhs, witness.rhs, revalidated=True)
    return None


def certify_shape(f: FuncDef, domain: DomainLike = None, tol: float = 1e-10, pairs: int = None,
                  seed: int = None) -> FuncDef:
    """Empirical shape: convex and/or concave on a grid and a Jensen scan, recorded as verified_shape."""
    domain = sampling.as_interval(domain, f.domain)

    def passes(g: FuncDef) -> bool:
        window = sampling.scan_window(domain)
        if g.is_tabulated:
            xs = sorted(x for x in g.abscissae if window.contains_closed(x))
            if len(xs) < 3:
                return False
            alphas = tuple((x - xs[0]) / (xs[-1] - xs[0]) for x in xs)
            grid = KPartition(xs[0], xs[-1], alphas)
            return bool(second_difference_check(g, grid, tol))
        grid = uniform(window.lo, window.hi, CERTIFY_GRID_CELLS)
        return bool(second_difference_check(g, grid, tol)) and bool(jensen_check(g, domain, pairs, seed, tol))

    convex, concave = passes(f), passes(f.negated())
    if convex and concave:
        shape = Shape.AFFINE
    elif convex:
        shape = Shape.CONVEX
    elif concave:
        shape = Shape.CONCAVE
    else:
        shape = Shape.UNKNOWN
    logger.debug('certify_shape: %s is %s on %s', f.name, shape.value, domain.to_text())
    return f.with_verified_shape(shape)

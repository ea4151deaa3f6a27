"""
Upper/lower K-Riemann sums, tagged sums and the integration driver.

Per-cell sup/inf values are estimates whose provenance is the BoundStrategy:
EndpointConvex is exact for the sup of a convex function (and the inf of a
concave one); the opposite extremum is located by ternary search.
"""
import logging
import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Callable, List, Optional, Sequence, Tuple, Union

import numpy as np
from scipy.optimize import minimize_scalar

from hh_lab.config import Config
from hh_lab.exceptions import InvalidArgumentError, StrategyMisuseError
from hh_lab.extensions import worker_pool
from hh_lab.models.bound_strategy import BoundStrategy, StrategyKind
from hh_lab.models.func_def import FuncDef
from hh_lab.models.integral_estimate import BracketRow, IntegralEstimate, SumReport
from hh_lab.models.k_partition import KField, KPartition
from hh_lab.models.rational import Number, Rational, as_float, parse_rational
from hh_lab.models.shape import Shape
from hh_lab.utils.partition_builder import uniform
from hh_lab.utils.schedule_parser import default_schedule, resolve_schedule

logger = logging.getLogger(__name__)

ENDPOINT_SHAPES = (Shape.CONVEX, Shape.CONCAVE, Shape.AFFINE)


class TagRule(str, Enum):
    LEFT = 'left'
    RIGHT = 'right'
    MIDPOINT = 'midpoint'


@dataclass
class _CellData:
    """Per-cell widths, endpoint values and extremum estimates."""
    widths: Sequence[Number]
    left: Sequence[Number]
    right: Sequence[Number]
    infs: Sequence[Number]
    sups: Sequence[Number]
    exact: bool

    def lower(self) -> Number:
        return _weighted_sum(self.infs, self.widths, self.exact)

    def upper(self) -> Number:
        return _weighted_sum(self.sups, self.widths, self.exact)

    def trapezoid(self) -> Number:
        if self.exact:
            return sum(((l + r) * w for l, r, w in zip(self.left, self.right, self.widths)), Fraction(0)) / 2
        return math.fsum((np.asarray(self.left) + np.asarray(self.right)) * np.asarray(self.widths)) / 2


def _weighted_sum(values, widths, exact: bool) -> Number:
    if exact:
        return sum((v * w for v, w in zip(values, widths)), Fraction(0))
    return math.fsum(np.asarray(values, dtype=np.float64) * np.asarray(widths, dtype=np.float64))


def _check_strategy(f: FuncDef, s: BoundStrategy):
    if s.kind is StrategyKind.ENDPOINT_CONVEX and f.shape not in ENDPOINT_SHAPES:
        raise StrategyMisuseError(
            f'EndpointConvex needs a convex, concave or affine function; {f.name} is {f.shape.value}')


def _use_exact(f: FuncDef, p: KPartition, exact: bool) -> bool:
    return exact and p.field is KField.RATIONALS and f.exact_capable and p.n <= Config.EXACT_MAX_CELLS


# float kernels

def _ternary_min(fn: Callable[[np.ndarray], np.ndarray], lo: np.ndarray, hi: np.ndarray) -> np.ndarray:
    """Vectorized ternary search for the minimum of convex fn on each [lo, hi]."""
    l, r = lo.copy(), hi.copy()
    stop = (hi - lo) * Config.TERNARY_REL_TOL
    for _ in range(Config.TERNARY_MAX_STEPS):
        active = (r - l) > stop
        if not active.any():
            break
        third = (r - l) / 3
        m1, m2 = l + third, r - third
        f1, f2 = fn(m1), fn(m2)
        go_left = f1 < f2
        r = np.where(active & go_left, m2, r)
        l = np.where(active & ~go_left, m1, l)
    return fn((l + r) / 2)


def _convex_min(fn, lo, hi, flo, fhi) -> np.ndarray:
    """Cell minima of a convex function; endpoints unless both ends slope inward."""
    delta = (hi - lo) * Config.TERNARY_REL_TOL
    interior = (fn(lo + delta) < flo) & (fn(hi - delta) < fhi)
    result = np.minimum(flo, fhi)
    if interior.any():
        found = _ternary_min(fn, lo[interior], hi[interior])
        result[interior] = np.minimum(result[interior], found)
    return result


def _chunk_bounds(f: FuncDef, s: BoundStrategy, lo, hi, flo, fhi) -> Tuple[np.ndarray, np.ndarray]:
    if s.kind is StrategyKind.ENDPOINT_CONVEX:
        if f.shape is Shape.CONCAVE:
            sups = -_convex_min(lambda xs: -f.values(xs), lo, hi, -flo, -fhi)
            return np.minimum(flo, fhi), sups
        return _convex_min(f.values, lo, hi, flo, fhi), np.maximum(flo, fhi)
    if s.kind is StrategyKind.DENSE_SAMPLE:
        steps = np.arange(s.count, dtype=np.float64) / (s.count - 1)
        probes = lo[:, None] + (hi - lo)[:, None] * steps[None, :]
        probes[:, 0], probes[:, -1] = lo, hi
        values = f.values(probes.ravel()).reshape(probes.shape)
        return values.min(axis=1), values.max(axis=1)
    pairs = [s.oracle(float(a), float(b)) for a, b in zip(lo, hi)]
    infs = np.array([min(inf, a, b) for (inf, _), a, b in zip(pairs, flo, fhi)], dtype=np.float64)
    sups = np.array([max(sup, a, b) for (_, sup), a, b in zip(pairs, flo, fhi)], dtype=np.float64)
    return infs, sups


def _float_cell_data(f: FuncDef, p: KPartition, s: BoundStrategy) -> _CellData:
    points = p.points_array()
    values = f.values(points)
    lo, hi = points[:-1], points[1:]
    flo, fhi = values[:-1], values[1:]
    n = p.n
    chunk = Config.CHUNK_CELLS
    spans = [(start, min(start + chunk, n)) for start in range(0, n, chunk)]
    if len(spans) == 1:
        infs, sups = _chunk_bounds(f, s, lo, hi, flo, fhi)
    else:
        with worker_pool(len(spans)) as pool:
            parts = list(pool.map(lambda span: _chunk_bounds(f, s, lo[span[0]:span[1]], hi[span[0]:span[1]],
                                                              flo[span[0]:span[1]], fhi[span[0]:span[1]]), spans))
        infs = np.concatenate([part[0] for part in parts])
        sups = np.concatenate([part[1] for part in parts])
    return _CellData(hi - lo, flo, fhi, infs, sups, exact=False)


# exact kernels

def _exact_convex_min(f: FuncDef, lo: Fraction, hi: Fraction, flo, fhi):
    delta = (hi - lo) * Fraction(Config.TERNARY_REL_TOL)
    if f.value(lo + delta) >= flo:
        return flo
    if f.value(hi - delta) >= fhi:
        return fhi
    found = _ternary_min(f.values, np.array([as_float(lo)]), np.array([as_float(hi)]))[0]
    return min(float(found), as_float(flo), as_float(fhi))


def _exact_cell_data(f: FuncDef, p: KPartition, s: BoundStrategy) -> _CellData:
    points = p.points
    values = [f.value(t) for t in points]
    widths = [hi - lo for lo, hi in zip(points, points[1:])]
    infs, sups = [], []
    for i, (lo, hi) in enumerate(zip(points, points[1:])):
        flo, fhi = values[i], values[i + 1]
        if s.kind is StrategyKind.ENDPOINT_CONVEX:
            if f.shape is Shape.CONCAVE:
                neg = f.negated()
                infs.append(min(flo, fhi))
                sups.append(-_exact_convex_min(neg, lo, hi, -flo, -fhi))
            else:
                infs.append(_exact_convex_min(f, lo, hi, flo, fhi))
                sups.append(max(flo, fhi))
        elif s.kind is StrategyKind.DENSE_SAMPLE:
            probes = [lo + (hi - lo) * Fraction(k, s.count - 1) for k in range(s.count)]
            sample = [values[i], *(f.value(t) for t in probes[1:-1]), values[i + 1]]
            infs.append(min(sample))
            sups.append(max(sample))
        else:
            inf, sup = s.oracle(as_float(lo), as_float(hi))
            infs.append(min(float(inf), as_float(flo), as_float(fhi)))
            sups.append(max(float(sup), as_float(flo), as_float(fhi)))
    exact = all(isinstance(v, Fraction) for v in (*values, *infs, *sups))
    if not exact:
        infs = [as_float(v) for v in infs]
        sups = [as_float(v) for v in sups]
        values = [as_float(v) for v in values]
        widths = [as_float(w) for w in widths]
    return _CellData(widths, values[:-1], values[1:], infs, sups, exact)


def _cell_data(f: FuncDef, p: KPartition, s: BoundStrategy, exact: bool) -> _CellData:
    _check_strategy(f, s)
    if _use_exact(f, p, exact):
        return _exact_cell_data(f, p, s)
    return _float_cell_data(f, p, s)


def upper_sum(f: FuncDef, p: KPartition, s: BoundStrategy, exact: bool = True) -> Number:
    """Sum of M_i (t_i - t_{i-1}) with M_i estimated by the strategy."""
    return _cell_data(f, p, s, exact).upper()


def lower_sum(f: FuncDef, p: KPartition, s: BoundStrategy, exact: bool = True) -> Number:
    """Sum of m_i (t_i - t_{i-1}) with m_i estimated by the strategy."""
    return _cell_data(f, p, s, exact).lower()


def sum_report(f: FuncDef, p: KPartition, s: BoundStrategy, exact: bool = True) -> SumReport:
    data = _cell_data(f, p, s, exact)
    return SumReport(partition=p.descriptor(), lower=data.lower(), upper=data.upper(),
                     strategy=s.describe(), exact=data.exact, cells=p.n)


def _tag_points(p: KPartition, tags, exact: bool):
    """Tag abscissae as Fractions (exact) or a float64 array."""
    if isinstance(tags, str) and not isinstance(tags, TagRule):
        tags = TagRule(tags.lower())
    if isinstance(tags, TagRule):
        if exact:
            pts = p.points
            if tags is TagRule.LEFT:
                return list(pts[:-1])
            if tags is TagRule.RIGHT:
                return list(pts[1:])
            return [(lo + hi) / 2 for lo, hi in zip(pts, pts[1:])]
        pts = p.points_array()
        if tags is TagRule.LEFT:
            return pts[:-1]
        if tags is TagRule.RIGHT:
            return pts[1:]
        return (pts[:-1] + pts[1:]) / 2
    tags = list(tags)
    if len(tags) != p.n:
        raise InvalidArgumentError(f'expected {p.n} tags, got {len(tags)}')
    for j, ((lo, hi), tag) in enumerate(zip(p.cells(), tags)):
        if not lo <= tag <= hi:
            raise InvalidArgumentError(f'tag {tag} lies outside cell {j + 1} [{lo}, {hi}]')
    if exact:
        return [parse_rational(tag) if isinstance(tag, (int, Fraction)) else tag for tag in tags]
    return np.array([as_float(tag) for tag in tags], dtype=np.float64)


def tagged_sum(f: FuncDef, p: KPartition, tags: Union[TagRule, str, Sequence[Number]], exact: bool = True) -> Number:
    """Sum of f(s_j)(t_j - t_{j-1}) for a tag rule or explicit tags."""
    use_exact = _use_exact(f, p, exact)
    points = _tag_points(p, tags, use_exact)
    if use_exact:
        cells = p.points
        widths = [hi - lo for lo, hi in zip(cells, cells[1:])]
        values = [f.value(s) for s in points]
        if all(isinstance(v, Fraction) for v in values):
            return _weighted_sum(values, widths, True)
        return _weighted_sum([as_float(v) for v in values], [as_float(w) for w in widths], False)
    widths = np.diff(p.points_array())
    return _weighted_sum(f.values(points), widths, False)


def trapezoid_sum(f: FuncDef, p: KPartition, exact: bool = True) -> Number:
    """Composite trapezoid value: half of the left plus right tagged sums."""
    return (tagged_sum(f, p, TagRule.LEFT, exact) + tagged_sum(f, p, TagRule.RIGHT, exact)) / 2


def default_strategy(f: FuncDef) -> BoundStrategy:
    if f.shape in ENDPOINT_SHAPES:
        return BoundStrategy.endpoint_convex()
    return BoundStrategy.dense_sample(Config.DEFAULT_DENSE_COUNT)


def integrate(f: FuncDef, a: Rational, b: Rational, tol: float = None, schedule: Optional[str] = None,
              strategy: Optional[BoundStrategy] = None, exact: bool = False,
              field: KField = KField.RATIONALS) -> IntegralEstimate:
    """Bracket the K-integral by the best lower and upper sums along a refinement schedule."""
    a, b = parse_rational(a), parse_rational(b)
    if not a < b:
        raise InvalidArgumentError(f'integration needs a < b, got [{a}, {b}]')
    tol = Config.DEFAULT_TOL if tol is None else tol
    if not tol > 0:
        raise InvalidArgumentError(f'tolerance must be positive, got {tol}')
    strategy = strategy or default_strategy(f)
    schedule = schedule or default_schedule()
    exact = exact and field is KField.RATIONALS
    affine = f.affine_form()
    if affine is not None and f.domain.contains(a) and f.domain.contains(b):
        value = affine_integral_exact(affine[0], affine[1], a, b)
        if not exact:
            value = as_float(value)
        logger.debug('%s is affine; closed form %s', f.name, value)
        return IntegralEstimate(value=value, lower=value, upper=value, converged=True, schedule=['affine'],
                                tolerance=tol, exact=exact, strategy=strategy.describe(), trace=[])
    best_lower, best_upper = None, None
    rows: List[BracketRow] = []
    labels: List[str] = []
    all_exact = True
    converged = False
    for step, p in resolve_schedule(schedule, a, b, field):
        data = _cell_data(f, p, strategy, exact)
        lower, upper, trapezoid = data.lower(), data.upper(), data.trapezoid()
        all_exact = all_exact and data.exact
        if not data.exact:
            lower, upper, trapezoid = float(lower), float(upper), float(trapezoid)
            if best_lower is not None:
                best_lower, best_upper = as_float(best_lower), as_float(best_upper)
        best_lower = lower if best_lower is None else max(best_lower, lower)
        best_upper = upper if best_upper is None else min(best_upper, upper)
        labels.append(step['label'])
        rows.append(BracketRow(depth=step['depth'], partition=p.descriptor(), lower=lower, upper=upper,
                               midpoint=(lower + upper) / 2, trapezoid=trapezoid))
        logger.debug('%s %s: lower=%s upper=%s', f.name, step['label'], lower, upper)
        if best_upper - best_lower <= tol:
            converged = True
            break
    if best_lower > best_upper:
        # non-nesting schedules can cross; report the crossing rather than hide it
        logger.warning('%s: bracket crossed (lower %s > upper %s)', f.name, best_lower, best_upper)
    if not all_exact:
        best_lower, best_upper = as_float(best_lower), as_float(best_upper)
    value = (best_lower + best_upper) / 2
    return IntegralEstimate(value=value, lower=min(best_lower, best_upper), upper=max(best_lower, best_upper),
                            converged=converged, schedule=labels, tolerance=tol, exact=all_exact,
                            strategy=strategy.describe(), trace=rows)


def affine_integral_exact(slope: Rational, intercept: Rational, a: Rational, b: Rational) -> Rational:
    """Closed form g((a+b)/2)(b-a) for g(x) = slope*x + intercept."""
    slope, intercept, a, b = (parse_rational(v) for v in (slope, intercept, a, b))
    if not a < b:
        raise InvalidArgumentError(f'affine integral needs a < b, got [{a}, {b}]')
    return (slope * (a + b) / 2 + intercept) * (b - a)


def interval_additivity_check(f: FuncDef, a: Rational, g: Rational, b: Rational, tol: float,
                              schedule: Optional[str] = None, strategy: Optional[BoundStrategy] = None,
                              exact: bool = False) -> bool:
    """Integral over [a, b] equals the sum over [a, g] and [g, b]."""
    a, g, b = parse_rational(a), parse_rational(g), parse_rational(b)
    if not a < g < b:
        raise InvalidArgumentError(f'additivity needs a < g < b, got {a}, {g}, {b}')
    whole = integrate(f, a, b, tol, schedule, strategy, exact)
    left = integrate(f, a, g, tol, schedule, strategy, exact)
    right = integrate(f, g, b, tol, schedule, strategy, exact)
    pieces = (whole, left, right)
    if all(piece.exact and piece.lower == piece.upper for piece in pieces):
        return whole.value == left.value + right.value
    return abs(as_float(whole.value) - as_float(left.value) - as_float(right.value)) <= tol


def ordinary_riemann_sum(f: FuncDef, a: Rational, b: Rational, n: int, tags: TagRule = TagRule.MIDPOINT) -> float:
    """Float Riemann sum on the uniform real partition with n cells."""
    return float(tagged_sum(f, uniform(a, b, n, KField.REALS), tags, exact=False))


class ScipyOracle:
    """Cell sup/inf by bounded scalar minimization; the CLI's `oracle` strategy."""

    def __init__(self, f: FuncDef, xatol: float = 1e-12):
        self.f = f
        self.xatol = xatol

    def __call__(self, lo: float, hi: float) -> Tuple[float, float]:
        fn = self.f
        low = minimize_scalar(lambda x: fn.value(float(x), exact=False), bounds=(lo, hi), method='bounded',
                              options={'xatol': self.xatol})
        high = minimize_scalar(lambda x: -fn.value(float(x), exact=False), bounds=(lo, hi), method='bounded',
                               options={'xatol': self.xatol})
        return float(low.fun), float(-high.fun)

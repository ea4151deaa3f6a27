from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Dict, Iterable, Optional, Tuple

import mpmath
import numpy as np

from hh_lab.exceptions import ArithmeticDomainError, InvalidArgumentError, TableLookupError
from hh_lab.models.expression import NOT_EXACT, Expr, Neg, affine_coefficients, is_rational_closed
from hh_lab.models.interval import Interval
from hh_lab.models.rational import Number, as_float, rational_from_float
from hh_lab.models.shape import Provenance, Shape
from hh_lab.utils.evaluator import eval_array, eval_float, eval_mp, eval_rational
from hh_lab.utils.expr_parser import pretty


@dataclass(frozen=True)
class FuncDef:
    """A function of one variable with optional declared antiderivative.

    `declared_shape` is advisory; `verified_shape` is only ever set by the
    convexity checks. Tabulated functions answer exactly at their stored
    abscissae and nowhere else (no interpolation).
    """
    name: str
    body: Optional[Expr] = None
    antiderivative: Optional[Expr] = None
    declared_shape: Shape = Shape.UNKNOWN
    domain: Interval = field(default_factory=Interval.real_line)
    provenance: Provenance = Provenance.SYMBOLIC
    table: Optional[Tuple[Tuple[Fraction, Number], ...]] = None
    verified_shape: Optional[Shape] = None
    source: Optional[str] = None

    def __post_init__(self):
        if self.body is None and self.table is None:
            raise InvalidArgumentError(f'function {self.name!r} needs a body or a table')

    @classmethod
    def from_table(cls, name: str, points: Iterable[Tuple[Number, Number]],
                   provenance: Provenance = Provenance.TABLE, domain: Optional[Interval] = None):
        rows = tuple(sorted((rational_from_float(x), value) for x, value in points))
        if not rows:
            raise InvalidArgumentError(f'table for {name!r} is empty')
        return cls(name=name, table=rows, provenance=provenance,
                   domain=domain or Interval.real_line())

    @property
    def shape(self) -> Shape:
        return self.verified_shape or self.declared_shape

    @property
    def is_tabulated(self) -> bool:
        return self.table is not None

    @property
    def exact_capable(self) -> bool:
        if self.is_tabulated:
            return all(isinstance(value, Fraction) for _, value in self.table)
        return is_rational_closed(self.body)

    @property
    def abscissae(self) -> Tuple[Fraction, ...]:
        return tuple(x for x, _ in self.table) if self.table else ()

    def affine_form(self):
        """(slope, intercept) when the body is affine in x."""
        return affine_coefficients(self.body) if self.body is not None else None

    def _lookup(self) -> Dict[Fraction, Number]:
        cache = self.__dict__.get('_table_index')
        if cache is None:
            cache = dict(self.table)
            object.__setattr__(self, '_table_index', cache)
        return cache

    def _check_domain(self, x):
        if not self.domain.contains(x):
            raise ArithmeticDomainError(f'{self.name}: x={x} lies outside {self.domain.to_text()}')

    def value(self, x: Number, exact: bool = True) -> Number:
        """Exact value for rational x when possible, float otherwise."""
        self._check_domain(x)
        if self.is_tabulated:
            key = rational_from_float(x)
            try:
                return self._lookup()[key]
            except KeyError:
                raise TableLookupError(f'{self.name}: no tabulated value at x={x}') from None
        if exact and isinstance(x, Fraction):
            result = eval_rational(self.body, x)
            if result is not NOT_EXACT:
                return result
        return eval_float(self.body, as_float(x))

    def values(self, xs) -> np.ndarray:
        xs = np.asarray(xs, dtype=np.float64)
        if xs.size:
            lo, hi = self.domain.bounds_float()
            if xs.min() <= lo or xs.max() >= hi:
                raise ArithmeticDomainError(f'{self.name}: abscissae leave {self.domain.to_text()}')
        if self.is_tabulated:
            return np.array([as_float(self.value(float(x))) for x in xs], dtype=np.float64)
        return eval_array(self.body, xs)

    def value_mp(self, x: Number, prec: int):
        self._check_domain(x)
        if self.is_tabulated:
            value = self.value(x)
            return eval_mp_constant(value, prec)
        return eval_mp(self.body, x, prec)

    def primitive(self) -> 'FuncDef':
        """The declared antiderivative as a FuncDef of its own."""
        if self.antiderivative is None:
            raise InvalidArgumentError(f'{self.name} has no declared antiderivative')
        return FuncDef(name=f'{self.name}_primitive', body=self.antiderivative, domain=self.domain)

    def with_verified_shape(self, shape: Shape) -> 'FuncDef':
        return replace(self, verified_shape=shape)

    def negated(self) -> 'FuncDef':
        if self.is_tabulated:
            return replace(self, name=f'neg_{self.name}', table=tuple((x, -v) for x, v in self.table),
                           verified_shape=None)
        flipped = {Shape.CONVEX: Shape.CONCAVE, Shape.CONCAVE: Shape.CONVEX}
        return FuncDef(name=f'neg_{self.name}', body=Neg(self.body),
                       declared_shape=flipped.get(self.declared_shape, self.declared_shape),
                       domain=self.domain)

    def describe(self) -> dict:
        """Provenance summary recorded in reports."""
        return {
            'name': self.name,
            'provenance': self.provenance.value,
            'body': pretty(self.body) if self.body is not None else None,
            'antiderivative': pretty(self.antiderivative) if self.antiderivative is not None else None,
            'declared_shape': self.declared_shape.value,
            'verified_shape': self.verified_shape.value if self.verified_shape else None,
            'domain': self.domain.to_text(),
            'table_points': len(self.table) if self.table else 0,
        }


def eval_mp_constant(value: Number, prec: int):
    with mpmath.workprec(prec):
        if isinstance(value, Fraction):
            return mpmath.mpf(value.numerator) / value.denominator
        return mpmath.mpf(value)

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Optional, Tuple, Union

import numpy as np

from hh_lab.exceptions import InvalidArgumentError
from hh_lab.models.rational import Rational, as_float, format_rational, parse_rational

Coefficient = Union[Fraction, float]


class KField(str, Enum):
    RATIONALS = 'Q'
    REALS = 'R'


@dataclass(frozen=True, eq=False)
class KPartition:
    """Partition of [a, b] stored through its relative coefficients alpha_i.

    Points are t_i = a + alpha_i (b - a). Over the rationals every alpha_i is
    a Fraction, so membership in the K-partition set holds by construction.
    Uniform partitions keep only their cell count and expand on demand.
    """
    a: Rational
    b: Rational
    alphas: Optional[Tuple[Coefficient, ...]] = None
    field: KField = KField.RATIONALS
    uniform_cells: Optional[int] = None

    def __post_init__(self):
        if not self.a < self.b:
            raise InvalidArgumentError(f'partition needs a < b, got [{self.a}, {self.b}]')
        if self.alphas is None:
            if not self.uniform_cells or self.uniform_cells < 1:
                raise InvalidArgumentError('partition needs coefficients or a positive uniform cell count')
            return
        alphas = self.alphas
        if len(alphas) < 2:
            raise InvalidArgumentError('partition needs at least one cell')
        if alphas[0] != 0 or alphas[-1] != 1:
            raise InvalidArgumentError('partition coefficients must start at 0 and end at 1')
        if any(lo >= hi for lo, hi in zip(alphas, alphas[1:])):
            raise InvalidArgumentError('partition coefficients must be strictly increasing')
        if self.field is KField.RATIONALS and not all(isinstance(alpha, Fraction) for alpha in alphas):
            raise InvalidArgumentError('rational partitions need Fraction coefficients')

    @property
    def coefficients(self) -> Tuple[Coefficient, ...]:
        if self.alphas is not None:
            return self.alphas
        n = self.uniform_cells
        return tuple(Fraction(i, n) for i in range(n + 1))

    @property
    def n(self) -> int:
        return self.uniform_cells if self.alphas is None else len(self.alphas) - 1

    @property
    def is_uniform(self) -> bool:
        return self.alphas is None

    @property
    def width(self) -> Rational:
        return self.b - self.a

    @property
    def points(self) -> Tuple[Coefficient, ...]:
        width = self.width
        if self.field is KField.RATIONALS:
            return tuple(self.a + alpha * width for alpha in self.coefficients)
        return tuple(float(self.a) + float(alpha) * float(width) for alpha in self.coefficients)

    def points_array(self) -> np.ndarray:
        """Float64 abscissae t_0..t_n, endpoints exact to double rounding."""
        a, b = as_float(self.a), as_float(self.b)
        if self.is_uniform:
            pts = a + (b - a) * (np.arange(self.n + 1, dtype=np.float64) / self.n)
        else:
            pts = np.array([as_float(t) if isinstance(t, Fraction) else float(t) for t in self.points],
                           dtype=np.float64)
        pts[0], pts[-1] = a, b
        return pts

    def cells(self):
        pts = self.points
        return list(zip(pts, pts[1:]))

    def descriptor(self) -> str:
        kind = 'uniform' if self.is_uniform else 'alphas'
        return f'{self.field.value}[{format_rational(self.a)},{format_rational(self.b)}]:{kind}:n={self.n}'

    def __eq__(self, other):
        if not isinstance(other, KPartition):
            return NotImplemented
        if (self.a, self.b, self.field) != (other.a, other.b, other.field):
            return False
        if self.is_uniform and other.is_uniform:
            return self.n == other.n
        return self.n == other.n and self.coefficients == other.coefficients

    def __hash__(self):
        return hash((self.a, self.b, self.field, self.n))

    def to_json(self) -> dict:
        def show(alpha):
            return format_rational(alpha) if isinstance(alpha, Fraction) else repr(float(alpha))
        return {
            'a': format_rational(self.a),
            'b': format_rational(self.b),
            'alphas': [show(alpha) for alpha in self.coefficients],
            'field': self.field.value,
        }

    @classmethod
    def from_json(cls, payload: dict) -> 'KPartition':
        field = KField(payload.get('field', 'Q'))
        if field is KField.RATIONALS:
            alphas = tuple(parse_rational(alpha) for alpha in payload['alphas'])
        else:
            alphas = tuple(_real_coefficient(alpha) for alpha in payload['alphas'])
        return cls(parse_rational(payload['a']), parse_rational(payload['b']), alphas, field)


def _real_coefficient(text) -> Coefficient:
    try:
        value = parse_rational(text)
    except InvalidArgumentError:
        return float(text)
    return value if value in (0, 1) else float(value)

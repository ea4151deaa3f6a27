import math
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Tuple, Union

from hh_lab.exceptions import InvalidArgumentError
from hh_lab.models.rational import as_float, format_rational, parse_rational

Endpoint = Union[Fraction, float]
INTERVAL_TEXT_PATTERN = re.compile(r'^\s*[\(\[]?\s*([^,\s\)\]]+)\s*[,\s]\s*([^,\s\)\]]+)\s*[\)\]]?\s*$')


def _parse_endpoint(text) -> Endpoint:
    if isinstance(text, (Fraction, int)) and not isinstance(text, bool):
        return Fraction(text)
    if isinstance(text, float):
        return text if math.isinf(text) else Fraction(text)
    raw = str(text).strip().lower()
    if raw in {'inf', '+inf', 'infinity'}:
        return math.inf
    if raw in {'-inf', '-infinity'}:
        return -math.inf
    return parse_rational(raw)


@dataclass(frozen=True)
class Interval:
    """Open interval (lo, hi) with rational or infinite endpoints."""
    lo: Endpoint
    hi: Endpoint

    def __post_init__(self):
        if not self.lo < self.hi:
            raise InvalidArgumentError(f'empty interval ({self.lo}, {self.hi})')

    @classmethod
    def parse(cls, lo, hi=None):
        if hi is None:
            match = INTERVAL_TEXT_PATTERN.match(str(lo))
            if not match:
                raise InvalidArgumentError(f'not an interval: {lo!r}')
            lo, hi = match.groups()
        return cls(_parse_endpoint(lo), _parse_endpoint(hi))

    @classmethod
    def real_line(cls):
        return cls(-math.inf, math.inf)

    @property
    def is_finite(self) -> bool:
        return not (isinstance(self.lo, float) and math.isinf(self.lo)) and not (
            isinstance(self.hi, float) and math.isinf(self.hi))

    def contains(self, x) -> bool:
        return self.lo < x < self.hi

    def contains_closed(self, x) -> bool:
        return self.lo <= x <= self.hi

    def window(self, radius: float) -> 'Interval':
        """Finite part of the interval, infinite ends clipped to +-radius."""
        lo = self.lo if not (isinstance(self.lo, float) and math.isinf(self.lo)) else Fraction(-radius)
        hi = self.hi if not (isinstance(self.hi, float) and math.isinf(self.hi)) else Fraction(radius)
        if lo >= hi:
            raise InvalidArgumentError(f'sampling window ({lo}, {hi}) is empty')
        return Interval(lo, hi)

    def shrink(self, margin: float) -> 'Interval':
        """Move both (finite) ends inward by margin times the width."""
        width = self.hi - self.lo
        step = Fraction(repr(margin)) * width if isinstance(width, Fraction) else margin * width
        return Interval(self.lo + step, self.hi - step)

    def bounds_float(self) -> Tuple[float, float]:
        return as_float(self.lo), as_float(self.hi)

    def to_text(self) -> str:
        def show(value):
            if isinstance(value, Fraction):
                return format_rational(value)
            return '-inf' if value < 0 else 'inf'
        return f'({show(self.lo)}, {show(self.hi)})'

"""
Exact rational arithmetic for partition coefficients and exact-mode evaluation.

Rational is the standard library Fraction: arbitrary-precision numerator and
denominator, reduced to lowest terms with a positive denominator after every
operation, immutable and hashable.
"""
import operator
import re
from fractions import Fraction
from typing import Union

from hh_lab.exceptions import ArithmeticDomainError, InvalidArgumentError, RangeError

Rational = Fraction
Number = Union[Fraction, float]

RATIONAL_TEXT_PATTERN = re.compile(r'^\s*([+-]?\d+)\s*(?:/\s*(\d+))?\s*$')
DECIMAL_TEXT_PATTERN = re.compile(r'^\s*[+-]?(\d+\.\d*|\.\d+)\s*$')

_ARITH_OPS = {
    'add': operator.add,
    'sub': operator.sub,
    'mul': operator.mul,
    'div': operator.truediv,
}


def normalize(num: int, den: int) -> Rational:
    """Canonical reduced form with a positive denominator."""
    if den == 0:
        raise InvalidArgumentError(f'zero denominator in {num}/{den}')
    return Fraction(num, den)


def arith(a: Rational, b: Rational, op: str) -> Rational:
    try:
        fn = _ARITH_OPS[op]
    except KeyError:
        raise InvalidArgumentError(f'unknown rational operation {op!r}') from None
    if op == 'div' and b == 0:
        raise ArithmeticDomainError(f'division of {format_rational(a)} by zero')
    return fn(Fraction(a), Fraction(b))


def mediant(a: Rational, b: Rational) -> Rational:
    """(num_a+num_b)/(den_a+den_b); strictly between a and b."""
    if a >= b:
        raise InvalidArgumentError(f'mediant needs a < b, got {format_rational(a)} >= {format_rational(b)}')
    return Fraction(a.numerator + b.numerator, a.denominator + b.denominator)


def to_float(a: Rational) -> float:
    """Nearest binary double; raises RangeError outside the exponent range."""
    try:
        return float(a)
    except OverflowError as exc:
        raise RangeError(f'{format_rational(a)} is outside the float range') from exc


def parse_rational(text) -> Rational:
    """Accept "p/q", "p" and plain decimals ("0.25" -> 1/4)."""
    if isinstance(text, Fraction):
        return text
    if isinstance(text, int):
        return Fraction(text)
    raw = str(text)
    match = RATIONAL_TEXT_PATTERN.match(raw)
    if match:
        num, den = match.groups()
        return normalize(int(num), int(den) if den is not None else 1)
    if DECIMAL_TEXT_PATTERN.match(raw):
        return Fraction(raw.strip())
    raise InvalidArgumentError(f'not a rational number: {raw!r}')


def format_rational(a: Rational) -> str:
    """Emit the "p/q" text form."""
    a = Fraction(a)
    return f'{a.numerator}/{a.denominator}'


def as_number(value) -> Number:
    """Keep Fractions and ints exact, everything else becomes a float."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int) and not isinstance(value, bool):
        return Fraction(value)
    return float(value)


def as_float(value: Number) -> float:
    if isinstance(value, Fraction):
        return to_float(value)
    return float(value)


def is_exact(value) -> bool:
    return isinstance(value, Fraction)


def rational_from_float(value: float) -> Rational:
    """Exact binary value of a float, used when float input meets a rational API."""
    if isinstance(value, Fraction):
        return value
    return Fraction(value)

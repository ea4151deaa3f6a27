"""
Abstract syntax tree for functions of one real variable.

Nodes are frozen dataclasses, so trees compare structurally and can be shared
between threads.
"""
from dataclasses import dataclass
from fractions import Fraction
from typing import Tuple, Union

TRANSCENDENTAL_FUNCTIONS = frozenset({'exp', 'log', 'sin', 'cos'})
RATIONAL_CLOSED_FUNCTIONS = frozenset({'abs', 'max', 'min'})
FUNCTION_ARITY = {
    'exp': (1, 1),
    'log': (1, 1),
    'sin': (1, 1),
    'cos': (1, 1),
    'abs': (1, 1),
    'max': (2, None),
    'min': (2, None),
}
BINARY_OPERATORS = ('+', '-', '*', '/')


@dataclass(frozen=True)
class Num:
    value: Fraction


@dataclass(frozen=True)
class Var:
    name: str = 'x'


@dataclass(frozen=True)
class Neg:
    operand: 'Expr'


@dataclass(frozen=True)
class BinOp:
    op: str
    left: 'Expr'
    right: 'Expr'


@dataclass(frozen=True)
class Pow:
    base: 'Expr'
    exponent: int


@dataclass(frozen=True)
class Call:
    name: str
    args: Tuple['Expr', ...]


Expr = Union[Num, Var, Neg, BinOp, Pow, Call]


class NotExact:
    """Signal returned by exact evaluation when a transcendental node is reached."""
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return 'NOT_EXACT'

    def __bool__(self):
        return False


NOT_EXACT = NotExact()


def is_rational_closed(e: Expr) -> bool:
    """True when the tree uses only operations closed over the rationals."""
    if isinstance(e, (Num, Var)):
        return True
    if isinstance(e, Neg):
        return is_rational_closed(e.operand)
    if isinstance(e, BinOp):
        return is_rational_closed(e.left) and is_rational_closed(e.right)
    if isinstance(e, Pow):
        return is_rational_closed(e.base)
    if isinstance(e, Call):
        return e.name in RATIONAL_CLOSED_FUNCTIONS and all(is_rational_closed(arg) for arg in e.args)
    return False


def affine_coefficients(e: Expr):
    """Return (slope, intercept) as Fractions when e is affine in x, else None."""
    if isinstance(e, Num):
        return Fraction(0), e.value
    if isinstance(e, Var):
        return Fraction(1), Fraction(0)
    if isinstance(e, Neg):
        inner = affine_coefficients(e.operand)
        return None if inner is None else (-inner[0], -inner[1])
    if isinstance(e, Pow):
        base = affine_coefficients(e.base)
        if base is None:
            return None
        if e.exponent == 0:
            return Fraction(0), Fraction(1)
        if e.exponent == 1:
            return base
        if base[0] == 0 and (base[1] != 0 or e.exponent > 0):
            return Fraction(0), base[1] ** e.exponent
        return None
    if isinstance(e, BinOp):
        left = affine_coefficients(e.left)
        right = affine_coefficients(e.right)
        if left is None or right is None:
            return None
        if e.op == '+':
            return left[0] + right[0], left[1] + right[1]
        if e.op == '-':
            return left[0] - right[0], left[1] - right[1]
        if e.op == '*':
            if left[0] == 0:
                return left[1] * right[0], left[1] * right[1]
            if right[0] == 0:
                return right[1] * left[0], right[1] * left[1]
            return None
        if e.op == '/':
            if right[0] == 0 and right[1] != 0:
                return left[0] / right[1], left[1] / right[1]
            return None
    return None

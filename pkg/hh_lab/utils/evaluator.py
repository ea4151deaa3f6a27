import math
from fractions import Fraction
from typing import Union

import mpmath
import numpy as np

from hh_lab.exceptions import ArithmeticDomainError, RangeError
from hh_lab.models.expression import NOT_EXACT, BinOp, Call, Expr, Neg, NotExact, Num, Pow, Var

_FLOAT_FUNCTIONS = {
    'exp': math.exp,
    'sin': math.sin,
    'cos': math.cos,
    'abs': abs,
}
_ARRAY_FUNCTIONS = {
    'exp': np.exp,
    'sin': np.sin,
    'cos': np.cos,
    'abs': np.abs,
}
_MP_FUNCTIONS = {
    'exp': mpmath.exp,
    'sin': mpmath.sin,
    'cos': mpmath.cos,
    'abs': mpmath.fabs,
}


def _float_log(value: float) -> float:
    if value <= 0:
        raise ArithmeticDomainError(f'log of non-positive argument {value!r}')
    return math.log(value)


def eval_float(e: Expr, x: float) -> float:
    """IEEE double evaluation; domain violations raise instead of producing NaN."""
    try:
        return _eval_float(e, float(x))
    except OverflowError as exc:
        raise RangeError(f'float overflow while evaluating at x={x!r}') from exc


def _eval_float(e: Expr, x: float) -> float:
    if isinstance(e, Num):
        return float(e.value)
    if isinstance(e, Var):
        return x
    if isinstance(e, Neg):
        return -_eval_float(e.operand, x)
    if isinstance(e, BinOp):
        left = _eval_float(e.left, x)
        right = _eval_float(e.right, x)
        if e.op == '+':
            return left + right
        if e.op == '-':
            return left - right
        if e.op == '*':
            return left * right
        if right == 0:
            raise ArithmeticDomainError(f'division by zero at x={x!r}')
        return left / right
    if isinstance(e, Pow):
        base = _eval_float(e.base, x)
        if base == 0 and e.exponent < 0:
            raise ArithmeticDomainError(f'zero raised to negative power at x={x!r}')
        return base ** e.exponent
    if isinstance(e, Call):
        args = [_eval_float(arg, x) for arg in e.args]
        if e.name == 'log':
            return _float_log(args[0])
        if e.name == 'max':
            return max(args)
        if e.name == 'min':
            return min(args)
        return float(_FLOAT_FUNCTIONS[e.name](args[0]))
    raise TypeError(f'not an expression node: {e!r}')


def eval_rational(e: Expr, x: Fraction) -> Union[Fraction, NotExact]:
    """Exact value, or NOT_EXACT once a transcendental node is reached."""
    return _eval_rational(e, Fraction(x))


def _eval_rational(e: Expr, x: Fraction):
    if isinstance(e, Num):
        return e.value
    if isinstance(e, Var):
        return x
    if isinstance(e, Neg):
        inner = _eval_rational(e.operand, x)
        return inner if inner is NOT_EXACT else -inner
    if isinstance(e, BinOp):
        left = _eval_rational(e.left, x)
        if left is NOT_EXACT:
            return NOT_EXACT
        right = _eval_rational(e.right, x)
        if right is NOT_EXACT:
            return NOT_EXACT
        if e.op == '+':
            return left + right
        if e.op == '-':
            return left - right
        if e.op == '*':
            return left * right
        if right == 0:
            raise ArithmeticDomainError(f'division by zero at x={x}')
        return left / right
    if isinstance(e, Pow):
        base = _eval_rational(e.base, x)
        if base is NOT_EXACT:
            return NOT_EXACT
        if base == 0 and e.exponent < 0:
            raise ArithmeticDomainError(f'zero raised to negative power at x={x}')
        return base ** e.exponent
    if isinstance(e, Call):
        if e.name not in ('abs', 'max', 'min'):
            return NOT_EXACT
        args = []
        for arg in e.args:
            value = _eval_rational(arg, x)
            if value is NOT_EXACT:
                return NOT_EXACT
            args.append(value)
        if e.name == 'abs':
            return abs(args[0])
        return max(args) if e.name == 'max' else min(args)
    raise TypeError(f'not an expression node: {e!r}')


def eval_array(e: Expr, xs) -> np.ndarray:
    """Vectorized float64 evaluation over a numpy array of abscissae."""
    xs = np.asarray(xs, dtype=np.float64)
    with np.errstate(over='raise', invalid='raise', divide='raise'):
        try:
            result = _eval_array(e, xs)
        except FloatingPointError as exc:
            raise RangeError(f'floating-point failure during vectorized evaluation: {exc}') from exc
    return np.broadcast_to(result, xs.shape).astype(np.float64, copy=True)


def _eval_array(e: Expr, xs: np.ndarray):
    if isinstance(e, Num):
        return np.float64(float(e.value))
    if isinstance(e, Var):
        return xs
    if isinstance(e, Neg):
        return -_eval_array(e.operand, xs)
    if isinstance(e, BinOp):
        left = _eval_array(e.left, xs)
        right = _eval_array(e.right, xs)
        if e.op == '+':
            return left + right
        if e.op == '-':
            return left - right
        if e.op == '*':
            return left * right
        if np.any(right == 0):
            raise ArithmeticDomainError('division by zero in vectorized evaluation')
        return left / right
    if isinstance(e, Pow):
        base = _eval_array(e.base, xs)
        if e.exponent < 0 and np.any(base == 0):
            raise ArithmeticDomainError('zero raised to negative power in vectorized evaluation')
        return np.power(base, float(e.exponent))
    if isinstance(e, Call):
        args = [_eval_array(arg, xs) for arg in e.args]
        if e.name == 'log':
            if np.any(args[0] <= 0):
                raise ArithmeticDomainError('log of non-positive argument in vectorized evaluation')
            return np.log(args[0])
        if e.name == 'max':
            return np.maximum.reduce(np.broadcast_arrays(*args))
        if e.name == 'min':
            return np.minimum.reduce(np.broadcast_arrays(*args))
        return _ARRAY_FUNCTIONS[e.name](args[0])
    raise TypeError(f'not an expression node: {e!r}')


def eval_mp(e: Expr, x, prec: int = 106) -> mpmath.mpf:
    """Evaluation with mpmath at `prec` bits, used to re-check witnesses."""
    with mpmath.workprec(prec):
        if isinstance(x, Fraction):
            point = mpmath.mpf(x.numerator) / x.denominator
        else:
            point = mpmath.mpf(x)
        return _eval_mp(e, point)


def _eval_mp(e: Expr, x):
    if isinstance(e, Num):
        return mpmath.mpf(e.value.numerator) / e.value.denominator
    if isinstance(e, Var):
        return x
    if isinstance(e, Neg):
        return -_eval_mp(e.operand, x)
    if isinstance(e, BinOp):
        left = _eval_mp(e.left, x)
        right = _eval_mp(e.right, x)
        if e.op == '+':
            return left + right
        if e.op == '-':
            return left - right
        if e.op == '*':
            return left * right
        if right == 0:
            raise ArithmeticDomainError(f'division by zero at x={x}')
        return left / right
    if isinstance(e, Pow):
        base = _eval_mp(e.base, x)
        if base == 0 and e.exponent < 0:
            raise ArithmeticDomainError(f'zero raised to negative power at x={x}')
        return base ** e.exponent
    if isinstance(e, Call):
        args = [_eval_mp(arg, x) for arg in e.args]
        if e.name == 'log':
            if args[0] <= 0:
                raise ArithmeticDomainError(f'log of non-positive argument at x={x}')
            return mpmath.log(args[0])
        if e.name == 'max':
            return max(args)
        if e.name == 'min':
            return min(args)
        return _MP_FUNCTIONS[e.name](args[0])
    raise TypeError(f'not an expression node: {e!r}')

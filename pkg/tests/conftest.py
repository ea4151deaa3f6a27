import os
import sys

import numpy as np
import pytest

sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), '..')))

from hh_lab.models.func_def import FuncDef  # noqa: E402
from hh_lab.models.shape import Shape  # noqa: E402
from hh_lab.utils.builtin_suite import lookup_builtin  # noqa: E402
from hh_lab.utils.expr_parser import parse  # noqa: E402

ORACLE_CELLS = 10 ** 6

# plain numpy twins of the builtins, kept apart from hh_lab's evaluator
NUMPY_TWINS = {
    'square': lambda xs: xs * xs,
    'quartic': lambda xs: xs ** 4,
    'abs': np.abs,
    'exp': np.exp,
    'relu': lambda xs: np.maximum(xs, 0.0),
    'sin': np.sin,
    'affine': lambda xs: 2.0 * xs + 3.0,
}


def midpoint_oracle(fn, a, b, cells=ORACLE_CELLS):
    """Uniform midpoint Riemann sum over [a, b] with `cells` cells."""
    a, b = float(a), float(b)
    h = (b - a) / cells
    mids = a + h * (np.arange(cells, dtype=np.float64) + 0.5)
    return float(np.sum(fn(mids)) * h)


def make_function(text, shape=Shape.UNKNOWN, name='f', antiderivative=None):
    return FuncDef(name=name, body=parse(text), declared_shape=shape,
                   antiderivative=parse(antiderivative) if antiderivative else None, source=text)


@pytest.fixture
def builtin():
    def get(name):
        f = lookup_builtin(name)
        assert f is not None, name
        return f
    return get


@pytest.fixture
def square(builtin):
    return builtin('square')


@pytest.fixture
def neg_square(builtin):
    return builtin('neg_square')


@pytest.fixture
def affine(builtin):
    return builtin('affine')

"""Registry of built-in test functions with known antiderivatives."""
from typing import Dict, List, Optional

from hh_lab.models.func_def import FuncDef
from hh_lab.models.shape import Shape
from hh_lab.utils.expr_parser import parse

# name -> (body, antiderivative, declared shape)
BUILTIN_DEFINITIONS = {
    'square': ('x^2', 'x^3/3', Shape.CONVEX),
    'quartic': ('x^4', 'x^5/5', Shape.CONVEX),
    'abs': ('abs(x)', 'x*abs(x)/2', Shape.CONVEX),
    'exp': ('exp(x)', 'exp(x)', Shape.CONVEX),
    'relu': ('max(x, 0)', 'max(x, 0)^2/2', Shape.CONVEX),
    'neg_square': ('-x^2', '-x^3/3', Shape.CONCAVE),
    'sin': ('sin(x)', '-cos(x)', Shape.UNKNOWN),
    'affine': ('2*x + 3', 'x^2 + 3*x', Shape.AFFINE),
}

CONVEX_BUILTINS = ('square', 'quartic', 'abs', 'exp', 'relu')
SMOOTH_BUILTINS = ('square', 'quartic', 'exp', 'sin', 'affine')


def _build(name: str) -> FuncDef:
    body, antiderivative, shape = BUILTIN_DEFINITIONS[name]
    return FuncDef(name=name, body=parse(body), antiderivative=parse(antiderivative),
                   declared_shape=shape, source=body)


_REGISTRY: Dict[str, FuncDef] = {name: _build(name) for name in BUILTIN_DEFINITIONS}


def builtin_suite() -> List[FuncDef]:
    return list(_REGISTRY.values())


def lookup_builtin(name: str) -> Optional[FuncDef]:
    """Registry entry by name, or None when absent."""
    return _REGISTRY.get(name)

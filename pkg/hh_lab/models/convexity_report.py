from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Optional

from hh_lab.models.expression import BinOp, Num, Var
from hh_lab.models.func_def import FuncDef
from hh_lab.models.rational import Number, rational_from_float
from hh_lab.models.shape import Shape, Side


class Verdict(str, Enum):
    NO_VIOLATION = 'NoViolationFound'
    COUNTEREXAMPLE = 'Counterexample'


@dataclass(frozen=True)
class Witness:
    """f(z) > lam f(x) + (1 - lam) f(y) + tol at z = lam x + (1 - lam) y."""
    x: Number
    y: Number
    lam: Number
    lhs: Number
    rhs: Number
    z: Optional[Number] = None


@dataclass(frozen=True)
class ConvexityReport:
    check: str
    verdict: Verdict
    pairs_tested: int
    seed: Optional[int]
    tol: float
    witness: Optional[Witness] = None

    def __bool__(self):
        return self.verdict is Verdict.NO_VIOLATION


@dataclass(frozen=True)
class SupportLine:
    z: Number
    slope: float
    intercept: float
    left_slope: float
    right_slope: float

    def __call__(self, x) -> float:
        return self.slope * float(x) + self.intercept

    def as_funcdef(self, name: str = 'support') -> FuncDef:
        """The line as an affine FuncDef (coefficients taken at their exact binary values)."""
        slope, intercept = rational_from_float(self.slope), rational_from_float(self.intercept)
        body = BinOp('+', BinOp('*', Num(slope), Var()), Num(intercept))
        return FuncDef(name=name, body=body, declared_shape=Shape.AFFINE)


@dataclass(frozen=True)
class ViolationWitness:
    """A pair breaking one side of the Hermite-Hadamard sandwich by more than tol."""
    x: Number
    y: Number
    side: Side
    lhs: Number
    rhs: Number
    revalidated: bool = False


@dataclass(frozen=True)
class SupportConvexityCheck:
    """f(z) = g(z) = lam g(x) + (1 - lam) g(y) <= lam f(x) + (1 - lam) f(y) for the support g at z."""
    x: Number
    y: Number
    lam: Fraction
    z: Number
    f_z: Number
    line_combination: float
    f_combination: Number
    passed: bool
    reason: Optional[str] = None

    def __bool__(self):
        return self.passed

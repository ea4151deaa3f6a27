from dataclasses import dataclass, field
from typing import List, Optional

from hh_lab.models.convexity_report import ViolationWitness
from hh_lab.models.rational import Number
from hh_lab.models.shape import Side


@dataclass(frozen=True)
class HHPairResult:
    """f((x+y)/2) <= (F(y)-F(x))/(y-x) <= (f(x)+f(y))/2 evaluated at one pair."""
    x: Number
    y: Number
    midpoint_value: Number
    difference_quotient: Number
    endpoint_average: Number
    left_holds: bool
    right_holds: bool
    tol: float

    def __bool__(self):
        return self.left_holds and self.right_holds

    def witness(self) -> Optional[ViolationWitness]:
        """The broken side, left first."""
        if not self.left_holds:
            return ViolationWitness(self.x, self.y, Side.LEFT, self.midpoint_value, self.difference_quotient)
        if not self.right_holds:
            return ViolationWitness(self.x, self.y, Side.RIGHT, self.difference_quotient, self.endpoint_average)
        return None


@dataclass(frozen=True)
class HHScanReport:
    pairs_tested: int
    violations: int
    left_violations: int
    right_violations: int
    seed: int
    tol: float
    first_violation: Optional[HHPairResult] = None
    skipped: int = 0
    exact: bool = False

    def __bool__(self):
        return self.violations == 0


@dataclass(frozen=True)
class SandwichRow:
    depth: int
    n_cells: int
    midpoint_sum: Number
    delta_F: Number
    trapezoid_sum: Number
    gap: Number
    left_holds: bool
    right_holds: bool


@dataclass(frozen=True)
class SandwichReport:
    x: Number
    y: Number
    rows: List[SandwichRow]
    converged: bool
    limit: Number
    telescoping_exact: bool
    tol: float
    exact: bool = False

    @property
    def broken_sides(self) -> List[str]:
        sides = []
        if any(not row.left_holds for row in self.rows):
            sides.append('left')
        if any(not row.right_holds for row in self.rows):
            sides.append('right')
        return sides

    def __bool__(self):
        return self.converged and not self.broken_sides


@dataclass(frozen=True)
class IdentityCheck:
    """F(y) - F(x) against the integral of f over [x, y]."""
    delta_F: Number
    integral: Number
    bracket_width: Number
    tol: float
    passed: bool
    indeterminate: bool = False

    def __bool__(self):
        return self.passed and not self.indeterminate


@dataclass(frozen=True)
class DerivativeRow:
    h: Number
    midpoint_value: Number
    quotient: Number
    endpoint_average: Number
    holds: bool


@dataclass(frozen=True)
class DerivativeCheck:
    x: Number
    target: Number
    rows: List[DerivativeRow] = field(default_factory=list)
    squeeze_holds: bool = True
    converged: bool = True
    final_error: float = 0.0
    tol: float = 0.0

    def __bool__(self):
        return self.squeeze_holds and self.converged


@dataclass(frozen=True)
class ReconstructedPoint:
    x: Number
    value: Number
    lower: Number
    upper: Number
    converged: bool

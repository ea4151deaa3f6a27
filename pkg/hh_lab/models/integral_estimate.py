from dataclasses import dataclass, field
from typing import List, Optional

from hh_lab.models.rational import Number


@dataclass(frozen=True)
class SumReport:
    partition: str
    lower: Number
    upper: Number
    strategy: str
    exact: bool
    cells: int = 0


@dataclass(frozen=True)
class BracketRow:
    """One schedule step of the integration driver."""
    depth: int
    partition: str
    lower: Number
    upper: Number
    midpoint: Number
    trapezoid: Number


@dataclass(frozen=True)
class IntegralEstimate:
    value: Number
    lower: Number
    upper: Number
    converged: bool
    schedule: List[str]
    tolerance: float
    exact: bool = False
    strategy: Optional[str] = None
    trace: List[BracketRow] = field(default_factory=list)

    @property
    def width(self) -> Number:
        return self.upper - self.lower

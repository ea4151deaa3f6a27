from dataclasses import dataclass, field
from enum import Enum
from typing import Callable, Optional, Tuple

from hh_lab.config import Config
from hh_lab.exceptions import InvalidArgumentError

# (cell_lo, cell_hi) -> (inf estimate, sup estimate)
CellOracle = Callable[[float, float], Tuple[float, float]]


class StrategyKind(str, Enum):
    ENDPOINT_CONVEX = 'endpoint'
    DENSE_SAMPLE = 'dense'
    USER_ORACLE = 'oracle'


@dataclass(frozen=True)
class BoundStrategy:
    """How the per-cell sup M_i and inf m_i are estimated."""
    kind: StrategyKind
    count: Optional[int] = None
    oracle: Optional[CellOracle] = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        if self.kind is StrategyKind.DENSE_SAMPLE and (self.count is None or self.count < Config.DENSE_MIN_COUNT):
            raise InvalidArgumentError(f'dense sampling needs count >= {Config.DENSE_MIN_COUNT}, got {self.count}')
        if self.kind is StrategyKind.USER_ORACLE and self.oracle is None:
            raise InvalidArgumentError('oracle strategy needs a callable')

    @classmethod
    def endpoint_convex(cls):
        return cls(StrategyKind.ENDPOINT_CONVEX)

    @classmethod
    def dense_sample(cls, count: int):
        return cls(StrategyKind.DENSE_SAMPLE, count=count)

    @classmethod
    def user_oracle(cls, oracle: CellOracle):
        return cls(StrategyKind.USER_ORACLE, oracle=oracle)

    @classmethod
    def parse(cls, text: str, oracle: Optional[CellOracle] = None):
        """"endpoint", "dense:N" or "oracle"."""
        raw = (text or '').strip().lower()
        if raw == 'endpoint':
            return cls.endpoint_convex()
        if raw.startswith('dense'):
            _, _, count = raw.partition(':')
            if not count.strip().isdigit():
                raise InvalidArgumentError(f'dense strategy needs an integer count, got {text!r}')
            return cls.dense_sample(int(count))
        if raw == 'oracle':
            return cls.user_oracle(oracle) if oracle is not None else cls(StrategyKind.USER_ORACLE, oracle=_missing_oracle)
        raise InvalidArgumentError(f'unknown bound strategy {text!r}')

    def describe(self) -> str:
        if self.kind is StrategyKind.DENSE_SAMPLE:
            return f'dense:{self.count}'
        return self.kind.value


def _missing_oracle(lo, hi):
    raise InvalidArgumentError('no cell oracle was supplied')

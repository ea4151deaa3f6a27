from enum import Enum
from typing import List, Optional, Tuple

from pydantic import BaseModel, ConfigDict, field_validator, model_validator

from hh_lab.config import Config
from hh_lab.exceptions import InvalidArgumentError
from hh_lab.models.bound_strategy import BoundStrategy
from hh_lab.models.k_partition import KField
from hh_lab.models.rational import format_rational, parse_rational
from hh_lab.utils.builtin_suite import lookup_builtin
from hh_lab.utils.expr_parser import parse
from hh_lab.utils.schedule_parser import parse_schedule_steps
from hh_lab.utils.value_lists import load_points


class OutputFormat(str, Enum):
    JSON = 'json'
    CSV = 'csv'
    PLAIN = 'plain'


def _check_function_text(text: str, flag: str) -> str:
    text = text.strip()
    if not text:
        raise ValueError(f'{flag} needs an expression or @builtin name')
    if text.startswith('@'):
        if lookup_builtin(text[1:]) is None:
            raise ValueError(f'unknown builtin {text!r}')
        return text
    try:
        parse(text)
    except InvalidArgumentError as exc:
        raise ValueError(str(exc)) from None
    return text


# Run configuration shared by every subcommand
class RunConfig(BaseModel):
    model_config = ConfigDict(frozen=True, use_enum_values=False)

    command: str
    function: str
    primitive: Optional[str] = None
    interval: Tuple[str, str] = ('0', '1')
    field: KField = KField.RATIONALS
    strategy: str = 'auto'
    tol: float = Config.DEFAULT_TOL
    depth: int = Config.MAX_DEPTH
    schedule: Optional[str] = None
    pairs: int = Config.DEFAULT_PAIRS
    seed: int = Config.DEFAULT_SEED
    max_den: int = 16
    at: Optional[str] = None
    points: Optional[List[str]] = None
    exact: bool = False
    out: OutputFormat = OutputFormat.JSON

    @field_validator('function')
    @classmethod
    def validate_function(cls, value):
        return _check_function_text(value, '-f')

    @field_validator('primitive')
    @classmethod
    def validate_primitive(cls, value):
        if value is None:
            return value
        return _check_function_text(value, '-F')

    @field_validator('field', mode='before')
    @classmethod
    def validate_field(cls, value):
        if isinstance(value, str):
            return value.strip().upper()
        return value

    @field_validator('interval')
    @classmethod
    def validate_interval(cls, value):
        lo, hi = (parse_rational(text) for text in value)
        if not lo < hi:
            raise ValueError(f'interval needs a < b, got {format_rational(lo)} >= {format_rational(hi)}')
        return format_rational(lo), format_rational(hi)

    @field_validator('strategy')
    @classmethod
    def validate_strategy(cls, value):
        raw = value.strip().lower()
        if raw != 'auto':
            BoundStrategy.parse(raw, oracle=lambda lo, hi: (0.0, 0.0))
        return raw

    @field_validator('tol')
    @classmethod
    def validate_tol(cls, value):
        if not value > 0:
            raise ValueError(f'tolerance must be positive, got {value}')
        return value

    @field_validator('depth')
    @classmethod
    def validate_depth(cls, value):
        if value < 1:
            raise ValueError(f'depth must be >= 1, got {value}')
        return value

    @field_validator('pairs')
    @classmethod
    def validate_pairs(cls, value):
        if value < 1:
            raise ValueError(f'pairs must be >= 1, got {value}')
        return value

    @field_validator('max_den')
    @classmethod
    def validate_max_den(cls, value):
        if value < 2:
            raise ValueError(f'max-den must be >= 2, got {value}')
        return value

    @field_validator('schedule')
    @classmethod
    def validate_schedule(cls, value):
        if value is None:
            return value
        parse_schedule_steps(value)
        return value.strip()

    @field_validator('at')
    @classmethod
    def validate_at(cls, value):
        return None if value is None else format_rational(parse_rational(value))

    @field_validator('points', mode='before')
    @classmethod
    def validate_points(cls, value):
        if value is None:
            return value
        return [format_rational(point) for point in load_points(value)]

    @model_validator(mode='after')
    def validate_exact_field(self):
        if self.exact and self.field is KField.REALS:
            raise ValueError('--exact needs the rational field (--field q)')
        return self

    @property
    def bounds(self):
        return parse_rational(self.interval[0]), parse_rational(self.interval[1])

    def effective_schedule(self) -> str:
        return self.schedule or f'dyadic:1-{self.depth}'

    def header(self) -> dict:
        """The validated configuration as recorded in every report."""
        return self.model_dump(mode='json')

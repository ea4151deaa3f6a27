"""JSON, CSV and plain-text rendering of reports.

JSON output is byte-deterministic: sorted keys, fixed indentation, Rationals
as "p/q" text and no timestamps.
"""
import dataclasses
import io
import math
from enum import Enum
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np
import orjson
import pandas as pd

from hh_lab.models.rational import format_rational

JSON_OPTIONS = orjson.OPT_SORT_KEYS | orjson.OPT_INDENT_2 | orjson.OPT_SERIALIZE_NUMPY | orjson.OPT_NON_STR_KEYS
SANDWICH_COLUMNS = ('depth', 'n_cells', 'midpoint_sum', 'delta_F', 'trapezoid_sum', 'gap')


def _default(value):
    if isinstance(value, Fraction):
        return format_rational(value)
    if isinstance(value, (set, frozenset)):
        return sorted(value)
    if callable(value):
        return getattr(value, '__name__', type(value).__name__)
    raise TypeError(f'cannot serialize {type(value).__name__}')


def _finite(value):
    """orjson writes nan/inf as null; keep them readable instead."""
    if isinstance(value, float) and not math.isfinite(value):
        return 'nan' if math.isnan(value) else ('inf' if value > 0 else '-inf')
    if isinstance(value, dict):
        return {key: _finite(item) for key, item in value.items()}
    if isinstance(value, (list, tuple)):
        return [_finite(item) for item in value]
    if dataclasses.is_dataclass(value) and not isinstance(value, type):
        return {f.name: _finite(getattr(value, f.name)) for f in dataclasses.fields(value)}
    if isinstance(value, Enum):
        return value.value
    return value


def dumps(payload) -> bytes:
    return orjson.dumps(_finite(payload), default=_default, option=JSON_OPTIONS)


def write_json(payload, stream) -> None:
    stream.write(dumps(payload).decode('utf-8'))
    stream.write('\n')


def _csv_cell(value):
    if isinstance(value, Fraction):
        return float(value)
    if isinstance(value, Enum):
        return value.value
    return value


def rows_to_csv(rows: Iterable, columns: Sequence[str]) -> str:
    records = []
    for row in rows:
        data = dataclasses.asdict(row) if dataclasses.is_dataclass(row) else dict(row)
        records.append({column: _csv_cell(data.get(column)) for column in columns})
    frame = pd.DataFrame.from_records(records, columns=list(columns))
    buffer = io.StringIO()
    frame.to_csv(buffer, index=False, lineterminator='\n', float_format='%.17g')
    return buffer.getvalue()


def render_plain(payload, indent: int = 0) -> str:
    """Indented "key: value" lines."""
    lines = []
    pad = '  ' * indent
    data = _finite(payload)
    if isinstance(data, dict):
        for key in sorted(data):
            value = data[key]
            if isinstance(value, (dict, list)) and value:
                lines.append(f'{pad}{key}:')
                lines.append(render_plain(value, indent + 1))
            else:
                lines.append(f'{pad}{key}: {_plain_scalar(value)}')
    elif isinstance(data, list):
        for item in data:
            if isinstance(item, (dict, list)):
                lines.append(f'{pad}-')
                lines.append(render_plain(item, indent + 1))
            else:
                lines.append(f'{pad}- {_plain_scalar(item)}')
    else:
        lines.append(f'{pad}{_plain_scalar(data)}')
    return '\n'.join(lines)


def _plain_scalar(value) -> str:
    if isinstance(value, Fraction):
        return format_rational(value)
    if isinstance(value, np.generic):
        return repr(value.item())
    if value is None:
        return '-'
    return str(value).lower() if isinstance(value, bool) else str(value)

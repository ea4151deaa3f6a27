import re
from typing import List

import orjson

from hh_lab.exceptions import InvalidArgumentError
from hh_lab.models.rational import Rational, parse_rational

POINT_TOKEN_PATTERN = re.compile(r'^[+-]?(\d+(/\d+)?|\d*\.\d+|\d+\.\d*)$')
MAX_POINTS = 4096


def _to_iterable(raw_value):
    """Convert assorted raw values into a list of candidate tokens."""
    if raw_value is None:
        return []
    if isinstance(raw_value, (list, tuple, set)):
        return list(raw_value)
    if isinstance(raw_value, str):
        stripped = raw_value.strip()
        if not stripped:
            return []
        try:
            parsed = orjson.loads(stripped)
            if isinstance(parsed, list):
                return parsed
        except orjson.JSONDecodeError:
            pass
        return re.split(r'[,\s]+', stripped)
    return [raw_value]


def load_points(raw_value) -> List[Rational]:
    """Distinct rational points, in input order, from "0,1/2,1", a JSON list or a sequence."""
    points, seen = [], set()
    for item in _to_iterable(raw_value):
        token = str(item).strip()
        if not token:
            continue
        if not POINT_TOKEN_PATTERN.fullmatch(token):
            raise InvalidArgumentError(f'not a rational point: {token!r}')
        value = parse_rational(token)
        if value in seen:
            continue
        seen.add(value)
        points.append(value)
    if len(points) > MAX_POINTS:
        raise InvalidArgumentError(f'at most {MAX_POINTS} points may be given')
    return points

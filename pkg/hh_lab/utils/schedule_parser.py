import re
from typing import Dict, Iterator, List, Optional, Tuple

from hh_lab.config import Config
from hh_lab.exceptions import InvalidArgumentError
from hh_lab.models.k_partition import KField, KPartition
from hh_lab.utils import partition_builder

SCHEDULE_KINDS = ('dyadic', 'uniform', 'farey', 'random', 'real')
RANGE_PATTERN = re.compile(r'^\s*(\d+)\s*(?:-\s*(\d+))?\s*$')
PARAM_PATTERN = re.compile(r'^\s*([a-z_]+)\s*=\s*(-?\d+)\s*$')


def default_schedule(max_depth: Optional[int] = None) -> str:
    return f'dyadic:1-{max_depth or Config.MAX_DEPTH}'


def _parse_range_token(value) -> List[int]:
    """'3' -> [3]; '1-4' -> [1, 2, 3, 4]; '4,8,16' -> [4, 8, 16]."""
    numbers = []
    for token in (value or '').split(','):
        if not token.strip():
            continue
        match = RANGE_PATTERN.match(token)
        if not match:
            raise InvalidArgumentError(f'bad schedule range {token!r}')
        start, end = match.groups()
        start = int(start)
        end = int(end) if end is not None else start
        if end < start:
            raise InvalidArgumentError(f'descending schedule range {token!r}')
        numbers.extend(range(start, end + 1))
    if not numbers:
        raise InvalidArgumentError('empty schedule range')
    return numbers


def _parse_params(value) -> Dict[str, int]:
    params = {}
    for token in (value or '').split(','):
        if not token.strip():
            continue
        match = PARAM_PATTERN.match(token)
        if not match:
            raise InvalidArgumentError(f'bad schedule parameter {token!r}')
        params[match.group(1)] = int(match.group(2))
    return params


def parse_schedule_steps(schedule_string) -> List[dict]:
    """Split "dyadic:1-20; farey:3" style text into ordered step descriptions."""
    steps = []
    if not schedule_string:
        schedule_string = default_schedule()
    for raw_part in re.split(r'[;|]', schedule_string):
        chunk = raw_part.strip()
        if not chunk:
            continue
        kind, _, body = chunk.partition(':')
        kind = kind.strip().lower()
        if kind not in SCHEDULE_KINDS:
            raise InvalidArgumentError(f'unknown schedule kind {kind!r} (expected one of {", ".join(SCHEDULE_KINDS)})')
        if kind in ('random', 'real'):
            params = _parse_params(body)
            n = params.get('n', 8)
            den = params.get('den', 64)
            seed = params.get('seed', Config.DEFAULT_SEED)
            for offset in range(max(1, params.get('count', 1))):
                steps.append({
                    'kind': kind,
                    'depth': len(steps) + 1,
                    'params': {'n': n, 'den': den, 'seed': seed + offset},
                    'label': f'{kind}:n={n},den={den},seed={seed + offset}' if kind == 'random'
                    else f'{kind}:n={n},seed={seed + offset}',
                })
            continue
        for value in _parse_range_token(body):
            steps.append({
                'kind': kind,
                'depth': len(steps) + 1,
                'params': {'value': value},
                'label': f'{kind}:{value}',
            })
    if not steps:
        raise InvalidArgumentError('schedule has no steps')
    return steps


def build_partition(step: dict, a, b, field: KField = KField.RATIONALS) -> KPartition:
    kind = step['kind']
    params = step['params']
    if kind == 'dyadic':
        return partition_builder.dyadic(a, b, params['value'], field)
    if kind == 'uniform':
        return partition_builder.uniform(a, b, params['value'], field)
    if kind == 'farey':
        return partition_builder.farey(a, b, params['value'], field)
    if kind == 'random':
        return partition_builder.random_rational(a, b, params['n'], params['den'], params['seed'], field)
    return partition_builder.random_real(a, b, params['n'], params['seed'])


def resolve_schedule(schedule_string, a, b, field: KField = KField.RATIONALS) -> Iterator[Tuple[dict, KPartition]]:
    """Lazily build each step's partition of [a, b]."""
    for step in parse_schedule_steps(schedule_string):
        yield step, build_partition(step, a, b, field)

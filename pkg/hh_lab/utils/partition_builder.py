from fractions import Fraction
from typing import Iterable, List

import numpy as np

from hh_lab.exceptions import InvalidArgumentError
from hh_lab.models.k_partition import KField, KPartition
from hh_lab.models.rational import Rational, mediant, parse_rational

ENUMERATION_MAX_DEN = 256


def _endpoints(a, b):
    a, b = parse_rational(a), parse_rational(b)
    if not a < b:
        raise InvalidArgumentError(f'partition needs a < b, got [{a}, {b}]')
    return a, b


def uniform(a: Rational, b: Rational, n: int, field: KField = KField.RATIONALS) -> KPartition:
    a, b = _endpoints(a, b)
    if n < 1:
        raise InvalidArgumentError(f'uniform partition needs n >= 1, got {n}')
    return KPartition(a, b, field=field, uniform_cells=n)


def dyadic(a: Rational, b: Rational, depth: int, field: KField = KField.RATIONALS) -> KPartition:
    """alpha_i = i / 2^depth; depth 0 is the single cell."""
    if depth < 0:
        raise InvalidArgumentError(f'dyadic partition needs depth >= 0, got {depth}')
    return uniform(a, b, 2 ** depth, field)


def farey_sequence(order: int) -> List[Fraction]:
    """Farey sequence of the given order via the mediant (Stern-Brocot) recurrence."""
    if order < 1:
        raise InvalidArgumentError(f'Farey order must be >= 1, got {order}')
    terms = [Fraction(0)]
    # in-order walk of the Stern-Brocot tree between 0/1 and 1/1
    stack = [(Fraction(0), Fraction(1))]
    while stack:
        left, right = stack.pop()
        if left.denominator + right.denominator > order:
            terms.append(right)
            continue
        middle = mediant(left, right)
        stack.append((middle, right))
        stack.append((left, middle))
    return terms


def farey(a: Rational, b: Rational, order: int, field: KField = KField.RATIONALS) -> KPartition:
    a, b = _endpoints(a, b)
    return KPartition(a, b, tuple(farey_sequence(order)), field)


def random_rational(a: Rational, b: Rational, n: int, max_den: int, seed: int,
                    field: KField = KField.RATIONALS) -> KPartition:
    """n cells with distinct coefficients of denominator <= max_den; same seed, same partition."""
    a, b = _endpoints(a, b)
    if n < 1:
        raise InvalidArgumentError(f'random partition needs n >= 1, got {n}')
    if max_den < n:
        raise InvalidArgumentError(f'cannot place {n + 1} distinct fractions with denominators <= {max_den}')
    if n == 1:
        return KPartition(a, b, (Fraction(0), Fraction(1)), field)
    rng = np.random.default_rng(seed)
    if max_den <= ENUMERATION_MAX_DEN:
        interior = farey_sequence(max_den)[1:-1]
        if len(interior) < n - 1:
            raise InvalidArgumentError(f'only {len(interior)} interior fractions exist under denominator {max_den}')
        picks = sorted(rng.choice(len(interior), size=n - 1, replace=False).tolist())
        chosen = [interior[i] for i in picks]
    else:
        found = set()
        while len(found) < n - 1:
            den = int(rng.integers(2, max_den + 1))
            found.add(Fraction(int(rng.integers(1, den)), den))
        chosen = sorted(found)
    return KPartition(a, b, (Fraction(0), *chosen, Fraction(1)), field)


def from_reals(a: Rational, b: Rational, alphas: Iterable[float]) -> KPartition:
    """Ordinary (field R) partition with arbitrary float interior coefficients."""
    a, b = _endpoints(a, b)
    interior = sorted(float(alpha) for alpha in alphas if 0 < float(alpha) < 1)
    return KPartition(a, b, (Fraction(0), *interior, Fraction(1)), KField.REALS)


def random_real(a: Rational, b: Rational, n: int, seed: int) -> KPartition:
    rng = np.random.default_rng(seed)
    return from_reals(a, b, rng.uniform(0.0, 1.0, size=max(0, n - 1)).tolist())


def refine(p: KPartition, q: KPartition) -> KPartition:
    """Common refinement: sorted union of the coefficient sets."""
    if p.a != q.a or p.b != q.b:
        raise InvalidArgumentError(f'cannot refine partitions of different intervals {p.descriptor()} / {q.descriptor()}')
    if p.field is not q.field:
        raise InvalidArgumentError('cannot refine partitions over different fields')
    alphas = tuple(sorted(set(p.coefficients) | set(q.coefficients)))
    return KPartition(p.a, p.b, alphas, p.field)


def transport(p: KPartition, a: Rational, b: Rational) -> KPartition:
    """Same coefficients on another interval."""
    a, b = _endpoints(a, b)
    return KPartition(a, b, p.alphas, p.field, p.uniform_cells)


def mesh(p: KPartition):
    """Largest gap t_i - t_{i-1}."""
    if p.is_uniform:
        return p.width / p.n if p.field is KField.RATIONALS else float(p.width) / p.n
    alphas = p.coefficients
    largest = max(hi - lo for lo, hi in zip(alphas, alphas[1:]))
    if p.field is KField.RATIONALS:
        return largest * p.width
    return float(largest) * float(p.width)

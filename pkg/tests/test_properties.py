"""End-to-end properties over the builtin suite: seeded, exact where the inputs allow it."""
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from hh_lab.cli import run
from hh_lab.models.expression import BinOp, Num, Var
from hh_lab.models.func_def import FuncDef
from hh_lab.models.shape import Shape
from hh_lab.utils.builtin_suite import BUILTIN_DEFINITIONS, CONVEX_BUILTINS, SMOOTH_BUILTINS, lookup_builtin
from hh_lab.utils.convexity import find_violation, support_line
from hh_lab.utils.hh_engine import derivative_check, hh_scan, revalidate_pair, sandwich
from hh_lab.utils.kriemann import affine_integral_exact, integrate, interval_additivity_check, trapezoid_sum
from hh_lab.utils.partition_builder import dyadic, farey, random_rational, uniform
from conftest import NUMPY_TWINS, midpoint_oracle

F = Fraction
rationals = st.fractions(min_value=-50, max_value=50, max_denominator=97)


def affine_function(slope, intercept):
    return FuncDef(name='g', body=BinOp('+', BinOp('*', Num(slope), Var()), Num(intercept)),
                   declared_shape=Shape.AFFINE)


@settings(max_examples=100, deadline=None)
@given(slope=rationals, intercept=rationals, a=rationals, width=st.fractions(min_value=F(1, 97), max_value=20),
       n=st.integers(1, 24), seed=st.integers(0, 10 ** 6))
def test_trapezoid_sums_of_affine_functions_are_exact(slope, intercept, a, width, n, seed):
    g, b = affine_function(slope, intercept), a + width
    expected = affine_integral_exact(slope, intercept, a, b)
    for p in (uniform(a, b, n), dyadic(a, b, n % 6), farey(a, b, n % 9 + 1), random_rational(a, b, n, 64, seed)):
        assert trapezoid_sum(g, p) == expected


CENTRAL_POINTS = [F(k, 8) for k in (-7, -5, -4, -3, -1, 1, 3, 4, 5, 7)]


@pytest.mark.parametrize('name', sorted(BUILTIN_DEFINITIONS))
def test_declared_antiderivatives_match_a_central_difference(name):
    f = lookup_builtin(name)
    primitive, h = f.primitive(), 1e-5
    for x in CENTRAL_POINTS:
        t = float(x)
        slope = (primitive.value(t + h) - primitive.value(t - h)) / (2 * h)
        assert abs(slope - f.value(t)) <= 1e-6, f'{name} at {x}'


@pytest.mark.parametrize('name', CONVEX_BUILTINS)
def test_convex_suite_satisfies_the_sandwich_everywhere(name):
    f = lookup_builtin(name)
    report = hh_scan(f, f.primitive(), (-1, 1), pairs=10 ** 4, seed=11, tol=1e-12)
    assert report.violations == 0
    assert report.pairs_tested >= 10 ** 4
    assert report.exact == f.exact_capable


@pytest.mark.parametrize('name, domain', [('neg_square', (-1, 1)), ('sin', (0, 3))])
def test_non_convex_functions_yield_a_revalidated_witness(name, domain):
    f = lookup_builtin(name)
    witness = find_violation(f, f.primitive(), domain, budget=10 ** 4, seed=0, tol=1e-12)
    assert witness is not None and witness.revalidated
    assert revalidate_pair(f, f.primitive(), witness.x, witness.y, witness.side, 1e-12)


def test_sandwich_gap_shrinks_by_four_per_level():
    square = lookup_builtin('square')
    report = sandwich(square, square.primitive(), 0, 1, max_depth=12)
    assert [row.depth for row in report.rows] == list(range(1, 13))
    for row in report.rows:
        assert 0 <= row.gap <= F(1, 4 ** (row.depth - 1))
        assert row.delta_F == F(1, 3)
    assert abs(report.limit - F(1, 3)) <= 1e-9


@pytest.mark.parametrize('name', ['square', 'exp', 'abs'])
def test_integrate_agrees_with_an_independent_riemann_sum(name):
    estimate = integrate(lookup_builtin(name), 0, 1, tol=1e-6)
    assert abs(float(estimate.value) - midpoint_oracle(NUMPY_TWINS[name], 0, 1)) <= 1e-6


def test_support_lines_integrate_below_their_functions():
    rng = np.random.default_rng(2024)
    for _ in range(50):
        f = lookup_builtin(CONVEX_BUILTINS[int(rng.integers(len(CONVEX_BUILTINS)))])
        z = F(int(rng.integers(-63, 64)), 64)
        g = support_line(f, z).as_funcdef()
        below = integrate(g, -1, 1, tol=1e-3, schedule='dyadic:1-12')
        above = integrate(f, -1, 1, tol=1e-3, schedule='dyadic:1-12')
        assert float(below.value) <= float(above.value) + 1e-9


@pytest.mark.parametrize('name', SMOOTH_BUILTINS)
def test_integrals_are_additive_over_random_splits(name):
    f = lookup_builtin(name)
    rng = np.random.default_rng(5)
    for k in rng.choice(np.arange(1, 1024), size=20, replace=False).tolist():
        assert interval_additivity_check(f, 0, F(k, 1024), 1, tol=1e-8, schedule='dyadic:1-14')


def test_affine_additivity_is_exact():
    affine = lookup_builtin('affine')
    for k in range(1, 20):
        split = F(k, 20)
        left, right = integrate(affine, 0, split, exact=True), integrate(affine, split, 1, exact=True)
        assert left.value + right.value == integrate(affine, 0, 1, exact=True).value == 4
        assert interval_additivity_check(affine, 0, split, 1, tol=1e-12, exact=True)


@pytest.mark.parametrize('name', (*CONVEX_BUILTINS, 'affine'))
def test_derivative_squeeze_at_seeded_points(name):
    f = lookup_builtin(name)
    rng = np.random.default_rng(17)
    for k in rng.integers(-63, 64, size=20).tolist():
        check = derivative_check(f, f.primitive(), F(k, 64), tol=1e-4)
        assert check, f'{name} at {k}/64'


def test_derivative_squeeze_at_the_kink():
    f = lookup_builtin('abs')
    check = derivative_check(f, f.primitive(), 0, tol=1e-4)
    assert check.squeeze_holds and check.converged
    assert check.final_error <= 1e-6


CLI_MATRIX = [
    ['integrate', '-f', '@exp', '--tol', '1e-4'],
    ['integrate', '-f', 'x^2', '--exact', '--depth', '6'],
    ['sums', '-f', '@sin', '--interval', '0', '3', '--schedule', 'random:n=16,den=64,seed=3,count=2'],
    ['sandwich', '-f', '@quartic', '-F', '@quartic', '--depth', '5'],
    ['hh-check', '-f', '@relu', '-F', '@relu', '--interval', '-1', '1', '--pairs', '200', '--seed', '4'],
    ['convexity', '-f', '@abs', '--interval', '-1', '1', '--pairs', '200'],
    ['violation', '-f', '@sin', '-F', '@sin', '--interval', '0', '3', '--pairs', '200'],
    ['support-line', '-f', '@exp', '--at', '1/3'],
    ['reconstruct', '-f', '@square', '--points', '1/4,1/2', '--tol', '1e-4'],
]


def test_cli_matrix_is_byte_deterministic(capsys):
    def sweep():
        outputs = []
        for argv in CLI_MATRIX:
            code = run(argv)
            outputs.append((code, capsys.readouterr().out))
        return outputs

    first = sweep()
    assert all(code in (0, 1) for code, _ in first)
    assert first == sweep()

from fractions import Fraction

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from hh_lab.config import Config
from hh_lab.exceptions import InvalidArgumentError, NoSupportError
from hh_lab.models.convexity_report import Verdict
from hh_lab.models.func_def import FuncDef
from hh_lab.models.interval import Interval
from hh_lab.models.shape import Shape, Side
from hh_lab.utils.builtin_suite import CONVEX_BUILTINS, lookup_builtin
from hh_lab.utils.convexity import (certify_shape, find_violation, jensen_check, k_convex_check,
                                    second_difference_check, support_convexity_check, support_line)
from hh_lab.utils.hh_engine import revalidate_pair
from hh_lab.utils.partition_builder import uniform
from conftest import make_function

F = Fraction


def test_jensen_on_square(square):
    report = jensen_check(square, ('-2', '2'), pairs=1000, seed=0)
    assert report.verdict is Verdict.NO_VIOLATION
    assert report.pairs_tested >= 1000
    assert report.witness is None


def test_jensen_finds_the_concave_bend(neg_square):
    report = jensen_check(neg_square, (-2, 2), pairs=1000, seed=0)
    assert report.verdict is Verdict.COUNTEREXAMPLE
    witness = report.witness
    assert witness.lam == F(1, 2)
    assert witness.lhs > witness.rhs
    assert witness.z == (witness.x + witness.y) / 2


def test_jensen_equality_on_affine(affine):
    assert jensen_check(affine, (-2, 2), pairs=500, seed=4, tol=1e-12)


def test_jensen_rejects_bad_arguments(square):
    with pytest.raises(InvalidArgumentError):
        jensen_check(square, ('1', '1'))
    with pytest.raises(InvalidArgumentError):
        jensen_check(square, (0, 1), pairs=0)


def test_k_convex_check(square, builtin):
    assert k_convex_check(square, (-2, 2), pairs=500, max_den=16, seed=3)
    report = k_convex_check(builtin('sin'), (0, F(6283, 1000)), pairs=500, max_den=16, seed=3)
    assert report.verdict is Verdict.COUNTEREXAMPLE
    assert 0 < report.witness.lam < 1
    assert report.witness.lhs - report.witness.rhs > report.tol
    with pytest.raises(InvalidArgumentError):
        k_convex_check(square, (0, 1), pairs=0)
    with pytest.raises(InvalidArgumentError):
        k_convex_check(square, (0, 1), pairs=10, max_den=1)


def test_second_difference_check(builtin):
    assert second_difference_check(builtin('quartic'), uniform(-1, 1, 64))
    report = second_difference_check(builtin('sin'), uniform(0, 3, 64))
    assert report.verdict is Verdict.COUNTEREXAMPLE
    assert 0 < report.witness.z < np.pi
    with pytest.raises(InvalidArgumentError):
        second_difference_check(builtin('quartic'), uniform(0, 1, 1))


def test_second_difference_threshold_is_on_the_second_difference():
    shallow = make_function('-3/1000*x^2')
    report = second_difference_check(shallow, uniform(0, 1, 2), tol=1e-3)
    assert report.verdict is Verdict.COUNTEREXAMPLE
    assert report.witness.z == F(1, 2)
    assert second_difference_check(shallow, uniform(0, 1, 2), tol=F(3, 2000))


def test_second_difference_on_a_table():
    xs = [F(k, 8) for k in range(-8, 9)]
    table = FuncDef.from_table('t', [(x, x * x) for x in xs])
    assert certify_shape(table, (-1, 1)).shape is Shape.CONVEX


def test_support_line_of_square(square):
    line = support_line(square, 1)
    assert line.slope == pytest.approx(2.0, abs=1e-9)
    assert line.intercept == pytest.approx(-1.0, abs=1e-9)
    assert line(1) == pytest.approx(1.0)


def test_support_line_at_a_kink(builtin):
    line = support_line(builtin('abs'), 0)
    assert line.slope == pytest.approx(0.0, abs=1e-12)
    assert line.intercept == pytest.approx(0.0, abs=1e-12)
    assert line.left_slope == pytest.approx(-1.0)
    assert line.right_slope == pytest.approx(1.0)


def test_concave_function_has_no_support(neg_square):
    with pytest.raises(NoSupportError):
        support_line(neg_square, 0)


def test_support_point_must_be_interior():
    f = FuncDef(name='f', body=make_function('x^2').body, domain=Interval(F(0), F(1)))
    with pytest.raises(InvalidArgumentError):
        support_line(f, 2)


@settings(max_examples=25, deadline=None)
@given(name=st.sampled_from(CONVEX_BUILTINS), z=st.fractions(min_value=-1, max_value=1, max_denominator=64))
def test_support_line_stays_below_convex_functions(name, z):
    f = lookup_builtin(name)
    line = support_line(f, z)
    xs = np.linspace(-3.0, 3.0, 601)
    assert np.all(line.slope * xs + line.intercept <= f.values(xs) + 1e-8 * np.maximum(1.0, np.abs(f.values(xs))))
    assert line.left_slope - 1e-6 <= line.slope <= line.right_slope + 1e-6


def test_support_convexity_check(square, neg_square):
    assert support_convexity_check(square, 0, 1, F(1, 3))
    failed = support_convexity_check(neg_square, -1, 1, F(1, 2))
    assert not failed
    assert failed.reason
    with pytest.raises(InvalidArgumentError):
        support_convexity_check(square, 0, 1, 1)


def test_find_violation_on_a_concave_pair(neg_square):
    witness = find_violation(neg_square, neg_square.primitive(), (0, 1), budget=1000, seed=0)
    assert witness is not None
    assert witness.side is Side.LEFT
    assert witness.revalidated
    assert witness.lhs > witness.rhs


def test_no_violation_for_a_convex_pair(square):
    assert find_violation(square, square.primitive(), (-1, 1), budget=2000, seed=5) is None


def test_perturbed_primitive_is_caught(square):
    shifted = make_function('x^3/3 + x/100')
    witness = find_violation(square, shifted, (0, 1), budget=1000, seed=0)
    assert witness is not None
    assert revalidate_pair(square, shifted, witness.x, witness.y, witness.side, 1e-12)


def test_certify_shape(neg_square, builtin):
    assert certify_shape(make_function('x^2'), (-1, 1)).shape is Shape.CONVEX
    assert certify_shape(neg_square, (-1, 1)).shape is Shape.CONCAVE
    assert certify_shape(make_function('2*x + 3'), (1, 5)).shape is Shape.AFFINE
    assert certify_shape(builtin('sin'), (0, 3)).shape is Shape.CONCAVE
    assert certify_shape(builtin('sin'), (-3, 3)).shape is Shape.UNKNOWN
    certified = certify_shape(make_function('abs(x)'), (-1, 1))
    assert certified.verified_shape is Shape.CONVEX
    assert certified.declared_shape is Shape.UNKNOWN


@pytest.mark.parametrize('name', CONVEX_BUILTINS)
def test_convex_builtins_pass_every_discrete_check(name):
    f = lookup_builtin(name)
    assert jensen_check(f, (-1, 1), pairs=500, seed=0, tol=1e-12)
    assert k_convex_check(f, (-1, 1), pairs=500, max_den=16, seed=0, tol=1e-12)
    assert second_difference_check(f, uniform(-1, 1, 64), tol=1e-12)


def mp_value(value):
    if isinstance(value, Fraction):
        return mpmath.mpf(value.numerator) / value.denominator
    return mpmath.mpf(value)


@settings(max_examples=20, deadline=None)
@given(case=st.sampled_from([('neg_square', (-1, 1)), ('sin', (0, 3))]),
       check=st.sampled_from([jensen_check, k_convex_check]), seed=st.integers(0, 10 ** 4))
def test_counterexamples_hold_at_doubled_precision(case, check, seed):
    name, domain = case
    f = lookup_builtin(name)
    report = check(f, domain, pairs=200, seed=seed)
    assert report.verdict is Verdict.COUNTEREXAMPLE
    w = report.witness
    prec = 2 * Config.WITNESS_PRECISION_BITS
    with mpmath.workprec(prec):
        lam = mp_value(w.lam)
        lhs = f.value_mp(w.z, prec)
        rhs = lam * f.value_mp(w.x, prec) + (1 - lam) * f.value_mp(w.y, prec)
        assert lhs - rhs > report.tol

import math
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from hh_lab.exceptions import InvalidArgumentError, StrategyMisuseError
from hh_lab.models.bound_strategy import BoundStrategy, StrategyKind
from hh_lab.models.k_partition import KField
from hh_lab.models.shape import Shape
from hh_lab.utils.kriemann import (ScipyOracle, TagRule, affine_integral_exact, integrate, interval_additivity_check,
                                   lower_sum, ordinary_riemann_sum, sum_report, tagged_sum, trapezoid_sum, upper_sum)
from hh_lab.utils.builtin_suite import lookup_builtin
from hh_lab.utils.partition_builder import dyadic, farey, random_rational, refine, uniform
from conftest import make_function

F = Fraction
ENDPOINT = BoundStrategy.endpoint_convex()
SQUARE = lookup_builtin('square')
QUARTIC = lookup_builtin('quartic')


def endpoint_oracle(fn, points, side):
    """Sum of fn at the left (side=0) or right (side=1) cell ends times the cell widths."""
    return sum(fn((lo, hi)[side]) * (hi - lo) for lo, hi in zip(points, points[1:]))


def test_strategy_parsing():
    assert BoundStrategy.parse('endpoint').kind is StrategyKind.ENDPOINT_CONVEX
    assert BoundStrategy.parse('dense:5') == BoundStrategy.dense_sample(5)
    assert BoundStrategy.parse('dense:5').describe() == 'dense:5'
    with pytest.raises(InvalidArgumentError):
        BoundStrategy.parse('dense:1')
    with pytest.raises(InvalidArgumentError):
        BoundStrategy.parse('dense:many')
    with pytest.raises(InvalidArgumentError):
        BoundStrategy.parse('sup')


def test_upper_and_lower_sums_of_square(square):
    assert upper_sum(square, uniform(0, 1, 2), ENDPOINT) == F(5, 8)
    assert upper_sum(square, uniform(0, 1, 1), ENDPOINT) == F(1)
    assert lower_sum(square, uniform(0, 1, 2), ENDPOINT) == F(1, 8)


def test_sums_of_the_affine_builtin(affine):
    p = uniform(1, 5, 4)
    # increasing, so inf at the left end and sup at the right end of every cell
    expected_lower = endpoint_oracle(lambda t: 2 * t + 3, p.points, 0)
    expected_upper = endpoint_oracle(lambda t: 2 * t + 3, p.points, 1)
    assert lower_sum(affine, p, ENDPOINT) == expected_lower == 32
    assert upper_sum(affine, p, ENDPOINT) == expected_upper == 40


def test_constant_function_sums():
    three = make_function('3', Shape.AFFINE)
    for p in (uniform(0, 2, 3), farey(F(-1), F(1), 5)):
        assert lower_sum(three, p, ENDPOINT) == 3 * p.width
        assert upper_sum(three, p, ENDPOINT) == 3 * p.width


def test_concave_endpoint_sums(neg_square):
    p = uniform(-1, 1, 2)
    assert upper_sum(neg_square, p, ENDPOINT) == 0
    assert lower_sum(neg_square, p, ENDPOINT) == -2
    assert upper_sum(neg_square, uniform(-1, 1, 1), ENDPOINT) == pytest.approx(0.0, abs=1e-12)


def test_interior_minimum_is_found(builtin):
    quartic = builtin('quartic')
    assert lower_sum(quartic, uniform(-1, 1, 1), ENDPOINT, exact=False) == pytest.approx(0.0, abs=1e-12)
    assert upper_sum(quartic, uniform(-1, 1, 1), ENDPOINT, exact=False) == pytest.approx(2.0)


def test_endpoint_strategy_needs_a_known_shape(builtin):
    with pytest.raises(StrategyMisuseError):
        upper_sum(builtin('sin'), uniform(0, 3, 4), ENDPOINT)


def test_dense_sampling_brackets_sin(builtin):
    sin = builtin('sin')
    p = uniform(0, 3, 16)
    s = BoundStrategy.dense_sample(8)
    assert lower_sum(sin, p, s) <= 1 - math.cos(3) <= upper_sum(sin, p, s)


def test_scipy_oracle_brackets_sin(builtin):
    sin = builtin('sin')
    p = uniform(0, 3, 8)
    s = BoundStrategy.user_oracle(ScipyOracle(sin))
    lower, upper = lower_sum(sin, p, s), upper_sum(sin, p, s)
    assert lower <= 1 - math.cos(3) <= upper
    assert upper - lower < 1.0


def test_sum_report(square):
    report = sum_report(square, uniform(0, 1, 2), ENDPOINT)
    assert (report.lower, report.upper) == (F(1, 8), F(5, 8))
    assert report.exact
    assert report.strategy == 'endpoint'
    assert report.cells == 2


def test_float_and_exact_sums_agree(square):
    p = farey(0, 1, 9)
    assert float(upper_sum(square, p, ENDPOINT)) == pytest.approx(upper_sum(square, p, ENDPOINT, exact=False),
                                                                  rel=1e-14)
    assert float(lower_sum(square, p, ENDPOINT)) == pytest.approx(lower_sum(square, p, ENDPOINT, exact=False),
                                                                  rel=1e-14)


def test_chunked_sums_match_the_bracket(square):
    p = uniform(0, 1, 2 ** 17)
    lower, upper = lower_sum(square, p, ENDPOINT, exact=False), upper_sum(square, p, ENDPOINT, exact=False)
    assert lower < 1 / 3 < upper
    assert upper - lower == pytest.approx(2.0 ** -17, rel=1e-9)


def test_tagged_sums(square):
    assert tagged_sum(square, uniform(0, 1, 1), TagRule.MIDPOINT) == F(1, 4)
    assert tagged_sum(square, uniform(0, 1, 2), 'left') == F(1, 8)
    assert tagged_sum(square, uniform(0, 1, 2), [F(1, 4), F(3, 4)]) == F(5, 16)
    three = make_function('3', Shape.AFFINE)
    assert tagged_sum(three, uniform(F(1, 2), 2, 3), TagRule.LEFT) == F(9, 2)


def test_tags_must_lie_in_their_cells(square):
    with pytest.raises(InvalidArgumentError):
        tagged_sum(square, uniform(0, 1, 2), [F(3, 4), F(3, 4)])
    with pytest.raises(InvalidArgumentError):
        tagged_sum(square, uniform(0, 1, 2), [F(1, 4)])


def test_trapezoid_sums(square, affine):
    assert trapezoid_sum(square, uniform(0, 1, 1)) == F(1, 2)
    assert trapezoid_sum(square, uniform(0, 1, 2)) == F(3, 8)
    for p in (uniform(1, 5, 1), uniform(1, 5, 7), farey(1, 5, 6), random_rational(1, 5, 9, 40, 11)):
        assert trapezoid_sum(affine, p) == 36


@settings(max_examples=40, deadline=None)
@given(n=st.integers(1, 12), seed=st.integers(0, 10 ** 6), rule=st.sampled_from(list(TagRule)))
def test_tagged_sum_lies_between_lower_and_upper(n, seed, rule):
    p = random_rational(0, 1, n, 64, seed)
    lower, upper = lower_sum(SQUARE, p, ENDPOINT), upper_sum(SQUARE, p, ENDPOINT)
    assert lower <= tagged_sum(SQUARE, p, rule) <= upper


@settings(max_examples=30, deadline=None)
@given(seed_p=st.integers(0, 10 ** 6), seed_q=st.integers(0, 10 ** 6))
def test_refinement_tightens_the_bracket(seed_p, seed_q):
    p = random_rational(0, 2, 5, 32, seed_p)
    q = random_rational(0, 2, 4, 32, seed_q)
    fine = refine(p, q)
    assert upper_sum(QUARTIC, fine, ENDPOINT) <= upper_sum(QUARTIC, p, ENDPOINT)
    assert lower_sum(QUARTIC, fine, ENDPOINT) >= lower_sum(QUARTIC, p, ENDPOINT)


def test_integrate_square():
    estimate = integrate(make_function('x^2', Shape.CONVEX), 0, 1, tol=1e-3)
    assert estimate.converged
    assert abs(estimate.value - 1 / 3) <= 1e-3
    assert estimate.lower <= estimate.value <= estimate.upper
    assert estimate.upper - estimate.lower <= 1e-3
    assert len(estimate.schedule) == len(estimate.trace)


def test_integrate_exp(builtin):
    estimate = integrate(builtin('exp'), 0, 1, tol=1e-6)
    assert abs(estimate.value - (math.e - 1)) <= 1e-6


def test_integrate_affine_is_exact(affine):
    estimate = integrate(affine, 1, 5, exact=True)
    assert estimate.value == 36 and isinstance(estimate.value, Fraction)
    assert estimate.exact and estimate.converged
    assert integrate(make_function('3'), F(1, 2), 2).value == pytest.approx(4.5)


def test_integrate_in_exact_mode_stays_rational(square):
    estimate = integrate(square, 0, 1, tol=1e-2, schedule='dyadic:1-8', exact=True)
    assert estimate.exact
    assert isinstance(estimate.lower, Fraction)
    assert estimate.lower <= F(1, 3) <= estimate.upper


def test_integrate_over_the_reals(square):
    estimate = integrate(square, 0, 1, tol=1e-3, field=KField.REALS)
    assert not estimate.exact
    assert estimate.value == pytest.approx(1 / 3, abs=1e-3)


def test_integrate_reports_non_convergence(square):
    estimate = integrate(square, 0, 1, tol=1e-9, schedule='dyadic:1-4')
    assert not estimate.converged
    assert estimate.lower <= 1 / 3 <= estimate.upper


def test_integrate_rejects_bad_arguments(square):
    with pytest.raises(InvalidArgumentError):
        integrate(square, 1, 1)
    with pytest.raises(InvalidArgumentError):
        integrate(square, 0, 1, tol=0)


def test_affine_integral_exact():
    assert affine_integral_exact(2, 3, 1, 5) == 36
    assert affine_integral_exact(0, 0, F(-7, 3), F(9, 2)) == 0
    assert affine_integral_exact(1, 0, -1, 1) == 0
    with pytest.raises(InvalidArgumentError):
        affine_integral_exact(1, 0, 2, 2)


def test_interval_additivity(square, affine):
    assert interval_additivity_check(square, 0, F(1, 2), 1, tol=1e-6)
    assert interval_additivity_check(affine, 1, F(7, 3), 5, tol=1e-12, exact=True)
    with pytest.raises(InvalidArgumentError):
        interval_additivity_check(square, F(1, 2), F(1, 2), 1, tol=1e-6)


def test_ordinary_riemann_sum(square):
    assert ordinary_riemann_sum(square, 0, 1, 1000) == pytest.approx(1 / 3, abs=1e-6)
    assert ordinary_riemann_sum(square, 0, 1, 1000, TagRule.LEFT) < 1 / 3


def test_tag_rules_converge_to_the_bracket_midpoint(builtin):
    for name in ('square', 'exp', 'sin'):
        f = builtin(name)
        value = integrate(f, 0, 1, tol=1e-4, schedule='dyadic:1-14').value
        p = dyadic(0, 1, 14)
        for rule in TagRule:
            assert tagged_sum(f, p, rule, exact=False) == pytest.approx(value, abs=1e-3)

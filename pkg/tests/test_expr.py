import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from hh_lab.exceptions import ArithmeticDomainError, ExprSyntaxError, TableLookupError
from hh_lab.models.expression import NOT_EXACT, BinOp, Call, Neg, Num, Pow, Var
from hh_lab.models.func_def import FuncDef
from hh_lab.models.interval import Interval
from hh_lab.models.rational import to_float
from hh_lab.models.shape import Provenance, Shape
from hh_lab.utils.builtin_suite import BUILTIN_DEFINITIONS, builtin_suite, lookup_builtin
from hh_lab.utils.evaluator import eval_array, eval_float, eval_mp, eval_rational
from hh_lab.utils.expr_parser import parse, pretty

ROUND_TRIP_TEXTS = [
    'x^2 + 3/4',
    'max(x, 0)^2/2',
    '-x^3/3',
    '2*x + 3',
    'exp(x) - sin(x)*cos(x)',
    'x*abs(x)/2',
    '(x - 1)*(x + 1)',
    'min(x, 1, 2*x) - 0.5',
    'x^-2 + log(x)',
    'x/2/3',
    '1/2/3 + x/(2/3)',
]


def test_parse_builds_expected_trees():
    assert parse('x^2 + 3/4') == BinOp('+', Pow(Var(), 2), Num(Fraction(3, 4)))
    assert parse('max(x, 0)') == Call('max', (Var(), Num(Fraction(0))))
    assert parse('-x^2') == Neg(Pow(Var(), 2))


def test_chained_division_is_left_associative():
    assert parse('x/2/3') == BinOp('/', BinOp('/', Var(), Num(Fraction(2))), Num(Fraction(3)))
    assert parse('1/2/3') == BinOp('/', Num(Fraction(1, 2)), Num(Fraction(3)))
    assert eval_rational(parse('x/2/3'), Fraction(6)) == 1
    assert eval_rational(parse('1/2/3'), Fraction(0)) == Fraction(1, 6)
    assert eval_rational(parse('x/1/2'), Fraction(5)) == Fraction(5, 2)
    assert eval_rational(parse('x*2/3'), Fraction(3)) == 2


def test_parse_decimal_literals_are_exact():
    assert parse('0.25*x') == BinOp('*', Num(Fraction(1, 4)), Var())


def test_syntax_error_reports_offset():
    with pytest.raises(ExprSyntaxError) as info:
        parse('x + * 2')
    assert info.value.offset == 4
    assert 'x' in info.value.expected


@pytest.mark.parametrize('text', ['', 'foo(x)', 'x^y', 'max(x)', '(x + 1', 'x 2', '1/0'])
def test_parse_rejects_malformed_text(text):
    with pytest.raises(ExprSyntaxError):
        parse(text)


@pytest.mark.parametrize('text', ROUND_TRIP_TEXTS)
def test_pretty_parses_back_to_the_same_tree(text):
    tree = parse(text)
    assert parse(pretty(tree)) == tree


def test_eval_float():
    assert eval_float(parse('x^2'), 0.5) == 0.25
    assert eval_float(parse('exp(x)'), 0.0) == 1.0
    with pytest.raises(ArithmeticDomainError):
        eval_float(parse('log(x)'), -1.0)
    with pytest.raises(ArithmeticDomainError):
        eval_float(parse('1/x'), 0.0)


def test_eval_rational():
    assert eval_rational(parse('2*x + 3'), Fraction(3)) == Fraction(9)
    assert eval_rational(parse('x^2'), Fraction(1, 3)) == Fraction(1, 9)
    assert eval_rational(parse('exp(x)'), Fraction(0)) is NOT_EXACT
    assert eval_rational(parse('max(x, 0) - abs(x)'), Fraction(-2)) == Fraction(-2)


RATIONAL_CLOSED = [parse(text) for text in (
    'x^2 + 3/4', '2*x + 3', '-x^3/3', 'x*abs(x)/2', '(x - 1)*(x + 1)', 'min(x, 1, 2*x) - 0.5',
    'max(x, 0)^2/2', 'x/2/3', 'x^2 + 1/3',
)]


@settings(max_examples=200, deadline=None)
@given(tree=st.sampled_from(RATIONAL_CLOSED), k=st.integers(-640, 640))
def test_exact_and_float_evaluation_agree_to_a_few_ulps(tree, k):
    x = Fraction(k, 64)
    exact = to_float(eval_rational(tree, x))
    assert abs(eval_float(tree, to_float(x)) - exact) <= 4 * math.ulp(exact)


def test_eval_array_matches_scalar_evaluation():
    xs = np.linspace(-2.0, 2.0, 41)
    for text in ('x^2 + 3/4', 'abs(x) - max(x, 0)', 'sin(x)*exp(x)', 'min(x, 1/2)'):
        tree = parse(text)
        expected = [eval_float(tree, x) for x in xs]
        np.testing.assert_allclose(eval_array(tree, xs), expected, rtol=1e-14, atol=1e-15)


def test_eval_mp_agrees_with_float():
    value = eval_mp(parse('exp(x) - 1'), Fraction(1, 3), prec=106)
    assert float(value) == pytest.approx(np.expm1(1 / 3), rel=1e-15)


def test_builtin_registry():
    square = lookup_builtin('square')
    assert square.body == parse('x^2')
    assert square.antiderivative == parse('x^3/3')
    assert square.shape is Shape.CONVEX
    relu = lookup_builtin('relu')
    assert relu.body == parse('max(x, 0)')
    assert relu.shape is Shape.CONVEX
    assert lookup_builtin('missing') is None
    assert {f.name for f in builtin_suite()} == set(BUILTIN_DEFINITIONS)


def test_builtin_primitive_is_its_own_function():
    F = lookup_builtin('abs').primitive()
    assert F.body == parse('x*abs(x)/2')
    assert F.value(Fraction(-2)) == Fraction(-2)


def test_exact_capability_follows_the_tree():
    assert lookup_builtin('relu').exact_capable
    assert not lookup_builtin('exp').exact_capable
    assert isinstance(lookup_builtin('exp').value(Fraction(0)), float)


def test_value_respects_the_open_domain():
    f = FuncDef(name='f', body=parse('log(x)'), domain=Interval(Fraction(0), Fraction(2)))
    with pytest.raises(ArithmeticDomainError):
        f.value(Fraction(0))
    with pytest.raises(ArithmeticDomainError):
        f.values([0.5, 2.0])
    assert f.value(Fraction(1)) == 0.0


def test_tabulated_function_answers_only_at_its_abscissae():
    table = FuncDef.from_table('t', [(Fraction(1, 2), Fraction(1, 4)), (Fraction(1), Fraction(1))])
    assert table.provenance is Provenance.TABLE
    assert table.value(Fraction(1, 2)) == Fraction(1, 4)
    assert table.value(0.5) == Fraction(1, 4)
    assert table.exact_capable
    with pytest.raises(TableLookupError):
        table.value(Fraction(3, 4))


def test_negated_flips_declared_shape():
    neg = lookup_builtin('square').negated()
    assert neg.shape is Shape.CONCAVE
    assert neg.value(Fraction(2)) == Fraction(-4)


def test_describe_records_provenance():
    info = lookup_builtin('square').describe()
    assert info['name'] == 'square'
    assert info['provenance'] == 'symbolic'
    assert info['antiderivative'] == pretty(parse('x^3/3'))
    assert info['declared_shape'] == 'convex'

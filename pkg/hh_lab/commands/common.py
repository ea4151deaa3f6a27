"""Options, function resolution and report emission shared by the subcommands."""
import functools
import logging
import sys
from fractions import Fraction
from typing import Optional

import click

from hh_lab.config import Config
from hh_lab.exceptions import InvalidArgumentError
from hh_lab.forms import OutputFormat, RunConfig
from hh_lab.models.bound_strategy import BoundStrategy
from hh_lab.models.func_def import FuncDef
from hh_lab.models.interval import Interval
from hh_lab.utils import report_writer
from hh_lab.utils.builtin_suite import lookup_builtin
from hh_lab.utils.expr_parser import parse
from hh_lab.utils.kriemann import ScipyOracle

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2

EXPRESSION_HELP = ('expression in x, or @name for a builtin; write negative literals via '
                   'subtraction or parentheses, e.g. "0-x^2"')


def function_option(fn):
    return click.option('-f', 'function', required=True, help=f'Function f: {EXPRESSION_HELP}.')(fn)


def primitive_option(required=True):
    def decorator(fn):
        return click.option('-F', 'primitive', required=required,
                            help=f'Primitive F: {EXPRESSION_HELP}; @name takes the builtin antiderivative.')(fn)
    return decorator


def interval_option(fn):
    return click.option('--interval', nargs=2, type=str, default=('0', '1'), show_default=True,
                        help='Endpoints A B as rational text ("1/3", "2", "0.25").')(fn)


def output_options(fn):
    """--tol, --seed and --out, present on every subcommand."""
    fn = click.option('--out', type=click.Choice([o.value for o in OutputFormat]), default='json',
                      show_default=True, help='Report format.')(fn)
    fn = click.option('--seed', type=int, default=Config.DEFAULT_SEED, show_default=True)(fn)
    fn = click.option('--tol', type=float, default=Config.DEFAULT_TOL, show_default=True,
                      help='Tolerance (> 0).')(fn)
    return fn


def integration_options(fn):
    fn = click.option('--exact', is_flag=True, help='Exact rational arithmetic where possible.')(fn)
    fn = click.option('--schedule', default=None, help='Refinement schedule, e.g. "dyadic:1-20; farey:12".')(fn)
    fn = click.option('--depth', type=int, default=Config.MAX_DEPTH, show_default=True,
                      help='Dyadic depth when no schedule is given.')(fn)
    fn = click.option('--strategy', default='auto', show_default=True,
                      help='endpoint | dense:N | oracle | auto.')(fn)
    fn = click.option('--field', type=click.Choice(['q', 'r', 'Q', 'R']), default='q', show_default=True)(fn)
    return fn


def scan_options(fn):
    return click.option('--pairs', type=int, default=Config.DEFAULT_PAIRS, show_default=True,
                        help='Seeded random pairs beyond the fixed grid.')(fn)


def with_run_config(command: str):
    """Validate the raw click arguments into a RunConfig before the body runs."""
    def decorator(fn):
        @functools.wraps(fn)
        def wrapper(**kwargs):
            config = RunConfig(command=command, **{key: value for key, value in kwargs.items() if value is not None})
            return fn(config)
        return wrapper
    return decorator


def _builtin(name: str) -> FuncDef:
    f = lookup_builtin(name)
    if f is None:
        raise InvalidArgumentError(f'unknown builtin @{name}')
    return f


def resolve_function(text: str, name: str = 'f', domain: Optional[Interval] = None) -> FuncDef:
    """-f text to a FuncDef: a parsed expression or a registered builtin."""
    if text.startswith('@'):
        return _builtin(text[1:])
    kwargs = {'domain': domain} if domain is not None else {}
    return FuncDef(name=name, body=parse(text), source=text, **kwargs)


def resolve_primitive(text: str) -> FuncDef:
    """-F text; @name selects the builtin's antiderivative."""
    if text.startswith('@'):
        return _builtin(text[1:]).primitive()
    return FuncDef(name='F', body=parse(text), source=text)


def resolve_strategy(config: RunConfig, f: FuncDef) -> Optional[BoundStrategy]:
    """None means the integration driver picks from f's shape."""
    if config.strategy == 'auto':
        return None
    if config.strategy == 'oracle':
        return BoundStrategy.user_oracle(ScipyOracle(f))
    return BoundStrategy.parse(config.strategy)


def open_interval(config: RunConfig) -> Interval:
    lo, hi = config.bounds
    return Interval(Fraction(lo), Fraction(hi))


def emit(config: RunConfig, result, passed: bool, functions=(), csv_rows=None, csv_columns=None) -> int:
    """Write the report to stdout and return the exit code."""
    report = {
        'command': config.command,
        'config': config.header(),
        'functions': [f.describe() for f in functions],
        'passed': passed,
        'result': result,
        'version': Config.VERSION,
    }
    if config.out is OutputFormat.CSV and csv_rows is not None:
        sys.stdout.write(report_writer.rows_to_csv(csv_rows, csv_columns))
    elif config.out is OutputFormat.PLAIN:
        sys.stdout.write(report_writer.render_plain(report) + '\n')
    else:
        report_writer.write_json(report, sys.stdout)
    logger.info('%s finished: %s', config.command, 'passed' if passed else 'failed')
    return EXIT_OK if passed else EXIT_FAILED

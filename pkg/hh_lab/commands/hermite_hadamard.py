import click

from hh_lab.commands.common import (emit, function_option, interval_option, open_interval, output_options,
                                    primitive_option, resolve_function, resolve_primitive, scan_options,
                                    with_run_config)
from hh_lab.forms import RunConfig
from hh_lab.models.rational import parse_rational
from hh_lab.utils.hh_engine import hh_scan, reconstruct_primitive, sandwich
from hh_lab.utils.report_writer import SANDWICH_COLUMNS

RECONSTRUCT_GRID = 8


@click.command('hh-check')
@function_option
@primitive_option()
@interval_option
@scan_options
@output_options
@with_run_config('hh-check')
def hh_check_command(config: RunConfig):
    """Check f((x+y)/2) <= (F(y)-F(x))/(y-x) <= (f(x)+f(y))/2 over (A, B)."""
    f, F = resolve_function(config.function), resolve_primitive(config.primitive)
    report = hh_scan(f, F, open_interval(config), config.pairs, config.seed, config.tol)
    return emit(config, report, bool(report), functions=[f, F])


@click.command('sandwich')
@function_option
@primitive_option()
@interval_option
@click.option('--depth', type=int, default=12, show_default=True, help='Deepest dyadic level (2^(d-1) cells).')
@output_options
@with_run_config('sandwich')
def sandwich_command(config: RunConfig):
    """Midpoint sum, telescoped F(B)-F(A) and trapezoid sum along dyadic Q-partitions."""
    f, F = resolve_function(config.function), resolve_primitive(config.primitive)
    a, b = config.bounds
    report = sandwich(f, F, a, b, config.depth, config.tol)
    payload = {'report': report, 'broken_sides': report.broken_sides}
    return emit(config, payload, bool(report), functions=[f, F],
                csv_rows=report.rows, csv_columns=SANDWICH_COLUMNS)


@click.command('reconstruct')
@function_option
@interval_option
@click.option('--points', default=None, help='Abscissae, e.g. "1/4,1/2,1"; default: a grid over [A, B].')
@click.option('--schedule', default=None, help='Refinement schedule for each integral.')
@output_options
@with_run_config('reconstruct')
def reconstruct_command(config: RunConfig):
    """F(x) as the integral of f from A to x, so F(A) = 0."""
    f = resolve_function(config.function)
    a, b = config.bounds
    if config.points:
        xs = [parse_rational(point) for point in config.points]
    else:
        xs = [a + (b - a) * k / RECONSTRUCT_GRID for k in range(1, RECONSTRUCT_GRID + 1)]
    points = reconstruct_primitive(f, a, xs, config.tol, config.schedule)
    return emit(config, points, all(point.converged for point in points), functions=[f],
                csv_rows=points, csv_columns=('x', 'value', 'lower', 'upper', 'converged'))

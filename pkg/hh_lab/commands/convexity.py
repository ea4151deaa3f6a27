import click

from hh_lab.commands.common import (emit, function_option, interval_option, open_interval, output_options,
                                    primitive_option, resolve_function, resolve_primitive, scan_options,
                                    with_run_config)
from hh_lab.exceptions import NoSupportError
from hh_lab.forms import RunConfig
from hh_lab.models.rational import parse_rational
from hh_lab.utils import sampling
from hh_lab.utils.convexity import (find_violation, jensen_check, k_convex_check, second_difference_check,
                                    support_line)
from hh_lab.utils.partition_builder import dyadic

GRID_DEPTH = 6


@click.command('convexity')
@function_option
@interval_option
@scan_options
@click.option('--max-den', type=int, default=16, show_default=True, help='Largest weight denominator.')
@output_options
@with_run_config('convexity')
def convexity_command(config: RunConfig):
    """Jensen, K-convexity and second-difference checks of f on (A, B)."""
    f = resolve_function(config.function)
    domain = open_interval(config)
    window = sampling.scan_window(domain)
    reports = [
        jensen_check(f, domain, config.pairs, config.seed, config.tol),
        k_convex_check(f, domain, config.pairs, config.max_den, config.seed, config.tol),
        second_difference_check(f, dyadic(window.lo, window.hi, GRID_DEPTH), config.tol),
    ]
    return emit(config, reports, all(reports), functions=[f])


@click.command('violation')
@function_option
@primitive_option()
@interval_option
@scan_options
@output_options
@with_run_config('violation')
def violation_command(config: RunConfig):
    """Search (A, B) for a pair breaking the Hermite-Hadamard sandwich; exit 1 when one is found."""
    f, F = resolve_function(config.function), resolve_primitive(config.primitive)
    witness = find_violation(f, F, open_interval(config), config.pairs, config.seed, config.tol)
    return emit(config, {'witness': witness}, witness is None, functions=[f, F])


@click.command('support-line')
@function_option
@click.option('--at', 'at', required=True, help='Support point z (rational text).')
@output_options
@with_run_config('support-line')
def support_line_command(config: RunConfig):
    """Numeric support line of f at z."""
    f = resolve_function(config.function)
    try:
        line = support_line(f, parse_rational(config.at), tol=config.tol)
    except NoSupportError as exc:
        return emit(config, {'line': None, 'error': str(exc)}, False, functions=[f])
    return emit(config, {'line': line}, True, functions=[f])

import logging

import click

from hh_lab.commands.common import (emit, function_option, integration_options, interval_option, open_interval,
                                    output_options, resolve_function, resolve_strategy, with_run_config)
from hh_lab.exceptions import StrategyMisuseError
from hh_lab.forms import RunConfig
from hh_lab.models.bound_strategy import StrategyKind
from hh_lab.models.k_partition import KField
from hh_lab.models.shape import Shape
from hh_lab.utils.convexity import certify_shape
from hh_lab.utils.kriemann import default_strategy, integrate, sum_report
from hh_lab.utils.schedule_parser import resolve_schedule

logger = logging.getLogger(__name__)

BRACKET_COLUMNS = ('depth', 'lower', 'upper', 'midpoint', 'trapezoid')
SUM_COLUMNS = ('partition', 'cells', 'lower', 'upper', 'strategy', 'exact')


def _prepare(config: RunConfig):
    """Resolve f and its strategy; endpoint bounds need a certified shape."""
    f = resolve_function(config.function)
    strategy = resolve_strategy(config, f)
    wants_endpoint = strategy is None or strategy.kind is StrategyKind.ENDPOINT_CONVEX
    if wants_endpoint and f.shape is Shape.UNKNOWN:
        f = certify_shape(f, open_interval(config), seed=config.seed)
        logger.info('%s certified %s on %s', f.name, f.shape.value, config.interval)
    if strategy is not None and strategy.kind is StrategyKind.ENDPOINT_CONVEX and f.shape is Shape.UNKNOWN:
        raise StrategyMisuseError(f'endpoint bounds need a convex or concave function; {f.name} is neither on '
                                  f'[{config.interval[0]}, {config.interval[1]}]')
    return f, strategy or default_strategy(f)


@click.command('integrate')
@function_option
@interval_option
@integration_options
@output_options
@with_run_config('integrate')
def integrate_command(config: RunConfig):
    """Bracket the K-integral of f over [A, B]."""
    f, strategy = _prepare(config)
    a, b = config.bounds
    estimate = integrate(f, a, b, config.tol, config.effective_schedule(), strategy, config.exact, config.field)
    return emit(config, estimate, estimate.converged, functions=[f],
                csv_rows=estimate.trace, csv_columns=BRACKET_COLUMNS)


@click.command('sums')
@function_option
@interval_option
@integration_options
@output_options
@with_run_config('sums')
def sums_command(config: RunConfig):
    """Upper and lower K-sums of f along the schedule."""
    f, strategy = _prepare(config)
    a, b = config.bounds
    field = KField(config.field)
    reports = [sum_report(f, p, strategy, config.exact)
               for _, p in resolve_schedule(config.effective_schedule(), a, b, field)]
    ordered = all(report.lower <= report.upper for report in reports)
    return emit(config, reports, ordered, functions=[f], csv_rows=reports, csv_columns=SUM_COLUMNS)

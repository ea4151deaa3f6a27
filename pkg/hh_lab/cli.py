import logging
import sys
from typing import List, Optional

import click
from pydantic import ValidationError

from hh_lab.commands.common import EXIT_FAILED, EXIT_OK, EXIT_USAGE
from hh_lab.config import Config
from hh_lab.exceptions import HHLabError, InvalidArgumentError
from hh_lab.extensions import console, init_logging

logger = logging.getLogger(__name__)


def create_cli() -> click.Group:
    @click.group(context_settings={'help_option_names': ['-h', '--help']})
    @click.version_option(Config.VERSION, prog_name='hh-lab')
    @click.option('--log-level', default=None, help='Override HH_LAB_LOG_LEVEL for this run.')
    def cli(log_level):
        """K-Riemann integrals and the Hermite-Hadamard characterization of convexity."""
        init_logging(log_level.upper() if log_level else None)

    from hh_lab.commands.convexity import convexity_command, support_line_command, violation_command
    from hh_lab.commands.hermite_hadamard import hh_check_command, reconstruct_command, sandwich_command
    from hh_lab.commands.integration import integrate_command, sums_command
    for command in (integrate_command, sums_command, sandwich_command, hh_check_command, convexity_command,
                    violation_command, support_line_command, reconstruct_command):
        cli.add_command(command)
    return cli


def _usage_error(message: str) -> int:
    console.print(f'error: {message}', style='bold red', highlight=False, markup=False)
    return EXIT_USAGE


def run(argv: Optional[List[str]] = None) -> int:
    """Dispatch argv; 0 = passed/converged, 1 = violation or non-convergence, 2 = usage or parse error."""
    cli = create_cli()
    try:
        code = cli.main(args=list(argv if argv is not None else sys.argv[1:]), prog_name='hh-lab',
                        standalone_mode=False)
    except click.ClickException as exc:
        return _usage_error(exc.format_message())
    except ValidationError as exc:
        details = '; '.join(f"{'.'.join(str(part) for part in error['loc'])}: {error['msg']}"
                            for error in exc.errors())
        return _usage_error(details)
    except InvalidArgumentError as exc:
        return _usage_error(str(exc))
    except HHLabError as exc:
        logger.debug('run failed', exc_info=True)
        return _usage_error(f'{type(exc).__name__}: {exc}')
    except click.Abort:
        return EXIT_FAILED
    if code is None:
        return EXIT_OK
    return int(code)


def main():
    sys.exit(run())


if __name__ == '__main__':
    main()

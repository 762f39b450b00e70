"""
Flags and error handling shared by the management commands.

Exit codes: 0 pass, 1 verification failure, 2 usage error.
"""
from contextlib import contextmanager

from django.core.management.base import CommandError

from barred_arrangements.exceptions import BpaError
from barred_arrangements.params import Params

VERIFICATION_FAILED = 1
USAGE_ERROR = 2


def add_params_arguments(parser, lambda_default: int | None = 1):
    parser.add_argument(
        '--lambda',
        dest='lambda_',
        type=int,
        default=lambda_default,
        help='Number of bars, i.e. ordinary sections (default: %(default)s)'
    )
    parser.add_argument(
        '--beta',
        type=int,
        default=None,
        help='Compartments per ordinary block (default: 1)'
    )
    parser.add_argument(
        '--gamma',
        type=int,
        default=None,
        help='Compartments of the special section (default: 0)'
    )


def add_n_argument(parser, default: int = 10):
    parser.add_argument(
        '--n', '--nmax',
        dest='n_max',
        type=int,
        default=default,
        help='Largest index to compute (default: %(default)s)'
    )


def params_from(options, fallback: Params | None = None) -> Params:
    """Params from --lambda/--beta/--gamma, filling unset flags from `fallback`."""
    fallback = fallback or Params(1)
    lambda_ = fallback.lambda_ if options.get('lambda_') is None else options['lambda_']
    beta = fallback.beta if options.get('beta') is None else options['beta']
    gamma = fallback.gamma if options.get('gamma') is None else options['gamma']
    return Params(lambda_, beta, gamma)


def check_n(n_max: int):
    if n_max < 0:
        raise CommandError(f"--n must be non-negative, got {n_max}", returncode=USAGE_ERROR)


@contextmanager
def usage_errors():
    try:
        yield
    except BpaError as e:
        raise CommandError(str(e), returncode=USAGE_ERROR) from e

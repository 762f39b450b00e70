"""
Django management command running the identity suite (and optionally the
enumeration oracle), streaming one JSON report per line.
"""
from django.core.management.base import BaseCommand, CommandError

from barred_arrangements.identities import OracleGrid, SuiteGrid, run_oracle, run_suite
from barred_arrangements.serializers import IdentityReportSerializer, json_line

from ._options import USAGE_ERROR, VERIFICATION_FAILED, usage_errors


def oracle_box(text: str) -> tuple[int, int, int, int]:
    parts = text.split(',')
    if len(parts) != 4:
        raise ValueError(text)
    return tuple(int(p) for p in parts)


class Command(BaseCommand):
    help = 'Verify every counting identity exactly on a parameter grid'

    def add_arguments(self, parser):
        parser.add_argument('--nmax', '--n', dest='n_max', type=int, default=25,
                            help='Largest n for table identities (default: 25)')
        parser.add_argument('--lambda-max', type=int, default=3, help='Largest lambda (default: 3)')
        parser.add_argument('--beta-max', type=int, default=3, help='Largest beta (default: 3)')
        parser.add_argument('--gamma-max', type=int, default=3, help='Largest gamma (default: 3)')
        parser.add_argument('--alpha-max', type=int, default=2, help='Largest alpha for Bell checks (default: 2)')
        parser.add_argument('--series-nmax', type=int, default=15,
                            help='Largest n for identities with an infinite side (default: 15)')
        parser.add_argument('--restricted-nmax', type=int, default=5,
                            help='Largest n for the restricted enumeration count (default: 5)')
        parser.add_argument('--workers', type=int, default=None,
                            help='Suite threads and oracle processes (default: BPA_VERIFY_WORKERS)')
        parser.add_argument(
            '--oracle',
            action='store_true',
            help='Also cross-check every engine against exhaustive enumeration'
        )
        parser.add_argument(
            '--oracle-box',
            type=oracle_box,
            action='append',
            metavar='N,LAMBDA,BETA,GAMMA',
            help='Oracle box bounds; repeatable (default: 6,2,3,3 and 8,1,1,2)'
        )
        parser.add_argument('--budget', type=int, default=None,
                            help='Largest structure count the oracle may generate')
        parser.add_argument('--round-trip-cap', type=int, default=None,
                            help='Points with more structures round-trip a per-routing sample (default: 20000)')

    def grid(self, options) -> SuiteGrid:
        bounds = ['n_max', 'lambda_max', 'gamma_max', 'alpha_max', 'series_nmax', 'restricted_nmax',
                  'round_trip_cap']
        for name in bounds:
            if options[name] is not None and options[name] < 0:
                raise CommandError(f"--{name.replace('_', '-')} must be non-negative", returncode=USAGE_ERROR)
        if options['beta_max'] < 1:
            raise CommandError("--beta-max must be at least 1", returncode=USAGE_ERROR)
        extra = {} if options['workers'] is None else {'workers': options['workers']}
        return SuiteGrid(
            n_max=options['n_max'],
            lambda_max=options['lambda_max'],
            beta_max=options['beta_max'],
            gamma_max=options['gamma_max'],
            alpha_max=options['alpha_max'],
            series_n_max=options['series_nmax'],
            restricted_n_max=options['restricted_nmax'],
            **extra,
        )

    def handle(self, *args, **options):
        grid = self.grid(options)
        with usage_errors():
            reports = run_suite(grid)
            if options['oracle']:
                oracle = {}
                if options['oracle_box']:
                    oracle['boxes'] = tuple(options['oracle_box'])
                for name in ('budget', 'round_trip_cap', 'workers'):
                    if options[name] is not None:
                        oracle[name] = options[name]
                reports += run_oracle(OracleGrid(**oracle))

        for report in reports:
            self.stdout.write(json_line(IdentityReportSerializer(report).data))

        failed = [r for r in reports if not r.passed]
        if failed:
            for report in failed:
                self.stderr.write(self.style.ERROR(f'FAILED {report.describe()}: {report.lhs} != {report.rhs}'))
            raise CommandError(
                f"{len(failed)} of {len(reports)} checks failed, first: {failed[0].identity}",
                returncode=VERIFICATION_FAILED,
            )
        self.stderr.write(self.style.SUCCESS(f'All {len(reports)} checks passed'))

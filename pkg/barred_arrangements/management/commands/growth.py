"""
Django management command exporting the growth diagnostics of H_n as CSV.
"""
import csv

from django.core.management.base import BaseCommand, CommandError

from barred_arrangements.asymptotics import bound_check, ratio_table
from barred_arrangements.numeric import format_decimal
from barred_arrangements.serializers import GrowthDiagnosticSerializer
from barred_arrangements.utils import get_epsilon

from ._options import USAGE_ERROR, VERIFICATION_FAILED, add_params_arguments, check_n, params_from, usage_errors


class Command(BaseCommand):
    help = 'Tabulate H_(n+1) / ((n+1) H_n) against beta / log 2'

    def add_arguments(self, parser):
        add_params_arguments(parser)
        parser.add_argument('--nmax', '--n', dest='n_max', type=int, default=50,
                            help='Largest n in the ratio table (default: 50)')
        parser.add_argument('--epsilon', default='1/10', help='Slack added to beta / log 2 (default: 1/10)')
        parser.add_argument(
            '--check-bound',
            action='store_true',
            help='Check H_n <= n! (beta / log 2 + epsilon)^n eventually holds on 1..nmax'
        )

    def handle(self, *args, **options):
        check_n(options['n_max'])
        try:
            epsilon = get_epsilon(options['epsilon'])
        except ValueError as e:
            raise CommandError(str(e), returncode=USAGE_ERROR)

        with usage_errors():
            params = params_from(options)
            rows = ratio_table(params, options['n_max'])
            check = bound_check(params, epsilon, 1, max(options['n_max'], 1)) if options['check_bound'] else None

        writer = csv.writer(self.stdout, lineterminator='\n')
        writer.writerow(GrowthDiagnosticSerializer.CSV_COLUMNS)
        for row in rows:
            writer.writerow(GrowthDiagnosticSerializer(row).csv_row())

        if check is None:
            return
        summary = (f'q={format_decimal(check.q)} violations={len(check.violations)} '
                   f'last_violation={check.last_violation} decay_from={check.decay_from}')
        if not check.passed:
            raise CommandError(f"Growth bound not established for {params}: {summary}",
                               returncode=VERIFICATION_FAILED)
        self.stderr.write(self.style.SUCCESS(f'Growth bound holds eventually for {params}: {summary}'))

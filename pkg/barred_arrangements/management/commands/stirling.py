"""
Django management command printing one row of generalized Stirling numbers.
"""
import csv

from django.core.management.base import BaseCommand

from barred_arrangements.numeric import format_exact
from barred_arrangements.serializers import StirlingEntrySerializer, json_line
from barred_arrangements.stirling import GsnKey, stirling_row

from ._options import add_n_argument, check_n, usage_errors


class Command(BaseCommand):
    help = 'Print S(n, i, alpha, beta, gamma) for i = 0..n'

    def add_arguments(self, parser):
        add_n_argument(parser, default=5)
        parser.add_argument('--alpha', type=int, default=0, help='Falling-factorial step (default: 0)')
        parser.add_argument('--beta', type=int, default=1, help='Block scaling (default: 1)')
        parser.add_argument('--gamma', type=int, default=0, help='Shift (default: 0)')
        parser.add_argument(
            '--format',
            choices=['plain', 'csv', 'jsonl'],
            default='plain',
            help='Output format (default: plain)'
        )

    def handle(self, *args, **options):
        n = options['n_max']
        check_n(n)
        alpha, beta, gamma = options['alpha'], options['beta'], options['gamma']
        with usage_errors():
            GsnKey(n, 0, alpha, beta, gamma)
            row = stirling_row(n, alpha, beta, gamma)

        if options['format'] == 'csv':
            writer = csv.writer(self.stdout, lineterminator='\n')
            writer.writerow(['i', 'scaled', 'S'])
            writer.writerows((i, scaled, format_exact(value)) for i, scaled, value in row)
        elif options['format'] == 'jsonl':
            for i, scaled, value in row:
                data = StirlingEntrySerializer({'i': i, 'scaled': scaled, 'value': value}).data
                self.stdout.write(json_line({'n': n, 'alpha': alpha, 'beta': beta, 'gamma': gamma, **data}))
        else:
            self.stdout.write(' '.join(format_exact(value) for _, _, value in row))

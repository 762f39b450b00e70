"""
Django management command printing H_0..H_N(lambda, beta, gamma).
"""
import csv

from django.core.management.base import BaseCommand

from barred_arrangements.bfile import BFile, write_bfile
from barred_arrangements.counting import METHODS, compute
from barred_arrangements.serializers import HTableSerializer, json_line

from ._options import add_n_argument, add_params_arguments, check_n, params_from, usage_errors


class Command(BaseCommand):
    help = 'Compute barred preferential arrangement numbers H_n(lambda, beta, gamma)'

    def add_arguments(self, parser):
        add_params_arguments(parser)
        add_n_argument(parser)
        parser.add_argument(
            '--method',
            choices=list(METHODS),
            default='egf',
            help='Engine used to build the table (default: egf)'
        )
        parser.add_argument(
            '--format',
            choices=['plain', 'csv', 'bfile', 'jsonl'],
            default='plain',
            help='Output format (default: plain)'
        )

    def handle(self, *args, **options):
        check_n(options['n_max'])
        with usage_errors():
            params = params_from(options)
            table = compute(params, options['n_max'], options['method'])

        fmt = options['format']
        if fmt == 'plain':
            self.stdout.write(' '.join(str(v) for v in table))
        elif fmt == 'csv':
            writer = csv.writer(self.stdout, lineterminator='\n')
            writer.writerow(['n', 'H_n'])
            writer.writerows(enumerate(table))
        elif fmt == 'bfile':
            header = f"{params} by {options['method']}"
            self.stdout.write(write_bfile(BFile.from_values(table), header), ending='')
        else:
            self.stdout.write(json_line(HTableSerializer(table).data))

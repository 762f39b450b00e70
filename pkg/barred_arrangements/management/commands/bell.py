"""
Django management command printing B_0..B_N(alpha, beta, gamma).
"""
from django.core.management.base import BaseCommand

from barred_arrangements.stirling import GsnKey, bell, bell_dobinski, bell_egf

from ._options import add_n_argument, check_n, usage_errors


class Command(BaseCommand):
    help = 'Compute generalized Bell numbers B_n(alpha, beta, gamma)'

    def add_arguments(self, parser):
        add_n_argument(parser)
        parser.add_argument('--alpha', type=int, default=0, help='Falling-factorial step (default: 0)')
        parser.add_argument('--beta', type=int, default=1, help='Block scaling (default: 1)')
        parser.add_argument('--gamma', type=int, default=0, help='Shift (default: 0)')
        parser.add_argument(
            '--method',
            choices=['sum', 'dobinski', 'egf'],
            default='sum',
            help='Stirling row sum, certified Dobinski series or generating function (default: sum)'
        )

    def handle(self, *args, **options):
        n_max = options['n_max']
        check_n(n_max)
        alpha, beta, gamma = options['alpha'], options['beta'], options['gamma']
        with usage_errors():
            GsnKey(n_max, 0, alpha, beta, gamma)
            if options['method'] == 'egf':
                values = bell_egf(alpha, beta, gamma, n_max)
            else:
                route = bell if options['method'] == 'sum' else bell_dobinski
                values = [route(n, alpha, beta, gamma) for n in range(n_max + 1)]
        self.stdout.write(' '.join(str(v) for v in values))

"""
Django management command listing or counting colored barred preferential
arrangements by exhaustive generation.
"""
from django.core.management.base import BaseCommand, CommandError

from barred_arrangements.counting import h_egf
from barred_arrangements.enumeration import (
    EnumerationBudget,
    count_restricted_thm28,
    count_structures,
    enumerate_structures,
)
from barred_arrangements.structures import format_structure

from ._options import VERIFICATION_FAILED, add_params_arguments, check_n, params_from, usage_errors


class Command(BaseCommand):
    help = 'Enumerate the arrangements counted by H_n(lambda, beta, gamma)'

    def add_arguments(self, parser):
        add_params_arguments(parser)
        parser.add_argument('--n', type=int, default=3, dest='n', help='Number of elements (default: 3)')
        parser.add_argument(
            '--count-only',
            action='store_true',
            help='Print the number of generated structures instead of listing them'
        )
        parser.add_argument(
            '--restricted',
            action='store_true',
            help='Count arrangements with a band-surjective special section and lambda - 1 bars'
        )
        parser.add_argument(
            '--budget',
            type=int,
            default=None,
            help='Refuse to generate more than this many structures (default: BPA_ENUMERATION_BUDGET)'
        )

    def handle(self, *args, **options):
        n = options['n']
        check_n(n)
        budget = EnumerationBudget() if options['budget'] is None else EnumerationBudget(options['budget'])

        with usage_errors():
            params = params_from(options)
            if options['restricted']:
                count = count_restricted_thm28(n, params.lambda_, params.beta, params.gamma, budget)
                self.stdout.write(str(count))
                return
            if options['count_only']:
                count = count_structures(n, params, budget)
                self.stdout.write(str(count))
                expected = h_egf(params, n)[n]
                if count != expected:
                    raise CommandError(f"Generated {count} structures, H_{n} = {expected}",
                                       returncode=VERIFICATION_FAILED)
                return

            structures = enumerate_structures(n, params, budget)
            total = 0
            for structure in structures:
                self.stdout.write(format_structure(structure))
                total += 1
        self.stderr.write(self.style.SUCCESS(f'{total} structures for {params} on {n} elements'))

"""
Django management command comparing computed H prefixes against OEIS b-files,
or writing a computed prefix as a b-file.
"""
from django.core.management.base import BaseCommand, CommandError

from barred_arrangements.bfile import (
    FIXTURES,
    BFile,
    compare_bfile,
    fetch_bfile,
    load_fixture,
    normalize_sequence_id,
    read_bfile,
    write_bfile,
)
from barred_arrangements.counting import METHODS, compute
from barred_arrangements.serializers import BFileComparisonSerializer, json_line

from ._options import USAGE_ERROR, VERIFICATION_FAILED, add_params_arguments, params_from, usage_errors


class Command(BaseCommand):
    help = 'Cross-check H_n(lambda, beta, gamma) against an OEIS b-file'

    def add_arguments(self, parser):
        add_params_arguments(parser, lambda_default=None)
        parser.add_argument(
            '--sequence',
            help=f"Bundled sequence id; parameters default to its point ({', '.join(FIXTURES)})"
        )
        parser.add_argument('--check', metavar='PATH', help='Compare against a b-file on disk')
        parser.add_argument(
            '--fetch',
            metavar='AXXXXXX',
            help='Download the b-file from BPA_OEIS_BASE_URL and compare against it'
        )
        parser.add_argument(
            '--write',
            action='store_true',
            help='Print the computed prefix as a b-file instead of comparing'
        )
        parser.add_argument('--n', '--nmax', dest='n_max', type=int, default=22,
                            help='Prefix length for --write; comparisons stop here too (default: 22)')
        parser.add_argument('--method', choices=list(METHODS), default='egf')

    def handle(self, *args, **options):
        sources = [name for name in ('sequence', 'check', 'fetch') if options[name]]
        if len(sources) > 1:
            raise CommandError("Use only one of --sequence, --check and --fetch", returncode=USAGE_ERROR)
        if options['n_max'] < 0:
            raise CommandError("--n must be non-negative", returncode=USAGE_ERROR)

        with usage_errors():
            sequence_id = options['sequence'] or options['fetch']
            fallback = None
            if sequence_id:
                sequence_id = normalize_sequence_id(sequence_id)
                fallback = FIXTURES.get(sequence_id)
            if fallback is None and options['lambda_'] is None:
                raise CommandError("Give --lambda or a bundled --sequence", returncode=USAGE_ERROR)
            params = params_from(options, fallback)

            if options['write']:
                table = compute(params, options['n_max'], options['method'])
                self.stdout.write(write_bfile(BFile.from_values(table), str(params)), ending='')
                return

            if options['check']:
                bfile = read_bfile(options['check'])
            elif options['fetch']:
                bfile = fetch_bfile(sequence_id)
            elif sequence_id:
                bfile = load_fixture(sequence_id)
            else:
                raise CommandError("Nothing to compare: give --sequence, --check, --fetch or --write",
                                   returncode=USAGE_ERROR)

            n_max = min(max(n for n, _ in bfile.entries), options['n_max']) if len(bfile) else 0
            table = compute(params, n_max, options['method'])

        comparison = compare_bfile(bfile, table)
        self.stdout.write(json_line({**params.as_dict(), **BFileComparisonSerializer(comparison).data}))
        if not comparison.matched:
            if comparison.first_mismatch:
                n, expected, computed = comparison.first_mismatch
                message = f"{bfile.source} differs at n={n}: b-file {expected}, computed {computed}"
            else:
                message = f"{bfile.source} shares no indices with the computed prefix"
            raise CommandError(message, returncode=VERIFICATION_FAILED)
        self.stderr.write(self.style.SUCCESS(f'{bfile.source}: {comparison.compared} terms match {params}'))

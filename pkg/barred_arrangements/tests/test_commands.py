import json
import tempfile
from io import StringIO
from pathlib import Path
from unittest import mock

from django.core.management import call_command
from django.core.management.base import CommandError
from django.test import SimpleTestCase, override_settings

from barred_arrangements import counting
from barred_arrangements.counting import Method, h_conv
from barred_arrangements.params import HTable

TINY_GRID = ['--nmax', '3', '--lambda-max', '1', '--beta-max', '1', '--gamma-max', '1',
             '--alpha-max', '0', '--workers', '1']


def run(*args):
    out, err = StringIO(), StringIO()
    call_command(*args, stdout=out, stderr=err)
    return out.getvalue(), err.getvalue()


class ComputeCommandTests(SimpleTestCase):
    def test_fubini(self):
        out, _ = run('compute', '--lambda', '1', '--beta', '1', '--gamma', '0', '--n', '5')
        self.assertEqual(out.strip(), "1 1 3 13 75 541")

    def test_no_bars(self):
        out, _ = run('compute', '--lambda', '0', '--gamma', '2', '--n', '3')
        self.assertEqual(out.strip(), "1 2 4 8")

    def test_power_set_chains(self):
        out, _ = run('compute', '--lambda', '1', '--beta', '1', '--gamma', '2', '--n', '4')
        self.assertEqual(out.strip(), "1 3 11 51 299")

    def test_methods_give_identical_output(self):
        outputs = {run('compute', '--lambda', '2', '--beta', '2', '--gamma', '2', '--n', '12',
                       '--method', method)[0]
                   for method in ['egf', 'conv', 'insert', 'shift', 'marked', 'dobinski-backed']}
        self.assertEqual(len(outputs), 1)

    def test_csv(self):
        out, _ = run('compute', '--n', '2', '--format', 'csv')
        self.assertEqual(out, "n,H_n\n0,1\n1,1\n2,3\n")

    def test_bfile_format(self):
        out, _ = run('compute', '--n', '2', '--beta', '2', '--format', 'bfile')
        self.assertEqual(out.splitlines()[1:], ["0 1", "1 2", "2 12"])

    def test_jsonl(self):
        out, _ = run('compute', '--n', '3', '--gamma', '2', '--format', 'jsonl')
        data = json.loads(out)
        self.assertEqual(data, {'lambda': 1, 'beta': 1, 'gamma': 2, 'method': 'egf', 'values': [1, 3, 11, 51]})

    def test_invalid_params_exit_2(self):
        with self.assertRaises(CommandError) as ctx:
            run('compute', '--lambda', '0', '--gamma', '0')
        self.assertEqual(ctx.exception.returncode, 2)

    def test_inapplicable_method_exit_2(self):
        with self.assertRaises(CommandError) as ctx:
            run('compute', '--lambda', '2', '--method', 'rec3')
        self.assertEqual(ctx.exception.returncode, 2)

    def test_negative_n_exit_2(self):
        with self.assertRaises(CommandError) as ctx:
            run('compute', '--n', '-1')
        self.assertEqual(ctx.exception.returncode, 2)


class StirlingAndBellCommandTests(SimpleTestCase):
    def test_stirling_row(self):
        out, _ = run('stirling', '--n', '4')
        self.assertEqual(out.strip(), "0 1 7 6 1")

    def test_stirling_rational_entries(self):
        out, _ = run('stirling', '--n', '2', '--beta', '2', '--gamma', '1', '--format', 'csv')
        self.assertEqual(out.splitlines(), ["i,scaled,S", "0,1,1", "1,8,4", "2,8,1"])

    def test_stirling_jsonl(self):
        out, _ = run('stirling', '--n', '1', '--format', 'jsonl')
        rows = [json.loads(line) for line in out.splitlines()]
        self.assertEqual(rows[1], {'n': 1, 'alpha': 0, 'beta': 1, 'gamma': 0, 'i': 1, 'scaled': 1, 'value': 1})

    def test_bell_routes(self):
        expected = "1 2 12 104 1200"
        for method in ['sum', 'dobinski', 'egf']:
            out, _ = run('bell', '--n', '4', '--beta', '2', '--method', method)
            self.assertEqual(out.strip(), expected, msg=method)

    def test_bell_with_alpha(self):
        outputs = {run('bell', '--n', '8', '--alpha', '1', '--beta', '2', '--gamma', '1', '--method', m)[0]
                   for m in ['sum', 'dobinski', 'egf']}
        self.assertEqual(len(outputs), 1)

    def test_bell_rejects_zero_beta(self):
        with self.assertRaises(CommandError) as ctx:
            run('bell', '--beta', '0')
        self.assertEqual(ctx.exception.returncode, 2)


class EnumerateCommandTests(SimpleTestCase):
    def test_listing(self):
        out, err = run('enumerate', '--n', '2')
        self.assertEqual(out.splitlines(), ["[] | {1:1} {2:1}", "[] | {2:1} {1:1}", "[] | {1:1,2:1}"])
        self.assertIn("3 structures", err)

    def test_count_only(self):
        out, _ = run('enumerate', '--n', '2', '--lambda', '2', '--count-only')
        self.assertEqual(out.strip(), "8")

    def test_restricted(self):
        out, _ = run('enumerate', '--n', '3', '--lambda', '2', '--beta', '2', '--gamma', '1', '--restricted')
        self.assertEqual(out.strip(), "461")

    def test_budget_exit_2(self):
        with self.assertRaises(CommandError) as ctx:
            run('enumerate', '--n', '6', '--budget', '100')
        self.assertEqual(ctx.exception.returncode, 2)


class VerifyCommandTests(SimpleTestCase):
    def test_tiny_grid_passes(self):
        out, err = run('verify', *TINY_GRID)
        reports = [json.loads(line) for line in out.splitlines()]
        self.assertTrue(reports)
        self.assertTrue(all(r['pass'] for r in reports))
        self.assertIn("checks passed", err)

    def test_report_fields(self):
        out, _ = run('verify', *TINY_GRID)
        report = next(json.loads(line) for line in out.splitlines() if '"power-set-chains"' in line)
        self.assertEqual(set(report), {'identity', 'n', 'lambda', 'beta', 'gamma', 'lhs', 'rhs', 'pass'})

    def test_nmax_zero(self):
        out, _ = run('verify', '--nmax', '0', '--workers', '1')
        reports = [json.loads(line) for line in out.splitlines()]
        self.assertTrue(all(r['pass'] and r['n'] == 0 for r in reports))

    def test_injected_fault_exit_1(self):
        def faulty(params, n_max):
            values = list(h_conv(params, n_max))
            values[-1] += 1
            return HTable(params, values, 'conv')

        with mock.patch.dict(counting.METHODS, {'conv': Method('conv', faulty, lambda p: True)}):
            with self.assertRaises(CommandError) as ctx:
                run('verify', *TINY_GRID)
        self.assertEqual(ctx.exception.returncode, 1)
        self.assertIn('convolution', str(ctx.exception))

    def test_oracle(self):
        out, _ = run('verify', *TINY_GRID, '--oracle', '--oracle-box', '3,1,2,1')
        identities = {json.loads(line)['identity'] for line in out.splitlines()}
        self.assertIn('round-trip', identities)
        self.assertIn('enumeration-egf', identities)

    def test_oracle_round_trip_cap(self):
        out, _ = run('verify', *TINY_GRID, '--oracle', '--oracle-box', '4,1,2,1', '--round-trip-cap', '10')
        reports = [json.loads(line) for line in out.splitlines()]
        sampled = next(r for r in reports if r['identity'] == 'round-trip'
                       and (r['n'], r['lambda'], r['beta'], r['gamma']) == (4, 1, 2, 1))
        self.assertEqual(sampled['rhs'], 16)
        self.assertTrue(all(r['pass'] for r in reports))

    def test_bad_grid_exit_2(self):
        with self.assertRaises(CommandError) as ctx:
            run('verify', '--beta-max', '0')
        self.assertEqual(ctx.exception.returncode, 2)
        with self.assertRaises(CommandError) as ctx:
            run('verify', '--round-trip-cap', '-1')
        self.assertEqual(ctx.exception.returncode, 2)


class BFileCommandTests(SimpleTestCase):
    def test_bundled_fixtures(self):
        for sequence_id in ['A216794', 'A000670', 'A007047']:
            out, _ = run('bfile', '--sequence', sequence_id)
            result = json.loads(out)
            self.assertTrue(result['matched'], msg=sequence_id)
            self.assertEqual(result['compared'], 23)

    def test_explicit_params_override_fixture(self):
        with self.assertRaises(CommandError) as ctx:
            run('bfile', '--sequence', 'A000670', '--beta', '2')
        self.assertEqual(ctx.exception.returncode, 1)
        self.assertIn('n=1', str(ctx.exception))

    def test_check_file(self):
        with tempfile.TemporaryDirectory() as tmp:
            path = Path(tmp) / 'b.txt'
            path.write_text("# mine\n0 1\n1 3\n2 11\n3 50\n")
            with self.assertRaises(CommandError) as ctx:
                run('bfile', '--lambda', '1', '--gamma', '2', '--check', str(path))
        self.assertEqual(ctx.exception.returncode, 1)
        self.assertIn('n=3', str(ctx.exception))

    def test_write_reparses(self):
        out, _ = run('bfile', '--lambda', '1', '--beta', '2', '--write', '--n', '4')
        self.assertEqual([line for line in out.splitlines() if not line.startswith('#')],
                         ["0 1", "1 2", "2 12", "3 104", "4 1200"])

    @override_settings(BPA_OEIS_BASE_URL='')
    def test_fetch_disabled_exit_2(self):
        with self.assertRaises(CommandError) as ctx:
            run('bfile', '--fetch', 'A000670')
        self.assertEqual(ctx.exception.returncode, 2)

    def test_missing_params_exit_2(self):
        with self.assertRaises(CommandError) as ctx:
            run('bfile', '--check', 'whatever.txt')
        self.assertEqual(ctx.exception.returncode, 2)


class GrowthCommandTests(SimpleTestCase):
    def test_csv_columns(self):
        out, _ = run('growth', '--nmax', '3')
        lines = out.splitlines()
        self.assertEqual(lines[0], "n,H_n,ratio_num,ratio_den,normalized_lo,normalized_hi")
        self.assertEqual(lines[1].split(',')[:4], ['0', '1', '1', '1'])
        self.assertEqual(lines[3].split(',')[:4], ['2', '3', '13', '9'])
        self.assertEqual(len(lines), 5)

    def test_check_bound(self):
        _, err = run('growth', '--nmax', '100', '--beta', '2', '--check-bound')
        self.assertIn('holds eventually', err)

    def test_bad_epsilon_exit_2(self):
        with self.assertRaises(CommandError) as ctx:
            run('growth', '--epsilon', '0')
        self.assertEqual(ctx.exception.returncode, 2)

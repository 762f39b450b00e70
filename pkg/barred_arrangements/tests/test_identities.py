import itertools
from dataclasses import replace
from fractions import Fraction
from unittest import mock, skipUnless

from django.test import SimpleTestCase

from barred_arrangements import counting
from barred_arrangements.counting import Method, h_conv
from barred_arrangements.identities import (
    IdentityReport,
    OracleGrid,
    SuiteGrid,
    check_corollary1,
    check_gould_mays,
    check_nelsen,
    check_scaling,
    check_theorem28,
    check_theorem30,
    engine_reports,
    nested_series,
    oracle_reports,
    run_oracle,
    run_suite,
)
from barred_arrangements.params import HTable, Params
from barred_arrangements.serializers import IdentityReportSerializer
from barred_arrangements.tests import THOROUGH

SMALL_GRID = SuiteGrid(n_max=6, lambda_max=2, beta_max=2, gamma_max=2, alpha_max=1,
                       series_n_max=5, restricted_n_max=3, workers=2)


def off_by_one_conv(params, n_max):
    table = h_conv(params, n_max)
    values = list(table)
    values[-1] += 1
    return HTable(params, values, 'conv')


class SingleIdentityTests(SimpleTestCase):
    def test_nelsen(self):
        report = check_nelsen(0, 2)
        self.assertEqual((report.lhs, report.rhs), (3, 3))
        self.assertTrue(report.passed)
        self.assertEqual((check_nelsen(0, 0).lhs, check_nelsen(0, 0).rhs), (1, 1))
        self.assertEqual(check_nelsen(2, 2).rhs, 11)

    def test_nelsen_rational_gamma(self):
        for gamma in [Fraction(1, 2), Fraction(7, 3)]:
            for n in range(8):
                self.assertTrue(check_nelsen(gamma, n).passed, msg=f"gamma={gamma} n={n}")

    def test_nelsen_is_the_one_bar_nested_series(self):
        for gamma, n in itertools.product(range(6), range(16)):
            nelsen = check_nelsen(gamma, n)
            nested = check_theorem30(1, 1, gamma, n)
            expected = counting.h_egf(Params(1, 1, gamma), n)[n]
            self.assertEqual(nelsen.lhs, nested.lhs, msg=f"gamma={gamma} n={n}")
            self.assertEqual((nelsen.lhs, nelsen.rhs, nested.rhs), (expected,) * 3, msg=f"gamma={gamma} n={n}")

    def test_nested_series(self):
        self.assertEqual(check_theorem30(1, 1, 0, 2).rhs, 3)
        self.assertEqual(check_theorem30(2, 1, 0, 2).rhs, 8)
        self.assertEqual(check_theorem30(1, 2, 0, 1).rhs, 2)
        for lam in range(1, 4):
            self.assertEqual(nested_series(lam, 2, 1, 6), counting.h_egf(Params(lam, 2, 1), 6)[6])

    def test_section_expansion(self):
        report = check_corollary1(2, 3, 1, 7)
        self.assertTrue(report.passed)
        self.assertEqual(report.rhs, counting.h_egf(Params(2, 3, 1), 7)[7])

    def test_restricted_count(self):
        self.assertTrue(check_theorem28(3, 2, 2, 1).passed)

    def test_power_set_chains(self):
        report = check_gould_mays(3)
        self.assertEqual((report.lhs, report.rhs), (51, 51))

    def test_scaling(self):
        report = check_scaling(2, 3, 1, 5)
        self.assertTrue(report.passed)
        self.assertEqual(report.aux, (('c', 1),))
        self.assertEqual(report.gamma, 3)

    def test_report(self):
        report = IdentityReport('demo', 4, 1, 2, 3, 10, 11)
        self.assertFalse(report.passed)
        self.assertEqual(report.describe(), "demo at (n=4, lambda=1, beta=2, gamma=3)")


class SuiteTests(SimpleTestCase):
    def test_small_grid_passes(self):
        reports = run_suite(SMALL_GRID)
        failed = [r.describe() for r in reports if not r.passed]
        self.assertEqual(failed, [])
        names = {r.identity for r in reports}
        for expected in ['convolution', 'one-bar-recurrence', 'block-split-recurrence', 'marked-bar-recurrence',
                         'empty-special-recurrence', 'gamma-ladder', 'insertion-recurrence', 'dobinski',
                         'merge-recurrence', 'gamma-shift', 'gamma-shift-at-zero', 'section-expansion',
                         'nested-series', 'alternating-bell', 'nelsen', 'restricted-count',
                         'power-set-chains', 'scaling', 'bell-dobinski', 'bell-egf']:
            self.assertIn(expected, names)

    def test_order_is_deterministic(self):
        first = run_suite(SMALL_GRID)
        second = run_suite(replace(SMALL_GRID, workers=1))
        self.assertEqual(first, second)

    def test_limited_engine_stops_at_its_limit(self):
        reports = engine_reports(Params(1, 2, 1), counting.MULTINOMIAL_MAX_N + 2)
        multinomial = [r for r in reports if r.identity == 'multinomial-expansion']
        self.assertEqual([r.n for r in multinomial], list(range(counting.MULTINOMIAL_MAX_N + 1)))
        self.assertTrue(all(r.passed for r in reports))

    def test_degenerate_grid(self):
        reports = run_suite(SuiteGrid(n_max=0, lambda_max=1, beta_max=1, gamma_max=1, alpha_max=0, workers=1))
        self.assertTrue(reports)
        self.assertTrue(all(r.passed for r in reports))
        self.assertTrue(all(r.n == 0 for r in reports))

    def test_fault_is_reported_not_raised(self):
        with mock.patch.dict(counting.METHODS, {'conv': Method('conv', off_by_one_conv, lambda p: True)}):
            reports = run_suite(SuiteGrid(n_max=3, lambda_max=1, beta_max=1, gamma_max=1, alpha_max=0, workers=1))
        failed = {r.identity for r in reports if not r.passed}
        self.assertEqual(failed, {'convolution'})


class OracleTests(SimpleTestCase):
    def test_small_oracle(self):
        reports = run_oracle(OracleGrid(boxes=((4, 2, 2, 2), (5, 1, 1, 2)), workers=1))
        self.assertEqual([r.describe() for r in reports if not r.passed], [])
        names = {r.identity for r in reports}
        self.assertIn('round-trip', names)
        self.assertIn('distinct-structures', names)
        self.assertIn('enumeration-egf', names)
        self.assertIn('enumeration-marked-bar-recurrence', names)

    def test_worker_processes_match_inline_run(self):
        grid = OracleGrid(boxes=((3, 2, 2, 1),), workers=1)
        self.assertEqual(run_oracle(replace(grid, workers=2)), run_oracle(grid))

    def test_round_trip_sample_above_cap(self):
        grid = OracleGrid(round_trip_cap=100, workers=1)
        reports = {r.identity: r for r in oracle_reports(5, Params(2, 2, 2), grid)}
        # 3^5 routings, one structure each
        self.assertEqual(reports['round-trip'].rhs, 243)
        self.assertEqual(reports['distinct-structures'].lhs, 243)
        self.assertEqual(reports['enumeration-egf'].lhs, 149856)
        self.assertTrue(all(r.passed for r in reports.values()))

    @skipUnless(THOROUGH, "default oracle boxes")
    def test_default_oracle(self):
        reports = run_oracle()
        self.assertEqual([r.describe() for r in reports if not r.passed], [])

    def test_points_skip_duplicates(self):
        points = OracleGrid(boxes=((1, 0, 2, 1),)).points()
        self.assertEqual(points, [(0, Params(0, 1, 1)), (1, Params(0, 1, 1))])


class ReportSerializationTests(SimpleTestCase):
    def test_wire_shape(self):
        data = IdentityReportSerializer(check_nelsen(Fraction(1, 2), 2)).data
        self.assertEqual(data['gamma'], "1/2")
        self.assertEqual(data['lhs'], data['rhs'])
        self.assertIs(data['pass'], True)
        self.assertEqual(IdentityReportSerializer(check_scaling(1, 2, 1, 3)).data['c'], 1)

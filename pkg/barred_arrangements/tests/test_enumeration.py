import itertools
import pickle

from django.test import SimpleTestCase

from barred_arrangements.counting import h_egf
from barred_arrangements.enumeration import (
    EnumerationBudget,
    count_restricted_thm28,
    count_structures,
    enumerate_structures,
    ordered_set_partitions,
    sample_structures,
)
from barred_arrangements.exceptions import BudgetExceededError, MethodNotApplicableError
from barred_arrangements.identities import OracleGrid, section_expansion_sum
from barred_arrangements.params import Params
from barred_arrangements.structures import BpaStructure, format_structure, parse_structure


def routing(structure):
    """Location of every element: 0 for the special section, j for section j."""
    where = {e: 0 for e, _ in structure.special}
    for j, section in enumerate(structure.sections, 1):
        where.update({e: j for block in section for e, _ in block})
    return tuple(where[e] for e in range(1, structure.n + 1))


class EnumerateTests(SimpleTestCase):
    def test_empty_set(self):
        for params in [Params(1), Params(2, 3, 1), Params(0, 1, 2)]:
            structures = list(enumerate_structures(0, params))
            self.assertEqual(len(structures), 1)
            self.assertEqual(structures[0].block_count, 0)

    def test_two_bars(self):
        self.assertEqual(len(list(enumerate_structures(2, Params(2, 1, 0)))), 8)

    def test_colored_blocks(self):
        self.assertEqual(len(list(enumerate_structures(2, Params(1, 2, 0)))), 12)

    def test_listing_order(self):
        texts = [format_structure(s) for s in enumerate_structures(2, Params(1))]
        self.assertEqual(texts, ["[] | {1:1} {2:1}", "[] | {2:1} {1:1}", "[] | {1:1,2:1}"])

    def test_distinct_and_parseable(self):
        params = Params(2, 2, 1)
        texts = []
        for structure in enumerate_structures(3, params):
            text = format_structure(structure)
            self.assertEqual(parse_structure(text, params, 3), structure)
            texts.append(text)
        self.assertEqual(len(texts), len(set(texts)))
        self.assertEqual(len(texts), h_egf(params, 3)[3])

    def test_ordered_set_partitions(self):
        fubini = [1, 1, 3, 13, 75, 541]
        for n in range(6):
            self.assertEqual(sum(1 for _ in ordered_set_partitions(tuple(range(n)))), fubini[n])


class CountTests(SimpleTestCase):
    def test_values(self):
        self.assertEqual(count_structures(3, Params(1, 1, 0)), 13)
        self.assertEqual(count_structures(2, Params(1, 1, 2)), 11)
        self.assertEqual(count_structures(1, Params(0, 1, 3)), 3)

    def test_matches_generating_function(self):
        for n, lam, beta, gamma in itertools.product(range(5), range(3), range(1, 3), range(3)):
            if not (lam or gamma) or (lam == 0 and beta > 1):
                continue
            params = Params(lam, beta, gamma)
            self.assertEqual(count_structures(n, params), h_egf(params, n)[n], msg=f"n={n} {params}")

    def test_matches_generating_function_on_oracle_boxes(self):
        for n, params in OracleGrid().points():
            self.assertEqual(count_structures(n, params), h_egf(params, n)[n], msg=f"n={n} {params}")

    def test_routing_count_matches_generated_structures(self):
        for n, lam, beta, gamma in itertools.product(range(5), range(3), range(1, 3), range(3)):
            if not (lam or gamma) or (lam == 0 and beta > 1):
                continue
            params = Params(lam, beta, gamma)
            self.assertEqual(count_structures(n, params), sum(1 for _ in enumerate_structures(n, params)),
                             msg=f"n={n} {params}")

    def test_budget(self):
        with self.assertRaises(BudgetExceededError) as ctx:
            count_structures(6, Params(2, 3, 3), EnumerationBudget(1000))
        self.assertEqual(ctx.exception.max_count, 1000)
        self.assertGreater(ctx.exception.predicted, 1000)

    def test_budget_error_pickles(self):
        error = pickle.loads(pickle.dumps(BudgetExceededError(12, 10)))
        self.assertEqual((error.predicted, error.max_count), (12, 10))
        self.assertIn("12 structures predicted", str(error))

    def test_budget_checked_before_first_structure(self):
        stream = enumerate_structures(5, Params(1), EnumerationBudget(10))
        with self.assertRaises(BudgetExceededError):
            next(stream)

    def test_admit_records_prediction(self):
        self.assertEqual(EnumerationBudget(100).admit(75).predicted, 75)


class SampleTests(SimpleTestCase):
    def test_small_points_are_exhaustive(self):
        params = Params(2, 2, 1)
        self.assertEqual(list(sample_structures(3, params, 1000)), list(enumerate_structures(3, params)))

    def test_large_points_visit_every_routing(self):
        params = Params(2, 2, 1)
        sample = list(sample_structures(3, params, 54))
        # two per routing, except the all-special routing which has only one
        self.assertEqual(len(sample), 53)
        self.assertEqual(len({routing(s) for s in sample}), 27)
        self.assertEqual(len({format_structure(s) for s in sample}), 53)

    def test_sampled_structures_are_canonical(self):
        for structure in sample_structures(4, Params(1, 2, 2), 50):
            rebuilt = BpaStructure(structure.n, structure.params, structure.special, structure.sections)
            self.assertEqual(rebuilt, structure)
            self.assertEqual(parse_structure(format_structure(structure), structure.params, 4), structure)

    def test_budget(self):
        with self.assertRaises(BudgetExceededError):
            next(sample_structures(6, Params(2, 3, 3), 10, EnumerationBudget(1000)))


class RestrictedCountTests(SimpleTestCase):
    def test_values(self):
        self.assertEqual(count_restricted_thm28(2, 1, 1, 0), 3)
        self.assertEqual(count_restricted_thm28(1, 1, 1, 1), 2)
        self.assertEqual(count_restricted_thm28(0, 1, 2, 2), 1)

    def test_matches_double_sum(self):
        for n, lam, beta, gamma in itertools.product(range(6), (1, 2), range(1, 3), range(3)):
            expected = h_egf(Params(lam, beta, gamma), n)[n]
            self.assertEqual(section_expansion_sum(lam, beta, gamma, n), expected)
            self.assertEqual(count_restricted_thm28(n, lam, beta, gamma), expected,
                             msg=f"n={n} lambda={lam} beta={beta} gamma={gamma}")

    def test_needs_a_bar(self):
        with self.assertRaises(MethodNotApplicableError):
            count_restricted_thm28(2, 0, 1, 1)

    def test_budget(self):
        with self.assertRaises(BudgetExceededError):
            count_restricted_thm28(4, 2, 2, 2, EnumerationBudget(10))

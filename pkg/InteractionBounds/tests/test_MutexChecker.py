import itertools
import unittest

import numpy as np

from InteractionBounds import FeatureModel, Interaction, MutexChecker, MutexLevel, enumerate_universe
from InteractionBounds.MutexChecker import mutex_blocking, mutex_exact, mutex_level0
from InteractionBounds.tests.helpers import all_configurations, jointly_valid, lb_example, random_models, toy4


class TestMutexLevel(unittest.TestCase):
    def test_parse(self):
        self.assertEqual(MutexLevel.parse("exact"), MutexLevel.EXACT)
        self.assertEqual(MutexLevel.parse("P2"), MutexLevel.P2)
        self.assertLess(MutexLevel.L0, MutexLevel.P1)
        with self.assertRaises(ValueError):
            MutexLevel.parse("P3")


class TestMutexChecker(unittest.TestCase):
    def test_invalid_pairs(self):
        checker = MutexChecker(enumerate_universe(lb_example()))
        self.assertTrue(checker.pair_invalid(1, 3))
        self.assertTrue(checker.pair_invalid(3, 1))
        self.assertTrue(checker.pair_invalid(2, -2))
        self.assertFalse(checker.pair_invalid(1, -3))
        self.assertEqual(int(checker.invalid_pairs.sum()), 2 * 3 + 2)

    def test_level0(self):
        checker = MutexChecker(enumerate_universe(lb_example()))
        self.assertTrue(checker.is_mutex(Interaction(1, 2), Interaction(-1, 2)))  # complementary literal
        self.assertTrue(checker.is_mutex(Interaction(1, 2), Interaction(2, 3)))  # {1, 3} is invalid
        self.assertFalse(checker.is_mutex(Interaction(1, 2), Interaction(2, -3)))
        self.assertFalse(checker.is_mutex(Interaction(1, 2), Interaction(1, 2)))

    def test_exact_beyond_pairs(self):
        # Every literal pair is valid but no configuration selects 1, 2 and 3
        model = FeatureModel(4, [[-1, -2, -3]], name="triple")
        universe = enumerate_universe(model)
        first, second = Interaction(1, 2), Interaction(3, 4)
        self.assertIn(first, universe)
        self.assertIn(second, universe)
        checker = MutexChecker(universe, level=MutexLevel.EXACT)
        for level in (MutexLevel.L0, MutexLevel.P1, MutexLevel.P2):
            self.assertFalse(checker.is_mutex(first, second, level))
        self.assertTrue(checker.is_mutex(first, second))
        self.assertTrue(checker.exact(first, second))
        self.assertTrue(mutex_exact(first, second, model))
        self.assertFalse(mutex_exact(first, Interaction(-3, 4), model))

    def test_blocking_argument(self):
        checker = MutexChecker(enumerate_universe(toy4()))
        with self.assertRaises(ValueError):
            checker.blocking(Interaction(1, 2), Interaction(3, 4), 3)
        self.assertTrue(checker.blocking(Interaction(-1, 3), Interaction(-2, 4), 0))

    def test_levels_against_brute_force(self):
        for model in random_models(4, (4, 5), (1.0, 3.0), seed=8):
            universe = enumerate_universe(model)
            configs = all_configurations(model)
            checker = MutexChecker(universe, level=MutexLevel.EXACT)
            for first, second in itertools.combinations(sorted(universe.valid), 2):
                answers = [checker.is_mutex(first, second, level) for level in MutexLevel]
                # Each level detects a superset of the previous one
                self.assertEqual(answers, sorted(answers))
                self.assertEqual(answers[-1], not jointly_valid(configs, first, second))

    def test_exclusion_matrix(self):
        universe = enumerate_universe(toy4())
        checker = MutexChecker(universe)
        interactions = sorted(universe.valid)
        matrix = checker.exclusion_matrix(interactions)
        self.assertTrue(np.array_equal(matrix, matrix.T))
        self.assertFalse(matrix.diagonal().any())
        for i, j in itertools.combinations(range(len(interactions)), 2):
            self.assertEqual(matrix[i, j], checker.is_mutex(interactions[i], interactions[j]))

    def test_exclusion_row(self):
        universe = enumerate_universe(toy4())
        checker = MutexChecker(universe)
        interaction = Interaction(-1, 3)
        row = checker.exclusion_row(interaction, among=universe.valid_mask)
        self.assertFalse(row[~universe.valid_mask].any())
        for i in universe.valid_indices:
            other = universe.interaction(i)
            self.assertEqual(row[i], other != interaction and checker.is_mutex(interaction, other))
        # {-2, 4} puts -2 next to -1, which clause {1, 2} forbids
        self.assertTrue(row[universe.index(Interaction(1, 2))])
        self.assertTrue(row[universe.index(Interaction(-2, 4))])
        self.assertFalse(row[universe.index(Interaction(2, 4))])


class TestMutexFunctions(unittest.TestCase):
    def test_level0_and_blocking(self):
        universe = enumerate_universe(lb_example())
        exclusive = (Interaction(1, 2), Interaction(2, 3))
        conflicting = (Interaction(1, 2), Interaction(-1, 3))
        compatible = (Interaction(1, 2), Interaction(2, -3))
        self.assertTrue(mutex_level0(*exclusive, universe))
        self.assertTrue(mutex_level0(*conflicting, universe))
        self.assertFalse(mutex_level0(*compatible, universe))
        for max_block in (0, 1, 2):
            self.assertTrue(mutex_blocking(*exclusive, universe, max_block))
            self.assertFalse(mutex_blocking(*compatible, universe, max_block))
        with self.assertRaises(ValueError):
            mutex_blocking(*compatible, universe, 3)

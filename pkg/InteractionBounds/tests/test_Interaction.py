import unittest

import numpy as np

from InteractionBounds import FeatureModel, Interaction, ModelFormatError, enumerate_universe
from InteractionBounds.Interaction import read_interactions, write_interactions
from InteractionBounds.InteractionUniverse import InteractionIndex, coverage, missing_after_removal
from InteractionBounds.Sample import Sample
from InteractionBounds.tests.helpers import candidate_interactions, config, lb_example, toy4, valid_interactions

# Sample of size six for toy4, and the three configurations whose removal leaves six interactions uncovered
TOY4_SAMPLE = [(1, 2, -3, 4), (1, -2, 3, -4), (1, -2, -3, 4), (-1, 2, 3, 4), (-1, 2, 3, -4), (-1, 2, -3, 4)]
TOY4_REMOVED = [(1, 2, -3, 4), (-1, 2, 3, 4), (-1, 2, 3, -4)]


class TestInteraction(unittest.TestCase):
    def test_init(self):
        self.assertEqual(Interaction(1, -3), Interaction([-3, 1]))
        self.assertEqual(Interaction(Interaction(2, 1)).literals, (1, 2))
        self.assertEqual(Interaction(-2).t, 1)

        with self.assertRaises(ValueError):
            Interaction(1, -1)
        with self.assertRaises(ValueError):
            Interaction(0, 2)
        with self.assertRaises(ValueError):
            Interaction([])

    def test_repr(self):
        self.assertEqual(repr(Interaction(-3, 1)), "Interaction(1, -3)")
        self.assertEqual(str(Interaction(-3, 1)), "1 -3")

    def test_order(self):
        self.assertLess(Interaction(1, -2), Interaction(1, 2))
        self.assertLess(Interaction(1, 3), Interaction(2, 3))
        self.assertEqual(sorted([Interaction(2, 3), Interaction(-1, 2)]), [Interaction(-1, 2), Interaction(2, 3)])

    def test_union(self):
        self.assertEqual(Interaction(1, 2).union(Interaction(2, 3)), (1, 2, 3))
        self.assertIsNone(Interaction(1, 2).union(Interaction(-1, 3)))
        self.assertTrue(Interaction(1, 2).conflicts_with(Interaction(-2, 4)))

    def test_text(self):
        interactions = [Interaction(2, 3), Interaction(-1, 2)]
        self.assertEqual(write_interactions(interactions), "-1 2\n2 3\n")
        self.assertEqual(read_interactions("c comment\n-1 2\n2 3\n"), sorted(interactions))


class TestInteractionIndex(unittest.TestCase):
    def test_numbering(self):
        index = InteractionIndex([1, 2, 3, 4], 2)
        self.assertEqual(len(index), 24)
        for i in range(len(index)):
            self.assertEqual(index.index(index.interaction(i)), i)
        self.assertEqual(index.interaction(0), Interaction(-1, -2))
        self.assertEqual(index.interaction(3), Interaction(1, 2))
        self.assertEqual(index.interaction(23), Interaction(3, 4))

    def test_non_concrete(self):
        index = InteractionIndex([1, 3, 5], 2)
        self.assertEqual(len(index), 12)
        with self.assertRaises(ValueError):
            index.index(Interaction(1, 2))
        with self.assertRaises(ValueError):
            index.index(Interaction(1, 3, 5))
        with self.assertRaises(ValueError):
            InteractionIndex([1, 2], 3)

    def test_cover_indices(self):
        index = InteractionIndex([1, 2, 3], 2)
        covered = {index.interaction(i) for i in index.cover_indices(config(1, -2, 3))}
        self.assertEqual(covered, {Interaction(1, -2), Interaction(1, 3), Interaction(-2, 3)})

    def test_strength_three(self):
        index = InteractionIndex([1, 2, 3, 4], 3)
        self.assertEqual(len(index), 32)
        covered = {index.interaction(i) for i in index.cover_indices(config(1, 2, 3, 4))}
        self.assertEqual(len(covered), 4)
        self.assertIn(Interaction(2, 3, 4), covered)


class TestInteractionUniverse(unittest.TestCase):
    def test_toy4(self):
        universe = enumerate_universe(toy4())
        self.assertEqual(universe.n_valid, 22)
        self.assertEqual(universe.invalid, {Interaction(-1, -2), Interaction(-3, -4)})
        self.assertEqual(universe.valid, valid_interactions(toy4()))

    def test_lb_example(self):
        universe = enumerate_universe(lb_example())
        self.assertEqual(universe.n_valid, 11)
        self.assertNotIn(Interaction(1, 3), universe)
        self.assertIn(Interaction(-1, -3), universe)

    def test_unconstrained(self):
        universe = enumerate_universe(FeatureModel(3, []))
        self.assertEqual(universe.n_valid, 12)
        self.assertEqual(universe.n_invalid, 0)

    def test_abstract_features(self):
        model = FeatureModel(4, [[-1, 4], [-2, 4]], concrete_features=[1, 2, 3])
        universe = enumerate_universe(model)
        self.assertEqual(len(universe), 12)
        self.assertEqual(universe.valid, valid_interactions(model))

    def test_strength_one_and_three(self):
        model = toy4()
        self.assertEqual(enumerate_universe(model, t=1).n_valid, 8)
        three = enumerate_universe(model, t=3)
        self.assertEqual(three.valid, valid_interactions(model, t=3))
        self.assertLess(three.n_valid, len(candidate_interactions(model, t=3)))

    def test_too_few_concrete_features(self):
        with self.assertRaises(ModelFormatError):
            enumerate_universe(FeatureModel(1, name="one"))
        with self.assertRaises(ModelFormatError):
            enumerate_universe(toy4(), t=5)
        self.assertEqual(enumerate_universe(FeatureModel(1), t=1).n_valid, 2)

    def test_seed_sample(self):
        model = toy4()
        seeded = enumerate_universe(model, seed_sample=[config(*c) for c in TOY4_SAMPLE])
        self.assertEqual(seeded.valid, enumerate_universe(model).valid)

    def test_coverage(self):
        universe = enumerate_universe(toy4())
        sample = Sample([config(*c) for c in TOY4_SAMPLE])
        self.assertEqual(coverage(sample, universe), universe.valid)
        self.assertEqual(len(coverage(Sample([config(1, 2, 3, 4)]), universe)), 6)

    def test_missing_after_removal(self):
        universe = enumerate_universe(toy4())
        sample = Sample([config(*c) for c in TOY4_SAMPLE])
        missing = missing_after_removal(sample, [config(*c) for c in TOY4_REMOVED], universe)
        self.assertEqual(missing, {Interaction(1, 2), Interaction(2, 3), Interaction(3, 4), Interaction(2, -4),
                                   Interaction(-1, 3), Interaction(-1, -4)})
        self.assertEqual(missing_after_removal(sample, [], universe), frozenset())
        with self.assertRaises(ValueError):
            missing_after_removal(sample, [config(1, 2, 3, 4)], universe)

    def test_coverage_curve(self):
        universe = enumerate_universe(toy4())
        sample = Sample([config(*c) for c in TOY4_SAMPLE])
        rows = universe.coverage_curve(sample, seed=3)
        self.assertEqual(rows[0], (0, 0.0))
        self.assertEqual(rows[-1], (6, 1.0))
        fractions = [f for _, f in rows]
        self.assertTrue(np.all(np.diff(fractions) >= 0))

import os
import random
import unittest

from InteractionBounds import (BoundStatus, CoverageGapError, InvalidConfigurationError, MutexSet, Sample, UbTuning,
                               check_duality, enumerate_universe, initial_sample, samplns, select_removal, verify_sample)
from InteractionBounds.BoundsCell import BoundsCell
from InteractionBounds.FeatureModel import load_model
from InteractionBounds.SampleLNS import SampleLNS
from InteractionBounds.tests.helpers import all_configurations, config, min_cover_size, random_models, toy4, unconstrained

CAR_FIXTURE = os.path.join(os.path.dirname(__file__), "fixtures", "car.dimacs")

TOY4_SAMPLE = Sample([config(1, 2, -3, 4), config(1, -2, 3, -4), config(1, -2, -3, 4), config(-1, 2, 3, 4),
                      config(-1, 2, 3, -4), config(-1, 2, -3, 4)])


class TestUbTuning(unittest.TestCase):
    def test_validation(self):
        with self.assertRaises(ValueError):
            UbTuning(phi=0)
        with self.assertRaises(ValueError):
            UbTuning(grow_factor=0.9)
        with self.assertRaises(ValueError):
            UbTuning(iteration_conflicts=0)
        with self.assertRaises(ValueError):
            UbTuning(symmetry_fraction=1.0)


class TestInitialSample(unittest.TestCase):
    def test_full_coverage(self):
        model = toy4()
        universe = enumerate_universe(model)
        sample = initial_sample(model, universe, seed=4)
        self.assertTrue(verify_sample(sample, model, universe))
        self.assertGreaterEqual(len(sample), 5)
        self.assertLessEqual(len(initial_sample(model, universe, seed=4, attempts=3)), len(sample))
        with self.assertRaises(ValueError):
            initial_sample(model, universe, attempts=0)


class TestVerifySample(unittest.TestCase):
    def test_verdicts(self):
        model = toy4()
        universe = enumerate_universe(model)
        self.assertTrue(verify_sample(TOY4_SAMPLE, model, universe))

        gap = verify_sample(TOY4_SAMPLE.without([0]), model, universe)
        self.assertFalse(gap)
        self.assertIsInstance(gap.error, CoverageGapError)
        self.assertFalse(any(set(gap.witness) <= set(c.literals()) for c in TOY4_SAMPLE.without([0])))

        invalid = verify_sample(Sample(list(TOY4_SAMPLE) + [config(-1, -2, 3, 4)]), model, universe)
        self.assertIsInstance(invalid.error, InvalidConfigurationError)
        self.assertEqual(invalid.witness, 6)

        short = verify_sample(Sample([config(1, 2, 3)]), model, universe)
        self.assertIsInstance(short.error, InvalidConfigurationError)
        self.assertEqual(short.witness, 0)
        with self.assertRaises(InvalidConfigurationError):
            short.raise_for_failure()


class TestSelectRemoval(unittest.TestCase):
    def test_falls_back_to_one(self):
        # Every configuration of the sample is the only one covering some interaction
        universe = enumerate_universe(toy4())
        for seed in range(5):
            self.assertEqual(len(select_removal(TOY4_SAMPLE, universe, 0, random.Random(seed))), 1)

    def test_large_phi_takes_everything(self):
        universe = enumerate_universe(toy4())
        positions = select_removal(TOY4_SAMPLE, universe, 1000, 7)
        self.assertEqual(sorted(positions), list(range(6)))

    def test_threshold(self):
        universe = enumerate_universe(toy4())
        for seed in range(10):
            positions = select_removal(TOY4_SAMPLE, universe, 6, seed)
            self.assertEqual(len(set(positions)), len(positions))
            kept = TOY4_SAMPLE.without(positions)
            removed = TOY4_SAMPLE.subset(positions)
            lost = universe.missing_after_removal(TOY4_SAMPLE, list(removed))
            self.assertTrue(len(lost) <= 6 or len(positions) == 1)
            self.assertEqual(len(kept) + len(removed), 6)

    def test_empty(self):
        self.assertEqual(select_removal(Sample(), enumerate_universe(toy4()), 10, 0), [])


class TestBoundsCell(unittest.TestCase):
    def test_publish(self):
        ticks = iter(range(1, 100))
        cell = BoundsCell(clock=lambda: float(next(ticks)))
        self.assertEqual(cell.lower_bound, 0)
        self.assertIsNone(cell.upper_bound)
        self.assertTrue(cell.publish_upper(TOY4_SAMPLE))
        self.assertFalse(cell.publish_upper(TOY4_SAMPLE))
        self.assertTrue(cell.publish_lower(MutexSet([(1, 2), (-1, 2)])))
        self.assertFalse(cell.publish_lower(MutexSet([(1, 3)])))
        self.assertEqual((cell.upper_bound, cell.lower_bound), (6, 2))
        self.assertEqual((cell.t_last_ub, cell.t_last_lb), (1.0, 2.0))
        self.assertFalse(cell.gap_closed())
        self.assertTrue(cell.publish_upper(TOY4_SAMPLE.subset([0, 1])))
        self.assertTrue(cell.gap_closed())
        with self.assertRaises(RuntimeError):
            cell.publish_upper(TOY4_SAMPLE.subset([0]))
        with self.assertRaises(RuntimeError):
            cell.publish_lower(MutexSet([(1, 2), (-1, 2), (1, -2)]))


class TestSampleLNS(unittest.TestCase):
    def test_unconstrained_three(self):
        result = samplns(unconstrained(3), deterministic=True, max_iterations=30)
        self.assertEqual(len(result.sample), 4)
        self.assertEqual(len(result.mutex_set), 4)
        self.assertTrue(result.optimal)
        self.assertEqual(result.report.ratio, 1.0)

    def test_toy4(self):
        model = toy4()
        universe = enumerate_universe(model)
        result = samplns(model, deterministic=True, max_iterations=20, universe=universe, initial=TOY4_SAMPLE)
        self.assertEqual(result.initial_size, 6)
        self.assertEqual(len(result.sample), min_cover_size(all_configurations(model), universe.valid))
        self.assertEqual(len(result.sample), 5)
        self.assertLessEqual(len(result.mutex_set), 5)
        self.assertEqual(result.report.ub, 5)

    def test_unconstrained_four(self):
        result = samplns(unconstrained(4), deterministic=True, max_iterations=20)
        self.assertEqual(len(result.sample), 5)

    def test_unconstrained_five_against_brute_force(self):
        model = unconstrained(5)
        universe = enumerate_universe(model)
        optimum = min_cover_size(all_configurations(model), universe.valid)
        self.assertEqual(optimum, 6)
        result = samplns(model, deterministic=True, max_iterations=10, universe=universe)
        self.assertGreaterEqual(len(result.sample), optimum)
        self.assertLessEqual(len(result.mutex_set), optimum)
        self.assertTrue(verify_sample(result.sample, model, universe))

    def test_unconstrained_up_to_ten(self):
        # six configurations cover every pair of values on up to ten binary features, and no fewer do
        tuning = UbTuning(iteration_conflicts=2000)
        for n in range(6, 11):
            model = unconstrained(n)
            universe = enumerate_universe(model)
            result = samplns(model, deterministic=True, max_iterations=1, universe=universe, tuning=tuning)
            self.assertGreaterEqual(result.report.ub, 6)
            self.assertLessEqual(result.report.lb, result.report.ub)
            self.assertTrue(verify_sample(result.sample, model, universe))

    def test_deterministic_runs_agree(self):
        model = random_models(1, (6, 6), (1.0, 1.0), seed=3)[0]
        first = samplns(model, deterministic=True, max_iterations=6, seed=4)
        second = samplns(model, deterministic=True, max_iterations=6, seed=4)
        self.assertEqual(first.sample, second.sample)
        self.assertEqual(first.mutex_set, second.mutex_set)
        self.assertEqual(first.history, second.history)
        self.assertEqual(first.report, second.report)

    def test_history_is_monotone(self):
        model = random_models(1, (6, 6), (1.5, 1.5), seed=6)[0]
        lns = SampleLNS(model, enumerate_universe(model), seed=1, deterministic=True, check_every_iteration=True,
                        tuning=UbTuning(phi=4))
        result = lns.run(max_iterations=8)
        ubs = [ub for _, ub, _, _ in result.history]
        lbs = [lb for _, _, lb, _ in result.history]
        self.assertEqual(ubs, sorted(ubs, reverse=True))
        self.assertEqual(lbs, sorted(lbs))
        self.assertEqual([i for i, _, _, _ in result.history], list(range(1, len(result.history) + 1)))
        self.assertLessEqual(len(result.sample), result.initial_size)

    def test_gap_closed_stops_early(self):
        lns = SampleLNS(unconstrained(3), enumerate_universe(unconstrained(3)), deterministic=True)
        result = lns.run(max_iterations=100)
        self.assertTrue(result.optimal)
        self.assertLess(result.iterations, 100)

    def test_parallel_mode(self):
        result = samplns(toy4(), time_limit=20, max_iterations=5, seed=2)
        self.assertTrue(check_duality(result.sample, result.mutex_set, toy4()))

    def test_random_models_certify(self):
        for model in random_models(10, (4, 6), (0.5, 2.5), seed=17):
            result = samplns(model, deterministic=True, max_iterations=5, seed=1)
            report = check_duality(result.sample, result.mutex_set, model)
            self.assertEqual(report.ub, len(result.sample))
            self.assertEqual(report.lb, len(result.mutex_set))
            self.assertLessEqual(report.lb, report.ub)
            self.assertEqual(report.status is BoundStatus.OPTIMAL, report.ub == report.lb)
            self.assertLessEqual(report.ub, result.initial_size)
            if model.n_features <= 5:
                universe = enumerate_universe(model)
                optimum = min_cover_size(all_configurations(model), universe.valid, limit=report.ub)
                self.assertIsNotNone(optimum)
                self.assertGreaterEqual(optimum, report.lb)
                if report.status is BoundStatus.OPTIMAL:
                    self.assertEqual(optimum, report.ub)


@unittest.skipUnless(os.path.exists(CAR_FIXTURE), "car fixture not supplied")
class TestCarFixture(unittest.TestCase):
    def test_car_is_solved(self):
        model = load_model(CAR_FIXTURE)
        result = samplns(model, time_limit=900, seed=0)
        self.assertEqual((result.report.ub, result.report.lb), (5, 5))
        self.assertTrue(result.optimal)

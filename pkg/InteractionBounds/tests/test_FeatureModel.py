import logging
import os
import tempfile
import unittest

from InteractionBounds import (Configuration, FeatureModel, IncompleteAssignmentError, ModelFormatError,
                               UnsatisfiableModelError, load_model, parse_dimacs, parse_model_file)
from InteractionBounds.FeatureModel import is_valid_configuration
from InteractionBounds.tests.helpers import config, toy4

logger = logging.getLogger("InteractionBounds")


class TestFeatureModel(unittest.TestCase):
    def test_init(self):
        model = FeatureModel(3, [[-1, -3], [3, -1, -3]])  # Second clause is a tautology
        self.assertEqual(model.clauses, ((-1, -3),))
        self.assertEqual(model.concrete_features, frozenset({1, 2, 3}))

        with self.assertRaises(ModelFormatError):
            FeatureModel(0)

        with self.assertRaises(ModelFormatError):
            FeatureModel(3, [[4]])

        with self.assertRaises(ModelFormatError):
            FeatureModel(3, [], concrete_features=[])

        with self.assertRaises(UnsatisfiableModelError):
            FeatureModel(1, [[1], [-1]])

    def test_clauses_are_normalized(self):
        first = FeatureModel(3, [[2, 1, 1], [-3]])
        second = FeatureModel(3, [[-3], [1, 2]])
        self.assertEqual(first.clauses, second.clauses)
        self.assertEqual(first.content_hash, second.content_hash)

    def test_is_valid(self):
        model = FeatureModel(3, [[-1, -3]])
        self.assertTrue(model.is_valid(config(1, 2, -3)))
        self.assertFalse(model.is_valid(config(1, 2, 3)))

        with self.assertRaises(IncompleteAssignmentError):
            model.is_valid(config(1, 2))
        self.assertTrue(is_valid_configuration(model, config(-1, 2, 3)))
        with self.assertRaises(IncompleteAssignmentError):
            is_valid_configuration(model, config(1, 2, 3, 4))

    def test_repr(self):
        self.assertEqual(repr(toy4()), "FeatureModel('toy4', n_features=4, clauses=2, concrete=4)")

    def test_content_hash(self):
        self.assertEqual(len(toy4().content_hash), 64)
        self.assertNotEqual(toy4().content_hash, FeatureModel(4, [[1, 2]], name="toy4").content_hash)
        self.assertNotEqual(toy4().content_hash, FeatureModel(4, [[1, 2], [3, 4]], name="other").content_hash)


class TestParseDimacs(unittest.TestCase):
    def test_parse(self):
        model = parse_dimacs("c toy\np cnf 4 2\n1 2 0\n3 4 0\n", name="toy4")
        self.assertEqual(model, toy4())

    def test_clause_across_lines(self):
        model = parse_dimacs("p cnf 3 1\n1\n-2 3 0\n")
        self.assertEqual(model.clauses, ((1, -2, 3),))

    def test_bytes_and_end_marker(self):
        model = parse_dimacs(b"p cnf 2 1\n1 2 0\n%\n0\n")
        self.assertEqual(model.clauses, ((1, 2),))

    def test_errors(self):
        with self.assertRaises(ModelFormatError):
            parse_dimacs("1 2 0\n")
        with self.assertRaises(ModelFormatError):
            parse_dimacs("p cnf 2 1\np cnf 2 1\n1 2 0\n")
        with self.assertRaises(ModelFormatError):
            parse_dimacs("p dnf 2 1\n1 2 0\n")
        with self.assertRaises(ModelFormatError):
            parse_dimacs("p cnf 2 1\n1 x 0\n")
        with self.assertRaises(ModelFormatError) as ctx:
            parse_dimacs("p cnf 2 1\n1 3 0\n")
        self.assertEqual(ctx.exception.line, 2)
        with self.assertRaises(ModelFormatError):
            parse_dimacs("c nothing here\n")
        with self.assertRaises(UnsatisfiableModelError):
            parse_dimacs("p cnf 2 2\n1 2 0\n0\n")
        with self.assertRaises(UnsatisfiableModelError):
            parse_dimacs("p cnf 1 2\n1 0\n-1 0\n")

    def test_warnings(self):
        with self.assertLogs(logger, level="WARNING"):
            model = parse_dimacs("p cnf 2 1\n1 2\n")
        self.assertEqual(model.clauses, ((1, 2),))
        with self.assertLogs(logger, level="WARNING"):
            parse_dimacs("p cnf 2 3\n1 2 0\n")

    def test_dimacs_export(self):
        model = toy4()
        self.assertEqual(parse_dimacs(model.to_dimacs(), name="toy4"), model)


class TestParseModelFile(unittest.TestCase):
    def test_parse(self):
        model = parse_model_file('{"name": "m", "n_features": 3, "clauses": [[-1, -3]], "concrete_features": [1, 3]}')
        self.assertEqual(model.name, "m")
        self.assertEqual(model.concrete_features, frozenset({1, 3}))

    def test_json_export(self):
        model = FeatureModel(3, [[-1, -3]], concrete_features=[1, 2], name="m")
        self.assertEqual(parse_model_file(model.to_json()), model)

    def test_errors(self):
        with self.assertRaises(ModelFormatError):
            parse_model_file("not json")
        with self.assertRaises(ModelFormatError):
            parse_model_file("[]")
        with self.assertRaises(ModelFormatError):
            parse_model_file('{"n_features": 3, "clauses": []}')
        with self.assertRaises(ModelFormatError):
            parse_model_file('{"n_features": "3", "clauses": [], "concrete_features": [1]}')
        with self.assertRaises(ModelFormatError):
            parse_model_file('{"n_features": 3, "clauses": [], "concrete_features": [4]}')
        with self.assertRaises(UnsatisfiableModelError):
            parse_model_file('{"n_features": 3, "clauses": [[]], "concrete_features": [1]}')


class TestLoadModel(unittest.TestCase):
    def test_by_extension(self):
        with tempfile.TemporaryDirectory() as tmp:
            cnf = os.path.join(tmp, "toy4.cnf")
            with open(cnf, "w") as f:
                f.write(toy4().to_dimacs())
            self.assertEqual(load_model(cnf), toy4())

            structured = os.path.join(tmp, "other.json")
            with open(structured, "w") as f:
                f.write('{"n_features": 2, "clauses": [[1, 2]], "concrete_features": [1, 2]}')
            self.assertEqual(load_model(structured).name, "other")

            with self.assertRaises(ModelFormatError):
                load_model(os.path.join(tmp, "missing.cnf"))


class TestConfiguration(unittest.TestCase):
    def test_from_literals(self):
        c = Configuration.from_literals([-2, 1, 3], 3)
        self.assertEqual(c.values, (True, False, True))
        self.assertIn(-2, c)
        self.assertNotIn(2, c)
        self.assertEqual(str(c), "1 -2 3")

        with self.assertRaises(IncompleteAssignmentError):
            Configuration.from_literals([1, 3], 3)
        with self.assertRaises(ValueError):
            Configuration.from_literals([1, -1, 2], 2)

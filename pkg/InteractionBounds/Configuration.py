import logging

import numpy as np

from InteractionBounds.exceptions import IncompleteAssignmentError

logger = logging.getLogger("InteractionBounds")


class Configuration:
    """A complete assignment of features ``1..n``, stored as a tuple of booleans (feature ``f`` at position ``f - 1``)"""

    def __init__(self, values):
        self.values = values  # Triggers the setter

    def __repr__(self):
        return self.__class__.__name__ + "(" + " ".join(str(x) for x in self.literals()) + ")"

    def __str__(self):
        return " ".join(str(x) for x in self.literals())

    def __hash__(self):
        return hash(self.values)

    def __eq__(self, other):
        if not isinstance(other, Configuration):
            return NotImplemented
        return self.values == other.values

    def __len__(self):
        return len(self.values)

    def __iter__(self):
        return iter(self.literals())

    def __contains__(self, literal):
        feature = abs(literal)
        if literal == 0 or feature > len(self.values):
            return False
        return self.values[feature - 1] == (literal > 0)

    @property
    def values(self):
        return self._values

    @values.setter
    def values(self, values):
        self._values = tuple(bool(x) for x in values)

    @property
    def n_features(self):
        return len(self._values)

    def value(self, feature):
        return self._values[feature - 1]

    def literals(self):
        return tuple(f if v else -f for f, v in enumerate(self._values, start=1))

    def contains_all(self, literals):
        return all(lit in self for lit in literals)

    def as_array(self):
        return np.fromiter(self._values, dtype=bool, count=len(self._values))

    @classmethod
    def from_literals(cls, literals, n_features):
        """Build from signed literals; every feature ``1..n_features`` must appear exactly once"""
        values = [None] * n_features
        for lit in literals:
            feature = abs(lit)
            if lit == 0 or feature > n_features:
                raise ValueError(f"Literal {lit} out of range for {n_features} features")
            if values[feature - 1] is not None and values[feature - 1] != (lit > 0):
                raise ValueError(f"Contradicting literals for feature {feature}")
            values[feature - 1] = lit > 0
        missing = [f for f, v in enumerate(values, start=1) if v is None]
        if missing:
            raise IncompleteAssignmentError(f"Configuration leaves features {missing[:5]} unassigned")
        return cls(values)

    @classmethod
    def from_line(cls, line, n_features):
        try:
            literals = [int(x) for x in line.split()]
        except ValueError:
            raise ValueError(f"Expected signed integers, got '{line.strip()}'")
        if len(literals) != n_features:
            raise IncompleteAssignmentError(f"Expected {n_features} literals, got {len(literals)}")
        return cls.from_literals(literals, n_features)


class PartialAssignment:
    """Feature index to boolean for a subset of the features.  Always internally consistent."""

    def __init__(self, assigned=None):
        self._assigned = dict()
        if assigned:
            for feature, value in dict(assigned).items():
                if not isinstance(feature, int) or feature <= 0:
                    raise ValueError(f"Feature index must be a positive int, got '{feature}'")
                self._assigned[feature] = bool(value)

    def __repr__(self):
        return self.__class__.__name__ + "(" + " ".join(str(x) for x in self.literals()) + ")"

    def __len__(self):
        return len(self._assigned)

    def __eq__(self, other):
        if not isinstance(other, PartialAssignment):
            return NotImplemented
        return self._assigned == other._assigned

    def __contains__(self, literal):
        return self._assigned.get(abs(literal)) == (literal > 0)

    def get(self, feature, default=None):
        return self._assigned.get(feature, default)

    def conflicts_with(self, literal):
        value = self._assigned.get(abs(literal))
        return value is not None and value != (literal > 0)

    def assign(self, literal):
        if self.conflicts_with(literal):
            raise ValueError(f"Literal {literal} contradicts the assignment")
        self._assigned[abs(literal)] = literal > 0

    def literals(self):
        return tuple(f if v else -f for f, v in sorted(self._assigned.items()))

    @classmethod
    def from_literals(cls, literals):
        partial = cls()
        for lit in literals:
            if lit == 0:
                raise ValueError("Literal 0 is not a feature")
            partial.assign(lit)
        return partial

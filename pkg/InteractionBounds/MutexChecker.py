import enum
import logging
import threading

import numpy as np

from InteractionBounds.Interaction import Interaction
from InteractionBounds.InteractionUniverse import enumerate_universe
from InteractionBounds.ModelOracle import ModelOracle

logger = logging.getLogger("InteractionBounds")


class MutexLevel(enum.IntEnum):
    """Strength of the mutual-exclusion test.  Every level is sound; each detects a superset of the previous one."""
    L0 = 0  # complementary literals or an invalid pair
    P1 = 1  # blocking feature sets of size <= 1
    P2 = 2  # blocking feature sets of size <= 2
    EXACT = 3  # oracle decides I and J jointly

    @classmethod
    def parse(cls, name):
        try:
            return cls[str(name).upper()]
        except KeyError:
            raise ValueError(f"Unknown mutex level '{name}', expected one of {[x.name for x in cls]}")


class MutexChecker:
    """
    Decides whether two valid interactions can share a valid configuration.  Invalid literal pairs are read
    from a strength-2 universe into a square table over literal codes, which makes level 0 a handful of
    numpy lookups.  Answers are memoized per unordered pair and level; inserts are serialized.
    """

    def __init__(self, universe, level=MutexLevel.L0, oracle=None, conflict_budget=ModelOracle.default_conflict_budget,
                 pair_universe=None):
        self.universe = universe
        self.model = universe.model
        self.level = MutexLevel(level)
        self.conflict_budget = conflict_budget
        self._oracle = oracle
        self._memo = dict()
        self._lock = threading.Lock()
        self._oracle_lock = threading.Lock()  # the SAT oracle is not reentrant
        index = universe.index_table
        m = index.n_concrete
        invalid = np.zeros((2 * m, 2 * m), dtype=bool)
        positions = np.arange(m)
        invalid[2 * positions, 2 * positions + 1] = True
        invalid[2 * positions + 1, 2 * positions] = True
        if m >= 2:
            if pair_universe is None:
                pair_universe = universe if universe.t == 2 else enumerate_universe(self.model, 2, oracle=self.oracle)
            codes = pair_universe.index_table.codes
            bad = ~pair_universe.valid_mask
            invalid[codes[bad, 0], codes[bad, 1]] = True
            invalid[codes[bad, 1], codes[bad, 0]] = True
        self.invalid_pairs = invalid
        self.invalid_pairs.setflags(write=False)

    def __repr__(self):
        return f"{self.__class__.__name__}({self.model.name!r}, level={self.level.name}, memo={len(self._memo)})"

    @property
    def oracle(self):
        if self._oracle is None:
            self._oracle = ModelOracle(self.model)
        return self._oracle

    def codes(self, interaction):
        index = self.universe.index_table
        return np.array([index.literal_code(x) for x in interaction], dtype=np.int64)

    def pair_invalid(self, p, q):
        """True if literals p and q on concrete features cannot appear together"""
        index = self.universe.index_table
        return bool(self.invalid_pairs[index.literal_code(p), index.literal_code(q)])

    def level0(self, first, second):
        a, b = self.codes(first), self.codes(second)
        return bool(self.invalid_pairs[a[:, None], b[None, :]].any())

    def blocking(self, first, second, max_block):
        if max_block not in (0, 1, 2):
            raise ValueError(f"max_block must be 0, 1 or 2, got {max_block}")
        literals = set(first) | set(second)
        base = np.array([self.universe.index_table.literal_code(x) for x in literals], dtype=np.int64)
        if self.invalid_pairs[base[:, None], base[None, :]].any():
            return True
        if max_block == 0:
            return False
        m = self.universe.index_table.n_concrete
        free = np.ones(m, dtype=bool)
        free[base >> 1] = False
        # A literal is bad if it forms an invalid pair with I or J
        bad = self.invalid_pairs[:, base].any(axis=1)
        single = bad[0::2] & bad[1::2] & free
        if single.any():
            return True
        if max_block == 1:
            return False
        blocked = bad[:, None] | bad[None, :] | self.invalid_pairs
        both = blocked.reshape(m, 2, m, 2).all(axis=(1, 3))
        both &= free[:, None] & free[None, :]
        np.fill_diagonal(both, False)
        return bool(both.any())

    def exact(self, first, second, conflict_budget=None):
        """Oracle decision; with a finite budget, running out counts as not exclusive"""
        literals = Interaction.union(first, second)
        if literals is None:
            return True
        with self._oracle_lock:
            consistent = self.oracle.is_consistent(literals, conflict_budget=conflict_budget)
        if consistent is None:
            logger.debug(f"Exclusion of {first} and {second} undecided within {conflict_budget} conflicts")
            return False
        return not consistent

    def is_mutex(self, first, second, level=None):
        level = self.level if level is None else MutexLevel(level)
        key = (level, first, second) if first.sort_key <= second.sort_key else (level, second, first)
        cached = self._memo.get(key)
        if cached is not None:
            return cached
        answer = self.level0(first, second)
        if not answer and level >= MutexLevel.P1:
            answer = self.blocking(first, second, 2 if level >= MutexLevel.P2 else 1)
        if not answer and level >= MutexLevel.EXACT:
            answer = self.exact(first, second, conflict_budget=self.conflict_budget)
        with self._lock:
            self._memo[key] = answer
        return answer

    def _codes_matrix(self, interactions):
        index = self.universe.index_table
        return np.array([[index.literal_code(x) for x in i] for i in interactions], dtype=np.int64).reshape(len(interactions), -1)

    def cross_matrix(self, rows, columns, level=None):
        """Boolean matrix, entry (i, j) true when rows[i] and columns[j] are mutually exclusive"""
        level = self.level if level is None else MutexLevel(level)
        if not rows or not columns:
            return np.zeros((len(rows), len(columns)), dtype=bool)
        a, b = self._codes_matrix(rows), self._codes_matrix(columns)
        result = np.zeros((len(rows), len(columns)), dtype=bool)
        for x in range(a.shape[1]):
            for y in range(b.shape[1]):
                result |= self.invalid_pairs[a[:, x][:, None], b[:, y][None, :]]
        if level > MutexLevel.L0:
            for i, j in zip(*np.nonzero(~result)):
                if rows[i] != columns[j] and self.is_mutex(rows[i], columns[j], level):
                    result[i, j] = True
        return result

    def exclusion_matrix(self, interactions, level=None):
        """Symmetric matrix over one list of interactions, false on the diagonal"""
        matrix = self.cross_matrix(interactions, interactions, level)
        np.fill_diagonal(matrix, False)
        return matrix

    def exclusion_row(self, interaction, among=None, level=None):
        """Mask over the universe: candidates mutually exclusive with ``interaction``, evaluated only inside ``among``"""
        level = self.level if level is None else MutexLevel(level)
        codes = self.universe.index_table.codes
        row = np.zeros(len(codes), dtype=bool)
        for c in self.codes(interaction):
            row |= self.invalid_pairs[c, codes].any(axis=1)
        if among is not None:
            row &= among
        if level > MutexLevel.L0:
            open_ = ~row if among is None else among & ~row
            for i in np.flatnonzero(open_):
                other = self.universe.interaction(i)
                if other != interaction and self.is_mutex(interaction, other, level):
                    row[i] = True
        return row


def mutex_level0(first, second, universe):
    return MutexChecker(universe).level0(first, second)


def mutex_blocking(first, second, universe, max_block):
    return MutexChecker(universe).blocking(first, second, max_block)


def mutex_exact(first, second, model):
    literals = Interaction.union(first, second)
    if literals is None:
        return True
    return not ModelOracle(model).is_consistent(literals)

import itertools
import logging
import math
import random

import numpy as np

from InteractionBounds.Interaction import Interaction
from InteractionBounds.ModelOracle import ModelOracle
from InteractionBounds.exceptions import ModelFormatError, OracleTimeoutError

logger = logging.getLogger("InteractionBounds")


class InteractionIndex:
    """
    Dense numbering of all candidate interactions of strength ``t`` over the concrete features.

    Candidate ``rank * 2**t + code``: ``rank`` is the lexicographic rank of the feature combination among
    the concrete positions, bit ``t - 1 - j`` of ``code`` is the polarity of its j-th literal.  A literal on
    concrete position ``p`` has the literal code ``2 * p + polarity``.
    """

    def __init__(self, concrete_features, t):
        self.concrete = tuple(sorted(concrete_features))
        m = len(self.concrete)
        if not isinstance(t, int) or not 1 <= t <= m:
            raise ValueError(f"Strength t must be in 1..{m}, got '{t}'")
        self.t = t
        self.position = {f: p for p, f in enumerate(self.concrete)}
        self.n_combinations = math.comb(m, t)
        self.size = self.n_combinations << t
        combos = np.fromiter(itertools.chain.from_iterable(itertools.combinations(range(m), t)),
                             dtype=np.int64, count=self.n_combinations * t)
        self.combos = combos.reshape(self.n_combinations, t)
        bits = (np.arange(1 << t)[:, None] >> np.arange(t - 1, -1, -1)[None, :]) & 1
        self.codes = (2 * self.combos[:, None, :] + bits[None, :, :]).reshape(self.size, t)
        self._base = np.arange(self.n_combinations, dtype=np.int64) << t
        self._shifts = np.arange(t - 1, -1, -1)

    def __len__(self):
        return self.size

    @property
    def n_concrete(self):
        return len(self.concrete)

    def literal_code(self, literal):
        return 2 * self.position[abs(literal)] + (literal > 0)

    def code_literal(self, code):
        feature = self.concrete[int(code) >> 1]
        return feature if int(code) & 1 else -feature

    def index(self, interaction):
        """Candidate index of an Interaction of strength t on concrete features"""
        literals = interaction.literals
        if len(literals) != self.t:
            raise ValueError(f"Expected an interaction of strength {self.t}, got {interaction}")
        try:
            positions = [self.position[abs(x)] for x in literals]
        except KeyError:
            raise ValueError(f"Interaction {interaction} uses a feature that is not concrete")
        m = self.n_concrete
        rank = self.n_combinations - 1 - sum(math.comb(m - 1 - p, self.t - j) for j, p in enumerate(positions))
        code = 0
        for lit in literals:
            code = (code << 1) | (lit > 0)
        return (rank << self.t) | code

    def interaction(self, index):
        return Interaction([self.code_literal(c) for c in self.codes[index]])

    def literals(self, index):
        return tuple(self.code_literal(c) for c in self.codes[index])

    def cover_indices(self, config):
        """Indices of the candidates contained in a complete configuration, one per combination"""
        bits = np.fromiter((config.value(f) for f in self.concrete), dtype=np.int64, count=self.n_concrete)
        codes = (bits[self.combos] << self._shifts).sum(axis=1)
        return self._base + codes

    def indices_with_literal(self, literal):
        return np.flatnonzero((self.codes == self.literal_code(literal)).any(axis=1))


class InteractionUniverse:
    """Exact partition of the candidate interactions of a model into valid and invalid.  Immutable."""

    def __init__(self, model, index, valid_mask):
        if len(valid_mask) != index.size:
            raise ValueError("Validity mask does not match the interaction index")
        self.model = model
        self.index_table = index
        self._valid = np.array(valid_mask, dtype=bool)
        self._valid.setflags(write=False)
        self._valid_indices = np.flatnonzero(self._valid)
        self._valid_indices.setflags(write=False)

    def __repr__(self):
        return f"{self.__class__.__name__}({self.model.name!r}, t={self.t}, valid={self.n_valid}, invalid={self.n_invalid})"

    def __len__(self):
        return self.index_table.size

    def __contains__(self, interaction):
        return self.is_valid(interaction)

    @property
    def t(self):
        return self.index_table.t

    @property
    def concrete(self):
        return self.index_table.concrete

    @property
    def valid_mask(self):
        return self._valid

    @property
    def valid_indices(self):
        return self._valid_indices

    @property
    def n_valid(self):
        return len(self._valid_indices)

    @property
    def n_invalid(self):
        return self.index_table.size - self.n_valid

    @property
    def valid(self):
        return frozenset(self.interaction(i) for i in self._valid_indices)

    @property
    def invalid(self):
        return frozenset(self.interaction(i) for i in np.flatnonzero(~self._valid))

    def index(self, interaction):
        return self.index_table.index(interaction)

    def interaction(self, index):
        return self.index_table.interaction(index)

    def interactions(self, indices):
        return [self.index_table.interaction(i) for i in indices]

    def is_valid(self, interaction):
        try:
            return bool(self._valid[self.index_table.index(interaction)])
        except ValueError:
            return False

    def cover_indices(self, config):
        return self.index_table.cover_indices(config)

    def coverage_counts(self, sample):
        """Per candidate, how many configurations of the sample contain it (invalid candidates stay 0 for valid configurations)"""
        counts = np.zeros(self.index_table.size, dtype=np.int32)
        for config in sample:
            counts[self.index_table.cover_indices(config)] += 1
        counts[~self._valid] = 0
        return counts

    def coverage_mask(self, sample):
        return self.coverage_counts(sample) > 0

    def coverage(self, sample):
        return frozenset(self.interactions(np.flatnonzero(self.coverage_mask(sample))))

    def missing_mask(self, sample, removed):
        """Valid candidates covered by ``sample`` but by none of its members outside ``removed``"""
        remaining = list(sample)
        for config in removed:
            try:
                remaining.remove(config)
            except ValueError:
                raise ValueError(f"Removed configuration {config!r} is not part of the sample")
        return self.coverage_mask(sample) & ~self.coverage_mask(remaining)

    def missing_after_removal(self, sample, removed):
        return frozenset(self.interactions(np.flatnonzero(self.missing_mask(sample, removed))))

    def coverage_curve(self, sample, seed=0):
        """``(prefix_size, covered_fraction)`` rows for a seeded shuffle of the sample, starting at ``(0, 0.0)``"""
        order = list(sample)
        random.Random(seed).shuffle(order)
        covered = np.zeros(self.index_table.size, dtype=bool)
        rows = [(0, 0.0)]
        for i, config in enumerate(order, start=1):
            covered[self.index_table.cover_indices(config)] = True
            rows.append((i, float(np.count_nonzero(covered & self._valid)) / self.n_valid))
        return rows


def enumerate_universe(model, t=2, seed_sample=None, oracle=None, conflict_budget=ModelOracle.default_conflict_budget):
    """
    Classify every candidate interaction of strength ``t``.  Configurations of ``seed_sample`` and every
    satisfying assignment found along the way mark all their interactions valid without further queries.
    """
    if len(model.concrete_features) < t:
        raise ModelFormatError(f"Model '{model.name}' has {len(model.concrete_features)} concrete features, "
                               f"strength {t} needs at least {t}")
    index = InteractionIndex(model.concrete_features, t)
    oracle = oracle or ModelOracle(model)
    valid = np.zeros(index.size, dtype=bool)
    decided = np.zeros(index.size, dtype=bool)
    for config in seed_sample or ():
        if not model.is_valid(config):
            logger.warning(f"Skipping invalid seed configuration {config!r}")
            continue
        covered = index.cover_indices(config)
        valid[covered] = True
        decided[covered] = True
    queries = 0
    for i in np.flatnonzero(~decided):
        if decided[i]:
            continue
        literals = index.literals(i)
        result = oracle.solve(literals, conflict_budget=conflict_budget)
        queries += 1
        if result.timed_out:
            logger.debug(f"Retrying {literals} without a conflict budget")
            result = oracle.solve(literals)
            if result.timed_out:
                raise OracleTimeoutError(f"Could not classify interaction {literals} of '{model.name}'")
        if result.satisfiable:
            covered = index.cover_indices(model.configuration(result.model))
            valid[covered] = True
            decided[covered] = True
        decided[i] = True
    universe = InteractionUniverse(model, index, valid)
    logger.info(f"Enumerated {universe.n_valid} valid and {universe.n_invalid} invalid interactions of "
                f"'{model.name}' (t={t}) with {queries} oracle queries")
    return universe


def coverage(sample, universe):
    return universe.coverage(sample)


def missing_after_removal(sample, removed, universe):
    return universe.missing_after_removal(sample, removed)

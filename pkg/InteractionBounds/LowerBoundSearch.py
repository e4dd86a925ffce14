import collections
import dataclasses
import logging
import math
import random

import numpy as np

from InteractionBounds.Budget import Budget
from InteractionBounds.IndependentSetSolver import opt_lb
from InteractionBounds.MutexSet import MutexSet

logger = logging.getLogger("InteractionBounds")


@dataclasses.dataclass
class LbSearchParams:
    merge_attempts: int = 16
    restart_probability: float = 0.25
    evict_fraction: float = 0.25
    passes: int = 2
    fixed_set_nodes: int = 20000  # branch-and-bound nodes per feature fixed set

    def __post_init__(self):
        if self.merge_attempts < 1 or self.passes < 1:
            raise ValueError("merge_attempts and passes must be positive")
        if not 0 <= self.restart_probability <= 1 or not 0 < self.evict_fraction <= 1:
            raise ValueError("restart_probability must be in [0, 1] and evict_fraction in (0, 1]")


def feature_fixed_set(literal, universe, checker, level=None, budget=None):
    """Exclusive set whose members all contain ``literal``, maximal within the budget"""
    if abs(literal) not in universe.index_table.position:
        raise ValueError(f"Literal {literal} is not on a concrete feature")
    indices = universe.index_table.indices_with_literal(literal)
    indices = indices[universe.valid_mask[indices]]
    return opt_lb(universe.interactions(indices), checker, level=level, budget=budget)


def greedy_mutex_set(interactions, checker, key=None, level=None):
    """Scan ``interactions`` (sorted by ``key`` if given) and keep each one exclusive to all kept so far"""
    ordered = sorted(interactions, key=key) if key else list(interactions)
    chosen = []
    for interaction in ordered:
        if all(checker.is_mutex(interaction, other, level) for other in chosen):
            chosen.append(interaction)
    return MutexSet(chosen, level=checker.level if level is None else level)


class LowerBoundSearch:
    """
    Builds an exclusive set from feature fixed sets.  For every concrete literal p the set fixed at p is
    merged into E, then the sets fixed at every q with {p, q} invalid; members of E that block a merge
    collect conflicts.  Every ``merge_attempts`` merges E is either emptied or loses its most conflicting
    members.
    """

    def __init__(self, universe, checker, level=None, seed=0, params=None):
        self.universe = universe
        self.checker = checker
        self.level = checker.level if level is None else level
        self.params = params or LbSearchParams()
        self.rng = random.Random(seed)
        self.members = []
        self.best = []
        self.conflicts = collections.Counter()
        self.attempts = 0
        self._fixed_sets = dict()

    def fixed_set(self, literal):
        if literal not in self._fixed_sets:
            self._fixed_sets[literal] = feature_fixed_set(literal, self.universe, self.checker, self.level,
                                                          Budget(nodes=self.params.fixed_set_nodes)).interactions
        return self._fixed_sets[literal]

    def partners(self, literal):
        """Literals q with {literal, q} invalid, including the complement"""
        index = self.universe.index_table
        row = self.checker.invalid_pairs[index.literal_code(literal)]
        return [index.code_literal(c) for c in np.flatnonzero(row)]

    def merge(self, interactions):
        for interaction in interactions:
            if interaction in self.members:
                continue
            blocking = [other for other in self.members if not self.checker.is_mutex(interaction, other, self.level)]
            if blocking:
                self.conflicts.update(blocking)
            else:
                self.members.append(interaction)
        if len(self.members) > len(self.best):
            self.best = list(self.members)
        self.attempts += 1
        if self.attempts % self.params.merge_attempts == 0:
            self.perturb()

    def perturb(self):
        if self.rng.random() < self.params.restart_probability:
            logger.debug(f"Restarting exclusive set search from scratch (best {len(self.best)})")
            self.members = []
        elif self.conflicts:
            ranked = sorted(self.members, key=lambda i: (-self.conflicts[i], i.sort_key))
            evict = set(ranked[:math.ceil(len(ranked) * self.params.evict_fraction)])
            self.members = [i for i in self.members if i not in evict]
            logger.debug(f"Evicted {len(evict)} conflicting members, {len(self.members)} left")
        self.conflicts.clear()

    def run(self, budget=None):
        budget = budget or Budget.unlimited()
        literals = [f for f in self.universe.concrete] + [-f for f in self.universe.concrete]
        literals.sort(key=lambda x: (abs(x), x))
        for _ in range(self.params.passes):
            order = list(literals)
            self.rng.shuffle(order)
            for p in order:
                if budget.expired():
                    return self.result()
                self.merge(self.fixed_set(p))
                partners = self.partners(p)
                self.rng.shuffle(partners)
                for q in partners:
                    self.merge(self.fixed_set(q))
        return self.result()

    def result(self):
        return MutexSet(self.best, level=self.level)


def lb_search(universe, checker, budget=None, seed=0, level=None, params=None):
    result = LowerBoundSearch(universe, checker, level=level, seed=seed, params=params).run(budget)
    logger.info(f"Exclusive set search found {len(result)} interactions")
    return result

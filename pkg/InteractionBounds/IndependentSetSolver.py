import logging
import time

import numpy as np

from InteractionBounds.Budget import Budget
from InteractionBounds.MutexSet import MutexSet

logger = logging.getLogger("InteractionBounds")


class _OutOfBudget(Exception):
    pass


def _bitset(row):
    return int.from_bytes(np.packbits(row, bitorder="little").tobytes(), "little")


class IndependentSetSolver:
    """
    Maximum independent set of the compatibility graph, searched as a maximum clique of its complement
    (the exclusion graph) by branch and bound with greedy colouring bounds.  Vertex sets are Python ints
    used as bitsets over vertices renumbered by decreasing degree.  Anytime: running out of budget returns
    the best set found so far.
    """
    deadline_check_interval = 256

    def __init__(self, exclusive):
        exclusive = np.asarray(exclusive, dtype=bool)
        if exclusive.ndim != 2 or exclusive.shape[0] != exclusive.shape[1]:
            raise ValueError("Expected a square exclusion matrix")
        k = exclusive.shape[0]
        degrees = exclusive.sum(axis=1)
        self.order = sorted(range(k), key=lambda v: (-int(degrees[v]), v))
        permuted = exclusive[np.ix_(self.order, self.order)] if k else exclusive
        self.adj = [_bitset(row) & ~(1 << i) for i, row in enumerate(permuted)]
        self.best = []
        self.nodes = 0
        self._budget = None

    def __len__(self):
        return len(self.adj)

    def is_clique(self, vertices):
        return all(self.adj[u] >> v & 1 for i, u in enumerate(vertices) for v in vertices[i + 1:])

    def solve(self, budget=None, warm=None):
        """``(vertices, optimal)`` with vertices given in the caller's numbering"""
        self._budget = budget or Budget.unlimited()
        position = {v: i for i, v in enumerate(self.order)}
        self.best = self._greedy()
        if warm:
            start = [position[v] for v in warm]
            if len(start) > len(self.best) and self.is_clique(start):
                self.best = start
        self.nodes = 0
        optimal = True
        try:
            if self.adj:
                self._expand([], (1 << len(self.adj)) - 1)
        except _OutOfBudget:
            optimal = False
        self._budget.charge(nodes=self.nodes)
        logger.debug(f"Independent set of size {len(self.best)} over {len(self.adj)} vertices, "
                     f"{self.nodes} nodes, optimal={optimal}")
        return sorted(self.order[i] for i in self.best), optimal

    def _greedy(self):
        clique = []
        common = (1 << len(self.adj)) - 1
        for v in range(len(self.adj)):
            if common >> v & 1:
                clique.append(v)
                common &= self.adj[v]
        return clique

    def _color_sort(self, candidates):
        order, colors = [], []
        color = 0
        uncolored = candidates
        while uncolored:
            color += 1
            available = uncolored
            while available:
                low = available & -available
                v = low.bit_length() - 1
                available &= ~(self.adj[v] | low)
                uncolored &= ~low
                order.append(v)
                colors.append(color)
        return order, colors

    def _check_budget(self):
        nodes_left = self._budget.nodes_left()
        if nodes_left is not None and self.nodes >= nodes_left:
            raise _OutOfBudget
        if (self._budget.deadline is not None and self.nodes % self.deadline_check_interval == 0
                and time.monotonic() >= self._budget.deadline):
            raise _OutOfBudget

    def _expand(self, clique, candidates):
        self.nodes += 1
        self._check_budget()
        order, colors = self._color_sort(candidates)
        for i in range(len(order) - 1, -1, -1):
            if len(clique) + colors[i] <= len(self.best):
                return
            v = order[i]
            clique.append(v)
            remaining = candidates & self.adj[v]
            if remaining:
                self._expand(clique, remaining)
            elif len(clique) > len(self.best):
                self.best = list(clique)
            clique.pop()
            candidates &= ~(1 << v)


def opt_lb(candidates, checker, level=None, budget=None, warm=None):
    """
    Largest subset of ``candidates`` whose members are pairwise exclusive under ``level`` (the checker's
    level by default).  ``warm`` is a known exclusive subset; the result is never smaller.
    """
    level = checker.level if level is None else level
    candidates = sorted(set(candidates))
    if not candidates:
        return MutexSet((), level=level, optimal=True)
    matrix = checker.exclusion_matrix(candidates, level)
    position = {c: i for i, c in enumerate(candidates)}
    start = [position[c] for c in (warm or ()) if c in position]
    chosen, optimal = IndependentSetSolver(matrix).solve(budget, start)
    return MutexSet([candidates[i] for i in chosen], level=level, optimal=optimal)

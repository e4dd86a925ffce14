import dataclasses
import logging
import random
import threading
import time

import numpy as np

from InteractionBounds.Budget import Budget
from InteractionBounds.IndependentSetSolver import opt_lb
from InteractionBounds.MutexSet import MutexSet

logger = logging.getLogger("InteractionBounds")


@dataclasses.dataclass
class LbTuning:
    gamma: float = 1000
    grow_factor: float = 1.10
    shrink_factor: float = 0.90
    fast_fraction: float = 0.50
    slow_fraction: float = 0.95
    subsolver_time_limit: float = 6.0  # seconds, a tenth of the default iteration limit
    subsolver_nodes: int = None  # replaces the time limit when set

    def __post_init__(self):
        if self.gamma < 1:
            raise ValueError(f"gamma must be at least 1, got {self.gamma}")
        if not 0 < self.shrink_factor < 1 < self.grow_factor:
            raise ValueError("Need 0 < shrink_factor < 1 < grow_factor")
        if not 0 <= self.fast_fraction <= self.slow_fraction:
            raise ValueError("Need 0 <= fast_fraction <= slow_fraction")
        if self.subsolver_time_limit is not None and self.subsolver_time_limit <= 0:
            raise ValueError("subsolver_time_limit must be positive")

    def subsolver_budget(self):
        if self.subsolver_nodes is not None:
            return Budget(nodes=self.subsolver_nodes)
        return Budget(seconds=self.subsolver_time_limit)


class LowerBoundLNS:
    """
    Destroy and repair on an exclusive set E.  Destroy moves random members of E' = E into the kept part
    R = E minus E' until at most gamma valid interactions are exclusive to all of R; repair replaces E'
    by a maximum exclusive set of those candidates.  E' is a feasible repair, so |E| never shrinks.
    ``pool`` restricts candidates to a subset of the universe (a mask over its indices).
    """

    def __init__(self, universe, initial, checker, tuning=None, seed=0, pool=None):
        self.universe = universe
        self.checker = checker
        self.tuning = tuning or LbTuning()
        self.gamma = float(self.tuning.gamma)
        self.rng = random.Random(seed)
        self.pool = universe.valid_mask if pool is None else (np.asarray(pool, dtype=bool) & universe.valid_mask)
        self.current = list(MutexSet(initial))
        self.best = MutexSet(self.current, level=checker.level)
        self.iterations = 0
        self.proven = False  # best is a maximum exclusive set of the whole pool

    def __repr__(self):
        return f"{self.__class__.__name__}(size={len(self.current)}, best={len(self.best)}, gamma={self.gamma:.1f})"

    def candidates(self, kept):
        """Mask of pool interactions exclusive to every member of ``kept``"""
        mask = self.pool.copy()
        for interaction in kept:
            mask = self.checker.exclusion_row(interaction, among=mask)
        return mask

    def destroy(self):
        """``(kept, removed, candidate_mask)`` for a random neighbourhood"""
        removed = list(self.current)
        self.rng.shuffle(removed)
        kept = []
        mask = self.pool.copy()
        for interaction in list(removed):
            if np.count_nonzero(mask) <= self.gamma:
                break
            narrowed = self.checker.exclusion_row(interaction, among=mask)
            if not narrowed.any():
                continue
            kept.append(interaction)
            removed.remove(interaction)
            mask = narrowed
        return kept, removed, mask

    def repair(self, kept, removed, mask):
        budget = self.tuning.subsolver_budget()
        replacement = opt_lb(self.universe.interactions(np.flatnonzero(mask)), self.checker, budget=budget,
                             warm=removed)
        used = budget.fraction_used()
        if used < self.tuning.fast_fraction:
            self.gamma *= self.tuning.grow_factor
        elif used > self.tuning.slow_fraction:
            self.gamma = max(1.0, self.gamma * self.tuning.shrink_factor)
        if not kept and replacement.optimal:
            self.proven = True
        return kept + list(replacement)

    def step(self, removed=None):
        """One iteration; ``removed`` forces E' instead of drawing it.  Returns the best size."""
        if removed is None:
            kept, removed, mask = self.destroy()
        else:
            removed = [i for i in self.current if i in set(removed)]
            kept = [i for i in self.current if i not in set(removed)]
            mask = self.candidates(kept)
        candidates = int(np.count_nonzero(mask))
        updated = self.repair(kept, removed, mask)
        if len(updated) >= len(self.current):
            self.current = updated
        if len(self.current) > len(self.best):
            self.best = MutexSet(self.current, level=self.checker.level)
            logger.info(f"Lower bound improved to {len(self.best)}")
        self.iterations += 1
        logger.debug(f"LNS iteration {self.iterations}: {len(removed)} removed, {candidates} candidates, "
                     f"size {len(self.current)}, gamma {self.gamma:.1f}")
        return len(self.best)

    def run(self, budget=None, max_iterations=None, target=None):
        """Iterate until a limit is hit, the pool maximum is proven or the best set reaches ``target``"""
        budget = budget or Budget.unlimited()
        done = 0
        while not budget.expired() and not self.proven:
            if target is not None and len(self.best) >= target:
                break
            if max_iterations is not None and done >= max_iterations:
                break
            self.step()
            done += 1
        return self.best


class LowerBoundWorker:
    """Runs LowerBoundLNS on its own thread and publishes every improvement to a BoundsCell"""

    def __init__(self, lns, cell, deadline=None):
        self.lns = lns
        self.cell = cell
        self.deadline = deadline
        self._stop = threading.Event()
        self._thread = None

    @property
    def running(self):
        return self._thread is not None and self._thread.is_alive()

    def start(self, blocking=False):
        if self.running:
            logger.warning("Called start() on a running LowerBoundWorker")
            return
        self._stop.clear()
        self._thread = threading.Thread(target=self._loop, name="LowerBoundWorker thread", daemon=True)
        self._thread.start()
        logger.info("LowerBoundWorker thread started")
        if blocking:
            self._thread.join()

    def stop(self):
        self._stop.set()
        if self._thread is not None:
            self._thread.join()
            self._thread = None
            logger.info("LowerBoundWorker thread stopped")

    def _loop(self):
        while not self._stop.is_set():
            if self.deadline is not None and time.monotonic() >= self.deadline:
                break
            if self.cell.gap_closed() or self.lns.proven:
                break
            self.lns.step()
            self.cell.publish_lower(self.lns.best)


def lb_lns(initial, universe, checker, tuning=None, deadline=None, seed=0, max_iterations=None):
    """Run LNS on ``initial`` until ``deadline`` (absolute ``time.monotonic()``) or ``max_iterations``"""
    lns = LowerBoundLNS(universe, initial, checker, tuning=tuning, seed=seed)
    budget = Budget.until(deadline) if deadline is not None else None
    return lns.run(budget, max_iterations=max_iterations)

import dataclasses
import logging
import random
import time

import numpy as np

from InteractionBounds.BoundsCell import BoundsCell
from InteractionBounds.Budget import Budget
from InteractionBounds.Certificate import GapReport, BoundStatus
from InteractionBounds.GreedySampler import initial_sample
from InteractionBounds.InteractionUniverse import enumerate_universe
from InteractionBounds.LowerBoundLNS import LbTuning, LowerBoundLNS, LowerBoundWorker
from InteractionBounds.LowerBoundSearch import greedy_mutex_set, lb_search
from InteractionBounds.MutexChecker import MutexChecker, MutexLevel
from InteractionBounds.OptSample import OptSampleStatus, opt_sample
from InteractionBounds.Sample import Sample
from InteractionBounds.Verification import verify_mutex_certificate, verify_sample

logger = logging.getLogger("InteractionBounds")


@dataclasses.dataclass
class UbTuning:
    phi: float = 250
    grow_factor: float = 1.25
    shrink_factor: float = 0.75
    iteration_time_limit: float = 60.0  # seconds per subproblem
    iteration_conflicts: int = 20000  # replaces the time limit in deterministic mode
    symmetry_fraction: float = 0.1  # share of the iteration spent improving the pinned exclusive set
    symmetry_iterations: int = 2  # exclusive set LNS iterations per subproblem in deterministic mode

    def __post_init__(self):
        if self.phi < 1:
            raise ValueError(f"phi must be at least 1, got {self.phi}")
        if not 0 < self.shrink_factor < 1 < self.grow_factor:
            raise ValueError("Need 0 < shrink_factor < 1 < grow_factor")
        if self.iteration_time_limit <= 0 or self.iteration_conflicts <= 0:
            raise ValueError("Iteration limits must be positive")
        if not 0 <= self.symmetry_fraction < 1:
            raise ValueError(f"symmetry_fraction must be in [0, 1), got {self.symmetry_fraction}")


def select_removal(sample, universe, phi, rng):
    """
    Positions of configurations drawn at random while at most ``phi`` valid interactions lose their last
    cover.  If already the first draw exceeds ``phi``, that single position is returned.
    """
    if not isinstance(rng, random.Random):
        rng = random.Random(rng)
    if not len(sample):
        return []
    covers = [universe.cover_indices(config) for config in sample]
    counts = np.zeros(len(universe), dtype=np.int32)
    for indices in covers:
        counts[indices] += 1
    counts[~universe.valid_mask] = 0
    order = list(range(len(sample)))
    rng.shuffle(order)
    chosen = []
    missing = 0
    for position in order:
        indices = covers[position]
        counts[indices] -= 1
        lost = int(np.count_nonzero(universe.valid_mask[indices] & (counts[indices] == 0)))
        if missing + lost > phi:
            break
        missing += lost
        chosen.append(position)
    return chosen or order[:1]


class SamplnsResult:
    def __init__(self, sample, mutex_set, report, history, initial_size, iterations):
        self.sample = sample
        self.mutex_set = mutex_set
        self.report = report
        self.history = history
        self.initial_size = initial_size
        self.iterations = iterations

    def __repr__(self):
        return f"{self.__class__.__name__}(ub={len(self.sample)}, lb={len(self.mutex_set)}, status={self.status.value})"

    @property
    def status(self):
        return self.report.status

    @property
    def optimal(self):
        return self.report.status is BoundStatus.OPTIMAL


class SampleLNS:
    """
    Improves a full-coverage sample by destroy and repair: drop configurations S' whose removal uncovers at
    most phi interactions, cover those again with the fewest configurations the subsolver finds, keep the
    rest.  The lower bound is raised alongside, on a worker thread, or interleaved one step per iteration
    in deterministic mode, which also replaces every wall-clock limit by a work limit.
    """

    def __init__(self, model, universe, tuning=None, lb_tuning=None, seed=0, deterministic=False,
                 check_every_iteration=False, level=MutexLevel.L0, checker=None, initial=None, greedy_attempts=1,
                 clock_start=None):
        self.model = model
        self.universe = universe
        self.tuning = tuning or UbTuning()
        lb_tuning = lb_tuning or LbTuning()
        if deterministic and lb_tuning.subsolver_nodes is None:
            lb_tuning = dataclasses.replace(lb_tuning, subsolver_nodes=20000)
        self.lb_tuning = lb_tuning
        self.seed = seed
        self.deterministic = deterministic
        self.check_every_iteration = check_every_iteration
        self.checker = checker or MutexChecker(universe, level)
        self.initial = initial
        self.greedy_attempts = greedy_attempts
        self.clock_start = time.monotonic() if clock_start is None else clock_start
        self.rng = random.Random(seed)
        self.phi = float(self.tuning.phi)
        self.iterations = 0
        self.history = []
        self.sample = None
        self.cell = None

    def __repr__(self):
        return f"{self.__class__.__name__}({self.model.name!r}, iterations={self.iterations}, phi={self.phi:.1f})"

    def clock(self):
        if self.deterministic:
            return float(self.iterations)
        return time.monotonic() - self.clock_start

    def symmetry_set(self, required, pool, k):
        """Exclusive set over ``required``: greedy by fewest appearances in the sample, then a short LNS up to size k"""
        appearances = self.universe.coverage_counts(self.sample)
        index = self.universe.index_table
        chosen = greedy_mutex_set(required, self.checker, key=lambda i: (appearances[index.index(i)], i.sort_key))
        lns = LowerBoundLNS(self.universe, chosen, self.checker, self.lb_tuning, seed=self.rng.randrange(1 << 30), pool=pool)
        if self.deterministic:
            return lns.run(max_iterations=self.tuning.symmetry_iterations, target=k)
        return lns.run(Budget(seconds=self.tuning.symmetry_fraction * self.tuning.iteration_time_limit), target=k)

    def iteration_budget(self, deadline):
        if self.deterministic:
            return Budget(conflicts=self.tuning.iteration_conflicts)
        return Budget(seconds=max(0.0, min(self.tuning.iteration_time_limit, deadline - time.monotonic())))

    def step(self, deadline=None):
        """One destroy and repair iteration.  Returns True if the sample shrank."""
        deadline = time.monotonic() + self.tuning.iteration_time_limit if deadline is None else deadline
        positions = select_removal(self.sample, self.universe, self.phi, self.rng)
        removed = self.sample.subset(positions)
        kept = self.sample.without(positions)
        pool = self.universe.valid_mask & (self.universe.coverage_counts(kept) == 0)
        required = self.universe.interactions(np.flatnonzero(pool))
        if required:
            symmetry = self.symmetry_set(required, pool, len(removed))
            result = opt_sample(self.model, required, len(removed), warm=removed, symmetry=symmetry,
                                budget=self.iteration_budget(deadline), seed=self.rng.randrange(1 << 30))
            replacement = result.sample if result.sample is not None else removed
            optimal = result.status is OptSampleStatus.OPTIMAL
        else:
            symmetry = ()
            replacement = Sample()
            optimal = True
        improved = len(replacement) < len(removed)
        if optimal:
            self.phi *= self.tuning.grow_factor
        elif not improved:
            self.phi = max(1.0, self.phi * self.tuning.shrink_factor)
        if improved:
            self.sample = Sample(list(kept) + list(replacement)).deduplicated()
        self.iterations += 1
        logger.debug(f"Iteration {self.iterations}: {len(removed)} removed, {len(required)} uncovered, "
                     f"{len(symmetry)} pinned, replaced by {len(replacement)}, optimal={optimal}, phi {self.phi:.1f}")
        if self.check_every_iteration:
            verify_sample(self.sample, self.model, self.universe).raise_for_failure()
        return improved

    def run(self, time_limit=900.0, max_iterations=None):
        deadline = time.monotonic() + time_limit
        self.cell = BoundsCell(clock=self.clock)
        self.sample = self.initial if self.initial is not None else initial_sample(
            self.model, self.universe, seed=self.seed, attempts=self.greedy_attempts)
        self.sample = Sample(self.sample).deduplicated()
        initial_size = len(self.sample)
        self.cell.publish_upper(self.sample)
        seed_budget = None if self.deterministic else Budget(seconds=self.tuning.symmetry_fraction * time_limit)
        self.cell.publish_lower(lb_search(self.universe, self.checker, seed_budget, seed=self.seed))
        lns = LowerBoundLNS(self.universe, self.cell.mutex_set, self.checker, self.lb_tuning, seed=self.seed)
        worker = None
        if not self.deterministic:
            worker = LowerBoundWorker(lns, self.cell, deadline)
            worker.start()
        try:
            while not self.cell.gap_closed():
                if max_iterations is not None and self.iterations >= max_iterations:
                    break
                if time.monotonic() >= deadline:
                    if self.deterministic:
                        logger.warning(f"Deterministic run of '{self.model.name}' stopped by the time limit")
                    break
                if self.deterministic and not lns.proven:
                    lns.step()
                    self.cell.publish_lower(lns.best)
                    if self.cell.gap_closed():
                        break
                if self.step(deadline):
                    self.cell.publish_upper(self.sample)
                    logger.info(f"Upper bound improved to {len(self.sample)}")
                self.history.append((self.iterations, self.cell.upper_bound, self.cell.lower_bound, self.clock()))
        finally:
            if worker is not None:
                worker.stop()
        sample, mutex_set = self.cell.sample, self.cell.mutex_set
        verify_sample(sample, self.model, self.universe).raise_for_failure()
        verify_mutex_certificate(mutex_set, self.model, self.universe).raise_for_failure()
        report = GapReport.from_bounds(self.model, len(sample), len(mutex_set), self.cell.t_last_ub, self.cell.t_last_lb)
        logger.info(f"Finished '{self.model.name}' after {self.iterations} iterations: "
                    f"ub={report.ub}, lb={report.lb}, {report.status.value}")
        return SamplnsResult(sample, mutex_set, report, self.history, initial_size, self.iterations)


def samplns(model, time_limit=900.0, tuning=None, seed=0, t=2, universe=None, deterministic=False,
            max_iterations=None, **kwargs):
    """Sample and exclusive set for ``model``; ``kwargs`` go to :py:class:`SampleLNS`"""
    universe = universe or enumerate_universe(model, t)
    lns = SampleLNS(model, universe, tuning=tuning, seed=seed, deterministic=deterministic, **kwargs)
    return lns.run(time_limit=time_limit, max_iterations=max_iterations)


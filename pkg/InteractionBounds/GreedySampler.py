import logging
import random

import numpy as np

from InteractionBounds.Configuration import PartialAssignment
from InteractionBounds.ModelOracle import ModelOracle
from InteractionBounds.Sample import Sample
from InteractionBounds.exceptions import OracleTimeoutError

logger = logging.getLogger("InteractionBounds")


class GreedySampler:
    """
    Builds one configuration at a time: walk the uncovered interactions in a seeded random order, pack
    every one that the oracle can extend together with what is already packed, then complete.  The last
    witness configuration is reused while it already contains the next interaction.
    """

    def __init__(self, model, universe, oracle=None, seed=0, conflict_budget=ModelOracle.default_conflict_budget):
        self.model = model
        self.universe = universe
        self.oracle = oracle or ModelOracle(model, seed=seed)
        self.rng = random.Random(seed)
        self.conflict_budget = conflict_budget

    def next_configuration(self, uncovered):
        order = [int(i) for i in np.flatnonzero(uncovered)]
        self.rng.shuffle(order)
        partial = PartialAssignment()
        witness = None
        for i in order:
            literals = self.universe.index_table.literals(i)
            if any(partial.conflicts_with(x) for x in literals):
                continue
            if witness is None or not witness.contains_all(literals):
                try:
                    extended = self.oracle.extend(partial.literals() + literals, conflict_budget=self.conflict_budget)
                except OracleTimeoutError:
                    extended = None
                if extended is None:
                    continue
                witness = extended
            for x in literals:
                partial.assign(x)
        if witness is None:
            raise RuntimeError("No uncovered interaction could be extended to a valid configuration")
        return witness

    def run(self):
        uncovered = self.universe.valid_mask.copy()
        configurations = []
        while uncovered.any():
            config = self.next_configuration(uncovered)
            configurations.append(config)
            uncovered[self.universe.cover_indices(config)] = False
        return Sample(configurations)


def initial_sample(model, universe, seed=0, oracle=None, attempts=1):
    """Smallest of ``attempts`` greedy samples built with seeds ``seed, seed + 1, ...``"""
    if attempts < 1:
        raise ValueError(f"attempts must be positive, got {attempts}")
    best = None
    for attempt in range(attempts):
        sample = GreedySampler(model, universe, oracle=oracle, seed=seed + attempt).run()
        logger.debug(f"Greedy attempt {attempt + 1}: {len(sample)} configurations")
        if best is None or len(sample) < len(best):
            best = sample
    logger.info(f"Initial sample of '{model.name}' has {len(best)} configurations")
    return best

import itertools
import logging

import numpy as np

from InteractionBounds.Interaction import Interaction
from InteractionBounds.ModelOracle import ModelOracle
from InteractionBounds.exceptions import (CoverageGapError, IncompleteAssignmentError, InvalidConfigurationError,
                                          MutexViolationError)

logger = logging.getLogger("InteractionBounds")


class Verdict:
    """Outcome of a certificate check.  Truthy on success; otherwise ``error`` names the offending element."""

    def __init__(self, error=None):
        self.error = error

    def __bool__(self):
        return self.error is None

    def __repr__(self):
        return f"{self.__class__.__name__}({'ok' if self else self.error})"

    @property
    def message(self):
        return "ok" if self else str(self.error)

    @property
    def witness(self):
        return None if self else self.error.witness

    def raise_for_failure(self):
        if self.error is not None:
            raise self.error


def verify_mutex_certificate(mutex_set, model, universe=None):
    """
    Independent check of a lower bound certificate: every member is a valid interaction on concrete
    features, every pair is exclusive by an exact oracle query with no budget.
    """
    oracle = ModelOracle(model)
    members = list(mutex_set)
    t = universe.t if universe is not None else None
    for interaction in members:
        if t is not None and interaction.t != t:
            return Verdict(MutexViolationError(f"Member {interaction} does not have strength {t}", witness=(interaction,)))
        if any(f not in model.concrete_features or f > model.n_features for f in interaction.features):
            return Verdict(MutexViolationError(f"Member {interaction} uses a feature that is not concrete",
                                               witness=(interaction,)))
        if not oracle.is_consistent(interaction.literals):
            return Verdict(MutexViolationError(f"Member {interaction} is not a valid interaction", witness=(interaction,)))
    for first, second in itertools.combinations(members, 2):
        literals = Interaction.union(first, second)
        if literals is not None and oracle.is_consistent(literals):
            return Verdict(MutexViolationError(f"Members {first} and {second} share a valid configuration",
                                               witness=(first, second)))
    logger.debug(f"Verified exclusive set of {len(members)} interactions with {oracle.queries} exact queries")
    return Verdict()


def verify_sample(sample, model, universe):
    """Every configuration valid and every valid interaction covered"""
    for position, config in enumerate(sample):
        try:
            valid = model.is_valid(config)
        except IncompleteAssignmentError as e:
            return Verdict(InvalidConfigurationError(f"Configuration {position + 1} is incomplete: {e}", witness=position))
        if not valid:
            return Verdict(InvalidConfigurationError(f"Configuration {position + 1} ({config}) violates the model",
                                                     witness=position))
    missing = np.flatnonzero(universe.valid_mask & ~universe.coverage_mask(sample))
    if len(missing):
        interaction = universe.interaction(missing[0])
        return Verdict(CoverageGapError(f"Interaction {interaction} is not covered ({len(missing)} missing)",
                                        witness=interaction))
    return Verdict()

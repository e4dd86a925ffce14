import logging

from InteractionBounds.__version__ import __version__  # noqa: F401
# This order matters
from InteractionBounds.exceptions import (ArtifactMismatchError, CertificateError, CoverageGapError, EncodingError,
                                          IncompleteAssignmentError, InteractionBoundsError, InvalidConfigurationError,
                                          ModelFormatError, MutexViolationError, OracleTimeoutError,
                                          UnsatisfiableModelError)
from InteractionBounds.Budget import Budget
from InteractionBounds.SatSolver import SatInstance, SatResult, SatSolver
from InteractionBounds.Configuration import Configuration, PartialAssignment
from InteractionBounds.ModelOracle import ModelOracle, extend
from InteractionBounds.FeatureModel import FeatureModel, load_model, parse_dimacs, parse_model_file
from InteractionBounds.Simplifier import simplify
from InteractionBounds.Interaction import Interaction
from InteractionBounds.InteractionUniverse import InteractionUniverse, enumerate_universe
from InteractionBounds.MutexChecker import MutexChecker, MutexLevel
from InteractionBounds.MutexSet import MutexSet
from InteractionBounds.IndependentSetSolver import opt_lb
from InteractionBounds.LowerBoundSearch import lb_search
from InteractionBounds.LowerBoundLNS import LbTuning, lb_lns
from InteractionBounds.Sample import Sample
from InteractionBounds.Verification import verify_mutex_certificate, verify_sample
from InteractionBounds.GreedySampler import initial_sample
from InteractionBounds.OptSample import OptSampleStatus, opt_sample, optimal_sample
from InteractionBounds.Certificate import BoundStatus, GapReport, check_duality
from InteractionBounds.SampleLNS import UbTuning, SampleLNS, samplns, select_removal

__all__ = [
    "Budget",
    "SatInstance",
    "SatResult",
    "SatSolver",
    "Configuration",
    "PartialAssignment",
    "ModelOracle",
    "extend",
    "FeatureModel",
    "load_model",
    "parse_dimacs",
    "parse_model_file",
    "simplify",
    "Interaction",
    "InteractionUniverse",
    "enumerate_universe",
    "MutexChecker",
    "MutexLevel",
    "MutexSet",
    "opt_lb",
    "lb_search",
    "LbTuning",
    "lb_lns",
    "Sample",
    "verify_mutex_certificate",
    "verify_sample",
    "initial_sample",
    "OptSampleStatus",
    "opt_sample",
    "optimal_sample",
    "BoundStatus",
    "GapReport",
    "check_duality",
    "UbTuning",
    "SampleLNS",
    "samplns",
    "select_removal",
    "InteractionBoundsError",
    "ModelFormatError",
    "UnsatisfiableModelError",
    "IncompleteAssignmentError",
    "OracleTimeoutError",
    "EncodingError",
    "CertificateError",
    "ArtifactMismatchError",
    "CoverageGapError",
    "InvalidConfigurationError",
    "MutexViolationError",
]

logger = logging.getLogger("InteractionBounds")
logger.addHandler(logging.NullHandler())

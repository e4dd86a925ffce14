import logging

from InteractionBounds.Configuration import PartialAssignment
from InteractionBounds.SatSolver import SatOutcome, SatResult, SatSolver
from InteractionBounds.exceptions import OracleTimeoutError

logger = logging.getLogger("InteractionBounds")


class ModelOracle:
    """
    Incremental SAT handle over one feature model.  Queries are literals over the model's original
    feature space; fixed and merged features are translated before solving and reconstructed in the
    returned assignments.  One handle per thread.
    """
    default_conflict_budget = 100000

    def __init__(self, model, seed=0):
        self.model = model
        self.solver = SatSolver(model.sat_instance(), seed=seed)
        self.queries = 0

    def __repr__(self):
        return f"{self.__class__.__name__}({self.model.name!r}, queries={self.queries})"

    def solve(self, literals=(), conflict_budget=None, deadline=None):
        """
        SatResult whose model (when satisfiable) is a complete assignment of the model's features.
        ``conflict_budget=None`` means unlimited.
        """
        self.queries += 1
        assumptions = self.model.translate(literals)
        if assumptions is None:
            return SatResult(SatOutcome.UNSATISFIABLE)
        result = self.solver.solve(assumptions, conflict_budget=conflict_budget, deadline=deadline)
        if result.satisfiable:
            config = self.model.reconstruct(result.model[:self.model.n_features])
            return SatResult(SatOutcome.SATISFIABLE, config.values, conflicts=result.conflicts)
        return result

    def is_consistent(self, literals, conflict_budget=None, deadline=None):
        """True / False, or None when the budget ran out"""
        result = self.solve(literals, conflict_budget=conflict_budget, deadline=deadline)
        if result.timed_out:
            return None
        return result.satisfiable

    def extend(self, partial=(), conflict_budget=None, deadline=None):
        """
        A valid Configuration agreeing with ``partial`` (a PartialAssignment or literals), or None if there is none.
        Raises OracleTimeoutError if a finite budget runs out first.
        """
        literals = partial.literals() if isinstance(partial, PartialAssignment) else tuple(partial)
        result = self.solve(literals, conflict_budget=conflict_budget, deadline=deadline)
        if result.timed_out:
            raise OracleTimeoutError(f"Extending {len(literals)} literals on '{self.model.name}' ran out of budget")
        if result.unsatisfiable:
            return None
        return self.model.configuration(result.model)


def extend(model, partial=()):
    return ModelOracle(model).extend(partial)

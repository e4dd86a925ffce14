import enum
import logging

from InteractionBounds.Budget import Budget
from InteractionBounds.GreedySampler import initial_sample
from InteractionBounds.Interaction import Interaction
from InteractionBounds.Sample import Sample
from InteractionBounds.SatSolver import SatInstance, SatSolver
from InteractionBounds.exceptions import EncodingError

logger = logging.getLogger("InteractionBounds")


class OptSampleStatus(enum.Enum):
    OPTIMAL = "optimal"  # proven minimum
    FEASIBLE = "feasible"  # best found, budget ran out
    INFEASIBLE = "infeasible"  # no cover with k configurations
    UNKNOWN = "unknown"  # nothing found within the budget


class OptSampleResult:
    def __init__(self, sample, status, lower_bound=0):
        self.sample = sample
        self.status = status
        self.lower_bound = lower_bound

    def __repr__(self):
        size = None if self.sample is None else len(self.sample)
        return f"{self.__class__.__name__}(size={size}, status={self.status.value})"

    @property
    def optimal(self):
        return self.status is OptSampleStatus.OPTIMAL


class OptSampleEncoding:
    """
    k copies of the model.  Variables, 1-based: x(i, f) feature f in copy i, y(i, j) copy i covers
    required interaction j, u(i) copy i is used.  Clauses: the model in every copy; y(i, j) implies u(i)
    and the literals of j in copy i; every j is covered by some copy; u(i + 1) implies u(i); pin s puts
    the s-th symmetry interaction into copy s.
    """

    def __init__(self, model, required, k, pins=()):
        if k < 1:
            raise ValueError(f"k must be positive, got {k}")
        self.model = model
        self.required = list(required)
        self.k = k
        self.pins = list(pins)
        self.n = model.n_features
        self.r = len(self.required)
        position = {interaction: j for j, interaction in enumerate(self.required)}
        if len(position) != self.r:
            raise EncodingError("Required interactions must be distinct")
        if len(set(self.pins)) != len(self.pins):
            raise EncodingError("A symmetry interaction is pinned to two copies")
        if len(self.pins) > k:
            raise EncodingError(f"{len(self.pins)} pins do not fit into {k} copies")
        for pin in self.pins:
            if pin not in position:
                raise EncodingError(f"Pinned interaction {pin} is not required")
        self.translated = []
        for interaction in self.required:
            literals = model.translate(interaction.literals)
            if literals is None:
                raise EncodingError(f"Required interaction {interaction} is invalid")
            self.translated.append(literals)
        self.clauses = []
        for i in range(k):
            for clause in model.clauses:
                self.clauses.append([self.x(i, lit) for lit in clause])
            for j, literals in enumerate(self.translated):
                self.clauses.append([self.u(i), -self.y(i, j)])
                for lit in literals:
                    self.clauses.append([-self.y(i, j), self.x(i, lit)])
        for j in range(self.r):
            self.clauses.append([self.y(i, j) for i in range(k)])
        for i in range(k - 1):
            self.clauses.append([-self.u(i + 1), self.u(i)])
        for slot, pin in enumerate(self.pins):
            self.clauses.append([self.y(slot, position[pin])])

    def __repr__(self):
        return f"{self.__class__.__name__}(k={self.k}, required={self.r}, pins={len(self.pins)}, vars={self.n_vars})"

    @property
    def n_vars(self):
        return self.k * (self.n + self.r + 1)

    def x(self, copy, literal):
        var = copy * self.n + abs(literal)
        return var if literal > 0 else -var

    def y(self, copy, j):
        return self.k * self.n + copy * self.r + j + 1

    def u(self, copy):
        return self.k * (self.n + self.r) + copy + 1

    def instance(self):
        return SatInstance(self.n_vars, self.clauses)

    def decode(self, model_values):
        """Configurations of the used copies.  Used copies must form a prefix."""
        used = [model_values[self.u(i) - 1] for i in range(self.k)]
        count = sum(used)
        if not all(used[:count]):
            raise EncodingError(f"Used copies {used} do not form a prefix")
        configurations = []
        for i in range(count):
            values = model_values[i * self.n:(i + 1) * self.n]
            configurations.append(self.model.reconstruct(values))
        return Sample(configurations)

    def warm_phases(self, solver, warm):
        """Point the solver's phases at ``warm``, placing the configuration covering pin s in copy s"""
        configs = list(warm)
        slots = [None] * self.k
        for slot, pin in enumerate(self.pins):
            for c, config in enumerate(configs):
                if config is not None and config.contains_all(pin.literals):
                    slots[slot] = config
                    configs[c] = None
                    break
        rest = iter(c for c in configs if c is not None)
        for slot in range(self.k):
            if slots[slot] is None:
                slots[slot] = next(rest, None)
        for i, config in enumerate(slots):
            solver.set_phase(self.u(i) if config is not None else -self.u(i))
            if config is None:
                continue
            for lit in config.literals():
                solver.set_phase(self.x(i, lit))
            for j, interaction in enumerate(self.required):
                covered = config.contains_all(interaction.literals)
                solver.set_phase(self.y(i, j) if covered else -self.y(i, j))


def _covers(sample, required):
    return all(any(config.contains_all(i.literals) for config in sample) for i in required)


def opt_sample(model, required, k, warm=None, symmetry=None, budget=None, seed=0):
    """
    Fewest valid configurations covering ``required``, searched downwards from k by forbidding one more
    copy after every solution.  ``symmetry`` is an exclusive set; its required members are pinned to the
    first copies and also bound the optimum from below.
    """
    budget = budget or Budget.unlimited()
    required = sorted(set(Interaction(i) for i in required))
    if not required:
        return OptSampleResult(Sample(), OptSampleStatus.OPTIMAL)
    if warm is not None:
        warm = Sample(warm).deduplicated()
        if len(warm) > k:
            raise ValueError(f"Warm start has {len(warm)} configurations, more than k={k}")
        if not _covers(warm, required):
            raise ValueError("Warm start does not cover the required interactions")
    required_set = set(required)
    pins = [i for i in (symmetry or ()) if i in required_set]
    lower = len(pins)
    if lower > k:
        logger.debug(f"{lower} exclusive required interactions exceed k={k}")
        return OptSampleResult(warm, OptSampleStatus.INFEASIBLE, lower_bound=lower)
    if warm is not None and len(warm) <= lower:
        return OptSampleResult(warm, OptSampleStatus.OPTIMAL, lower_bound=lower)
    encoding = OptSampleEncoding(model, required, k, pins)
    solver = SatSolver(encoding.instance(), seed=seed)
    best = warm
    if warm is not None:
        encoding.warm_phases(solver, warm)
        solver.add_clause([-encoding.u(len(warm) - 1)])
    while True:
        result = solver.solve(conflict_budget=budget.conflicts_left(), deadline=budget.deadline)
        budget.charge(conflicts=result.conflicts)
        if result.satisfiable:
            found = encoding.decode(result.model).deduplicated()
            if not _covers(found, required) or not all(model.is_valid(c) for c in found):
                raise EncodingError("Decoded sample is invalid or misses a required interaction")
            best = found
            logger.debug(f"Cover with {len(best)} configurations for {len(required)} interactions")
            if len(best) <= lower:
                return OptSampleResult(best, OptSampleStatus.OPTIMAL, lower_bound=lower)
            solver.add_clause([-encoding.u(len(best) - 1)])
            continue
        if result.unsatisfiable:
            if best is None:
                return OptSampleResult(None, OptSampleStatus.INFEASIBLE, lower_bound=lower)
            return OptSampleResult(best, OptSampleStatus.OPTIMAL, lower_bound=len(best))
        status = OptSampleStatus.FEASIBLE if best is not None else OptSampleStatus.UNKNOWN
        return OptSampleResult(best, status, lower_bound=lower)


def optimal_sample(model, universe, k=None, budget=None, seed=0, initial=None, symmetry=None):
    """
    Whole-model solve over every valid interaction.  k defaults to the size of the initial sample; when
    no cover with k configurations exists, k doubles up to four times the initial size.
    """
    initial = initial if initial is not None else initial_sample(model, universe, seed=seed)
    cap = 4 * len(initial)
    k = k or len(initial)
    required = universe.valid
    while True:
        warm = initial if len(initial) <= k else None
        result = opt_sample(model, required, k, warm=warm, symmetry=symmetry, budget=budget, seed=seed)
        if result.status is not OptSampleStatus.INFEASIBLE or k >= cap:
            return result
        logger.info(f"No cover with {k} configurations, retrying with {min(2 * k, cap)}")
        k = min(2 * k, cap)

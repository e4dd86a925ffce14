import enum
import heapq
import logging
import random
import time

logger = logging.getLogger("InteractionBounds")

# Literal codes: variable v (0-based) is 2 * v for the positive literal, 2 * v + 1 for the negative one.
TRUE = 1
FALSE = -1
UNASSIGNED = 0


def luby(y, x):
    """x-th element (0-based) of the Luby restart sequence scaled by powers of y"""
    size, seq = 1, 0
    while size < x + 1:
        seq += 1
        size = 2 * size + 1
    while size - 1 != x:
        size = (size - 1) >> 1
        seq -= 1
        x = x % size
    return y ** seq


def _code(lit):
    return 2 * (abs(lit) - 1) + (lit < 0)


def _lit(code):
    var = (code >> 1) + 1
    return -var if code & 1 else var


class SatInstance:
    """CNF over variables ``1..n_vars``; clauses are tuples of signed ints"""

    def __init__(self, n_vars, clauses):
        if not isinstance(n_vars, int) or n_vars <= 0:
            raise ValueError(f"n_vars must be a positive int, got '{n_vars}'")
        normalized = []
        for clause in clauses:
            clause = tuple(clause)
            if not clause:
                raise ValueError("Empty clause in SAT instance")
            for lit in clause:
                if lit == 0 or abs(lit) > n_vars:
                    raise ValueError(f"Literal {lit} out of range 1..{n_vars}")
            normalized.append(clause)
        self.n_vars = n_vars
        self.clauses = tuple(normalized)

    def __repr__(self):
        return f"{self.__class__.__name__}(n_vars={self.n_vars}, clauses={len(self.clauses)})"

    def is_satisfied_by(self, model):
        return all(any(model[abs(lit) - 1] == (lit > 0) for lit in clause) for clause in self.clauses)


class SatOutcome(enum.Enum):
    SATISFIABLE = "satisfiable"
    UNSATISFIABLE = "unsatisfiable"
    TIMEOUT = "timeout"


class SatResult:
    def __init__(self, outcome, model=None, conflicts=0):
        if (outcome is SatOutcome.SATISFIABLE) != (model is not None):
            raise ValueError("A model is given exactly for satisfiable results")
        self.outcome = outcome
        self.model = model
        self.conflicts = conflicts

    def __repr__(self):
        return f"{self.__class__.__name__}({self.outcome.value})"

    @property
    def satisfiable(self):
        return self.outcome is SatOutcome.SATISFIABLE

    @property
    def unsatisfiable(self):
        return self.outcome is SatOutcome.UNSATISFIABLE

    @property
    def timed_out(self):
        return self.outcome is SatOutcome.TIMEOUT

    def value(self, lit):
        return self.model[abs(lit) - 1] == (lit > 0)


class SatSolver:
    """
    Conflict-driven clause learning solver: two watched literals, first-UIP learning, activity branching
    with phase saving and a seeded tie-break, Luby restarts, and assumptions.  Learned clauses are kept
    between calls, so one handle answers a stream of queries over the same clauses cheaply.  A handle is
    not thread safe.
    """
    var_decay = 0.95
    restart_base = 100
    min_learnts = 2000
    learnt_growth = 1.1
    deadline_check_interval = 64

    def __init__(self, instance=None, seed=0):
        self.rng = random.Random(seed)
        self.n_vars = 0
        self.values = []  # per literal code
        self.level = []
        self.reason = []
        self.activity = []
        self.polarity = []  # saved phase, True is positive
        self.tiebreak = []
        self.seen = []
        self.watches = []  # per literal code: clauses to visit when that literal becomes true
        self.clauses = []
        self.learnts = []
        self.trail = []
        self.trail_lim = []
        self.qhead = 0
        self.heap = []
        self.var_inc = 1.0
        self.max_learnts = self.min_learnts
        self.ok = True
        self.conflicts = 0
        self.decisions = 0
        if instance is not None:
            self.ensure_vars(instance.n_vars)
            for clause in instance.clauses:
                self.add_clause(clause)

    def __repr__(self):
        return f"{self.__class__.__name__}(n_vars={self.n_vars}, clauses={len(self.clauses)}, learnts={len(self.learnts)})"

    def ensure_vars(self, n_vars):
        while self.n_vars < n_vars:
            v = self.n_vars
            self.n_vars += 1
            self.values.extend((UNASSIGNED, UNASSIGNED))
            self.level.append(0)
            self.reason.append(None)
            self.activity.append(0.0)
            self.polarity.append(False)
            self.tiebreak.append(self.rng.random())
            self.seen.append(False)
            self.watches.extend(([], []))
            heapq.heappush(self.heap, (0.0, self.tiebreak[v], v))

    def set_phase(self, lit):
        """Preferred polarity for the next decision on this variable (used for warm starts)"""
        self.ensure_vars(abs(lit))
        self.polarity[abs(lit) - 1] = lit > 0

    def add_clause(self, clause):
        """Add a permanent clause; returns False once the clause set is known unsatisfiable"""
        self._cancel_until(0)
        if not self.ok:
            return False
        codes = set()
        for lit in clause:
            if lit == 0:
                raise ValueError("Literal 0 is not a variable")
            self.ensure_vars(abs(lit))
            code = _code(lit)
            if code ^ 1 in codes or self.values[code] == TRUE:
                return True  # tautology or satisfied at level 0
            if self.values[code] == FALSE:
                continue
            codes.add(code)
        codes = sorted(codes)
        if not codes:
            self.ok = False
            return False
        if len(codes) == 1:
            self._enqueue(codes[0], None)
            self.ok = self._propagate() is None
            return self.ok
        self._attach(codes)
        return True

    def solve(self, assumptions=(), conflict_budget=None, deadline=None):
        """
        Decide the clauses under ``assumptions`` (signed ints).  ``conflict_budget`` bounds the conflicts of
        this call, ``deadline`` is an absolute ``time.monotonic()`` value; exhausting either gives TIMEOUT.
        """
        self._cancel_until(0)
        if not self.ok:
            return SatResult(SatOutcome.UNSATISFIABLE)
        codes = []
        chosen = set()
        for lit in assumptions:
            if lit == 0:
                raise ValueError("Literal 0 is not a variable")
            self.ensure_vars(abs(lit))
            code = _code(lit)
            if code ^ 1 in chosen:
                return SatResult(SatOutcome.UNSATISFIABLE)
            if code not in chosen:
                chosen.add(code)
                codes.append(code)
        start = self.conflicts
        restarts = 0
        restart_limit = self.restart_base * luby(2, restarts)
        since_restart = 0
        while True:
            confl = self._propagate()
            if confl is not None:
                self.conflicts += 1
                since_restart += 1
                if not self.trail_lim:
                    self.ok = False
                    return SatResult(SatOutcome.UNSATISFIABLE, conflicts=self.conflicts - start)
                learnt, backtrack = self._analyze(confl)
                self._cancel_until(backtrack)
                if len(learnt) == 1:
                    self._enqueue(learnt[0], None)
                else:
                    self._enqueue(learnt[0], self._attach(learnt, learnt=True))
                self.var_inc /= self.var_decay
                used = self.conflicts - start
                if conflict_budget is not None and used >= conflict_budget:
                    self._cancel_until(0)
                    return SatResult(SatOutcome.TIMEOUT, conflicts=used)
                if deadline is not None and used % self.deadline_check_interval == 0 and time.monotonic() >= deadline:
                    self._cancel_until(0)
                    return SatResult(SatOutcome.TIMEOUT, conflicts=used)
                continue
            if since_restart >= restart_limit:
                restarts += 1
                since_restart = 0
                restart_limit = self.restart_base * luby(2, restarts)
                self._cancel_until(0)
                if len(self.learnts) >= self.max_learnts:
                    self._reduce_db()
                continue
            level = len(self.trail_lim)
            if level < len(codes):
                nxt = codes[level]
                if self.values[nxt] == TRUE:
                    self.trail_lim.append(len(self.trail))  # dummy level keeps assumption i at level i + 1
                    continue
                if self.values[nxt] == FALSE:
                    self._cancel_until(0)
                    return SatResult(SatOutcome.UNSATISFIABLE, conflicts=self.conflicts - start)
            else:
                nxt = self._pick_branch()
                if nxt is None:
                    model = tuple(self.values[2 * v] == TRUE for v in range(self.n_vars))
                    self._cancel_until(0)
                    return SatResult(SatOutcome.SATISFIABLE, model, conflicts=self.conflicts - start)
                self.decisions += 1
            self.trail_lim.append(len(self.trail))
            self._enqueue(nxt, None)

    def _attach(self, codes, learnt=False):
        index = len(self.clauses)
        self.clauses.append(list(codes))
        self.watches[codes[0] ^ 1].append(index)
        self.watches[codes[1] ^ 1].append(index)
        if learnt:
            self.learnts.append(index)
        return index

    def _enqueue(self, code, reason):
        self.values[code] = TRUE
        self.values[code ^ 1] = FALSE
        var = code >> 1
        self.level[var] = len(self.trail_lim)
        self.reason[var] = reason
        self.trail.append(code)

    def _cancel_until(self, level):
        if len(self.trail_lim) <= level:
            return
        start = self.trail_lim[level]
        values, trail = self.values, self.trail
        for i in range(len(trail) - 1, start - 1, -1):
            code = trail[i]
            var = code >> 1
            values[code] = UNASSIGNED
            values[code ^ 1] = UNASSIGNED
            self.reason[var] = None
            self.polarity[var] = not code & 1
            heapq.heappush(self.heap, (-self.activity[var], self.tiebreak[var], var))
        del trail[start:]
        del self.trail_lim[level:]
        self.qhead = len(trail)

    def _propagate(self):
        values, clauses, watches, trail = self.values, self.clauses, self.watches, self.trail
        while self.qhead < len(trail):
            p = trail[self.qhead]
            self.qhead += 1
            false_lit = p ^ 1
            ws = watches[p]
            watches[p] = kept = []
            i, n = 0, len(ws)
            while i < n:
                ci = ws[i]
                i += 1
                c = clauses[ci]
                if c is None:  # deleted learnt clause
                    continue
                if c[0] == false_lit:
                    c[0] = c[1]
                    c[1] = false_lit
                first = c[0]
                if values[first] == TRUE:
                    kept.append(ci)
                    continue
                for k in range(2, len(c)):
                    lit = c[k]
                    if values[lit] != FALSE:
                        c[1] = lit
                        c[k] = false_lit
                        watches[lit ^ 1].append(ci)
                        break
                else:
                    kept.append(ci)
                    if values[first] == FALSE:
                        kept.extend(ws[i:])
                        self.qhead = len(trail)
                        return ci
                    self._enqueue(first, ci)
        return None

    def _analyze(self, confl):
        seen, level, trail = self.seen, self.level, self.trail
        current = len(self.trail_lim)
        learnt = [0]
        pending = 0
        p = None
        index = len(trail) - 1
        while True:
            clause = self.clauses[confl]
            for q in (clause if p is None else clause[1:]):
                var = q >> 1
                if not seen[var] and level[var] > 0:
                    seen[var] = True
                    self._bump(var)
                    if level[var] >= current:
                        pending += 1
                    else:
                        learnt.append(q)
            while not seen[trail[index] >> 1]:
                index -= 1
            p = trail[index]
            index -= 1
            var = p >> 1
            seen[var] = False
            pending -= 1
            if pending <= 0:
                break
            confl = self.reason[var]
        learnt[0] = p ^ 1
        for q in learnt[1:]:
            seen[q >> 1] = False
        if len(learnt) == 1:
            return learnt, 0
        best = 1
        for i in range(2, len(learnt)):
            if level[learnt[i] >> 1] > level[learnt[best] >> 1]:
                best = i
        learnt[1], learnt[best] = learnt[best], learnt[1]
        return learnt, level[learnt[1] >> 1]

    def _bump(self, var):
        self.activity[var] += self.var_inc
        if self.activity[var] > 1e100:
            self.activity = [a * 1e-100 for a in self.activity]
            self.var_inc *= 1e-100
            self._rebuild_heap()
        elif self.values[2 * var] == UNASSIGNED:
            heapq.heappush(self.heap, (-self.activity[var], self.tiebreak[var], var))

    def _rebuild_heap(self):
        self.heap = [(-self.activity[v], self.tiebreak[v], v) for v in range(self.n_vars)
                     if self.values[2 * v] == UNASSIGNED]
        heapq.heapify(self.heap)

    def _pick_branch(self):
        if len(self.heap) > 4 * self.n_vars + 1000:
            self._rebuild_heap()
        heap, values, activity = self.heap, self.values, self.activity
        while heap:
            neg_activity, _, var = heapq.heappop(heap)
            if values[2 * var] != UNASSIGNED or -neg_activity != activity[var]:
                continue  # assigned or stale entry
            return 2 * var + (0 if self.polarity[var] else 1)
        return None

    def _locked(self, index):
        clause = self.clauses[index]
        return self.reason[clause[0] >> 1] == index and self.values[clause[0]] == TRUE

    def _reduce_db(self):
        """Drop the longer half of the learnt clauses that are neither binary nor a current reason"""
        candidates = sorted((i for i in self.learnts if len(self.clauses[i]) > 2 and not self._locked(i)),
                            key=lambda i: (len(self.clauses[i]), i))
        doomed = set(candidates[len(candidates) // 2:])
        for i in doomed:
            self.clauses[i] = None
        self.learnts = [i for i in self.learnts if i not in doomed]
        self.max_learnts = int(self.max_learnts * self.learnt_growth)
        logger.debug(f"Reduced learnt clauses by {len(doomed)}, {len(self.learnts)} left")


def solve(instance, assumptions=(), conflict_budget=None, deadline=None, seed=0):
    """One-shot solve on a fresh handle"""
    return SatSolver(instance, seed=seed).solve(assumptions, conflict_budget=conflict_budget, deadline=deadline)

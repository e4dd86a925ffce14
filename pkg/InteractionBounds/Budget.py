import time


class Budget:
    """
    Limits for an anytime computation.  Any combination of wall-clock seconds, SAT conflicts and
    branch-and-bound nodes; ``None`` means unlimited.  Work is charged by the callee via :py:meth:`charge`.
    """

    def __init__(self, seconds=None, conflicts=None, nodes=None):
        for name, value in (("seconds", seconds), ("conflicts", conflicts), ("nodes", nodes)):
            if value is not None and value < 0:
                raise ValueError(f"Budget {name} must be non-negative, got {value}")
        self.seconds = seconds
        self.conflicts = conflicts
        self.nodes = nodes
        self.started = time.monotonic()
        self.deadline = None if seconds is None else self.started + seconds
        self.used_conflicts = 0
        self.used_nodes = 0

    def __repr__(self):
        return f"{self.__class__.__name__}(seconds={self.seconds}, conflicts={self.conflicts}, nodes={self.nodes})"

    @classmethod
    def unlimited(cls):
        return cls()

    @classmethod
    def until(cls, deadline):
        """Wall-clock budget ending at an absolute ``time.monotonic()`` value"""
        return cls(seconds=max(0.0, deadline - time.monotonic()))

    @property
    def is_unlimited(self):
        return self.seconds is None and self.conflicts is None and self.nodes is None

    def charge(self, conflicts=0, nodes=0):
        self.used_conflicts += conflicts
        self.used_nodes += nodes

    def elapsed(self):
        return time.monotonic() - self.started

    def conflicts_left(self):
        if self.conflicts is None:
            return None
        return max(0, self.conflicts - self.used_conflicts)

    def nodes_left(self):
        if self.nodes is None:
            return None
        return max(0, self.nodes - self.used_nodes)

    def expired(self):
        if self.deadline is not None and time.monotonic() >= self.deadline:
            return True
        if self.conflicts is not None and self.used_conflicts >= self.conflicts:
            return True
        if self.nodes is not None and self.used_nodes >= self.nodes:
            return True
        return False

    def fraction_used(self):
        """Largest consumed fraction over the limits that are set; 0.0 for an unlimited budget"""
        fractions = [0.0]
        if self.seconds:
            fractions.append(self.elapsed() / self.seconds)
        if self.conflicts:
            fractions.append(self.used_conflicts / self.conflicts)
        if self.nodes:
            fractions.append(self.used_nodes / self.nodes)
        return max(fractions)

    def slice(self, fraction):
        """A fresh budget holding ``fraction`` of what is left of every limit"""
        if not 0 < fraction <= 1:
            raise ValueError(f"Budget fraction must be in (0, 1], got {fraction}")
        seconds = None
        if self.deadline is not None:
            seconds = max(0.0, self.deadline - time.monotonic()) * fraction
        conflicts = self.conflicts_left()
        if conflicts is not None:
            conflicts = int(conflicts * fraction)
        nodes = self.nodes_left()
        if nodes is not None:
            nodes = int(nodes * fraction)
        return Budget(seconds=seconds, conflicts=conflicts, nodes=nodes)

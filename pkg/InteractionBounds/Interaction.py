import logging

logger = logging.getLogger("InteractionBounds")


class Interaction:
    """
    Assignment of values to distinct features, kept as a tuple of signed literals sorted by feature.
    Accepts literals as arguments or as one iterable: ``Interaction(1, -3) == Interaction([-3, 1])``.
    """

    def __init__(self, *args):
        if len(args) == 1 and not isinstance(args[0], int):
            args = args[0]
        if isinstance(args, Interaction):
            self._literals = args.literals
            return
        try:
            self.literals = list(args)  # Triggers the setter
        except TypeError:
            raise TypeError(f"Expected signed ints or an iterable of them, got '{type(args)}'")

    def __repr__(self):
        return self.__class__.__name__ + "(" + ", ".join(str(x) for x in self._literals) + ")"

    def __str__(self):
        return " ".join(str(x) for x in self._literals)

    def __hash__(self):
        return hash(self._literals)

    def __eq__(self, other):
        if not isinstance(other, Interaction):
            return NotImplemented
        return self._literals == other._literals

    def __lt__(self, other):
        return self.sort_key < other.sort_key

    def __len__(self):
        return len(self._literals)

    def __iter__(self):
        return iter(self._literals)

    def __contains__(self, literal):
        return literal in self._literals

    @property
    def literals(self):
        return self._literals

    @literals.setter
    def literals(self, literals):
        features = set()
        for lit in literals:
            if not isinstance(lit, int) or isinstance(lit, bool) or lit == 0:
                raise ValueError(f"Literals are nonzero ints, got '{lit}'")
            if abs(lit) in features:
                raise ValueError(f"Feature {abs(lit)} appears twice in an interaction")
            features.add(abs(lit))
        if not features:
            raise ValueError("An interaction needs at least one literal")
        self._literals = tuple(sorted(literals, key=abs))

    @property
    def t(self):
        return len(self._literals)

    @property
    def features(self):
        return tuple(abs(x) for x in self._literals)

    @property
    def sort_key(self):
        return tuple((abs(x), x > 0) for x in self._literals)

    def conflicts_with(self, other):
        """True if the two interactions contain complementary literals"""
        return any(-lit in other._literals for lit in self._literals)

    def union(self, other):
        """Literals of both interactions, or None if they contradict"""
        if self.conflicts_with(other):
            return None
        return tuple(sorted(set(self._literals) | set(other._literals), key=abs))

    @classmethod
    def from_line(cls, line):
        try:
            return cls([int(x) for x in line.split()])
        except ValueError:
            raise ValueError(f"Cannot read an interaction from '{line.strip()}'")


def write_interactions(interactions):
    """One interaction per line, sorted"""
    return "".join(str(i) + "\n" for i in sorted(interactions))


def read_interactions(text):
    return [Interaction.from_line(line) for line in text.splitlines() if line.strip() and not line.startswith("c")]

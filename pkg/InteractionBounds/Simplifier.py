import logging

from InteractionBounds.FeatureModel import FeatureModel
from InteractionBounds.exceptions import UnsatisfiableModelError

logger = logging.getLogger("InteractionBounds")


class Simplifier:
    """Unit propagation and merging of equivalent literals, repeated until nothing changes"""

    def __init__(self, model):
        self.model = model
        self.fixed = model.fixed
        self.aliases = model.aliases
        self.clauses = list(model.clauses)

    def resolve(self, literal):
        feature, positive = abs(literal), literal > 0
        while True:
            if feature in self.fixed:
                return self.fixed[feature] == positive
            if feature in self.aliases:
                rep = self.aliases[feature]
                positive = positive == (rep > 0)
                feature = abs(rep)
                continue
            return feature if positive else -feature

    def substitute(self):
        out = set()
        for clause in self.clauses:
            lits = set()
            satisfied = False
            for lit in clause:
                resolved = self.resolve(lit)
                if resolved is True or (resolved is not False and -resolved in lits):
                    satisfied = True
                    break
                if resolved is not False:
                    lits.add(resolved)
            if satisfied:
                continue
            if not lits:
                raise UnsatisfiableModelError(f"Simplifying '{self.model.name}' derived an empty clause")
            out.add(tuple(sorted(lits, key=abs)))
        self.clauses = sorted(out, key=lambda c: (len(c), [(abs(x), x) for x in c]))

    def propagate_units(self):
        changed = False
        for clause in self.clauses:
            if len(clause) != 1:
                continue
            lit = clause[0]
            feature = abs(lit)
            if self.fixed.get(feature, lit > 0) != (lit > 0):
                raise UnsatisfiableModelError(f"Feature {feature} of '{self.model.name}' is forced both ways")
            if feature not in self.fixed:
                self.fixed[feature] = lit > 0
                changed = True
        return changed

    def merge_equivalences(self):
        binary = {frozenset(c) for c in self.clauses if len(c) == 2}
        changed = False
        for clause in self.clauses:
            if len(clause) != 2:
                continue
            a, b = clause
            if frozenset((-a, -b)) not in binary:
                continue
            # (a or b) and (-a or -b): the literals b and -a are equivalent
            x, y = self.resolve(-a), self.resolve(b)
            if x == y:
                continue
            if x == -y:
                raise UnsatisfiableModelError(f"Literal {x} of '{self.model.name}' is equivalent to its negation")
            if abs(x) > abs(y):
                x, y = y, x
            self.aliases[abs(y)] = x if y > 0 else -x
            changed = True
        return changed

    def run(self):
        while True:
            self.substitute()
            if self.propagate_units():
                continue
            if not self.merge_equivalences():
                break
        # Point every alias straight at a free representative
        for feature in sorted(self.aliases):
            resolved = self.resolve(feature)
            if isinstance(resolved, bool):
                del self.aliases[feature]
                self.fixed[feature] = resolved
            else:
                self.aliases[feature] = resolved
        logger.debug(f"Simplified '{self.model.name}': {len(self.model.clauses)} -> {len(self.clauses)} clauses, "
                     f"{len(self.fixed)} fixed, {len(self.aliases)} merged")
        return FeatureModel(self.model.n_features, self.clauses, self.model.concrete_features, name=self.model.name,
                            fixed=self.fixed, aliases=self.aliases, check_satisfiable=False)


def simplify(model):
    return Simplifier(model).run()

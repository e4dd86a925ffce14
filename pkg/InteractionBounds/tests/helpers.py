"""Brute-force oracles and small models shared by the tests"""
import itertools
import random

from InteractionBounds import Configuration, FeatureModel, Interaction

TOY4_CLAUSES = [[1, 2], [3, 4]]
LB_EXAMPLE_CLAUSES = [[-1, -3]]


def toy4():
    return FeatureModel(4, TOY4_CLAUSES, name="toy4")


def lb_example():
    return FeatureModel(3, LB_EXAMPLE_CLAUSES, name="lbexample")


def unconstrained(n):
    return FeatureModel(n, [], name=f"free{n}")


def config(*literals):
    return Configuration.from_literals(literals, len(literals))


def all_configurations(model):
    configs = (Configuration(values) for values in itertools.product([True, False], repeat=model.n_features))
    return [c for c in configs if model.is_valid(c)]


def candidate_interactions(model, t=2):
    features = sorted(model.concrete_features)
    out = []
    for combo in itertools.combinations(features, t):
        for signs in itertools.product([1, -1], repeat=t):
            out.append(Interaction([s * f for s, f in zip(signs, combo)]))
    return out


def valid_interactions(model, t=2):
    configs = all_configurations(model)
    return {i for i in candidate_interactions(model, t) if any(c.contains_all(i.literals) for c in configs)}


def jointly_valid(configs, first, second):
    literals = Interaction.union(first, second)
    if literals is None:
        return False
    return any(c.contains_all(literals) for c in configs)


def max_exclusive_set(interactions, configs):
    """Size of a largest pairwise exclusive subset, by plain branch and bound"""
    interactions = list(interactions)
    exclusive = {(a, b): not jointly_valid(configs, a, b) for a in interactions for b in interactions if a != b}
    best = [0]

    def grow(chosen, rest):
        if len(chosen) + len(rest) <= best[0]:
            return
        if not rest:
            best[0] = len(chosen)
            return
        head, tail = rest[0], rest[1:]
        grow(chosen + [head], [x for x in tail if exclusive[(head, x)]])
        grow(chosen, tail)

    grow([], interactions)
    return best[0]


def covers(sample, required):
    return all(any(c.contains_all(i.literals) for c in sample) for i in required)


def min_cover_size(configs, required, limit=None):
    """Fewest of ``configs`` covering ``required``; None if none within ``limit`` configurations"""
    required = list(required)
    limit = len(required) if limit is None else limit
    cover_sets = [frozenset(j for j, i in enumerate(required) if c.contains_all(i.literals)) for c in configs]
    covering = [[k for k, cover in enumerate(cover_sets) if j in cover] for j in range(len(required))]
    widest = max((len(cover) for cover in cover_sets), default=0)

    def search(uncovered, depth):
        if not uncovered:
            return True
        if depth * widest < len(uncovered):
            return False
        # branch on the interaction with the fewest covering configurations
        j = min(uncovered, key=lambda x: len(covering[x]))
        return any(search(uncovered - cover_sets[k], depth - 1) for k in covering[j])

    for k in range(limit + 1):
        if search(frozenset(range(len(required))), k):
            return k
    return None


def random_3cnf(rng, n, ratio):
    """Satisfiable random 3-CNF with about ``ratio * n`` clauses"""
    while True:
        clauses = []
        for _ in range(max(1, round(ratio * n))):
            features = rng.sample(range(1, n + 1), 3)
            clauses.append([f if rng.random() < 0.5 else -f for f in features])
        model = FeatureModel(n, clauses, name=f"random{n}", check_satisfiable=False)
        if all_configurations(model):
            return FeatureModel(n, clauses, name=f"random{n}")


def random_models(count, n_range, ratio_range, seed):
    rng = random.Random(seed)
    return [random_3cnf(rng, rng.randint(*n_range), rng.uniform(*ratio_range)) for _ in range(count)]

import hashlib
import json
import logging
import os

from InteractionBounds.Configuration import Configuration
from InteractionBounds.ModelOracle import ModelOracle
from InteractionBounds.SatSolver import SatInstance
from InteractionBounds.exceptions import (IncompleteAssignmentError, ModelFormatError,
                                          UnsatisfiableModelError)

logger = logging.getLogger("InteractionBounds")


def normalize_clause(literals, n_features):
    """Deduplicated clause sorted by feature, or None for a tautology"""
    seen = set()
    for lit in literals:
        if not isinstance(lit, int) or isinstance(lit, bool):
            raise ModelFormatError(f"Literal must be an int, got '{lit}'")
        if lit == 0 or abs(lit) > n_features:
            raise ModelFormatError(f"Out-of-range literal {lit} for {n_features} features")
        if -lit in seen:
            return None
        seen.add(lit)
    return tuple(sorted(seen, key=abs))


class FeatureModel:
    """
    Boolean features ``1..n_features``, CNF clauses and the concrete features whose interactions count.

    A simplified model also carries ``fixed`` (feature to forced value) and ``aliases`` (feature to the
    signed literal of its representative).  Those features do not occur in ``clauses``; their values are
    rebuilt by :py:meth:`reconstruct`.
    """

    def __init__(self, n_features, clauses=(), concrete_features=None, name="model", fixed=None, aliases=None,
                 check_satisfiable=True):
        if not isinstance(n_features, int) or isinstance(n_features, bool) or n_features <= 0:
            raise ModelFormatError(f"n_features must be a positive int, got '{n_features}'")
        self._n_features = n_features
        normalized = set()
        for clause in clauses:
            clause = normalize_clause(clause, n_features)
            if clause is None:
                continue
            if not clause:
                raise UnsatisfiableModelError(f"Model '{name}' contains an empty clause")
            normalized.add(clause)
        self._clauses = tuple(sorted(normalized, key=lambda c: (len(c), [(abs(x), x) for x in c])))
        if concrete_features is None:
            concrete_features = range(1, n_features + 1)
        concrete = frozenset(concrete_features)
        if not concrete:
            raise ModelFormatError("At least one concrete feature is required")
        for feature in concrete:
            if not isinstance(feature, int) or isinstance(feature, bool) or not 1 <= feature <= n_features:
                raise ModelFormatError(f"Concrete feature {feature} out of range 1..{n_features}")
        self._concrete = concrete
        self._name = str(name)
        self._fixed = dict(fixed or {})
        self._aliases = dict(aliases or {})
        self._hash = None
        if check_satisfiable:
            self._check_satisfiable()

    def __repr__(self):
        return (f"{self.__class__.__name__}({self._name!r}, n_features={self._n_features}, "
                f"clauses={len(self._clauses)}, concrete={len(self._concrete)})")

    def __eq__(self, other):
        if not isinstance(other, FeatureModel):
            return NotImplemented
        return self._key() == other._key()

    def __hash__(self):
        return hash(self.content_hash)

    @property
    def n_features(self):
        return self._n_features

    @property
    def clauses(self):
        return self._clauses

    @property
    def concrete_features(self):
        return self._concrete

    @property
    def name(self):
        return self._name

    @property
    def fixed(self):
        return dict(self._fixed)

    @property
    def aliases(self):
        return dict(self._aliases)

    @property
    def content_hash(self):
        if self._hash is None:
            self._hash = hashlib.sha256(json.dumps(self._key(), separators=(",", ":")).encode("utf-8")).hexdigest()
        return self._hash

    def _key(self):
        return [self._name, self._n_features, [list(c) for c in self._clauses], sorted(self._concrete),
                sorted(self._fixed.items()), sorted(self._aliases.items())]

    def _check_satisfiable(self):
        if ModelOracle(self).solve().unsatisfiable:
            raise UnsatisfiableModelError(f"Model '{self._name}' is unsatisfiable")
        logger.debug(f"Model '{self._name}' is satisfiable")

    def sat_instance(self):
        return SatInstance(self._n_features, self._clauses)

    def resolve(self, literal):
        """True / False if the literal's value is forced, else the literal it is equivalent to"""
        feature = abs(literal)
        positive = literal > 0
        if feature in self._fixed:
            return self._fixed[feature] == positive
        if feature in self._aliases:
            rep = self._aliases[feature]
            return rep if positive else -rep
        return literal

    def translate(self, literals):
        """Literals over the clause variables equivalent to ``literals``, or None if they contradict the model"""
        out = []
        for lit in literals:
            if lit == 0 or abs(lit) > self._n_features:
                raise ValueError(f"Literal {lit} out of range 1..{self._n_features}")
            resolved = self.resolve(lit)
            if resolved is True:
                continue
            if resolved is False:
                return None
            out.append(resolved)
        return out

    def reconstruct(self, values):
        """Complete Configuration from an assignment of the clause variables"""
        values = list(values)
        for feature, value in self._fixed.items():
            values[feature - 1] = value
        for feature, rep in self._aliases.items():
            values[feature - 1] = values[abs(rep) - 1] == (rep > 0)
        return Configuration(values)

    def configuration(self, values):
        if len(values) != self._n_features:
            raise IncompleteAssignmentError(f"Expected {self._n_features} values, got {len(values)}")
        return Configuration(values)

    def is_valid(self, config):
        if len(config) != self._n_features:
            raise IncompleteAssignmentError(f"Configuration has {len(config)} features, model '{self._name}' has {self._n_features}")
        values = config.values
        for feature, value in self._fixed.items():
            if values[feature - 1] != value:
                return False
        for feature, rep in self._aliases.items():
            if values[feature - 1] != (values[abs(rep) - 1] == (rep > 0)):
                return False
        return all(any(values[abs(lit) - 1] == (lit > 0) for lit in clause) for clause in self._clauses)

    def to_dimacs(self):
        lines = [f"c model {self._name}", f"p cnf {self._n_features} {len(self._clauses)}"]
        lines.extend(" ".join(str(x) for x in clause) + " 0" for clause in self._clauses)
        return "\n".join(lines) + "\n"

    def to_json(self):
        return json.dumps({
            "name": self._name,
            "n_features": self._n_features,
            "clauses": [list(c) for c in self._clauses],
            "concrete_features": sorted(self._concrete),
        }, indent=2)


def is_valid_configuration(model, config):
    return model.is_valid(config)


def _decode(data):
    if isinstance(data, (bytes, bytearray)):
        try:
            return data.decode("utf-8")
        except UnicodeDecodeError as e:
            raise ModelFormatError(f"Model is not UTF-8 text: {e}")
    return data


def parse_dimacs(data, name="model"):
    """FeatureModel from DIMACS CNF text or bytes.  All variables are concrete."""
    text = _decode(data)
    n_vars = n_clauses = None
    clauses = []
    current = []
    for number, line in enumerate(text.splitlines(), start=1):
        line = line.strip()
        if not line or line.startswith("c"):
            continue
        if line.startswith("%"):  # SATLIB end marker
            break
        if line.startswith("p"):
            parts = line.split()
            if n_vars is not None:
                raise ModelFormatError("Second header", line=number)
            if len(parts) != 4 or parts[1] != "cnf":
                raise ModelFormatError("Bad header", line=number)
            try:
                n_vars, n_clauses = int(parts[2]), int(parts[3])
            except ValueError:
                raise ModelFormatError("Bad header", line=number)
            if n_vars <= 0 or n_clauses < 0:
                raise ModelFormatError("Bad header", line=number)
            continue
        if n_vars is None:
            raise ModelFormatError("Clause before header", line=number)
        for token in line.split():
            try:
                lit = int(token)
            except ValueError:
                raise ModelFormatError(f"Bad literal '{token}'", line=number)
            if lit == 0:
                if not current:
                    raise UnsatisfiableModelError(f"Line {number}. Empty clause")
                clauses.append(current)
                current = []
            elif abs(lit) > n_vars:
                raise ModelFormatError(f"Out-of-range literal {lit}", line=number)
            else:
                current.append(lit)
    if n_vars is None:
        raise ModelFormatError("Missing 'p cnf' header")
    if current:
        logger.warning(f"Last clause of '{name}' is not terminated by 0, accepting it")
        clauses.append(current)
    if len(clauses) != n_clauses:
        logger.warning(f"Header of '{name}' declares {n_clauses} clauses, found {len(clauses)}")
    return FeatureModel(n_vars, clauses, name=name)


def parse_model_file(data, name=None):
    """
    FeatureModel from the structured JSON document
    ``{"name": str, "n_features": int, "clauses": [[int, ...], ...], "concrete_features": [int, ...]}``
    """
    text = _decode(data)
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise ModelFormatError(f"Not a JSON document: {e}")
    if not isinstance(doc, dict):
        raise ModelFormatError("Model document must be a JSON object")
    for key, kind in (("n_features", int), ("clauses", list), ("concrete_features", list)):
        if key not in doc:
            raise ModelFormatError(f"Model document lacks '{key}'")
        if not isinstance(doc[key], kind) or isinstance(doc[key], bool):
            raise ModelFormatError(f"'{key}' must be of type {kind.__name__}")
    for clause in doc["clauses"]:
        if not isinstance(clause, list):
            raise ModelFormatError("Every clause must be a list of ints")
        if not clause:
            raise UnsatisfiableModelError("Model document contains an empty clause")
    doc_name = doc.get("name", name or "model")
    if not isinstance(doc_name, str):
        raise ModelFormatError("'name' must be a string")
    return FeatureModel(doc["n_features"], doc["clauses"], doc["concrete_features"], name=doc_name)


def load_model(path):
    """Parse by extension: ``.json`` is the structured format, anything else DIMACS"""
    name = os.path.splitext(os.path.basename(path))[0]
    try:
        with open(path, "rb") as f:
            data = f.read()
    except OSError as e:
        raise ModelFormatError(f"Cannot read model file '{path}': {e}")
    if path.lower().endswith(".json"):
        return parse_model_file(data, name=name)
    return parse_dimacs(data, name=name)

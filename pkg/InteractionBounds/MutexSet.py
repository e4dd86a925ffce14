import logging

from InteractionBounds.Interaction import Interaction
from InteractionBounds.MutexChecker import MutexLevel
from InteractionBounds.exceptions import ModelFormatError

logger = logging.getLogger("InteractionBounds")


class MutexSet:
    """
    Valid, pairwise mutually exclusive interactions.  Its size bounds every full-coverage sample from below.
    ``level`` is the predicate every pair was established with; ``optimal`` marks a proven maximum for the
    candidates it was computed over.  ``model_name``/``model_hash`` are set when read from a certificate file.
    """

    def __init__(self, interactions=(), level=MutexLevel.L0, optimal=False, model_name=None, model_hash=None):
        self.interactions = interactions  # Triggers the setter
        self.level = MutexLevel(level)
        self.optimal = optimal
        self.model_name = model_name
        self.model_hash = model_hash

    def __repr__(self):
        return f"{self.__class__.__name__}(size={len(self)}, level={self.level.name})"

    def __len__(self):
        return len(self._interactions)

    def __iter__(self):
        return iter(self._interactions)

    def __contains__(self, interaction):
        return interaction in self._members

    def __eq__(self, other):
        if not isinstance(other, MutexSet):
            return NotImplemented
        return self._members == other._members

    def __hash__(self):
        return hash(self._members)

    @property
    def interactions(self):
        return self._interactions

    @interactions.setter
    def interactions(self, interactions):
        members = frozenset(Interaction(x) for x in interactions)
        self._members = members
        self._interactions = tuple(sorted(members))

    def to_text(self, model_name, t, model_hash=None):
        lines = [f"lb-cert {name_token(model_name)} {t} {len(self)}"]
        if model_hash:
            lines.append(f"c model-hash {model_hash}")
        lines.extend(str(i) for i in self._interactions)
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text):
        lines = text.splitlines()
        if not lines:
            raise ModelFormatError("Empty certificate file")
        header = lines[0].split()
        if len(header) != 4 or header[0] != "lb-cert":
            raise ModelFormatError("Bad header, expected 'lb-cert <model-name> <t> <count>'", line=1)
        try:
            t, count = int(header[2]), int(header[3])
        except ValueError:
            raise ModelFormatError("Bad header, expected 'lb-cert <model-name> <t> <count>'", line=1)
        model_hash = None
        interactions = []
        for number, line in enumerate(lines[1:], start=2):
            if not line.strip():
                continue
            if line.startswith("c"):
                parts = line.split()
                if len(parts) == 3 and parts[1] == "model-hash":
                    model_hash = parts[2]
                continue
            try:
                interaction = Interaction.from_line(line)
            except ValueError as e:
                raise ModelFormatError(str(e), line=number)
            if interaction.t != t:
                raise ModelFormatError(f"Interaction {interaction} does not have strength {t}", line=number)
            interactions.append(interaction)
        if len(interactions) != count:
            raise ModelFormatError(f"Header declares {count} interactions, found {len(interactions)}")
        result = cls(interactions, model_name=header[1], model_hash=model_hash)
        if len(result) != count:
            raise ModelFormatError("Certificate lists an interaction twice")
        return result


def name_token(name):
    """Model name as a single whitespace-free token for file headers"""
    return "_".join(str(name).split()) or "model"

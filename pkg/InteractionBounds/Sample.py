import logging

from InteractionBounds.Configuration import Configuration
from InteractionBounds.MutexSet import name_token
from InteractionBounds.exceptions import ModelFormatError

logger = logging.getLogger("InteractionBounds")


class Sample:
    """Ordered configurations.  ``model_name``/``model_hash`` are set when read from a sample file."""

    def __init__(self, configurations=(), model_name=None, model_hash=None):
        self.configurations = list(configurations)
        for config in self.configurations:
            if not isinstance(config, Configuration):
                raise TypeError(f"Expected Configuration, got '{type(config)}'")
        self.model_name = model_name
        self.model_hash = model_hash

    def __repr__(self):
        return f"{self.__class__.__name__}(size={len(self)})"

    def __len__(self):
        return len(self.configurations)

    def __iter__(self):
        return iter(self.configurations)

    def __getitem__(self, position):
        return self.configurations[position]

    def __eq__(self, other):
        if not isinstance(other, Sample):
            return NotImplemented
        return self.configurations == other.configurations

    def without(self, positions):
        positions = set(positions)
        return Sample([c for i, c in enumerate(self.configurations) if i not in positions])

    def subset(self, positions):
        return Sample([self.configurations[i] for i in positions])

    def deduplicated(self):
        seen = set()
        out = []
        for config in self.configurations:
            if config not in seen:
                seen.add(config)
                out.append(config)
        return Sample(out)

    def to_text(self, model_name, model_hash=None):
        lines = [f"sample {name_token(model_name)} {len(self)}"]
        if model_hash:
            lines.append(f"c model-hash {model_hash}")
        lines.extend(str(c) for c in self.configurations)
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text, n_features):
        """
        Parse a sample file.  A line listing fewer than ``n_features`` features still loads; verification
        reports it as an incomplete configuration.
        """
        lines = text.splitlines()
        if not lines:
            raise ModelFormatError("Empty sample file")
        header = lines[0].split()
        if len(header) != 3 or header[0] != "sample":
            raise ModelFormatError("Bad header, expected 'sample <model-name> <count>'", line=1)
        try:
            count = int(header[2])
        except ValueError:
            raise ModelFormatError("Bad header, expected 'sample <model-name> <count>'", line=1)
        model_hash = None
        configurations = []
        for number, line in enumerate(lines[1:], start=2):
            if not line.strip():
                continue
            if line.startswith("c"):
                parts = line.split()
                if len(parts) == 3 and parts[1] == "model-hash":
                    model_hash = parts[2]
                continue
            try:
                literals = [int(x) for x in line.split()]
            except ValueError:
                raise ModelFormatError(f"Bad literal in '{line.strip()}'", line=number)
            configurations.append(_configuration(literals, n_features, number))
        if len(configurations) != count:
            raise ModelFormatError(f"Header declares {count} configurations, found {len(configurations)}")
        return cls(configurations, model_name=header[1], model_hash=model_hash)


def _configuration(literals, n_features, number):
    for lit in literals:
        if lit == 0 or abs(lit) > n_features:
            raise ModelFormatError(f"Out-of-range literal {lit}", line=number)
    values = [lit > 0 for lit in sorted(literals, key=abs)]
    if sorted(abs(x) for x in literals) != list(range(1, len(literals) + 1)):
        raise ModelFormatError("Configuration must list features 1..n once each", line=number)
    return Configuration(values)

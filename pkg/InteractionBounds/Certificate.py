import dataclasses
import enum
import json
import logging

from InteractionBounds.InteractionUniverse import enumerate_universe
from InteractionBounds.MutexSet import MutexSet, name_token
from InteractionBounds.Sample import Sample
from InteractionBounds.Verification import verify_mutex_certificate, verify_sample
from InteractionBounds.exceptions import ArtifactMismatchError, ModelFormatError

logger = logging.getLogger("InteractionBounds")


class BoundStatus(enum.Enum):
    OPTIMAL = "optimal"
    GAP = "gap"


@dataclasses.dataclass
class GapReport:
    """Verified pair of bounds.  ``ratio`` is ub / lb, ``None`` when lb is 0 and ub is not."""
    model: str
    hash: str
    ub: int
    lb: int
    ratio: float
    status: BoundStatus
    t_last_ub_s: float = 0.0
    t_last_lb_s: float = 0.0

    def __post_init__(self):
        self.status = BoundStatus(self.status)
        if self.lb > self.ub:
            raise ValueError(f"Lower bound {self.lb} exceeds upper bound {self.ub}")
        if (self.status is BoundStatus.OPTIMAL) != (self.lb == self.ub):
            raise ValueError(f"Status {self.status.value} does not match ub={self.ub}, lb={self.lb}")

    @classmethod
    def from_bounds(cls, model, ub, lb, t_last_ub_s=0.0, t_last_lb_s=0.0):
        if lb:
            ratio = ub / lb
        else:
            ratio = 1.0 if ub == 0 else None
        status = BoundStatus.OPTIMAL if ub == lb else BoundStatus.GAP
        return cls(model.name, model.content_hash, ub, lb, ratio, status, round(t_last_ub_s, 3), round(t_last_lb_s, 3))

    def to_dict(self):
        out = dataclasses.asdict(self)
        out["status"] = self.status.value
        return out

    def to_json(self):
        return json.dumps(self.to_dict(), indent=2)

    @classmethod
    def from_json(cls, text):
        try:
            doc = json.loads(text)
            return cls(**doc)
        except (json.JSONDecodeError, TypeError, ValueError) as e:
            raise ModelFormatError(f"Bad gap report: {e}")


def check_artifact(artifact, model, kind):
    """Reject an artifact read from a file that names another model or another model version"""
    if artifact.model_name is not None and artifact.model_name != name_token(model.name):
        raise ArtifactMismatchError(f"{kind} belongs to model '{artifact.model_name}', not '{model.name}'",
                                    witness=artifact.model_name)
    if artifact.model_hash is not None and artifact.model_hash != model.content_hash:
        raise ArtifactMismatchError(f"{kind} was written for a different version of '{model.name}'",
                                    witness=artifact.model_hash)


def check_duality(sample, mutex_set, model, universe=None, t=2, t_last_ub_s=0.0, t_last_lb_s=0.0):
    """
    Verify both artifacts independently and report the bounds they certify.  A sample and an exclusive set
    of the same size prove the sample optimal.  Raises the CertificateError of the first failed check.
    """
    check_artifact(sample, model, "Sample")
    check_artifact(mutex_set, model, "Certificate")
    if universe is None:
        if len(mutex_set):
            t = next(iter(mutex_set)).t
        universe = enumerate_universe(model, t, seed_sample=[c for c in sample if len(c) == model.n_features])
    verify_sample(sample, model, universe).raise_for_failure()
    verify_mutex_certificate(mutex_set, model, universe).raise_for_failure()
    report = GapReport.from_bounds(model, len(sample), len(mutex_set), t_last_ub_s, t_last_lb_s)
    logger.info(f"Certified '{model.name}': ub={report.ub}, lb={report.lb}, {report.status.value}")
    return report


def write_sample(path, sample, model):
    with open(path, "w") as f:
        f.write(sample.to_text(model.name, model.content_hash))
    logger.info(f"Wrote {len(sample)} configurations to {path}")


def read_sample(path, model):
    with open(path) as f:
        return Sample.from_text(f.read(), model.n_features)


def write_certificate(path, mutex_set, model, t):
    with open(path, "w") as f:
        f.write(mutex_set.to_text(model.name, t, model.content_hash))
    logger.info(f"Wrote {len(mutex_set)} exclusive interactions to {path}")


def read_certificate(path):
    with open(path) as f:
        return MutexSet.from_text(f.read())


def write_report(path, report):
    with open(path, "w") as f:
        f.write(report.to_json() + "\n")
    logger.info(f"Wrote gap report to {path}")


def read_report(path):
    with open(path) as f:
        return GapReport.from_json(f.read())

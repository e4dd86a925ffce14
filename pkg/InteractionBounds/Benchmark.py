import csv
import dataclasses
import json
import logging
import statistics

logger = logging.getLogger("InteractionBounds")

COLUMNS = ("model", "features", "clauses", "initial", "ub_mean", "ub_min", "lb_mean", "lb_max", "savings_pct",
           "ub_lb", "time_to_bounds_s", "status")


@dataclasses.dataclass
class RunRecord:
    """One run on one model, as persisted in the per-run JSON.  ``status`` is optimal, gap or failed."""
    model: str
    run: int
    seed: int
    status: str
    features: int = 0
    clauses: int = 0
    initial_size: int = 0
    ub: int = 0
    lb: int = 0
    t_last_ub_s: float = 0.0
    t_last_lb_s: float = 0.0
    error: str = None
    history: list = dataclasses.field(default_factory=list)

    @property
    def failed(self):
        return self.status == "failed"

    def to_json(self):
        return json.dumps(dataclasses.asdict(self), indent=2, sort_keys=True)

    @classmethod
    def from_json(cls, text):
        doc = json.loads(text)
        doc["history"] = [tuple(row) for row in doc.get("history", [])]
        return cls(**doc)


def aggregate_records(records):
    """
    One table row per model, in order of first appearance.  Savings compare the mean final sample with the
    mean initial sample.  A model whose runs all failed yields a row with status ``failed``.
    """
    by_model = dict()
    for record in records:
        by_model.setdefault(record.model, []).append(record)
    rows = []
    for model, runs in by_model.items():
        done = [r for r in runs if not r.failed]
        if not done:
            rows.append({"model": model, "status": "failed"})
            continue
        initial = statistics.mean(r.initial_size for r in done)
        ub_mean = statistics.mean(r.ub for r in done)
        ub_min = min(r.ub for r in done)
        lb_max = max(r.lb for r in done)
        rows.append({
            "model": model,
            "features": done[0].features,
            "clauses": done[0].clauses,
            "initial": initial,
            "ub_mean": ub_mean,
            "ub_min": ub_min,
            "lb_mean": statistics.mean(r.lb for r in done),
            "lb_max": lb_max,
            "savings_pct": 100.0 * (initial - ub_mean) / initial if initial else 0.0,
            "ub_lb": ub_min / lb_max if lb_max else None,
            "time_to_bounds_s": statistics.mean(max(r.t_last_ub_s, r.t_last_lb_s) for r in done),
            "status": "optimal" if ub_min == lb_max else "gap",
        })
    return rows


def _cell(value):
    if value is None:
        return "-"
    if isinstance(value, float):
        return f"{value:.2f}"
    return str(value)


def render_table(rows):
    """Aligned plain text with a header line"""
    cells = [list(COLUMNS)] + [[_cell(row.get(c)) for c in COLUMNS] for row in rows]
    widths = [max(len(line[i]) for line in cells) for i in range(len(COLUMNS))]
    lines = ["  ".join(cell.rjust(width) if i else cell.ljust(width) for i, (cell, width) in enumerate(zip(line, widths)))
             for line in cells]
    return "\n".join(line.rstrip() for line in lines) + "\n"


def write_table_csv(rows, path):
    with open(path, "w", newline="") as f:
        writer = csv.DictWriter(f, fieldnames=COLUMNS)
        writer.writeheader()
        for row in rows:
            writer.writerow({c: row.get(c) for c in COLUMNS})
    logger.info(f"Wrote {len(rows)} table rows to {path}")

import argparse
import concurrent.futures
import csv
import dataclasses
import logging
import os
import sys
import time

from InteractionBounds.Benchmark import RunRecord, aggregate_records, render_table, write_table_csv
from InteractionBounds.Certificate import check_duality, read_certificate, read_sample, write_certificate, write_report, write_sample
from InteractionBounds.FeatureModel import load_model
from InteractionBounds.InteractionUniverse import enumerate_universe
from InteractionBounds.LowerBoundLNS import LbTuning
from InteractionBounds.MutexChecker import MutexLevel
from InteractionBounds.SampleLNS import SampleLNS, UbTuning
from InteractionBounds.Simplifier import simplify
from InteractionBounds.exceptions import IncompleteAssignmentError, InteractionBoundsError
from InteractionBounds.logger import install_handler

logger = logging.getLogger("InteractionBounds")

PROCESS_START = time.monotonic()
MODEL_EXTENSIONS = (".cnf", ".dimacs", ".json")
DETERMINISTIC_ITERATIONS = 100


@dataclasses.dataclass
class RunConfig:
    models: list = dataclasses.field(default_factory=list)
    t: int = 2
    time_limit: float = 900.0
    iteration_time_limit: float = 60.0
    seed: int = 0
    mode: str = "parallel"
    output_dir: str = "."
    repeat: int = 1
    iterations: int = None  # UB iterations; deterministic runs default to DETERMINISTIC_ITERATIONS
    level: str = "L0"
    simplify: bool = False
    greedy_attempts: int = 1
    check_every_iteration: bool = False
    allow_high_strength: bool = False
    jobs: int = 1

    def __post_init__(self):
        if self.mode not in ("parallel", "deterministic"):
            raise ValueError(f"Mode must be 'parallel' or 'deterministic', got '{self.mode}'")
        if self.time_limit <= 0 or self.iteration_time_limit <= 0:
            raise ValueError("Time limits must be positive")
        if self.repeat < 1 or self.jobs < 1 or self.greedy_attempts < 1:
            raise ValueError("repeat, jobs and greedy attempts must be positive")
        if self.iterations is not None and self.iterations < 0:
            raise ValueError(f"iterations must be non-negative, got {self.iterations}")
        if self.t < 1:
            raise ValueError(f"t must be positive, got {self.t}")
        if self.t >= 3 and not self.allow_high_strength:
            raise ValueError(f"t={self.t} needs --allow-high-strength")
        self.level = MutexLevel.parse(self.level).name

    @property
    def deterministic(self):
        return self.mode == "deterministic"

    @property
    def max_iterations(self):
        if self.iterations is None and self.deterministic:
            return DETERMINISTIC_ITERATIONS
        return self.iterations


def model_stem(path):
    return os.path.splitext(os.path.basename(path))[0]


def run_model(path, config, run=0):
    """
    Sample one model file, write sample, certificate, gap report and run record to ``config.output_dir``,
    then read the files back and certify them against the model file.  Returns the RunRecord.
    """
    model = load_model(path)
    working = simplify(model) if config.simplify else model
    universe = enumerate_universe(working, config.t)
    tuning = UbTuning(iteration_time_limit=config.iteration_time_limit)
    lb_tuning = LbTuning(subsolver_time_limit=config.iteration_time_limit / 10)
    lns = SampleLNS(working, universe, tuning=tuning, lb_tuning=lb_tuning, seed=config.seed,
                    deterministic=config.deterministic, check_every_iteration=config.check_every_iteration,
                    level=MutexLevel.parse(config.level), greedy_attempts=config.greedy_attempts,
                    clock_start=PROCESS_START)
    result = lns.run(time_limit=config.time_limit, max_iterations=config.max_iterations)
    os.makedirs(config.output_dir, exist_ok=True)
    stem = model_stem(path) if config.repeat == 1 else f"{model_stem(path)}-r{run}"
    base = os.path.join(config.output_dir, stem)
    write_sample(base + ".sample", result.sample, model)
    write_certificate(base + ".lbcert", result.mutex_set, model, config.t)
    report = check_duality(read_sample(base + ".sample", model), read_certificate(base + ".lbcert"), model,
                           t=config.t, t_last_ub_s=result.report.t_last_ub_s, t_last_lb_s=result.report.t_last_lb_s)
    write_report(base + ".report.json", report)
    record = RunRecord(model.name, run, config.seed, report.status.value, model.n_features, len(model.clauses),
                       result.initial_size, report.ub, report.lb, report.t_last_ub_s, report.t_last_lb_s,
                       history=[list(row) for row in result.history])
    with open(base + ".run.json", "w") as f:
        f.write(record.to_json() + "\n")
    return record


def cmd_sample(config):
    for path in config.models:
        for run in range(config.repeat):
            record = run_model(path, config, run)
            print(f"{record.model}: ub={record.ub} lb={record.lb} {record.status}")
    return 0


def cmd_verify(sample_path, certificate_path, model_path):
    model = load_model(model_path)
    report = check_duality(read_sample(sample_path, model), read_certificate(certificate_path), model)
    print(report.to_json())
    return 0


def cmd_coverage_curve(sample_path, model_path, seed=0, output=None):
    """CSV ``index,coverage_fraction`` for a seeded shuffle of the sample, to ``output`` or stdout"""
    model = load_model(model_path)
    sample = read_sample(sample_path, model)
    for position, config in enumerate(sample):
        if len(config) != model.n_features:
            raise IncompleteAssignmentError(f"Configuration {position + 1} lists {len(config)} of {model.n_features} features")
    universe = enumerate_universe(model, seed_sample=sample)
    rows = universe.coverage_curve(sample, seed=seed)
    f = open(output, "w", newline="") if output else sys.stdout
    try:
        writer = csv.writer(f)
        writer.writerow(["index", "coverage_fraction"])
        for index, fraction in rows:
            writer.writerow([index, f"{fraction:.6f}"])
    finally:
        if output:
            f.close()
            logger.info(f"Wrote {len(rows)} coverage rows to {output}")
    return 0


def bench_model(path, config):
    """All repeats for one model; a failing run becomes a failed record"""
    records = []
    for run in range(config.repeat):
        try:
            records.append(run_model(path, config, run))
        except Exception as e:
            logger.error(f"Run {run} on {path} failed: {e.__class__.__name__}: {e}")
            records.append(RunRecord(model_stem(path), run, config.seed, "failed", error=str(e)))
    return records


def corpus_files(directory):
    return sorted(os.path.join(directory, name) for name in os.listdir(directory)
                  if name.lower().endswith(MODEL_EXTENSIONS))


def cmd_bench(directory, config):
    paths = corpus_files(directory)
    records = []
    if config.jobs > 1 and len(paths) > 1:
        with concurrent.futures.ProcessPoolExecutor(max_workers=config.jobs) as executor:
            futures = {executor.submit(bench_model, path, dataclasses.replace(config, output_dir=_model_dir(config, path))):
                       path for path in paths}
            done = {futures[f]: f.result() for f in concurrent.futures.as_completed(futures)}
        for path in paths:
            records.extend(done[path])
    else:
        for path in paths:
            records.extend(bench_model(path, dataclasses.replace(config, output_dir=_model_dir(config, path))))
    rows = aggregate_records(records)
    table = render_table(rows)
    print(table, end="")
    os.makedirs(config.output_dir, exist_ok=True)
    with open(os.path.join(config.output_dir, "table.txt"), "w") as f:
        f.write(table)
    write_table_csv(rows, os.path.join(config.output_dir, "table.csv"))
    return 0


def _model_dir(config, path):
    return os.path.join(config.output_dir, model_stem(path))


def _seed_default():
    value = os.environ.get("SAMPLNS_SEED", "0")
    try:
        return int(value)
    except ValueError:
        raise argparse.ArgumentTypeError(f"SAMPLNS_SEED must be an integer, got '{value}'")


def _seed_option(parser):
    parser.add_argument("--seed", type=int, default=argparse.SUPPRESS, help="Random seed, overrides the global --seed")


def _run_options(parser):
    _seed_option(parser)
    parser.add_argument("--t", type=int, default=2, help="Interaction strength")
    parser.add_argument("--time-limit", type=float, default=900.0, help="Total seconds per run")
    parser.add_argument("--iteration-limit", type=float, default=60.0, help="Seconds per subproblem")
    parser.add_argument("--iterations", type=int, default=None,
                        help=f"Maximum improvement iterations (deterministic default {DETERMINISTIC_ITERATIONS})")
    parser.add_argument("--mode", choices=["parallel", "deterministic"], default="parallel")
    parser.add_argument("--output", default=".", help="Output directory")
    parser.add_argument("--repeat", type=int, default=1)
    parser.add_argument("--level", default="L0", help="Mutual exclusion test: L0, P1, P2 or EXACT")
    parser.add_argument("--simplify", action="store_true", help="Propagate units and merge equivalent features first")
    parser.add_argument("--greedy-attempts", type=int, default=1, help="Greedy starts for the initial sample")
    parser.add_argument("--check-every-iteration", action="store_true", help="Verify the sample after every iteration")
    parser.add_argument("--allow-high-strength", action="store_true", help="Permit t >= 3")


def _config(args, models, jobs=1):
    return RunConfig(models=models, t=args.t, time_limit=args.time_limit, iteration_time_limit=args.iteration_limit,
                     seed=args.seed, mode=args.mode, output_dir=args.output, repeat=args.repeat,
                     iterations=args.iterations, level=args.level, simplify=args.simplify,
                     greedy_attempts=args.greedy_attempts, check_every_iteration=args.check_every_iteration,
                     allow_high_strength=args.allow_high_strength, jobs=jobs)


def build_parser():
    parser = argparse.ArgumentParser(prog="interaction-bounds",
                                     description="Minimum t-wise interaction samples with certified lower bounds")
    verbosity = parser.add_mutually_exclusive_group()
    verbosity.add_argument("-v", "--verbose", action="store_true", help="Debug logging")
    verbosity.add_argument("-q", "--quiet", action="store_true", help="Warnings and errors only")
    parser.add_argument("--seed", type=int, default=None, help="Random seed (default: $SAMPLNS_SEED or 0)")
    commands = parser.add_subparsers(dest="command", required=True)

    sample = commands.add_parser("sample", help="Compute a sample and a lower bound certificate")
    sample.add_argument("--model", action="append", required=True, help="Model file; may be repeated")
    _run_options(sample)

    verify = commands.add_parser("verify", help="Check a sample and a certificate against a model")
    verify.add_argument("--sample", required=True)
    verify.add_argument("--certificate", required=True)
    verify.add_argument("--model", required=True)

    curve = commands.add_parser("coverage-curve", help="Coverage of growing prefixes of a shuffled sample as CSV")
    curve.add_argument("--sample", required=True)
    curve.add_argument("--model", required=True)
    curve.add_argument("--output", default=None, help="CSV file (default: stdout)")
    _seed_option(curve)

    bench = commands.add_parser("bench", help="Run every model of a directory and tabulate the bounds")
    bench.add_argument("corpus", help="Directory of .cnf, .dimacs or .json models")
    bench.add_argument("--jobs", type=int, default=1, help="Models run in parallel processes")
    _run_options(bench)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    install_handler("DEBUG" if args.verbose else "WARNING" if args.quiet else "INFO")
    try:
        if args.seed is None:
            args.seed = _seed_default()
        if args.command == "sample":
            return cmd_sample(_config(args, args.model))
        if args.command == "verify":
            return cmd_verify(args.sample, args.certificate, args.model)
        if args.command == "coverage-curve":
            return cmd_coverage_curve(args.sample, args.model, seed=args.seed, output=args.output)
        return cmd_bench(args.corpus, _config(args, [], jobs=args.jobs))
    except InteractionBoundsError as e:
        logger.error(f"{e.__class__.__name__}: {e}")
        return e.exit_code
    except (ValueError, argparse.ArgumentTypeError) as e:
        logger.error(str(e))
        return 1

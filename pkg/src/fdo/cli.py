"""Command-line harness: ``fdo run | bench | replay-paper | list-objectives``.

Every option may also come from ``--config FILE``, a flat ``key = value`` file
whose keys are the long flag names without dashes (``pop = 30``,
``bounds = -100 100``). Flags given on the command line win over the file.

Exit codes: 0 success, 1 replay fixture mismatch, 2 invalid configuration,
3 runtime failure (replay table exhausted, non-finite fitness).
"""

from __future__ import annotations

import argparse
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path
from typing import Dict, List, Optional, Sequence

import numpy as np

from . import kernels
from .engine import run
from .errors import FdoError, InvalidConfig, NonFiniteFitness, TableExhausted
from .objectives import Objective, get_objective, list_objectives, load_cluster_scenario
from .replay import replay
from .trace import summarize_batch, summary_json, write_runs_csv, write_trace_csv
from .types import BoundaryPolicy, FdoConfig, InitRule, RandomMode, RunResult, SearchSpace, validate_space

OUTPUT_ENV = "FDO_OUTPUT_DIR"

EXIT_OK, EXIT_MISMATCH, EXIT_CONFIG, EXIT_RUNTIME = 0, 1, 2, 3

DEFAULTS = {
    "objective": "sphere",
    "dim": None,
    "bounds": None,
    "pop": 30,
    "iters": 500,
    "wf": 0.0,
    "seed": 0,
    "seeds": "0..29",
    "random_mode": "uniform",
    "levy_beta": 1.5,
    "boundary": "clamp",
    "init": "uniform-box",
    "scenario": None,
    "jobs": 1,
    "no_traces": False,
    "paper_literal_bee3": False,
}


def _int_list(text: str) -> List[int]:
    """``"1 2 5..8"`` -> ``[1, 2, 5, 6, 7, 8]``."""
    out: List[int] = []
    for tok in text.replace(",", " ").split():
        if ".." in tok:
            a, b = tok.split("..")
            out.extend(range(int(a), int(b) + 1))
        else:
            out.append(int(tok))
    return out


def _add_common(p: argparse.ArgumentParser, *, multi_objective: bool = False) -> None:
    S = argparse.SUPPRESS
    if multi_objective:
        p.add_argument("--objective", action="append", default=S,
                       help="objective name, repeatable (default: sphere)")
    else:
        p.add_argument("--objective", default=S, help="objective name (default: sphere)")
    p.add_argument("--dim", type=int, default=S, help="dimension (default: 2, or fixed by the objective)")
    p.add_argument("--bounds", type=float, nargs=2, metavar=("LO", "HI"), default=S,
                   help="box bounds for every dimension (default: the objective's box)")
    p.add_argument("--pop", type=int, default=S, help="number of scout bees (default: 30)")
    p.add_argument("--iters", type=int, default=S,
                   help="iterations, initialization counting as the first (default: 500)")
    p.add_argument("--wf", type=float, default=S, help="weight factor, 0 or 1 (default: 0)")
    p.add_argument("--random-mode", choices=[m.value for m in RandomMode], default=S,
                   help="source of r (default: uniform)")
    p.add_argument("--levy-beta", type=float, default=S, help="Levy stability exponent (default: 1.5)")
    p.add_argument("--boundary", choices=[b.value for b in BoundaryPolicy], default=S,
                   help="what to do with moves leaving the box (default: clamp)")
    p.add_argument("--init", choices=[r.value for r in InitRule], default=S,
                   help="initial placement (default: uniform-box)")
    p.add_argument("--scenario", default=S, help="cluster-head scenario file")
    p.add_argument("--config", default=S, help="key = value file with defaults for these flags")
    p.add_argument("--out", default=S, help=f"output directory (default: ${OUTPUT_ENV} or ./fdo-output)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fdo",
        description="Fitness Dependent Optimizer experiments.",
        epilog="Unspecified parameters default to population 30, 500 iterations, wf 0, "
        "uniform random source, clamp boundary policy.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("run", help="one seeded optimization")
    _add_common(p)
    p.add_argument("--seed", type=int, default=argparse.SUPPRESS, help="random seed (default: 0)")

    p = sub.add_parser("bench", help="a batch of seeded runs")
    _add_common(p, multi_objective=True)
    p.add_argument("--seeds", nargs="+", default=argparse.SUPPRESS,
                   help="seeds, with a..b inclusive ranges (default: 0..29)")
    p.add_argument("--jobs", type=int, default=argparse.SUPPRESS, help="worker processes (default: 1)")
    p.add_argument("--no-traces", action="store_true", default=argparse.SUPPRESS,
                   help="skip the per-run trace CSVs")

    p = sub.add_parser("replay-paper", help="replay the worked example and check it")
    p.add_argument("--paper-literal-bee3", action="store_true", default=argparse.SUPPRESS,
                   help="third bee of iteration 2 follows the printed narrative")
    p.add_argument("--config", default=argparse.SUPPRESS)
    p.add_argument("--out", default=argparse.SUPPRESS)

    sub.add_parser("list-objectives", help="print the objective catalog")
    return parser


# --- config resolution ----------------------------------------------------------

_CASTS = {
    "dim": int, "pop": int, "iters": int, "seed": int, "jobs": int,
    "wf": float, "levy_beta": float,
    "bounds": lambda v: [float(t) for t in v.split()],
    "seeds": lambda v: v,
    "no_traces": lambda v: v.strip().lower() in ("1", "true", "yes", "on"),
    "paper_literal_bee3": lambda v: v.strip().lower() in ("1", "true", "yes", "on"),
}


def read_config_file(path) -> Dict[str, object]:
    values: Dict[str, object] = {}
    try:
        lines = Path(path).read_text().splitlines()
    except OSError as exc:
        raise InvalidConfig(f"cannot read config file {path}: {exc}") from None
    for n, line in enumerate(lines, start=1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise InvalidConfig(f"{path}:{n}: expected key = value")
        key, value = (s.strip() for s in line.split("=", 1))
        key = key.lstrip("-").replace("-", "_")
        if key not in DEFAULTS and key != "out":
            raise InvalidConfig(f"{path}:{n}: unknown key {key!r}")
        try:
            values[key] = _CASTS.get(key, str)(value)
        except ValueError:
            raise InvalidConfig(f"{path}:{n}: bad value for {key}: {value!r}") from None
    return values


def resolve(args: argparse.Namespace) -> Dict[str, object]:
    opts: Dict[str, object] = dict(DEFAULTS)
    opts["out"] = os.environ.get(OUTPUT_ENV) or "fdo-output"
    cli = vars(args)
    if "config" in cli:
        opts.update(read_config_file(cli["config"]))
    opts.update({k: v for k, v in cli.items() if k not in ("config", "command")})
    if isinstance(opts["seeds"], list):
        opts["seeds"] = " ".join(opts["seeds"])
    if isinstance(opts["objective"], str):
        opts["objective_list"] = [opts["objective"]]
    else:
        opts["objective_list"] = list(opts["objective"])
    return opts


def _enum(enum_cls, value: str, what: str):
    try:
        return enum_cls(value)
    except ValueError:
        raise InvalidConfig(f"invalid {what}: {value!r}") from None


def make_config(opts: Dict[str, object], objective: Objective, seed: Optional[int]) -> FdoConfig:
    cfg = FdoConfig(
        population=opts["pop"],
        iterations=opts["iters"],
        wf=opts["wf"],
        direction=objective.direction,
        random_mode=_enum(RandomMode, opts["random_mode"], "random mode"),
        seed=seed,
        boundary_policy=_enum(BoundaryPolicy, opts["boundary"], "boundary policy"),
        levy_beta=opts["levy_beta"],
    )
    cfg.validate()
    return cfg


def make_problem(opts: Dict[str, object], name: str):
    scenario = load_cluster_scenario(opts["scenario"]) if opts.get("scenario") else None
    objective = get_objective(name, scenario)
    space = objective.space(opts["dim"])
    if opts["bounds"] is not None:
        lo, hi = opts["bounds"]
        space = SearchSpace(space.dimension, lo, hi)
    validate_space(space)
    init = _enum(InitRule, opts["init"], "init rule")
    if init is InitRule.PAPER_ALTERNATING and space.dimension != 2:
        raise InvalidConfig("paper-alternating initialization needs --dim 2")
    return objective, space, init


def _single_run(opts: Dict[str, object], name: str, seed: int) -> RunResult:
    objective, space, init = make_problem(opts, name)
    cfg = make_config(opts, objective, seed)
    return run(space, objective, cfg, init_rule=init, objective_name=name)


def _bench_worker(job):
    opts, name, seed = job
    return _single_run(opts, name, seed)


def _out_dir(opts) -> Path:
    out = Path(str(opts["out"]))
    out.mkdir(parents=True, exist_ok=True)
    return out


def _fmt_vec(v: Sequence[float]) -> str:
    return "[" + ", ".join(f"{x:.6g}" for x in v) + "]"


# --- subcommands ----------------------------------------------------------------


def cmd_run(opts: Dict[str, object]) -> int:
    name = opts["objective_list"][0]
    seed = int(opts["seed"])
    objective, space, _ = make_problem(opts, name)
    cfg = make_config(opts, objective, seed)
    result = _single_run(opts, name, seed)
    out = _out_dir(opts)
    write_trace_csv(result.trace, out / "trace.csv")
    summary = summarize_batch([result], cfg.direction)
    extra = {
        "best_position": [float(x) for x in result.best_position],
        "initial_best": float(result.initial_best_fitness),
        "dimension": space.dimension,
    }
    (out / "summary.json").write_text(summary_json(summary, name, cfg.as_dict(), [seed], extra))
    print(f"objective {name}  dim {space.dimension}  seed {seed}  backend {kernels.BACKEND}")
    print(f"best fitness {result.best_fitness:.9g}")
    print(f"best position {_fmt_vec(result.best_position)}")
    print(f"evaluations {result.evaluations}")
    return EXIT_OK


def cmd_bench(opts: Dict[str, object]) -> int:
    try:
        seeds = _int_list(str(opts["seeds"]))
    except ValueError:
        raise InvalidConfig(f"bad seed list: {opts['seeds']!r}") from None
    if not seeds:
        raise InvalidConfig("bench needs at least one seed")
    jobs = int(opts["jobs"])
    if jobs < 1:
        raise InvalidConfig("--jobs must be >= 1")
    names = opts["objective_list"]
    problems = {name: make_problem(opts, name) for name in names}
    for name, (objective, _, _) in problems.items():
        make_config(opts, objective, seeds[0])

    root = _out_dir(opts)
    rows = []
    for name in names:
        objective, space, _ = problems[name]
        out = root if len(names) == 1 else root / name
        out.mkdir(parents=True, exist_ok=True)
        work = [(opts, name, s) for s in seeds]
        if jobs > 1:
            with ProcessPoolExecutor(max_workers=jobs) as pool:
                results = list(pool.map(_bench_worker, work))
        else:
            results = [_bench_worker(w) for w in work]
        if not opts["no_traces"]:
            for seed, res in zip(seeds, results):
                write_trace_csv(res.trace, out / f"trace_seed{seed}.csv")
        write_runs_csv(seeds, results, out / "runs.csv")
        cfg = make_config(opts, objective, None)
        summary = summarize_batch(results, cfg.direction)
        extra = {"dimension": space.dimension}
        (out / "summary.json").write_text(summary_json(summary, name, cfg.as_dict(), seeds, extra))
        rows.append((name, space.dimension, summary))

    print(f"{'objective':<16}{'dim':>5}{'runs':>6}{'mean':>14}{'std':>14}{'median':>14}{'best':>14}{'worst':>14}")
    for name, dim, s in rows:
        print(f"{name:<16}{dim:>5}{len(s.finals):>6}{s.mean:>14.6g}{s.std:>14.6g}"
              f"{s.median:>14.6g}{s.best:>14.6g}{s.worst:>14.6g}")
    return EXIT_OK


def cmd_replay_paper(opts: Dict[str, object]) -> int:
    literal = bool(opts["paper_literal_bee3"])
    output = replay(literal)
    out = _out_dir(opts)
    suffix = "_literal" if literal else ""
    (out / f"replay_trace{suffix}.csv").write_text(output.trace_csv)
    (out / f"replay_report{suffix}.md").write_text(output.report)
    fits = [rec.fitness for rec in output.result.trace.iteration_records(1)]
    print("iteration 1 fitness: " + " ".join(f"{f:g}" for f in fits))
    print(f"declared best: {output.result.best_fitness:g} at {_fmt_vec(output.result.best_position + 0.0)}")
    if not output.ok:
        print("fixture mismatches:", file=sys.stderr)
        for c in output.failures():
            print(f"  {c.quantity}: engine {c.engine} vs printed {c.printed} (tol {c.tolerance})", file=sys.stderr)
        return EXIT_MISMATCH
    n_bad = sum(not c.enforced for c in output.checks)
    print(f"all {sum(c.enforced for c in output.checks)} fixtures match; "
          f"{n_bad} printed values are inconsistent with the update rules (see report)")
    return EXIT_OK


def cmd_list_objectives(opts: Dict[str, object]) -> int:
    for name in list_objectives():
        if name == "cluster-head":
            print(f"{name:<16} minimize  box from --scenario nodes")
            continue
        obj = get_objective(name)
        print(f"{name:<16} {obj.direction.value:<9} [{obj.lower:g}, {obj.upper:g}]")
    return EXIT_OK


COMMANDS = {
    "run": cmd_run,
    "bench": cmd_bench,
    "replay-paper": cmd_replay_paper,
    "list-objectives": cmd_list_objectives,
}


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        opts = resolve(args)
        return COMMANDS[args.command](opts)
    except InvalidConfig as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (TableExhausted, NonFiniteFitness) as exc:
        print(f"runtime failure: {exc}", file=sys.stderr)
        return EXIT_RUNTIME
    except FdoError as exc:
        print(f"runtime failure: {exc}", file=sys.stderr)
        return EXIT_RUNTIME


if __name__ == "__main__":
    sys.exit(main())

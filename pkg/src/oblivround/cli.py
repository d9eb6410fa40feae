"""Command-line front end.

Commands: game, pack, cover, int-pack, int-cover, setcover. The result is a
JSON document with sorted keys and numbers rounded to 12 significant digits,
so identical inputs give byte-identical output. Indices in the output
(columns, sets, arcs) are 1-based, matching the input files.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .approx import wrap_approximate_oracle
from .errors import InstanceFormatError, ObliviousRoundingError, PreconditionError
from .formats import parse_text
from .model import ApproxParams, ProblemInstance, Sense
from .oracles import FlowInstance, SetSystemOracleView
from .setcover import SetSystem, greedy_set_cover, setcover_dual_bound
from .solver import (
    DEFAULT_CAP_MULTIPLIER,
    solve_covering,
    solve_generalized_packing,
    solve_integer_covering,
    solve_integer_packing,
    solve_packing,
    solve_packing_given_s,
)

COMMANDS = ("game", "pack", "cover", "int-pack", "int-cover", "setcover")

_ALLOWED_FORMATS = {
    "game": ("matrix",),
    "pack": ("matrix", "flow"),
    "int-pack": ("matrix", "flow"),
    "cover": ("matrix", "sets"),
    "int-cover": ("matrix", "sets"),
    "setcover": ("sets",),
}

_SENSE = {
    "game": Sense.GENERALIZED,
    "pack": Sense.PACKING,
    "int-pack": Sense.PACKING,
    "cover": Sense.COVERING,
    "int-cover": Sense.COVERING,
}


@dataclass(frozen=True)
class RunConfig:
    command: str
    input: Path
    eps: float = 0.1
    s: int | None = None
    cap_multiplier: float = DEFAULT_CAP_MULTIPLIER
    delta1: float = 0.0
    delta2: float = 0.0
    seed: int = 0
    out: Path | None = None


@dataclass
class ParsedInstance:
    kind: str
    source: object  # ExplicitInstance, FlowInstance or SetSystem
    problem: ProblemInstance | None
    oracle: object


def parse_instance(path, command) -> ParsedInstance:
    if command not in COMMANDS:
        raise ValueError(f"unknown command {command!r}")
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise InstanceFormatError(f"cannot read {path}: {exc.strerror}") from None
    kind, source = parse_text(text)
    if kind not in _ALLOWED_FORMATS[command]:
        raise InstanceFormatError(f"{command} does not accept {kind} files")
    if command == "setcover":
        return ParsedInstance(kind, source, None, None)
    if isinstance(source, SetSystem):
        view = SetSystemOracleView.from_system(source)
        return ParsedInstance(kind, source, view.problem(), view.oracle())
    if isinstance(source, FlowInstance):
        return ParsedInstance(kind, source, source.problem(), source.oracle())
    sense = _SENSE[command]
    return ParsedInstance(kind, source, source.problem(sense), source.oracle(sense.maximize))


def _num(x):
    x = float(x)
    if math.isnan(x):
        return "nan"
    if math.isinf(x):
        return "inf" if x > 0 else "-inf"
    return float(f"{x:.12g}") + 0.0


def _vector(v):
    return [_num(x) for x in np.asarray(v)]


def _key(parsed, key):
    """1-based public form of an oracle answer key."""
    if isinstance(key, tuple) and key and key[0] == "point":
        return None
    if isinstance(key, tuple):
        return [k + 1 for k in key]
    return key + 1


def _support(parsed, support):
    total = sum(e.count for e in support)
    rows = []
    for e in support:
        row = {"count": e.count, "weight": _num(e.count / total)}
        key = _key(parsed, e.answer.key)
        if key is None:
            row["point"] = _vector(e.answer.point)
        else:
            row["path" if isinstance(parsed.source, FlowInstance) else "index"] = key
        rows.append(row)
    return rows


def _fractional(parsed, cfg):
    problem, oracle = parsed.problem, parsed.oracle
    if cfg.delta1 or cfg.delta2:
        oracle = wrap_approximate_oracle(oracle, ApproxParams(cfg.delta1, cfg.delta2), cfg.seed)
    if cfg.command == "game":
        result = solve_generalized_packing(problem, oracle, cfg.eps, s=cfg.s, record=False)
        gap = result.lambda_bar - result.average_dual
    elif cfg.s is not None:
        result = solve_packing_given_s(problem, oracle, cfg.eps, cfg.s, record=False)
        gap = result.lambda_bar / result.best_dual
    else:
        solve = solve_packing if problem.sense is Sense.PACKING else solve_covering
        result = solve(problem, oracle, cfg.eps, cap_multiplier=cfg.cap_multiplier, record=False)
        gap = result.lambda_bar / result.best_dual
    doc = {
        "primal_value": _num(result.lambda_bar),
        "best_dual": _num(result.best_dual),
        "average_dual": _num(result.average_dual),
        "gap": _num(gap),
        "iterations": result.iterations,
        "support_size": result.support_size,
        "support": _support(parsed, result.support),
        "x_bar": _vector(result.x_bar),
        "F": _vector(result.F),
    }
    if isinstance(parsed.source, FlowInstance):
        doc["flow_value"] = _num(parsed.source.capacities.min() / result.lambda_bar)
    if isinstance(parsed.source, SetSystem):
        doc["fractional_cover_size"] = _num(1.0 / result.lambda_bar)
    return doc


def _integer(parsed, cfg):
    problem = parsed.problem
    if cfg.command == "int-pack":
        solution = solve_integer_packing(problem, parsed.oracle, cfg.eps)
    else:
        solution = solve_integer_covering(problem, parsed.oracle, cfg.eps)
    return {
        "size": solution.size,
        "oracle_calls": solution.oracle_calls,
        "support": _support(parsed, solution.support),
        "constraint_sums": _vector(solution.totals),
        "max_constraint_sum": _num(solution.totals.max()),
        "min_constraint_sum": _num(solution.totals.min()),
    }


def _setcover(parsed, cfg):
    system = parsed.source
    cover, cert = greedy_set_cover(system)
    k = len(cover)
    return {
        "cover": [i + 1 for i in cover],
        "size": k,
        "certificate": [[rec.r, rec.d] for rec in cert],
        "dual_values": [_num(float(rec.value)) for rec in cert],
        "harmonic_mean_dual": _num(setcover_dual_bound(cert, k, system.n)),
        "dual_lower_bound": _num((k - 1) / math.log(system.n)) if system.n > 1 else 0.0,
    }


def run(cfg: RunConfig) -> dict:
    """Solve the instance named by ``cfg`` and return the result document."""
    if not cfg.eps > 0:
        raise PreconditionError(f"--eps must be positive, got {cfg.eps!r}")
    if (cfg.delta1 or cfg.delta2) and cfg.command not in ("game", "pack", "cover"):
        raise PreconditionError("--delta1/--delta2 apply only to game, pack and cover")
    parsed = parse_instance(cfg.input, cfg.command)
    doc = {"command": cfg.command, "eps": _num(cfg.eps), "format": parsed.kind}
    if cfg.command == "setcover":
        doc.update(_setcover(parsed, cfg))
        return doc
    problem = parsed.problem
    doc.update(
        sense=problem.sense.value, m=problem.m, n=problem.n,
        L=_num(problem.L), omega=_num(problem.omega),
    )
    if cfg.command in ("int-pack", "int-cover"):
        doc.update(_integer(parsed, cfg))
    else:
        if cfg.delta1 or cfg.delta2:
            doc.update(delta1=_num(cfg.delta1), delta2=_num(cfg.delta2), seed=cfg.seed)
        doc.update(_fractional(parsed, cfg))
    return doc


def render(doc) -> str:
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def build_parser():
    parser = argparse.ArgumentParser(
        prog="oblivround",
        description="Oblivious-rounding solvers for packing, covering and matrix games.",
    )
    parser.add_argument("command", choices=COMMANDS)
    parser.add_argument("input", type=Path, help="instance file")
    parser.add_argument("--eps", type=float, default=0.1)
    parser.add_argument("--s", type=int, default=None, help="fixed number of iterations")
    parser.add_argument("--cap-multiplier", type=float, default=DEFAULT_CAP_MULTIPLIER)
    parser.add_argument("--delta1", type=float, default=0.0, help="oracle relative error")
    parser.add_argument("--delta2", type=float, default=0.0, help="oracle absolute error")
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--out", type=Path, default=None)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    cfg = RunConfig(**vars(args))
    try:
        text = render(run(cfg))
    except ObliviousRoundingError as exc:
        print(f"error[{exc.code}] {type(exc).__name__}: {exc}", file=sys.stderr)
        return exc.code
    if cfg.out is None:
        sys.stdout.write(text)
    else:
        cfg.out.write_text(text)
    return 0


if __name__ == "__main__":
    sys.exit(main())

"""Command-line front end: solve, gen, bench.

Machine-readable output is one JSON object per line with fixed field
names (see README). Exit codes: 0 success, 2 usage/parse error,
3 enumeration budget exceeded.
"""

from __future__ import annotations

import argparse
import json
import os
import random
import sys
import time
from dataclasses import dataclass

from .bitvec import BitVector
from .core import Committee, Election, minisum_committee, objective, three_approx
from .errors import BallotParseError, BudgetExceededError
from .io import generate_instance, parse_election, render_election
from .oracle import exact_opt
from .ptas import ptas_solve

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_BUDGET = 3

DEFAULT_EPSILON = 0.9


def _oracle_max_m() -> int:
    return int(os.environ.get("MAV_ORACLE_MAX_M", "20"))


@dataclass
class RunReport:
    algorithm: str
    committee: str
    objective: int
    opt: int | None = None
    ratio: float | None = None
    epsilon: float | None = None
    seed: int | None = None
    elapsed_ms: float | None = None
    diagnostics: dict | None = None

    def to_record(self, timing: bool = False) -> dict:
        record = {
            "algorithm": self.algorithm,
            "committee": self.committee,
            "objective": self.objective,
            "opt": self.opt,
            "ratio": self.ratio,
            "epsilon": self.epsilon,
            "seed": self.seed,
        }
        if timing:
            record["elapsed_ms"] = self.elapsed_ms
        if self.diagnostics is not None:
            record["diagnostics"] = self.diagnostics
        return record

    def to_text(self, timing: bool = False) -> str:
        lines = [
            f"algorithm: {self.algorithm}",
            f"committee: {self.committee}",
            f"objective: {self.objective}",
        ]
        if self.opt is not None:
            lines.append(f"opt:       {self.opt}")
        if self.ratio is not None:
            lines.append(f"ratio:     {self.ratio:.6f}")
        if self.epsilon is not None:
            lines.append(f"epsilon:   {self.epsilon}")
        if timing and self.elapsed_ms is not None:
            lines.append(f"elapsed:   {self.elapsed_ms:.1f} ms")
        return "\n".join(lines)


def _ratio(obj: int, opt: int) -> float | None:
    if opt > 0:
        return obj / opt
    return 1.0 if obj == 0 else None


def _run_algorithm(
    election: Election,
    algorithm: str,
    epsilon: float,
    seed: int,
    force_case: int | None = None,
    workers: int = 1,
) -> RunReport:
    start = time.perf_counter()
    diagnostics = None
    if algorithm == "exact":
        result = exact_opt(election, max_m=_oracle_max_m())
        committee, eps_used = result.committee, None
    elif algorithm == "minisum":
        committee, eps_used = minisum_committee(election), None
    elif algorithm == "kcompletion":
        committee, eps_used = three_approx(election), None
    elif algorithm == "ptas":
        report = ptas_solve(
            election, epsilon, seed=seed, force_case=force_case, workers=workers
        )
        committee, eps_used = report.committee, epsilon
        diagnostics = {k: v for k, v in report.diagnostics.items() if k != "elapsed_ms"}
    else:
        raise ValueError(f"unknown algorithm {algorithm!r}")
    obj = objective(committee, election)
    elapsed = (time.perf_counter() - start) * 1000.0
    return RunReport(
        algorithm=algorithm,
        committee=committee.vector.to01(),
        objective=obj,
        epsilon=eps_used,
        seed=seed if algorithm == "ptas" else None,
        elapsed_ms=elapsed,
        diagnostics=diagnostics,
    )


def _attach_oracle(report: RunReport, election: Election, mode: str) -> None:
    if mode == "off":
        return
    if mode == "auto" and election.m > _oracle_max_m():
        return
    opt = exact_opt(election, max_m=_oracle_max_m()).opt_value
    report.opt = opt
    report.ratio = _ratio(report.objective, opt)


def _emit(report: RunReport, fmt: str, timing: bool) -> None:
    if fmt == "json":
        print(json.dumps(report.to_record(timing=timing), sort_keys=False))
    else:
        print(report.to_text(timing=timing))


def cmd_solve(args: argparse.Namespace) -> int:
    with open(args.input, "r", encoding="utf-8") as fh:
        election = parse_election(fh.read())
    force_case = None if args.force_case == "auto" else int(args.force_case)
    report = _run_algorithm(
        election, args.algorithm, args.epsilon, args.seed, force_case, args.workers
    )
    _attach_oracle(report, election, args.oracle)
    _emit(report, args.format, args.timing)
    return EXIT_OK


def cmd_gen(args: argparse.Namespace) -> int:
    election, planted = generate_instance(args.n, args.m, args.k, args.radius, args.seed)
    text = f"# planted committee: {planted.to01()} (radius {args.radius}, seed {args.seed})\n"
    text += render_election(election)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def _parse_range(spec: str) -> tuple[int, int]:
    lo, _, hi = spec.partition(":")
    lo_i, hi_i = int(lo), int(hi or lo)
    if lo_i > hi_i:
        raise ValueError(f"empty range {spec!r}")
    return lo_i, hi_i


def cmd_bench(args: argparse.Namespace) -> int:
    algorithms = [a for a in args.algorithms.split(",") if a]
    n_lo, n_hi = _parse_range(args.n_range)
    m_lo, m_hi = _parse_range(args.m_range)
    rng = random.Random(args.seed)
    ratios: dict[str, list[float]] = {a: [] for a in algorithms}
    for idx in range(args.count):
        n = rng.randint(n_lo, n_hi)
        m = rng.randint(m_lo, m_hi)
        if args.k_mode == "half":
            k = max(1, m // 2)
        else:
            k = rng.randint(1, max(1, m - 1))
        ballots = tuple(BitVector(rng.getrandbits(m), m) for _ in range(n))
        election = Election(ballots, m, k)
        opt = exact_opt(election, max_m=_oracle_max_m()).opt_value
        for algorithm in algorithms:
            report = _run_algorithm(election, algorithm, args.epsilon, args.seed + idx)
            report.opt = opt
            report.ratio = _ratio(report.objective, opt)
            if report.ratio is not None:
                ratios[algorithm].append(report.ratio)
            record = report.to_record(timing=args.timing)
            record["instance"] = idx
            print(json.dumps(record, sort_keys=False))
    summary = {
        "record": "summary",
        "count": args.count,
        "ratios": {
            a: {
                "max": max(r) if r else None,
                "mean": sum(r) / len(r) if r else None,
            }
            for a, r in ratios.items()
        },
    }
    print(json.dumps(summary, sort_keys=False))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="mav", description="Minimax Approval Voting solvers"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    solve = sub.add_parser("solve", help="solve a ballot file")
    solve.add_argument("--input", required=True, help="ballot file (header 'n m k' + bit rows)")
    solve.add_argument(
        "--algorithm",
        required=True,
        choices=["exact", "minisum", "kcompletion", "ptas"],
    )
    solve.add_argument("--epsilon", type=float, default=DEFAULT_EPSILON)
    solve.add_argument("--seed", type=int, default=0)
    solve.add_argument("--format", choices=["text", "json"], default="text")
    solve.add_argument("--force-case", choices=["1", "2", "3", "auto"], default="auto")
    solve.add_argument("--oracle", choices=["on", "off", "auto"], default="auto")
    solve.add_argument("--workers", type=int, default=1)
    solve.add_argument("--timing", action="store_true", help="include wall time in output")
    solve.set_defaults(func=cmd_solve)

    gen = sub.add_parser("gen", help="generate a planted instance")
    gen.add_argument("--n", type=int, required=True)
    gen.add_argument("--m", type=int, required=True)
    gen.add_argument("--k", type=int, required=True)
    gen.add_argument("--radius", type=int, required=True)
    gen.add_argument("--seed", type=int, default=0)
    gen.add_argument("--out", default=None)
    gen.set_defaults(func=cmd_gen)

    bench = sub.add_parser("bench", help="sweep random instances and report ratios")
    bench.add_argument("--count", type=int, required=True)
    bench.add_argument("--n-range", default="2:6")
    bench.add_argument("--m-range", default="4:8")
    bench.add_argument("--k-mode", choices=["random", "half"], default="random")
    bench.add_argument("--epsilon", type=float, default=DEFAULT_EPSILON)
    bench.add_argument("--seed", type=int, default=0)
    bench.add_argument("--algorithms", default="minisum,kcompletion,ptas")
    bench.add_argument("--timing", action="store_true")
    bench.set_defaults(func=cmd_bench)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except BallotParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ValueError,) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except BudgetExceededError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BUDGET


def entry_point() -> None:  # console_scripts hook
    sys.exit(main())

"""Batch command-line front end.

Subcommands: gen (emit a polytope file), center (analytic center),
sample (run the walk, emit CSV), verify (run the check suite).

Exit codes: 0 success, 1 verification failure, 2 usage or parse error,
3 runtime failure (no convergence, unbounded chord, failed factorization).
"""

from __future__ import annotations

import argparse
import math
import os
import sys
from concurrent import futures
from dataclasses import replace

import numpy as np

from . import barrier, polytope, verify, walk
from .errors import (
    BoundaryPoint,
    DikinWalkError,
    InvalidSpec,
    NoConvergence,
    NotPositiveDefinite,
    OutOfRange,
    ParseError,
    UnboundedChord,
)

_USAGE_ERRORS = (InvalidSpec, ParseError, OutOfRange, BoundaryPoint)
_RUNTIME_ERRORS = (NoConvergence, UnboundedChord, NotPositiveDefinite)

EXIT_OK = 0
EXIT_VERIFY_FAIL = 1
EXIT_USAGE = 2
EXIT_RUNTIME = 3


def _fallback_seed() -> int:
    env = os.environ.get("DIKIN_SEED")
    if env is None:
        return 1
    try:
        return int(env)
    except ValueError:
        raise OutOfRange(f"DIKIN_SEED must be an integer, got {env!r}") from None


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="dikinwalk",
        description="Sample uniformly from H-polytopes with the Gaussian Dikin walk.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("gen", help="generate a polytope file")
    gen.add_argument("--spec", required=True,
                     help="cube:n | simplex:n | random:m,n,seed")
    gen.add_argument("--out", help="output path (default: stdout)")

    center = sub.add_parser("center", help="find the analytic center")
    _add_polytope_source(center)
    center.add_argument("--start", help="comma-separated interior start point")

    sample = sub.add_parser("sample", help="run the walk and emit samples as CSV")
    _add_polytope_source(sample)
    sample.add_argument("--start", help="comma-separated interior start point")
    sample.add_argument("--steps", type=int, default=10_000,
                        help="total walk steps (default 10000)")
    sample.add_argument("--burnin", type=int, default=0,
                        help="steps to discard before emitting (default 0)")
    sample.add_argument("--thin", type=int, default=1,
                        help="emit every thin-th point (default 1)")
    group = sample.add_mutually_exclusive_group()
    group.add_argument("--radius", type=float,
                       help="proposal radius (default 0.5)")
    group.add_argument("--epsilon", type=float,
                       help="derive the radius from the proved-regime formula")
    sample.add_argument("--laziness", type=float, default=0.5,
                        help="stay-put probability per step (default 0.5)")
    sample.add_argument("--seed", type=int, help="RNG seed (default: $DIKIN_SEED or 1)")
    sample.add_argument("--chains", type=int, default=1,
                        help="independent chains with derived seeds (default 1)")
    sample.add_argument("--out", help="CSV output path (default: stdout)")
    sample.add_argument("--stats", help="write a key: value stats summary here")

    ver = sub.add_parser("verify", help="run the verification suite")
    ver.add_argument("--checks", help="comma-separated subset of check names")
    ver.add_argument("--seed", type=int, help="RNG seed (default: $DIKIN_SEED or 1)")
    ver.add_argument("--samples", type=int,
                     help="override the Monte-Carlo sample count per check")
    ver.add_argument("--epsilon", type=float, default=0.5,
                     help="epsilon for the epsilon-dependent checks (default 0.5)")
    return parser


def _add_polytope_source(sub: argparse.ArgumentParser):
    group = sub.add_mutually_exclusive_group(required=True)
    group.add_argument("--polytope", help="polytope file to read")
    group.add_argument("--gen", help="generator spec cube:n | simplex:n | random:m,n,seed")


def _load_polytope(args) -> polytope.Polytope:
    if args.polytope is not None:
        try:
            with open(args.polytope, "r", encoding="utf-8") as handle:
                return polytope.parse(handle.read())
        except OSError as exc:
            raise InvalidSpec(f"cannot read {args.polytope}: {exc}") from None
    return polytope.from_spec(args.gen)


def _parse_point(text: str, n: int) -> np.ndarray:
    try:
        values = [float(t) for t in text.replace(",", " ").split()]
    except ValueError:
        raise InvalidSpec(f"bad point {text!r}") from None
    if len(values) != n:
        raise InvalidSpec(f"point has {len(values)} coordinates, expected {n}")
    return np.array(values)


def _default_start(args, body: polytope.Polytope) -> np.ndarray:
    if args.start is not None:
        return _parse_point(args.start, body.n)
    if args.gen is not None:
        kind = args.gen.partition(":")[0]
        if kind == "cube":
            return np.full(body.n, 0.5)
        if kind == "simplex":
            return np.full(body.n, 1.0 / (body.n + 1))
        if kind == "random":
            return np.zeros(body.n)
    origin = np.zeros(body.n)
    if polytope.contains_interior(body, origin):
        return origin
    raise InvalidSpec(
        "no interior start point known for this polytope; pass --start"
    )


def _cmd_gen(args) -> int:
    body = polytope.from_spec(args.spec)
    text = polytope.to_text(body)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as handle:
            handle.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def _cmd_center(args) -> int:
    body = _load_polytope(args)
    start = _default_start(args, body)
    center = barrier.analytic_center(body, start)
    for value in center.coords:
        print(format(float(value), ".12g"))
    return EXIT_OK


def _derived_chain_seed(seed: int, index: int) -> int:
    entropy = [seed & 0xFFFFFFFFFFFFFFFF, index]
    return int(np.random.SeedSequence(entropy).generate_state(1, dtype=np.uint64)[0])


def _cmd_sample(args) -> int:
    body = _load_polytope(args)
    if args.steps < args.burnin:
        raise OutOfRange("--steps must be at least --burnin")
    if args.chains < 1:
        raise OutOfRange("--chains must be >= 1")
    seed = args.seed if args.seed is not None else _fallback_seed()
    if args.epsilon is not None:
        radius = walk.default_radius(args.epsilon)
    elif args.radius is not None:
        if args.radius <= 0.0:
            raise OutOfRange("--radius must be positive")
        radius = args.radius
    else:
        radius = 0.5
    if not 0.0 <= args.laziness <= 1.0:
        raise OutOfRange("--laziness must lie in [0, 1]")
    if args.thin < 1 or args.burnin < 0:
        raise OutOfRange("--thin must be >= 1 and --burnin >= 0")

    start = _default_start(args, body)
    center = barrier.analytic_center(body, start)
    cfg = walk.WalkConfig(radius=radius, laziness=args.laziness, seed=seed,
                          burn_in=args.burnin, thin=args.thin)

    if args.chains == 1:
        chain_cfgs = [cfg]
    else:
        chain_cfgs = [replace(cfg, seed=_derived_chain_seed(seed, i))
                      for i in range(args.chains)]
    results = []
    with futures.ThreadPoolExecutor(max_workers=min(args.chains, 8)) as pool:
        jobs = [pool.submit(walk.run_chain, body, center, c, args.steps)
                for c in chain_cfgs]
        results = [job.result() for job in jobs]  # chain order, not completion order

    totals = walk.ChainStats()
    blocks = []
    for samples, stats in results:
        blocks.append(samples)
        for key, value in stats.as_dict().items():
            setattr(totals, key, getattr(totals, key) + value)
    samples = np.vstack(blocks) if blocks else np.empty((0, body.n))

    lines = [",".join(f"x{i + 1}" for i in range(body.n))]
    for row in samples:
        lines.append(",".join(format(float(v), ".15g") for v in row))
    payload = "\n".join(lines) + "\n"
    if args.out:
        with open(args.out, "w", encoding="utf-8") as handle:
            handle.write(payload)
    else:
        sys.stdout.write(payload)

    if args.stats:
        info = {
            "m": body.m,
            "n": body.n,
            "radius": format(radius, ".12g"),
            "epsilon": "" if args.epsilon is None else format(args.epsilon, ".12g"),
            "laziness": format(args.laziness, ".12g"),
            "seed": seed,
            "chains": args.chains,
            "steps_per_chain": args.steps,
            "burn_in": args.burnin,
            "thin": args.thin,
            "emitted": samples.shape[0],
        }
        info.update(totals.as_dict())
        with open(args.stats, "w", encoding="utf-8") as handle:
            for key, value in info.items():
                handle.write(f"{key}: {value}\n")
    return EXIT_OK


def _cmd_verify(args) -> int:
    seed = args.seed if args.seed is not None else _fallback_seed()
    names = None
    if args.checks is not None:
        names = [token.strip() for token in args.checks.split(",") if token.strip()]
        if not names:
            raise InvalidSpec("--checks must name at least one check")
    try:
        reports = verify.run_checks(names=names, seed=seed,
                                    num_samples=args.samples,
                                    epsilon=args.epsilon)
    except KeyError as exc:
        raise InvalidSpec(str(exc.args[0])) from None
    all_passed = True
    for report in reports:
        status = "PASS" if report.passed else "FAIL"
        all_passed = all_passed and report.passed
        print(f"{report.check_name:<20s} empirical={report.empirical: .6e} "
              f"bound={report.bound: .6e} n={report.samples:<8d} {status}")
    return EXIT_OK if all_passed else EXIT_VERIFY_FAIL


_COMMANDS = {
    "gen": _cmd_gen,
    "center": _cmd_center,
    "sample": _cmd_sample,
    "verify": _cmd_verify,
}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code in (0, None) else EXIT_USAGE
    try:
        return _COMMANDS[args.command](args)
    except _USAGE_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except _RUNTIME_ERRORS as exc:
        print(f"runtime error: {exc}", file=sys.stderr)
        return EXIT_RUNTIME


if __name__ == "__main__":
    sys.exit(main())

"""Command line interface.

Subcommands: power, classify, mols, verify, sample.  JSON is the canonical
output format; identical invocations (including seed) produce byte-identical
JSON regardless of worker count.  Exit codes: 0 success, 2 unparsable
input, 3 unsupported Latin square order, 4 enumeration budget exceeded,
5 verification failure.
"""

from __future__ import annotations

import argparse
import os
import sys
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

import numpy as np

from . import golden
from .catalog import builtin_perm
from .classify import (
    class_bound,
    classify_exhaustive,
    classify_sampled,
    min_nonzero_perm,
)
from .entangle import check_block_conditions, entangling_power
from .errors import (
    BudgetExceeded,
    NotOrthogonal,
    ParseError,
    PermupowerError,
    UnsupportedOrder,
)
from .latin import (
    are_orthogonal,
    construct_mols,
    format_pair,
    is_latin,
    superimpose,
)
from .oracle import mc_power, oracle_power, unitary_of
from .perm_core import format_biperm, parse_biperm, random_perm

# Fixed default seed: bare invocations are reproducible by construction.
DEFAULT_SEED = 42

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_UNSUPPORTED = 3
EXIT_BUDGET = 4
EXIT_VERIFY = 5


@dataclass(frozen=True)
class RunConfig:
    """Everything a subcommand needs, collected from flags and environment."""

    command: str
    dimension: int | None
    seed: int
    samples: int | None
    workers: int
    fmt: str
    out: Path | None
    force: bool


def _default_workers() -> int:
    env = os.environ.get("PERMUPOWER_THREADS")
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            pass
    return 1


def _add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--d", type=int, default=None, help="local dimension")
    parser.add_argument(
        "--seed", type=int, default=DEFAULT_SEED,
        help=f"base seed for random draws (default {DEFAULT_SEED})",
    )
    parser.add_argument(
        "--workers", type=int, default=None,
        help="parallel workers (default: PERMUPOWER_THREADS or 1)",
    )
    parser.add_argument(
        "--format", choices=("json", "csv", "text"), default="json",
        help="output format (json is canonical)",
    )
    parser.add_argument("--out", type=Path, default=None, help="output file")
    parser.add_argument(
        "--force", action="store_true",
        help="override enumeration budget guards",
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="permupower",
        description="Exact entangling power of bipartite permutation operators.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_power = sub.add_parser("power", help="entangling power of one permutation")
    src = p_power.add_mutually_exclusive_group(required=True)
    src.add_argument(
        "--builtin",
        help="named permutation: identity, swap, cnot, m, r9, d6hat, min:<d>, mols:<d>",
    )
    src.add_argument("--file", type=Path, help="permutation file (text form)")
    _add_common(p_power)

    p_cls = sub.add_parser("classify", help="census of permutations by power")
    mode = p_cls.add_mutually_exclusive_group(required=True)
    mode.add_argument("--exhaustive", action="store_true", help="all d^2! permutations")
    mode.add_argument("--samples", type=int, help="number of random permutations")
    p_cls.add_argument(
        "--checkpoint-dir", type=Path, default=None,
        help="persist per-range partial histograms and resume from them",
    )
    _add_common(p_cls)

    p_mols = sub.add_parser("mols", help="construct an orthogonal Latin pair")
    p_mols.add_argument(
        "--table", type=Path, default=None,
        help="load the pair from a file instead of constructing (validated)",
    )
    _add_common(p_mols)

    p_ver = sub.add_parser("verify", help="run a named cross-check suite")
    p_ver.add_argument(
        "target",
        choices=("formula-vs-oracle", "mc-vs-formula", "theorem4", "theorem7", "tables"),
    )
    p_ver.add_argument(
        "--samples", type=int, default=None,
        help="sample count for the statistical targets",
    )
    _add_common(p_ver)

    p_sample = sub.add_parser("sample", help="draw uniform random permutations")
    p_sample.add_argument("--count", type=int, default=1, help="how many to draw")
    _add_common(p_sample)

    return parser


def _config_from_args(args: argparse.Namespace) -> RunConfig:
    return RunConfig(
        command=args.command,
        dimension=args.d,
        seed=args.seed,
        samples=getattr(args, "samples", None),
        workers=args.workers if args.workers is not None else _default_workers(),
        fmt=args.format,
        out=args.out,
        force=args.force,
    )


def _emit(text: str, out: Path | None) -> None:
    if out is None:
        sys.stdout.write(text)
        if not text.endswith("\n"):
            sys.stdout.write("\n")
    else:
        out.write_text(text)


# --- power --------------------------------------------------------------------


def _power_text(report) -> str:
    eps = report.epsilon
    return (
        f"d        {report.d}\n"
        f"q_p      {report.q_p}\n"
        f"q_ps     {report.q_ps}\n"
        f"epsilon  {eps.numerator}/{eps.denominator} = {float(eps):.12g}\n"
    )


def _power_csv(report) -> str:
    eps = report.epsilon
    return (
        "d,q_p,q_ps,epsilon_num,epsilon_den,epsilon_float\n"
        f"{report.d},{report.q_p},{report.q_ps},"
        f"{eps.numerator},{eps.denominator},{float(eps):.12g}\n"
    )


def cmd_power(args: argparse.Namespace, cfg: RunConfig) -> int:
    if args.builtin is not None:
        perm = builtin_perm(args.builtin, cfg.dimension)
    else:
        perm = parse_biperm(args.file.read_text())
    report = entangling_power(perm)
    if cfg.fmt == "json":
        _emit(report.to_json() + "\n", cfg.out)
    elif cfg.fmt == "csv":
        _emit(_power_csv(report), cfg.out)
    else:
        _emit(_power_text(report), cfg.out)
    return EXIT_OK


# --- classify -------------------------------------------------------------------


def cmd_classify(args: argparse.Namespace, cfg: RunConfig) -> int:
    d = cfg.dimension
    if d is None:
        raise ParseError("classify needs --d")
    if args.exhaustive:
        hist = classify_exhaustive(
            d, workers=cfg.workers, force=cfg.force,
            checkpoint_dir=args.checkpoint_dir,
        )
        stats = None
    else:
        hist, stats = classify_sampled(d, args.samples, cfg.seed, workers=cfg.workers)

    payload = hist.to_csv() if cfg.fmt == "csv" else hist.to_json() + "\n"
    out = cfg.out
    if out is None:
        suffix = "csv" if cfg.fmt == "csv" else "json"
        out = Path(f"classify-d{d}-{hist.mode}.{suffix}")
    out.write_text(payload)

    mean = hist.mean()
    print(f"classes   {len(hist.classes)} (bound {class_bound(d)})")
    print(f"total     {hist.total}")
    print(f"mean      {mean} = {float(mean):.6f}")
    if stats is not None:
        print(f"sampled   mean {stats.mean_epsilon:.6f} +- {stats.std_error:.2g} "
              f"(seed {stats.seed})")
    print(f"written   {out}")
    return EXIT_OK


# --- mols ----------------------------------------------------------------------


def cmd_mols(args: argparse.Namespace, cfg: RunConfig) -> int:
    d = cfg.dimension
    if d is None:
        raise ParseError("mols needs --d")
    pair = construct_mols(d, table_file=args.table)
    perm = superimpose(pair)
    out = cfg.out if cfg.out is not None else Path(f"mols-d{d}.txt")
    perm_path = Path(str(out) + ".perm")
    out.write_text(format_pair(pair))
    perm_path.write_text(format_biperm(perm))
    report = entangling_power(perm)
    print(f"pair      {out}")
    print(f"perm      {perm_path}")
    print(f"epsilon   {report.epsilon} (maximum d/(d+1) = {Fraction(d, d + 1)})")
    return EXIT_OK


# --- sample --------------------------------------------------------------------


def cmd_sample(args: argparse.Namespace, cfg: RunConfig) -> int:
    d = cfg.dimension
    if d is None:
        raise ParseError("sample needs --d")
    rng = np.random.default_rng(cfg.seed)
    blocks = [format_biperm(random_perm(d, rng)) for _ in range(args.count)]
    _emit("\n".join(blocks), cfg.out)
    return EXIT_OK


# --- verify --------------------------------------------------------------------


class _VerifyFailure(Exception):
    pass


def _check(label: str, ok: bool, expected, actual) -> None:
    status = "pass" if ok else "FAIL"
    print(f"[{status}] {label}: expected {expected}, got {actual}")
    if not ok:
        raise _VerifyFailure(label)


def _verify_formula_vs_oracle(cfg: RunConfig) -> None:
    d = cfg.dimension or 3
    samples = cfg.samples or 100
    rng = np.random.default_rng(cfg.seed)
    worst = 0.0
    for _ in range(samples):
        perm = random_perm(d, rng)
        exact = float(entangling_power(perm).epsilon)
        dense = oracle_power(unitary_of(perm))
        worst = max(worst, abs(exact - dense))
    _check(
        f"formula vs oracle, {samples} random permutations at d={d}",
        worst <= 1e-10, "max |diff| <= 1e-10", f"max |diff| = {worst:.2e}",
    )


def _mc_within(perm, label: str, samples: int, seed: int) -> None:
    exact = float(entangling_power(perm).epsilon)
    # statistical check: one reseeded retry tolerated before failing
    for s in (seed, seed + 1):
        mean, se = mc_power(unitary_of(perm), samples, s)
        dev = abs(mean - exact) / se if se > 0 else 0.0
        if dev <= 5.0 or mean == exact:
            _check(f"monte carlo vs formula, {label}", True,
                   f"within 5 SE of {exact:.6f}", f"{dev:.2f} SE")
            return
    _check(f"monte carlo vs formula, {label}", False,
           f"within 5 SE of {exact:.6f}", f"{dev:.2f} SE after retry")


def _verify_mc_vs_formula(cfg: RunConfig) -> None:
    samples = cfg.samples or 100_000
    _mc_within(builtin_perm("cnot"), "cnot", samples, cfg.seed)
    _mc_within(builtin_perm("r9"), "r9", samples, cfg.seed + 101)
    d = cfg.dimension or 3
    rng = np.random.default_rng(cfg.seed)
    for idx in range(3):
        perm = random_perm(d, rng)
        _mc_within(perm, f"random d={d} #{idx}", samples, cfg.seed + 200 + idx)


def _verify_theorem4(cfg: RunConfig) -> None:
    dims = [cfg.dimension] if cfg.dimension else [3, 4, 5, 7, 8, 9, 11, 12]
    for d in dims:
        pair = construct_mols(d)
        ok = (
            is_latin(pair.first.cells)
            and is_latin(pair.second.cells)
            and are_orthogonal(pair.first, pair.second)
        )
        _check(f"d={d} constructed pair is orthogonal Latin", ok, True, ok)
        report = entangling_power(superimpose(pair))
        _check(
            f"d={d} superimposed power",
            report.epsilon == Fraction(d, d + 1),
            f"{d}/{d + 1}", str(report.epsilon),
        )
        blocks = check_block_conditions(superimpose(pair))
        _check(f"d={d} block conditions", blocks.all(), "all four", blocks)


def _verify_theorem7(cfg: RunConfig) -> None:
    dims = [cfg.dimension] if cfg.dimension else list(range(2, 9))
    for d in dims:
        report = entangling_power(min_nonzero_perm(d))
        expected = Fraction(8 * (d - 1), d * (d + 1) ** 2)
        _check(
            f"d={d} minimal nonzero power",
            report.epsilon == expected, str(expected), str(report.epsilon),
        )


def _verify_tables(cfg: RunConfig) -> None:
    dims = [cfg.dimension] if cfg.dimension else [2, 3]
    for d in dims:
        if d not in (2, 3):
            raise BudgetExceeded("reference census only available for d = 2, 3")
        hist = classify_exhaustive(d, workers=cfg.workers)
        expected = golden.expected_census(d)
        _check(
            f"d={d} census classes",
            dict(hist.classes) == expected,
            f"{len(expected)} known classes", f"{len(hist.classes)} classes",
        )
        mean = hist.mean()
        _check(
            f"d={d} census mean", mean == golden.EXPECTED_MEAN[d],
            str(golden.EXPECTED_MEAN[d]), str(mean),
        )


def cmd_verify(args: argparse.Namespace, cfg: RunConfig) -> int:
    runner = {
        "formula-vs-oracle": _verify_formula_vs_oracle,
        "mc-vs-formula": _verify_mc_vs_formula,
        "theorem4": _verify_theorem4,
        "theorem7": _verify_theorem7,
        "tables": _verify_tables,
    }[args.target]
    try:
        runner(cfg)
    except _VerifyFailure:
        return EXIT_VERIFY
    print("all checks passed")
    return EXIT_OK


# --- entry point ----------------------------------------------------------------


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    cfg = _config_from_args(args)
    handler = {
        "power": cmd_power,
        "classify": cmd_classify,
        "mols": cmd_mols,
        "verify": cmd_verify,
        "sample": cmd_sample,
    }[args.command]
    try:
        return handler(args, cfg)
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except (UnsupportedOrder, NotOrthogonal) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_UNSUPPORTED
    except BudgetExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except PermupowerError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())

"""Command-line interface.

Subcommands:
  generate sgrow   grow a stream from an initial snapshot file
  generate ff      one-level forest-fire baseline stream
  generate spa     strength-preferential-attachment baseline stream
  analyze          per-snapshot metrics CSV over k timeline points
  burst-stats      burst-size histogram CSV

Exit codes: 0 success, 1 usage/validation error, 2 I/O error.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from collections import Counter

from . import analysis, stream_io
from .baselines import FFConfig, SPAConfig, ff_generate, spa_generate
from .core import full_snapshot, segment_bursts
from .sgrow import (
    GeneratorState,
    SGrowConfig,
    SLIDE_LITERAL,
    SLIDE_TEXTUAL,
    run_until,
)


class CLIUsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # argparse exits 2 on bad flags; the documented contract is exit 1
    def error(self, message):
        raise CLIUsageError(message)


def _build_parser() -> _Parser:
    parser = _Parser(prog="butterstream", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("generate", help="generate a stream file")
    gen_sub = gen.add_subparsers(dest="model", required=True)

    sgrow_p = gen_sub.add_parser("sgrow", help="windowed burst-based growth model")
    sgrow_p.add_argument("--g0", required=True, help="initial snapshot stream file")
    sgrow_p.add_argument("--target", type=int, required=True, help="total records to emit")
    sgrow_p.add_argument("--seed", type=int, required=True)
    sgrow_p.add_argument("--rho", type=float, default=None)
    sgrow_p.add_argument("--M", dest="M", type=int, default=None)
    sgrow_p.add_argument("--beta", type=int, default=None)
    sgrow_p.add_argument("--lmin", type=int, default=None)
    sgrow_p.add_argument("--lmax", type=int, default=None)
    sgrow_p.add_argument(
        "--slide-mode", choices=[SLIDE_LITERAL, SLIDE_TEXTUAL], default=None
    )
    sgrow_p.add_argument(
        "--no-copy-step", action="store_true",
        help="skip neighborhood copying (low-burstiness streams)",
    )
    sgrow_p.add_argument("--config", default=None, help="JSON file with base parameters")
    sgrow_p.add_argument("--rescale", action="store_true", help="rescale g0 ratings to [1,5]")
    sgrow_p.add_argument(
        "--switch-at", type=int, default=None,
        help="record count at which to switch parameters mid-stream",
    )
    sgrow_p.add_argument(
        "--switch-config", default=None,
        help="JSON file with parameters for the post-switch phase",
    )
    sgrow_p.add_argument("--out", required=True)

    ff_p = gen_sub.add_parser("ff", help="one-level forest-fire baseline")
    ff_p.add_argument("--p", type=float, required=True, help="forward-burning probability")
    ff_p.add_argument("--pb", type=float, required=True, help="backward-burning probability")
    ff_p.add_argument("--steps", type=int, required=True)
    ff_p.add_argument("--seed", type=int, required=True)
    ff_p.add_argument("--out", required=True)

    spa_p = gen_sub.add_parser("spa", help="strength-preferential attachment baseline")
    spa_p.add_argument("--m", type=int, required=True, help="edges per new vertex")
    spa_p.add_argument("--steps", type=int, required=True)
    spa_p.add_argument("--seed", type=int, required=True)
    spa_p.add_argument("--out", required=True)

    ana = sub.add_parser("analyze", help="per-snapshot metrics CSV")
    ana.add_argument("stream", help="stream file to analyze")
    ana.add_argument("-k", "--snapshots", type=int, default=20)
    ana.add_argument("--rescale", action="store_true")
    ana.add_argument("--ref", default=None, help="reference report CSV for MAE summary")
    ana.add_argument("--out", default=None, help="output CSV path (default stdout)")

    bst = sub.add_parser("burst-stats", help="burst-size histogram CSV")
    bst.add_argument("stream")
    bst.add_argument("--out", default=None)
    return parser


def _sgrow_config(args) -> SGrowConfig:
    base: dict = {}
    if args.config:
        with open(args.config, "rt", encoding="utf-8") as fh:
            base = json.load(fh)

    def pick(flag_value, key, default):
        if flag_value is not None:
            return flag_value
        return base.get(key, default)

    return SGrowConfig(
        rho=pick(args.rho, "rho", 0.3),
        M=pick(args.M, "M", 50),
        beta=pick(args.beta, "beta", 5),
        l_min=pick(args.lmin, "l_min", 1),
        l_max=pick(args.lmax, "l_max", 2),
        copy_step_enabled=(
            False if args.no_copy_step else base.get("copy_step_enabled", True)
        ),
        target_sgrs=args.target,
        seed=args.seed,
        slide_mode=pick(args.slide_mode, "slide_mode", SLIDE_LITERAL),
    )


def _switch_config(path, base: SGrowConfig) -> SGrowConfig:
    with open(path, "rt", encoding="utf-8") as fh:
        override = json.load(fh)
    return SGrowConfig(
        rho=override.get("rho", base.rho),
        M=override.get("M", base.M),
        beta=override.get("beta", base.beta),
        l_min=override.get("l_min", base.l_min),
        l_max=override.get("l_max", base.l_max),
        copy_step_enabled=override.get("copy_step_enabled", base.copy_step_enabled),
        target_sgrs=base.target_sgrs,
        seed=base.seed,  # the RNG continues from the first phase; seed is not re-applied
        slide_mode=override.get("slide_mode", base.slide_mode),
    )


def cmd_generate(args) -> int:
    if args.model == "sgrow":
        if (args.switch_at is None) != (args.switch_config is None):
            raise CLIUsageError("--switch-at and --switch-config must be given together")
        config = _sgrow_config(args)
        g0 = stream_io.read_stream(args.g0, rescale=args.rescale)
        snapshot = full_snapshot(g0)
        t0 = time.perf_counter()

        def checkpoint(count, _elapsed):
            print(
                f"# sgrs={count} elapsed={time.perf_counter() - t0:.3f}s",
                file=sys.stderr,
            )

        state = GeneratorState(snapshot, config)
        if args.switch_at is not None:
            if not len(state.stream) <= args.switch_at <= config.target_sgrs:
                raise CLIUsageError(
                    "--switch-at must lie between the g0 size and --target"
                )
            run_until(state, config, args.switch_at, checkpoint)
            config = _switch_config(args.switch_config, config)
        run_until(state, config, config.target_sgrs, checkpoint)
        stream = state.stream
    elif args.model == "ff":
        stream = ff_generate(
            FFConfig(p=args.p, p_b=args.pb, n_steps=args.steps, seed=args.seed)
        )
    else:
        stream = spa_generate(
            SPAConfig(m=args.m, n_steps=args.steps, seed=args.seed)
        )
    stream_io.write_stream(stream, args.out)
    return 0


def cmd_analyze(args) -> int:
    stream = stream_io.read_stream(args.stream, rescale=args.rescale)
    report = analysis.build_report(stream, k=args.snapshots)
    mae = None
    if args.ref:
        mae = analysis.mae_vs_reference(report, analysis.read_report_csv(args.ref))
    if args.out:
        with open(args.out, "wt", encoding="utf-8", newline="") as fh:
            analysis.report_to_csv(report, fh, mae=mae)
    else:
        analysis.report_to_csv(report, sys.stdout, mae=mae)
    return 0


def cmd_burst_stats(args) -> int:
    stream = stream_io.read_stream(args.stream)
    sizes = Counter(b.length for b in segment_bursts(stream))
    lines = ["burst_size,frequency"]
    for size in sorted(sizes, reverse=True):
        lines.append(f"{size},{sizes[size]}")
    text = "\n".join(lines) + "\n"
    if args.out:
        with open(args.out, "wt", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        if args.command == "generate":
            return cmd_generate(args)
        if args.command == "analyze":
            return cmd_analyze(args)
        return cmd_burst_stats(args)
    except CLIUsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (ValueError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())

"""Command-line front end.

Thin adapters only: each subcommand parses flags (or a JSON config
file), calls the corresponding library routine, writes a CSV or JSON
artifact, and prints a one-line summary. Exit codes: 0 success, 2
invalid configuration or usage, 1 runtime failure.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from .coherence import analog_coherence, tail_bound_violation_rate
from .experiments import (
    SensingConfig,
    default_m_grid,
    phase_transition,
    recovery_curve,
    run_trial,
)
from .operators import make_transform

SUBCOMMANDS = ("coherence-table", "lemma1-check", "phase-transition", "recovery-curve", "reconstruct")


def _float_list(value) -> list[float]:
    if isinstance(value, (list, tuple)):
        return [float(v) for v in value]
    return [float(tok) for tok in str(value).split(",") if tok.strip()]


def _int_list(value) -> list[int]:
    if isinstance(value, (list, tuple)):
        return [int(v) for v in value]
    return [int(tok) for tok in str(value).split(",") if tok.strip()]


def _workers(value):
    if value in (None, "auto"):
        return os.cpu_count() or 1
    count = int(value)
    if count < 1:
        raise ValueError("threads must be >= 1 or 'auto'")
    return count


def _resolve_format(path: Path, fmt: str | None) -> str:
    if fmt:
        return fmt
    return "csv" if path.suffix.lower() == ".csv" else "json"


def _write_rows(path: Path, fmt: str, header: list[str], rows: list[dict]) -> None:
    if fmt == "csv":
        lines = [",".join(header)]
        for row in rows:
            lines.append(",".join(repr(row[k]) if isinstance(row[k], float) else str(row[k]) for k in header))
        path.write_text("\n".join(lines) + "\n")
    else:
        path.write_text(json.dumps(rows, indent=2) + "\n")


def _apply_config_file(args: argparse.Namespace, argv: list[str]) -> None:
    if not getattr(args, "config", None):
        return
    payload = json.loads(Path(args.config).read_text())
    if not isinstance(payload, dict):
        raise ValueError("config file must hold a JSON object")
    allowed = {k for k in vars(args) if k not in ("config", "func")}
    unknown = set(payload) - allowed
    if unknown:
        raise ValueError(f"unknown config keys: {sorted(unknown)}")
    for key, value in payload.items():
        flag = "--" + key.replace("_", "-")
        explicit = any(tok == flag or tok.startswith(flag + "=") for tok in argv)
        if not explicit:
            setattr(args, key, value)


def _require(args, *names) -> None:
    missing = [n for n in names if getattr(args, n, None) is None]
    if missing:
        flags = ", ".join("--" + n.replace("_", "-") for n in missing)
        raise ValueError(f"missing required parameter(s): {flags}")


def _cmd_coherence_table(args) -> str:
    _require(args, "output")
    out = Path(args.output)
    fmt = _resolve_format(out, args.format)
    rows = []
    for kind in str(args.sparsity).split(","):
        kind = kind.strip()
        for w_bar in _float_list(args.wbar):
            report = analog_coherence(kind, args.n, w_bar)
            rows.append(
                {
                    "sparsity": kind,
                    "w_bar": w_bar,
                    "N": report.n_signal,
                    "N_w": report.n_upsampled,
                    "mu_w": report.mu,
                    "product": report.product_nw_mu2,
                }
            )
    _write_rows(out, fmt, ["sparsity", "w_bar", "N", "N_w", "mu_w", "product"], rows)
    return f"coherence-table: n={args.n} rows={len(rows)} -> {out}"


def _cmd_lemma1_check(args) -> str:
    _require(args, "output")
    out = Path(args.output)
    fmt = _resolve_format(out, args.format)
    sensing = make_transform(args.sensing, args.n)
    sparsity = make_transform(args.sparsity, args.n)
    rows = []
    worst_margin = -1.0
    for epsilon in _float_list(args.epsilon):
        rate = tail_bound_violation_rate(sensing, sparsity, args.kind, epsilon, args.trials, args.seed)
        rows.append(
            {
                "sensing": args.sensing,
                "sparsity": args.sparsity,
                "n": args.n,
                "kind": args.kind,
                "epsilon": epsilon,
                "trials": args.trials,
                "violation_rate": rate,
            }
        )
        worst_margin = max(worst_margin, rate - epsilon)
    _write_rows(
        out, fmt,
        ["sensing", "sparsity", "n", "kind", "epsilon", "trials", "violation_rate"],
        rows,
    )
    status = "holds" if worst_margin <= 0 else "VIOLATED"
    return f"lemma1-check: n={args.n} trials={args.trials} bound {status} -> {out}"


def _cmd_phase_transition(args) -> str:
    _require(args, "output")
    out = Path(args.output)
    report = phase_transition(
        sensing_kind=args.sensing,
        sparsity_kind=args.sparsity,
        modulation_kind=args.modulation,
        n=args.n,
        s_grid=_int_list(args.s_grid),
        m_rule=_int_list(args.m_multipliers),
        trials=args.trials,
        seed=args.seed,
        index_law=args.law,
        workers=_workers(args.threads),
    )
    report.save(out, _resolve_format(out, args.format))
    return (
        f"phase-transition: {args.sensing}/{args.sparsity} mod={args.modulation} "
        f"cells={len(report.cells)} trials={args.trials} runtime={report.runtime_seconds:.1f}s -> {out}"
    )


def _cmd_recovery_curve(args) -> str:
    _require(args, "output")
    out = Path(args.output)
    m_grid = _int_list(args.m_grid) if args.m_grid else default_m_grid(args.n, args.s)
    report = recovery_curve(
        sparsity_kind=args.sparsity,
        n=args.n,
        s=args.s,
        w_bar_list=_float_list(args.wbar),
        m_grid=m_grid,
        trials=args.trials,
        seed=args.seed,
        index_law=args.law,
        workers=_workers(args.threads),
    )
    report.save(out, _resolve_format(out, args.format))
    return (
        f"recovery-curve: sparsity={args.sparsity} n={args.n} s={args.s} "
        f"cells={len(report.cells)} trials={args.trials} runtime={report.runtime_seconds:.1f}s -> {out}"
    )


def _cmd_reconstruct(args) -> str:
    _require(args, "n", "s", "m")
    config = SensingConfig(
        sensing_kind=args.sensing,
        sparsity_kind=args.sparsity,
        n=args.n,
        m=args.m,
        s=args.s,
        modulation=args.modulation,
        chirp_rate=args.wbar,
        index_law=args.law,
        snr_db=args.snr_db,
        seed=args.seed,
    )
    result = run_trial(config, args.seed)
    if args.output:
        doc = {
            "config": {
                "sensing_kind": config.sensing_kind,
                "sparsity_kind": config.sparsity_kind,
                "n": config.n,
                "m": config.m,
                "s": config.s,
                "modulation": config.modulation,
                "chirp_rate": config.chirp_rate,
                "index_law": config.index_law,
                "snr_db": config.snr_db,
                "seed": config.seed,
            },
            "rel_error": result.rel_error,
            "recovered": result.recovered,
        }
        Path(args.output).write_text(json.dumps(doc, indent=2) + "\n")
    return (
        f"reconstruct: {args.sensing}/{args.sparsity} mod={args.modulation} n={args.n} s={args.s} "
        f"m={args.m} rel_error={result.rel_error:.3e} recovered={result.recovered}"
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="spreadcs",
        description="Spread spectrum compressed sensing experiments",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p):
        p.add_argument("--config", help="JSON file supplying flag values (explicit flags win)")
        p.add_argument("--format", choices=("csv", "json"), default=None, help="artifact format (default: by file extension)")
        p.add_argument("--seed", type=int, default=0)

    p = sub.add_parser("coherence-table", help="coherence products of the chirp chain, one row per (sparsity, rate)")
    add_common(p)
    p.add_argument("--n", type=int, default=1024)
    p.add_argument("--sparsity", default="dirac,fourier", help="comma-separated sparsity bases")
    p.add_argument("--wbar", default="0,0.1,0.25,0.5", help="comma-separated chirp rates")
    p.add_argument("-o", "--output", default=None)
    p.set_defaults(func=_cmd_coherence_table)

    p = sub.add_parser("lemma1-check", help="Monte Carlo check of the modulated-coherence tail bound")
    add_common(p)
    p.add_argument("--n", type=int, default=64)
    p.add_argument("--sensing", default="fourier")
    p.add_argument("--sparsity", default="haar")
    p.add_argument("--kind", choices=("rademacher", "steinhaus"), default="rademacher")
    p.add_argument("--epsilon", default="0.05,0.2", help="comma-separated tail probabilities")
    p.add_argument("--trials", type=int, default=500)
    p.add_argument("-o", "--output", default=None)
    p.set_defaults(func=_cmd_lemma1_check)

    p = sub.add_parser("phase-transition", help="recovery probability over an (s, m) grid")
    add_common(p)
    p.add_argument("--n", type=int, default=128)
    p.add_argument("--sensing", default="fourier")
    p.add_argument("--sparsity", default="dirac")
    p.add_argument("--modulation", default="none", choices=("none", "rademacher", "steinhaus"))
    p.add_argument("--s-grid", default="4,8,16")
    p.add_argument("--m-multipliers", default="1,2,3,4,5,6,7,8,9,10")
    p.add_argument("--trials", type=int, default=50)
    p.add_argument("--law", default="iid_uniform", choices=("iid_uniform", "uniform_without_replacement"))
    p.add_argument("--threads", default="auto")
    p.add_argument("-o", "--output", default=None)
    p.set_defaults(func=_cmd_phase_transition)

    p = sub.add_parser("recovery-curve", help="recovery probability vs m for the chirp chain")
    add_common(p)
    p.add_argument("--n", type=int, default=256)
    p.add_argument("--sparsity", default="dirac")
    p.add_argument("--s", type=int, default=10)
    p.add_argument("--wbar", default="0,0.1,0.25,0.5")
    p.add_argument("--m-grid", default=None, help="comma-separated m values (default: geometric grid)")
    p.add_argument("--trials", type=int, default=50)
    p.add_argument("--law", default="iid_uniform", choices=("iid_uniform", "uniform_without_replacement"))
    p.add_argument("--threads", default="auto")
    p.add_argument("-o", "--output", default=None)
    p.set_defaults(func=_cmd_recovery_curve)

    p = sub.add_parser("reconstruct", help="single seeded acquisition and recovery")
    add_common(p)
    p.add_argument("--n", type=int, default=None)
    p.add_argument("--s", type=int, default=None)
    p.add_argument("--m", type=int, default=None)
    p.add_argument("--sensing", default="fourier")
    p.add_argument("--sparsity", default="dirac")
    p.add_argument("--modulation", default="none", choices=("none", "rademacher", "steinhaus", "chirp"))
    p.add_argument("--wbar", type=float, default=0.0, help="chirp rate when --modulation chirp")
    p.add_argument("--snr-db", type=float, default=None)
    p.add_argument("--law", default="iid_uniform", choices=("iid_uniform", "uniform_without_replacement"))
    p.add_argument("-o", "--output", default=None)
    p.set_defaults(func=_cmd_reconstruct)

    return parser


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        _apply_config_file(args, argv)
    except (ValueError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    try:
        summary = args.func(args)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except Exception as exc:  # runtime failure: I/O, worker crash, ...
        print(f"failure: {exc}", file=sys.stderr)
        return 1
    print(summary)
    return 0


def entry_point() -> None:
    raise SystemExit(main())

"""Command-line front end: load a scenario file, run analytical/simulated
sweeps, and emit plain CSV plus a JSON manifest sidecar for reproduction.

Exit codes: 0 success, 1 configuration/usage error, 2 numerical failure.
"""

from __future__ import annotations

import argparse
import datetime
import json
import sys
from dataclasses import asdict, replace

from . import __version__
from .channel import make_channel
from .config import ConfigError, SystemConfig, load_config, validate
from .metrics import NumericalError, pep_joint, pep_rpm, pep_ssk
from .simulate import resolve_workers, run_sweep


def _fmt(value) -> str:
    """CSV cell formatting: '.' decimal point, lowercase scientific notation,
    shortest round-trip form for floats."""
    if value is None:
        return ""
    if isinstance(value, str):
        return value
    if isinstance(value, bool):
        return str(int(value))
    if isinstance(value, int):
        return str(value)
    return repr(float(value))


def _write_csv(path: str, header: list[str], rows: list[list]) -> None:
    lines = [",".join(header)]
    lines.extend(",".join(_fmt(v) for v in row) for row in rows)
    with open(path, "w", encoding="ascii", newline="\n") as fh:
        fh.write("\n".join(lines) + "\n")


def _write_manifest(path: str, cfg: SystemConfig, command: str, mode: str | None,
                    args: argparse.Namespace, workers: int) -> None:
    manifest = {
        "tool": "irs-sskrpm",
        "version": __version__,
        "command": command,
        "mode": mode,
        "config": asdict(cfg),
        "exact_pep": bool(getattr(args, "exact_pep", False)),
        "paper_literal_args": bool(getattr(args, "paper_literal_args", False)),
        "workers": workers,
        "started_utc": datetime.datetime.now(datetime.timezone.utc).isoformat(),
    }
    manifest["config"]["snr_grid_db"] = list(cfg.snr_grid_db)
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(manifest, fh, indent=2, sort_keys=True)
        fh.write("\n")


def _load(args: argparse.Namespace) -> SystemConfig:
    cfg = load_config(args.config)
    overrides = {}
    if getattr(args, "trials", None) is not None:
        overrides["trials"] = args.trials
    if getattr(args, "seed", None) is not None:
        overrides["seed"] = args.seed
    if overrides:
        cfg = replace(cfg, **overrides)
    return validate(cfg)


def _cmd_validate(args: argparse.Namespace) -> int:
    cfg = _load(args)
    print(f"ok: N={cfg.n_elements} n_t={cfg.n_t} n_r={cfg.n_r} m_rpm={cfg.m_rpm} "
          f"bits/use={cfg.bits_total} snr points={len(cfg.snr_grid_db)} trials={cfg.trials}")
    return 0


def _cmd_aber(args: argparse.Namespace) -> int:
    cfg = _load(args)
    workers = resolve_workers(None)
    records = run_sweep(cfg, mode=args.mode, exact_pep=args.exact_pep,
                        paper_literal_args=args.paper_literal_args, workers=workers)
    if args.mode == "analytic":
        header = ["snr_db", "aber_analytical"]
        rows = [[r.snr_db, r.aber_analytical] for r in records]
    elif args.mode == "sim":
        header = ["snr_db", "aber_sim", "aber_stderr", "trials"]
        rows = [[r.snr_db, r.aber_sim, r.aber_stderr, r.trials] for r in records]
    else:
        header = ["snr_db", "aber_analytical", "aber_sim", "aber_stderr", "trials"]
        rows = [[r.snr_db, r.aber_analytical, r.aber_sim, r.aber_stderr, r.trials]
                for r in records]
    out = args.out or "aber.csv"
    _write_csv(out, header, rows)
    _write_manifest(out + ".manifest.json", cfg, "aber", args.mode, args, workers)
    print(f"wrote {out} ({len(rows)} rows)")
    return 0


def _cmd_capacity(args: argparse.Namespace) -> int:
    cfg = _load(args)
    workers = resolve_workers(None)
    records = run_sweep(cfg, mode=args.mode, workers=workers)
    if args.mode == "analytic":
        header = ["snr_db", "cap_closed"]
        rows = [[r.snr_db, r.cap_closed] for r in records]
    elif args.mode == "sim":
        header = ["snr_db", "cap_sim", "samples"]
        rows = [[r.snr_db, r.cap_sim, r.trials] for r in records]
    else:
        header = ["snr_db", "cap_closed", "cap_sim", "samples"]
        rows = [[r.snr_db, r.cap_closed, r.cap_sim, r.trials] for r in records]
    out = args.out or "capacity.csv"
    _write_csv(out, header, rows)
    _write_manifest(out + ".manifest.json", cfg, "capacity", args.mode, args, workers)
    print(f"wrote {out} ({len(rows)} rows)")
    return 0


def _cmd_pep(args: argparse.Namespace) -> int:
    cfg = _load(args)
    chan = make_channel(cfg)
    lit = args.paper_literal_args
    header = ["snr_db", "event", "t", "t_hat", "m", "m_hat", "pep_exact", "pep_chiani"]
    rows: list[list] = []
    for snr_db in cfg.snr_grid_db:
        p_s = 10.0 ** (snr_db / 10.0)
        for t in range(1, cfg.n_t + 1):
            for t_hat in range(1, cfg.n_t + 1):
                if t_hat == t:
                    continue
                v = pep_ssk(chan, cfg, t, t_hat, p_s, lit)
                rows.append([snr_db, "ssk", t, t_hat, "", "", v.exact, v.chiani])
        for m in range(1, cfg.m_rpm + 1):
            for m_hat in range(1, cfg.m_rpm + 1):
                if m_hat == m:
                    continue
                v = pep_rpm(chan, cfg, m, m_hat, p_s, lit)
                rows.append([snr_db, "rpm", "", "", m, m_hat, v.exact, v.chiani])
        for m in range(1, cfg.m_rpm + 1):
            for m_hat in range(1, cfg.m_rpm + 1):
                if m_hat == m:
                    continue
                for t in range(1, cfg.n_t + 1):
                    for t_hat in range(1, cfg.n_t + 1):
                        if t_hat == t:
                            continue
                        v = pep_joint(chan, cfg, t, t_hat, m, m_hat, p_s, lit)
                        rows.append([snr_db, "joint", t, t_hat, m, m_hat, v.exact, v.chiani])
    out = args.out or "pep.csv"
    _write_csv(out, header, rows)
    _write_manifest(out + ".manifest.json", cfg, "pep", None, args, 1)
    print(f"wrote {out} ({len(rows)} rows)")
    return 0


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="irs-sskrpm",
        description="Analytical and Monte-Carlo performance of an IRS-assisted "
                    "SSK + reflection-phase-modulation link over Rician fading.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser, with_mode: bool = False) -> None:
        p.add_argument("--config", required=True, help="scenario file (key=value)")
        p.add_argument("--trials", type=int, default=None, help="override trials per point")
        p.add_argument("--seed", type=int, default=None, help="override the RNG seed")
        p.add_argument("--out", default=None, help="output CSV path")
        p.add_argument("--exact-pep", dest="exact_pep", action="store_true",
                       help="use the Craig integral instead of the Chiani closed form")
        p.add_argument("--paper-literal-args", dest="paper_literal_args", action="store_true",
                       help="use the doubled transform-argument convention")
        if with_mode:
            p.add_argument("--mode", choices=["analytic", "sim", "both"], default="both")

    common(sub.add_parser("aber", help="ABER sweep over the SNR grid"), with_mode=True)
    common(sub.add_parser("capacity", help="ergodic-capacity sweep"), with_mode=True)
    common(sub.add_parser("pep", help="per-event PEP table"))
    common(sub.add_parser("validate", help="check a scenario file"))
    return parser


_HANDLERS = {
    "validate": _cmd_validate,
    "aber": _cmd_aber,
    "capacity": _cmd_capacity,
    "pep": _cmd_pep,
}


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse exits 2 on usage errors, 0 on --help
        return 0 if exc.code == 0 else 1
    try:
        return _HANDLERS[args.command](args)
    except (ConfigError, FileNotFoundError, ValueError) as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 1
    except NumericalError as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return 2


def console_main() -> None:
    sys.exit(main())


if __name__ == "__main__":
    console_main()

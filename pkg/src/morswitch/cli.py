"""Command-line front end.

Exit codes: 0 success, 1 validation failure, 2 usage or configuration
error, 3 numerical error.
"""

from __future__ import annotations

import argparse
import json
import sys
import warnings
from pathlib import Path

from .config import FORMATS, parse_config
from .errors import ConfigError, MorswitchError, NumericalError, UndefinedBaseline
from .polarimetry import enhancement_factor, spectrum, transmission_ty, susceptibilities
from .search import DEFAULT_TOP, parse_search_spec, run_search
from .validate import run_validate

EXIT_OK, EXIT_VALIDATION, EXIT_CONFIG, EXIT_NUMERIC = 0, 1, 2, 3

CSV_HEADER = "delta,re_chi_plus,im_chi_plus,re_chi_minus,im_chi_minus,theta_rad,t_y"


class UsageError(Exception):
    pass


def _g(x):
    return f"{x:.17g}"


def format_csv(records) -> str:
    lines = [CSV_HEADER]
    for r in records:
        lines.append(",".join(_g(v) for v in (
            r.delta, r.chi_plus.real, r.chi_plus.imag,
            r.chi_minus.real, r.chi_minus.imag, r.theta_rad, r.t_y,
        )))
    return "\n".join(lines) + "\n"


def format_json(records) -> str:
    rows = [
        {
            "delta": r.delta,
            "re_chi_plus": r.chi_plus.real,
            "im_chi_plus": r.chi_plus.imag,
            "re_chi_minus": r.chi_minus.real,
            "im_chi_minus": r.chi_minus.imag,
            "theta_rad": r.theta_rad,
            "t_y": r.t_y,
        }
        for r in records
    ]
    return json.dumps(rows, indent=1) + "\n"


def _read(path):
    try:
        return Path(path).read_text(encoding="utf-8")
    except (OSError, UnicodeDecodeError) as exc:
        raise UsageError(f"cannot read {path}: {exc}") from exc


def _write(path, text):
    if path is None or path == "-":
        sys.stdout.write(text)
        return
    try:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    except OSError as exc:
        raise UsageError(f"cannot write {path}: {exc}") from exc


def cmd_spectrum(args):
    cfg = parse_config(_read(args.config))
    fmt = args.format or cfg.format
    records = spectrum(cfg.params, cfg.medium, cfg.doppler, cfg.grid,
                       numeric=cfg.numeric, probe_eps=cfg.probe_eps)
    text = format_csv(records) if fmt == "csv" else format_json(records)
    _write(args.out or cfg.output, text)
    return EXIT_OK


def cmd_enhancement(args):
    cfg = parse_config(_read(args.config), require_grid=False)
    p = cfg.params if args.delta is None else cfg.params.replace(delta=args.delta)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", UndefinedBaseline)
        factor = enhancement_factor(p, cfg.medium, cfg.doppler,
                                    numeric=cfg.numeric, probe_eps=cfg.probe_eps)
    off = transmission_ty(susceptibilities(p.without_control(), cfg.doppler, cfg.numeric,
                                           cfg.probe_eps), cfg.medium)
    on = transmission_ty(susceptibilities(p, cfg.doppler, cfg.numeric, cfg.probe_eps), cfg.medium)
    print(json.dumps({"delta": p.delta, "t_y_on": on, "t_y_off": off, "enhancement": factor}))
    return EXIT_OK


def cmd_search(args):
    spec = parse_search_spec(_read(args.spec))
    result = run_search(spec, top=args.top, workers=args.workers)
    _write(args.out, json.dumps(result, indent=1) + "\n")
    return EXIT_OK


def cmd_validate(args):
    results = run_validate(seed=args.seed, doppler_nodes=args.doppler_nodes)
    for r in results:
        print(r.line())
    failed = [r.name for r in results if not r.passed]
    if failed:
        print(f"{len(failed)} check(s) failed: {', '.join(failed)}")
        return EXIT_VALIDATION
    print(f"all {len(results)} checks passed")
    return EXIT_OK


def build_parser():
    parser = argparse.ArgumentParser(
        prog="morswitch",
        description="Laser-controlled magneto-optical rotation in a four-level atom.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("spectrum", help="chi+-, rotation and T_y over a probe-detuning grid")
    sp.add_argument("--config", required=True)
    sp.add_argument("--out", help="output file (default: config 'output' key, else stdout)")
    sp.add_argument("--format", choices=FORMATS)
    sp.set_defaults(func=cmd_spectrum)

    en = sub.add_parser("enhancement", help="control-on / control-off T_y at one detuning")
    en.add_argument("--config", required=True)
    en.add_argument("--delta", type=float)
    en.set_defaults(func=cmd_enhancement)

    se = sub.add_parser("search", help="rank a parameter grid by enhancement or peak T_y")
    se.add_argument("--spec", required=True)
    se.add_argument("--out")
    se.add_argument("--top", type=int, default=DEFAULT_TOP)
    se.add_argument("--workers", type=int, default=1)
    se.set_defaults(func=cmd_search)

    va = sub.add_parser("validate", help="run the built-in cross-checks")
    va.add_argument("--seed", type=int, default=20240101)
    va.add_argument("--doppler-nodes", type=int, default=201, help=argparse.SUPPRESS)
    va.set_defaults(func=cmd_validate)
    return parser


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_CONFIG if exc.code else EXIT_OK
    try:
        return args.func(args)
    except (UsageError, ConfigError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except NumericalError as exc:
        print(f"numerical error: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except (MorswitchError, ArithmeticError) as exc:
        print(f"numerical error: {exc}", file=sys.stderr)
        return EXIT_NUMERIC


if __name__ == "__main__":
    sys.exit(main())

"""Command-line front end.

    brenke-approx <validate|eval|moments|converge|bounds>
                  --config <path> [--family ...] [--f ...] [--n ...]
                  [--x ...] [--out <path>] [--plots]

Exit codes: 0 success, 1 domain or validation failure, 2 usage or config
parse error.  Report commands write CSV (comma separated, dot decimal,
header row, LF endings, 12 significant digits) and, with ``--plots``, a
PNG figure with the same stem.  All output is deterministic: fixed row
order, fixed formatting, no timestamps.
"""

from __future__ import annotations

import argparse
import math
import sys
from dataclasses import replace
from pathlib import Path

import numpy as np

from . import functions as funcs
from .bounds import verify
from .config import ConfigError, ExperimentConfig, build_family, parse_config
from .families import validate
from .moments import moment_report
from .operators import TruncationPolicy, apply, weights

MOMENTS_COLUMNS = [
    "family", "n", "x", "nu1", "nu2", "m0", "m1", "m2", "d1", "d2",
    "delta_n", "lambda_n", "mu_n", "m0_sum", "m1_sum", "m2_sum",
    "max_rel_gap", "status",
]
CONVERGE_COLUMNS = ["family", "f", "nu1", "nu2", "n", "sup_err", "status"]
BOUNDS_COLUMNS = [
    "family", "f", "nu1", "nu2", "n", "x", "err_emp", "b22", "b23", "b24",
    "b25", "dom22", "dom23", "dom24", "dom25", "c_thm25", "status",
]


def _fmt(v) -> str:
    if v is None:
        return "na"
    if isinstance(v, (bool, np.bool_)):
        return "true" if v else "false"
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    if isinstance(v, (float, np.floating)):
        v = float(v)
        return "nan" if math.isnan(v) else format(v, ".12g")
    # string cells (names, statuses) must not smuggle in delimiters
    return str(v).replace(",", ";").replace("\n", " ")


def write_csv(path: str, columns: list[str], rows: list[dict]) -> None:
    lines = [",".join(columns)]
    for row in rows:
        lines.append(",".join(_fmt(row[c]) for c in columns))
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("\n".join(lines) + "\n")


def _policy(cfg: ExperimentConfig) -> TruncationPolicy:
    return TruncationPolicy(eps_tail=cfg.eps_tail, k_hard_cap=cfg.k_hard_cap)


def _plot_path(out_path: str) -> str:
    p = Path(out_path)
    return str(p.with_suffix(".png"))


def cmd_validate(cfg: ExperimentConfig, args) -> int:
    try:
        fam = build_family(cfg)
    except (ValueError, ConfigError) as exc:
        print(f"family construction failed: {exc}")
        return 1
    report = validate(
        fam,
        k=cfg.validate_k,
        x_max=float(cfg.x_grid[1]),
        n_max=int(cfg.n_list[-1]),
    )
    for line in report.lines():
        print(line)
    return 0 if report.all_passed else 1


def cmd_eval(cfg: ExperimentConfig, args) -> int:
    fam = build_family(cfg)
    fn = funcs.get(args.f)
    s = cfg.stancu_list()[0]
    wv = weights(fam, args.n, args.x, _policy(cfg))
    value = apply(fam, fn.fn, args.n, args.x, s, weight_vec=wv)
    print(f"{value:.12f}")
    print(f"k_used={wv.k_used} mass={wv.mass:.12f}")
    return 0


def cmd_moments(cfg: ExperimentConfig, args) -> int:
    fam = build_family(cfg)
    policy = _policy(cfg)
    rows: list[dict] = []
    cache: dict = {}
    for s in cfg.stancu_list():
        for n in cfg.n_list:
            for x in cfg.x_values():
                x = float(x)
                base = {"family": fam.name, "n": n, "x": x,
                        "nu1": s.nu1, "nu2": s.nu2}
                try:
                    if (n, x) not in cache:
                        cache[(n, x)] = weights(fam, n, x, policy)
                    rep = moment_report(fam, n, x, s, policy, weight_vec=cache[(n, x)])
                    rows.append(base | {
                        "m0": rep.m0, "m1": rep.m1, "m2": rep.m2,
                        "d1": rep.d1, "d2": rep.d2,
                        "delta_n": rep.delta_n, "lambda_n": rep.lambda_n,
                        "mu_n": rep.mu_n, "m0_sum": rep.m0_sum,
                        "m1_sum": rep.m1_sum, "m2_sum": rep.m2_sum,
                        "max_rel_gap": rep.max_rel_gap, "status": "ok",
                    })
                except Exception as exc:  # noqa: BLE001 - annotate, keep going
                    rows.append(base | {
                        key: math.nan
                        for key in MOMENTS_COLUMNS[5:-1]
                    } | {"status": f"error: {exc}"})
    write_csv(cfg.output_path, MOMENTS_COLUMNS, rows)
    if getattr(args, "plots", False):
        from .plots import plot_moments

        plot_moments(rows, _plot_path(cfg.output_path))
    return 0


def cmd_converge(cfg: ExperimentConfig, args) -> int:
    fam = build_family(cfg)
    policy = _policy(cfg)
    xs = [float(x) for x in cfg.x_values()]
    cache: dict = {}
    rows: list[dict] = []
    for fname in cfg.functions:
        fn = funcs.get(fname)
        for s in cfg.stancu_list():
            for n in cfg.n_list:
                base = {"family": fam.name, "f": fname,
                        "nu1": s.nu1, "nu2": s.nu2, "n": n}
                try:
                    sup_err = 0.0
                    for x in xs:
                        if (n, x) not in cache:
                            cache[(n, x)] = weights(fam, n, x, policy)
                        val = apply(fam, fn.fn, n, x, s, weight_vec=cache[(n, x)])
                        sup_err = max(sup_err, abs(val - float(fn.fn(x))))
                    rows.append(base | {"sup_err": sup_err, "status": "ok"})
                except Exception as exc:  # noqa: BLE001
                    rows.append(base | {"sup_err": math.nan,
                                        "status": f"error: {exc}"})
    rows.sort(key=lambda r: (r["family"], r["f"], r["nu1"], r["nu2"], r["n"]))
    write_csv(cfg.output_path, CONVERGE_COLUMNS, rows)
    if getattr(args, "plots", False):
        from .plots import plot_converge

        plot_converge(rows, _plot_path(cfg.output_path))
    return 0


def cmd_bounds(cfg: ExperimentConfig, args) -> int:
    fam = build_family(cfg)
    reports = verify(
        [fam],
        [funcs.get(name) for name in cfg.functions],
        list(cfg.n_list),
        [float(x) for x in cfg.x_values()],
        cfg.stancu_list(),
        c_const=cfg.c_thm25,
        policy=_policy(cfg),
        t_window_max=cfg.t_window_max,
        window_step=cfg.window_step,
    )
    rows = [
        {
            "family": r.family, "f": r.f_name, "nu1": r.s.nu1, "nu2": r.s.nu2,
            "n": r.n, "x": r.x, "err_emp": r.err_emp, "b22": r.b22,
            "b23": r.b23, "b24": r.b24, "b25": r.b25, "dom22": r.dom22,
            "dom23": r.dom23, "dom24": r.dom24, "dom25": r.dom25,
            "c_thm25": r.c_thm25, "status": r.status,
        }
        for r in reports
    ]
    rows.sort(key=lambda r: (r["family"], r["f"], r["nu1"], r["nu2"],
                             r["n"], r["x"]))
    write_csv(cfg.output_path, BOUNDS_COLUMNS, rows)
    if getattr(args, "plots", False):
        from .plots import plot_bounds

        plot_bounds(rows, _plot_path(cfg.output_path))
    return 0


COMMANDS = {
    "validate": cmd_validate,
    "eval": cmd_eval,
    "moments": cmd_moments,
    "converge": cmd_converge,
    "bounds": cmd_bounds,
}


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="brenke-approx",
        description="Stancu-type operators from generalized Brenke families: "
        "validation, evaluation, moments, convergence and error-bound reports.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        sp = sub.add_parser(name)
        sp.add_argument("--config", help="experiment config file")
        sp.add_argument("--family", help="built-in family name override")
        sp.add_argument("--out", help="output CSV path override")
        if name == "eval":
            sp.add_argument("--f", required=True, help="registered function name")
            sp.add_argument("--n", type=int, required=True)
            sp.add_argument("--x", type=float, required=True)
        else:
            sp.add_argument("--f", help="restrict to one registered function")
            sp.add_argument("--n", type=int, help="restrict to one level n")
        if name in ("moments", "converge", "bounds"):
            sp.add_argument(
                "--plots", action="store_true",
                help="render a PNG figure next to the CSV",
            )
    return parser


def _effective_config(args) -> ExperimentConfig:
    cfg = parse_config(args.config) if args.config else ExperimentConfig()
    if args.family:
        cfg = replace(cfg, family_name=args.family, family_params={},
                      custom_a1=None, custom_a2=None, custom_h=None)
    if args.out:
        cfg = replace(cfg, output_path=args.out)
    if args.command != "eval":
        if args.f:
            if args.f not in funcs.REGISTRY:
                raise ConfigError(f"unregistered function {args.f!r}")
            cfg = replace(cfg, functions=(args.f,))
        if args.n:
            cfg = replace(cfg, n_list=(args.n,))
    return cfg


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = _effective_config(args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    try:
        return COMMANDS[args.command](cfg, args)
    except Exception as exc:  # noqa: BLE001 - CLI boundary
        print(f"error: {exc}", file=sys.stderr)
        return 1


def run() -> None:
    sys.exit(main())

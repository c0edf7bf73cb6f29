"""Flat key-value experiment configuration.

The file format is INI-style: ``[section]`` headers over ``key = value``
lines, with bracketed comma-separated lists.  Example::

    [family]
    family = gould_hopper
    b = 1
    d = 1

    [stancu]
    nu1 = [0, 1]
    nu2 = [0, 2]

    [experiment]
    n_list = [4, 16, 64, 256]
    x_grid = [0, 2, 9]          ; min, max, count
    functions = [one, id, t2, expneg]

    [window]
    t_max = 4
    step = 0.0009765625

    [truncation]
    eps_tail = 1e-12
    k_hard_cap = 10000

    [bounds]
    c_thm25 = 4

    [output]
    path = out.csv

For ``family = custom`` the coefficient streams are given explicitly as
``a1 = [...]``, ``a2 = [...]``, ``h = [...]``.  Every key is optional and
falls back to the defaults below.
"""

from __future__ import annotations

import configparser
from dataclasses import dataclass, field, replace

import numpy as np

from . import functions as funcs
from .families import FamilySpec, StancuParams, builtin_family, make_custom


class ConfigError(ValueError):
    """Unparseable or inconsistent configuration."""


@dataclass(frozen=True)
class ExperimentConfig:
    family_name: str = "szasz"
    family_params: dict = field(default_factory=dict)
    custom_a1: tuple[float, ...] | None = None
    custom_a2: tuple[float, ...] | None = None
    custom_h: tuple[float, ...] | None = None
    nu_pairs: tuple[tuple[float, float], ...] = ((0.0, 0.0), (1.0, 2.0), (0.5, 0.5))
    n_list: tuple[int, ...] = (4, 16, 64, 256)
    x_grid: tuple[float, float, int] = (0.0, 2.0, 9)
    functions: tuple[str, ...] = ("one", "id", "t2", "expneg")
    t_window_max: float = 4.0
    window_step: float = 2.0**-10
    eps_tail: float = 1e-12
    k_hard_cap: int = 10_000
    c_thm25: float = 4.0
    output_path: str = "out.csv"
    k_max: int = 256
    validate_k: int = 60

    def x_values(self) -> np.ndarray:
        lo, hi, count = self.x_grid
        return np.linspace(lo, hi, int(count))

    def stancu_list(self) -> list[StancuParams]:
        return [StancuParams(nu1, nu2) for nu1, nu2 in self.nu_pairs]


def _parse_list(text: str) -> list[str]:
    text = text.strip()
    if not (text.startswith("[") and text.endswith("]")):
        raise ConfigError(f"expected a bracketed list, got {text!r}")
    inner = text[1:-1].strip()
    if not inner:
        return []
    return [item.strip() for item in inner.split(",")]


def _floats(text: str) -> list[float]:
    try:
        return [float(v) for v in _parse_list(text)]
    except ValueError as exc:
        raise ConfigError(f"bad numeric list {text!r}: {exc}") from exc


def _ints(text: str) -> list[int]:
    out = []
    for v in _floats(text):
        if v != int(v):
            raise ConfigError(f"expected integers, got {v!r}")
        out.append(int(v))
    return out


def _check(cfg: ExperimentConfig) -> ExperimentConfig:
    if not cfg.n_list:
        raise ConfigError("n_list must be nonempty")
    if list(cfg.n_list) != sorted(cfg.n_list) or any(n < 1 for n in cfg.n_list):
        raise ConfigError(f"n_list must be ascending positive integers: {cfg.n_list}")
    if cfg.x_grid[2] < 2:
        raise ConfigError(f"x_grid count must be >= 2, got {cfg.x_grid[2]}")
    for name in cfg.functions:
        if name not in funcs.REGISTRY:
            raise ConfigError(
                f"unregistered function {name!r}; known: {sorted(funcs.REGISTRY)}"
            )
    if len(cfg.nu_pairs) == 0:
        raise ConfigError("at least one (nu1, nu2) pair is required")
    for nu1, nu2 in cfg.nu_pairs:
        if nu1 < 0 or nu2 < 0:
            raise ConfigError(f"nu1, nu2 must be >= 0, got ({nu1}, {nu2})")
    return cfg


def parse_config(path: str) -> ExperimentConfig:
    parser = configparser.ConfigParser(inline_comment_prefixes=(";", "#"))
    parser.optionxform = str
    try:
        with open(path, encoding="utf-8") as fh:
            parser.read_file(fh)
    except OSError as exc:
        raise ConfigError(f"cannot read config {path!r}: {exc}") from exc
    except configparser.Error as exc:
        raise ConfigError(f"cannot parse config {path!r}: {exc}") from exc

    cfg = ExperimentConfig()
    try:
        if parser.has_section("family"):
            sec = parser["family"]
            params = {}
            for key in ("b", "m"):
                if key in sec:
                    params[key] = float(sec[key])
            if "d" in sec:
                params["d"] = int(sec["d"])
            cfg = replace(
                cfg,
                family_name=sec.get("family", cfg.family_name),
                family_params=params,
                custom_a1=tuple(_floats(sec["a1"])) if "a1" in sec else None,
                custom_a2=tuple(_floats(sec["a2"])) if "a2" in sec else None,
                custom_h=tuple(_floats(sec["h"])) if "h" in sec else None,
            )
        if parser.has_section("stancu"):
            sec = parser["stancu"]
            nu1 = _floats(sec.get("nu1", "[0]"))
            nu2 = _floats(sec.get("nu2", "[0]"))
            if len(nu1) != len(nu2):
                raise ConfigError(
                    f"nu1 and nu2 must be parallel lists, got lengths "
                    f"{len(nu1)} and {len(nu2)}"
                )
            cfg = replace(cfg, nu_pairs=tuple(zip(nu1, nu2)))
        if parser.has_section("experiment"):
            sec = parser["experiment"]
            if "n_list" in sec:
                cfg = replace(cfg, n_list=tuple(_ints(sec["n_list"])))
            if "x_grid" in sec:
                grid = _floats(sec["x_grid"])
                if len(grid) != 3:
                    raise ConfigError("x_grid needs [min, max, count]")
                cfg = replace(cfg, x_grid=(grid[0], grid[1], int(grid[2])))
            if "functions" in sec:
                cfg = replace(cfg, functions=tuple(_parse_list(sec["functions"])))
        if parser.has_section("window"):
            sec = parser["window"]
            cfg = replace(
                cfg,
                t_window_max=float(sec.get("t_max", cfg.t_window_max)),
                window_step=float(sec.get("step", cfg.window_step)),
            )
        if parser.has_section("truncation"):
            sec = parser["truncation"]
            cfg = replace(
                cfg,
                eps_tail=float(sec.get("eps_tail", cfg.eps_tail)),
                k_hard_cap=int(sec.get("k_hard_cap", cfg.k_hard_cap)),
            )
        if parser.has_section("bounds"):
            sec = parser["bounds"]
            cfg = replace(cfg, c_thm25=float(sec.get("c_thm25", cfg.c_thm25)))
        if parser.has_section("output"):
            sec = parser["output"]
            cfg = replace(cfg, output_path=sec.get("path", cfg.output_path))
        if parser.has_section("series"):
            sec = parser["series"]
            cfg = replace(
                cfg,
                k_max=int(sec.get("k_max", cfg.k_max)),
                validate_k=int(sec.get("validate_k", cfg.validate_k)),
            )
    except (ValueError, KeyError) as exc:
        if isinstance(exc, ConfigError):
            raise
        raise ConfigError(f"bad value in config {path!r}: {exc}") from exc
    return _check(cfg)


def write_config(cfg: ExperimentConfig, path: str) -> None:
    """Serialize the effective configuration back to the flat format."""

    def lst(values) -> str:
        return "[" + ", ".join(format(v, "g") if isinstance(v, float) else str(v) for v in values) + "]"

    lines = ["[family]", f"family = {cfg.family_name}"]
    for key, val in sorted(cfg.family_params.items()):
        lines.append(f"{key} = {val:g}" if isinstance(val, float) else f"{key} = {val}")
    for key, series in (("a1", cfg.custom_a1), ("a2", cfg.custom_a2), ("h", cfg.custom_h)):
        if series is not None:
            lines.append(f"{key} = " + lst([float(v) for v in series]))
    lines += [
        "",
        "[stancu]",
        "nu1 = " + lst([float(p[0]) for p in cfg.nu_pairs]),
        "nu2 = " + lst([float(p[1]) for p in cfg.nu_pairs]),
        "",
        "[experiment]",
        "n_list = " + lst(list(cfg.n_list)),
        "x_grid = " + lst([cfg.x_grid[0], cfg.x_grid[1], cfg.x_grid[2]]),
        "functions = " + lst(list(cfg.functions)),
        "",
        "[window]",
        f"t_max = {cfg.t_window_max:g}",
        f"step = {cfg.window_step:.17g}",
        "",
        "[truncation]",
        f"eps_tail = {cfg.eps_tail:g}",
        f"k_hard_cap = {cfg.k_hard_cap}",
        "",
        "[bounds]",
        f"c_thm25 = {cfg.c_thm25:g}",
        "",
        "[output]",
        f"path = {cfg.output_path}",
        "",
        "[series]",
        f"k_max = {cfg.k_max}",
        f"validate_k = {cfg.validate_k}",
        "",
    ]
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("\n".join(lines))


def build_family(cfg: ExperimentConfig) -> FamilySpec:
    """Instantiate the family described by the config."""
    if cfg.family_name == "custom":
        if cfg.custom_a1 is None or cfg.custom_a2 is None or cfg.custom_h is None:
            raise ConfigError("custom family needs a1, a2 and h coefficient lists")
        return make_custom(cfg.custom_a1, cfg.custom_a2, cfg.custom_h, k_max=cfg.k_max)
    if cfg.family_name == "appell" and cfg.custom_a1 is not None:
        return builtin_family("appell", k_max=cfg.k_max, a1=cfg.custom_a1)
    return builtin_family(cfg.family_name, k_max=cfg.k_max, **cfg.family_params)

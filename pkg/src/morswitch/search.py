"""Exhaustive grid search for strong control-field MOR and switch settings.

A search spec is a run configuration in which any of the searchable keys
may be given as ``min:max:steps`` instead of a single value::

    objective = enhancement_at_delta0
    G1 = 10:100:10
    doppler_width = 10:300:10
    Delta = 0
    Omega = 50
    alpha_l = 300
    doppler_geometry = counter
    delta_min = -100
    delta_max = 100
    steps = 201
"""

from __future__ import annotations

import itertools
import math
import warnings
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, replace

import numpy as np

from .config import RunConfig, parse_config, parse_real, split_lines
from .doppler import DopplerConfig
from .errors import GridTooLarge, MorswitchError, ParseError, UndefinedBaseline
from .polarimetry import enhancement_factor, switch_metrics

SEARCHABLE = ("G1", "Delta", "doppler_width", "alpha_l")
OBJECTIVES = ("enhancement_at_delta0", "peak_ty")
MAX_POINTS = 10**8
DEFAULT_TOP = 20


@dataclass(frozen=True)
class Range:
    min: float
    max: float
    steps: int

    def __post_init__(self):
        if self.min > self.max:
            raise ValueError(f"range min {self.min!r} exceeds max {self.max!r}")
        if self.steps < 1:
            raise ValueError("range needs steps >= 1")

    def values(self):
        if self.steps == 1:
            return [float(self.min)]
        return [float(x) for x in np.linspace(self.min, self.max, self.steps)]


@dataclass(frozen=True)
class SearchSpec:
    ranges: dict
    objective: str
    fixed: RunConfig

    def __post_init__(self):
        if self.objective not in OBJECTIVES:
            raise ValueError(f"objective must be one of {OBJECTIVES}")
        unknown = set(self.ranges) - set(SEARCHABLE)
        if unknown:
            raise ValueError(f"not searchable: {sorted(unknown)}")

    @property
    def names(self):
        return tuple(k for k in SEARCHABLE if k in self.ranges)

    @property
    def size(self):
        return math.prod(self.ranges[k].steps for k in self.names)

    def points(self):
        """Parameter tuples in lexicographic order of (G1, Delta, doppler_width, alpha_l)."""
        return itertools.product(*(self.ranges[k].values() for k in self.names))


def _parse_range(value, number, key):
    parts = [s.strip() for s in value.split(":")]
    if len(parts) != 3:
        raise ParseError("range must be min:max:steps", line=number, key=key)
    lo, hi = parse_real(parts[0], number, key), parse_real(parts[1], number, key)
    try:
        steps = int(parts[2])
        return Range(lo, hi, steps)
    except ValueError as exc:
        raise ParseError(str(exc), line=number, key=key) from None


def parse_search_spec(text: str) -> SearchSpec:
    """Split ``text`` into ranges, objective and the fixed run configuration."""
    ranges = {}
    objective = "enhancement_at_delta0"
    kept = text.splitlines()
    for number, key, value in split_lines(text):
        if key == "objective":
            if value not in OBJECTIVES:
                raise ParseError(f"objective must be one of {', '.join(OBJECTIVES)}",
                                 line=number, key=key)
            objective = value
        elif key in SEARCHABLE and ":" in value:
            ranges[key] = _parse_range(value, number, key)
        else:
            continue
        # blank rather than delete, so the fixed-config parser reports true line numbers
        kept[number - 1] = ""
    fixed_text = "\n".join(kept)
    if "doppler_width" in ranges and not any(
        k == "doppler_width" for _, k, _ in split_lines(fixed_text)
    ):
        fixed_text += f"\ndoppler_width = {ranges['doppler_width'].min!r}"
    fixed = parse_config(fixed_text, require_grid=objective == "peak_ty")
    spec = SearchSpec(ranges=ranges, objective=objective, fixed=fixed)
    if spec.size > MAX_POINTS:
        raise GridTooLarge(f"{spec.size} grid points exceed the limit of {MAX_POINTS}")
    return spec


def configure(fixed: RunConfig, assignment: dict) -> RunConfig:
    """Apply one search point to the fixed configuration."""
    params = fixed.params
    cfg = fixed
    if "G1" in assignment:
        params = params.replace(G1=assignment["G1"])
    if "Delta" in assignment:
        params = params.replace(Delta=assignment["Delta"])
    if "doppler_width" in assignment:
        doppler = fixed.doppler or DopplerConfig()
        cfg = replace(cfg, doppler=replace(doppler, width=assignment["doppler_width"]))
    if "alpha_l" in assignment:
        cfg = replace(cfg, alpha_l=assignment["alpha_l"])
    return replace(cfg, params=params)


def evaluate(cfg: RunConfig) -> dict:
    """Switch metrics over the config grid plus the enhancement factor at delta = 0."""
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", UndefinedBaseline)
        enhancement = enhancement_factor(
            cfg.params, cfg.medium, cfg.doppler, delta=0.0,
            numeric=cfg.numeric, probe_eps=cfg.probe_eps,
        )
    out = {"enhancement": enhancement, "peak_ty": None, "delta_at_peak": None}
    if cfg.grid is not None:
        sm = switch_metrics(cfg.params, cfg.medium, cfg.doppler, cfg.grid,
                            numeric=cfg.numeric, probe_eps=cfg.probe_eps)
        out.update(peak_ty=sm.peak_ty, delta_at_peak=sm.delta_at_peak)
    return out


def _evaluate_point(job):
    fixed, names, point = job
    try:
        return evaluate(configure(fixed, dict(zip(names, point))))
    except MorswitchError as exc:
        return exc


def run_search(spec: SearchSpec, top: int = DEFAULT_TOP, workers: int = 1) -> dict:
    """Evaluate every grid point and rank by the objective, highest first.

    Ties are broken by the parameter tuple in ascending lexicographic
    order. Points whose evaluation raises a package error are dropped
    and counted under ``skipped``. With ``workers > 1`` points are
    evaluated in a process pool; results are collected in grid order, so
    the output does not depend on the worker count.
    """
    if spec.size > MAX_POINTS:
        raise GridTooLarge(f"{spec.size} grid points exceed the limit of {MAX_POINTS}")
    if top < 1:
        raise ValueError("top must be >= 1")
    names = spec.names
    points = list(spec.points())
    jobs = [(spec.fixed, names, point) for point in points]
    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            outcomes = list(pool.map(_evaluate_point, jobs, chunksize=max(1, len(jobs) // (4 * workers))))
    else:
        outcomes = [_evaluate_point(job) for job in jobs]

    key = "enhancement" if spec.objective == "enhancement_at_delta0" else "peak_ty"
    rows = []
    skipped = 0
    for point, outcome in zip(points, outcomes):
        if isinstance(outcome, Exception):
            skipped += 1
            continue
        rows.append((point, outcome))
    rows.sort(key=lambda row: (-row[1][key], row[0]))
    results = [
        {
            "rank": rank,
            "params": dict(zip(names, point)),
            "objective_value": metrics[key],
            "peak_ty": metrics["peak_ty"],
            "enhancement": metrics["enhancement"],
            "delta_at_peak": metrics["delta_at_peak"],
        }
        for rank, (point, metrics) in enumerate(rows[:top], start=1)
    ]
    return {
        "objective": spec.objective,
        "grid_points": len(points),
        "evaluated": len(rows),
        "skipped": skipped,
        "results": results,
    }

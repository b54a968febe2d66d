"""Flat ``key = value`` run configuration.

One key per line; ``#`` starts a comment. Example::

    Omega = 50
    G1 = 30
    alpha_l = 300
    doppler_width = 100
    doppler_geometry = counter
    delta_min = -100
    delta_max = 100
    steps = 401
"""

from __future__ import annotations

import math
from dataclasses import dataclass, fields

from .doppler import GEOMETRIES, METHODS, DopplerConfig
from .errors import InvalidParams, MissingKey, ParseError, UnknownKey
from .params import SystemParams
from .polarimetry import DeltaGrid, MediumConfig
from .susceptibility import DEFAULT_PROBE_EPS

MODES = ("closed-form", "numeric")
FORMATS = ("csv", "json")
MAX_STEPS = 10**7
DEFAULT_PROBE_COUPLING = 1e-4
DEFAULT_ALPHA_L = 1.0

PARAM_KEYS = tuple(f.name for f in fields(SystemParams))
COUPLING_KEYS = ("g1", "g2", "G1", "G2")
DOPPLER_KEYS = ("doppler_width", "doppler_geometry", "doppler_method", "doppler_nodes")
GRID_KEYS = ("delta_min", "delta_max", "steps")
OTHER_KEYS = ("alpha_l", "mode", "probe_eps", "output", "format")
KNOWN_KEYS = PARAM_KEYS + DOPPLER_KEYS + GRID_KEYS + OTHER_KEYS


@dataclass(frozen=True)
class RunConfig:
    params: SystemParams
    alpha_l: float = DEFAULT_ALPHA_L
    doppler: DopplerConfig | None = None
    grid: DeltaGrid | None = None
    mode: str = "closed-form"
    probe_eps: float = DEFAULT_PROBE_EPS
    output: str | None = None
    format: str = "csv"

    @property
    def medium(self) -> MediumConfig:
        return MediumConfig(self.alpha_l)

    @property
    def numeric(self) -> bool:
        return self.mode == "numeric"


def split_lines(text):
    """Yield ``(line_number, key, raw_value)`` for every assignment in ``text``."""
    for number, line in enumerate(text.splitlines(), start=1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ParseError("expected 'key = value'", line=number)
        key, value = (part.strip() for part in line.split("=", 1))
        if not key:
            raise ParseError("empty key", line=number)
        if not value:
            raise ParseError("empty value", line=number, key=key)
        yield number, key, value


def parse_real(value, number, key):
    try:
        x = float(value)
    except ValueError:
        raise ParseError(f"not a number: {value!r}", line=number, key=key) from None
    if not math.isfinite(x):
        raise ParseError(f"not finite: {value!r}", line=number, key=key)
    return x


def _parse_coupling(value, number, key):
    try:
        return parse_real(value, number, key)
    except ParseError:
        pass
    try:
        z = complex(value.replace(" ", ""))
    except ValueError:
        raise ParseError(f"not a number: {value!r}", line=number, key=key) from None
    if not (math.isfinite(z.real) and math.isfinite(z.imag)):
        raise ParseError(f"not finite: {value!r}", line=number, key=key)
    return z


def _parse_int(value, number, key):
    try:
        return int(value)
    except ValueError:
        raise ParseError(f"not an integer: {value!r}", line=number, key=key) from None


def _choice(value, choices, number, key):
    if value not in choices:
        raise ParseError(f"{value!r} is not one of {', '.join(choices)}", line=number, key=key)
    return value


def parse_config(text: str, require_grid: bool = True) -> RunConfig:
    """Parse a run configuration.

    Absent keys take defaults: all rates 1, g1 = g2 = 1e-4, every other
    SystemParams field 0, alpha_l = 1, closed-form mode, no Doppler
    averaging, CSV output. The grid (delta_min, delta_max, steps) is
    mandatory unless ``require_grid`` is false.

    Raises
    ------
    ParseError
        Malformed line or value, duplicate key, or an invalid value;
        the message carries the line number and key.
    UnknownKey
        A key that is not part of the format.
    MissingKey
        No grid, or a grid with some of its three keys missing.
    """
    raw = {}
    lines = {}
    for number, key, value in split_lines(text):
        if key not in KNOWN_KEYS:
            raise UnknownKey("unknown key", line=number, key=key)
        if key in raw:
            raise ParseError(f"duplicate key (first on line {lines[key]})", line=number, key=key)
        raw[key] = value
        lines[key] = number

    values = {}
    for key, value in raw.items():
        n = lines[key]
        if key in COUPLING_KEYS:
            values[key] = _parse_coupling(value, n, key)
        elif key in ("steps", "doppler_nodes"):
            values[key] = _parse_int(value, n, key)
        elif key == "doppler_geometry":
            values[key] = _choice(value, GEOMETRIES, n, key)
        elif key == "doppler_method":
            values[key] = _choice(value, METHODS, n, key)
        elif key == "mode":
            values[key] = _choice(value, MODES, n, key)
        elif key == "format":
            values[key] = _choice(value, FORMATS, n, key)
        elif key == "output":
            values[key] = value
        else:
            values[key] = parse_real(value, n, key)

    def line_of(*keys):
        return next((lines[k] for k in keys if k in lines), None)

    param_values = {"g1": DEFAULT_PROBE_COUPLING, "g2": DEFAULT_PROBE_COUPLING}
    param_values.update({k: values[k] for k in PARAM_KEYS if k in values})
    try:
        params = SystemParams(**param_values)
    except InvalidParams as exc:
        key = str(exc).split()[0]
        raise ParseError(str(exc), line=lines.get(key), key=key) from None

    doppler = None
    present = [k for k in DOPPLER_KEYS if k in values]
    if present:
        if "doppler_width" not in values:
            raise ParseError("doppler settings given without doppler_width",
                             line=line_of(*present), key=present[0])
        kwargs = {"width": values["doppler_width"]}
        for key, field in (("doppler_geometry", "geometry"), ("doppler_method", "method"),
                           ("doppler_nodes", "quadrature_nodes")):
            if key in values:
                kwargs[field] = values[key]
        try:
            doppler = DopplerConfig(**kwargs)
        except ValueError as exc:
            raise ParseError(str(exc), line=line_of(*present), key="doppler") from None

    grid = None
    given = [k for k in GRID_KEYS if k in values]
    if given:
        for key in GRID_KEYS:
            if key not in values:
                raise MissingKey(key)
        steps = values["steps"]
        if not 2 <= steps <= MAX_STEPS:
            raise ParseError(f"steps must lie in [2, {MAX_STEPS}]", line=lines["steps"], key="steps")
        try:
            grid = DeltaGrid(values["delta_min"], values["delta_max"], steps)
        except ValueError as exc:
            raise ParseError(str(exc), line=line_of(*GRID_KEYS), key="grid") from None
    elif require_grid:
        raise MissingKey("grid")

    alpha_l = values.get("alpha_l", DEFAULT_ALPHA_L)
    if alpha_l < 0:
        raise ParseError("alpha_l must be >= 0", line=lines["alpha_l"], key="alpha_l")
    probe_eps = values.get("probe_eps", DEFAULT_PROBE_EPS)
    if not 1e-6 <= probe_eps <= 1e-2:
        raise ParseError("probe_eps must lie in [1e-6, 1e-2]", line=lines["probe_eps"], key="probe_eps")

    return RunConfig(
        params=params,
        alpha_l=alpha_l,
        doppler=doppler,
        grid=grid,
        mode=values.get("mode", "closed-form"),
        probe_eps=probe_eps,
        output=values.get("output"),
        format=values.get("format", "csv"),
    )


def _fmt(value):
    if isinstance(value, complex):
        return repr(value).strip("()")
    return repr(value)


def format_config(cfg: RunConfig) -> str:
    """Serialize ``cfg`` so that ``parse_config`` gives back an equal value."""
    out = [f"{name} = {_fmt(getattr(cfg.params, name))}" for name in PARAM_KEYS]
    out.append(f"alpha_l = {cfg.alpha_l!r}")
    if cfg.doppler is not None:
        d = cfg.doppler
        out += [
            f"doppler_width = {d.width!r}",
            f"doppler_geometry = {d.geometry}",
            f"doppler_method = {d.method}",
            f"doppler_nodes = {d.quadrature_nodes}",
        ]
    if cfg.grid is not None:
        out += [
            f"delta_min = {cfg.grid.delta_min!r}",
            f"delta_max = {cfg.grid.delta_max!r}",
            f"steps = {cfg.grid.steps}",
        ]
    out += [f"mode = {cfg.mode}", f"probe_eps = {cfg.probe_eps!r}", f"format = {cfg.format}"]
    if cfg.output is not None:
        out.append(f"output = {cfg.output}")
    return "\n".join(out) + "\n"

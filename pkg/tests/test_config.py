import pytest
from hypothesis import given
from hypothesis import strategies as st

from morswitch import SystemParams
from morswitch.config import RunConfig, format_config, parse_config
from morswitch.doppler import DopplerConfig
from morswitch.errors import MissingKey, ParseError, UnknownKey
from morswitch.polarimetry import DeltaGrid

GRID = "delta_min = -100\ndelta_max = 100\nsteps = 401\n"


def test_empty_config_needs_grid():
    with pytest.raises(MissingKey) as info:
        parse_config("")
    assert info.value.key == "grid"


def test_grid_optional_when_not_required():
    cfg = parse_config("", require_grid=False)
    assert cfg.grid is None


def test_defaults():
    cfg = parse_config(GRID)
    p = cfg.params
    assert (p.gamma1, p.gamma2, p.Gamma1, p.Gamma2) == (1.0, 1.0, 1.0, 1.0)
    assert (p.Omega, p.delta, p.Delta, p.G1, p.G2) == (0.0, 0.0, 0.0, 0.0, 0.0)
    assert p.g1 == p.g2 == 1e-4
    assert cfg.alpha_l == 1.0 and cfg.doppler is None
    assert cfg.mode == "closed-form" and cfg.format == "csv" and cfg.output is None


def test_typical_run_file():
    text = """
    # counter-propagating cell
    Omega = 50
    G1 = 30        # control Rabi frequency
    alpha_l = 300
    doppler_width = 100
    doppler_geometry = counter
    """ + GRID
    cfg = parse_config(text)
    assert cfg.params.Omega == 50.0 and cfg.params.G1 == 30.0
    assert cfg.alpha_l == 300.0
    assert cfg.doppler == DopplerConfig(width=100.0, geometry="counter")
    assert cfg.grid == DeltaGrid(-100.0, 100.0, 401)


def test_non_numeric_value_reports_line():
    with pytest.raises(ParseError) as info:
        parse_config("alpha_l = 3\nOmega = fifty\n" + GRID)
    assert info.value.line == 2 and info.value.key == "Omega"
    assert "line 2" in str(info.value)


def test_unknown_key():
    with pytest.raises(UnknownKey) as info:
        parse_config(GRID + "magnetic_field = 3\n")
    assert info.value.line == 4 and info.value.key == "magnetic_field"


def test_duplicate_key():
    with pytest.raises(ParseError, match="duplicate"):
        parse_config("Omega = 1\nOmega = 2\n" + GRID)


def test_line_without_assignment():
    with pytest.raises(ParseError) as info:
        parse_config(GRID + "Omega 5\n")
    assert info.value.line == 4


@pytest.mark.parametrize("missing", ["delta_min", "delta_max", "steps"])
def test_partial_grid(missing):
    text = "\n".join(line for line in GRID.splitlines() if not line.startswith(missing))
    with pytest.raises(MissingKey) as info:
        parse_config(text)
    assert info.value.key == missing


@pytest.mark.parametrize("steps", ["1", "0", "10000001", "2.5"])
def test_steps_bounds(steps):
    with pytest.raises(ParseError):
        parse_config(f"delta_min = -1\ndelta_max = 1\nsteps = {steps}\n")


def test_steps_limits_accepted():
    assert parse_config("delta_min = 0\ndelta_max = 1\nsteps = 2\n").grid.steps == 2


def test_doppler_keys_need_width():
    with pytest.raises(ParseError, match="doppler_width"):
        parse_config(GRID + "doppler_geometry = co\n")


@pytest.mark.parametrize("line", [
    "doppler_geometry = sideways", "doppler_method = trapezoid", "mode = exact", "format = xml",
])
def test_bad_choices(line):
    with pytest.raises(ParseError):
        parse_config(GRID + "doppler_width = 10\n" + line + "\n")


@pytest.mark.parametrize("line", [
    "gamma1 = 0", "Gamma2 = -1", "alpha_l = -2", "probe_eps = 0.5", "Omega = inf", "Omega = nan",
])
def test_invalid_values(line):
    with pytest.raises(ParseError):
        parse_config(GRID + line + "\n")


def test_complex_coupling():
    cfg = parse_config(GRID + "G1 = 30+5j\n")
    assert cfg.params.G1 == 30 + 5j


def test_numeric_mode_and_output():
    cfg = parse_config(GRID + "mode = numeric\nprobe_eps = 1e-3\noutput = out.csv\nformat = json\n")
    assert cfg.numeric and cfg.probe_eps == 1e-3
    assert cfg.output == "out.csv" and cfg.format == "json"


reals = st.floats(-1e3, 1e3, allow_nan=False)
rates = st.floats(1e-3, 1e3)
couplings = st.one_of(reals, st.complex_numbers(max_magnitude=1e3, allow_nan=False, allow_infinity=False))


@st.composite
def run_configs(draw):
    params = SystemParams(
        gamma1=draw(rates), gamma2=draw(rates), Gamma1=draw(rates), Gamma2=draw(rates),
        Omega=draw(reals), delta=draw(reals), Delta=draw(reals),
        g1=draw(couplings), g2=draw(couplings), G1=draw(couplings), G2=draw(couplings),
    )
    doppler = draw(st.one_of(st.none(), st.builds(
        DopplerConfig,
        width=st.floats(0, 1e3),
        geometry=st.sampled_from(["counter", "co"]),
        quadrature_nodes=st.integers(5, 500).map(lambda n: 2 * n + 1),
    )))
    lo = draw(reals)
    grid = DeltaGrid(lo, lo + draw(st.floats(0, 1e3)), draw(st.integers(2, 10**7)))
    return RunConfig(
        params=params,
        alpha_l=draw(st.floats(0, 1e4)),
        doppler=doppler,
        grid=grid,
        mode=draw(st.sampled_from(["closed-form", "numeric"])),
        probe_eps=draw(st.floats(1e-6, 1e-2)),
        output=draw(st.one_of(st.none(), st.just("spectrum.csv"))),
        format=draw(st.sampled_from(["csv", "json"])),
    )


@given(run_configs())
def test_round_trip(cfg):
    assert parse_config(format_config(cfg)) == cfg

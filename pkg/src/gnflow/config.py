"""Scenario configuration files.

INI-style sections parsed strictly: unknown sections or keys are errors, as
are values outside the preconditions of the modules they feed.  Example::

    [scenario]
    name = solitary_wave
    a = 0.2

    [grid]
    length = 80
    n = 2048

    [integrator]
    dt = auto
    T = 10

    [output]
    stride = 10
    directory = out
"""
import configparser
import math
from dataclasses import asdict, dataclass, field, replace

import numpy as np

from gnflow.diagnostics import solitary_wave
from gnflow.errors import ConfigError
from gnflow.grid import PeriodicGrid, synthesize_rough_field
from gnflow.stepping import IntegratorConfig

SCENARIOS = ("equilibrium", "solitary_wave", "gaussian_hump", "rough_data")
CONVERGE_KINDS = ("time", "space", "elliptic")
FORMATS = ("csv", "json")


def _bool(s):
    v = s.strip().lower()
    if v in ("1", "true", "yes", "on"):
        return True
    if v in ("0", "false", "no", "off"):
        return False
    raise ValueError(f"not a boolean: {s!r}")


def _opt_float(s):
    return None if s.strip().lower() in ("auto", "none", "") else float(s)


def _int_list(s):
    return tuple(int(p) for p in s.replace(",", " ").split())


def _str_list(s):
    return tuple(p.strip() for p in s.split(",") if p.strip())


# section -> key -> (field name, parser)
SCHEMA = {
    "scenario": {
        "name": ("scenario", str),
        "a": ("a", float),
        "epsilon": ("epsilon", float),
        "width": ("width", float),
        "x0": ("x0", _opt_float),
        "sigma": ("sigma", float),
        "amplitude": ("amplitude", float),
        "seed": ("seed", int),
        "negate_velocity": ("negate_velocity", _bool),
    },
    "grid": {"length": ("length", float), "n": ("n", int)},
    "integrator": {
        "dt": ("dt", _opt_float),
        "t": ("T", float),
        "cfl_safety": ("cfl_safety", float),
        "max_steps": ("max_steps", int),
    },
    "output": {
        "stride": ("stride", int),
        "directory": ("directory", str),
        "formats": ("formats", _str_list),
        "diagnostics_sigma": ("diagnostics_sigma", _opt_float),
    },
    "compare": {"tolerance": ("tolerance", float), "dealias": ("dealias", _bool)},
    "converge": {
        "kind": ("converge_kind", str),
        "levels": ("levels", _int_list),
        "base_dt": ("base_dt", float),
    },
}


@dataclass(frozen=True)
class ScenarioConfig:
    scenario: str = "solitary_wave"
    a: float = 0.2
    epsilon: float = 0.1
    width: float = 2.0
    x0: float | None = None
    sigma: float = 0.6
    amplitude: float = 0.05
    seed: int = 7
    negate_velocity: bool = False
    length: float = 80.0
    n: int = 1024
    dt: float | None = None
    T: float = 1.0
    cfl_safety: float = 0.9
    max_steps: int = 1_000_000
    stride: int = 10
    directory: str = "gnflow-out"
    formats: tuple = FORMATS
    diagnostics_sigma: float | None = None
    tolerance: float = 1e-4
    dealias: bool = True
    converge_kind: str = "time"
    levels: tuple = field(default=())
    base_dt: float = 0.4

    def __post_init__(self):
        self.validate()

    def validate(self):
        def bad(msg):
            raise ConfigError(msg)

        if self.scenario not in SCENARIOS:
            bad(f"scenario.name must be one of {SCENARIOS}, got {self.scenario!r}")
        if self.scenario == "solitary_wave" and not 0 < self.a < 2:
            bad(f"scenario.a must lie in (0, 2), got {self.a}")
        if self.scenario == "gaussian_hump":
            if not self.epsilon > -1:
                bad("scenario.epsilon must exceed -1 so that h stays positive")
            if not self.width > 0:
                bad("scenario.width must be positive")
        if self.scenario == "rough_data":
            if not self.sigma > 0:
                bad(f"scenario.sigma must be positive, got {self.sigma}")
            if not self.amplitude >= 0:
                bad("scenario.amplitude must be non-negative")
        if not (math.isfinite(self.length) and self.length > 0):
            bad("grid.length must be positive")
        if self.n < 16 or self.n % 2:
            bad(f"grid.n must be an even integer >= 16, got {self.n}")
        if self.dt is not None and not self.dt > 0:
            bad("integrator.dt must be positive or 'auto'")
        if not (math.isfinite(self.T) and self.T >= 0):
            bad("integrator.T must be >= 0")
        if not 0 < self.cfl_safety <= 1:
            bad("integrator.cfl_safety must lie in (0, 1]")
        if self.max_steps < 1 or self.stride < 1:
            bad("integrator.max_steps and output.stride must be positive")
        if set(self.formats) - set(FORMATS):
            bad(f"output.formats must be drawn from {FORMATS}")
        if not self.tolerance > 0:
            bad("compare.tolerance must be positive")
        if self.converge_kind not in CONVERGE_KINDS:
            bad(f"converge.kind must be one of {CONVERGE_KINDS}")
        if not self.base_dt > 0:
            bad("converge.base_dt must be positive")

    @property
    def grid(self):
        return PeriodicGrid(self.length, self.n)

    @property
    def sigma_diag(self):
        if self.diagnostics_sigma is not None:
            return self.diagnostics_sigma
        return self.sigma if self.scenario == "rough_data" else 1.0

    def integrator(self, **overrides):
        kw = dict(T=self.T, dt=self.dt, cfl_safety=self.cfl_safety,
                  max_steps=self.max_steps, stride=self.stride, sigma=self.sigma_diag)
        kw.update(overrides)
        return IntegratorConfig(**kw)

    def with_overrides(self, **kw):
        try:
            return replace(self, **kw)
        except TypeError as exc:
            raise ConfigError(str(exc)) from None

    def echo(self):
        d = asdict(self)
        d["formats"] = list(self.formats)
        d["levels"] = list(self.levels)
        return d


def parse_config(text):
    parser = configparser.ConfigParser(interpolation=None, inline_comment_prefixes=("#", ";"))
    try:
        parser.read_string(text)
    except configparser.Error as exc:
        raise ConfigError(f"malformed config: {exc}") from None
    values = {}
    for section in parser.sections():
        if section not in SCHEMA:
            raise ConfigError(f"unknown section [{section}]")
        for key, raw in parser.items(section):
            if key not in SCHEMA[section]:
                raise ConfigError(f"unknown key {key!r} in [{section}]")
            name, conv = SCHEMA[section][key]
            try:
                values[name] = conv(raw)
            except ValueError as exc:
                raise ConfigError(f"[{section}] {key}: {exc}") from None
    return ScenarioConfig(**values)


def load_config(path):
    try:
        with open(path) as fh:
            text = fh.read()
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from None
    return parse_config(text)


def initial_data(cfg, grid=None):
    """Initial ``(h0, u0)`` for the configured scenario."""
    grid = grid or cfg.grid
    x0 = cfg.x0 if cfg.x0 is not None else grid.length / 2
    if cfg.scenario == "equilibrium":
        h0, u0 = np.ones(grid.n), np.zeros(grid.n)
    elif cfg.scenario == "solitary_wave":
        st = solitary_wave(cfg.a, grid, x0=x0)
        h0, u0 = st.h, st.u
    elif cfg.scenario == "gaussian_hump":
        h0 = 1.0 + cfg.epsilon * np.exp(-(((grid.x - x0) / cfg.width) ** 2))
        u0 = np.zeros(grid.n)
    else:
        h0 = 1.0 + synthesize_rough_field(cfg.sigma, cfg.amplitude, cfg.seed, grid)
        u0 = synthesize_rough_field(cfg.sigma + 1.0, cfg.amplitude, cfg.seed + 1, grid)
    if cfg.negate_velocity:
        u0 = -u0
    return h0, u0


__all__ = ["ScenarioConfig", "initial_data", "load_config", "parse_config"]

"""Flat ``key = value`` run configuration.

One file fully determines a run.  Keys without a default in ``SCHEMA`` are
required; everything else falls back to the listed default.  Lines starting
with ``#`` or ``;`` are comments.
"""

from dataclasses import dataclass, fields
import configparser

import numpy as np

from .errors import ValidationError
from .kerr_drive import DriveConfig
from .params import DEFAULT_PROBE_SHIFT_FACTOR, PseudoHermitianConfig, derive_pseudo_hermitian, g_ep3, g_min

_REQUIRED = object()


def _floats(text):
    return tuple(float(t) for t in text.replace(",", " ").split())


def _g1(text):
    return text.strip().lower() if text.strip().lower() == "ep3" else float(text)


def _opt_float(text):
    return None if text.strip().lower() in ("", "none", "auto") else float(text)


# key -> (parser, default); order is the order of the README table
SCHEMA = {
    "eta": (float, _REQUIRED),
    "g1": (_g1, _REQUIRED),
    "delta1_sign": (int, _REQUIRED),
    "kappa_int": (float, _REQUIRED),
    "port_split": (float, _REQUIRED),
    "delta_k": (float, _REQUIRED),
    "probe_shift_factor": (float, DEFAULT_PROBE_SHIFT_FACTOR),
    "gamma2_mhz": (_opt_float, None),
    "delta_cp": (float, 0.0),
    "window_lo": (_opt_float, None),
    "window_hi": (_opt_float, None),
    "n_points": (int, 20001),
    "xi_values": (_floats, (0.3, 0.1, 0.03, 0.01, 0.003, 0.001)),
    "eta_values": (_floats, (1.0, 2.0, 3.0)),
    "g1_lo": (_opt_float, None),
    "g1_hi": (_opt_float, None),
    "delta_cd": (float, 0.0),
    "delta_1d": (float, 0.0),
    "delta_2d": (float, 0.0),
    "kerr_k1": (float, 0.0),
    "omega_d_min": (float, 0.0),
    "omega_d_max": (float, 1.0),
    "omega_d_points": (int, 101),
}


@dataclass(frozen=True)
class RunConfig:
    eta: float
    g1: object
    delta1_sign: int
    kappa_int: float
    port_split: float
    delta_k: float
    probe_shift_factor: float
    gamma2_mhz: object
    delta_cp: float
    window_lo: object
    window_hi: object
    n_points: int
    xi_values: tuple
    eta_values: tuple
    g1_lo: object
    g1_hi: object
    delta_cd: float
    delta_1d: float
    delta_2d: float
    kerr_k1: float
    omega_d_min: float
    omega_d_max: float
    omega_d_points: int

    @property
    def g1_value(self):
        return g_ep3(self.eta) if self.g1 == "ep3" else self.g1

    def physical_params(self):
        cfg = PseudoHermitianConfig(eta=self.eta, g1=self.g1_value, delta1_sign=self.delta1_sign)
        return derive_pseudo_hermitian(cfg, self.kappa_int, self.port_split, self.delta_k, self.probe_shift_factor)

    def window(self):
        if self.window_lo is None and self.window_hi is None:
            return None
        if self.window_lo is None or self.window_hi is None:
            raise ValidationError("set both window_lo and window_hi or neither", module="config", operation="window")
        return (self.window_lo, self.window_hi)

    def bracket(self):
        lo = g_min(self.eta) if self.g1_lo is None else self.g1_lo
        hi = 2 * self.eta + 2 if self.g1_hi is None else self.g1_hi
        return lo, hi

    def drive(self):
        return DriveConfig(self.delta_cd, self.delta_1d, self.delta_2d, self.omega_d_min, self.kerr_k1)

    def omega_d_grid(self):
        if self.omega_d_points < 1 or self.omega_d_max < self.omega_d_min:
            raise ValidationError("bad omega_d sweep", module="config", operation="omega_d_grid")
        return np.linspace(self.omega_d_min, self.omega_d_max, self.omega_d_points)


def parse_pairs(pairs, source="overrides"):
    """Parse an iterable of (key, raw text) into typed values."""
    out = {}
    for key, raw in pairs:
        if key not in SCHEMA:
            raise ValidationError(f"unknown key '{key}' in {source}", module="config", operation="parse")
        parser, _ = SCHEMA[key]
        try:
            out[key] = parser(raw)
        except ValueError as exc:
            raise ValidationError(f"bad value for '{key}': {raw!r} ({exc})", module="config", operation="parse")
    return out


def read_text(text, source="<config>"):
    cp = configparser.ConfigParser(interpolation=None, comment_prefixes=("#", ";"))
    cp.optionxform = str
    try:
        cp.read_string("[run]\n" + text, source=source)
    except configparser.Error as exc:
        raise ValidationError(f"cannot parse {source}: {exc}", module="config", operation="parse")
    return parse_pairs(cp.items("run"), source)


def build(values):
    """RunConfig from parsed values; the first missing required key is an error."""
    kwargs = {}
    for f in fields(RunConfig):
        _, default = SCHEMA[f.name]
        if f.name in values:
            kwargs[f.name] = values[f.name]
        elif default is _REQUIRED:
            raise ValidationError(f"missing required key '{f.name}'", module="config", operation="parse")
        else:
            kwargs[f.name] = default
    return RunConfig(**kwargs)


def load(path, overrides=()):
    with open(path, encoding="utf-8") as fh:
        values = read_text(fh.read(), str(path))
    values.update(parse_pairs(overrides))
    return build(values)

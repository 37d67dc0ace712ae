"""
Run configuration: config-file grammar, flag merging and validation.

Config files are line oriented::

    # comment
    [beam]
    lambda = 0.25nm

Values given as flags override values from the file, which override defaults.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from pathlib import Path

from . import units as u
from .constants import NeutronBeam
from .errors import DomainError
from .precession import THETA_MARGIN

COMMANDS = ("table1", "transform", "phase", "wave", "scan", "assess")
SCAN_PARAMS = {"E": u.EFIELD, "L": u.LENGTH, "lambda": u.LENGTH, "theta": u.ANGLE}
ORIENTATIONS = ("parallel-to-guide-field", "perpendicular-to-guide-field")

# section.key -> (attribute, kind); kind is a unit dimension, "int", "str" or "bool"
KEYS = {
    "beam.lambda": ("wavelength", u.LENGTH),
    "beam.phi0": ("phi0", u.ANGLE),
    "field.E": ("E", u.EFIELD),
    "field.B_eff": ("B_eff", u.BFIELD),
    "field.material": ("material", "str"),
    "field.materials_file": ("materials_file", "str"),
    "field.eps_r": ("eps_r", u.DIMENSIONLESS),
    "field.mu_r": ("mu_r", u.DIMENSIONLESS),
    "geometry.L": ("L", u.LENGTH),
    "geometry.theta": ("theta", u.ANGLE),
    "geometry.y_extent": ("y_extent", u.LENGTH),
    "target.phi_target": ("phi_target", u.ANGLE),
    "arm.B": ("arm_B", u.BFIELD),
    "arm.L": ("arm_L", u.LENGTH),
    "arm.theta0": ("theta0", u.ANGLE),
    "arm.orientation": ("orientation", "str"),
    "scan.param": ("scan_param", "str"),
    "scan.from": ("scan_from", "str"),
    "scan.to": ("scan_to", "str"),
    "scan.count": ("scan_count", "int"),
    "grid.nx": ("nx", "int"),
    "grid.ny": ("ny", "int"),
    "grid.x_min": ("x_min", u.LENGTH),
    "grid.x_max": ("x_max", u.LENGTH),
    "run.diagnostics": ("diagnostics", "bool"),
}

ATTR_TO_KEY = {attr: key for key, (attr, _) in KEYS.items()}
_KIND = {attr: kind for attr, kind in KEYS.values()}


class ConfigError(ValueError):
    """Invalid configuration; message names the key and where it came from."""


@dataclass(frozen=True)
class RunConfig:
    command: str
    wavelength: float = 0.25e-9
    phi0: float = 0.0
    phi_target: float = 0.1
    theta: float = math.pi / 4
    L: float = 0.1
    E: float = 30e6
    B_eff: float | None = None
    material: str | None = None
    materials_file: str | None = None
    eps_r: float = 1.0
    mu_r: float = 1.0
    y_extent: float | None = None
    arm_B: float = 0.01
    arm_L: float = 1.0
    theta0: float = math.pi / 4
    orientation: str = "parallel-to-guide-field"
    scan_param: str | None = None
    scan_from: float | None = None
    scan_to: float | None = None
    scan_count: int | None = None
    nx: int = 11
    ny: int = 11
    x_min: float | None = None
    x_max: float | None = None
    diagnostics: bool = False
    out: str | None = None
    raw: bool = False

    @property
    def beam(self) -> NeutronBeam:
        return NeutronBeam(self.wavelength, self.phi0)


def _convert(attr, text, where):
    kind = _KIND[attr]
    key = ATTR_TO_KEY[attr]
    try:
        if kind == "str":
            return text.strip()
        if kind == "int":
            return int(text.strip())
        if kind == "bool":
            val = text.strip().lower()
            if val in ("1", "true", "yes", "on"):
                return True
            if val in ("0", "false", "no", "off"):
                return False
            raise ValueError(f"expected a boolean, got {text!r}")
        return u.parse_quantity(text, kind)
    except ValueError as exc:
        raise ConfigError(f"{where} ({key}): {exc}") from None


def read_config_file(path) -> dict:
    """Return {attribute: (raw text, location)} from a config file."""
    path = Path(path)
    lines = path.read_text(encoding="utf-8").splitlines()
    entries = {}
    section = None
    for lineno, line in enumerate(lines, start=1):
        where = f"{path}:{lineno}"
        body = line.split("#", 1)[0].strip()
        if not body:
            continue
        if body.startswith("["):
            if not body.endswith("]"):
                raise ConfigError(f"{where}: malformed section header {line.strip()!r}")
            section = body[1:-1].strip()
            continue
        if "=" not in body:
            raise ConfigError(f"{where}: expected 'key = value', got {line.strip()!r}")
        name, value = (part.strip() for part in body.split("=", 1))
        if section is None:
            raise ConfigError(f"{where}: key {name!r} outside any [section]")
        key = f"{section}.{name}"
        if key not in KEYS:
            raise ConfigError(f"{where}: unknown key {key!r}")
        entries[KEYS[key][0]] = (value, where)
    return entries


def _check_range(cond, attr, where, message):
    if not cond:
        raise ConfigError(f"{where} ({ATTR_TO_KEY.get(attr, attr)}): {message}")


def build_config(command: str, file_entries: dict, flag_entries: dict,
                 out: str | None = None, raw: bool = False) -> RunConfig:
    """Merge file and flag text values (flags win), convert units and validate."""
    if command not in COMMANDS:
        raise ConfigError(f"unknown command {command!r}")
    merged = dict(file_entries)
    merged.update(flag_entries)
    values = {}
    where = {}
    for attr, (text, loc) in merged.items():
        where[attr] = loc
        if attr in ("scan_from", "scan_to"):
            values[attr] = text
        else:
            values[attr] = _convert(attr, text, loc)

    # scan bounds carry the dimension of the scanned parameter
    if command == "scan":
        for attr in ("scan_param", "scan_from", "scan_to", "scan_count"):
            _check_range(attr in values, attr, "scan", "required for the scan command")
        param = values["scan_param"]
        _check_range(param in SCAN_PARAMS, "scan_param", where["scan_param"],
                     f"unknown scan parameter {param!r} (choose from {', '.join(SCAN_PARAMS)})")
        for attr in ("scan_from", "scan_to"):
            try:
                values[attr] = u.parse_quantity(values[attr], SCAN_PARAMS[param])
            except ValueError as exc:
                raise ConfigError(f"{where[attr]} ({ATTR_TO_KEY[attr]}): {exc}") from None
        _check_range(values["scan_count"] >= 2, "scan_count", where["scan_count"],
                     "count must be >= 2")
        _check_range(values["scan_from"] != values["scan_to"], "scan_to", where["scan_to"],
                     "scan range is empty")
    else:
        for attr in ("scan_from", "scan_to"):
            values.pop(attr, None)

    cfg = RunConfig(command=command, out=out, raw=raw, **values)
    _validate(cfg, where)
    return cfg


def _validate(cfg: RunConfig, where: dict) -> None:
    def loc(attr):
        return where.get(attr, "default")

    lo, hi = THETA_MARGIN, math.pi / 2 - THETA_MARGIN
    for attr in ("theta", "theta0"):
        val = getattr(cfg, attr)
        _check_range(lo <= val <= hi, attr, loc(attr),
                     f"{attr} = {math.degrees(val):g} deg is outside (0, 90) deg")
    _check_range(cfg.wavelength > 0, "wavelength", loc("wavelength"), "lambda must be positive")
    try:
        cfg.beam
    except DomainError as exc:
        raise ConfigError(f"{loc('wavelength')} (beam.lambda): {exc}") from None
    for attr in ("L", "arm_B", "arm_L", "phi_target"):
        _check_range(getattr(cfg, attr) > 0, attr, loc(attr), f"{attr} must be positive")
    _check_range(cfg.E >= 0, "E", loc("E"), "E must be non-negative")
    _check_range(cfg.eps_r >= 1, "eps_r", loc("eps_r"), "eps_r must be >= 1")
    _check_range(cfg.mu_r > 0, "mu_r", loc("mu_r"), "mu_r must be positive")
    if cfg.y_extent is not None:
        _check_range(cfg.y_extent > 0, "y_extent", loc("y_extent"), "y_extent must be positive")
    _check_range(cfg.nx >= 1 and cfg.ny >= 1, "nx", loc("nx"), "grid sizes must be >= 1")
    _check_range(cfg.orientation in ORIENTATIONS, "orientation", loc("orientation"),
                 f"orientation must be one of {', '.join(ORIENTATIONS)}")
    if cfg.x_min is not None and cfg.x_max is not None:
        _check_range(cfg.x_min < cfg.x_max, "x_max", loc("x_max"), "x_max must exceed x_min")
    if cfg.scan_param == "lambda" and cfg.command == "scan":
        _check_range(min(cfg.scan_from, cfg.scan_to) > 0, "scan_from", loc("scan_from"),
                     "wavelength scan must stay positive")

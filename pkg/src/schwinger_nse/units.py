"""Whitelisted unit suffixes accepted on the command line and in config files."""

from __future__ import annotations

import math
import re

LENGTH = "length"
ANGLE = "angle"
BFIELD = "magnetic field"
EFIELD = "electric field"
TIME = "time"
DIMENSIONLESS = "dimensionless"

UNITS = {
    LENGTH: {"m": 1.0, "nm": 1e-9},
    ANGLE: {"rad": 1.0, "deg": math.pi / 180.0},
    BFIELD: {"T": 1.0, "uT": 1e-6},
    EFIELD: {"V/m": 1.0, "MV/m": 1e6},
    TIME: {"s": 1.0},
    DIMENSIONLESS: {},
}

_QUANTITY = re.compile(
    r"^\s*([+-]?(?:\d+(?:\.\d*)?|\.\d+)(?:[eE][+-]?\d+)?)\s*([A-Za-z/]*)\s*$")


class UnitError(ValueError):
    pass


def parse_quantity(text: str, dimension: str) -> float:
    """Parse ``'0.25nm'`` style text into an SI float. A bare number is taken as SI."""
    m = _QUANTITY.match(text)
    if m is None:
        raise UnitError(f"cannot parse {text!r} as a number with unit")
    number, unit = m.groups()
    value = float(number)
    if not unit:
        return value
    table = UNITS[dimension]
    if unit not in table:
        allowed = ", ".join(table) or "none"
        raise UnitError(f"unit {unit!r} not valid for {dimension} (allowed: {allowed})")
    if unit == "deg":
        return math.radians(value)
    return value * table[unit]

"""
Dielectric materials and their derived Schwinger-effect figures.

Material files are UTF-8 CSV with the header ``name,E_b_MV_per_m,eps_r,mu_r``;
lines starting with ``#`` are comments.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass
from pathlib import Path

from .constants import CONSTANTS, neutron_velocity, neutron_wavenumber
from .errors import DomainError, MaterialError, MaterialParseError
from .precession import check_theta, refraction_angle_from_B

CSV_HEADER = ("name", "E_b_MV_per_m", "eps_r", "mu_r")


@dataclass(frozen=True)
class Material:
    name: str
    E_b: float          # breakdown field [V/m]
    eps_r: float
    mu_r: float = 1.0

    def __post_init__(self):
        if not self.name:
            raise MaterialError("material name must be nonempty")
        if not (math.isfinite(self.E_b) and self.E_b > 0):
            raise MaterialError(f"{self.name}: E_b must be positive, got {self.E_b!r}")
        if not (math.isfinite(self.eps_r) and self.eps_r >= 1):
            raise MaterialError(f"{self.name}: eps_r must be >= 1, got {self.eps_r!r}")
        if not (math.isfinite(self.mu_r) and self.mu_r > 0):
            raise MaterialError(f"{self.name}: mu_r must be > 0, got {self.mu_r!r}")


# (name, E_b in MV/m, eps_r), in table order
_BUILTIN = (
    ("Air", 3, 1),
    ("Vacuum", 30, 1),
    ("Fused Quartz", 25, 3.8),
    ("Silicon", 60, 8.5),
    ("AlN", 120, 8.5),
    ("Teflon", 170, 2),
    ("SiC", 300, 9.7),
)


def builtin_materials() -> list[Material]:
    return [Material(name, E_mv * 1e6, float(eps)) for name, E_mv, eps in _BUILTIN]


def _check_unique(materials, path=None):
    seen = {}
    for mat, line in materials:
        if mat.name in seen:
            raise MaterialParseError(
                f"duplicate material {mat.name!r} (first defined on line {seen[mat.name]})",
                path, line)
        seen[mat.name] = line


def parse_materials(text: str, path=None) -> list[Material]:
    """Parse material CSV text. ``path`` is used only in error messages."""
    rows = []
    header_seen = False
    reader = csv.reader(io.StringIO(text))
    for row in reader:
        line = reader.line_num
        if not row or not "".join(row).strip():
            continue
        if row[0].lstrip().startswith("#"):
            continue
        cells = [cell.strip() for cell in row]
        if not header_seen:
            if tuple(cells) != CSV_HEADER:
                raise MaterialParseError(
                    f"expected header {','.join(CSV_HEADER)!r}, got {','.join(cells)!r}",
                    path, line)
            header_seen = True
            continue
        if len(cells) != len(CSV_HEADER):
            raise MaterialParseError(
                f"expected {len(CSV_HEADER)} fields, got {len(cells)}", path, line)
        name, e_b, eps_r, mu_r = cells
        try:
            values = float(e_b), float(eps_r), float(mu_r)
        except ValueError as exc:
            raise MaterialParseError(f"row {name!r}: {exc}", path, line) from None
        try:
            mat = Material(name, values[0] * 1e6, values[1], values[2])
        except MaterialError as exc:
            raise MaterialParseError(f"row {name!r}: {exc}", path, line) from None
        rows.append((mat, line))
    if not header_seen:
        raise MaterialParseError("missing header line", path, None)
    _check_unique(rows, path)
    return [mat for mat, _ in rows]


def load_materials(path) -> list[Material]:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise MaterialParseError(f"cannot read material file: {exc.strerror}", path) from exc
    return parse_materials(text, path)


def dump_materials(materials) -> str:
    """Serialise materials in the CSV schema read by :func:`parse_materials`."""
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    for m in materials:
        writer.writerow([m.name, repr(m.E_b / 1e6), repr(m.eps_r), repr(m.mu_r)])
    return out.getvalue()


@dataclass(frozen=True)
class Table1Row:
    material: Material
    wavelength: float
    B_eff: float        # [T]
    L_min: float        # [m]
    alpha: float        # [rad]
    theta: float
    phi_target: float


def effective_field(E: float, wavelength: float) -> float:
    """Magnitude of the motion-induced field E v / c^2 for E perpendicular to v."""
    return E * neutron_velocity(wavelength) / CONSTANTS.c**2


def minimum_length(E: float, phi_target: float) -> float:
    """Flight path needed for a Schwinger rotation of ``phi_target`` at field ``E``."""
    return phi_target * CONSTANTS.c**2 / (CONSTANTS.gamma_L * E)


def derived_row(material: Material, wavelength: float, phi_target: float,
                theta: float) -> Table1Row:
    check_theta(theta)
    if not phi_target > 0:
        raise DomainError(f"phi_target must be positive, got {phi_target!r}")
    B_eff = effective_field(material.E_b, wavelength)
    alpha = refraction_angle_from_B(B_eff, neutron_wavenumber(wavelength), theta)
    return Table1Row(
        material=material,
        wavelength=wavelength,
        B_eff=B_eff,
        L_min=minimum_length(material.E_b, phi_target),
        alpha=alpha,
        theta=theta,
        phi_target=phi_target,
    )

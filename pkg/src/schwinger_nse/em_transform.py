"""
Magnetic field seen by a neutron moving through a laboratory electric field.

Three independent routes are provided:

* a moving charged capacitor whose plate charges form surface currents,
* the Galilean (non-relativistic) limit of the Minkowski constitutive
  equations for a moving medium,
* the full Lorentz boost of the field pair (E, B).

Vectors are plain ``numpy`` arrays of shape (3,).

Velocity conventions: ``v`` in :func:`neutron_frame_field_vacuum`,
:func:`lorentz_boost_fields` and :func:`transform_consistency_report` is the
neutron's velocity in the laboratory. In :func:`galilean_fields` and
:func:`minkowski_residuals` it is the velocity of the *medium* in the frame
where the fields are evaluated, i.e. minus the neutron velocity when working
in the neutron frame.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .constants import CONSTANTS
from .errors import DomainError, GeometryError, MaterialError

c = CONSTANTS.c
eps0 = CONSTANTS.eps0
mu0 = CONSTANTS.mu0

_ZERO = np.zeros(3)


def _field_constants(dtype):
    """(c, mu0, eps0) in ``dtype`` with eps0 = 1/(mu0 c^2) formed at that precision."""
    c_ = dtype(c)
    mu0_ = dtype(mu0)
    return c_, mu0_, 1 / (mu0_ * c_ * c_)


def as_vec3(value, dtype=np.float64) -> np.ndarray:
    arr = np.asarray(value, dtype=dtype)
    if arr.shape != (3,):
        raise DomainError(f"expected a 3-vector, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise DomainError(f"vector components must be finite, got {arr}")
    return arr


def _check_slow(v, limit=c / 100.0):
    speed = float(np.linalg.norm(np.asarray(v, dtype=np.float64)))
    if speed >= limit:
        raise DomainError(f"|v| = {speed:g} m/s exceeds the non-relativistic limit {limit:g} m/s")


def _check_material(eps_r, mu_r):
    if not (math.isfinite(eps_r) and eps_r >= 1.0):
        raise MaterialError(f"eps_r must be >= 1, got {eps_r!r}")
    if not (math.isfinite(mu_r) and mu_r > 0.0):
        raise MaterialError(f"mu_r must be > 0, got {mu_r!r}")


@dataclass(frozen=True)
class LabFields:
    E: np.ndarray
    B: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "E", as_vec3(self.E))
        object.__setattr__(self, "B", as_vec3(self.B))


@dataclass(frozen=True)
class FrameFields:
    E: np.ndarray
    B: np.ndarray
    D: np.ndarray
    H: np.ndarray

    def __post_init__(self):
        for name in ("E", "B", "D", "H"):
            object.__setattr__(self, name, as_vec3(getattr(self, name)))


@dataclass(frozen=True)
class CapacitorSpec:
    """Thin parallel-plate capacitor; edge fields are ignored."""

    U: float      # voltage [V]
    d: float      # plate gap [m]
    L: float      # plate length along the beam [m]
    H_w: float    # plate width [m]
    eps_r: float = 1.0

    def __post_init__(self):
        for name in ("d", "L", "H_w"):
            val = getattr(self, name)
            if not (math.isfinite(val) and val > 0):
                raise GeometryError(f"{name} must be positive, got {val!r}")
        if not math.isfinite(self.U):
            raise GeometryError(f"U must be finite, got {self.U!r}")
        if not (self.d < self.L / 10 and self.d < self.H_w / 10):
            raise GeometryError(
                f"thin-capacitor assumption violated: d={self.d!r} must be < L/10 and < H_w/10"
            )
        _check_material(self.eps_r, 1.0)

    @property
    def area(self) -> float:
        return self.L * self.H_w

    @property
    def capacitance(self) -> float:
        return self.eps_r * eps0 * self.area / self.d


def capacitor_charge_and_field(spec: CapacitorSpec) -> tuple[float, float]:
    """Return plate charge Q [C] and gap field E [V/m]."""
    E = spec.U / spec.d
    Q = spec.capacitance * spec.U
    return Q, E


def surface_current(E: float, eps_r: float, v: float) -> float:
    """Surface current density of the moving plate charges [A/m].

    By Ampere's law for the sheet pair this is also the magnitude of H
    between the plates.
    """
    if E < 0 or v < 0:
        raise DomainError(f"E and v must be non-negative, got E={E!r}, v={v!r}")
    _check_material(eps_r, 1.0)
    return eps_r * eps0 * E * v


def capacitor_H(E, v_plates, eps_r: float = 1.0, dtype=np.float64) -> np.ndarray:
    """H between plates moving at ``v_plates`` with gap field ``E`` (vector form)."""
    E = as_vec3(E, dtype)
    v_plates = as_vec3(v_plates, dtype)
    _check_material(eps_r, 1.0)
    _, _, eps0_ = _field_constants(dtype)
    return dtype(eps_r) * eps0_ * np.cross(v_plates, E)


def neutron_frame_field_vacuum(E, v) -> np.ndarray:
    """Motion-induced field -(v x E)/c^2 for a neutron with lab velocity ``v``."""
    E = as_vec3(E)
    v = as_vec3(v)
    _check_slow(v)
    return -np.cross(v, E) / c**2


def galilean_fields(E, H, v, eps_r: float, mu_r: float,
                    dtype=np.float64) -> tuple[np.ndarray, np.ndarray]:
    """Galilean electric constitutive relations for a medium moving at ``v``.

    Returns (D, B) with D = eps_r eps0 E and
    B = mu_r mu0 H - (mu_r eps_r - 1) (v x E) / c^2.

    The two terms of B nearly cancel for the capacitor configuration, with
    condition number ~ mu_r eps_r; pass ``dtype=np.longdouble`` (with H
    computed at the same precision) to keep the result accurate for large
    mu_r eps_r.
    """
    E = as_vec3(E, dtype)
    H = as_vec3(H, dtype)
    v = as_vec3(v, dtype)
    _check_material(eps_r, mu_r)
    _check_slow(v)
    c_, mu0_, eps0_ = _field_constants(dtype)
    mu_r, eps_r = dtype(mu_r), dtype(eps_r)
    D = eps_r * eps0_ * E
    B = mu_r * mu0_ * H - (mu_r * eps_r - 1) * np.cross(v, E) / (c_ * c_)
    return D, B


def minkowski_residuals(fields: FrameFields, v, eps_r: float, mu_r: float):
    """Residuals of the two Minkowski constitutive equations for a moving medium.

    Returns ``(r_D, r_B)`` where

        r_D = D + (v x H)/c^2 - eps_r eps0 (E + v x B)
        r_B = B - (v x E)/c^2 - mu_r mu0 (H - v x D)

    Both vanish for an exact solution.
    """
    v = as_vec3(v)
    _check_material(eps_r, mu_r)
    E, B, D, H = fields.E, fields.B, fields.D, fields.H
    r_D = D + np.cross(v, H) / c**2 - eps_r * eps0 * (E + np.cross(v, B))
    r_B = B - np.cross(v, E) / c**2 - mu_r * mu0 * (H - np.cross(v, D))
    return r_D, r_B


def lorentz_factor(speed: float) -> float:
    beta = speed / c
    if not beta < 1.0:
        raise DomainError(f"|v| = {speed!r} m/s must be below c")
    return 1.0 / math.sqrt(1.0 - beta * beta)


def lorentz_boost_fields(fields: LabFields, v) -> LabFields:
    """Fields in a frame moving with velocity ``v`` relative to ``fields``' frame.

    Standard boost with Gamma = 1 / sqrt(1 - v^2/c^2):

        E' = Gamma (E + v x B) + (1 - Gamma) v (v.E) / v^2
        B' = Gamma (B - v x E / c^2) + (1 - Gamma) v (v.B) / v^2
    """
    v = as_vec3(v)
    v2 = float(v @ v)
    if v2 == 0.0:
        return fields
    gamma = lorentz_factor(math.sqrt(v2))
    E, B = fields.E, fields.B
    E_p = gamma * (E + np.cross(v, B)) + (1.0 - gamma) * v * (v @ E) / v2
    B_p = gamma * (B - np.cross(v, E) / c**2) + (1.0 - gamma) * v * (v @ B) / v2
    return LabFields(E_p, B_p)


@dataclass(frozen=True)
class TransformReport:
    B_capacitor: np.ndarray
    B_galilean: np.ndarray
    B_lorentz: np.ndarray
    dev_galilean_capacitor: float
    dev_lorentz_galilean: float
    dev_lorentz_capacitor: float

    @property
    def max_deviation(self) -> float:
        return max(self.dev_galilean_capacitor, self.dev_lorentz_galilean,
                   self.dev_lorentz_capacitor)

    def magnitudes(self) -> dict[str, float]:
        return {
            "capacitor": float(np.linalg.norm(self.B_capacitor)),
            "galilean": float(np.linalg.norm(self.B_galilean)),
            "lorentz": float(np.linalg.norm(self.B_lorentz)),
        }


def _rel_dev(a, b) -> float:
    scale = max(np.linalg.norm(a), np.linalg.norm(b))
    if scale == 0.0:
        return 0.0
    return float(np.linalg.norm(a - b) / scale)


def transform_consistency_report(E, v, eps_r: float = 1.0, mu_r: float = 1.0) -> TransformReport:
    """Neutron-frame B from all three routes for lab field ``E`` and neutron velocity ``v``."""
    E = as_vec3(E)
    v = as_vec3(v)
    _check_material(eps_r, mu_r)
    v_plates = -v

    # vacuum capacitor: B = mu0 H with H equal to the surface current
    B_cap = mu0 * capacitor_H(E, v_plates, 1.0)

    # medium between the plates: H from the dielectric's free charge, then Galilean B
    ext = np.longdouble
    H = capacitor_H(E, v_plates, eps_r, dtype=ext)
    _, B_gal = galilean_fields(E, H, v_plates, eps_r, mu_r, dtype=ext)
    B_gal = B_gal.astype(np.float64)

    B_lor = lorentz_boost_fields(LabFields(E, _ZERO), v).B

    return TransformReport(
        B_capacitor=B_cap,
        B_galilean=B_gal,
        B_lorentz=B_lor,
        dev_galilean_capacitor=_rel_dev(B_gal, B_cap),
        dev_lorentz_galilean=_rel_dev(B_lor, B_gal),
        dev_lorentz_capacitor=_rel_dev(B_lor, B_cap),
    )

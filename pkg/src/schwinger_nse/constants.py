"""
Physical constants and neutron kinematics.

All values are SI (CODATA 2018). Angles are radians throughout the library;
unit conversion is done only at the CLI boundary.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .errors import DomainError

# Electronvolt [J], used only for reporting moments in neV/T.
EV = 1.602176634e-19

GAMMA_DOUBLE = "double"    # gamma_L = 2 |mu_n| / hbar (default)
GAMMA_LITERAL = "literal"  # gamma_L = |mu_n| / hbar (diagnostics only)


@dataclass(frozen=True)
class PhysicalConstants:
    """Single source of truth for every constant used by the library.

    ``mu_n`` is stored signed (negative for the neutron). Magnitude
    formulas use ``abs(mu_n)``; the sign only fixes the sense of rotation and
    is available as :attr:`rotation_sign`.
    """

    c: float = 299792458.0            # speed of light [m/s]
    mu0: float = 1.25663706212e-6     # vacuum permeability [N/A^2]
    h: float = 6.62607015e-34         # Planck constant [J s]
    m_n: float = 1.67492749804e-27    # neutron mass [kg]
    mu_n: float = -9.6623651e-27      # neutron magnetic moment [J/T]
    gamma_convention: str = field(default=GAMMA_DOUBLE)

    def __post_init__(self):
        if self.gamma_convention not in (GAMMA_DOUBLE, GAMMA_LITERAL):
            raise ValueError(f"unknown gamma convention {self.gamma_convention!r}")

    @property
    def eps0(self) -> float:
        """Vacuum permittivity 1 / (mu0 c^2) [C/(V m)]; 8.8541878128e-12 to 11 digits."""
        return 1.0 / (self.mu0 * self.c**2)

    @property
    def hbar(self) -> float:
        return self.h / (2.0 * math.pi)

    @property
    def gamma_L(self) -> float:
        """Larmor coefficient [rad/(s T)]."""
        factor = 2.0 if self.gamma_convention == GAMMA_DOUBLE else 1.0
        return factor * abs(self.mu_n) / self.hbar

    @property
    def mu_n_neV_per_T(self) -> float:
        return self.mu_n / EV * 1e9

    @property
    def rotation_sign(self) -> int:
        return -1 if self.mu_n < 0 else 1


CONSTANTS = PhysicalConstants()


def _check_wavelength(wavelength):
    if not (math.isfinite(wavelength) and wavelength > 0):
        raise DomainError(f"wavelength must be positive and finite, got {wavelength!r}")


def neutron_velocity(wavelength: float, constants: PhysicalConstants = CONSTANTS) -> float:
    """de Broglie speed h / (m_n lambda) in m/s."""
    _check_wavelength(wavelength)
    return constants.h / (constants.m_n * wavelength)


def neutron_wavenumber(wavelength: float) -> float:
    """Wavenumber 2 pi / lambda in 1/m."""
    _check_wavelength(wavelength)
    return 2.0 * math.pi / wavelength


def wavelength_from_wavenumber(k: float) -> float:
    if not (math.isfinite(k) and k > 0):
        raise DomainError(f"wavenumber must be positive and finite, got {k!r}")
    return 2.0 * math.pi / k


@dataclass(frozen=True)
class NeutronBeam:
    """Monochromatic neutron beam; ``phi0`` is the incident spinor phase split."""

    wavelength: float
    phi0: float = 0.0

    def __post_init__(self):
        _check_wavelength(self.wavelength)
        if not math.isfinite(self.phi0):
            raise DomainError(f"phi0 must be finite, got {self.phi0!r}")
        if self.v / CONSTANTS.c >= 1e-3:
            raise DomainError(
                f"wavelength {self.wavelength!r} m gives v/c >= 1e-3; "
                "non-relativistic formulas do not apply"
            )

    @property
    def k(self) -> float:
        return neutron_wavenumber(self.wavelength)

    @property
    def v(self) -> float:
        return neutron_velocity(self.wavelength)

    @classmethod
    def from_wavenumber(cls, k: float, phi0: float = 0.0) -> "NeutronBeam":
        return cls(wavelength_from_wavenumber(k), phi0)

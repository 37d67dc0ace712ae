"""
Spin rotation and energy terms for a neutron in electric and magnetic fields.

Rotation magnitudes use |mu_n|; the sense of rotation is
``CONSTANTS.rotation_sign`` and is never folded into these values.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .constants import CONSTANTS, PhysicalConstants
from .errors import DomainError

ROUTES = ("larmor", "schwinger", "triangle", "spinecho-path", "spinecho-delta")

# keep cot(theta) finite
THETA_MARGIN = 1e-6


@dataclass(frozen=True)
class PhaseResult:
    phi: float
    route: str

    def __post_init__(self):
        if self.route not in ROUTES:
            raise ValueError(f"unknown route {self.route!r}")
        if not math.isfinite(self.phi):
            raise DomainError(f"phase must be finite, got {self.phi!r}")


def check_theta(theta: float, name: str = "theta") -> None:
    if not (THETA_MARGIN <= theta <= math.pi / 2 - THETA_MARGIN):
        raise DomainError(f"{name} must lie in (0, pi/2), got {theta!r} rad")


def cot(theta: float) -> float:
    return math.cos(theta) / math.sin(theta)


def larmor_phase(B: float, L: float, v: float,
                 constants: PhysicalConstants = CONSTANTS) -> float:
    """Larmor rotation gamma_L B L / v over a flight path ``L`` at speed ``v``."""
    if not v > 0:
        raise DomainError(f"v must be positive, got {v!r}")
    if L < 0:
        raise DomainError(f"L must be non-negative, got {L!r}")
    return constants.gamma_L * B * L / v


def schwinger_rate(constants: PhysicalConstants = CONSTANTS) -> float:
    """Schwinger rotation per unit voltage, gamma_L / c^2 [rad/V]."""
    return constants.gamma_L / constants.c**2


def schwinger_phase(E: float, L: float,
                    constants: PhysicalConstants = CONSTANTS) -> float:
    """Rotation from the motion-induced field of ``E`` over length ``L``.

    Does not depend on the neutron wavelength: the field grows with v while
    the transit time shrinks as 1/v.
    """
    if L < 0:
        raise DomainError(f"L must be non-negative, got {L!r}")
    if not math.isfinite(E):
        raise DomainError(f"E must be finite, got {E!r}")
    return schwinger_rate(constants) * E * L


def foldy_energy(charge_density: float) -> float:
    """Foldy term -hbar mu_n / (2 m_n c) * rho, evaluated as written.

    Spin independent; it produces no polarization rotation.
    """
    k = CONSTANTS
    return -(k.hbar * k.mu_n / (2.0 * k.m_n * k.c)) * charge_density


def polarizability_energy(alpha_pol: float, E: float) -> float:
    """Induced-dipole energy -alpha E^2 / 2. Spin independent."""
    if alpha_pol < 0:
        raise DomainError(f"polarizability must be non-negative, got {alpha_pol!r}")
    return -0.5 * alpha_pol * E * E


SPIN_INDEPENDENT_TERMS = frozenset({"foldy", "polarizability"})


def refraction_angle_from_B(B_eff: float, k: float, theta: float) -> float:
    """Refraction angle at a field boundary inclined by ``theta``.

    alpha = m_n |mu_n| B_eff / (hbar^2 k^2) * cot(theta). This is the angle
    used by the wave-propagation and spin-echo modules.
    """
    check_theta(theta)
    if not k > 0:
        raise DomainError(f"k must be positive, got {k!r}")
    c_ = CONSTANTS
    return c_.m_n * abs(c_.mu_n) * B_eff / (c_.hbar**2 * k * k) * cot(theta)


def refraction_angle_from_E(E: float, wavelength: float, theta: float,
                            constants: PhysicalConstants = CONSTANTS) -> float:
    """Refraction angle written directly in terms of the electric field.

    alpha = gamma_L lambda E / (pi c^2) * cot(theta). With the default
    gamma_L convention this is four times :func:`refraction_angle_from_B`
    evaluated at B_eff = E v / c^2; kept for comparison only.
    """
    check_theta(theta)
    if not wavelength > 0:
        raise DomainError(f"wavelength must be positive, got {wavelength!r}")
    return constants.gamma_L * wavelength * E / (math.pi * constants.c**2) * cot(theta)


def exact_refraction_angle(B_eff: float, k: float, theta: float) -> float:
    """Deflection of the spin-up wave from tangential wavevector conservation.

    Solves the boundary kinematics without linearisation: the wave crosses
    into a potential lowered by |mu_n| B_eff, keeps its wavevector component
    along the boundary line and gains normal momentum. Returned angle is the
    change of propagation direction relative to the boundary.
    """
    check_theta(theta)
    c_ = CONSTANTS
    dk2 = 2.0 * c_.m_n * abs(c_.mu_n) * B_eff / c_.hbar**2
    k_t = k * math.cos(theta)
    k_n = k * math.sin(theta)
    k_n_new = math.sqrt(k_n * k_n + dk2)
    # difference of the two directions without cancellation
    dk_n = dk2 / (k_n_new + k_n)
    return math.atan2(k_t * dk_n, k_t * k_t + k_n * k_n_new)

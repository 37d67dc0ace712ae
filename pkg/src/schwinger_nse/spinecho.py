"""
One arm of a spin-echo spectrometer behind a triangular electric-field region.

The split spin-up/spin-down trajectories cross the arm's inclined field
boundaries at different heights. The resulting extra rotation can be written
either through the height difference of the two paths or through the arm's
spin-echo length; both forms are provided and must agree.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .constants import CONSTANTS, NeutronBeam
from .errors import DomainError
from .precession import check_theta, cot, refraction_angle_from_B, refraction_angle_from_E
from .spinor_wave import TriangleRegion, triangle_rotation

PARALLEL = "parallel-to-guide-field"            # SESANS geometry
PERPENDICULAR = "perpendicular-to-guide-field"  # OffSpec geometry
ORIENTATIONS = (PARALLEL, PERPENDICULAR)

ROTATOR_NOTE = (
    "splitting is perpendicular to the guide field: rotate the polarization "
    "plane toward the effective field direction before the field region and "
    "back afterwards"
)


def _positive(**kwargs):
    for name, val in kwargs.items():
        if not (math.isfinite(val) and val > 0):
            raise DomainError(f"{name} must be positive, got {val!r}")


@dataclass(frozen=True)
class SpinEchoArm:
    B: float
    L_arm: float
    theta0: float
    splitting_orientation: str = PARALLEL

    def __post_init__(self):
        _positive(B=self.B, L_arm=self.L_arm)
        check_theta(self.theta0, "theta0")
        if self.splitting_orientation not in ORIENTATIONS:
            raise DomainError(f"unknown splitting orientation {self.splitting_orientation!r}")

    @property
    def needs_rotator(self) -> bool:
        return self.splitting_orientation == PERPENDICULAR


@dataclass(frozen=True)
class SplitTrajectories:
    delta1: float
    delta2: float

    @property
    def separation(self) -> float:
        return self.delta2 - self.delta1


def spin_echo_rotation(wavelength: float, B: float, L_arm: float) -> float:
    """4 pi m_n |mu_n| lambda B L_arm / h^2 ; identical to the Larmor phase in the arm."""
    _positive(wavelength=wavelength, B=B, L_arm=L_arm)
    k = CONSTANTS
    return 4.0 * math.pi * k.m_n * abs(k.mu_n) * wavelength * B * L_arm / k.h**2


def spin_echo_length(wavelength: float, B: float, L_arm: float, theta0: float) -> float:
    """2 m_n |mu_n| lambda^2 B L_arm cot(theta0) / h^2"""
    _positive(wavelength=wavelength, B=B, L_arm=L_arm)
    check_theta(theta0, "theta0")
    k = CONSTANTS
    return 2.0 * k.m_n * abs(k.mu_n) * wavelength**2 * B * L_arm * cot(theta0) / k.h**2


def split_separation(alpha: float, L_arm: float) -> float:
    """Height difference delta2 - delta1 = 2 alpha L_arm between the two field regions."""
    _positive(L_arm=L_arm)
    return 2.0 * alpha * L_arm


def split_trajectories(alpha: float, L_arm: float, delta1: float = 0.0) -> SplitTrajectories:
    return SplitTrajectories(delta1, delta1 + split_separation(alpha, L_arm))


def enhanced_phase_path(B: float, k: float, theta0: float, separation: float) -> float:
    """Extra spin-up phase from the longer path through the arm's field regions."""
    _positive(B=B, k=k)
    check_theta(theta0, "theta0")
    c_ = CONSTANTS
    return 2.0 * c_.m_n * abs(c_.mu_n) * B / (k * c_.hbar**2) * separation * cot(theta0)


def enhanced_phase_delta(delta: float, k: float, alpha: float) -> float:
    """Same rotation written via the spin-echo length: 2 k delta alpha."""
    return 2.0 * k * delta * alpha


@dataclass(frozen=True)
class EnhancementReport:
    phi_direct: float
    phi_enhanced: float
    ratio: float
    dominant: str
    spin_echo_length: float
    alpha: float
    orientation_note: str | None
    diagnostics: dict | None = None


def enhancement_assessment(beam: NeutronBeam, region: TriangleRegion, arm: SpinEchoArm,
                           diagnostics: bool = False) -> EnhancementReport:
    """Compare the direct triangle rotation with its spin-echo-enhanced counterpart.

    The enhanced phase only wins when the arm's spin-echo length exceeds the
    field region's L tan(theta). With ``diagnostics`` the report also carries
    the would-be sizes of effects this model neglects: the zero-field
    precession across the modelled height, the exit splitting angle, the arm
    boundary refraction angle and the E-field form of alpha.
    """
    k = beam.k
    alpha = refraction_angle_from_B(region.B_eff, k, region.theta)
    delta = spin_echo_length(beam.wavelength, arm.B, arm.L_arm, arm.theta0)
    phi_direct = float(triangle_rotation(k, alpha, region.L, region.theta, 0.0))
    phi_enhanced = enhanced_phase_delta(delta, k, alpha)
    ratio = delta / (region.L * math.tan(region.theta))
    diag = None
    if diagnostics:
        E_equiv = region.B_eff * CONSTANTS.c**2 / beam.v
        diag = {
            "zero_field_phase": 4.0 * k * alpha * region.y_extent,
            "exit_splitting_angle": 4.0 * alpha,
            "arm_refraction_angle": refraction_angle_from_B(arm.B, k, arm.theta0),
            "alpha_from_E": refraction_angle_from_E(E_equiv, beam.wavelength, region.theta),
            "path_route_phase": enhanced_phase_path(
                arm.B, k, arm.theta0, split_separation(alpha, arm.L_arm)),
        }
    return EnhancementReport(
        phi_direct=phi_direct,
        phi_enhanced=phi_enhanced,
        ratio=ratio,
        dominant="enhanced" if ratio > 1.0 else "direct",
        spin_echo_length=delta,
        alpha=alpha,
        orientation_note=ROTATOR_NOTE if arm.needs_rotator else None,
        diagnostics=diag,
    )

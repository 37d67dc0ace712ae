"""
Two-component spinor plane wave through a triangular effective-field region.

The region is bounded by the entry line ``y = x tan(theta)`` and the exit
line ``y = (L - x) tan(theta)``; both boundaries are treated as unbounded
lines (edge effects ignored). Inside, the spin-up and spin-down waves are
refracted by -alpha and +alpha respectively, and the matched solution after
the region carries the polarization rotation 2 k alpha (L tan(theta) - 2 y).

Numerics: with k x of order 1e9 rad a direct ``exp(1j * k.r)`` loses the
relative phase between the spin components long before alpha matters. Every
component is therefore evaluated as the shared carrier ``exp(1j k x)`` times
``exp(1j p)``, where the small phase ``p`` is written in a form free of
cancellation (cos a - 1 = -2 sin^2(a/2) and so on). The result is the same
plane-wave expression, only rearranged.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .constants import NeutronBeam
from .errors import DomainError, ModelValidityError, UndefinedPhaseError
from .precession import check_theta, refraction_angle_from_B

ZONES = ("before", "inside", "after")
MAX_ALPHA = 1e-3
DEFAULT_COHERENCE_LENGTH = 50e-9
_AMP = 1.0 / math.sqrt(2.0)


@dataclass(frozen=True)
class TriangleRegion:
    L: float
    theta: float
    B_eff: float
    y_extent: float | None = None

    def __post_init__(self):
        check_theta(self.theta)
        if not (math.isfinite(self.L) and self.L > 0):
            raise DomainError(f"L must be positive, got {self.L!r}")
        if not math.isfinite(self.B_eff):
            raise DomainError(f"B_eff must be finite, got {self.B_eff!r}")
        if self.y_extent is None:
            object.__setattr__(self, "y_extent", self.height)
        elif not (math.isfinite(self.y_extent) and self.y_extent > 0):
            raise DomainError(f"y_extent must be positive, got {self.y_extent!r}")

    @property
    def height(self) -> float:
        """Height of the apex above the base."""
        return 0.5 * self.L * math.tan(self.theta)


@dataclass(frozen=True)
class PlaneWaveComponent:
    """amplitude * exp(1j * (kvec . r + phase0))"""

    kvec: tuple[float, float]
    phase0: float
    amplitude: complex = _AMP

    def __call__(self, x, y):
        return self.amplitude * np.exp(1j * (self.kvec[0] * x + self.kvec[1] * y + self.phase0))


@dataclass(frozen=True)
class PiecewiseSpinorWave:
    k: float
    alpha: float
    phi0: float
    region: TriangleRegion | None
    zones: dict = field(default_factory=dict)

    def components(self, zone: str) -> tuple[PlaneWaveComponent, PlaneWaveComponent]:
        return self.zones[zone]


def _zone_components(k, alpha, phi0, t, L):
    half = 0.5 * phi0
    ca, sa = math.cos(alpha), math.sin(alpha)
    c2, s2 = math.cos(2 * alpha), math.sin(2 * alpha)
    zones = {
        "before": (PlaneWaveComponent((k, 0.0), half),
                   PlaneWaveComponent((k, 0.0), -half)),
    }
    if L is None:
        return zones
    k_up = k * (1 + alpha * t)
    k_dn = k * (1 - alpha * t)
    zones["inside"] = (PlaneWaveComponent((k_up * ca, -k_up * sa), half),
                       PlaneWaveComponent((k_dn * ca, k_dn * sa), -half))
    zones["after"] = (
        PlaneWaveComponent((k * c2, -k * s2), -k * L * c2 + k_up * L + half),
        PlaneWaveComponent((k * c2, k * s2), -k * L * c2 + k_dn * L - half),
    )
    return zones


def incident_wave(k: float, phi0: float = 0.0) -> PiecewiseSpinorWave:
    """exp(i k x) / sqrt(2) * (exp(i phi0/2), exp(-i phi0/2))"""
    if not (math.isfinite(k) and k > 0):
        raise DomainError(f"k must be positive, got {k!r}")
    return PiecewiseSpinorWave(k=k, alpha=0.0, phi0=phi0, region=None,
                               zones=_zone_components(k, 0.0, phi0, 0.0, None))


def propagate_triangle(beam: NeutronBeam, region: TriangleRegion) -> PiecewiseSpinorWave:
    """Matched three-zone solution for ``beam`` crossing ``region``."""
    k = beam.k
    alpha = refraction_angle_from_B(region.B_eff, k, region.theta)
    if abs(alpha) >= MAX_ALPHA:
        raise ModelValidityError(
            f"refraction angle {alpha:g} rad is outside the first-order matching range "
            f"(|alpha| < {MAX_ALPHA:g})")
    t = math.tan(region.theta)
    return PiecewiseSpinorWave(k=k, alpha=alpha, phi0=beam.phi0, region=region,
                               zones=_zone_components(k, alpha, beam.phi0, t, region.L))


def zone_index(wave: PiecewiseSpinorWave, x, y) -> np.ndarray:
    """0 = before, 1 = inside, 2 = after. Boundary points go to the earlier zone."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    if wave.region is None:
        return np.zeros(np.broadcast(x, y).shape, dtype=int)
    t = math.tan(wave.region.theta)
    L = wave.region.L
    before = x * t <= y
    after = ~before & (y > (L - x) * t)
    return np.where(before, 0, np.where(after, 2, 1))


def _relative_phases(wave, zone, x, y):
    """Phases of both components relative to the carrier k x."""
    k, a, half = wave.k, wave.alpha, 0.5 * wave.phi0
    if zone == 0:
        zero = np.zeros(np.broadcast(x, y).shape)
        return zero + half, zero - half
    t = math.tan(wave.region.theta)
    L = wave.region.L
    if zone == 1:
        # (1 +- a t)(x cos a -+ y sin a) - x
        common = -2.0 * x * math.sin(0.5 * a) ** 2
        tilt = y * math.sin(a)
        drift = a * t * x * math.cos(a)
        skew = a * t * y * math.sin(a)
        up = common - tilt + drift - skew
        dn = common + tilt - drift - skew
    else:
        # (x - L) cos 2a + (1 +- a t) L -+ y sin 2a - x
        common = -2.0 * (x - L) * math.sin(a) ** 2
        shift = a * t * L
        tilt = y * math.sin(2.0 * a)
        up = common + shift - tilt
        dn = common - shift + tilt
    return k * up + half, k * dn - half


def _check_extent(wave, y):
    if wave.region is None:
        return
    if np.any(np.abs(y) > wave.region.y_extent):
        raise DomainError(
            f"point outside modelled extent |y| <= {wave.region.y_extent:g} m")


def evaluate(wave: PiecewiseSpinorWave, x, y):
    """Spinor (psi_up, psi_dn) at (x, y); accepts scalars or arrays."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    _check_extent(wave, y)
    zone = zone_index(wave, x, y)
    x, y = np.broadcast_arrays(x, y)
    p_up = np.empty(x.shape)
    p_dn = np.empty(x.shape)
    for z in np.unique(zone):
        mask = zone == z
        p_up[mask], p_dn[mask] = _relative_phases(wave, int(z), x[mask], y[mask])
    carrier = _AMP * np.exp(1j * wave.k * x)
    up = carrier * np.exp(1j * p_up)
    dn = carrier * np.exp(1j * p_dn)
    if up.ndim == 0:
        return complex(up), complex(dn)
    return up, dn


def polarization_phase(spinor):
    """arg(psi_up) - arg(psi_dn), wrapped into (-pi, pi]."""
    up, dn = (np.asarray(s, dtype=complex) for s in spinor)
    if np.any(up == 0) or np.any(dn == 0):
        raise UndefinedPhaseError("spinor component is zero; relative phase undefined")
    phase = np.angle(up) - np.angle(dn)
    phase = np.where(phase > np.pi, phase - 2.0 * np.pi, phase)
    phase = np.where(phase <= -np.pi, phase + 2.0 * np.pi, phase)
    if phase.ndim == 0:
        return float(phase)
    return phase


def phase_along_path(wave: PiecewiseSpinorWave, xs, ys) -> np.ndarray:
    """Polarization phase along an ordered path, unwrapped for continuity."""
    return np.unwrap(polarization_phase(evaluate(wave, xs, ys)))


def triangle_rotation(k: float, alpha: float, L: float, theta: float, y) -> float:
    """Polarization rotation behind the triangle at height ``y``.

    2 k alpha L tan(theta) is the Larmor rotation along the base; -4 k alpha y
    is the zero-field precession from the transverse splitting.
    """
    check_theta(theta)
    return 2.0 * k * alpha * (L * math.tan(theta) - 2.0 * np.asarray(y, dtype=float))


def boundary_residual(wave: PiecewiseSpinorWave, samples: int = 64) -> float:
    """Largest relative mismatch of either component across either boundary.

    Both neighbouring zone solutions are evaluated on ``samples`` points of
    the entry side and of the exit side of the triangle. The carrier is the
    same on both sides of a boundary, so only relative phases are compared:
    |exp(i p_a) - exp(i p_b)| = 2 |sin((p_a - p_b) / 2)|.
    """
    if samples < 2:
        raise DomainError("samples must be >= 2")
    if wave.region is None or wave.alpha == 0.0:
        return 0.0
    L = wave.region.L
    t = math.tan(wave.region.theta)
    worst = 0.0
    x_in = np.linspace(0.0, 0.5 * L, samples)
    x_out = np.linspace(0.5 * L, L, samples)
    for (za, zb), xs, ys in (((0, 1), x_in, x_in * t), ((1, 2), x_out, (L - x_out) * t)):
        a_up, a_dn = _relative_phases(wave, za, xs, ys)
        b_up, b_dn = _relative_phases(wave, zb, xs, ys)
        for pa, pb in ((a_up, b_up), (a_dn, b_dn)):
            worst = max(worst, float(np.max(2.0 * np.abs(np.sin(0.5 * (pa - pb))))))
    return worst


def exit_splitting_angle(wave: PiecewiseSpinorWave) -> float:
    """Angle between the spin-up and spin-down propagation directions behind the region."""
    up, dn = wave.zones["after"]
    return math.atan2(dn.kvec[1], dn.kvec[0]) - math.atan2(up.kvec[1], up.kvec[0])


def splitting_term_negligible(region: TriangleRegion,
                              coherence_length: float = DEFAULT_COHERENCE_LENGTH) -> bool:
    """True when the modelled height range fits inside one coherence length.

    Within a wave packet of transverse coherence ``coherence_length`` the
    -4 k alpha y term varies too little to matter.
    """
    return 2.0 * region.y_extent <= coherence_length


def sample_grid(wave: PiecewiseSpinorWave, xs, ys):
    """Evaluate on the grid xs x ys. Rows ordered with x outer, y inner."""
    X, Y = np.meshgrid(np.asarray(xs, float), np.asarray(ys, float), indexing="ij")
    X, Y = X.ravel(), Y.ravel()
    up, dn = evaluate(wave, X, Y)
    return X, Y, np.atleast_1d(up), np.atleast_1d(dn), np.atleast_1d(polarization_phase((up, dn)))

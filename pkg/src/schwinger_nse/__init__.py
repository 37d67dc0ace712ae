"""Electric-field (Schwinger term) effects on neutron spin in spin-echo optics."""

from .constants import CONSTANTS, NeutronBeam, PhysicalConstants, neutron_velocity, neutron_wavenumber
from .errors import (
    DomainError,
    GeometryError,
    MaterialError,
    MaterialParseError,
    ModelValidityError,
    UndefinedPhaseError,
)

__version__ = "0.1.0"

__all__ = [
    "CONSTANTS",
    "NeutronBeam",
    "PhysicalConstants",
    "neutron_velocity",
    "neutron_wavenumber",
    "DomainError",
    "GeometryError",
    "MaterialError",
    "MaterialParseError",
    "ModelValidityError",
    "UndefinedPhaseError",
]

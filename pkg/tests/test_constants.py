import math

import pytest
from hypothesis import given, strategies as st

from schwinger_nse.constants import (
    CONSTANTS,
    GAMMA_LITERAL,
    NeutronBeam,
    PhysicalConstants,
    neutron_velocity,
    neutron_wavenumber,
)
from schwinger_nse.errors import DomainError

wavelengths = st.floats(min_value=1e-11, max_value=1e-8, allow_nan=False)


def test_vacuum_constants_consistent():
    assert abs(CONSTANTS.eps0 * CONSTANTS.mu0 * CONSTANTS.c**2 - 1) < 1e-9
    assert CONSTANTS.eps0 == pytest.approx(8.8541878128e-12, rel=1e-10)


def test_hbar_is_derived():
    assert CONSTANTS.hbar == CONSTANTS.h / (2 * math.pi)


def test_neutron_moment_in_neV_per_T():
    assert CONSTANTS.mu_n_neV_per_T == pytest.approx(-60.308, rel=1e-3)
    assert CONSTANTS.rotation_sign == -1


def test_gamma_conventions():
    assert CONSTANTS.gamma_L == pytest.approx(2 * abs(CONSTANTS.mu_n) / CONSTANTS.hbar, rel=1e-15)
    assert CONSTANTS.gamma_L == pytest.approx(1.832e8, rel=1e-3)
    literal = PhysicalConstants(gamma_convention=GAMMA_LITERAL)
    assert literal.gamma_L == pytest.approx(CONSTANTS.gamma_L / 2, rel=1e-15)
    with pytest.raises(ValueError):
        PhysicalConstants(gamma_convention="half")


def test_velocity_examples():
    assert neutron_velocity(2.5e-10) == pytest.approx(1.5823e3, rel=1e-3)
    lam = CONSTANTS.h / (CONSTANTS.m_n * 1.0)
    assert neutron_velocity(lam) == pytest.approx(1.0, rel=1e-15)
    assert neutron_velocity(5.0e-10) == neutron_velocity(2.5e-10) / 2


def test_wavenumber_examples():
    assert neutron_wavenumber(2.5e-10) == pytest.approx(2.5133e10, rel=1e-4)
    assert neutron_wavenumber(2 * math.pi) == 1.0


@pytest.mark.parametrize("bad", [0.0, -1e-10, float("nan"), float("inf")])
def test_bad_wavelength(bad):
    with pytest.raises(DomainError):
        neutron_velocity(bad)
    with pytest.raises(DomainError):
        neutron_wavenumber(bad)


@given(wavelengths)
def test_wavenumber_times_wavelength(lam):
    assert neutron_wavenumber(lam) * lam == pytest.approx(2 * math.pi, rel=1e-15)


@given(wavelengths)
def test_momentum_velocity_relation(lam):
    k = neutron_wavenumber(lam)
    assert CONSTANTS.hbar * k / CONSTANTS.m_n == pytest.approx(neutron_velocity(lam), rel=1e-12)


def test_beam_derives_kinematics():
    beam = NeutronBeam(2.5e-10, phi0=0.3)
    assert beam.k == neutron_wavenumber(2.5e-10)
    assert beam.v == neutron_velocity(2.5e-10)
    assert NeutronBeam.from_wavenumber(beam.k).wavelength == pytest.approx(2.5e-10, rel=1e-15)


def test_beam_rejects_relativistic_speed():
    with pytest.raises(DomainError):
        NeutronBeam(1e-13)


def test_constants_are_immutable():
    with pytest.raises(AttributeError):
        CONSTANTS.c = 3e8

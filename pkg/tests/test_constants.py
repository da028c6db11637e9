"""Tests for the physical-constants layer.

The derived Planck-scale values below were frozen from an independent
arithmetic oracle (plain python floats, no package imports) and are
asserted here to full double precision.
"""

import dataclasses
import math

import pytest

from holonoise import CONSTANTS, PhysicalConstants, codata_constants

# Oracle values: sqrt computed with python's math module directly from the
# CODATA 2018 inputs c=299792458, hbar=1.054571817e-34, G=6.67430e-11.
T_PLANCK = 5.391246446661944e-44
L_PLANCK = 1.61625502392855e-35
OMEGA_PLANCK = 1.8548586303621166e43
M_PLANCK = 2.176434342051127e-8


def test_base_constants_are_codata_2018():
    assert CONSTANTS.c == 299_792_458.0
    assert CONSTANTS.hbar == 1.054_571_817e-34
    assert CONSTANTS.G == 6.674_30e-11


def test_planck_time_matches_oracle():
    assert CONSTANTS.t_P == pytest.approx(T_PLANCK, rel=1e-15)


def test_planck_length_matches_oracle():
    assert CONSTANTS.l_P == pytest.approx(L_PLANCK, rel=1e-15)


def test_planck_frequency_matches_oracle():
    assert CONSTANTS.omega_P == pytest.approx(OMEGA_PLANCK, rel=1e-15)


def test_planck_mass_matches_oracle():
    assert CONSTANTS.m_P == pytest.approx(M_PLANCK, rel=1e-15)


def test_planck_time_rounds_to_published_value():
    # 5.4e-44 s to two significant figures.
    assert CONSTANTS.t_P == pytest.approx(5.4e-44, rel=0.01)


def test_planck_frequency_rounds_to_published_value():
    # 1.85e43 rad/s to three significant figures.
    assert CONSTANTS.omega_P == pytest.approx(1.85e43, rel=0.01)


def test_identity_length_is_c_times_time():
    assert CONSTANTS.l_P == CONSTANTS.c * CONSTANTS.t_P


def test_identity_frequency_is_inverse_time():
    assert CONSTANTS.omega_P == 1.0 / CONSTANTS.t_P


def test_identity_defining_relation():
    # t_P^2 = hbar G / c^5 should hold to rounding.
    assert CONSTANTS.t_P**2 == pytest.approx(
        CONSTANTS.hbar * CONSTANTS.G / CONSTANTS.c**5, rel=1e-15
    )


def test_identity_mass_time_product():
    # m_P * t_P = hbar / c^2
    assert CONSTANTS.m_P * CONSTANTS.t_P == pytest.approx(
        CONSTANTS.hbar / CONSTANTS.c**2, rel=1e-12
    )


def test_codata_constants_returns_singleton_equal():
    fresh = codata_constants()
    assert fresh == CONSTANTS


def test_constants_dataclass_is_frozen():
    with pytest.raises(dataclasses.FrozenInstanceError):
        CONSTANTS.c = 1.0  # type: ignore[misc]


def test_as_dict_round_trip():
    d = CONSTANTS.as_dict()
    assert set(d) == {"c", "hbar", "G", "t_P", "l_P", "omega_P", "m_P"}
    rebuilt = PhysicalConstants(**d)
    assert rebuilt == CONSTANTS


def test_all_constants_positive_finite():
    for value in CONSTANTS.as_dict().values():
        assert math.isfinite(value)
        assert value > 0.0

"""Fundamental constants and the Planck units derived from them.

Inputs are CODATA 2018: ``c`` is exact by definition of the metre and
``hbar`` follows from the exact SI value of ``h``; ``G`` carries the usual
2e-5 relative uncertainty.  Everything downstream (golden numbers, synthesis
levels, detection thresholds) is pinned to this one set, fixed at import
time and never user-configurable, so results cannot drift between runs.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass

C_LIGHT = 299_792_458.0  # m / s, exact
HBAR = 1.054_571_817e-34  # J s, h / (2 pi) with h exact
G_NEWTON = 6.674_30e-11  # m^3 kg^-1 s^-2, CODATA 2018


@dataclass(frozen=True)
class PhysicalConstants:
    """The (c, hbar, G) triple plus the four Planck units it fixes."""

    c: float        # m / s
    hbar: float     # J s
    G: float        # m^3 kg^-1 s^-2
    t_P: float      # s,  sqrt(hbar G / c^5)
    l_P: float      # m,  c t_P
    omega_P: float  # Hz, 1 / t_P (ordinary frequency, not angular)
    m_P: float      # kg, sqrt(hbar c / G)

    def as_dict(self) -> dict[str, float]:
        return asdict(self)


def codata_constants() -> PhysicalConstants:
    """Derive the Planck units from (c, hbar, G).

    t_P = sqrt(hbar G / c^5); l_P = c t_P; omega_P = 1 / t_P;
    m_P = sqrt(hbar c / G), the dimensionally consistent Planck mass.
    """
    t_p = math.sqrt(HBAR * G_NEWTON / C_LIGHT**5)
    return PhysicalConstants(
        c=C_LIGHT,
        hbar=HBAR,
        G=G_NEWTON,
        t_P=t_p,
        l_P=C_LIGHT * t_p,
        omega_P=1.0 / t_p,
        m_P=math.sqrt(HBAR * C_LIGHT / G_NEWTON),
    )


#: Singleton used throughout the package.
CONSTANTS = codata_constants()

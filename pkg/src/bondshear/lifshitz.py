"""Nonretarded Hamaker constant from the two-term Lifshitz approximation.

For materials 1 and 2 interacting across medium 3::

    A = 3/4 kT (e1-e3)/(e1+e3) (e2-e3)/(e2+e3)
      + 3 h nu / (8 sqrt 2) (n1^2-n3^2)(n2^2-n3^2)
        / [ sqrt(n1^2+n3^2) sqrt(n2^2+n3^2) (sqrt(n1^2+n3^2) + sqrt(n2^2+n3^2)) ]

The first (zero-frequency) term is entropic and scales with temperature,
the second is the dispersive contribution and uses a single absorption
frequency for the whole system.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

from .materials import DEFAULT_ABSORPTION_FREQUENCY, MaterialOptics

#: 21 degC, the ambient temperature of the bonding measurements.
DEFAULT_TEMPERATURE = 294.15


@dataclass(frozen=True)
class PhysicalConstants:
    """Exact 2019 SI defining constants."""

    boltzmann: float = 1.380649e-23
    planck: float = 6.62607015e-34
    electronvolt: float = 1.602176634e-19


CONSTANTS = PhysicalConstants()


@dataclass(frozen=True)
class HamakerResult:
    total: float
    entropic_term: float
    dispersive_term: float
    temperature: float


def hamaker_constant(
    m1: MaterialOptics,
    m2: MaterialOptics,
    medium: MaterialOptics,
    temperature: float = DEFAULT_TEMPERATURE,
    nu_e: Optional[float] = None,
) -> HamakerResult:
    """Hamaker constant (J) of ``m1`` and ``m2`` across ``medium``.

    Parameters
    ----------
    m1, m2, medium : MaterialOptics
    temperature : float
        Kelvin, must be positive.
    nu_e : float, optional
        Absorption frequency in Hz for the dispersive term. Defaults to the
        shared catalogue value, independent of which materials are involved.

    Returns
    -------
    HamakerResult
        ``total`` is exactly ``entropic_term + dispersive_term``.
    """
    if not temperature > 0:
        raise ValueError(f"temperature must be positive, got {temperature!r} K")
    if nu_e is None:
        nu_e = DEFAULT_ABSORPTION_FREQUENCY
    if not nu_e > 0:
        raise ValueError(f"absorption frequency must be positive, got {nu_e!r} Hz")

    e1, e2, e3 = m1.static_permittivity, m2.static_permittivity, medium.static_permittivity
    # contrast products grouped first so swapping m1 and m2 is bit-exact
    entropic = 0.75 * CONSTANTS.boltzmann * temperature * (((e1 - e3) / (e1 + e3)) * ((e2 - e3) / (e2 + e3)))

    n1sq, n2sq, n3sq = m1.refractive_index**2, m2.refractive_index**2, medium.refractive_index**2
    r1 = math.sqrt(n1sq + n3sq)
    r2 = math.sqrt(n2sq + n3sq)
    prefactor = 3.0 * CONSTANTS.planck * nu_e / (8.0 * math.sqrt(2.0))
    dispersive = prefactor * ((n1sq - n3sq) * (n2sq - n3sq)) / (r1 * r2 * (r1 + r2))

    return HamakerResult(entropic + dispersive, entropic, dispersive, temperature)

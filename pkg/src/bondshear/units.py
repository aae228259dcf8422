"""Unit conversions between the CLI boundary (nm, MPa, eV, mJ/m^2) and SI.

The library core works in strict SI. Everything user-facing goes through
these helpers so there is exactly one place where scale factors live.
"""

NM = 1e-9
ANGSTROM = 1e-10
MPA = 1e6
GPA = 1e9
MJ_PER_M2 = 1e-3
ZEPTOJOULE = 1e-21

ELECTRONVOLT = 1.602176634e-19


def nm_to_m(value):
    # divide by the exactly representable 1e9 (1e-9 itself is inexact)
    return value / 1e9


def m_to_nm(value):
    return value * 1e9


def m_to_angstrom(value):
    return value / ANGSTROM


def pa_to_mpa(value):
    return value / MPA


def mpa_to_pa(value):
    return value * MPA


def j_per_m2_to_mj(value):
    return value / MJ_PER_M2


def mj_to_j_per_m2(value):
    return value * MJ_PER_M2


def ev_to_j(value):
    return value * ELECTRONVOLT

import math

import pytest
from hypothesis import given, strategies as st

from bondshear.lifshitz import CONSTANTS, DEFAULT_TEMPERATURE, hamaker_constant
from bondshear.materials import MaterialOptics, builtin_catalogue

CAT = builtin_catalogue()


def _reference_hamaker(e1, n1, e2, n2, e3, n3, T, nu):
    # written out term by term from scratch, independent of the library grouping
    kT = 1.380649e-23 * T
    zero = 0.75 * kT * (e1 - e3) * (e2 - e3) / ((e1 + e3) * (e2 + e3))
    a, b = n1 * n1 + n3 * n3, n2 * n2 + n3 * n3
    disp = 3 * 6.62607015e-34 * nu * (n1 * n1 - n3 * n3) * (n2 * n2 - n3 * n3)
    disp /= 8 * 2**0.5 * a**0.5 * b**0.5 * (a**0.5 + b**0.5)
    return zero + disp


@pytest.mark.parametrize(
    "medium, target, tol",
    [("vacuum", 130e-21, 0.20), ("water", 28e-21, 0.25), ("ipa", 16e-21, 0.30)],
)
def test_reported_values(medium, target, tol):
    res = hamaker_constant(CAT["diamond"], CAT["fused_silica"], CAT[medium])
    assert res.total == pytest.approx(target, rel=tol)


@pytest.mark.parametrize("medium", ["vacuum", "water", "ipa"])
def test_matches_independent_formula(medium):
    d, s, m = CAT["diamond"], CAT["fused_silica"], CAT[medium]
    ref = _reference_hamaker(
        d.static_permittivity, d.refractive_index, s.static_permittivity, s.refractive_index,
        m.static_permittivity, m.refractive_index, DEFAULT_TEMPERATURE, 3.0e15,
    )
    assert hamaker_constant(d, s, m).total == pytest.approx(ref, rel=1e-12)


def test_vacuum_value_by_hand():
    # dispersive: 3*h*3e15/(8*sqrt2) * (5.76-1)(2.1025-1) / (sqrt(6.76) sqrt(3.1025) (sqrt(6.76)+sqrt(3.1025)))
    pref = 3 * 6.62607015e-34 * 3e15 / (8 * math.sqrt(2))
    disp = pref * 4.76 * 1.1025 / (2.6 * math.sqrt(3.1025) * (2.6 + math.sqrt(3.1025)))
    ent = 0.75 * 1.380649e-23 * 294.15 * (4.7 / 6.7) * (2.8 / 4.8)
    res = hamaker_constant(CAT["diamond"], CAT["fused_silica"], CAT["vacuum"])
    assert res.dispersive_term == pytest.approx(disp, rel=1e-12)
    assert res.entropic_term == pytest.approx(ent, rel=1e-12)


def test_total_is_sum_exactly():
    res = hamaker_constant(CAT["diamond"], CAT["fused_silica"], CAT["water"])
    assert res.total == res.entropic_term + res.dispersive_term


def test_identical_materials_zero():
    for m in CAT.values():
        res = hamaker_constant(m, m, m, 300.0)
        assert res.total == 0.0


def test_temperature_domain():
    with pytest.raises(ValueError):
        hamaker_constant(CAT["diamond"], CAT["diamond"], CAT["vacuum"], 0.0)
    with pytest.raises(ValueError):
        hamaker_constant(CAT["diamond"], CAT["diamond"], CAT["vacuum"], -5.0)


def test_constants_are_si_exact():
    assert CONSTANTS.boltzmann == 1.380649e-23
    assert CONSTANTS.planck == 6.62607015e-34
    assert CONSTANTS.electronvolt == 1.602176634e-19


def test_medium_ordering():
    a = [hamaker_constant(CAT["diamond"], CAT["fused_silica"], CAT[m]).total for m in ("vacuum", "water", "ipa")]
    assert a[0] > a[1] > a[2] > 0


optics = st.builds(
    lambda name, e, n: MaterialOptics(name, e, n),
    st.just("m"),
    st.floats(1.0, 100.0),
    st.floats(1.0, 4.0),
)


@given(optics, optics, optics, st.floats(1.0, 2000.0))
def test_symmetry(m1, m2, med, T):
    assert hamaker_constant(m1, m2, med, T) == hamaker_constant(m2, m1, med, T)


@given(optics, optics, st.floats(1.0, 2000.0))
def test_zero_contrast(m1, m2, T):
    assert hamaker_constant(m1, m2, m1, T).total == 0.0


@given(optics, optics, optics, st.floats(1.0, 1000.0))
def test_temperature_scaling(m1, m2, med, T):
    a = hamaker_constant(m1, m2, med, T)
    b = hamaker_constant(m1, m2, med, 2 * T)
    assert b.entropic_term == pytest.approx(2 * a.entropic_term, rel=1e-14, abs=1e-300)
    assert b.dispersive_term == a.dispersive_term


@given(optics, optics, optics)
def test_sign_rule(m1, m2, med):
    res = hamaker_constant(m1, m2, med)
    n1, n2, n3 = m1.refractive_index, m2.refractive_index, med.refractive_index
    if n1 > n3 and n2 > n3:
        assert res.dispersive_term >= 0
    elif (n1 > n3) != (n2 > n3) and n1 != n3 and n2 != n3:
        assert res.dispersive_term <= 0
    if m1.static_permittivity > med.static_permittivity and m2.static_permittivity > med.static_permittivity and n1 > n3 and n2 > n3:
        assert res.total > 0

from pathlib import Path

import pytest
from hypothesis import given, strategies as st

from bondshear.materials import (
    MATERIALS_ENV_VAR,
    Catalogue,
    MaterialOptics,
    MaterialValidationError,
    builtin_catalogue,
    default_catalogue,
    format_catalogue,
    load_catalogue,
    parse_materials,
)

EXAMPLE = Path(__file__).resolve().parents[1] / "src" / "bondshear" / "data" / "materials_example.txt"


def test_builtin_presets_pinned():
    cat = builtin_catalogue()
    expected = {
        "diamond": (5.7, 2.40),
        "fused_silica": (3.8, 1.45),
        "water": (80.0, 1.333),
        "ipa": (18.3, 1.377),
        "vacuum": (1.0, 1.0),
    }
    assert set(expected) <= set(cat)
    for name, (eps, n) in expected.items():
        m = cat[name]
        assert (m.static_permittivity, m.refractive_index, m.absorption_frequency) == (eps, n, 3.0e15)


def test_air_is_vacuum():
    cat = builtin_catalogue()
    assert "air" in cat
    assert cat["air"] == cat["vacuum"]


def test_unknown_material_names_itself():
    with pytest.raises(KeyError, match="unobtainium"):
        builtin_catalogue()["unobtainium"]


@pytest.mark.parametrize(
    "kwargs, field",
    [
        (dict(static_permittivity=0.9), "static_permittivity"),
        (dict(refractive_index=0.5), "refractive_index"),
        (dict(absorption_frequency=0.0), "absorption_frequency"),
        (dict(refractive_index=float("nan")), "refractive_index"),
    ],
)
def test_invariants_rejected(kwargs, field):
    base = dict(name="x", static_permittivity=2.0, refractive_index=1.2, absorption_frequency=3e15)
    base.update(kwargs)
    with pytest.raises(MaterialValidationError) as info:
        MaterialOptics(**base)
    assert info.value.field_name == field


def test_empty_file_gives_builtins(tmp_path):
    path = tmp_path / "empty.txt"
    path.write_text("")
    cat = load_catalogue(path)
    assert dict(cat) == dict(builtin_catalogue())
    assert cat.source_path == path


def test_file_entries_merge_and_shadow(tmp_path):
    path = tmp_path / "m.txt"
    path.write_text("sapphire 9.4 1.76 3.0e15\ndiamond 5.5 2.42 3.1e15  # override\n")
    cat = load_catalogue(path)
    assert cat["sapphire"].static_permittivity == 9.4
    assert cat["diamond"].refractive_index == 2.42
    assert cat["water"] == builtin_catalogue()["water"]


def test_invalid_override_names_field_and_line(tmp_path):
    path = tmp_path / "bad.txt"
    path.write_text("# header\ndiamond 5.7 0.5 3e15\n")
    with pytest.raises(MaterialValidationError) as info:
        load_catalogue(path)
    assert info.value.line == 2
    assert info.value.field_name == "refractive_index"
    assert "refractive_index" in str(info.value) and "bad.txt:2:" in str(info.value)


def test_non_numeric_field(tmp_path):
    path = tmp_path / "bad.txt"
    path.write_text("glass 4.0 abc 3e15\n")
    with pytest.raises(MaterialValidationError, match="refractive_index"):
        load_catalogue(path)


def test_duplicate_and_wrong_arity():
    with pytest.raises(MaterialValidationError, match="duplicate"):
        parse_materials("a 2 1.5 3e15\na 2 1.5 3e15\n")
    with pytest.raises(MaterialValidationError, match="expected 4 fields"):
        parse_materials("a 2 1.5\n")


def test_missing_file(tmp_path):
    with pytest.raises(FileNotFoundError):
        load_catalogue(tmp_path / "nope.txt")


def test_example_file_loads():
    cat = load_catalogue(EXAMPLE)
    assert {"sapphire", "ethanol"} <= set(cat)


def test_env_var(tmp_path, monkeypatch):
    path = tmp_path / "env.txt"
    path.write_text("mica 5.4 1.60 3.0e15\n")
    monkeypatch.setenv(MATERIALS_ENV_VAR, str(path))
    assert "mica" in default_catalogue()
    monkeypatch.delenv(MATERIALS_ENV_VAR)
    assert "mica" not in default_catalogue()


def test_catalogue_is_immutable():
    cat = builtin_catalogue()
    with pytest.raises(TypeError):
        cat.entries["x"] = cat["vacuum"]


finite = st.floats(min_value=1.0, max_value=1e3, allow_nan=False)


@given(
    st.lists(
        st.tuples(st.from_regex(r"[a-z][a-z0-9_]{0,8}", fullmatch=True), finite, finite, st.floats(1e12, 1e17)),
        max_size=6,
        unique_by=lambda t: t[0],
    )
)
def test_serialize_round_trip(records):
    cat = builtin_catalogue().merged(MaterialOptics(*r) for r in records)
    again = Catalogue({m.name: m for m in parse_materials(format_catalogue(cat))})
    assert dict(again) == dict(cat)

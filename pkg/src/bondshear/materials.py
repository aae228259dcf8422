"""Optical property catalogue for materials and intervening media.

Records hold the three inputs the nonretarded Hamaker constant needs:
static permittivity, visible refractive index and principal UV absorption
frequency. Built-in presets cover diamond, fused silica, water, isopropyl
alcohol and vacuum (air is treated as vacuum).

Material file format
--------------------
Plain text, one material per line, whitespace separated::

    # name        permittivity  refractive_index  absorption_frequency_hz
    sapphire      9.4           1.77              3.0e15

Blank lines and ``#`` comments are ignored. Entries loaded from a file
shadow built-ins of the same name.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass
from pathlib import Path
from types import MappingProxyType
from typing import Iterator, Mapping, Optional

#: Shared principal UV absorption frequency (Hz) used for every preset.
DEFAULT_ABSORPTION_FREQUENCY = 3.0e15

#: Environment variable naming a default material file for the CLI.
MATERIALS_ENV_VAR = "BONDSHEAR_MATERIALS"

FILE_COLUMNS = ("name", "permittivity", "refractive_index", "absorption_frequency_hz")


class MaterialValidationError(ValueError):
    """A material record violates one of the catalogue invariants."""

    def __init__(self, message, field_name=None, line=None, path=None):
        self.field_name = field_name
        self.line = line
        self.path = path
        where = ""
        if path is not None and line is not None:
            where = f"{path}:{line}: "
        elif line is not None:
            where = f"line {line}: "
        super().__init__(where + message)


@dataclass(frozen=True)
class MaterialOptics:
    """Optical constants of one material.

    Parameters
    ----------
    name : str
        Catalogue key.
    static_permittivity : float
        Zero-frequency dielectric constant, dimensionless, >= 1.
    refractive_index : float
        Visible-range refractive index, >= 1.
    absorption_frequency : float
        Principal electronic absorption frequency in Hz, > 0.
    """

    name: str
    static_permittivity: float
    refractive_index: float
    absorption_frequency: float = DEFAULT_ABSORPTION_FREQUENCY

    def __post_init__(self):
        if not self.name or any(ch.isspace() for ch in self.name):
            raise MaterialValidationError(f"invalid material name {self.name!r}", "name")
        checks = (
            ("static_permittivity", self.static_permittivity, lambda v: v >= 1.0, ">= 1"),
            ("refractive_index", self.refractive_index, lambda v: v >= 1.0, ">= 1"),
            ("absorption_frequency", self.absorption_frequency, lambda v: v > 0.0, "> 0"),
        )
        for field_name, value, ok, rule in checks:
            if not isinstance(value, (int, float)) or not math.isfinite(value) or not ok(value):
                raise MaterialValidationError(
                    f"{self.name}: {field_name} must be finite and {rule}, got {value!r}",
                    field_name,
                )


_BUILTINS = (
    MaterialOptics("diamond", 5.7, 2.40),
    MaterialOptics("fused_silica", 3.8, 1.45),
    MaterialOptics("water", 80.0, 1.333),
    MaterialOptics("ipa", 18.3, 1.377),
    MaterialOptics("vacuum", 1.0, 1.0),
)

# "air" is accepted as a synonym of vacuum.
_ALIASES = {"air": "vacuum"}


@dataclass(frozen=True)
class Catalogue(Mapping):
    """Immutable name -> MaterialOptics mapping."""

    entries: Mapping[str, MaterialOptics]
    source_path: Optional[Path] = None

    def __post_init__(self):
        object.__setattr__(self, "entries", MappingProxyType(dict(self.entries)))

    def __getitem__(self, name: str) -> MaterialOptics:
        key = _ALIASES.get(name, name)
        try:
            return self.entries[key]
        except KeyError:
            raise KeyError(f"unknown material {name!r}; known: {', '.join(sorted(self.entries))}") from None

    def __contains__(self, name) -> bool:
        return _ALIASES.get(name, name) in self.entries

    def __iter__(self) -> Iterator[str]:
        return iter(self.entries)

    def __len__(self) -> int:
        return len(self.entries)

    def merged(self, extra, source_path=None) -> "Catalogue":
        entries = dict(self.entries)
        for material in extra:
            entries[material.name] = material
        return Catalogue(entries, source_path)


def builtin_catalogue() -> Catalogue:
    """Catalogue containing only the built-in presets."""
    return Catalogue({m.name: m for m in _BUILTINS})


def _parse_float(token, field_name, line_no, path):
    try:
        return float(token)
    except ValueError:
        raise MaterialValidationError(
            f"{field_name} is not numeric: {token!r}", field_name, line_no, path
        ) from None


def parse_materials(text: str, path=None) -> list[MaterialOptics]:
    materials = []
    seen = {}
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tokens = line.split()
        if len(tokens) != len(FILE_COLUMNS):
            raise MaterialValidationError(
                f"expected {len(FILE_COLUMNS)} fields ({' '.join(FILE_COLUMNS)}), got {len(tokens)}",
                None,
                line_no,
                path,
            )
        name = tokens[0]
        if name in seen:
            raise MaterialValidationError(
                f"duplicate material {name!r} (first defined on line {seen[name]})", "name", line_no, path
            )
        seen[name] = line_no
        values = [_parse_float(tok, col, line_no, path) for tok, col in zip(tokens[1:], FILE_COLUMNS[1:])]
        try:
            materials.append(MaterialOptics(name, *values))
        except MaterialValidationError as exc:
            raise MaterialValidationError(
                str(exc), exc.field_name, line_no, path
            ) from None
    return materials


def load_catalogue(path) -> Catalogue:
    """Load a material file and merge it over the built-in presets.

    Raises
    ------
    FileNotFoundError
        If ``path`` does not exist.
    MaterialValidationError
        On a malformed or invariant-violating record; the message names the
        field and line.
    """
    path = Path(path)
    text = path.read_text(encoding="utf-8")
    return builtin_catalogue().merged(parse_materials(text, path), source_path=path)


def default_catalogue() -> Catalogue:
    """Built-ins, merged with the file named by ``$BONDSHEAR_MATERIALS`` if set."""
    env_path = os.environ.get(MATERIALS_ENV_VAR)
    if env_path:
        return load_catalogue(env_path)
    return builtin_catalogue()


def format_catalogue(catalogue) -> str:
    """Serialize to the material file format; reloading gives equal records."""
    lines = ["# " + "  ".join(FILE_COLUMNS)]
    for name in sorted(catalogue):
        m = catalogue[name]
        lines.append(
            f"{m.name}  {m.static_permittivity!r}  {m.refractive_index!r}  {m.absorption_frequency!r}"
        )
    return "\n".join(lines) + "\n"

"""Shear stress from interface energies.

Two mechanisms are modelled:

* van der Waals: the interface energy swings by +/- sigma_w while the top
  surface is dragged a distance delta_x (half a correlation length), so
  ``tau = 2 sigma_w / delta_x``.
* molecular bonding: breaking a bonded layer over one bond length,
  ``tau = (W_bonded - W_0) / bond_length``, where ``W_0`` is the
  hydrogen-bonded energy already present before bonding.

Also provides the shear-vs-roughness sweep and a comparison against
published bonding results.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, NamedTuple, Optional, Sequence

from . import reference
from .interface_model import (
    EnergyMoments,
    SeparationPolicy,
    energy_moments,
    separation_from_roughness,
)
from .units import ELECTRONVOLT


class BondSpec(NamedTuple):
    """Surface bond population: density (1/m^2), energy (eV), length (m)."""

    name: str
    areal_density: float
    dissociation_energy: float
    bond_length: float

    def validate(self):
        for label in ("areal_density", "dissociation_energy", "bond_length"):
            value = getattr(self, label)
            if not (math.isfinite(value) and value > 0):
                raise ValueError(f"{self.name}: {label} must be positive, got {value!r}")
        return self


# Hydroxyl populations and hydrogen-bond energies before annealing.
ISOLATED_OH = BondSpec("isolated_OH", 1.4e18, 0.43, 0.096e-9)
ASSOCIATED_OH = BondSpec("associated_OH", 3.2e18, 0.26, 0.096e-9)
# Bonded interface: all hydroxyls condensed into bridges.
TOTAL_BOND_DENSITY = ISOLATED_OH.areal_density + ASSOCIATED_OH.areal_density
SI_O = BondSpec("Si-O", TOTAL_BOND_DENSITY, 4.7, 0.163e-9)
C_O = BondSpec("C-O", TOTAL_BOND_DENSITY, 3.7, 0.143e-9)
BOND_PRESETS = {b.name: b for b in (ISOLATED_OH, ASSOCIATED_OH, SI_O, C_O)}


def parse_bonds(text: str) -> dict:
    """Bond table: ``name density_per_m2 energy_ev length_nm`` per line."""
    bonds = {}
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tokens = line.split()
        if len(tokens) != 4:
            raise ValueError(f"line {line_no}: expected 'name density_per_m2 energy_ev length_nm'")
        try:
            density, energy, length_nm = (float(t) for t in tokens[1:])
        except ValueError:
            raise ValueError(f"line {line_no}: non-numeric field") from None
        try:
            bonds[tokens[0]] = BondSpec(tokens[0], density, energy, length_nm * 1e-9).validate()
        except ValueError as exc:
            raise ValueError(f"line {line_no}: {exc}") from None
    return bonds


@dataclass(frozen=True)
class ShearPrediction:
    shear_stress: float
    mechanism: str
    rest_energy: float
    delta_x: float
    displaced_energy: Optional[float] = None
    inputs_digest: dict = field(default_factory=dict)
    label: str = ""

    def __post_init__(self):
        if self.mechanism not in ("vdW", "molecular"):
            raise ValueError(f"unknown mechanism {self.mechanism!r}")
        if not self.shear_stress >= 0:
            raise ValueError("shear stress must be non-negative")


def vdw_shear(moments: EnergyMoments, delta_x: float) -> ShearPrediction:
    """Adhesion-controlled shear for a peak-to-peak energy change of 2 sigma_w.

    Parameters
    ----------
    moments : EnergyMoments
        Mean and spread of the interface energy.
    delta_x : float
        Drag distance in m, half the surface correlation length.
    """
    if not delta_x > 0:
        raise ValueError(f"delta_x must be positive, got {delta_x!r}")
    delta_w = 2.0 * moments.std_energy
    return ShearPrediction(
        shear_stress=delta_w / delta_x,
        mechanism="vdW",
        rest_energy=moments.mean_energy,
        delta_x=delta_x,
        inputs_digest={
            "hamaker": moments.hamaker_used,
            "mean_energy": moments.mean_energy,
            "std_energy": moments.std_energy,
        },
        label="vdW",
    )


def hydrogen_bond_surface_energy(isolated: BondSpec, associated: BondSpec) -> float:
    """Pre-bonding surface energy (J/m^2) from isolated and associated hydroxyls.

    Isolated groups count twice: both faces carry a population.
    """
    ev_per_m2 = 2.0 * isolated.areal_density * isolated.dissociation_energy + (
        associated.areal_density * associated.dissociation_energy
    )
    return ev_per_m2 * ELECTRONVOLT


def molecular_surface_energy(total_density: float, bond_energy: float) -> float:
    """Bonded surface energy (J/m^2) from bond density (1/m^2) and energy (eV)."""
    if total_density < 0 or bond_energy < 0:
        raise ValueError("density and bond energy must be non-negative")
    return total_density * bond_energy * ELECTRONVOLT


def molecular_shear(bonded_energy: float, baseline_energy: float, bond_length: float, label="molecular") -> ShearPrediction:
    """Shear needed to break a bonded layer over one bond length.

    The hydrogen-bond energy present before bonding is subtracted first.
    """
    if not bond_length > 0:
        raise ValueError(f"bond_length must be positive, got {bond_length!r}")
    if bonded_energy < baseline_energy:
        raise ValueError(
            f"bonded energy {bonded_energy:.4g} J/m^2 is below the baseline {baseline_energy:.4g} J/m^2"
        )
    return ShearPrediction(
        shear_stress=(bonded_energy - baseline_energy) / bond_length,
        mechanism="molecular",
        rest_energy=bonded_energy,
        displaced_energy=baseline_energy,
        delta_x=bond_length,
        inputs_digest={"bonded_energy": bonded_energy, "baseline_energy": baseline_energy, "bond_length": bond_length},
        label=label,
    )


def molecular_bounds(bonds: Sequence[BondSpec] = (SI_O, C_O)) -> list[ShearPrediction]:
    """Molecular shear predictions for each bond type, with the default W_0."""
    w0 = hydrogen_bond_surface_energy(ISOLATED_OH, ASSOCIATED_OH)
    out = []
    for bond in bonds:
        bonded = molecular_surface_energy(bond.areal_density, bond.dissociation_energy)
        out.append(molecular_shear(bonded, w0, bond.bond_length, label=bond.name))
    return out


# ------------------------------------------------------------ roughness sweep

class CurvePoint(NamedTuple):
    rms_top: float
    shear_stress: float
    error: Optional[str] = None


def shear_vs_roughness_curve(
    hamaker: float,
    rms_bottom: float,
    rms_top_values: Iterable[float],
    delta_x: float = reference.DELTA_X,
    d_min: float = reference.D_MIN_HYDROXYL,
    policy: Optional[SeparationPolicy] = None,
) -> list[CurvePoint]:
    """vdW shear as the top-surface roughness varies, bottom fixed.

    Points come back sorted by ``rms_top``. A point whose inputs are
    degenerate keeps its slot with ``shear_stress = nan`` and an error
    message.
    """
    values = sorted(float(v) for v in rms_top_values)
    if not values:
        raise ValueError("rms_top range is empty")
    if not delta_x > 0:
        raise ValueError(f"delta_x must be positive, got {delta_x!r}")
    points = []
    for rms_top in values:
        try:
            dist = separation_from_roughness(rms_top, rms_bottom, d_min, policy)
            tau = vdw_shear(energy_moments(hamaker, dist), delta_x).shear_stress
        except ValueError as exc:
            points.append(CurvePoint(rms_top, math.nan, str(exc)))
        else:
            points.append(CurvePoint(rms_top, tau))
    return points


# ---------------------------------------------------------- literature rows

class ComparisonRow(NamedTuple):
    prediction: str
    mechanism: str
    predicted_mpa: float
    source: str
    condition: str
    reference_mpa: float
    ratio: float


def literature_comparison(predictions: Sequence[ShearPrediction]) -> list[ComparisonRow]:
    """One row per (prediction, published value) pair; pure reporting."""
    rows = []
    references = reference.LITERATURE_SHEAR + reference.MEASURED_DRY_SHEAR + reference.MEASURED_IPA_SHEAR
    for pred in predictions:
        mpa = pred.shear_stress / 1e6
        for entry in references:
            ratio = mpa / entry.shear_mpa if entry.shear_mpa > 0 else math.inf
            rows.append(
                ComparisonRow(pred.label or pred.mechanism, pred.mechanism, mpa, entry.source, entry.condition, entry.shear_mpa, ratio)
            )
    return rows


class ComparisonSummary(NamedTuple):
    prediction: str
    predicted_mpa: float
    inside_measured_dry_range: bool
    factor_over_literature: float


def comparison_summary(prediction: ShearPrediction) -> ComparisonSummary:
    """Whether a prediction sits inside the measured dry range, and by how
    much it exceeds the strongest published result."""
    mpa = prediction.shear_stress / 1e6
    dry = [e.shear_mpa for e in reference.MEASURED_DRY_SHEAR]
    strongest = max(e.shear_mpa for e in reference.LITERATURE_SHEAR)
    return ComparisonSummary(
        prediction.label or prediction.mechanism,
        mpa,
        min(dry) <= mpa <= max(dry),
        mpa / strongest,
    )


COMPARISON_HEADER = ("prediction", "mechanism", "predicted_MPa", "source", "condition", "reference_MPa", "ratio")


def format_comparison(rows: Sequence[ComparisonRow]) -> str:
    """Tab-separated report; header only when there are no rows."""
    lines = ["\t".join(COMPARISON_HEADER)]
    for r in rows:
        ratio = "inf" if math.isinf(r.ratio) else f"{r.ratio:.3g}"
        lines.append(
            "\t".join([r.prediction, r.mechanism, f"{r.predicted_mpa:.4g}", r.source, r.condition, f"{r.reference_mpa:g}", ratio])
        )
    return "\n".join(lines) + "\n"

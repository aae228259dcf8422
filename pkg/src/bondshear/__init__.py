"""Shear strength of direct-bonded surfaces from van der Waals and molecular
bonding energies, with surface metrology and a brute-force drag check."""

from .lifshitz import HamakerResult, hamaker_constant
from .materials import MaterialOptics, builtin_catalogue, default_catalogue, load_catalogue
from .interface_model import (
    EnergyMoments,
    SeparationDistribution,
    SeparationPolicy,
    calibrate,
    calibrated_policy,
    energy_moments,
    mean_separation,
    separation_from_roughness,
)
from .shear_model import ShearPrediction, molecular_bounds, shear_vs_roughness_curve, vdw_shear
from .surface_metrology import HeightMap, compute_stats, parse_height_map, synthesize_surface, write_height_map
from .drag_oracle import DragConfig, energy_landscape, oracle_shear

__version__ = "0.1.0"

"""Reported values for (100) diamond direct-bonded to fused silica.

These are measurement inputs (roughness, correlation length) and published
results used as regression targets and comparison rows. Nothing in the
model reads the comparison tables; they are reporting data only.
"""

from typing import NamedTuple

# Measured AFM roughness (m)
RMS_DIAMOND = 0.61e-9
RMS_SILICA = 0.37e-9

# Half the measured correlation length of the diamond scan (m)
DELTA_X = 0.54e-9
CORRELATION_LENGTH = 2 * DELTA_X

# Single hydroxyl group length used as the minimum gap (m)
D_MIN_HYDROXYL = 0.096e-9

# Si-O-C bond formation window (m)
BOND_WINDOW_STRICT = 2.5e-10
BOND_WINDOW_RELAXED = 10e-10

# Reported model outputs
HAMAKER_VACUUM = 130e-21
HAMAKER_WATER = 28e-21
HAMAKER_IPA = 16e-21
MEAN_SEPARATION = 4.8e-10
MEAN_ENERGY = 5.4e-3
STD_ENERGY = 10.8e-3
VDW_SHEAR = 40e6
OPERATING_BAND = (30e6, 45e6)

REST_SURFACE_ENERGY = 0.33
SI_O_SURFACE_ENERGY = 3.45
C_O_SURFACE_ENERGY = 2.74
SI_O_SHEAR = 19e9
C_O_SHEAR = 17e9


class LiteratureEntry(NamedTuple):
    source: str
    condition: str
    shear_mpa: float


# Diamond bonding literature (shear stress, MPa). The solder result has no
# reported value and is omitted.
LITERATURE_SHEAR = (
    LiteratureEntry("Matsumae", "(111) direct", 35.0),
    LiteratureEntry("Matsumae", "(100) direct", 0.0),
    LiteratureEntry("Matsumae", "(100) direct", 2.0),
    LiteratureEntry("Fukumoto", "(111) direct", 31.0),
    LiteratureEntry("Matsumae", "(111) direct", 9.0),
    LiteratureEntry("Miyatake", "(100) direct", 14.0),
    LiteratureEntry("Yushin", "poly fusion", 32.0),
)

# Measured (100) diamond on fused silica, by surface activation.
MEASURED_DRY_SHEAR = (
    LiteratureEntry("measured", "cleaned/deactivated, dry", 30.8),
    LiteratureEntry("measured", "UV ozone, dry", 34.3),
    LiteratureEntry("measured", "indirect plasma, dry", 45.1),
)
MEASURED_IPA_SHEAR = (
    LiteratureEntry("measured", "cleaned/deactivated, IPA", 18.0),
    LiteratureEntry("measured", "UV ozone, IPA", 17.7),
    LiteratureEntry("measured", "indirect plasma, IPA", 12.7),
)

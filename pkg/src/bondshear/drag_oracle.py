"""Brute-force drag of one rigid rough surface over another.

At every lateral offset the top surface is lowered until its closest point
sits ``nominal_gap`` above the bottom surface (the roughness has to clear
the opposing roughness, so the rigid body rises and falls as it moves). The
local gap field then feeds the flat-plate energy, averaged over the
overlap. Shear is read off the resulting energy-vs-offset landscape as the
largest energy change within a window of width ``delta_x``.

Periodic maps of equal size wrap around and are shifted with an exact
Fourier phase ramp, so sub-pixel steps are allowed. Non-periodic maps (AFM
scans) use only the valid overlap: the top must be narrower than the
bottom by at least ``max_offset``, and the bottom is linearly interpolated
at sub-pixel offsets.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from . import reference
from .interface_model import vdw_energy
from .surface_metrology import HeightMap, gaussian_filter_field


class DragConfigError(ValueError):
    """Inconsistent drag set-up (pitch mismatch, bad step, short span)."""


class InvariantViolation(RuntimeError):
    """A local gap went non-positive; results would be meaningless."""


@dataclass(frozen=True)
class DragConfig:
    """Drag parameters; all lengths in m.

    ``nominal_gap`` is the smallest local separation at every offset and
    must be at least ``d_min_clamp``.
    """

    lateral_step: float
    max_offset: float
    hamaker: float = reference.HAMAKER_VACUUM
    nominal_gap: float = reference.D_MIN_HYDROXYL
    d_min_clamp: float = reference.D_MIN_HYDROXYL
    periodic: bool = True

    def __post_init__(self):
        if not self.lateral_step > 0:
            raise DragConfigError("lateral_step must be positive")
        if not self.max_offset >= self.lateral_step:
            raise DragConfigError("max_offset must be at least one lateral step")
        if not self.d_min_clamp > 0:
            raise DragConfigError("d_min_clamp must be positive")
        if not self.nominal_gap >= self.d_min_clamp:
            raise DragConfigError("nominal_gap must be at least d_min_clamp")

    def offsets(self):
        n = int(math.floor(self.max_offset / self.lateral_step + 1e-9))
        return np.arange(n + 1) * self.lateral_step


@dataclass(frozen=True)
class EnergyLandscape:
    offsets: np.ndarray
    energies: np.ndarray
    rest_offset: float

    def __post_init__(self):
        if len(self.offsets) != len(self.energies):
            raise ValueError("offsets and energies differ in length")

    @property
    def rest_energy(self):
        return float(self.energies[int(np.argmax(np.abs(self.energies)))])

    def scaled(self, factor) -> "EnergyLandscape":
        return EnergyLandscape(self.offsets, self.energies * factor, self.rest_offset)


def _fourier_shift_x(heights, shift, pitch):
    nx = heights.shape[1]
    k = 2 * np.pi * np.fft.fftfreq(nx, d=pitch)
    ramp = np.exp(1j * k * shift)
    return np.fft.ifft(np.fft.fft(heights, axis=1) * ramp[None, :], axis=1).real


def _window_interp_x(heights, start, width):
    """Columns ``start .. start+width-1`` (fractional start) by linear interpolation."""
    i0 = int(math.floor(start))
    frac = start - i0
    left = heights[:, i0 : i0 + width]
    if frac == 0.0:
        return left
    right = heights[:, i0 + 1 : i0 + 1 + width]
    return left + frac * (right - left)


def _energy_at(top, bottom, offset, cfg, pitch):
    if cfg.periodic:
        relative = _fourier_shift_x(top, offset, pitch) - bottom
    else:
        relative = top - _window_interp_x(bottom, offset / pitch, top.shape[1])
    gap = cfg.nominal_gap + (relative - relative.min())
    gap = np.maximum(gap, cfg.d_min_clamp)
    if not np.all(gap > 0):
        raise InvariantViolation(f"non-positive local separation at offset {offset!r} m")
    return float(np.mean(vdw_energy(cfg.hamaker, gap)))


def energy_landscape(top: HeightMap, bottom: HeightMap, cfg: DragConfig, workers: int = 1) -> EnergyLandscape:
    """Area-averaged interface energy (J/m^2) as the top is dragged along x.

    Each offset is independent; with ``workers > 1`` they run on a thread
    pool, but every offset still uses the same reduction, so output is
    identical to the serial run.
    """
    if not math.isclose(top.pitch, bottom.pitch, rel_tol=1e-9):
        raise DragConfigError(f"pitch mismatch: top {top.pitch!r} m, bottom {bottom.pitch!r} m")
    pitch = top.pitch
    if cfg.lateral_step > pitch / 2 * (1 + 1e-12):
        raise DragConfigError(f"lateral_step must not exceed half the pitch ({pitch / 2:.4g} m)")
    offsets = cfg.offsets()
    if cfg.periodic:
        if top.heights.shape != bottom.heights.shape:
            raise DragConfigError("periodic drag needs maps of identical shape")
    else:
        if top.ny != bottom.ny:
            raise DragConfigError("maps must have the same number of rows")
        reach = int(math.ceil(offsets[-1] / pitch + 1e-9)) + top.nx
        if reach > bottom.nx:
            raise DragConfigError(
                f"top ({top.nx} columns) plus max_offset needs {reach} bottom columns, bottom has {bottom.nx}"
            )
    t, b = np.asarray(top.heights), np.asarray(bottom.heights)

    def one(offset):
        return _energy_at(t, b, float(offset), cfg, pitch)

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            energies = np.fromiter(pool.map(one, offsets), dtype=float, count=len(offsets))
    else:
        energies = np.array([one(s) for s in offsets])
    rest = float(offsets[int(np.argmax(np.abs(energies)))])
    return EnergyLandscape(offsets, energies, rest)


def oracle_shear(landscape: EnergyLandscape, delta_x: float) -> float:
    """Largest ``(max E - min E) / delta_x`` over all windows of width delta_x (Pa)."""
    if not delta_x > 0:
        raise ValueError("delta_x must be positive")
    offsets = np.asarray(landscape.offsets)
    if len(offsets) < 2:
        raise DragConfigError("landscape needs at least two offsets")
    step = offsets[1] - offsets[0]
    width = int(round(delta_x / step))
    if offsets[-1] - offsets[0] < delta_x * (1 - 1e-9) or width < 1:
        raise DragConfigError(
            f"landscape spans {offsets[-1] - offsets[0]:.4g} m, less than delta_x = {delta_x:.4g} m"
        )
    e = np.asarray(landscape.energies)
    windows = np.lib.stride_tricks.sliding_window_view(e, width + 1)
    return float(np.max(windows.max(axis=1) - windows.min(axis=1)) / delta_x)


def synthesize_pair(
    rms_top=reference.RMS_DIAMOND,
    rms_bottom=reference.RMS_SILICA,
    correlation_length=reference.CORRELATION_LENGTH,
    n=128,
    pitch=0.2e-9,
    seed: Optional[int] = None,
    conformity: float = 1.0,
):
    """Bonded pair of periodic surfaces with prescribed rms and correlation.

    ``conformity`` is the correlation coefficient between top and bottom
    heights at rest: 1 gives a top that replicates the bottom topography
    scaled to its own rms (the registry a bond would settle into), 0 gives
    two independent surfaces. Both maps are mean-free with exact rms.
    """
    if not 0.0 <= conformity <= 1.0:
        raise ValueError("conformity must lie in [0, 1]")
    if correlation_length < pitch:
        raise ValueError("correlation length below pitch")
    rng = np.random.default_rng(seed)
    shared = _unit_field(gaussian_filter_field(rng.standard_normal((n, n)), correlation_length, pitch))
    own = _unit_field(gaussian_filter_field(rng.standard_normal((n, n)), correlation_length, pitch))
    top = _unit_field(conformity * shared + math.sqrt(1.0 - conformity**2) * own)
    return HeightMap(n, n, pitch, top * rms_top), HeightMap(n, n, pitch, shared * rms_bottom)


def _unit_field(z):
    z = z - z.mean()
    return z / np.sqrt(np.mean(z * z))


@dataclass(frozen=True)
class EnsembleResult:
    shears: np.ndarray
    rest_energies: np.ndarray

    @property
    def median(self):
        return float(np.median(self.shears))

    @property
    def interquartile(self):
        q1, q3 = np.percentile(self.shears, [25, 75])
        return float(q1), float(q3)


def oracle_ensemble(
    seeds: Sequence[int],
    delta_x=reference.DELTA_X,
    hamaker=reference.HAMAKER_VACUUM,
    lateral_step=0.1e-9,
    max_offset=None,
    **pair_kwargs,
) -> EnsembleResult:
    """Oracle shear and rest energy for synthetic pairs, one per seed."""
    if max_offset is None:
        max_offset = 4 * delta_x
    cfg = DragConfig(lateral_step=lateral_step, max_offset=max_offset, hamaker=hamaker)
    shears, rests = [], []
    for seed in seeds:
        top, bottom = synthesize_pair(seed=seed, **pair_kwargs)
        land = energy_landscape(top, bottom, cfg)
        shears.append(oracle_shear(land, delta_x))
        rests.append(land.rest_energy)
    return EnsembleResult(np.array(shears), np.array(rests))

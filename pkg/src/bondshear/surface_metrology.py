"""Height maps: file I/O, roughness statistics and synthetic surfaces.

Height-map text format (heights and pitch in nm)::

    heightmap v1
    <nx> <ny> <pitch_nm>
    <ny lines of nx whitespace-separated heights>

Values are converted to metres on read. The writer emits the shortest
decimal that reproduces each float, shifted by nine decades, so a
write/read cycle returns bit-identical arrays.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from decimal import Decimal, InvalidOperation
from pathlib import Path
from typing import Optional

import numpy as np

MAGIC = "heightmap v1"
MIN_STATS_GRID = 16
MIN_SYNTH_GRID = 64


class HeightMapParseError(ValueError):
    """Malformed height-map file; carries the 1-based line and column."""

    def __init__(self, message, line, column=None, path=None):
        self.line = line
        self.column = column
        self.path = path
        loc = f"line {line}" if column is None else f"line {line}, column {column}"
        prefix = f"{path}: " if path is not None else ""
        super().__init__(f"{prefix}{loc}: {message}")


class CapabilityError(ValueError):
    """Grid too small for the requested statistic."""


class CorrelationUndefinedError(ValueError):
    """Correlation length cannot be determined (flat surface or too short scan)."""


class ResolutionError(ValueError):
    """Requested feature size is below the grid pitch."""


@dataclass(frozen=True, eq=False)
class HeightMap:
    """Regular grid of surface heights.

    ``heights`` has shape ``(ny, nx)``: row ``j`` is scan line ``j`` and the
    fast axis ``x`` runs along each row. Lengths are in metres.
    """

    nx: int
    ny: int
    pitch: float
    heights: np.ndarray

    def __post_init__(self):
        if self.nx < 2 or self.ny < 2:
            raise ValueError(f"grid must be at least 2x2, got {self.nx}x{self.ny}")
        if not (self.pitch > 0 and math.isfinite(self.pitch)):
            raise ValueError(f"pitch must be positive, got {self.pitch!r}")
        h = np.array(self.heights, dtype=float)
        if h.size != self.nx * self.ny:
            raise ValueError(f"expected {self.nx * self.ny} heights, got {h.size}")
        h = h.reshape(self.ny, self.nx)
        if not np.all(np.isfinite(h)):
            raise ValueError("heights must be finite")
        h.setflags(write=False)
        object.__setattr__(self, "heights", h)

    @classmethod
    def from_array(cls, heights, pitch):
        heights = np.asarray(heights, dtype=float)
        ny, nx = heights.shape
        return cls(nx, ny, pitch, heights)

    def __eq__(self, other):
        if not isinstance(other, HeightMap):
            return NotImplemented
        return (
            (self.nx, self.ny, self.pitch) == (other.nx, other.ny, other.pitch)
            and np.array_equal(self.heights, other.heights)
        )

    def transposed(self) -> "HeightMap":
        return HeightMap.from_array(self.heights.T, self.pitch)

    def scaled(self, factor) -> "HeightMap":
        return HeightMap.from_array(self.heights * factor, self.pitch)


@dataclass(frozen=True)
class SurfaceStats:
    rms: float
    correlation_length: float
    half_correlation_length: float
    fractal_dimension: float


# --------------------------------------------------------------------- I/O

def _nm_token_to_m(token):
    value = Decimal(token)
    if not value.is_finite():
        raise ValueError("non-finite")
    return float(value.scaleb(-9))


def _m_to_nm_token(value):
    return format(Decimal(repr(float(value))).scaleb(9), "f")


def parse_height_map_text(text: str, path=None) -> HeightMap:
    lines = text.splitlines()
    if not lines or lines[0].strip() != MAGIC:
        raise HeightMapParseError(f"expected header {MAGIC!r}", 1, 1, path)
    if len(lines) < 2:
        raise HeightMapParseError("missing dimension line 'nx ny pitch_nm'", 2, None, path)
    dims = lines[1].split()
    if len(dims) != 3:
        raise HeightMapParseError("dimension line must be 'nx ny pitch_nm'", 2, 1, path)
    try:
        nx, ny = int(dims[0]), int(dims[1])
    except ValueError:
        raise HeightMapParseError("nx and ny must be integers", 2, 1, path) from None
    if nx < 2 or ny < 2:
        raise HeightMapParseError(f"grid must be at least 2x2, got {nx}x{ny}", 2, 1, path)
    try:
        pitch = _nm_token_to_m(dims[2])
    except (InvalidOperation, ValueError):
        raise HeightMapParseError(f"pitch is not a finite number: {dims[2]!r}", 2, lines[1].index(dims[2]) + 1, path) from None
    if not pitch > 0:
        raise HeightMapParseError("pitch must be positive", 2, lines[1].index(dims[2]) + 1, path)

    data_lines = lines[2:]
    while data_lines and not data_lines[-1].strip():
        data_lines.pop()
    if len(data_lines) != ny:
        raise HeightMapParseError(f"expected {ny} data rows, found {len(data_lines)}", 3 + min(len(data_lines), ny), None, path)

    heights = np.empty((ny, nx))
    for j, raw in enumerate(data_lines):
        line_no = j + 3
        tokens = raw.split()
        if len(tokens) != nx:
            raise HeightMapParseError(f"expected {nx} values, found {len(tokens)}", line_no, None, path)
        col = 0
        for i, tok in enumerate(tokens):
            col = raw.index(tok, col)
            try:
                heights[j, i] = _nm_token_to_m(tok)
            except (InvalidOperation, ValueError):
                raise HeightMapParseError(f"not a finite number: {tok!r}", line_no, col + 1, path) from None
            col += len(tok)
    return HeightMap(nx, ny, pitch, heights)


def parse_height_map(path) -> HeightMap:
    """Read a height-map file (nm units) into a HeightMap in metres."""
    path = Path(path)
    return parse_height_map_text(path.read_text(encoding="utf-8"), path)


def serialize_height_map(hmap: HeightMap) -> str:
    out = [MAGIC, f"{hmap.nx} {hmap.ny} {_m_to_nm_token(hmap.pitch)}"]
    for row in hmap.heights:
        out.append(" ".join(_m_to_nm_token(v) for v in row))
    return "\n".join(out) + "\n"


def write_height_map(hmap: HeightMap, path) -> None:
    Path(path).write_text(serialize_height_map(hmap), encoding="utf-8")


# -------------------------------------------------------------- statistics

def detrend_plane(heights: np.ndarray) -> np.ndarray:
    """Subtract the least-squares plane a + b*x + c*y."""
    ny, nx = heights.shape
    y, x = np.mgrid[0:ny, 0:nx]
    x = (x - (nx - 1) / 2.0).ravel()
    y = (y - (ny - 1) / 2.0).ravel()
    design = np.column_stack([np.ones_like(x), x, y])
    coef, *_ = np.linalg.lstsq(design, heights.ravel(), rcond=None)
    return heights - (design @ coef).reshape(ny, nx)


def rms_roughness(hmap: HeightMap) -> float:
    """Root-mean-square height after removing the best-fit plane."""
    z = detrend_plane(hmap.heights)
    return float(np.sqrt(np.mean(z * z)))


def _lag_radius(shape):
    ny, nx = shape
    dy = np.fft.fftfreq(ny) * ny
    dx = np.fft.fftfreq(nx) * nx
    return np.hypot(dy[:, None], dx[None, :])


def radial_autocorrelation(hmap: HeightMap):
    """Radially averaged, normalized autocorrelation of the detrended map.

    Uses a zero-padded FFT with per-lag overlap counts, so non-periodic
    scans are not wrapped. Returns ``(lag_m, acf)`` out to half the shorter
    side of the grid.
    """
    z = detrend_plane(hmap.heights)
    ny, nx = z.shape
    shape = (2 * ny, 2 * nx)
    spectrum = np.fft.rfft2(z, s=shape)
    raw = np.fft.irfft2(spectrum * np.conj(spectrum), s=shape)
    ones = np.fft.rfft2(np.ones_like(z), s=shape)
    counts = np.rint(np.fft.irfft2(ones * np.conj(ones), s=shape))
    valid = counts > 0
    acf = np.zeros(shape)
    acf[valid] = raw[valid] / counts[valid]
    if not acf[0, 0] > 0:
        raise CorrelationUndefinedError("surface has zero variance after detrending")
    acf /= acf[0, 0]

    radius = _lag_radius(shape)
    r_max = min(nx, ny) // 2
    keep = valid & (radius <= r_max + 0.5)
    bins = np.rint(radius[keep]).astype(int)
    n = np.bincount(bins, minlength=r_max + 1)
    mean_acf = np.bincount(bins, weights=acf[keep], minlength=r_max + 1) / n
    mean_r = np.bincount(bins, weights=radius[keep], minlength=r_max + 1) / n
    return mean_r * hmap.pitch, mean_acf


def correlation_length(hmap: HeightMap) -> float:
    """Lag (m) where the radial autocorrelation first drops below 1/e.

    Linearly interpolated between the bracketing radial bins.
    """
    lags, acf = radial_autocorrelation(hmap)
    threshold = math.exp(-1.0)
    below = np.nonzero(acf < threshold)[0]
    if below.size == 0:
        raise CorrelationUndefinedError("autocorrelation stays above 1/e over half the scan; scan too short")
    k = int(below[0])
    x0, x1, y0, y1 = lags[k - 1], lags[k], acf[k - 1], acf[k]
    return float(x0 + (y0 - threshold) * (x1 - x0) / (y0 - y1))


def radial_psd(hmap: HeightMap):
    """Radially averaged power spectrum of the Hann-windowed, detrended map.

    Returns ``(k, psd)`` with spatial frequency ``k`` in cycles per metre,
    excluding the zero-frequency bin.
    """
    z = detrend_plane(hmap.heights)
    ny, nx = z.shape
    window = np.outer(np.hanning(ny), np.hanning(nx))
    power = np.abs(np.fft.fft2(z * window)) ** 2
    ky = np.fft.fftfreq(ny, d=hmap.pitch)
    kx = np.fft.fftfreq(nx, d=hmap.pitch)
    k = np.hypot(ky[:, None], kx[None, :])
    dk = 1.0 / (min(nx, ny) * hmap.pitch)
    k_nyq = 0.5 / hmap.pitch
    bins = np.rint(k / dk).astype(int)
    n_bins = int(round(k_nyq / dk)) + 1
    keep = bins < n_bins
    counts = np.bincount(bins[keep], minlength=n_bins)
    psd = np.bincount(bins[keep], weights=power[keep], minlength=n_bins)
    k_mean = np.bincount(bins[keep], weights=k[keep], minlength=n_bins)
    ok = counts > 0
    ok[0] = False
    return k_mean[ok] / counts[ok], psd[ok] / counts[ok]


def fractal_dimension(hmap: HeightMap) -> float:
    """Fractal dimension from the PSD slope over the middle frequency decade.

    With ``psd ~ k**beta``, ``D = (8 + beta) / 2``, clamped to ``[2, 3)``.
    A smooth surface lands at 2, uncorrelated noise just below 3.
    """
    k, psd = radial_psd(hmap)
    centre = math.sqrt(k[0] * k[-1])
    sel = (k >= centre / math.sqrt(10.0)) & (k <= centre * math.sqrt(10.0)) & (psd > 0)
    if np.count_nonzero(sel) < 3:
        raise CapabilityError("too few spectral bins for a slope fit")
    beta = np.polyfit(np.log10(k[sel]), np.log10(psd[sel]), 1)[0]
    dim = (8.0 + beta) / 2.0
    return float(min(max(dim, 2.0), np.nextafter(3.0, 0.0)))


def compute_stats(hmap: HeightMap) -> SurfaceStats:
    """RMS, correlation length, its half (drag distance) and fractal dimension."""
    if hmap.nx < MIN_STATS_GRID or hmap.ny < MIN_STATS_GRID:
        raise CapabilityError(
            f"correlation and fractal estimates need at least {MIN_STATS_GRID}x{MIN_STATS_GRID}, "
            f"got {hmap.nx}x{hmap.ny}; use rms_roughness() alone"
        )
    rms = rms_roughness(hmap)
    scale = float(np.max(np.abs(hmap.heights)))
    if rms == 0.0 or rms <= 1e-12 * scale:
        raise CorrelationUndefinedError("surface is flat after plane removal; correlation length undefined")
    corr = correlation_length(hmap)
    return SurfaceStats(rms, corr, corr / 2.0, fractal_dimension(hmap))


# --------------------------------------------------------------- synthesis

def gaussian_filter_field(white: np.ndarray, correlation_length, pitch) -> np.ndarray:
    """Shape white noise to an isotropic ``exp(-r^2 / L^2)`` autocorrelation."""
    ny, nx = white.shape
    ky = 2 * np.pi * np.fft.fftfreq(ny, d=pitch)
    kx = 2 * np.pi * np.fft.fftfreq(nx, d=pitch)
    k2 = ky[:, None] ** 2 + kx[None, :] ** 2
    amplitude = np.exp(-k2 * correlation_length**2 / 8.0)
    return np.fft.ifft2(np.fft.fft2(white) * amplitude).real


def synthesize_surface(rms, correlation_length, nx, ny, pitch, seed: Optional[int] = None) -> HeightMap:
    """Periodic Gaussian random surface with Gaussian autocorrelation.

    The field is mean-free and rescaled to exactly ``rms``; the same seed
    always gives the same map.
    """
    if not rms > 0:
        raise ValueError(f"rms must be positive, got {rms!r}")
    if nx < MIN_SYNTH_GRID or ny < MIN_SYNTH_GRID:
        raise CapabilityError(f"synthesis needs at least {MIN_SYNTH_GRID}x{MIN_SYNTH_GRID}, got {nx}x{ny}")
    if not pitch > 0:
        raise ValueError(f"pitch must be positive, got {pitch!r}")
    if correlation_length < pitch:
        raise ResolutionError(f"correlation length {correlation_length:.3g} m is below the pitch {pitch:.3g} m")
    rng = np.random.default_rng(seed)
    z = gaussian_filter_field(rng.standard_normal((ny, nx)), correlation_length, pitch)
    z -= z.mean()
    return HeightMap(nx, ny, pitch, z * (rms / np.sqrt(np.mean(z * z))))

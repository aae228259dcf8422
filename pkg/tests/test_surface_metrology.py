import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from bondshear.surface_metrology import (
    CapabilityError,
    CorrelationUndefinedError,
    HeightMap,
    HeightMapParseError,
    ResolutionError,
    compute_stats,
    correlation_length,
    detrend_plane,
    fractal_dimension,
    parse_height_map,
    parse_height_map_text,
    radial_autocorrelation,
    rms_roughness,
    serialize_height_map,
    synthesize_surface,
    write_height_map,
)

PITCH = 0.2e-9


def _brute_acf(z, radius_bin):
    """Direct overlap-sum autocorrelation averaged over lags in one radial bin."""
    ny, nx = z.shape
    var = np.mean(z * z)
    vals = []
    for dy in range(-(ny - 1), ny):
        for dx in range(-(nx - 1), nx):
            if round(math.hypot(dx, dy)) != radius_bin:
                continue
            a = z[max(0, dy): ny + min(0, dy), max(0, dx): nx + min(0, dx)]
            b = z[max(0, -dy): ny + min(0, -dy), max(0, -dx): nx + min(0, -dx)]
            vals.append(np.mean(a * b) / var)
    return np.mean(vals)


def test_flat_file(tmp_path):
    path = tmp_path / "flat.hm"
    path.write_text("heightmap v1\n2 2 10\n0 0\n0 0\n")
    hmap = parse_height_map(path)
    assert hmap.pitch == pytest.approx(10e-9)
    assert rms_roughness(hmap) == 0.0


@pytest.mark.parametrize(
    "text, line",
    [
        ("heightmap v2\n2 2 1\n0 0\n0 0\n", 1),
        ("heightmap v1\n2 2\n0 0\n0 0\n", 2),
        ("heightmap v1\n2 3 1\n0 0\n0 0\n", 5),
        ("heightmap v1\n2 2 1\n0 0\n0\n", 4),
        ("heightmap v1\n2 2 1\n0 0\n0 nan\n", 4),
        ("heightmap v1\n2 2 1\n0 x\n0 0\n", 3),
        ("heightmap v1\n2 2 -1\n0 0\n0 0\n", 2),
    ],
)
def test_parse_errors_locate(text, line):
    with pytest.raises(HeightMapParseError) as info:
        parse_height_map_text(text)
    assert info.value.line == line


def test_parse_error_column():
    with pytest.raises(HeightMapParseError) as info:
        parse_height_map_text("heightmap v1\n3 2 1\n0 0 0\n0  bad 0\n")
    assert (info.value.line, info.value.column) == (4, 4)


def test_round_trip_bit_exact(tmp_path):
    hmap = synthesize_surface(0.61e-9, 1.08e-9, 64, 64, PITCH, seed=7)
    path = tmp_path / "s.hm"
    write_height_map(hmap, path)
    again = parse_height_map(path)
    assert again == hmap
    assert serialize_height_map(again) == path.read_text()


@settings(max_examples=50, deadline=None)
@given(st.lists(st.floats(-1e-6, 1e-6, allow_nan=False), min_size=6, max_size=6), st.floats(1e-12, 1e-6))
def test_round_trip_property(values, pitch):
    hmap = HeightMap(3, 2, pitch, values)
    assert parse_height_map_text(serialize_height_map(hmap)) == hmap


def test_heightmap_invariants():
    with pytest.raises(ValueError):
        HeightMap(2, 2, 1e-9, [0, 0, 0])
    with pytest.raises(ValueError):
        HeightMap(2, 2, 1e-9, [0, 0, 0, np.inf])
    with pytest.raises(ValueError):
        HeightMap(2, 2, 0.0, [0, 0, 0, 0])


def test_tilted_plane_detrends_to_zero():
    y, x = np.mgrid[0:32, 0:32]
    plane = 1e-9 + 3e-11 * x - 2e-11 * y
    hmap = HeightMap.from_array(plane, PITCH)
    assert rms_roughness(hmap) <= 1e-12 * np.max(np.abs(plane))
    with pytest.raises(CorrelationUndefinedError):
        compute_stats(hmap)


def test_detrend_idempotent():
    hmap = synthesize_surface(0.61e-9, 1.08e-9, 64, 64, PITCH, seed=3)
    y, x = np.mgrid[0:64, 0:64]
    tilted = HeightMap.from_array(hmap.heights + 1e-11 * x + 5e-12 * y, PITCH)
    once = HeightMap.from_array(detrend_plane(tilted.heights), PITCH)
    assert rms_roughness(once) == pytest.approx(rms_roughness(tilted), rel=1e-12)


def test_small_grid_capability():
    hmap = HeightMap.from_array(np.random.default_rng(0).standard_normal((8, 8)), PITCH)
    rms_roughness(hmap)
    with pytest.raises(CapabilityError):
        compute_stats(hmap)


def test_fft_acf_matches_brute_force():
    z = np.random.default_rng(4).standard_normal((16, 20))
    hmap = HeightMap.from_array(z, PITCH)
    _, acf = radial_autocorrelation(hmap)
    zd = detrend_plane(z)
    for r in (1, 2, 3):
        assert acf[r] == pytest.approx(_brute_acf(zd, r), abs=1e-12)
    assert acf[0] == pytest.approx(1.0)


def test_white_noise_correlation_short():
    z = np.random.default_rng(11).standard_normal((128, 128))
    hmap = HeightMap.from_array(z, PITCH)
    assert correlation_length(hmap) <= 2 * PITCH


def test_synthesis_recovers_inputs():
    hmap = synthesize_surface(0.61e-9, 1.08e-9, 256, 256, PITCH, seed=1)
    s = compute_stats(hmap)
    assert s.rms == pytest.approx(0.61e-9, rel=0.10)
    assert s.correlation_length == pytest.approx(1.08e-9, rel=0.15)
    assert s.half_correlation_length == s.correlation_length / 2
    assert s.half_correlation_length == pytest.approx(0.54e-9, rel=0.15)
    assert 2.0 <= s.fractal_dimension < 3.0


def test_synthesis_determinism_and_linearity():
    a = synthesize_surface(0.61e-9, 1.08e-9, 64, 64, PITCH, seed=5)
    b = synthesize_surface(0.61e-9, 1.08e-9, 64, 64, PITCH, seed=5)
    c = synthesize_surface(1.22e-9, 1.08e-9, 64, 64, PITCH, seed=5)
    assert np.array_equal(a.heights, b.heights)
    np.testing.assert_allclose(c.heights, 2 * a.heights, rtol=1e-14, atol=0)
    assert np.sqrt(np.mean(a.heights**2)) == pytest.approx(0.61e-9, rel=1e-12)


def test_synthesis_preconditions():
    with pytest.raises(ResolutionError):
        synthesize_surface(0.61e-9, 0.1e-9, 64, 64, PITCH, seed=1)
    with pytest.raises(CapabilityError):
        synthesize_surface(0.61e-9, 1.08e-9, 32, 32, PITCH, seed=1)
    with pytest.raises(ValueError):
        synthesize_surface(0.0, 1.08e-9, 64, 64, PITCH, seed=1)


def test_fractal_ordering():
    smooth = synthesize_surface(0.61e-9, 1.08e-9, 256, 256, PITCH, seed=2)
    noise = HeightMap.from_array(np.random.default_rng(2).standard_normal((256, 256)), PITCH)
    d_smooth, d_noise = fractal_dimension(smooth), fractal_dimension(noise)
    assert 2.0 <= d_smooth < d_noise < 3.0
    assert d_noise > 2.9


@pytest.mark.parametrize("seed", [1, 2, 3])
def test_transpose_invariance(seed):
    hmap = synthesize_surface(0.61e-9, 1.08e-9, 128, 128, PITCH, seed=seed)
    t = hmap.transposed()
    assert rms_roughness(t) == pytest.approx(rms_roughness(hmap), rel=1e-12)
    assert correlation_length(t) == pytest.approx(correlation_length(hmap), rel=0.05)

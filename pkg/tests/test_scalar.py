"""Scalar propagators: surface reconstruction, aperture quadratures, far field."""

import numpy as np
import pytest
from scipy.special import j0

from diracoptics import (
    ApertureMask,
    DetectorSpec,
    Grid2D,
    ScalarBoundary,
    ScalarField2D,
    SourceSpec,
    circular,
    compare,
    fraunhofer_scalar,
    helmholtz_kirchhoff_integral,
    illuminate,
    kirchhoff_fresnel,
    obliquity,
    scalar_boundary_on_sphere,
)
from diracoptics.waves import PlaneWaveScalar, SphericalWaveScalar

K = 2.0 * np.pi
LAM = 1.0


def test_obliquity_values():
    assert obliquity("kirchhoff", 0.0, 0.0) == pytest.approx(1.0)
    assert obliquity("rs1", 0.1, np.pi / 3) == pytest.approx(0.5)
    assert obliquity("rs2", np.pi / 3, 0.1) == pytest.approx(0.5)


def test_obliquity_kirchhoff_is_mean_of_rs():
    th0 = np.linspace(0.0, 1.4, 21)
    th = np.linspace(0.0, 1.4, 21)[::-1]
    mean = (obliquity("rs1", th0, th) + obliquity("rs2", th0, th)) / 2.0
    assert np.allclose(obliquity("kirchhoff", th0, th), mean, atol=1e-15)


def test_obliquity_rejects_unknown_kind():
    with pytest.raises(ValueError):
        obliquity("fresnel", 0.0, 0.0)


def test_source_spec_validation():
    with pytest.raises(ValueError):
        SourceSpec(type="point-source", position=(0.0, 0.0, 1.0))  # wrong side
    with pytest.raises(ValueError):
        SourceSpec(type="point-source")  # missing position
    with pytest.raises(ValueError):
        SourceSpec(type="gaussian")


def test_detector_spec_validation():
    with pytest.raises(ValueError):
        DetectorSpec(z=0.0, nx=4, ny=4, dx=1.0, dy=1.0)
    with pytest.raises(ValueError):
        DetectorSpec(z=1.0, nx=4, ny=4, dx=1.0, dy=1.0, mode="focal")


def test_illuminate_plane_wave():
    grid = Grid2D.from_half_extent(8, 1.0)
    mask = ApertureMask(grid, np.ones((8, 8)))
    field = illuminate(mask, SourceSpec(), K)
    assert np.array_equal(field.values, np.ones((8, 8), dtype=complex))


def test_illuminate_point_source_on_axis():
    grid = Grid2D.from_half_extent(33, 1.0)  # odd: center pixel at origin
    mask = ApertureMask(grid, np.ones((33, 33)))
    r0 = 7.5
    src = SourceSpec(type="point-source", position=(0.0, 0.0, -r0))
    field = illuminate(mask, src, K)
    expected = np.exp(1j * K * r0) / r0
    assert field.values[16, 16] == pytest.approx(expected, abs=1e-15)


def test_illuminate_masked_pixels_exactly_zero():
    grid = Grid2D.from_half_extent(16, 1.0)
    values = np.zeros((16, 16))
    values[3:7, 4:9] = 1.0
    mask = ApertureMask(grid, values)
    field = illuminate(mask, SourceSpec(), K)
    assert np.all(field.values[values == 0.0] == 0.0)


# ---------------------------------------------------------------------------
# closed-surface reconstruction


def test_surface_integral_plane_wave_at_center():
    boundary = scalar_boundary_on_sphere(np.zeros(3), 5 * LAM, 200, 400, PlaneWaveScalar(K))
    val = helmholtz_kirchhoff_integral(boundary, np.zeros(3), K)
    assert abs(val - 1.0) < 0.01


def test_surface_integral_point_source():
    src_pos = (0.0, 0.0, -8.0 * LAM)
    wave = SphericalWaveScalar(K, src_pos)
    boundary = scalar_boundary_on_sphere(np.zeros(3), 5 * LAM, 200, 400, wave)
    target = np.array([0.5, -0.3, 0.2]) * LAM
    val = helmholtz_kirchhoff_integral(boundary, target, K)
    expected = wave.value(target[None, :])[0]
    assert abs(val - expected) < 0.01 * abs(expected)


def test_surface_integral_zero_boundary_is_zero():
    n = 200
    boundary = scalar_boundary_on_sphere(np.zeros(3), 5 * LAM, 20, 40, PlaneWaveScalar(K))
    zero = ScalarBoundary(
        boundary.positions,
        boundary.normals,
        np.zeros(len(boundary), dtype=complex),
        np.zeros(len(boundary), dtype=complex),
        boundary.weights,
    )
    assert helmholtz_kirchhoff_integral(zero, np.zeros(3), K) == 0.0


def test_surface_integral_rejects_exterior_target():
    boundary = scalar_boundary_on_sphere(np.zeros(3), 5 * LAM, 40, 80, PlaneWaveScalar(K))
    with pytest.raises(ValueError):
        helmholtz_kirchhoff_integral(boundary, np.array([0.0, 0.0, 6.0 * LAM]), K)


def test_surface_integral_rejects_target_near_surface():
    boundary = scalar_boundary_on_sphere(np.zeros(3), 5 * LAM, 40, 80, PlaneWaveScalar(K))
    with pytest.raises(ValueError):
        helmholtz_kirchhoff_integral(boundary, np.array([0.0, 0.0, 4.97 * LAM]), K)


def test_scalar_boundary_requires_normal_derivatives():
    boundary = scalar_boundary_on_sphere(np.zeros(3), 5 * LAM, 10, 20, PlaneWaveScalar(K))
    with pytest.raises(ValueError):
        ScalarBoundary(
            boundary.positions, boundary.normals, boundary.values, None, boundary.weights
        )


# ---------------------------------------------------------------------------
# aperture-plane quadrature


def _circular_transmission(n, half_extent, radius):
    return circular(radius, Grid2D.from_half_extent(n, half_extent))


def test_kirchhoff_equals_mean_of_rs_variants():
    mask = _circular_transmission(48, 2.0, 1.3)
    src = SourceSpec(type="point-source", position=(0.3, -0.2, -50.0))
    det = DetectorSpec(z=40.0, nx=12, ny=12, dx=1.5, dy=1.5)
    outs = {
        kind: kirchhoff_fresnel(mask, src, det, K, kind=kind).values
        for kind in ("kirchhoff", "rs1", "rs2")
    }
    mean = (outs["rs1"] + outs["rs2"]) / 2.0
    rel = np.abs(outs["kirchhoff"] - mean).max() / np.abs(mean).max()
    assert rel < 1e-12


def test_kirchhoff_closed_aperture_gives_zero():
    grid = Grid2D.from_half_extent(16, 1.0)
    mask = ApertureMask(grid, np.zeros((16, 16)))
    det = DetectorSpec(z=30.0, nx=4, ny=4, dx=1.0, dy=1.0)
    out = kirchhoff_fresnel(mask, SourceSpec(), det, K)
    assert np.all(out.values == 0.0)


def test_kirchhoff_linearity():
    rng = np.random.default_rng(5)
    grid = Grid2D.from_half_extent(24, 1.0)
    a = ScalarField2D(grid, rng.normal(size=(24, 24)) + 1j * rng.normal(size=(24, 24)))
    b = ScalarField2D(grid, rng.normal(size=(24, 24)) + 1j * rng.normal(size=(24, 24)))
    det = DetectorSpec(z=25.0, nx=6, ny=6, dx=1.0, dy=1.0)
    alpha, beta = 1.7 - 0.4j, -0.6 + 2.1j
    combo = ScalarField2D(grid, alpha * a.values + beta * b.values)
    src = SourceSpec()
    out_combo = kirchhoff_fresnel(combo, src, det, K).values
    out_parts = (
        alpha * kirchhoff_fresnel(a, src, det, K).values
        + beta * kirchhoff_fresnel(b, src, det, K).values
    )
    assert np.abs(out_combo - out_parts).max() < 1e-12 * np.abs(out_combo).max()


def test_kirchhoff_rejects_angular_detector():
    mask = _circular_transmission(16, 1.0, 0.5)
    det = DetectorSpec(z=10.0, nx=4, ny=4, dx=0.1, dy=0.1, mode="angular")
    with pytest.raises(ValueError):
        kirchhoff_fresnel(mask, SourceSpec(), det, K)


def test_kirchhoff_warns_on_small_ks():
    mask = _circular_transmission(8, 1.0, 0.5)
    det = DetectorSpec(z=0.5, nx=2, ny=2, dx=0.1, dy=0.1)
    with pytest.warns(UserWarning):
        kirchhoff_fresnel(mask, SourceSpec(), det, 1.0)


def _airy_first_zero_radius(k, aperture_radius):
    """First zero of the circular-aperture far-field pattern via independent
    1-D radial quadrature of integral r J0(q r) dr, located by sign change."""
    r = np.linspace(0.0, aperture_radius, 4001)

    def pattern(q):
        return np.trapezoid(r * j0(q * r), r)

    qs = np.linspace(1e-3, 8.0 / aperture_radius, 2000)
    vals = np.array([pattern(q) for q in qs])
    idx = int(np.argmax(vals[:-1] * vals[1:] < 0.0))
    # one bisection refinement pass
    lo, hi = qs[idx], qs[idx + 1]
    for _ in range(60):
        mid = 0.5 * (lo + hi)
        if pattern(lo) * pattern(mid) <= 0.0:
            hi = mid
        else:
            lo = mid
    return 0.5 * (lo + hi)


def test_airy_oracle_matches_bessel_zero():
    a = 2.0
    q0 = _airy_first_zero_radius(K, a)
    assert q0 * a == pytest.approx(3.8317, abs=2e-3)


def test_kirchhoff_circular_aperture_first_zero():
    a = 2.0
    mask = _circular_transmission(128, 2.5, a)
    z = 2000.0
    det = DetectorSpec(z=z, nx=80, ny=1, dx=10.0, dy=1.0, origin=(0.0, 0.0))
    out = kirchhoff_fresnel(mask, SourceSpec(), det, K)
    inten = np.abs(out.values[:, 0]) ** 2
    minima = [
        i
        for i in range(1, len(inten) - 1)
        if inten[i] < inten[i - 1] and inten[i] <= inten[i + 1]
    ]
    x_found = det.grid().x()[minima[0]]
    sin_theta0 = _airy_first_zero_radius(K, a) / K
    x_pred = z * sin_theta0 / np.sqrt(1.0 - sin_theta0**2)
    assert abs(x_found - x_pred) <= det.dx


# ---------------------------------------------------------------------------
# far-field transform


def test_fraunhofer_square_aperture_sinc_zero():
    w = 2.0
    grid = Grid2D.from_half_extent(256, 4.0)
    x, y = grid.meshgrid()
    values = ((np.abs(x) <= w / 2) & (np.abs(y) <= w / 2)).astype(complex)
    ap = ScalarField2D(grid, values)
    n = 128
    dq = 1.5 * (2 * np.pi / w) / (n // 2)
    det = DetectorSpec(
        z=1.0, nx=n, ny=n, dx=dq, dy=dq, mode="angular", origin=(-(n // 2) * dq, -(n // 2) * dq)
    )
    out = fraunhofer_scalar(ap, K, det)
    row = np.abs(out.values[:, n // 2]) ** 2  # along k_x at k_y = 0
    center = n // 2
    prediction = 2 * np.pi / w
    minima = [
        i
        for i in range(center + 1, n - 1)
        if row[i] < row[i - 1] and row[i] <= row[i + 1]
    ]
    kx_found = out.grid.x()[minima[0]]
    assert abs(kx_found - prediction) <= dq


def test_fraunhofer_single_pixel_flat_magnitude():
    grid = Grid2D.from_half_extent(32, 1.0)
    values = np.zeros((32, 32), dtype=complex)
    values[20, 9] = 3.0 - 1.0j
    ap = ScalarField2D(grid, values)
    det = DetectorSpec(z=1.0, nx=16, ny=16, dx=0.3, dy=0.3, mode="angular")
    out = fraunhofer_scalar(ap, K, det)
    mags = np.abs(out.values)
    assert np.allclose(mags, mags[0, 0], rtol=1e-12)


def _matched_detector(grid: Grid2D, n: int):
    dq = 2.0 * np.pi / (n * grid.dx)
    return DetectorSpec(
        z=1.0, nx=n, ny=n, dx=dq, dy=dq, mode="angular", origin=(-(n // 2) * dq, -(n // 2) * dq)
    )


def test_fraunhofer_matches_fft_on_conjugate_grid():
    rng = np.random.default_rng(23)
    n = 64
    grid = Grid2D.from_half_extent(n, 2.0)
    values = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    ap = ScalarField2D(grid, values)
    det = _matched_detector(grid, n)
    out = fraunhofer_scalar(ap, 100.0, det)

    c = n // 2
    kx = det.grid().x()
    ky = det.grid().y()
    phase_x = np.exp(-1j * kx * grid.origin[0])
    phase_y = np.exp(-1j * ky * grid.origin[1])
    rolled = np.roll(np.fft.fft2(values), (c, c), axis=(0, 1))
    expected = grid.cell_area * phase_x[:, None] * rolled * phase_y[None, :]
    assert np.abs(out.values - expected).max() < 1e-10 * np.abs(expected).max()


def test_fraunhofer_parseval():
    rng = np.random.default_rng(29)
    n = 64
    grid = Grid2D.from_half_extent(n, 2.0)
    values = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    ap = ScalarField2D(grid, values)
    out = fraunhofer_scalar(ap, 100.0, _matched_detector(grid, n))
    lhs = np.sum(np.abs(out.values) ** 2)
    rhs = grid.cell_area**2 * n * n * np.sum(np.abs(values) ** 2)
    assert abs(lhs - rhs) < 1e-9 * rhs


def test_fraunhofer_linearity():
    rng = np.random.default_rng(31)
    grid = Grid2D.from_half_extent(32, 1.0)
    a = rng.normal(size=(32, 32)) + 1j * rng.normal(size=(32, 32))
    b = rng.normal(size=(32, 32)) + 1j * rng.normal(size=(32, 32))
    det = DetectorSpec(z=1.0, nx=8, ny=8, dx=0.3, dy=0.3, mode="angular")
    alpha, beta = 0.3 + 1.1j, -2.0 + 0.7j
    combo = fraunhofer_scalar(ScalarField2D(grid, alpha * a + beta * b), K, det).values
    parts = (
        alpha * fraunhofer_scalar(ScalarField2D(grid, a), K, det).values
        + beta * fraunhofer_scalar(ScalarField2D(grid, b), K, det).values
    )
    assert np.abs(combo - parts).max() < 1e-12 * np.abs(combo).max()


def test_fraunhofer_rejects_angular_frequencies_beyond_k():
    grid = Grid2D.from_half_extent(16, 1.0)
    ap = ScalarField2D(grid, np.ones((16, 16), dtype=complex))
    det = DetectorSpec(z=1.0, nx=8, ny=8, dx=2.0, dy=2.0, mode="angular")
    with pytest.raises(ValueError):
        fraunhofer_scalar(ap, 2.0, det)


def test_fraunhofer_warns_below_far_field_threshold():
    grid = Grid2D.from_half_extent(16, 1.0)
    ap = ScalarField2D(grid, np.ones((16, 16), dtype=complex))
    det = DetectorSpec(z=1.0, nx=8, ny=8, dx=0.1, dy=0.1, mode="real-plane")
    with pytest.warns(UserWarning):
        fraunhofer_scalar(ap, K, det)


def test_fraunhofer_real_plane_equals_angular_mapping_times_carrier():
    grid = Grid2D.from_half_extent(32, 1.0)
    rng = np.random.default_rng(37)
    ap = ScalarField2D(grid, rng.normal(size=(32, 32)) + 0j)
    z = 5000.0
    det_real = DetectorSpec(z=z, nx=8, ny=8, dx=40.0, dy=40.0, mode="real-plane")
    out_real = fraunhofer_scalar(ap, K, det_real)
    # same transverse wavenumbers sampled directly, then the spherical carrier
    dq = K * 40.0 / z
    det_ang = DetectorSpec(
        z=z, nx=8, ny=8, dx=dq, dy=dq, mode="angular",
        origin=(K * det_real.grid().origin[0] / z, K * det_real.grid().origin[1] / z),
    )
    out_ang = fraunhofer_scalar(ap, K, det_ang)
    px, py = det_real.grid().meshgrid()
    s = np.sqrt(px**2 + py**2 + z**2)
    expected = out_ang.values * np.exp(1j * K * s) / s
    assert np.abs(out_real.values - expected).max() < 1e-13 * np.abs(expected).max()


def test_cross_method_far_field_agreement():
    # exact aperture quadrature vs far-field transform in the paraxial window
    a = 1.5
    mask = _circular_transmission(96, 2.0, a)
    z = 1e4 / K
    n_det = 24
    half_window = 0.049 * z
    d = 2 * half_window / n_det
    det = DetectorSpec(z=z, nx=n_det, ny=n_det, dx=d, dy=d)
    exact = kirchhoff_fresnel(mask, SourceSpec(), det, K)
    far = fraunhofer_scalar(
        ScalarField2D(mask.grid, mask.values.astype(complex)), K, det
    )
    report = compare(far, exact, align=True)
    assert report.l2_relative < 0.02
    aligned_ref = report.global_scale * far.values
    pixelwise = np.abs(exact.values - aligned_ref) / np.abs(exact.values)
    assert pixelwise.max() < 0.02


def test_kirchhoff_deterministic_reruns():
    mask = _circular_transmission(32, 1.0, 0.6)
    det = DetectorSpec(z=50.0, nx=6, ny=6, dx=2.0, dy=2.0)
    first = kirchhoff_fresnel(mask, SourceSpec(), det, K).values
    second = kirchhoff_fresnel(mask, SourceSpec(), det, K).values
    assert np.array_equal(first, second)

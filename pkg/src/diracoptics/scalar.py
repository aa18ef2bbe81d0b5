"""Scalar diffraction propagators.

Contains the exact closed-surface integration theorem, the aperture-plane
Kirchhoff/Rayleigh-Sommerfeld quadrature with selectable obliquity factor,
the far-field Fourier transform, and aperture illumination.

Geometry convention: the aperture lies in the plane z = 0, point sources sit
strictly at z < 0, detectors strictly at z > 0.  theta_0 is the incidence
angle of the source ray at an aperture point, theta the angle of the outgoing
ray toward the detector point, both measured from the +z axis.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from typing import Optional

import numpy as np

from ._accum import KahanAccumulator, chunk_slices
from .grid import ApertureMask, Grid2D, ScalarField2D
from .surfaces import ScalarBoundary, require_interior_target

_CHUNK = 8192

SOURCE_TYPES = ("point-source", "plane-wave")
DETECTOR_MODES = ("real-plane", "angular")
OBLIQUITY_KINDS = ("kirchhoff", "rs1", "rs2")


@dataclass(frozen=True)
class SourceSpec:
    """Illumination source: a point source behind the aperture or a plane wave."""

    type: str = "plane-wave"
    position: Optional[tuple[float, float, float]] = None
    amplitude: complex = 1.0 + 0.0j

    def __post_init__(self):
        if self.type not in SOURCE_TYPES:
            raise ValueError(f"source type must be one of {SOURCE_TYPES}, got {self.type!r}")
        if self.type == "point-source":
            if self.position is None:
                raise ValueError("point-source requires a position")
            p = np.asarray(self.position, dtype=np.float64)
            if p.shape != (3,):
                raise ValueError("source position must be a 3-vector")
            if p[2] >= 0.0:
                raise ValueError("point source must lie strictly at z < 0")
            object.__setattr__(self, "position", tuple(float(c) for c in p))


@dataclass(frozen=True)
class DetectorSpec:
    """Output plane at distance z > 0 with its own uniform grid.

    ``mode`` selects the pixel coordinates: physical lengths on the plane
    (``real-plane``) or transverse wavenumbers (``angular``).  ``origin``
    defaults to a grid whose pixel centers are symmetric about the axis.
    """

    z: float
    nx: int
    ny: int
    dx: float
    dy: float
    mode: str = "real-plane"
    origin: Optional[tuple[float, float]] = None

    def __post_init__(self):
        if self.z <= 0:
            raise ValueError("detector plane distance z must be positive")
        if self.mode not in DETECTOR_MODES:
            raise ValueError(f"detector mode must be one of {DETECTOR_MODES}, got {self.mode!r}")
        self.grid()  # validate counts/spacings eagerly

    def grid(self) -> Grid2D:
        if self.origin is None:
            return Grid2D.centered(self.nx, self.ny, self.dx, self.dy)
        return Grid2D(self.nx, self.ny, self.dx, self.dy, self.origin)


def obliquity(kind: str, theta0, theta):
    """Angular weight of the diffraction kernel.

    kirchhoff: (cos theta0 + cos theta)/2, rs1: cos theta, rs2: cos theta0.
    The kirchhoff value is the arithmetic mean of the two rs values.
    """
    if kind == "kirchhoff":
        return (np.cos(theta0) + np.cos(theta)) / 2.0
    if kind == "rs1":
        return np.cos(theta) * np.ones_like(np.asarray(theta0, dtype=np.float64))
    if kind == "rs2":
        return np.cos(theta0) * np.ones_like(np.asarray(theta, dtype=np.float64))
    raise ValueError(f"obliquity kind must be one of {OBLIQUITY_KINDS}, got {kind!r}")


def helmholtz_kirchhoff_integral(boundary: ScalarBoundary, target, k: float) -> complex:
    """Reconstruct a Helmholtz solution at an interior point from boundary data.

    Evaluates (1/4pi) * sum w [G' dPsi/dn - Psi dG'/dn] with G' = exp(iks)/s
    and outward normals; converges to Psi(target) under refinement for true
    Helmholtz solutions.  The target must lie inside the sampled surface and
    at least a tenth of a wavelength away from it.
    """
    if not isinstance(boundary, ScalarBoundary):
        boundary = ScalarBoundary.from_samples(boundary)
    tgt = np.asarray(target, dtype=np.float64)
    wavelength = 2.0 * np.pi / k
    require_interior_target(boundary.positions, boundary.normals, boundary.weights, tgt, wavelength)

    acc = KahanAccumulator(())
    n_samples = len(boundary)
    for sl in chunk_slices(n_samples, _CHUNK):
        d = boundary.positions[sl] - tgt
        s = np.linalg.norm(d, axis=1)
        gp = np.exp(1j * k * s) / s
        # dG'/dn = (ik - 1/s) G' (s_hat . n), s_hat pointing surface <- target
        radial = (1j * k - 1.0 / s) * gp / s
        dgp_dn = radial * np.einsum("ij,ij->i", d, boundary.normals[sl])
        term = boundary.weights[sl] * (
            gp * boundary.normal_derivatives[sl] - boundary.values[sl] * dgp_dn
        )
        acc.add(np.sum(term))
    return complex(acc.value / (4.0 * np.pi))


def _source_at_row(source: SourceSpec, x: float, ys: np.ndarray, k: float):
    """Illumination amplitude and incidence cosine along one aperture row."""
    if source.type == "plane-wave":
        ones = np.ones_like(ys)
        return source.amplitude * ones, ones, None
    p0 = np.asarray(source.position)
    dx = x - p0[0]
    dy = ys - p0[1]
    dz = -p0[2]
    r0 = np.sqrt(dx * dx + dy * dy + dz * dz)
    illum = source.amplitude * np.exp(1j * k * r0) / r0
    return illum, dz / r0, r0


def _fresnel_quadrature(
    values: np.ndarray,
    grid: Grid2D,
    source: SourceSpec,
    detector: DetectorSpec,
    k: float,
    kind: Optional[str],
    prefactor: complex,
) -> np.ndarray:
    """Shared aperture-to-detector quadrature.

    ``kind`` selects the scalar obliquity factor; ``None`` applies none (the
    spinor kernel carries its own matrix factor).  Accumulation is Kahan-
    compensated across aperture rows in fixed row-major order.
    """
    if detector.mode != "real-plane":
        raise ValueError("aperture-plane quadrature requires a real-plane detector")
    det_grid = detector.grid()
    px, py = det_grid.meshgrid()
    pxf = px.reshape(-1)
    pyf = py.reshape(-1)
    z = detector.z

    xs = grid.x()
    ys = grid.y()
    acc = KahanAccumulator(pxf.shape)
    min_ks = np.inf
    min_kr0 = np.inf
    for ix in range(grid.nx):
        row = values[ix]
        illum, cos0, r0 = _source_at_row(source, xs[ix], ys, k)
        s = np.sqrt((pxf[:, None] - xs[ix]) ** 2 + (pyf[:, None] - ys[None, :]) ** 2 + z * z)
        min_ks = min(min_ks, k * s.min())
        if r0 is not None:
            min_kr0 = min(min_kr0, k * r0.min())
        kernel = illum[None, :] * np.exp(1j * k * s) / s
        if kind is not None:
            cos_theta = z / s
            if kind == "kirchhoff":
                kernel = kernel * (cos0[None, :] + cos_theta) / 2.0
            elif kind == "rs1":
                kernel = kernel * cos_theta
            elif kind == "rs2":
                kernel = kernel * cos0[None, :]
            else:
                raise ValueError(f"obliquity kind must be one of {OBLIQUITY_KINDS}, got {kind!r}")
        acc.add(np.sum(kernel * row[None, :], axis=1))

    if min_ks < 10.0:
        warnings.warn(
            f"k*s as small as {min_ks:.3g}; the large-distance approximation is unreliable"
        )
    if min_kr0 < 10.0:
        warnings.warn(
            f"k*r0 as small as {min_kr0:.3g}; the large-distance approximation is unreliable"
        )
    out = prefactor * grid.cell_area * acc.value
    return out.reshape(det_grid.nx, det_grid.ny)


def kirchhoff_fresnel(
    aperture,
    source: SourceSpec,
    detector: DetectorSpec,
    k: float,
    kind: str = "kirchhoff",
) -> ScalarField2D:
    """Aperture-plane diffraction quadrature with selectable obliquity factor.

    ``aperture`` holds the transmission T(X, Y) (an ApertureMask or a complex
    ScalarField2D); the source factor exp(ik r0)/r0 is applied inside the
    kernel, so pass transmissions, not illuminated fields.  All three kinds
    share the prefactor -ik/(2 pi), which makes the kirchhoff output exactly
    the mean of the rs1 and rs2 outputs.
    """
    if kind not in OBLIQUITY_KINDS:
        raise ValueError(f"obliquity kind must be one of {OBLIQUITY_KINDS}, got {kind!r}")
    values = aperture.values
    if isinstance(aperture, ApertureMask):
        values = values.astype(np.complex128)
    out = _fresnel_quadrature(
        values, aperture.grid, source, detector, k, kind, prefactor=-1j * k / (2.0 * np.pi)
    )
    return ScalarField2D(detector.grid(), out)


def _angular_axes(detector: DetectorSpec, k: float, aperture_grid: Grid2D):
    """Transverse-wavenumber sample points of the detector, plus output grid."""
    det_grid = detector.grid()
    if detector.mode == "angular":
        kx = det_grid.x()
        ky = det_grid.y()
        if max(np.abs(kx).max(), np.abs(ky).max()) > k:
            raise ValueError("angular detector frequencies must satisfy |k_xy| <= k")
    else:
        hx, hy = aperture_grid.half_extent
        threshold = 2.0 * k * max(hx, hy) ** 2
        if detector.z < threshold:
            warnings.warn(
                f"detector distance z={detector.z:.3g} is below the far-field "
                f"threshold {threshold:.3g}; results are extrapolations"
            )
        kx = k * det_grid.x() / detector.z
        ky = k * det_grid.y() / detector.z
    return kx, ky, det_grid


def fraunhofer_scalar(aperture: ScalarField2D, k: float, detector: DetectorSpec) -> ScalarField2D:
    """Far-field transform: sum of exp(-i(kx X + ky Y)) Psi(X, Y) dX dY.

    The aperture field here is the full field in the plane (illumination
    included).  In angular mode the detector grid samples (k_x, k_y) directly
    and the result is the bare transform (unit prefactor).  In real-plane mode
    pixel (x, y) maps to (k x/z, k y/z) and the transform rides the outgoing
    spherical carrier exp(iks)/s, s = sqrt(x^2+y^2+z^2), so the output is the
    field present on the screen and stays comparable, up to one global
    constant, with the aperture-plane quadrature.
    """
    if isinstance(aperture, ApertureMask):
        aperture = ScalarField2D(aperture.grid, aperture.values.astype(np.complex128))
    kx, ky, det_grid = _angular_axes(detector, k, aperture.grid)
    xs = aperture.grid.x()
    ys = aperture.grid.y()
    left = np.exp(-1j * np.outer(kx, xs))
    right = np.exp(-1j * np.outer(ys, ky))
    out = left @ aperture.values @ right * aperture.grid.cell_area
    if detector.mode == "real-plane":
        px, py = det_grid.meshgrid()
        s = np.sqrt(px * px + py * py + detector.z**2)
        out = out * np.exp(1j * k * s) / s
    return ScalarField2D(det_grid, out)


def illuminate(mask: ApertureMask, source: SourceSpec, k: float) -> ScalarField2D:
    """Incident field sampled on the aperture grid, multiplied by the mask."""
    if source.type == "plane-wave":
        values = source.amplitude * mask.values.astype(np.complex128)
        return ScalarField2D(mask.grid, values)
    x, y = mask.grid.meshgrid()
    p0 = np.asarray(source.position)
    r = np.sqrt((x - p0[0]) ** 2 + (y - p0[1]) ** 2 + p0[2] ** 2)
    values = source.amplitude * np.exp(1j * k * r) / r * mask.values
    return ScalarField2D(mask.grid, values)

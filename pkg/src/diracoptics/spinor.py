"""Spinor diffraction propagators.

The first-order theory needs only field values on a closed surface (no normal
derivatives); paraxially it reduces to a constant 4x4 kernel applied at the
aperture followed by the scalar propagation of each component.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ._accum import KahanAccumulator, chunk_slices
from .algebra import (
    _GAMMA,
    as_particle_state,
    gamma,
    gamma_factor,
    mass_energy_matrix,
)
from .green import green_matrix_batch
from .grid import ScalarField2D, SpinorField2D
from .scalar import DetectorSpec, SourceSpec, _fresnel_quadrature, fraunhofer_scalar
from .surfaces import SpinorBoundary, require_interior_target

_CHUNK = 8192
_GAMMA_SPATIAL = np.stack(_GAMMA[1:])


def paraxial_kernel(state) -> np.ndarray:
    """Constant kernel replacing the scalar obliquity for a +z-directed beam:

        M = I + (m I + E gamma^0) gamma^3 / k.

    M maps matched Sigma_z eigen plane-wave spinors to exactly twice
    themselves, so spin projections survive paraxial diffraction unchanged,
    and it completes a bare upper spinor: M (1,0,0,0) = (1, 0, k/(E+m), 0).
    """
    st = as_particle_state(state)
    out = np.eye(4, dtype=np.complex128)
    out += mass_energy_matrix(st, conjugate=True) @ gamma(3) / st.wavenumber
    out.setflags(write=False)
    return out


def spinor_surface_integral(boundary: SpinorBoundary, target, state) -> np.ndarray:
    """Reconstruct a stationary Dirac solution at an interior point.

    Evaluates -i * sum w g(r_S, target) gamma^n Psi(r_S) over the sampled
    closed surface, with g the first-order Green's matrix and gamma^n the
    compound matrix along the outward normal.  Unlike the scalar theorem this
    consumes values only.  Exact (up to quadrature error) for boundary data
    taken from a genuine solution at the same particle state.
    """
    if not isinstance(boundary, SpinorBoundary):
        boundary = SpinorBoundary.from_samples(boundary)
    st = as_particle_state(state)
    tgt = np.asarray(target, dtype=np.float64)
    require_interior_target(
        boundary.positions, boundary.normals, boundary.weights, tgt, st.wavelength
    )

    acc = KahanAccumulator((4,))
    for sl in chunk_slices(len(boundary), _CHUNK):
        g = green_matrix_batch(boundary.positions[sl], tgt, st)
        gn = np.einsum("nj,jab->nab", boundary.normals[sl], _GAMMA_SPATIAL)
        rotated = np.einsum("nab,nbc,nc->na", g, gn, boundary.values[sl])
        acc.add(-1j * np.sum(boundary.weights[sl][:, None] * rotated, axis=0))
    return acc.value


def _apply_kernel(values: np.ndarray, m: np.ndarray) -> np.ndarray:
    return np.einsum("ab,xyb->xya", m, values)


def spinor_kirchhoff_fresnel(
    aperture: SpinorField2D,
    source: SourceSpec,
    detector: DetectorSpec,
    state,
) -> SpinorField2D:
    """Aperture-plane spinor diffraction for a +z beam.

    Per detector point: -(ik/4pi) * sum exp(ik(r0+s))/(r0 s) M Psi(X, Y) dX dY
    with M the paraxial kernel.  ``aperture`` carries the transmitted spinor
    profile; the illumination factor exp(ik r0)/r0 lives in the kernel, as in
    the scalar transmission convention.  No scalar obliquity is applied.
    """
    st = as_particle_state(state)
    k = st.wavenumber
    rotated = _apply_kernel(aperture.values, paraxial_kernel(st))
    det_grid = detector.grid()
    out = np.empty((det_grid.nx, det_grid.ny, 4), dtype=np.complex128)
    for c in range(4):
        out[:, :, c] = _fresnel_quadrature(
            rotated[:, :, c],
            aperture.grid,
            source,
            detector,
            k,
            kind=None,
            prefactor=-1j * k / (4.0 * np.pi),
        )
    return SpinorField2D(det_grid, out)


def spinor_fraunhofer(aperture: SpinorField2D, state, detector: DetectorSpec) -> SpinorField2D:
    """Far-field spinor transform: the paraxial kernel applied at the aperture,
    then the scalar far-field transform of each component independently."""
    st = as_particle_state(state)
    rotated = _apply_kernel(aperture.values, paraxial_kernel(st))
    components = [
        fraunhofer_scalar(ScalarField2D(aperture.grid, rotated[:, :, c]), st.wavenumber, detector)
        for c in range(4)
    ]
    out = np.stack([c.values for c in components], axis=-1)
    return SpinorField2D(components[0].grid, out)


@dataclass(frozen=True)
class NonrelativisticReduction:
    """Top two spinor components plus the lower-component norm diagnostic."""

    up: ScalarField2D
    down: ScalarField2D
    lower_norm_ratio: float
    kappa: float


def nonrelativistic_reduce(field: SpinorField2D, kappa: float) -> NonrelativisticReduction:
    """Project onto the top two components.

    The reported ratio ||lower components|| / ||upper components|| is O(kappa)
    for fields prepared from physical spinors and certifies how far the field
    is from its two-component reduction.
    """
    if kappa < 0:
        raise ValueError("kappa must be non-negative")
    upper = np.linalg.norm(field.values[:, :, :2])
    lower = np.linalg.norm(field.values[:, :, 2:])
    if upper == 0.0:
        ratio = 0.0 if lower == 0.0 else np.inf
    else:
        ratio = float(lower / upper)
    return NonrelativisticReduction(
        up=ScalarField2D(field.grid, field.values[:, :, 0]),
        down=ScalarField2D(field.grid, field.values[:, :, 1]),
        lower_norm_ratio=ratio,
        kappa=float(kappa),
    )


def gamma_factor_oblique(n, field: SpinorField2D) -> SpinorField2D:
    """Apply (I + gamma^n) gamma^n pixelwise.

    Exploratory tool for quantifying spin mixing away from the beam axis,
    where the z-axis kernel stops being a good approximation.
    """
    return SpinorField2D(field.grid, _apply_kernel(field.values, gamma_factor(n)))

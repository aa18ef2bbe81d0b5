"""Closed-surface sample containers and sphere quadrature rules.

Surface integrals consume flat arrays of samples; builders are provided for
the uniform (theta, phi) midpoint rule on spheres, which is second-order
accurate in the polar spacing.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterable

import numpy as np


@dataclass(frozen=True)
class BoundarySample:
    """One scalar boundary sample: value and outward normal derivative."""

    position: tuple[float, float, float]
    normal: tuple[float, float, float]
    value: complex
    normal_derivative: complex
    weight: float


@dataclass(frozen=True)
class SpinorBoundarySample:
    """One spinor boundary sample; no derivative data is needed (first-order theory)."""

    position: tuple[float, float, float]
    normal: tuple[float, float, float]
    value: np.ndarray  # shape (4,)
    weight: float


def _validate_geometry(positions, normals, weights, n):
    if positions.shape != (n, 3) or normals.shape != (n, 3):
        raise ValueError("positions and normals must have shape (N, 3)")
    if weights.shape != (n,):
        raise ValueError("weights must have shape (N,)")
    if np.any(weights <= 0.0):
        raise ValueError("quadrature weights must be positive")
    if np.any(np.abs(np.einsum("ij,ij->i", normals, normals) - 1.0) > 1e-9):
        raise ValueError("normals must be unit vectors")


@dataclass(frozen=True)
class ScalarBoundary:
    """Sampled closed surface carrying field values and outward normal derivatives."""

    positions: np.ndarray
    normals: np.ndarray
    values: np.ndarray
    normal_derivatives: np.ndarray
    weights: np.ndarray

    def __post_init__(self):
        pos = np.asarray(self.positions, dtype=np.float64)
        nrm = np.asarray(self.normals, dtype=np.float64)
        w = np.asarray(self.weights, dtype=np.float64)
        val = np.asarray(self.values, dtype=np.complex128)
        if self.normal_derivatives is None:
            raise ValueError("scalar boundary data requires normal derivatives")
        dnv = np.asarray(self.normal_derivatives, dtype=np.complex128)
        n = len(w)
        _validate_geometry(pos, nrm, w, n)
        if val.shape != (n,) or dnv.shape != (n,):
            raise ValueError("values and normal_derivatives must have shape (N,)")
        for name, arr in (("positions", pos), ("normals", nrm), ("weights", w),
                          ("values", val), ("normal_derivatives", dnv)):
            object.__setattr__(self, name, arr)

    @classmethod
    def from_samples(cls, samples: Iterable[BoundarySample]) -> "ScalarBoundary":
        rows = list(samples)
        return cls(
            positions=np.array([r.position for r in rows], dtype=np.float64),
            normals=np.array([r.normal for r in rows], dtype=np.float64),
            values=np.array([r.value for r in rows], dtype=np.complex128),
            normal_derivatives=np.array(
                [r.normal_derivative for r in rows], dtype=np.complex128
            ),
            weights=np.array([r.weight for r in rows], dtype=np.float64),
        )

    def __len__(self) -> int:
        return len(self.weights)


@dataclass(frozen=True)
class SpinorBoundary:
    """Sampled closed surface carrying spinor values only.

    The propagation theory is first order, so no derivative data exists here
    by construction.
    """

    positions: np.ndarray
    normals: np.ndarray
    values: np.ndarray  # shape (N, 4)
    weights: np.ndarray

    def __post_init__(self):
        pos = np.asarray(self.positions, dtype=np.float64)
        nrm = np.asarray(self.normals, dtype=np.float64)
        w = np.asarray(self.weights, dtype=np.float64)
        val = np.asarray(self.values, dtype=np.complex128)
        n = len(w)
        _validate_geometry(pos, nrm, w, n)
        if val.shape != (n, 4):
            raise ValueError("spinor values must have shape (N, 4)")
        for name, arr in (("positions", pos), ("normals", nrm),
                          ("weights", w), ("values", val)):
            object.__setattr__(self, name, arr)

    @classmethod
    def from_samples(cls, samples: Iterable[SpinorBoundarySample]) -> "SpinorBoundary":
        rows = list(samples)
        return cls(
            positions=np.array([r.position for r in rows], dtype=np.float64),
            normals=np.array([r.normal for r in rows], dtype=np.float64),
            values=np.array([np.asarray(r.value) for r in rows], dtype=np.complex128),
            weights=np.array([r.weight for r in rows], dtype=np.float64),
        )

    def __len__(self) -> int:
        return len(self.weights)


def sphere_quadrature(center, radius: float, n_theta: int, n_phi: int):
    """Midpoint rule on a sphere: (positions, outward_normals, weights).

    Nodes at theta_i = (i+1/2) pi/n_theta, phi_j = (j+1/2) 2 pi/n_phi with
    weights R^2 sin(theta) dtheta dphi, laid out row-major in (i, j).
    """
    if radius <= 0:
        raise ValueError("radius must be positive")
    if n_theta < 2 or n_phi < 2:
        raise ValueError("need at least 2 nodes per angle")
    c = np.asarray(center, dtype=np.float64)
    theta = (np.arange(n_theta) + 0.5) * np.pi / n_theta
    phi = (np.arange(n_phi) + 0.5) * 2.0 * np.pi / n_phi
    th, ph = np.meshgrid(theta, phi, indexing="ij")
    normals = np.stack(
        [np.sin(th) * np.cos(ph), np.sin(th) * np.sin(ph), np.cos(th)], axis=-1
    ).reshape(-1, 3)
    positions = c + radius * normals
    weights = (radius**2 * np.sin(th) * (np.pi / n_theta) * (2.0 * np.pi / n_phi)).reshape(-1)
    return positions, normals, weights


def scalar_boundary_on_sphere(center, radius, n_theta, n_phi, wave) -> ScalarBoundary:
    """Sample a wave (``value``/``gradient`` object) on a sphere."""
    pos, nrm, w = sphere_quadrature(center, radius, n_theta, n_phi)
    values = np.asarray(wave.value(pos), dtype=np.complex128)
    grad = np.asarray(wave.gradient(pos), dtype=np.complex128)
    return ScalarBoundary(pos, nrm, values, np.einsum("ij,ij->i", nrm, grad), w)


def spinor_boundary_on_sphere(
    center, radius, n_theta, n_phi, field: Callable[[np.ndarray], np.ndarray]
) -> SpinorBoundary:
    """Sample a spinor field function ((N,3) -> (N,4)) on a sphere."""
    pos, nrm, w = sphere_quadrature(center, radius, n_theta, n_phi)
    values = np.asarray(field(pos), dtype=np.complex128)
    return SpinorBoundary(pos, nrm, values, w)


def enclosed_solid_angle(positions, normals, weights, target) -> float:
    """Solid angle of the sampled surface as seen from ``target``.

    Approximately 4 pi for interior points and 0 for exterior points; used to
    enforce the interior-target precondition of the surface integrals.
    """
    d = positions - np.asarray(target, dtype=np.float64)
    s = np.linalg.norm(d, axis=1)
    return float(np.sum(weights * np.einsum("ij,ij->i", d, normals) / s**3))


def require_interior_target(positions, normals, weights, target, wavelength: float) -> None:
    """Reject targets outside the surface or closer than wavelength/10 to it."""
    d = positions - np.asarray(target, dtype=np.float64)
    s = np.linalg.norm(d, axis=1)
    if s.min() < wavelength / 10.0:
        raise ValueError(
            f"target is {s.min():.3g} from the surface; need at least wavelength/10 = "
            f"{wavelength / 10.0:.3g}"
        )
    omega = enclosed_solid_angle(positions, normals, weights, target)
    if abs(omega - 4.0 * np.pi) > 1.0:
        raise ValueError(
            f"target must lie inside the closed surface (solid angle {omega:.3f}, "
            f"expected ~{4 * np.pi:.3f})"
        )

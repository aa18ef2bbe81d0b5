"""Closed-form scalar Helmholtz solutions with analytic gradients.

Used as boundary data, as illumination models, and as inputs to
:func:`diracoptics.algebra.construct_dirac_solution`.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class PlaneWaveScalar:
    """amplitude * exp(i k d.r) for a unit propagation direction d."""

    wavenumber: float
    direction: tuple[float, float, float] = (0.0, 0.0, 1.0)
    amplitude: complex = 1.0 + 0.0j

    def __post_init__(self):
        d = np.asarray(self.direction, dtype=np.float64)
        if d.shape != (3,) or abs(d @ d - 1.0) > 1e-9:
            raise ValueError("direction must be a unit 3-vector")
        if self.wavenumber <= 0:
            raise ValueError("wavenumber must be positive")
        object.__setattr__(self, "direction", tuple(float(c) for c in d))

    def value(self, points) -> np.ndarray:
        pts = np.asarray(points, dtype=np.float64)
        d = np.asarray(self.direction)
        return self.amplitude * np.exp(1j * self.wavenumber * (pts @ d))

    def gradient(self, points) -> np.ndarray:
        pts = np.asarray(points, dtype=np.float64)
        d = np.asarray(self.direction)
        return 1j * self.wavenumber * self.value(pts)[..., None] * d


@dataclass(frozen=True)
class SphericalWaveScalar:
    """Outgoing spherical wave amplitude * exp(i k r)/r about a center point."""

    wavenumber: float
    center: tuple[float, float, float] = (0.0, 0.0, 0.0)
    amplitude: complex = 1.0 + 0.0j

    def __post_init__(self):
        if self.wavenumber <= 0:
            raise ValueError("wavenumber must be positive")
        c = np.asarray(self.center, dtype=np.float64)
        if c.shape != (3,):
            raise ValueError("center must be a 3-vector")
        object.__setattr__(self, "center", tuple(float(x) for x in c))

    def _separation(self, pts: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        d = pts - np.asarray(self.center)
        r = np.linalg.norm(d, axis=-1)
        if np.any(r < 1e-12):
            raise ValueError("requested point coincides with the wave center")
        return d, r

    def value(self, points) -> np.ndarray:
        pts = np.asarray(points, dtype=np.float64)
        _, r = self._separation(pts)
        return self.amplitude * np.exp(1j * self.wavenumber * r) / r

    def gradient(self, points) -> np.ndarray:
        pts = np.asarray(points, dtype=np.float64)
        d, r = self._separation(pts)
        v = self.amplitude * np.exp(1j * self.wavenumber * r) / r
        radial = (1j * self.wavenumber - 1.0 / r) * v
        return radial[..., None] * (d / r[..., None])

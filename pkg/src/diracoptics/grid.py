"""Uniform 2-D sampling grids and the field containers defined on them."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class Grid2D:
    """Uniform rectangular grid; ``origin`` is the center of pixel (0, 0).

    Values attached to a grid are indexed ``[ix, iy]`` (row-major), with
    pixel (ix, iy) centered at ``(origin[0] + ix*dx, origin[1] + iy*dy)``.
    """

    nx: int
    ny: int
    dx: float
    dy: float
    origin: tuple[float, float] = (0.0, 0.0)

    def __post_init__(self):
        if self.nx <= 0 or self.ny <= 0:
            raise ValueError(f"grid dimensions must be positive, got {self.nx}x{self.ny}")
        if self.dx <= 0 or self.dy <= 0:
            raise ValueError(f"grid spacing must be positive, got dx={self.dx}, dy={self.dy}")
        object.__setattr__(self, "origin", (float(self.origin[0]), float(self.origin[1])))

    @classmethod
    def centered(cls, nx: int, ny: int, dx: float, dy: float) -> "Grid2D":
        """Grid whose pixel centers are symmetric about (0, 0)."""
        return cls(nx, ny, dx, dy, (-(nx - 1) / 2 * dx, -(ny - 1) / 2 * dy))

    @classmethod
    def from_half_extent(cls, n: int, half_extent: float) -> "Grid2D":
        """Square centered grid covering [-half_extent, +half_extent] with n pixels."""
        if half_extent <= 0:
            raise ValueError("half_extent must be positive")
        d = 2.0 * half_extent / n
        return cls.centered(n, n, d, d)

    def x(self) -> np.ndarray:
        return self.origin[0] + self.dx * np.arange(self.nx)

    def y(self) -> np.ndarray:
        return self.origin[1] + self.dy * np.arange(self.ny)

    def meshgrid(self) -> tuple[np.ndarray, np.ndarray]:
        return np.meshgrid(self.x(), self.y(), indexing="ij")

    @property
    def cell_area(self) -> float:
        return self.dx * self.dy

    @property
    def half_extent(self) -> tuple[float, float]:
        """Largest |coordinate| reached by a pixel center along each axis."""
        xs, ys = self.x(), self.y()
        return max(abs(xs[0]), abs(xs[-1])), max(abs(ys[0]), abs(ys[-1]))


def _check_grid_values(grid: Grid2D, values: np.ndarray, trailing: tuple[int, ...]) -> None:
    expected = (grid.nx, grid.ny) + trailing
    if values.shape != expected:
        raise ValueError(f"values shape {values.shape} does not match grid {expected}")


@dataclass(frozen=True)
class ScalarField2D:
    """Complex amplitude sampled on a uniform grid (aperture or detector plane)."""

    grid: Grid2D
    values: np.ndarray  # complex, shape (nx, ny)

    def __post_init__(self):
        v = np.asarray(self.values, dtype=np.complex128)
        _check_grid_values(self.grid, v, ())
        object.__setattr__(self, "values", v)

    def power(self) -> float:
        """Total |amplitude|^2 integrated over the grid."""
        return float(np.sum(np.abs(self.values) ** 2) * self.grid.cell_area)


@dataclass(frozen=True)
class SpinorField2D:
    """Four-component spinor amplitude per pixel, shape (nx, ny, 4)."""

    grid: Grid2D
    values: np.ndarray

    def __post_init__(self):
        v = np.asarray(self.values, dtype=np.complex128)
        _check_grid_values(self.grid, v, (4,))
        object.__setattr__(self, "values", v)

    def component(self, c: int) -> ScalarField2D:
        if not 0 <= c < 4:
            raise ValueError(f"component index must be 0..3, got {c}")
        return ScalarField2D(self.grid, self.values[:, :, c])

    def power(self) -> float:
        return float(np.sum(np.abs(self.values) ** 2) * self.grid.cell_area)


@dataclass(frozen=True)
class ApertureMask:
    """Real transmission in [0, 1] per pixel."""

    grid: Grid2D
    values: np.ndarray

    def __post_init__(self):
        v = np.asarray(self.values, dtype=np.float64)
        _check_grid_values(self.grid, v, ())
        if v.size and (v.min() < 0.0 or v.max() > 1.0):
            raise ValueError("mask values must lie in [0, 1]")
        object.__setattr__(self, "values", v)

    def open_fraction(self) -> float:
        """Transmitting area divided by total grid area."""
        return float(self.values.mean())

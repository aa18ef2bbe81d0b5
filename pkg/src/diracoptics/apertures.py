"""Binary aperture mask generators and mask file I/O.

All generators decide each pixel by its center coordinate (no anti-aliasing),
so masks are exactly binary, mirroring physical binary holograms.
"""

from __future__ import annotations

import numpy as np

from .fgrid import FgridFormatError, read_fgrid, write_fgrid
from .grid import ApertureMask, Grid2D


def _check_radius(radius: float, grid: Grid2D) -> None:
    if radius <= 0:
        raise ValueError("radius must be positive")
    hx, hy = grid.half_extent
    if radius > min(hx, hy):
        raise ValueError(
            f"radius {radius} exceeds the grid half-extent {min(hx, hy):.6g}"
        )


def circular(radius: float, grid: Grid2D) -> ApertureMask:
    """Disk of the given radius centered on the origin."""
    _check_radius(radius, grid)
    x, y = grid.meshgrid()
    return ApertureMask(grid, (x * x + y * y <= radius * radius).astype(np.float64))


def slit(width: float, height: float, grid: Grid2D) -> ApertureMask:
    """Axis-aligned rectangle: |X| <= width/2 and |Y| <= height/2."""
    if width <= 0 or height <= 0:
        raise ValueError("slit width and height must be positive")
    hx, hy = grid.half_extent
    if width / 2 > hx or height / 2 > hy:
        raise ValueError("slit does not fit inside the grid")
    x, y = grid.meshgrid()
    mask = (np.abs(x) <= width / 2) & (np.abs(y) <= height / 2)
    return ApertureMask(grid, mask.astype(np.float64))


def double_slit(width: float, separation: float, height: float, grid: Grid2D) -> ApertureMask:
    """Two slits of the given width with center-to-center separation."""
    if width <= 0 or height <= 0:
        raise ValueError("slit width and height must be positive")
    if separation <= width:
        raise ValueError(
            f"slits overlap: separation {separation} must exceed width {width}"
        )
    hx, hy = grid.half_extent
    if separation / 2 + width / 2 > hx or height / 2 > hy:
        raise ValueError("double slit does not fit inside the grid")
    x, y = grid.meshgrid()
    in_y = np.abs(y) <= height / 2
    in_x = (np.abs(x - separation / 2) <= width / 2) | (np.abs(x + separation / 2) <= width / 2)
    return ApertureMask(grid, (in_x & in_y).astype(np.float64))


def fork_hologram(
    topological_charge: int, grating_period: float, radius: float, grid: Grid2D
) -> ApertureMask:
    """Binary grating with an edge dislocation of the given charge at the center.

    Open where cos(2 pi X / period + charge * atan2(Y, X)) > 0 inside the
    disk of the given radius; diffraction orders then carry a quantized phase
    winding of charge times the order index.
    """
    charge = int(topological_charge)
    if charge != topological_charge:
        raise ValueError("topological charge must be an integer")
    if grating_period <= 2.0 * max(grid.dx, grid.dy):
        raise ValueError(
            f"grating period {grating_period} is not resolvable on spacing "
            f"{max(grid.dx, grid.dy)} (need period > 2 pixels)"
        )
    _check_radius(radius, grid)
    x, y = grid.meshgrid()
    arg = 2.0 * np.pi * x / grating_period + charge * np.arctan2(y, x)
    mask = (np.cos(arg) > 0.0) & (x * x + y * y <= radius * radius)
    return ApertureMask(grid, mask.astype(np.float64))


def save_mask(mask: ApertureMask, path) -> None:
    """Write a mask as a 1-component fgrid file (zero imaginary column, k=0)."""
    write_fgrid(path, mask.grid, mask.values.astype(np.complex128), 0.0)


def load_mask(path) -> ApertureMask:
    """Read a mask file, rejecting non-real or out-of-range values."""
    data = read_fgrid(path)
    if data.components != 1:
        raise FgridFormatError(f"mask files must have components=1, got {data.components}")
    imag = np.abs(data.values.imag)
    if imag.max() > 0.0:
        ix, iy = np.unravel_index(int(np.argmax(imag)), data.values.shape)
        raise FgridFormatError(
            f"mask values must be real; nonzero imaginary part at pixel ({ix}, {iy})"
        )
    real = data.values.real
    bad = (real < 0.0) | (real > 1.0)
    if bad.any():
        ix, iy = np.unravel_index(int(np.argmax(bad)), real.shape)
        raise FgridFormatError(
            f"mask value {real[ix, iy]} outside [0, 1] at pixel ({ix}, {iy})"
        )
    return ApertureMask(data.grid, real)

"""Observables and field-comparison metrics.

Phase and spin-density maps are numpy masked arrays: pixels with negligible
amplitude (below ``UNDEFINED_THRESHOLD``) are masked rather than propagated
as NaN.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .algebra import SIGMA_Z
from .grid import ScalarField2D, SpinorField2D

UNDEFINED_THRESHOLD = 1e-30


def _values(field) -> np.ndarray:
    if isinstance(field, (ScalarField2D, SpinorField2D)):
        return field.values
    return np.asarray(field)


def intensity(field) -> np.ndarray:
    """|amplitude|^2 per pixel; spinor fields sum over the four components."""
    v = _values(field)
    out = np.abs(v) ** 2
    if out.ndim == 3:
        out = out.sum(axis=-1)
    return out


def phase(field) -> np.ma.MaskedArray:
    """Principal-value argument per pixel, in (-pi, pi]; numpy puts negative
    reals at +pi.  Pixels below the amplitude threshold are masked."""
    v = _values(field)
    if v.ndim != 2:
        raise ValueError("phase expects a scalar field or one spinor component")
    return np.ma.masked_array(np.angle(v), mask=np.abs(v) < UNDEFINED_THRESHOLD)


def spin_density(field: SpinorField2D) -> np.ma.MaskedArray:
    """Sigma_z expectation per pixel; zero-norm pixels are masked, not NaN."""
    v = _values(field)
    if v.ndim != 3 or v.shape[-1] != 4:
        raise ValueError("spin density requires a 4-component spinor field")
    weights = np.real(np.diag(SIGMA_Z))
    norm2 = np.sum(np.abs(v) ** 2, axis=-1)
    numer = np.sum(np.abs(v) ** 2 * weights, axis=-1)
    mask = norm2 < UNDEFINED_THRESHOLD
    safe = np.where(mask, 1.0, norm2)
    return np.ma.masked_array(numer / safe, mask=mask)


@dataclass(frozen=True)
class WindingResult:
    """Integer phase winding around a loop plus the pre-rounding residual."""

    value: int
    residual: float


def winding_number(phase_map, center, radius: float) -> WindingResult:
    """Phase winding around a pixel-space circle.

    Sums wrapped phase differences over 8*radius nearest-pixel samples of the
    loop and divides by 2 pi.  The loop must stay on the grid, use a radius of
    at least 3 px, and avoid masked pixels.
    """
    p = np.ma.asarray(phase_map)
    if radius < 3.0:
        raise ValueError("loop radius must be at least 3 pixels")
    cx, cy = float(center[0]), float(center[1])
    n = int(round(8 * radius))
    t = 2.0 * np.pi * np.arange(n) / n
    ix = np.rint(cx + radius * np.cos(t)).astype(int)
    iy = np.rint(cy + radius * np.sin(t)).astype(int)
    if ix.min() < 0 or iy.min() < 0 or ix.max() >= p.shape[0] or iy.max() >= p.shape[1]:
        raise ValueError("winding loop leaves the grid")
    if np.ma.is_masked(p[ix, iy]):
        raise ValueError("winding loop crosses a masked (undefined-phase) pixel")
    samples = np.asarray(p[ix, iy], dtype=np.float64)
    diffs = np.diff(np.concatenate([samples, samples[:1]]))
    wrapped = (diffs + np.pi) % (2.0 * np.pi) - np.pi
    total = float(wrapped.sum() / (2.0 * np.pi))
    value = int(round(total))
    return WindingResult(value=value, residual=total - value)


@dataclass(frozen=True)
class ComparisonReport:
    """Field difference metrics, optionally after a global complex-scale fit."""

    l2_relative: float
    max_abs: float
    global_scale: complex


def compare(a, b, align: bool = False) -> ComparisonReport:
    """Compare field b against reference pattern a.

    With ``align=True`` first fits the single complex scale alpha minimizing
    ||b - alpha a||, reported as ``global_scale``; useful where a formula is
    defined only up to proportionality.
    """
    va = _values(a)
    vb = _values(b)
    if va.shape != vb.shape:
        raise ValueError(f"shape mismatch: {va.shape} vs {vb.shape}")
    fa = va.reshape(-1).astype(np.complex128)
    fb = vb.reshape(-1).astype(np.complex128)
    if align:
        denom = np.vdot(fa, fa)
        alpha = complex(np.vdot(fa, fb) / denom) if denom != 0 else 0.0 + 0.0j
    else:
        alpha = 1.0 + 0.0j
    diff = fb - alpha * fa
    norm_b = np.linalg.norm(fb)
    norm_diff = np.linalg.norm(diff)
    if norm_b == 0.0:
        l2 = 0.0 if norm_diff == 0.0 else np.inf
    else:
        l2 = float(norm_diff / norm_b)
    return ComparisonReport(
        l2_relative=l2,
        max_abs=float(np.abs(diff).max()) if diff.size else 0.0,
        global_scale=alpha,
    )

"""Portable text format for sampled fields (fgrid v1).

Header lines ``#fgrid v1``, ``nx=``, ``ny=``, ``dx=``, ``dy=``, ``origin=``,
``components=`` (1 or 4) and ``k=`` are followed by nx*ny data lines of
2*components floating point columns (re, im per component), row-major in
(ix, iy), printed with 17 significant digits so round trips are bit exact.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .grid import Grid2D

MAGIC = "#fgrid v1"
_HEADER_KEYS = ("nx", "ny", "dx", "dy", "origin", "components", "k")


class FgridFormatError(ValueError):
    """Malformed fgrid file; carries the offending line and byte offset."""

    def __init__(self, message: str, line: Optional[int] = None, byte_offset: Optional[int] = None):
        where = []
        if line is not None:
            where.append(f"line {line}")
        if byte_offset is not None:
            where.append(f"byte offset {byte_offset}")
        suffix = f" ({', '.join(where)})" if where else ""
        super().__init__(message + suffix)
        self.line = line
        self.byte_offset = byte_offset


@dataclass(frozen=True)
class FgridFile:
    """Parsed fgrid contents: grid metadata, sample values, and wavenumber."""

    grid: Grid2D
    values: np.ndarray  # (nx, ny) or (nx, ny, 4) complex
    wavenumber: float

    @property
    def components(self) -> int:
        return 1 if self.values.ndim == 2 else 4


def write_fgrid(path, grid: Grid2D, values: np.ndarray, wavenumber: float) -> None:
    """Write a 1- or 4-component complex field; see the module header for layout."""
    v = np.asarray(values, dtype=np.complex128)
    if v.shape == (grid.nx, grid.ny):
        components = 1
        flat = v.reshape(grid.nx * grid.ny, 1)
    elif v.shape == (grid.nx, grid.ny, 4):
        components = 4
        flat = v.reshape(grid.nx * grid.ny, 4)
    else:
        raise ValueError(f"values shape {v.shape} does not match grid {grid.nx}x{grid.ny}")

    with open(path, "w", newline="\n") as fh:
        fh.write(MAGIC + "\n")
        fh.write(f"nx={grid.nx}\n")
        fh.write(f"ny={grid.ny}\n")
        fh.write(f"dx={grid.dx:.17g}\n")
        fh.write(f"dy={grid.dy:.17g}\n")
        fh.write(f"origin={grid.origin[0]:.17g} {grid.origin[1]:.17g}\n")
        fh.write(f"components={components}\n")
        fh.write(f"k={wavenumber:.17g}\n")
        for row in flat:
            cols = []
            for c in range(components):
                cols.append(f"{row[c].real:.17g}")
                cols.append(f"{row[c].imag:.17g}")
            fh.write(" ".join(cols) + "\n")


class _LineReader:
    """Line iterator over a binary stream that tracks line number and byte offset."""

    def __init__(self, fh):
        self._fh = fh
        self.line = 0
        self.byte_offset = 0

    def next_line(self) -> Optional[str]:
        raw = self._fh.readline()
        if raw == b"":
            return None
        self.line += 1
        self.byte_offset += len(raw)
        try:
            return raw.decode("ascii").rstrip("\n").rstrip("\r")
        except UnicodeDecodeError as exc:
            raise FgridFormatError(
                f"non-ascii bytes in data: {exc}", self.line, self.byte_offset
            ) from None


def _parse_header_value(reader: _LineReader, text: Optional[str], key: str) -> str:
    if text is None:
        raise FgridFormatError(
            f"truncated header: missing key '{key}'", reader.line, reader.byte_offset
        )
    prefix = key + "="
    if not text.startswith(prefix):
        raise FgridFormatError(
            f"malformed header: expected key '{key}', got {text!r}",
            reader.line,
            reader.byte_offset,
        )
    return text[len(prefix):]


def read_fgrid(path) -> FgridFile:
    """Parse an fgrid v1 file, rejecting malformed input with position diagnostics."""
    with open(path, "rb") as fh:
        reader = _LineReader(fh)
        first = reader.next_line()
        if first is None or first != MAGIC:
            raise FgridFormatError(
                f"malformed header: expected {MAGIC!r}, got {first!r}",
                reader.line or 1,
                reader.byte_offset,
            )
        raw: dict[str, str] = {}
        for key in _HEADER_KEYS:
            raw[key] = _parse_header_value(reader, reader.next_line(), key)

        try:
            nx = int(raw["nx"])
            ny = int(raw["ny"])
            dx = float(raw["dx"])
            dy = float(raw["dy"])
            origin_parts = raw["origin"].split()
            if len(origin_parts) != 2:
                raise ValueError(f"origin needs two coordinates, got {raw['origin']!r}")
            origin = (float(origin_parts[0]), float(origin_parts[1]))
            components = int(raw["components"])
            wavenumber = float(raw["k"])
        except ValueError as exc:
            raise FgridFormatError(
                f"malformed header value: {exc}", reader.line, reader.byte_offset
            ) from None
        if components not in (1, 4):
            raise FgridFormatError(
                f"components must be 1 or 4, got {components}", reader.line, reader.byte_offset
            )
        try:
            grid = Grid2D(nx, ny, dx, dy, origin)
        except ValueError as exc:
            raise FgridFormatError(str(exc), reader.line, reader.byte_offset) from None

        n_rows = nx * ny
        n_cols = 2 * components
        data = np.empty((n_rows, n_cols), dtype=np.float64)
        for i in range(n_rows):
            text = reader.next_line()
            if text is None:
                raise FgridFormatError(
                    f"truncated data: expected {n_rows} rows, got {i}",
                    reader.line,
                    reader.byte_offset,
                )
            parts = text.split()
            if len(parts) != n_cols:
                raise FgridFormatError(
                    f"expected {n_cols} columns, got {len(parts)}",
                    reader.line,
                    reader.byte_offset,
                )
            try:
                data[i] = [float(p) for p in parts]
            except ValueError as exc:
                raise FgridFormatError(
                    f"bad number: {exc}", reader.line, reader.byte_offset
                ) from None
        trailing = reader.next_line()
        if trailing is not None and trailing.strip():
            raise FgridFormatError(
                f"unexpected trailing content {trailing!r}", reader.line, reader.byte_offset
            )

    values = data[:, 0::2] + 1j * data[:, 1::2]
    if components == 1:
        values = values.reshape(nx, ny)
    else:
        values = values.reshape(nx, ny, 4)
    return FgridFile(grid=grid, values=values, wavenumber=wavenumber)

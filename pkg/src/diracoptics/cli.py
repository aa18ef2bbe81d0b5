"""Command line front end: generate apertures, run propagations, analyze fields.

Run configs are line-oriented ``key = value`` files with ``[section]``
headers (see README for the schema).  Field data moves through fgrid v1
files.  Exit codes: 0 success, 1 runtime/numerical failure, 2 usage or
config error.
"""

from __future__ import annotations

import argparse
import configparser
import sys
import time
from dataclasses import dataclass
from typing import Optional

import numpy as np

from . import apertures
from .algebra import ParticleState, plane_wave_spinor
from .analysis import compare, intensity, phase, spin_density, winding_number
from .fgrid import FgridFormatError, read_fgrid, write_fgrid
from .grid import ApertureMask, Grid2D, ScalarField2D, SpinorField2D
from .scalar import (
    DetectorSpec,
    SourceSpec,
    fraunhofer_scalar,
    helmholtz_kirchhoff_integral,
    illuminate,
    kirchhoff_fresnel,
)
from .spinor import spinor_fraunhofer, spinor_kirchhoff_fresnel
from .surfaces import scalar_boundary_on_sphere
from .waves import PlaneWaveScalar, SphericalWaveScalar

METHODS = (
    "helmholtz-kirchhoff",
    "kirchhoff",
    "rs1",
    "rs2",
    "fraunhofer",
    "spinor-kirchhoff",
    "spinor-fraunhofer",
)
SPINOR_METHODS = ("spinor-kirchhoff", "spinor-fraunhofer")

_SCHEMA = {
    "run": {"method", "k", "energy", "mass", "spin", "spin_components"},
    "source": {"type", "position", "amplitude"},
    "aperture": {"kind", "path", "grid", "extent", "radius", "width", "height",
                 "separation", "charge", "period"},
    "detector": {"mode", "z", "nx", "ny", "dx", "dy", "origin"},
    "surface": {"radius", "n_theta", "n_phi"},
    "output": {"field"},
}


class ConfigError(Exception):
    """Configuration or usage problem; maps to exit code 2."""


@dataclass
class RunConfig:
    method: str
    state: ParticleState
    spin: Optional[np.ndarray]
    source: SourceSpec
    mask: Optional[ApertureMask]
    detector: DetectorSpec
    surface_radius: Optional[float]
    surface_n_theta: int
    surface_n_phi: int
    output_field: str


def _section(cp: configparser.ConfigParser, name: str, required: bool):
    if not cp.has_section(name):
        if required:
            raise ConfigError(f"missing required section [{name}]")
        return None
    for key in cp.options(name):
        if key not in _SCHEMA[name]:
            raise ConfigError(f"unknown key [{name}].{key}")
    return dict(cp.items(name))


def _require(section: dict, sec_name: str, key: str) -> str:
    if key not in section:
        raise ConfigError(f"missing required key [{sec_name}].{key}")
    return section[key]


def _parse_float(section: dict, sec_name: str, key: str, default=None) -> float:
    if key not in section:
        if default is None:
            raise ConfigError(f"missing required key [{sec_name}].{key}")
        return default
    try:
        return float(section[key])
    except ValueError:
        raise ConfigError(f"[{sec_name}].{key} must be a number, got {section[key]!r}") from None


def _parse_int(section: dict, sec_name: str, key: str, default=None) -> int:
    if key not in section:
        if default is None:
            raise ConfigError(f"missing required key [{sec_name}].{key}")
        return default
    try:
        return int(section[key])
    except ValueError:
        raise ConfigError(f"[{sec_name}].{key} must be an integer, got {section[key]!r}") from None


def _parse_floats(section: dict, sec_name: str, key: str, count: int) -> tuple:
    parts = _require(section, sec_name, key).split()
    if len(parts) != count:
        raise ConfigError(f"[{sec_name}].{key} needs {count} numbers, got {len(parts)}")
    try:
        return tuple(float(p) for p in parts)
    except ValueError:
        raise ConfigError(f"[{sec_name}].{key} must be numbers, got {section[key]!r}") from None


def _parse_state(run: dict) -> ParticleState:
    has_k = "k" in run
    has_em = "energy" in run or "mass" in run
    if has_k and has_em:
        raise ConfigError("[run] must set either k or energy+mass, not both")
    try:
        if has_k:
            return ParticleState.massless(_parse_float(run, "run", "k"))
        if "energy" in run and "mass" in run:
            return ParticleState.from_energy_mass(
                _parse_float(run, "run", "energy"), _parse_float(run, "run", "mass")
            )
    except ValueError as exc:
        raise ConfigError(str(exc)) from None
    raise ConfigError("missing required key [run].k (or [run].energy with [run].mass)")


def _parse_source(section: Optional[dict]) -> SourceSpec:
    if section is None:
        return SourceSpec()
    stype = section.get("type", "plane-wave")
    amplitude = 1.0 + 0.0j
    if "amplitude" in section:
        parts = section["amplitude"].split()
        if len(parts) not in (1, 2):
            raise ConfigError("[source].amplitude needs one or two numbers (re [im])")
        try:
            amplitude = complex(float(parts[0]), float(parts[1]) if len(parts) == 2 else 0.0)
        except ValueError:
            raise ConfigError(f"[source].amplitude must be numbers, got {section['amplitude']!r}") from None
    position = None
    if stype == "point-source":
        position = _parse_floats(section, "source", "position", 3)
    try:
        return SourceSpec(type=stype, position=position, amplitude=amplitude)
    except ValueError as exc:
        raise ConfigError(str(exc)) from None


def _build_mask(section: dict) -> ApertureMask:
    if "path" in section:
        try:
            return apertures.load_mask(section["path"])
        except (OSError, FgridFormatError) as exc:
            raise ConfigError(f"cannot read mask file {section['path']!r}: {exc}") from None
    kind = _require(section, "aperture", "kind")
    n = _parse_int(section, "aperture", "grid")
    extent = _parse_float(section, "aperture", "extent")
    try:
        grid = Grid2D.from_half_extent(n, extent)
        if kind == "circular":
            return apertures.circular(_parse_float(section, "aperture", "radius"), grid)
        if kind == "slit":
            return apertures.slit(
                _parse_float(section, "aperture", "width"),
                _parse_float(section, "aperture", "height"),
                grid,
            )
        if kind == "double-slit":
            return apertures.double_slit(
                _parse_float(section, "aperture", "width"),
                _parse_float(section, "aperture", "separation"),
                _parse_float(section, "aperture", "height"),
                grid,
            )
        if kind == "fork":
            return apertures.fork_hologram(
                _parse_int(section, "aperture", "charge", default=1),
                _parse_float(section, "aperture", "period", default=16.0 * grid.dx),
                _parse_float(section, "aperture", "radius", default=0.875 * extent),
                grid,
            )
    except ValueError as exc:
        raise ConfigError(str(exc)) from None
    raise ConfigError(f"unknown aperture kind {kind!r}")


def _parse_detector(section: dict) -> DetectorSpec:
    origin = None
    if "origin" in section:
        origin = _parse_floats(section, "detector", "origin", 2)
    try:
        return DetectorSpec(
            z=_parse_float(section, "detector", "z"),
            nx=_parse_int(section, "detector", "nx"),
            ny=_parse_int(section, "detector", "ny"),
            dx=_parse_float(section, "detector", "dx"),
            dy=_parse_float(section, "detector", "dy"),
            mode=section.get("mode", "real-plane"),
            origin=origin,
        )
    except ValueError as exc:
        raise ConfigError(str(exc)) from None


def parse_config(path) -> RunConfig:
    cp = configparser.ConfigParser(interpolation=None)
    try:
        with open(path) as fh:
            cp.read_file(fh, source=str(path))
    except OSError as exc:
        raise ConfigError(f"cannot read config {path!r}: {exc}") from None
    except configparser.Error as exc:
        raise ConfigError(f"config syntax error: {exc}") from None
    for name in cp.sections():
        if name not in _SCHEMA:
            raise ConfigError(f"unknown section [{name}]")

    run = _section(cp, "run", required=True)
    method = _require(run, "run", "method")
    if method not in METHODS:
        raise ConfigError(f"[run].method must be one of {', '.join(METHODS)}; got {method!r}")
    state = _parse_state(run)

    spin = None
    if method in SPINOR_METHODS:
        kind = run.get("spin", "up")
        if kind == "custom":
            spin = _parse_spin_custom(run)
        elif kind in ("up", "down"):
            spin = np.asarray(plane_wave_spinor(state, spin=kind))
        else:
            raise ConfigError(f"[run].spin must be up, down or custom, got {kind!r}")
    elif "spin" in run or "spin_components" in run:
        raise ConfigError(f"[run].spin requires a spinor method, not {method!r}")

    source = _parse_source(_section(cp, "source", required=False))

    mask = None
    if method != "helmholtz-kirchhoff":
        aperture_sec = _section(cp, "aperture", required=True)
        mask = _build_mask(aperture_sec)
    elif cp.has_section("aperture"):
        raise ConfigError("method helmholtz-kirchhoff takes no [aperture] section")

    detector = _parse_detector(_section(cp, "detector", required=True))

    surface_radius = None
    n_theta, n_phi = 96, 192
    surface = _section(cp, "surface", required=(method == "helmholtz-kirchhoff"))
    if method == "helmholtz-kirchhoff":
        surface_radius = _parse_float(surface, "surface", "radius")
        n_theta = _parse_int(surface, "surface", "n_theta", default=96)
        n_phi = _parse_int(surface, "surface", "n_phi", default=192)
    elif surface is not None:
        raise ConfigError("[surface] applies only to method helmholtz-kirchhoff")

    output = _section(cp, "output", required=True)
    return RunConfig(
        method=method,
        state=state,
        spin=spin,
        source=source,
        mask=mask,
        detector=detector,
        surface_radius=surface_radius,
        surface_n_theta=n_theta,
        surface_n_phi=n_phi,
        output_field=_require(output, "output", "field"),
    )


def _parse_spin_custom(run: dict) -> np.ndarray:
    parts = _require(run, "run", "spin_components").split()
    if len(parts) != 8:
        raise ConfigError("[run].spin_components needs 8 numbers (re im per component)")
    try:
        vals = [float(p) for p in parts]
    except ValueError:
        raise ConfigError("[run].spin_components must be numbers") from None
    spinor = np.array(
        [complex(vals[2 * i], vals[2 * i + 1]) for i in range(4)], dtype=np.complex128
    )
    if np.linalg.norm(spinor) == 0.0:
        raise ConfigError("[run].spin_components must not be all zero")
    return spinor


def _run_helmholtz_kirchhoff(cfg: RunConfig) -> ScalarField2D:
    k = cfg.state.wavenumber
    wavelength = cfg.state.wavelength
    center = np.array([0.0, 0.0, cfg.detector.z])
    radius = cfg.surface_radius
    det_grid = cfg.detector.grid()
    hx, hy = det_grid.half_extent
    if np.hypot(hx, hy) > radius - wavelength / 10.0:
        raise ConfigError(
            f"[surface].radius {radius} too small for the detector extent "
            f"{np.hypot(hx, hy):.6g} (need clearance of a tenth wavelength)"
        )
    if cfg.source.type == "plane-wave":
        wave = PlaneWaveScalar(k, (0.0, 0.0, 1.0), cfg.source.amplitude)
    else:
        p0 = np.asarray(cfg.source.position)
        if np.linalg.norm(p0 - center) <= radius:
            raise ConfigError("point source must lie outside the integration sphere")
        wave = SphericalWaveScalar(k, tuple(p0), cfg.source.amplitude)
    boundary = scalar_boundary_on_sphere(
        center, radius, cfg.surface_n_theta, cfg.surface_n_phi, wave
    )
    xs, ys = det_grid.meshgrid()
    out = np.empty((det_grid.nx, det_grid.ny), dtype=np.complex128)
    for ix in range(det_grid.nx):
        for iy in range(det_grid.ny):
            target = np.array([xs[ix, iy], ys[ix, iy], cfg.detector.z])
            out[ix, iy] = helmholtz_kirchhoff_integral(boundary, target, k)
    return ScalarField2D(det_grid, out)


def _run_propagation(cfg: RunConfig):
    k = cfg.state.wavenumber
    if cfg.method == "helmholtz-kirchhoff":
        return _run_helmholtz_kirchhoff(cfg)
    if cfg.method in ("kirchhoff", "rs1", "rs2"):
        return kirchhoff_fresnel(cfg.mask, cfg.source, cfg.detector, k, kind=cfg.method)
    if cfg.method == "fraunhofer":
        field = illuminate(cfg.mask, cfg.source, k)
        return fraunhofer_scalar(field, k, cfg.detector)
    if cfg.method == "spinor-fraunhofer":
        field = illuminate(cfg.mask, cfg.source, k)
        spinor_field = SpinorField2D(
            field.grid, field.values[:, :, None] * cfg.spin[None, None, :]
        )
        return spinor_fraunhofer(spinor_field, cfg.state, cfg.detector)
    if cfg.method == "spinor-kirchhoff":
        profile = SpinorField2D(
            cfg.mask.grid,
            cfg.mask.values.astype(np.complex128)[:, :, None] * cfg.spin[None, None, :],
        )
        return spinor_kirchhoff_fresnel(profile, cfg.source, cfg.detector, cfg.state)
    raise ConfigError(f"unhandled method {cfg.method!r}")


def cmd_propagate(args) -> int:
    cfg = parse_config(args.config)
    start = time.perf_counter()
    field = _run_propagation(cfg)
    elapsed = time.perf_counter() - start
    write_fgrid(cfg.output_field, field.grid, field.values, cfg.state.wavenumber)
    inten = intensity(field)
    peak = np.unravel_index(int(np.argmax(inten)), inten.shape)
    print(f"method={cfg.method}")
    print(f"total_power={field.power():.17g}")
    print(f"peak_ix={peak[0]}")
    print(f"peak_iy={peak[1]}")
    print(f"peak_intensity={inten[peak]:.17g}")
    print(f"runtime_s={elapsed:.3f}")
    print(f"wrote {cfg.output_field}")
    return 0


def cmd_aperture(args) -> int:
    try:
        grid = Grid2D.from_half_extent(args.grid, args.extent)
        if args.kind == "circular":
            if args.radius is None:
                raise ConfigError("--kind circular requires --radius")
            mask = apertures.circular(args.radius, grid)
        elif args.kind == "slit":
            if args.width is None or args.height is None:
                raise ConfigError("--kind slit requires --width and --height")
            mask = apertures.slit(args.width, args.height, grid)
        elif args.kind == "double-slit":
            if args.width is None or args.height is None or args.separation is None:
                raise ConfigError(
                    "--kind double-slit requires --width, --separation and --height"
                )
            mask = apertures.double_slit(args.width, args.separation, args.height, grid)
        else:  # fork; argparse restricts choices
            period = args.period if args.period is not None else 16.0 * grid.dx
            radius = args.radius if args.radius is not None else 0.875 * args.extent
            mask = apertures.fork_hologram(args.charge, period, radius, grid)
    except ValueError as exc:
        raise ConfigError(str(exc)) from None
    apertures.save_mask(mask, args.out)
    print(f"open_fraction={mask.open_fraction():.9g}")
    print(f"wrote {args.out}")
    return 0


def _load_field(path):
    try:
        return read_fgrid(path)
    except (OSError, FgridFormatError) as exc:
        raise ConfigError(f"cannot read field file {path!r}: {exc}") from None


def _field_object(data):
    if data.components == 1:
        return ScalarField2D(data.grid, data.values)
    return SpinorField2D(data.grid, data.values)


def cmd_analyze(args) -> int:
    data = _load_field(args.field)
    field = _field_object(data)

    if args.analysis == "intensity":
        out = intensity(field).astype(np.complex128)
        _write_derived(args, data, out)
        return 0

    if args.analysis == "phase":
        component = _component_values(data, args.component)
        ph = phase(component)
        out = np.ma.filled(ph, np.nan).astype(np.complex128)
        _write_derived(args, data, out)
        return 0

    if args.analysis == "spin":
        if data.components != 4:
            raise ConfigError("spin analysis requires a 4-component field file")
        sd = spin_density(field)
        out = np.ma.filled(sd, np.nan).astype(np.complex128)
        _write_derived(args, data, out)
        return 0

    if args.analysis == "winding":
        if args.center is None or args.radius is None:
            raise ConfigError("winding analysis requires --center and --radius")
        parts = args.center.split(",")
        if len(parts) != 2:
            raise ConfigError("--center must be 'ix,iy' in pixels")
        component = _component_values(data, args.component)
        try:
            result = winding_number(phase(component), (float(parts[0]), float(parts[1])), args.radius)
        except ValueError as exc:
            raise ConfigError(str(exc)) from None
        print(f"winding={result.value}")
        print(f"residual={result.residual:.9g}")
        return 0

    # compare
    if not args.other:
        raise ConfigError("compare analysis requires --other")
    others = [_load_field(p) for p in args.other.split(",")]
    for other in others:
        if other.values.shape != data.values.shape:
            raise ConfigError(
                f"shape mismatch: {other.values.shape} vs {data.values.shape}"
            )
    reference = others[0].values.astype(np.complex128)
    for other in others[1:]:
        reference = reference + other.values
    reference /= len(others)
    report = compare(reference, data.values, align=args.align)
    print(f"l2_relative={report.l2_relative:.9g}")
    print(f"max_abs={report.max_abs:.9g}")
    print(f"global_scale_re={report.global_scale.real:.9g}")
    print(f"global_scale_im={report.global_scale.imag:.9g}")
    return 0


def _component_values(data, component: int):
    if data.components == 1:
        return data.values
    if not 0 <= component < 4:
        raise ConfigError(f"--component must be 0..3, got {component}")
    return data.values[:, :, component]


def _write_derived(args, data, values: np.ndarray) -> None:
    if args.out is None:
        raise ConfigError(f"{args.analysis} analysis requires --out")
    write_fgrid(args.out, data.grid, values, data.wavenumber)
    print(f"wrote {args.out}")


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="diracoptics",
        description="Scalar and spinor diffraction runs over fgrid files.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    ap = sub.add_parser("aperture", help="generate an aperture mask file")
    ap.add_argument("--kind", required=True, choices=["circular", "slit", "double-slit", "fork"])
    ap.add_argument("--grid", type=int, required=True, help="pixels per side")
    ap.add_argument("--extent", type=float, required=True, help="half-width of the window")
    ap.add_argument("--radius", type=float)
    ap.add_argument("--width", type=float)
    ap.add_argument("--height", type=float)
    ap.add_argument("--separation", type=float)
    ap.add_argument("--charge", type=int, default=1)
    ap.add_argument("--period", type=float)
    ap.add_argument("--out", required=True)
    ap.set_defaults(func=cmd_aperture)

    pp = sub.add_parser("propagate", help="run a propagation described by a config file")
    pp.add_argument("--config", required=True)
    pp.set_defaults(func=cmd_propagate)

    an = sub.add_parser("analyze", help="derive observables from a field file")
    an.add_argument("--field", required=True)
    an.add_argument(
        "--analysis", required=True, choices=["intensity", "phase", "spin", "winding", "compare"]
    )
    an.add_argument("--component", type=int, default=0)
    an.add_argument("--out")
    an.add_argument("--center", help="loop center 'ix,iy' in pixels (winding)")
    an.add_argument("--radius", type=float, help="loop radius in pixels (winding)")
    an.add_argument("--other", help="comparison file(s); comma-separated lists are averaged")
    an.add_argument("--align", action="store_true", help="fit a global complex scale first")
    an.set_defaults(func=cmd_analyze)
    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except Exception as exc:  # numerical/runtime failure
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())

"""Command line interface: subcommands, config validation, exit codes, files."""

import textwrap

import numpy as np
import pytest

from diracoptics import load_mask, read_fgrid
from diracoptics.cli import main


def _kv(output: str) -> dict:
    pairs = {}
    for line in output.splitlines():
        if "=" in line:
            key, _, value = line.partition("=")
            pairs[key.strip()] = value.strip()
    return pairs


def test_aperture_circular_open_fraction(tmp_path, capsys):
    out = tmp_path / "circle.fgrid"
    rc = main(
        [
            "aperture", "--kind", "circular", "--radius", "1.0",
            "--grid", "512", "--extent", "4.0", "--out", str(out),
        ]
    )
    assert rc == 0
    fraction = float(_kv(capsys.readouterr().out)["open_fraction"])
    assert fraction == pytest.approx(np.pi / 64.0, rel=0.01)
    assert out.exists()


def test_aperture_fork_has_dislocation(tmp_path, capsys):
    out = tmp_path / "fork.fgrid"
    rc = main(
        [
            "aperture", "--kind", "fork", "--charge", "1", "--period", "0.25",
            "--grid", "256", "--extent", "2.0", "--radius", "1.5", "--out", str(out),
        ]
    )
    assert rc == 0
    mask = load_mask(out)
    center = 128
    upper = int(np.sum(np.abs(np.diff(mask.values[:, center + 8])) > 0))
    lower = int(np.sum(np.abs(np.diff(mask.values[:, center - 9])) > 0))
    assert abs(upper - lower) == 2


def test_aperture_invalid_kind_exits_2(tmp_path, capsys):
    with pytest.raises(SystemExit) as err:
        main(["aperture", "--kind", "gaussian", "--grid", "8", "--extent", "1.0",
              "--out", str(tmp_path / "x.fgrid")])
    assert err.value.code == 2
    assert "usage" in capsys.readouterr().err


def test_aperture_missing_parameter_exits_2(tmp_path, capsys):
    rc = main(["aperture", "--kind", "circular", "--grid", "8", "--extent", "1.0",
               "--out", str(tmp_path / "x.fgrid")])
    assert rc == 2
    assert "--radius" in capsys.readouterr().err


FRAUNHOFER_CONFIG = """\
[run]
method = fraunhofer
k = 6.283185307179586

[aperture]
kind = circular
grid = 128
extent = 2.0
radius = 1.0

[detector]
mode = angular
z = 1.0
nx = 32
ny = 32
dx = 0.15
dy = 0.15
origin = -2.4 -2.4

[output]
field = {field}
"""


def test_propagate_fraunhofer_airy(tmp_path, capsys):
    field_path = tmp_path / "airy.fgrid"
    cfg = tmp_path / "run.cfg"
    cfg.write_text(FRAUNHOFER_CONFIG.format(field=field_path))
    rc = main(["propagate", "--config", str(cfg)])
    assert rc == 0
    summary = _kv(capsys.readouterr().out)
    assert int(summary["peak_ix"]) == 16  # k_x = 0 pixel
    assert int(summary["peak_iy"]) == 16
    data = read_fgrid(field_path)
    assert data.components == 1
    assert data.wavenumber == pytest.approx(2 * np.pi)


def test_propagate_deterministic_outputs(tmp_path):
    a = tmp_path / "a.fgrid"
    b = tmp_path / "b.fgrid"
    for path in (a, b):
        cfg = tmp_path / f"{path.stem}.cfg"
        cfg.write_text(FRAUNHOFER_CONFIG.format(field=path))
        assert main(["propagate", "--config", str(cfg)]) == 0
    assert a.read_bytes() == b.read_bytes()


def test_propagate_missing_key_exits_2(tmp_path, capsys):
    cfg = tmp_path / "run.cfg"
    cfg.write_text(
        textwrap.dedent(
            """\
            [run]
            method = fraunhofer
            k = 1.0

            [aperture]
            kind = circular
            grid = 16
            extent = 1.0
            radius = 0.5

            [detector]
            mode = angular
            z = 1.0
            nx = 4
            ny = 4
            dx = 0.1
            dy = 0.1

            [output]
            """
        )
    )
    rc = main(["propagate", "--config", str(cfg)])
    assert rc == 2
    assert "[output].field" in capsys.readouterr().err


def test_propagate_spin_with_scalar_method_exits_2(tmp_path, capsys):
    cfg = tmp_path / "run.cfg"
    cfg.write_text(
        FRAUNHOFER_CONFIG.format(field=tmp_path / "x.fgrid").replace(
            "k = 6.283185307179586", "k = 6.283185307179586\nspin = up"
        )
    )
    rc = main(["propagate", "--config", str(cfg)])
    assert rc == 2
    assert "spin" in capsys.readouterr().err


def test_propagate_unknown_key_exits_2(tmp_path, capsys):
    cfg = tmp_path / "run.cfg"
    cfg.write_text(
        FRAUNHOFER_CONFIG.format(field=tmp_path / "x.fgrid").replace(
            "mode = angular", "mode = angular\ncolor = red"
        )
    )
    rc = main(["propagate", "--config", str(cfg)])
    assert rc == 2
    assert "[detector].color" in capsys.readouterr().err


SPINOR_CONFIG = """\
[run]
method = spinor-fraunhofer
energy = 1.25
mass = 0.75
spin = up

[aperture]
kind = circular
grid = 96
extent = 12.566370614359172
radius = 6.283185307179586

[detector]
mode = angular
z = 1.0
nx = 24
ny = 24
dx = 0.04
dy = 0.04
origin = -0.48 -0.48

[output]
field = {field}
"""


def test_propagate_spinor_and_analyze_spin(tmp_path, capsys):
    field_path = tmp_path / "spinor.fgrid"
    cfg = tmp_path / "run.cfg"
    cfg.write_text(SPINOR_CONFIG.format(field=field_path))
    assert main(["propagate", "--config", str(cfg)]) == 0
    capsys.readouterr()

    data = read_fgrid(field_path)
    assert data.components == 4

    spin_path = tmp_path / "spin.fgrid"
    assert main(
        ["analyze", "--field", str(field_path), "--analysis", "spin", "--out", str(spin_path)]
    ) == 0
    spin_map = read_fgrid(spin_path).values.real
    inten = np.sum(np.abs(data.values) ** 2, axis=-1)
    lit = inten > 1e-20 * inten.max()
    assert np.all(np.abs(spin_map[lit] - 1.0) < 1e-12)


def test_analyze_spin_on_scalar_field_exits_2(tmp_path, capsys):
    field_path = tmp_path / "airy.fgrid"
    cfg = tmp_path / "run.cfg"
    cfg.write_text(FRAUNHOFER_CONFIG.format(field=field_path))
    assert main(["propagate", "--config", str(cfg)]) == 0
    capsys.readouterr()
    rc = main(
        ["analyze", "--field", str(field_path), "--analysis", "spin",
         "--out", str(tmp_path / "s.fgrid")]
    )
    assert rc == 2
    assert "4-component" in capsys.readouterr().err


VARIANT_CONFIG = """\
[run]
method = {method}
k = 6.283185307179586

[aperture]
kind = circular
grid = 64
extent = 2.0
radius = 1.0

[detector]
mode = real-plane
z = 200.0
nx = 8
ny = 8
dx = 4.0
dy = 4.0

[output]
field = {field}
"""


def test_cli_kirchhoff_is_mean_of_rs_runs(tmp_path, capsys):
    paths = {}
    for method in ("kirchhoff", "rs1", "rs2"):
        paths[method] = tmp_path / f"{method}.fgrid"
        cfg = tmp_path / f"{method}.cfg"
        cfg.write_text(VARIANT_CONFIG.format(method=method, field=paths[method]))
        assert main(["propagate", "--config", str(cfg)]) == 0
    capsys.readouterr()
    rc = main(
        [
            "analyze", "--field", str(paths["kirchhoff"]), "--analysis", "compare",
            "--other", f"{paths['rs1']},{paths['rs2']}",
        ]
    )
    assert rc == 0
    report = _kv(capsys.readouterr().out)
    assert float(report["l2_relative"]) < 1e-12


def test_cli_fork_vortex_winding(tmp_path, capsys):
    mask_path = tmp_path / "fork.fgrid"
    assert main(
        [
            "aperture", "--kind", "fork", "--charge", "1", "--period", "0.5",
            "--grid", "256", "--extent", "4.0", "--radius", "3.0", "--out", str(mask_path),
        ]
    ) == 0
    field_path = tmp_path / "far.fgrid"
    kx0 = 2 * np.pi / 0.5
    cfg = tmp_path / "run.cfg"
    cfg.write_text(
        textwrap.dedent(
            f"""\
            [run]
            method = fraunhofer
            k = {8 * np.pi}

            [aperture]
            path = {mask_path}

            [detector]
            mode = angular
            z = 1.0
            nx = 48
            ny = 48
            dx = 0.12
            dy = 0.12
            origin = {kx0 - 24 * 0.12} {-24 * 0.12}

            [output]
            field = {field_path}
            """
        )
    )
    assert main(["propagate", "--config", str(cfg)]) == 0
    capsys.readouterr()
    rc = main(
        [
            "analyze", "--field", str(field_path), "--analysis", "winding",
            "--center", "24,24", "--radius", "8",
        ]
    )
    assert rc == 0
    report = _kv(capsys.readouterr().out)
    assert int(report["winding"]) == 1


def test_analyze_intensity_round_trip(tmp_path, capsys):
    field_path = tmp_path / "airy.fgrid"
    cfg = tmp_path / "run.cfg"
    cfg.write_text(FRAUNHOFER_CONFIG.format(field=field_path))
    assert main(["propagate", "--config", str(cfg)]) == 0
    out_path = tmp_path / "intensity.fgrid"
    assert main(
        ["analyze", "--field", str(field_path), "--analysis", "intensity",
         "--out", str(out_path)]
    ) == 0
    data = read_fgrid(field_path)
    derived = read_fgrid(out_path)
    assert np.allclose(derived.values.real, np.abs(data.values) ** 2, atol=0)
    assert np.all(derived.values.imag == 0.0)


def test_analyze_missing_field_file_exits_2(tmp_path, capsys):
    rc = main(
        ["analyze", "--field", str(tmp_path / "nope.fgrid"), "--analysis", "intensity",
         "--out", str(tmp_path / "o.fgrid")]
    )
    assert rc == 2


HK_CONFIG = """\
[run]
method = helmholtz-kirchhoff
k = 6.283185307179586

[source]
type = point-source
position = 0.0 0.0 -8.0

[detector]
mode = real-plane
z = 10.0
nx = 3
ny = 3
dx = 0.4
dy = 0.4

[surface]
radius = 4.0
n_theta = 96
n_phi = 192

[output]
field = {field}
"""


def test_propagate_helmholtz_kirchhoff_reconstructs_source(tmp_path, capsys):
    field_path = tmp_path / "hk.fgrid"
    cfg = tmp_path / "run.cfg"
    cfg.write_text(HK_CONFIG.format(field=field_path))
    assert main(["propagate", "--config", str(cfg)]) == 0
    data = read_fgrid(field_path)
    grid = data.grid
    k = 2 * np.pi
    for ix in range(3):
        for iy in range(3):
            x = grid.origin[0] + ix * grid.dx
            y = grid.origin[1] + iy * grid.dy
            r = np.sqrt(x**2 + y**2 + (10.0 + 8.0) ** 2)
            expected = np.exp(1j * k * r) / r
            assert abs(data.values[ix, iy] - expected) < 0.01 * abs(expected)


def test_propagate_helmholtz_kirchhoff_rejects_small_sphere(tmp_path, capsys):
    cfg = tmp_path / "run.cfg"
    cfg.write_text(
        HK_CONFIG.format(field=tmp_path / "x.fgrid").replace("radius = 4.0", "radius = 0.5")
    )
    rc = main(["propagate", "--config", str(cfg)])
    assert rc == 2
    assert "radius" in capsys.readouterr().err

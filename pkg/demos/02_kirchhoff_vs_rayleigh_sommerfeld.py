"""The three scalar diffraction variants and their exact average identity.

The kirchhoff obliquity (cos t0 + cos t)/2 is the arithmetic mean of the two
one-sided variants (cos t and cos t0), so with the shared kernel the
kirchhoff field equals the pixelwise mean of the rs1 and rs2 fields to
rounding error.  The demo runs all three on the same circular aperture and
prints the worst pixel disagreement.
"""

import pathlib

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from diracoptics import (
    DetectorSpec,
    Grid2D,
    SourceSpec,
    circular,
    kirchhoff_fresnel,
    obliquity,
)

OUT = pathlib.Path(__file__).parent / "output"
OUT.mkdir(exist_ok=True)

k = 2 * np.pi
mask = circular(1.0, Grid2D.from_half_extent(128, 2.0))
source = SourceSpec(type="point-source", position=(0.0, 0.0, -300.0))
detector = DetectorSpec(z=400.0, nx=48, ny=48, dx=3.0, dy=3.0)

fields = {
    kind: kirchhoff_fresnel(mask, source, detector, k, kind=kind)
    for kind in ("kirchhoff", "rs1", "rs2")
}
mean = (fields["rs1"].values + fields["rs2"].values) / 2
worst = np.abs(fields["kirchhoff"].values - mean).max() / np.abs(mean).max()
print(f"max |kirchhoff - (rs1+rs2)/2| / max|mean| = {worst:.2e}")

theta = np.linspace(0, np.pi / 2 * 0.95, 200)
fig, axes = plt.subplots(1, 2, figsize=(10, 4))
for kind in ("kirchhoff", "rs1", "rs2"):
    axes[0].plot(theta, obliquity(kind, 0.2, theta), label=kind)
axes[0].set_xlabel("outgoing angle (rad)")
axes[0].set_ylabel("obliquity factor (incidence 0.2 rad)")
axes[0].legend()

extent_ax = detector.grid().x()
for kind in ("kirchhoff", "rs1", "rs2"):
    axes[1].plot(extent_ax, np.abs(fields[kind].values[:, 24]) ** 2, label=kind)
axes[1].set_xlabel("detector x")
axes[1].set_ylabel("intensity")
axes[1].legend()
fig.tight_layout()
fig.savefig(OUT / "variants.png", dpi=120)
print(f"wrote {OUT / 'variants.png'}")

"""Far-field diffraction of a circular aperture: the Airy pattern.

Builds a disk aperture, transforms it to the angular far field, and checks
the first dark ring against the classic location sin(theta) = 3.8317/(ka).
"""

import pathlib

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from diracoptics import DetectorSpec, Grid2D, ScalarField2D, circular, fraunhofer_scalar

OUT = pathlib.Path(__file__).parent / "output"
OUT.mkdir(exist_ok=True)

k = 2 * np.pi          # wavelength 1
radius = 2.0           # aperture radius in wavelengths
grid = Grid2D.from_half_extent(512, 4.0)
mask = circular(radius, grid)

n = 512
q_half = 1.5 * 3.8317 / radius
dq = 2 * q_half / n
detector = DetectorSpec(
    z=1.0, nx=n, ny=n, dx=dq, dy=dq, mode="angular",
    origin=(-(n // 2) * dq, -(n // 2) * dq),
)
far = fraunhofer_scalar(ScalarField2D(grid, mask.values.astype(complex)), k, detector)
intensity = np.abs(far.values) ** 2

row = intensity[:, n // 2]
center = n // 2
first_min = next(
    i for i in range(center + 1, n - 1) if row[i] < row[i - 1] and row[i] <= row[i + 1]
)
q_found = far.grid.x()[first_min]
print(f"first dark ring:   sin(theta) = {q_found / k:.5f}")
print(f"Airy prediction:   sin(theta) = {3.8317 / (k * radius):.5f}")
print(f"detector pixel:    {dq / k:.5f} in sin(theta)")

fig, axes = plt.subplots(1, 2, figsize=(10, 4))
axes[0].imshow(mask.values.T, origin="lower", cmap="gray")
axes[0].set_title("aperture")
axes[1].imshow(np.log10(intensity.T + 1e-12), origin="lower", cmap="inferno")
axes[1].set_title("far-field intensity (log10)")
fig.tight_layout()
fig.savefig(OUT / "airy_pattern.png", dpi=120)
print(f"wrote {OUT / 'airy_pattern.png'}")

"""First-order surface reconstruction of Dirac spinor fields.

Unlike the scalar theorem, the spinor surface integral needs field values
only (no normal derivatives): the propagation theory is first order.  The
demo reconstructs a plane-wave spinor and a solution built from an exterior
spherical wave, interior to a sphere, and tabulates convergence.
"""

import numpy as np

from diracoptics import (
    ParticleState,
    construct_dirac_solution,
    plane_wave_spinor,
    spinor_boundary_on_sphere,
    spinor_surface_integral,
)
from diracoptics.waves import SphericalWaveScalar

state = ParticleState.from_energy_mass(1.25, 0.75)  # k = 1, kappa = 0.5
lam = state.wavelength
radius = 5 * lam
target = np.array([0.3, 0.2, -0.4]) * lam

u = plane_wave_spinor(state, spin="up")


def plane_field(points):
    pts = np.asarray(points, dtype=float)
    return np.exp(1j * state.wavenumber * pts[..., 2])[..., None] * u


spherical = SphericalWaveScalar(state.wavenumber, (0.0, 0.0, 9.5 * lam))
constructed = construct_dirac_solution([spherical, None, None, None], state)

for name, field in (("plane-wave spinor", plane_field), ("constructed solution", constructed)):
    expected = field(target[None, :])[0]
    print(f"\n{name}: reconstruct at {np.round(target, 3)}")
    print(f"{'grid':>12} {'error':>12} {'ratio':>8}")
    previous = None
    for n_theta in (50, 100, 200, 400):
        boundary = spinor_boundary_on_sphere(np.zeros(3), radius, n_theta, 2 * n_theta, field)
        out = spinor_surface_integral(boundary, target, state)
        err = np.abs(out - expected).max() / np.abs(expected).max()
        ratio = f"{previous / err:8.2f}" if previous else "       -"
        print(f"{n_theta:>6}x{2 * n_theta:<5} {err:12.3e} {ratio}")
        previous = err

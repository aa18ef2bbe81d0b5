"""Numerical wave-optics engine for scalar and Dirac-spinor diffraction.

Scalar side: the exact closed-surface Helmholtz reconstruction, the
Kirchhoff/Rayleigh-Sommerfeld aperture quadratures, and the far-field
transform.  Spinor side: the first-order (values-only) surface integral,
its paraxial aperture reduction, and spin/vortex observables.
"""

from .algebra import (
    MINKOWSKI,
    SIGMA_Z,
    ParticleState,
    as_particle_state,
    construct_dirac_solution,
    dirac_residual,
    gamma,
    gamma_direction,
    gamma_factor,
    mass_energy_matrix,
    plane_wave_spinor,
    sigma_z_expectation,
)
from .analysis import (
    ComparisonReport,
    WindingResult,
    compare,
    intensity,
    phase,
    spin_density,
    winding_number,
)
from .apertures import circular, double_slit, fork_hologram, load_mask, save_mask, slit
from .fgrid import FgridFile, FgridFormatError, read_fgrid, write_fgrid
from .green import (
    gamma_matrix_right_residual,
    green_matrix,
    green_matrix_batch,
    green_scalar,
    green_scalar_gradient,
    verify_gamma_derivative_identity,
)
from .grid import ApertureMask, Grid2D, ScalarField2D, SpinorField2D
from .scalar import (
    DetectorSpec,
    SourceSpec,
    fraunhofer_scalar,
    helmholtz_kirchhoff_integral,
    illuminate,
    kirchhoff_fresnel,
    obliquity,
)
from .spinor import (
    NonrelativisticReduction,
    gamma_factor_oblique,
    nonrelativistic_reduce,
    paraxial_kernel,
    spinor_fraunhofer,
    spinor_kirchhoff_fresnel,
    spinor_surface_integral,
)
from .surfaces import (
    BoundarySample,
    ScalarBoundary,
    SpinorBoundary,
    SpinorBoundarySample,
    scalar_boundary_on_sphere,
    sphere_quadrature,
    spinor_boundary_on_sphere,
)
from .waves import PlaneWaveScalar, SphericalWaveScalar

__version__ = "0.1.0"

__all__ = [
    "MINKOWSKI",
    "SIGMA_Z",
    "ParticleState",
    "as_particle_state",
    "construct_dirac_solution",
    "dirac_residual",
    "gamma",
    "gamma_direction",
    "gamma_factor",
    "mass_energy_matrix",
    "plane_wave_spinor",
    "sigma_z_expectation",
    "ComparisonReport",
    "WindingResult",
    "compare",
    "intensity",
    "phase",
    "spin_density",
    "winding_number",
    "circular",
    "double_slit",
    "fork_hologram",
    "load_mask",
    "save_mask",
    "slit",
    "FgridFile",
    "FgridFormatError",
    "read_fgrid",
    "write_fgrid",
    "gamma_matrix_right_residual",
    "green_matrix",
    "green_matrix_batch",
    "green_scalar",
    "green_scalar_gradient",
    "verify_gamma_derivative_identity",
    "ApertureMask",
    "Grid2D",
    "ScalarField2D",
    "SpinorField2D",
    "DetectorSpec",
    "SourceSpec",
    "fraunhofer_scalar",
    "helmholtz_kirchhoff_integral",
    "illuminate",
    "kirchhoff_fresnel",
    "obliquity",
    "NonrelativisticReduction",
    "gamma_factor_oblique",
    "nonrelativistic_reduce",
    "paraxial_kernel",
    "spinor_fraunhofer",
    "spinor_kirchhoff_fresnel",
    "spinor_surface_integral",
    "BoundarySample",
    "ScalarBoundary",
    "SpinorBoundary",
    "SpinorBoundarySample",
    "scalar_boundary_on_sphere",
    "sphere_quadrature",
    "spinor_boundary_on_sphere",
    "PlaneWaveScalar",
    "SphericalWaveScalar",
]

"""Gamma-matrix algebra, plane-wave spinors, and pointwise Dirac-equation checks.

Conventions: natural units, metric diag(+1,-1,-1,-1), Dirac representation
with gamma^0 = diag(1,1,-1,-1) and gamma^i carrying sigma^i in the upper-right
2x2 block and -sigma^i in the lower-left block.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from numbers import Real
from typing import Callable, Optional, Sequence

import numpy as np

MINKOWSKI = np.diag([1.0, -1.0, -1.0, -1.0])
MINKOWSKI.setflags(write=False)

SIGMA_Z = np.diag([1.0, -1.0, 1.0, -1.0]).astype(np.complex128)
SIGMA_Z.setflags(write=False)

_I4 = np.eye(4, dtype=np.complex128)

_PAULI = (
    np.array([[0, 1], [1, 0]], dtype=np.complex128),
    np.array([[0, -1j], [1j, 0]], dtype=np.complex128),
    np.array([[1, 0], [0, -1]], dtype=np.complex128),
)


def _spatial_gamma(sigma: np.ndarray) -> np.ndarray:
    m = np.zeros((4, 4), dtype=np.complex128)
    m[:2, 2:] = sigma
    m[2:, :2] = -sigma
    return m


_GAMMA = (np.diag([1, 1, -1, -1]).astype(np.complex128),) + tuple(
    _spatial_gamma(s) for s in _PAULI
)
for _g in _GAMMA:
    _g.setflags(write=False)


def gamma(mu: int) -> np.ndarray:
    """Generator gamma^mu, mu in 0..3, as a read-only 4x4 complex array."""
    if mu not in (0, 1, 2, 3):
        raise ValueError(f"gamma index must be 0..3, got {mu!r}")
    return _GAMMA[mu]


def _unit3(n, tol: float = 1e-9) -> np.ndarray:
    v = np.asarray(n, dtype=np.float64)
    if v.shape != (3,):
        raise ValueError(f"direction must be a 3-vector, got shape {v.shape}")
    if abs(v @ v - 1.0) > tol:
        raise ValueError(f"direction must be a unit vector, |n|^2 = {v @ v}")
    return v


def gamma_direction(n) -> np.ndarray:
    """Compound matrix n_x*gamma^1 + n_y*gamma^2 + n_z*gamma^3 for unit n.

    Squares to -I for any unit vector.
    """
    v = _unit3(n)
    out = v[0] * _GAMMA[1] + v[1] * _GAMMA[2] + v[2] * _GAMMA[3]
    out.setflags(write=False)
    return out


def gamma_factor(n) -> np.ndarray:
    """(I + gamma^n) gamma^n, which equals gamma^n - I since (gamma^n)^2 = -I."""
    out = gamma_direction(n) - _I4
    out.setflags(write=False)
    return out


@dataclass(frozen=True)
class ParticleState:
    """Energy, mass and wavenumber of a stationary beam particle (natural units).

    The three values must satisfy the relativistic dispersion
    k = sqrt(E^2 - m^2); use the classmethods to build consistent states.
    """

    energy: float
    mass: float
    wavenumber: float

    def __post_init__(self):
        if self.energy <= 0:
            raise ValueError("energy must be positive")
        if self.mass < 0:
            raise ValueError("mass must be non-negative")
        if self.wavenumber <= 0:
            raise ValueError("wavenumber must be positive")
        if self.energy < self.mass:
            raise ValueError("energy must be at least the rest mass")
        # cancellation-free form of k = sqrt(E^2 - m^2)
        lhs = self.energy**2
        rhs = self.wavenumber**2 + self.mass**2
        if abs(lhs - rhs) > 1e-9 * max(lhs, rhs):
            raise ValueError(
                f"inconsistent state: E^2 = {lhs} but k^2 + m^2 = {rhs}"
            )

    @classmethod
    def from_energy_mass(cls, energy: float, mass: float) -> "ParticleState":
        """State with k = sqrt(E^2 - m^2).

        Note: the opposite sign convention k^2 = E^2 + m^2 appears in some
        treatments; it yields exponentially damped rather than oscillatory
        free solutions and is intentionally not used here.
        """
        if energy <= mass:
            raise ValueError("need energy > mass for a propagating state")
        return cls(energy, mass, math.sqrt(energy**2 - mass**2))

    @classmethod
    def massless(cls, wavenumber: float) -> "ParticleState":
        """Ultrarelativistic state: E = k, m = 0."""
        return cls(float(wavenumber), 0.0, float(wavenumber))

    @classmethod
    def from_wavenumber_kappa(cls, wavenumber: float, kappa: float) -> "ParticleState":
        """State with a prescribed small-component ratio kappa = k/(E+m), 0 < kappa <= 1."""
        if not 0 < kappa <= 1:
            raise ValueError("kappa must lie in (0, 1]")
        k = float(wavenumber)
        energy = k * (1.0 / kappa + kappa) / 2.0
        mass = k * (1.0 / kappa - kappa) / 2.0
        return cls(energy, mass, k)

    @property
    def kappa(self) -> float:
        """Small-component amplitude ratio k/(E+m)."""
        return self.wavenumber / (self.energy + self.mass)

    @property
    def wavelength(self) -> float:
        return 2.0 * math.pi / self.wavenumber


def as_particle_state(state) -> ParticleState:
    """Coerce a ParticleState or a bare wavenumber (taken massless) to a state."""
    if isinstance(state, ParticleState):
        return state
    if isinstance(state, Real):
        return ParticleState.massless(float(state))
    raise TypeError(f"expected ParticleState or wavenumber, got {type(state).__name__}")


def mass_energy_matrix(state, conjugate: bool = False) -> np.ndarray:
    """Rest-frame part of the stationary Dirac operator: m*I - E*gamma^0.

    With ``conjugate=True`` returns m*I + E*gamma^0.  The pair satisfies
    gamma^j M = M_conj gamma^j and M_conj M = (m^2 - E^2) I = -k^2 I.
    """
    s = as_particle_state(state)
    sign = 1.0 if conjugate else -1.0
    out = s.mass * _I4 + sign * s.energy * _GAMMA[0]
    out.setflags(write=False)
    return out


_Z_AXIS = np.array([0.0, 0.0, 1.0])


def plane_wave_spinor(state, direction=(0.0, 0.0, 1.0), spin: str = "up") -> np.ndarray:
    """Spinor amplitude of a plane-wave eigenstate of Sigma_z, unnormalized.

    Spin up gives (1, 0, k/(E+m), 0); spin down gives (0, 1, 0, -k/(E+m)).
    Only z-quantization is supported: ``direction`` must be (0, 0, 1).
    """
    s = as_particle_state(state)
    d = _unit3(direction)
    if not np.allclose(d, _Z_AXIS, atol=1e-12):
        raise ValueError("only z-directed plane-wave spinors are supported")
    if s.energy + s.mass <= 0:
        raise ValueError("singular state: E + m must be positive")
    kap = s.kappa
    if spin == "up":
        out = np.array([1.0, 0.0, kap, 0.0], dtype=np.complex128)
    elif spin == "down":
        out = np.array([0.0, 1.0, 0.0, -kap], dtype=np.complex128)
    else:
        raise ValueError(f"spin must be 'up' or 'down', got {spin!r}")
    out.setflags(write=False)
    return out


def sigma_z_expectation(spinor) -> float:
    """<s|Sigma_z|s> / <s|s> with Sigma_z = diag(1,-1,1,-1); lies in [-1, 1]."""
    s = np.asarray(spinor, dtype=np.complex128)
    if s.shape != (4,):
        raise ValueError(f"spinor must have 4 components, got shape {s.shape}")
    norm2 = float(np.real(np.conj(s) @ s))
    if norm2 <= 0.0:
        raise ValueError("sigma_z expectation undefined for a zero-norm spinor")
    return float(np.real(np.conj(s) @ (SIGMA_Z @ s)) / norm2)


SpinorFieldFunction = Callable[[np.ndarray], np.ndarray]


def construct_dirac_solution(components: Sequence, state) -> SpinorFieldFunction:
    """Build a stationary Dirac solution from four scalar Helmholtz solutions.

    ``components`` holds four objects with vectorized ``value(points)`` and
    ``gradient(points)`` methods (``None`` entries mean an identically zero
    component).  The returned callable maps points of shape (..., 3) to
    spinors of shape (..., 4) via

        Psi = (gamma^j d_j - i(m*I + E*gamma^0)) (psi^0, psi^1, psi^2, psi^3)^T

    which satisfies the stationary equation checked by :func:`dirac_residual`
    whenever every component satisfies the scalar Helmholtz equation at the
    state's wavenumber.
    """
    if len(components) != 4:
        raise ValueError(f"need exactly 4 scalar components, got {len(components)}")
    s = as_particle_state(state)
    kbar = mass_energy_matrix(s, conjugate=True)

    def field(points) -> np.ndarray:
        pts = np.asarray(points, dtype=np.float64)
        if pts.shape[-1] != 3:
            raise ValueError("points must have a trailing dimension of 3")
        out = np.zeros(pts.shape[:-1] + (4,), dtype=np.complex128)
        for mu, comp in enumerate(components):
            if comp is None:
                continue
            val = np.asarray(comp.value(pts), dtype=np.complex128)
            grad = np.asarray(comp.gradient(pts), dtype=np.complex128)
            for j in range(3):
                out += grad[..., j, None] * _GAMMA[j + 1][:, mu]
            out += val[..., None] * (-1j * kbar[:, mu])
        return out

    return field


def dirac_residual(field: SpinorFieldFunction, point, state, h: Optional[float] = None) -> np.ndarray:
    """Apply the stationary Dirac operator to a spinor field at one point.

    Returns (gamma^j d_j + i(m*I - E*gamma^0)) Psi evaluated with second-order
    central differences of step ``h`` (default 1e-5 of the wavelength); a
    near-zero norm certifies a solution.
    """
    s = as_particle_state(state)
    if h is None:
        h = 1e-5 * s.wavelength
    p = np.asarray(point, dtype=np.float64)
    if p.shape != (3,):
        raise ValueError(f"point must be a 3-vector, got shape {p.shape}")
    offsets = np.zeros((7, 3))
    for j in range(3):
        offsets[2 * j, j] = h
        offsets[2 * j + 1, j] = -h
    vals = np.asarray(field(p + offsets), dtype=np.complex128)
    if vals.shape != (7, 4):
        raise ValueError("field must map (N, 3) points to (N, 4) spinors")
    res = np.zeros(4, dtype=np.complex128)
    for j in range(3):
        res += _GAMMA[j + 1] @ (vals[2 * j] - vals[2 * j + 1]) / (2.0 * h)
    res += 1j * (mass_energy_matrix(s) @ vals[6])
    return res

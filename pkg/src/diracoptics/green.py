"""Free-space Helmholtz Green's function, its analytic gradient, and the
first-order (spinor) Green's matrix built from it."""

from __future__ import annotations

import numpy as np

from .algebra import _GAMMA, as_particle_state, gamma_direction, mass_energy_matrix

MIN_SEPARATION = 1e-12


def _separation(r, rp):
    a = np.asarray(r, dtype=np.float64)
    b = np.asarray(rp, dtype=np.float64)
    d = a - b
    s = np.linalg.norm(d, axis=-1)
    if np.any(s <= MIN_SEPARATION):
        raise ValueError("evaluation point coincides with the source point")
    return d, s


def green_scalar(r, rp, k: float):
    """Outgoing kernel exp(i k s) / (4 pi s), s = |r - rp|.

    Broadcasts over leading dimensions of ``r``/``rp``.
    """
    _, s = _separation(r, rp)
    return np.exp(1j * k * s) / (4.0 * np.pi * s)


def green_scalar_gradient(r, rp, k: float):
    """Analytic gradient with respect to r: (ik - 1/s) G s_hat."""
    d, s = _separation(r, rp)
    g = np.exp(1j * k * s) / (4.0 * np.pi * s)
    return ((1j * k - 1.0 / s) * g)[..., None] * (d / s[..., None])


def _green_matrix_terms(r, rp, state):
    """Shared assembly: (radial complex factor, unit separation, scalar G)."""
    st = as_particle_state(state)
    d, s = _separation(r, rp)
    g = np.exp(1j * st.wavenumber * s) / (4.0 * np.pi * s)
    radial = -st.wavenumber * (1.0 + 1j / (st.wavenumber * s)) * g
    return st, radial, d / s[..., None], g


def green_matrix(r, rp, state) -> np.ndarray:
    """First-order Green's matrix (i gamma^j d_j - (m I + E gamma^0)) G(r, rp).

    Closed form: [-k (1 + i/(ks)) gamma^s_hat - (m I + E gamma^0)] G, with the
    derivative acting on ``r``.  ``state`` may be a ParticleState or a bare
    wavenumber (massless).  Satisfies, away from the source,

        (d_j g)(i gamma^j) + g (m I - E gamma^0) = 0.
    """
    st, radial, shat, g = _green_matrix_terms(r, rp, state)
    if np.ndim(radial) != 0:
        raise ValueError("green_matrix expects a single point pair; batch internally")
    return radial * gamma_direction(shat) - g * mass_energy_matrix(st, conjugate=True)


def green_matrix_batch(points, target, state) -> np.ndarray:
    """green_matrix for many source points against one target, shape (N, 4, 4)."""
    st, radial, shat, g = _green_matrix_terms(points, target, state)
    gsh = np.einsum("nj,jab->nab", shat, np.stack(_GAMMA[1:]))
    kbar = mass_energy_matrix(st, conjugate=True)
    return radial[:, None, None] * gsh - g[:, None, None] * kbar


def gamma_matrix_right_residual(
    state,
    separation_wavelengths: float = 10.0,
    direction=(1.0, 2.0, -0.5),
    h: float | None = None,
) -> float:
    """Finite-difference residual of the Green's-matrix adjoint identity

        (d_j g)(i gamma^j) + g (m I - E gamma^0) = 0   (away from the source),

    with derivatives acting on the first (surface-point) argument.  Returns
    the max-entry residual relative to k * max|g|; a value far below 1 means
    the closed-form matrix really inverts the first-order operator.
    """
    st = as_particle_state(state)
    lam = 2.0 * np.pi / st.wavenumber
    d = np.asarray(direction, dtype=np.float64)
    rp = np.zeros(3)
    r = d / np.linalg.norm(d) * separation_wavelengths * lam
    if h is None:
        h = 1e-4 * lam
    res = np.zeros((4, 4), dtype=np.complex128)
    for j in range(3):
        e = np.zeros(3)
        e[j] = h
        res += (green_matrix(r + e, rp, st) - green_matrix(r - e, rp, st)) / (2.0 * h) @ (
            1j * _GAMMA[j + 1]
        )
    g0 = green_matrix(r, rp, st)
    res += g0 @ mass_energy_matrix(st)
    return float(np.abs(res).max() / (st.wavenumber * np.abs(g0).max()))


def verify_gamma_derivative_identity(r, rp, k: float) -> float:
    """Max-entry relative residual of the radial-derivative identity

        gamma^j d_j G = ik (1 + i/(ks)) gamma^j G (d_j s),

    evaluated with the analytic gradient on the left.  Exact analytically, so
    the return value probes only floating-point conditioning.
    """
    d, s = _separation(r, rp)
    if np.ndim(s) != 0:
        raise ValueError("expects a single point pair")
    shat = d / s
    grad = green_scalar_gradient(r, rp, k)
    lhs = sum(grad[j] * _GAMMA[j + 1] for j in range(3))
    g = green_scalar(r, rp, k)
    rhs = 1j * k * (1.0 + 1j / (k * s)) * g * sum(shat[j] * _GAMMA[j + 1] for j in range(3))
    scale = np.abs(rhs).max()
    return float(np.abs(lhs - rhs).max() / scale)

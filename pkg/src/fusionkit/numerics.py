"""Small numerical kernels: Gamma, polynomial roots, eigenpairs, ODEs, quadrature.

Dense problems here are tiny (dimension <= 16), so clarity wins over speed.
"""
from __future__ import annotations

import cmath
import math
from fractions import Fraction
from typing import Callable, Sequence

import numpy as np
from scipy.integrate import solve_ivp
from scipy.special import roots_jacobi

from .errors import DegenerateSpectrumError, IntegrationError, NumericalError, PoleError

__all__ = [
    'cgamma', 'recip_gamma', 'poly_roots', 'eigen', 'integrate_ode', 'gauss_jacobi',
]

# Lanczos approximation, g = 7, n = 9
_LANCZOS_G = 7
_LANCZOS_COEF = (
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
)
_POLE_SNAP = 1e-9


def _nonpositive_integer(z) -> bool:
    if isinstance(z, (int, Fraction)):
        return z <= 0 and Fraction(z).denominator == 1
    z = complex(z)
    return z.imag == 0 and z.real <= 0 and z.real == math.floor(z.real)


def cgamma(z) -> complex:
    """Gamma function of a complex argument (Lanczos, reflection for Re z < 1/2)."""
    if _nonpositive_integer(z):
        raise PoleError(f'Gamma has a pole at {z}')
    z = complex(z)
    if z.real < 0.5:
        return cmath.pi / (cmath.sin(cmath.pi * z) * cgamma(1 - z))
    z -= 1
    x = _LANCZOS_COEF[0]
    for i in range(1, len(_LANCZOS_COEF)):
        x += _LANCZOS_COEF[i] / (z + i)
    t = z + _LANCZOS_G + 0.5
    # log form avoids overflow of t**(z+1/2) for large |z|
    return cmath.exp(0.5 * math.log(2 * math.pi) + (z + 0.5) * cmath.log(t) - t) * x


def recip_gamma(z) -> complex:
    """``1/Gamma(z)``; exactly 0 at (or within 1e-9 of) a non-positive integer.

    Exact :class:`~fractions.Fraction` and ``int`` arguments are tested for
    poles exactly.
    """
    if isinstance(z, (int, Fraction)):
        if _nonpositive_integer(z):
            return 0j
        return 1 / cgamma(float(z))
    z = complex(z)
    nearest = round(z.real)
    if nearest <= 0 and abs(z - nearest) <= _POLE_SNAP:
        return 0j
    return 1 / cgamma(z)


def _horner(coeffs, x):
    p = 0j
    dp = 0j
    for c in coeffs:
        dp = dp * x + p
        p = p * x + c
    return p, dp


def poly_roots(coeffs: Sequence[complex], tol: float = 1e-14, maxiter: int = 500) -> np.ndarray:
    """Roots of ``coeffs[0] z^n + ... + coeffs[n]`` by Aberth-Ehrlich iteration.

    Exact zero roots are split off first. Starting points lie on a circle
    whose radius bounds the root moduli, rotated off the real axis.
    """
    c = np.asarray(coeffs, dtype=complex)
    if c.ndim != 1 or len(c) == 0 or c[0] == 0:
        raise ValueError('leading coefficient must be nonzero')
    n_zero = 0
    while len(c) > 1 and c[-1] == 0:
        c = c[:-1]
        n_zero += 1
    n = len(c) - 1
    if n == 0:
        return np.zeros(n_zero, dtype=complex)
    c = c / c[0]
    radius = 1 + max(abs(c[1:]))
    # Fujiwara-type bound is tighter than Cauchy for clustered small roots
    fujiwara = 2 * max(abs(c[k]) ** (1 / k) for k in range(1, n + 1))
    radius = min(radius, fujiwara) if fujiwara > 0 else radius
    k = np.arange(n)
    z = radius * np.exp(1j * (2 * np.pi * k / n + 0.4))
    for _ in range(maxiter):
        max_step = 0.0
        for i in range(n):
            p, dp = _horner(c, z[i])
            if p == 0:
                continue
            ratio = p / dp if dp != 0 else p
            diffs = z[i] - np.delete(z, i)
            s = np.sum(1 / diffs) if np.all(diffs != 0) else 0
            step = ratio / (1 - ratio * s)
            z[i] -= step
            max_step = max(max_step, abs(step) / max(1.0, abs(z[i])))
        if max_step < tol:
            break
    else:
        scale = np.sum(np.abs(c)[None, :] * np.abs(z)[:, None] ** np.arange(n, -1, -1), axis=1)
        resid = np.array([abs(_horner(c, r)[0]) for r in z])
        if np.any(resid > 1e-10 * np.maximum(scale, 1)):
            raise NumericalError(f'Aberth iteration did not converge after {maxiter} iterations')
    return np.concatenate([z, np.zeros(n_zero, dtype=complex)])


def eigen(M: np.ndarray):
    """Eigenvalues and eigenvectors of a small dense matrix with simple spectrum.

    Returns ``(values, vectors)`` with ``M @ vectors[:, i] = values[i] * vectors[:, i]``.
    Raises :class:`DegenerateSpectrumError` when two eigenvalues are closer
    than ``1e-8 * ||M||``.
    """
    M = np.asarray(M, dtype=complex)
    if M.ndim != 2 or M.shape[0] != M.shape[1]:
        raise ValueError('eigen needs a square matrix')
    norm = max(np.linalg.norm(M, 2), 1e-300)
    values, vectors = np.linalg.eig(M)
    d = len(values)
    if d > 1:
        gaps = np.abs(values[:, None] - values[None, :])
        np.fill_diagonal(gaps, np.inf)
        if gaps.min() < 1e-8 * norm:
            raise DegenerateSpectrumError(f'eigenvalue gap {gaps.min():.3g} below 1e-8 * ||M||')
    resid = np.linalg.norm(M @ vectors - vectors * values, axis=0)
    if np.any(resid > 1e-8 * norm * np.linalg.norm(vectors, axis=0)):
        raise NumericalError('eigenpair residual above 1e-8 * ||M||')
    return values, vectors


def integrate_ode(field: Callable[[complex], np.ndarray], path: Sequence[complex],
                  y0: Sequence[complex], rtol: float = 1e-10, atol: float | None = None) -> np.ndarray:
    """Integrate ``y' = field(z) y`` along the polyline through ``path``.

    ``y0`` may be a vector or a matrix (columns integrated together). Each
    segment is parametrized linearly and handed to the 8(5,3) Dormand-Prince
    integrator.
    """
    y = np.array(y0, dtype=complex)
    shape = y.shape
    if atol is None:
        atol = rtol * 1e-6 * max(float(np.max(np.abs(y))), 1e-300)
    waypoints = [complex(p) for p in path]
    for a, b in zip(waypoints, waypoints[1:]):
        length = b - a

        def rhs(t, flat, a=a, length=length):
            z = a + t * length
            return length * (np.asarray(field(z)) @ flat.reshape(shape)).ravel()

        sol = solve_ivp(rhs, (0.0, 1.0), y.ravel(), method='DOP853', rtol=rtol, atol=atol)
        if sol.status != 0:
            where = a + sol.t[-1] * length
            raise IntegrationError(f'integration failed near z = {where}: {sol.message}', where)
        y = sol.y[:, -1].reshape(shape)
    return y


def gauss_jacobi(n: int, a: float, b: float):
    """Nodes and weights for ``int_0^1 t^a (1-t)^b p(t) dt``, exact for deg p <= 2n-1."""
    if n < 1:
        raise ValueError('n must be >= 1')
    if a <= -1 or b <= -1:
        raise ValueError('exponents must exceed -1')
    # scipy's weight is (1-x)^alpha (1+x)^beta on [-1, 1]; t = (1+x)/2
    x, w = roots_jacobi(n, b, a)
    return (x + 1) / 2, w / 2 ** (a + b + 1)

"""Transport matrices of the ODE ``f' = A f / z + B f / (1 - z)``.

Here ``B = -alpha I + beta Q`` with ``Q(x) = phi(x) v`` a rank-one idempotent
(``phi(v) = 1``). The basic equation is the case ``alpha = 0``; then ``beta Q``
is the rank-one residue at 1 and ``beta`` equals its trace.

Canonical solutions ``f_i(z) ~ xi_i z^{lambda_i}`` at 0 and
``h_j(z) ~ zeta_j z^{mu_j}`` at infinity are normalized by ``phi(xi_i) = 1`` and
``phi(zeta_j) = 1``. On ``C \\ [0, inf)`` they satisfy ``f_i = sum_j c_ij h_j``;
this module computes ``c`` in closed form (Gamma products) and numerically
(Frobenius series + ODE integration along the negative real axis).

Branch convention: ``log z`` has ``arg z`` in ``(0, 2 pi)``, so on the negative
axis ``z^s = |z|^s e^{i pi s}``.
"""
from __future__ import annotations

import cmath
import math
import warnings
from dataclasses import dataclass, field
from typing import NamedTuple, Sequence

import numpy as np

from .errors import (ArgumentError, BranchError, DegenerateSpectrumError, DomainError,
                     NumericalConditioningError, NumericalError, ValidationError)
from .numerics import cgamma, eigen, gauss_jacobi, integrate_ode, recip_gamma

__all__ = [
    'TransportProblem', 'SpectralData', 'Diagnostics', 'ChiValue', 'TruncationWarning',
    'validate', 'spectral', 'chi_p', 'chi_r', 'series_at_zero', 'series_at_infinity',
    'projected_series', 'transport_coefficients', 'transport_formula', 'transport_numeric',
    'rational_canonical', 'problem_from_spectrum', 'euler_projected', 'euler_c11',
    'euler_asymptotic_c11',
    'random_problem', 'branch_log',
]

SERIES_TOL = 1e-12
SERIES_CAP = 4096


class TruncationWarning(RuntimeWarning):
    """A Frobenius series was cut off before its terms became negligible."""


@dataclass(frozen=True, eq=False)
class TransportProblem:
    """Residue ``A`` at 0 and residue ``B = -alpha I + beta phi(.) v`` at 1."""

    A: np.ndarray
    v: np.ndarray
    phi: np.ndarray
    alpha: complex = 0.0
    beta: complex = 1.0

    def __post_init__(self):
        A = np.array(self.A, dtype=complex)
        if A.ndim == 0:
            A = A.reshape(1, 1)
        v = np.atleast_1d(np.array(self.v, dtype=complex))
        phi = np.atleast_1d(np.array(self.phi, dtype=complex))
        d = len(v)
        if A.shape != (d, d) or phi.shape != (d,):
            raise ArgumentError(f'inconsistent shapes: A {A.shape}, v {v.shape}, phi {phi.shape}')
        if abs(phi @ v - 1) > 1e-10:
            raise ArgumentError(f'phi(v) must be 1, got {phi @ v}')
        if self.beta == 0:
            raise ArgumentError('beta must be nonzero')
        for arr in (A, v, phi):
            arr.setflags(write=False)
        object.__setattr__(self, 'A', A)
        object.__setattr__(self, 'v', v)
        object.__setattr__(self, 'phi', phi)
        object.__setattr__(self, 'alpha', complex(self.alpha))
        object.__setattr__(self, 'beta', complex(self.beta))

    @classmethod
    def basic(cls, P, v, phi) -> 'TransportProblem':
        """Basic ODE ``f' = P f/z + Q f/(1-z)`` with ``Q(x) = phi(x) v``, ``phi(v) = delta != 0``."""
        v = np.atleast_1d(np.asarray(v, dtype=complex))
        phi = np.atleast_1d(np.asarray(phi, dtype=complex))
        delta = complex(phi @ v)
        if delta == 0:
            raise ArgumentError('phi(v) must be nonzero')
        return cls(P, v / delta, phi, 0.0, delta)

    @property
    def dim(self) -> int:
        return len(self.v)

    @property
    def Q(self) -> np.ndarray:
        """The rank-one idempotent ``phi(.) v``."""
        return np.outer(self.v, self.phi)

    @property
    def B(self) -> np.ndarray:
        return -self.alpha * np.eye(self.dim) + self.beta * self.Q

    @property
    def is_basic(self) -> bool:
        return self.alpha == 0

    def field(self, z: complex) -> np.ndarray:
        """Coefficient matrix of the ODE at ``z``."""
        return self.A / z + self.B / (1 - z)

    def conjugated(self, S) -> 'TransportProblem':
        """Same problem in a new basis: ``(S A S^-1, S v, phi S^-1)``."""
        S = np.asarray(S, dtype=complex)
        Sinv = np.linalg.inv(S)
        return TransportProblem(S @ self.A @ Sinv, S @ self.v, self.phi @ Sinv, self.alpha, self.beta)

    def to_json(self) -> dict:
        def c(x):
            return [float(x.real), float(x.imag)]
        return {
            'dim': self.dim,
            'A': [[c(x) for x in row] for row in self.A],
            'v': [c(x) for x in self.v],
            'phi': [c(x) for x in self.phi],
            'alpha': c(self.alpha),
            'beta': c(self.beta),
        }

    @classmethod
    def from_json(cls, data) -> 'TransportProblem':
        def c(x):
            if isinstance(x, (int, float)):
                return complex(x)
            re, im = x
            return complex(re, im)
        d = int(data['dim'])
        A = np.array([[c(x) for x in row] for row in data['A']], dtype=complex).reshape(d, d)
        return cls(A, [c(x) for x in data['v']], [c(x) for x in data['phi']],
                   c(data.get('alpha', 0.0)), c(data['beta']))


@dataclass(frozen=True, eq=False)
class SpectralData:
    """Eigenpairs of ``A`` and ``A - B``, eigenvectors normalized by ``phi = 1``.

    ``xis[:, i]`` and ``zetas[:, j]`` are the eigenvectors (columns).
    """
    lambdas: np.ndarray
    xis: np.ndarray
    mus: np.ndarray
    zetas: np.ndarray

    def reordered(self, lambdas: Sequence[complex], mus: Sequence[complex]) -> 'SpectralData':
        """Permute to follow the given eigenvalue lists (matched to nearest)."""
        pl = _match(self.lambdas, lambdas)
        pm = _match(self.mus, mus)
        return SpectralData(self.lambdas[pl], self.xis[:, pl], self.mus[pm], self.zetas[:, pm])


def _match(have, want):
    have = np.asarray(have)
    perm = []
    for w in want:
        dist = np.abs(have - complex(w))
        dist[perm] = np.inf
        perm.append(int(np.argmin(dist)))
    return perm


@dataclass
class Diagnostics:
    ok: bool
    violations: list[str] = field(default_factory=list)
    margins: dict = field(default_factory=dict)

    def __bool__(self):
        return self.ok


def _integer_margin(values) -> float:
    """Smallest distance of a pairwise difference to a positive integer or to 0."""
    vals = np.asarray(values)
    worst = math.inf
    for i in range(len(vals)):
        for k in range(len(vals)):
            if i == k:
                continue
            d = vals[i] - vals[k]
            n = max(round(d.real), 0)
            worst = min(worst, abs(d - n))
    return worst


def validate(problem: TransportProblem, tol: float = 1e-8) -> Diagnostics:
    """Check the general-position hypotheses; never raises."""
    diag = Diagnostics(True)
    scale = max(1.0, float(np.linalg.norm(problem.A, 2)), abs(problem.beta))
    for name, M in (('A', problem.A), ('A-B', problem.A - problem.B)):
        try:
            vals, vecs = eigen(M)
        except DegenerateSpectrumError as exc:
            diag.ok = False
            diag.violations.append(f'{name}: repeated eigenvalues ({exc})')
            continue
        except NumericalError as exc:
            diag.ok = False
            diag.violations.append(f'{name}: eigen decomposition failed ({exc})')
            continue
        margin = _integer_margin(vals)
        diag.margins[f'{name} integer gap'] = margin
        if margin < tol * scale:
            diag.ok = False
            diag.violations.append(f'{name}: eigenvalues coincide or differ by a positive integer '
                                   f'(margin {margin:.3g})')
        vecs = vecs / np.linalg.norm(vecs, axis=0)
        phis = np.abs(problem.phi @ vecs) / np.linalg.norm(problem.phi)
        diag.margins[f'{name} min |phi(eigvec)|'] = float(phis.min())
        if phis.min() < tol:
            diag.ok = False
            diag.violations.append(f'{name}: phi annihilates an eigenvector (|phi(x)| = {phis.min():.3g})')
        coeffs = np.abs(np.linalg.solve(vecs, problem.v)) / np.linalg.norm(problem.v)
        diag.margins[f'{name} min |v coefficient|'] = float(coeffs.min())
        if coeffs.min() < tol:
            diag.ok = False
            diag.violations.append(f'{name}: v has a vanishing component in the eigenbasis '
                                   f'({coeffs.min():.3g})')
    return diag


def _require_valid(problem):
    diag = validate(problem)
    if not diag.ok:
        raise ValidationError('; '.join(diag.violations))


def spectral(problem: TransportProblem) -> SpectralData:
    """Eigen data of ``A`` and ``A - B`` with ``phi``-normalized eigenvectors."""
    lam, xi = eigen(problem.A)
    mu, zeta = eigen(problem.A - problem.B)
    xi = xi / (problem.phi @ xi)
    zeta = zeta / (problem.phi @ zeta)
    return SpectralData(lam, xi, mu, zeta)


class ChiValue(NamedTuple):
    resolvent: complex
    product: complex


def _basic_only(problem):
    if not problem.is_basic:
        raise ArgumentError('chi functions are defined for the basic case alpha = 0')


def chi_p(problem: TransportProblem, t: complex, spec: SpectralData | None = None) -> ChiValue:
    """``chi_P(t)`` from the resolvent and from ``prod(t - mu) / prod(t - lambda)``."""
    _basic_only(problem)
    spec = spec or spectral(problem)
    if np.min(np.abs(t - spec.lambdas)) < 1e-14 * max(1.0, abs(t)):
        raise DomainError(f't = {t} is an eigenvalue of A')
    x = np.linalg.solve(t * np.eye(problem.dim) - problem.A, problem.v)
    resolvent = 1 + problem.beta * (problem.phi @ x)
    product = np.prod(t - spec.mus) / np.prod(t - spec.lambdas)
    return ChiValue(complex(resolvent), complex(product))


def chi_r(problem: TransportProblem, t: complex) -> complex:
    """``chi_R(t)`` for ``R = beta Q - A``, by its resolvent."""
    _basic_only(problem)
    R = problem.beta * problem.Q - problem.A
    x = np.linalg.solve(t * np.eye(problem.dim) - R, problem.v)
    return complex(1 + problem.beta * (problem.phi @ x))


def branch_log(z: complex) -> complex:
    """Logarithm with ``arg z`` in ``(0, 2 pi)``; the cut is ``[0, inf)``."""
    z = complex(z)
    if z.imag == 0 and z.real >= 0:
        raise BranchError(f'z = {z} lies on the cut [0, inf)')
    arg = cmath.phase(z)
    if arg <= 0:
        arg += 2 * math.pi
    return complex(math.log(abs(z)), arg)


def _frobenius_sum(A, B, lam, xi, w, nmax):
    """``sum_n xi_n w^n`` with ``(n + lam - A) xi_n = B (xi_0 + ... + xi_{n-1})``."""
    d = len(xi)
    ident = np.eye(d)
    cap = SERIES_CAP if nmax is None else int(nmax)
    term = xi.astype(complex)
    partial = term.copy()       # xi_0 + ... + xi_n
    total = term.copy()         # sum xi_n w^n
    wn = 1.0 + 0j
    ratio = math.inf
    for n in range(1, cap + 1):
        term = np.linalg.solve((n + lam) * ident - A, B @ partial)
        partial = partial + term
        wn = wn * w
        contrib = term * wn
        total = total + contrib
        ratio = np.linalg.norm(contrib) / max(np.linalg.norm(total), 1e-300)
        if nmax is None and ratio < SERIES_TOL and n > 2:
            break
    if ratio > SERIES_TOL:
        warnings.warn(f'Frobenius series truncated at {cap} terms with last-term ratio {ratio:.2g}',
                      TruncationWarning, stacklevel=3)
    return total


def series_at_zero(problem: TransportProblem, i: int, z: complex, nmax: int | None = None,
                   spec: SpectralData | None = None) -> np.ndarray:
    """Canonical solution ``f_i(z) = sum_n xi_{i,n} z^{lambda_i + n}`` for ``|z| < 1``.

    With ``nmax=None`` terms are added until the last one is below ``1e-12``
    relative (at most 4096); otherwise exactly ``nmax`` terms are used.
    """
    z = complex(z)
    logz = branch_log(z)
    if abs(z) >= 1:
        raise DomainError(f'|z| = {abs(z)} must be < 1')
    spec = spec or spectral(problem)
    lam = spec.lambdas[i]
    s = _frobenius_sum(problem.A, problem.B, lam, spec.xis[:, i], z, nmax)
    return cmath.exp(lam * logz) * s


def series_at_infinity(problem: TransportProblem, j: int, z: complex, nmax: int | None = None,
                       spec: SpectralData | None = None) -> np.ndarray:
    """Canonical solution ``h_j(z) = sum_n zeta_{j,n} z^{mu_j - n}`` for ``|z| > 1``.

    In ``w = 1/z`` the equation has residues ``B - A`` at 0 and ``B`` at 1.
    """
    z = complex(z)
    logz = branch_log(z)
    if abs(z) <= 1:
        raise DomainError(f'|z| = {abs(z)} must be > 1')
    spec = spec or spectral(problem)
    mu = spec.mus[j]
    B = problem.B
    s = _frobenius_sum(B - problem.A, B, -mu, spec.zetas[:, j], 1 / z, nmax)
    return cmath.exp(mu * logz) * s


def projected_series(problem: TransportProblem, i: int, z: complex, nmax: int | None = None,
                     spec: SpectralData | None = None) -> complex:
    """``phi(f_i(z)) = z^{lambda_i} (1 - z) sum_n alpha_n z^n`` via the scalar recurrence.

    ``alpha_n = alpha_{n-1} chi_P(lambda_i + n)``, ``alpha_0 = 1``.
    """
    _basic_only(problem)
    z = complex(z)
    logz = branch_log(z)
    spec = spec or spectral(problem)
    lam = spec.lambdas[i]
    cap = SERIES_CAP if nmax is None else int(nmax)
    a = 1.0 + 0j
    total = a
    zn = 1.0 + 0j
    ratio = math.inf
    for n in range(1, cap + 1):
        t = lam + n
        a = a * np.prod(t - spec.mus) / np.prod(t - spec.lambdas)
        zn = zn * z
        total += a * zn
        ratio = abs(a * zn) / max(abs(total), 1e-300)
        if nmax is None and ratio < SERIES_TOL and n > 2:
            break
    if ratio > SERIES_TOL:
        warnings.warn(f'projected series truncated at {cap} terms with last-term ratio {ratio:.2g}',
                      TruncationWarning, stacklevel=2)
    return complex(cmath.exp(lam * logz) * (1 - z) * total)


def _phase(x) -> complex:
    """``exp(i pi x)``; exact for rational ``x`` on the quarter-turn lattice."""
    x = complex(x)
    if x.imag == 0:
        r = x.real % 2
        for k, val in enumerate((1, 1j, -1, -1j)):
            if r == k / 2:
                return complex(val)
    return cmath.exp(1j * cmath.pi * x)


def transport_coefficients(lambdas: Sequence, mus: Sequence, alpha=0) -> np.ndarray:
    """Closed-form transport matrix from the eigenvalues alone.

    ``c_ij = e^{i pi (l_i - m_j)} prod_{k!=i} G(l_i - l_k + 1) prod_{l!=j} G(m_j - m_l)
    / [prod_{l!=j} G(l_i - m_l + alpha + 1) prod_{k!=i} G(m_j - l_k - alpha)]``.

    Arguments may be exact :class:`~fractions.Fraction` values; reciprocal
    Gamma factors then vanish exactly at poles.
    """
    lambdas = list(lambdas)
    mus = list(mus)
    d = len(lambdas)
    if len(mus) != d:
        raise ArgumentError('need as many mus as lambdas')
    c = np.zeros((d, d), dtype=complex)
    for i in range(d):
        for j in range(d):
            val = _phase(lambdas[i] - mus[j])
            for k in range(d):
                if k != i:
                    val *= cgamma(_num_arg(lambdas[i] - lambdas[k] + 1))
                    val *= recip_gamma(_den_arg(mus[j] - lambdas[k] - alpha))
            for l in range(d):
                if l != j:
                    val *= cgamma(_num_arg(mus[j] - mus[l]))
                    val *= recip_gamma(_den_arg(lambdas[i] - mus[l] + alpha + 1))
            c[i, j] = val
    return c


def _num_arg(x):
    from fractions import Fraction
    if isinstance(x, (int, Fraction)):
        return x
    return complex(x)


_den_arg = _num_arg


def transport_formula(problem: TransportProblem, spec: SpectralData | None = None) -> np.ndarray:
    """Transport matrix of ``problem`` from the Gamma-product formula."""
    _require_valid(problem)
    spec = spec or spectral(problem)
    try:
        return transport_coefficients(spec.lambdas, spec.mus, problem.alpha)
    except DomainError as exc:
        raise ValidationError(f'numerator Gamma at a pole: {exc}') from exc


def transport_numeric(problem: TransportProblem, r0: float = 0.1, R: float = 100.0,
                      rtol: float = 1e-10, nmax: int | None = None,
                      spec: SpectralData | None = None, full_output: bool = False):
    """Transport matrix by integrating the ODE from ``-r0`` to ``-R``.

    All ``f_i`` are seeded from their series at ``-r0``, integrated together,
    and matched against the series basis ``h_j(-R)`` with one linear solve.
    With ``full_output`` also returns a dict with the solve residual and the
    condition number of the matching matrix.
    """
    _require_valid(problem)
    spec = spec or spectral(problem)
    d = problem.dim
    z0, z1 = complex(-r0), complex(-R)
    Y0 = np.column_stack([series_at_zero(problem, i, z0, nmax, spec) for i in range(d)])
    Y1 = integrate_ode(problem.field, [z0, z1], Y0, rtol=rtol)
    H = np.column_stack([series_at_infinity(problem, j, z1, nmax, spec) for j in range(d)])
    cond = float(np.linalg.cond(H))
    if not np.isfinite(cond) or cond > 1e14:
        raise NumericalConditioningError(f'matching matrix at z = {z1} is singular (cond {cond:.3g})', cond)
    CT = np.linalg.solve(H, Y1)
    resid = float(np.max(np.abs(H @ CT - Y1)) / max(np.max(np.abs(Y1)), 1e-300))
    c = CT.T
    if full_output:
        return c, {'max_residual': resid, 'condition': cond}
    return c


def rational_canonical(problem: TransportProblem):
    """Basis in which ``P`` and ``P - Q`` are companion matrices.

    For the basic problem (``P = A``, ``Q = beta phi(.) v``) let ``w`` solve
    ``phi(P^j w) = 0`` for ``j < d - 1`` and ``phi(P^{d-1} w) = 1``. In the
    basis ``T = [w, P w, ..., P^{d-1} w]``, ``T^-1 P T`` has ones on the
    subdiagonal and last column ``a``; ``T^-1 Q T`` is zero except for its
    last column ``b``; ``T^-1 (P - Q) T`` is the companion matrix with last
    column ``c = a - b``. (Transposing gives the row-companion layout.)
    ``a`` and ``c`` are the characteristic polynomials of ``P`` and ``P - Q``
    written ``t^d - sum_k x_k t^{k-1}``; ``b_d = Tr Q``.

    Returns ``(T, a, b, c)``.
    """
    _basic_only(problem)
    _require_valid(problem)
    P = problem.A
    d = problem.dim
    rows = [problem.phi]
    for _ in range(d - 1):
        rows.append(rows[-1] @ P)
    K = np.array(rows)
    if np.linalg.cond(K) > 1e12:
        raise ValidationError('phi, phi P, ..., phi P^{d-1} are linearly dependent')
    w = np.linalg.solve(K, np.eye(d)[-1])
    cols = [w]
    for _ in range(d - 1):
        cols.append(P @ cols[-1])
    T = np.column_stack(cols)
    Tinv = np.linalg.inv(T)
    a = (Tinv @ P @ T)[:, -1]
    b = (Tinv @ (problem.beta * problem.Q) @ T)[:, -1]
    return T, a, b, a - b


def problem_from_spectrum(lambdas: Sequence[complex], mus: Sequence[complex],
                          alpha: complex = 0.0) -> TransportProblem:
    """Companion-form problem whose ``A`` has eigenvalues ``lambdas`` and ``A - B`` has ``mus``.

    ``A`` is the companion matrix of ``prod(t - lambda_i)``; ``A - beta Q`` the
    companion matrix of ``prod(t - mu_j + alpha)``, so ``beta Q`` is
    ``b e_d^T`` with ``b = a - c``.
    """
    lambdas = np.array([complex(x) for x in lambdas])
    mus = np.array([complex(x) for x in mus])
    alpha = complex(alpha)
    d = len(lambdas)
    # np.poly gives t^d + p_1 t^{d-1} + ... ; companion last column is -reversed tail
    a = -np.poly(lambdas)[1:][::-1]
    c = -np.poly(mus - alpha)[1:][::-1]
    b = a - c
    A = np.zeros((d, d), dtype=complex)
    A[1:, :-1] = np.eye(d - 1)
    A[:, -1] = a
    beta = b[-1]
    if abs(beta) < 1e-14:
        raise ValidationError('trace of the rank-one part vanishes')
    phi = np.zeros(d, dtype=complex)
    phi[-1] = 1
    return TransportProblem(A, b / beta, phi, alpha, beta)


def _check_euler_constraints(lam, mu):
    failed = []
    if np.any(np.abs(lam.imag) > 1e-12) or np.any(np.abs(mu.imag) > 1e-12):
        failed.append('eigenvalues must be real')
    lam, mu = lam.real, mu.real
    if np.any(np.diff(lam) >= 0):
        failed.append('lambda_1 > lambda_2 > ... (strict)')
    if np.any(np.diff(mu) >= 0):
        failed.append('mu_1 > mu_2 > ... (strict)')
    if not np.all(mu > lam[0]):
        failed.append('mu_j > lambda_1 for all j')
    if not np.all(mu < lam[0] + 1):
        failed.append('mu_j < lambda_1 + 1 for all j')
    if not np.all(mu > lam):
        failed.append('mu_j > lambda_j for all j')
    if failed:
        raise DomainError('Euler integral constraints violated: ' + '; '.join(failed))


def _sorted_real_spectrum(problem, spec):
    spec = spec or spectral(problem)
    lam_order = np.argsort(-spec.lambdas.real)
    mu_order = np.argsort(-spec.mus.real)
    lam = spec.lambdas[lam_order]
    mu = spec.mus[mu_order]
    _check_euler_constraints(lam, mu)
    return lam.real, mu.real, int(lam_order[0]), int(mu_order[0])


def euler_projected(problem: TransportProblem, z: float, quad_n: int = 40,
                    spec: SpectralData | None = None) -> complex:
    """``phi(f_1(z))`` for the largest eigenvalue ``lambda_1``, as a ``(d-1)``-fold Euler integral.

    ``phi(f_1(z)) = (1-z) z^{l_1} K int (1 - z t_2...t_d)^{m_1-l_1-1}
    prod_j t_j^{l_1-m_j} (1-t_j)^{m_j-l_j-1} dt_j`` evaluated by a tensor
    product of Gauss-Jacobi rules with ``quad_n`` nodes per axis.
    """
    _basic_only(problem)
    z = complex(z)
    if z.imag != 0 or z.real >= 0:
        raise DomainError('euler_projected is evaluated at negative real z')
    lam, mu, _, _ = _sorted_real_spectrum(problem, spec)
    d = len(lam)
    logz = branch_log(z)
    K = 1.0
    for j in range(1, d):
        K *= (cgamma(lam[0] - lam[j] + 1) * recip_gamma(lam[0] - mu[j] + 1)
              * recip_gamma(mu[j] - lam[j]))
    if d == 1:
        integral = (1 - z) ** (mu[0] - lam[0] - 1)
    else:
        rules = [gauss_jacobi(quad_n, lam[0] - mu[j], mu[j] - lam[j] - 1) for j in range(1, d)]
        grids = np.meshgrid(*[r[0] for r in rules], indexing='ij')
        weights = np.ones_like(grids[0])
        prod_t = np.ones_like(grids[0])
        for g, (_, w) in zip(grids, rules):
            prod_t = prod_t * g
        wgrids = np.meshgrid(*[r[1] for r in rules], indexing='ij')
        for wg in wgrids:
            weights = weights * wg
        integral = np.sum(weights * (1 - z.real * prod_t) ** (mu[0] - lam[0] - 1))
    return complex((1 - z) * cmath.exp(lam[0] * logz) * K * integral)


def euler_c11(problem: TransportProblem, quad_n: int = 40, spec: SpectralData | None = None) -> complex:
    """Leading transport coefficient from the large-``|z|`` limit of the Euler integral.

    As ``x -> -inf`` the integral behaves like ``K e^{i pi l_1} |x|^{m_1}
    prod_j int t^{m_1-m_j-1} (1-t)^{m_j-l_j-1} dt``; the one-dimensional
    integrals are evaluated by Gauss-Jacobi quadrature of the constant 1.
    """
    _basic_only(problem)
    lam, mu, _, _ = _sorted_real_spectrum(problem, spec)
    d = len(lam)
    K = 1.0
    beta_ints = 1.0
    for j in range(1, d):
        K *= (cgamma(lam[0] - lam[j] + 1) * recip_gamma(lam[0] - mu[j] + 1)
              * recip_gamma(mu[j] - lam[j]))
        _, w = gauss_jacobi(quad_n, mu[0] - mu[j] - 1, mu[j] - lam[j] - 1)
        beta_ints *= w.sum()
    return complex(_phase(lam[0] - mu[0]) * K * beta_ints)


def euler_asymptotic_c11(problem: TransportProblem, x: float = -1e3, quad_n: int = 40,
                         spec: SpectralData | None = None) -> complex:
    """Leading coefficient read off ``phi(f_1(x))`` at one large negative ``x``.

    ``phi(f_1(x))`` is divided by ``(1 - x) |x|^{m_1 - 1} e^{i pi m_1}``, which
    keeps the explicit ``(1 - x)`` factor of the Euler form. The remainder
    decays like ``|x|^{m_j - m_1}``, so the estimate is only good when
    ``c_1j`` is small or ``m_1 - m_j`` is not.
    """
    lam, mu, _, _ = _sorted_real_spectrum(problem, spec)
    val = euler_projected(problem, x, quad_n=quad_n, spec=spec)
    return complex(val / ((1 - x) * abs(x) ** (mu[0] - 1) * _phase(mu[0])))


def random_problem(dim: int, rng: np.random.Generator, alpha: complex | None = None,
                   margin: float = 0.05, max_tries: int = 1000) -> TransportProblem:
    """Draw a random problem passing :func:`validate` (rejection sampling).

    Spectra are kept in a disc of radius about 0.6 so no two eigenvalues come
    within ``margin`` of an integer difference.
    """
    if dim < 1:
        raise ArgumentError('dim must be >= 1')
    for _ in range(max_tries):
        lam = rng.uniform(-0.6, 0.6, dim) + 1j * rng.uniform(-0.3, 0.3, dim)
        S = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
        if np.linalg.cond(S) > 50:
            continue
        A = S @ np.diag(lam) @ np.linalg.inv(S)
        v = rng.normal(size=dim) + 1j * rng.normal(size=dim)
        phi = rng.normal(size=dim) + 1j * rng.normal(size=dim)
        phi = phi / (phi @ v)
        beta = complex(rng.uniform(-0.8, 0.8), rng.uniform(-0.3, 0.3))
        if abs(beta) < 0.1:
            continue
        a = complex(rng.uniform(-0.3, 0.3)) if alpha is None else complex(alpha)
        prob = TransportProblem(A, v, phi, a, beta)
        diag = validate(prob)
        if not diag.ok:
            continue
        if min(m for k, m in diag.margins.items() if 'integer gap' in k) < margin:
            continue
        if min(m for k, m in diag.margins.items() if 'min |' in k) < margin:
            continue
        try:
            spec = spectral(prob)
        except NumericalError:
            continue
        if np.max(np.abs(spec.mus)) > 1.2 or _integer_margin(spec.mus) < margin:
            continue
        return prob
    raise NumericalError(f'no valid random problem of dimension {dim} after {max_tries} tries')

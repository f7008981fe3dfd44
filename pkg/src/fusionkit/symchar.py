"""Weyl characters, the Pieri rule and classical SU(N) tensor products.

Classical multiplicities ``N_{fg}^h`` are computed without the
Littlewood-Richardson rule: ``X_g`` is expanded as a signed integer
polynomial in the elementary symmetric functions (dual Jacobi-Trudi), and
each monomial ``e_1^{a_1} ... e_N^{a_N}`` acts on ``{f: 1}`` through iterated
Pieri steps. Negative contributions cancel in the final sum.
"""
from __future__ import annotations

import json
from collections import Counter
from fractions import Fraction
from typing import Mapping, Sequence

import numpy as np

from .errors import (ArgumentError, DimensionError, DomainError,
                     InternalConsistencyError, InvalidSignatureError,
                     SingularPointError)
from .repcore import (Signature, add_boxes, as_signature, normalize,
                      sig_from_str, sig_to_str)

__all__ = [
    'TensorDecomposition', 'ElementaryPolynomial', 'eval_character',
    'eval_elementary', 'dimension', 'pieri', 'jacobi_trudi_expand',
    'tensor_decompose',
]


class TensorDecomposition(dict):
    """Mapping normalized signature -> multiplicity.

    Zero multiplicities are never stored.
    """

    @classmethod
    def from_terms(cls, terms: Mapping[Sequence[int], int]) -> 'TensorDecomposition':
        acc = Counter()
        for sig, m in terms.items():
            acc[normalize(sig)] += int(m)
        return cls(sorted((k, v) for k, v in acc.items() if v != 0))

    def total_dimension(self, N: int) -> int:
        return sum(m * dimension(sig, N) for sig, m in self.items())

    def to_json(self) -> dict:
        return {sig_to_str(k): int(v) for k, v in sorted(self.items())}

    @classmethod
    def from_json(cls, data: Mapping[str, int]) -> 'TensorDecomposition':
        return cls.from_terms({sig_from_str(k): v for k, v in data.items()})

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)


class ElementaryPolynomial(dict):
    """Integer polynomial in ``e_1, ..., e_N``: exponent tuple -> coefficient."""

    def __call__(self, e_values: Sequence[complex]) -> complex:
        """Evaluate at ``e_values = (e_1, ..., e_N)``."""
        e_values = np.asarray(e_values, dtype=complex)
        total = 0j
        for expo, c in self.items():
            total += c * np.prod(e_values ** np.asarray(expo))
        return complex(total)


def _exponents(sig: Signature) -> np.ndarray:
    N = len(sig)
    return np.array([f + N - 1 - i for i, f in enumerate(sig)])


def eval_character(sig: Sequence[int], z: Sequence[complex], N: int | None = None) -> complex:
    """Weyl character ``det(z_j^{f_i+N-i}) / det(z_j^{N-i})``.

    Both determinants are LU-factorized with partial pivoting (LAPACK via
    :func:`numpy.linalg.det`).
    """
    sig = as_signature(sig)
    z = np.asarray(z, dtype=complex)
    if N is None:
        N = len(sig)
    if len(sig) != N or z.shape != (N,):
        raise DimensionError(f'need {N} signature entries and {N} points')
    if len(set(z.tolist())) < N:
        raise SingularPointError(f'repeated entries in {z}')
    num_exp = _exponents(sig)
    den_exp = np.arange(N - 1, -1, -1)
    if np.any(z == 0) and min(num_exp.min(), den_exp.min()) < 0:
        raise DomainError('zero entry with a negative exponent')
    numerator = np.linalg.det(z[np.newaxis, :] ** num_exp[:, np.newaxis])
    denominator = np.linalg.det(z[np.newaxis, :] ** den_exp[:, np.newaxis])
    if denominator == 0:
        raise SingularPointError('Vandermonde determinant vanishes')
    return complex(numerator / denominator)


def eval_elementary(k: int, z: Sequence[complex]) -> complex:
    """k-th elementary symmetric polynomial of ``z``; ``e_0 = 1``."""
    z = np.asarray(z, dtype=complex)
    N = len(z)
    if not 0 <= k <= N:
        raise ArgumentError(f'k must satisfy 0 <= k <= {N}, got {k}')
    e = np.zeros(N + 1, dtype=complex)
    e[0] = 1
    for x in z:
        e[1:] = e[1:] + x * e[:-1]
    return complex(e[k])


def dimension(sig: Sequence[int], N: int | None = None) -> int:
    """Weyl dimension formula, computed exactly."""
    sig = as_signature(sig)
    if N is None:
        N = len(sig)
    if len(sig) != N:
        raise DimensionError(f'signature {sig} has length {len(sig)}, expected {N}')
    d = Fraction(1)
    for i in range(N):
        for j in range(i + 1, N):
            d *= Fraction(sig[i] - sig[j] + j - i, j - i)
    assert d.denominator == 1
    return int(d)


def _pieri_counter(terms: Mapping[Signature, int], k: int, N: int) -> Counter:
    out = Counter()
    for f, m in terms.items():
        for g in add_boxes(f, k, N):
            out[normalize(g)] += m
    return Counter({s: m for s, m in out.items() if m != 0})


def pieri(dec: Mapping[Sequence[int], int], k: int, N: int) -> TensorDecomposition:
    """Multiply a decomposition by the k-th exterior power, linearly in the multiplicities."""
    if not 1 <= k <= N:
        raise ArgumentError(f'k must satisfy 1 <= k <= N={N}, got {k}')
    terms = {as_signature(s): m for s, m in dec.items()}
    return TensorDecomposition.from_terms(_pieri_counter(terms, k, N))


def _conjugate_partition(sig: Signature) -> list[int]:
    return [sum(1 for x in sig if x >= c) for c in range(1, sig[0] + 1)]


def jacobi_trudi_expand(sig: Sequence[int], N: int | None = None) -> ElementaryPolynomial:
    """Expand ``X_sig`` as an integer polynomial in ``e_1, ..., e_N``.

    Dual Jacobi-Trudi: ``X_f = det(e_{f'_i - i + j})`` over the conjugate
    partition ``f'``. The determinant is expanded column by column with a
    bitmask over the rows already used.
    """
    sig = as_signature(sig)
    if N is None:
        N = len(sig)
    if len(sig) != N:
        raise DimensionError(f'signature {sig} has length {len(sig)}, expected {N}')
    if sig[-1] != 0:
        raise InvalidSignatureError(f'jacobi_trudi_expand needs a normalized signature, got {sig}')
    cols = _conjugate_partition(sig)
    m = len(cols)
    zero = (0,) * N
    if m == 0:
        return ElementaryPolynomial({zero: 1})

    def entry(i, j):
        idx = cols[i] - i + j
        return idx if 0 <= idx <= N else None

    # layer[mask] = signed polynomial from expanding the first popcount(mask) columns
    layer = {0: {zero: 1}}
    for j in range(m):
        nxt = {}
        for mask, poly in layer.items():
            for i in range(m):
                if mask >> i & 1:
                    continue
                idx = entry(i, j)
                if idx is None:
                    continue
                # sign of placing row i after the rows already used
                sign = -1 if bin(mask >> (i + 1)).count('1') % 2 else 1
                target = nxt.setdefault(mask | 1 << i, {})
                for expo, c in poly.items():
                    if idx > 0:
                        expo = expo[:idx - 1] + (expo[idx - 1] + 1,) + expo[idx:]
                    target[expo] = target.get(expo, 0) + sign * c
        layer = nxt
    result = layer.get((1 << m) - 1, {})
    return ElementaryPolynomial({e: c for e, c in sorted(result.items()) if c != 0})


def tensor_decompose(f: Sequence[int], g: Sequence[int], N: int | None = None) -> TensorDecomposition:
    """Classical decomposition of ``V_f (x) V_g`` into irreducibles."""
    f = as_signature(f)
    g = as_signature(g)
    if N is None:
        N = len(f)
    if len(f) != N or len(g) != N:
        raise DimensionError(f'signatures must have length {N}')
    f, g = normalize(f), normalize(g)
    poly = jacobi_trudi_expand(g, N)
    total = Counter()
    for expo, coeff in poly.items():
        terms = Counter({f: 1})
        for k, power in enumerate(expo, start=1):
            for _ in range(power):
                terms = _pieri_counter(terms, k, N)
        for s, m in terms.items():
            total[s] += coeff * m
    negative = {s: m for s, m in total.items() if m < 0}
    if negative:
        raise InternalConsistencyError(f'negative multiplicities in {f} x {g}: {negative}')
    return TensorDecomposition.from_terms(total)

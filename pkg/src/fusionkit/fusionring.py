"""The level-l fusion ring of LSU(N), computed two ways.

``fuse`` folds the classical tensor product into the fundamental alcove of
the affine Weyl group ``Lambda_0 x| S_N`` (Verlinde formula). ``fuse_numeric``
instead restricts characters to the finite set of Verlinde points and solves
for the coefficients of the product in the basis of permissible characters.
The two methods share only the classical decomposition input of ``fuse`` and
the character evaluator of ``fuse_numeric``; they are meant to cross-check
each other.
"""
from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations_with_replacement
from typing import Iterator, Mapping, Sequence

import numpy as np

from .errors import ArgumentError, InternalConsistencyError, NumericalConditioningError, PermissibilityError
from .repcore import (LevelContext, Signature, as_signature, enumerate_permissible,
                      is_permissible, normalize, sig_from_str, sig_to_str)
from .symchar import eval_character, tensor_decompose

__all__ = [
    'FusionElement', 'FoldResult', 'VerlindePoint', 'FusionTable', 'weyl_fold',
    'fuse', 'verlinde_points', 'theta', 'character_matrix', 'fuse_numeric',
    'fusion_table', 'kernel_residual', 'ROUNDING_GATE',
]

ROUNDING_GATE = 1e-6


class FusionElement(dict):
    """Integer combination of permissible, normalized signatures."""

    @classmethod
    def from_terms(cls, terms: Mapping[Sequence[int], int]) -> 'FusionElement':
        acc = Counter()
        for sig, m in terms.items():
            acc[normalize(sig)] += int(m)
        return cls(sorted((k, v) for k, v in acc.items() if v != 0))

    def to_json(self) -> dict:
        return {sig_to_str(k): int(v) for k, v in sorted(self.items())}

    @classmethod
    def from_json(cls, data: Mapping[str, int]) -> 'FusionElement':
        return cls.from_terms({sig_from_str(k): v for k, v in data.items()})


@dataclass(frozen=True)
class FoldResult:
    """``sign`` is det of the folding element, or 0 on a wall; ``folded`` is its image."""
    sign: int
    folded: Signature


@dataclass(frozen=True)
class VerlindePoint:
    entries: np.ndarray
    label: Signature


def _check_permissible(sig, ctx):
    sig = normalize(sig)
    if len(sig) != ctx.N:
        raise ArgumentError(f'signature {sig} has length {len(sig)}, expected N={ctx.N}')
    if not is_permissible(sig, ctx):
        raise PermissibilityError(f'{sig} is not permissible at {ctx}')
    return sig


def weyl_fold(m: Sequence[int], ctx: LevelContext) -> FoldResult:
    """Bring the integer vector ``m`` into the fundamental domain of ``Lambda_0 x| S_N``.

    Alternates sorting (tracking permutation parity) with the translation
    ``(-kappa, 0, ..., 0, kappa)`` on the extremal pair until
    ``x_1 - x_N <= kappa``. Points on the boundary have a nontrivial
    stabiliser and get sign 0.
    """
    x = [int(v) for v in m]
    if len(x) != ctx.N:
        raise ArgumentError(f'vector of length {len(x)}, expected N={ctx.N}')
    kappa = ctx.kappa
    sign = 1
    while True:
        # insertion sort, descending; each swap is a transposition
        for i in range(1, len(x)):
            j = i
            while j > 0 and x[j - 1] < x[j]:
                x[j - 1], x[j] = x[j], x[j - 1]
                sign = -sign
                j -= 1
        if x[0] - x[-1] > kappa:
            x[0] -= kappa
            x[-1] += kappa
        else:
            break
    folded = tuple(x)
    on_wall = x[0] - x[-1] == kappa or any(a == b for a, b in zip(x, x[1:]))
    return FoldResult(0 if on_wall else sign, folded)


def fuse(f: Sequence[int], g: Sequence[int], ctx: LevelContext) -> FusionElement:
    """Level-l fusion product by affine-Weyl folding of the classical product."""
    f = _check_permissible(f, ctx)
    g = _check_permissible(g, ctx)
    delta = ctx.weyl
    out = Counter()
    for h, mult in tensor_decompose(f, g, ctx.N).items():
        res = weyl_fold([a + b for a, b in zip(h, delta)], ctx)
        if res.sign:
            out[normalize([a - b for a, b in zip(res.folded, delta)])] += res.sign * mult
    if any(v < 0 for v in out.values()):
        raise InternalConsistencyError(f'negative fusion multiplicity in {f} x {g}: {dict(out)}')
    return FusionElement.from_terms(out)


@lru_cache(maxsize=None)
def _verlinde_points(ctx: LevelContext) -> tuple:
    N, kappa = ctx.N, ctx.kappa
    pts = []
    for h in enumerate_permissible(ctx):
        nums = [hk + N - k for k, hk in enumerate(h, start=1)]
        H = Fraction(sum(nums), N)
        phases = [(n - H) / kappa for n in nums]
        entries = np.array([np.exp(2j * np.pi * float(p)) for p in phases])
        entries.setflags(write=False)
        pts.append(VerlindePoint(entries, h))
    return tuple(pts)


def verlinde_points(ctx: LevelContext) -> list[VerlindePoint]:
    """The diagonal matrices ``D(h)``, one per permissible ``h``, in enumeration order."""
    return list(_verlinde_points(ctx))


def theta(f: Sequence[int], ctx: LevelContext) -> np.ndarray:
    """Character of ``V_f`` restricted to the Verlinde points."""
    f = as_signature(f)
    return np.array([eval_character(f, p.entries, ctx.N) for p in _verlinde_points(ctx)])


@lru_cache(maxsize=None)
def _character_matrix(ctx: LevelContext) -> np.ndarray:
    cols = [theta(h, ctx) for h in enumerate_permissible(ctx)]
    M = np.column_stack(cols)
    M.setflags(write=False)
    return M


def character_matrix(ctx: LevelContext) -> np.ndarray:
    """``M[t, h] = chi_h(t)``: rows are Verlinde points, columns permissible signatures."""
    return _character_matrix(ctx).copy()


def fuse_numeric(f: Sequence[int], g: Sequence[int], ctx: LevelContext,
                 full_output: bool = False):
    """Fusion product from characters at the Verlinde points.

    Solves ``M c = theta_f * theta_g`` and rounds ``c`` to integers. With
    ``full_output`` returns ``(element, residual)``, where ``residual`` is the
    largest distance of a solution entry from its rounded value.
    """
    f = _check_permissible(f, ctx)
    g = _check_permissible(g, ctx)
    M = _character_matrix(ctx)
    rhs = theta(f, ctx) * theta(g, ctx)
    c = np.linalg.solve(M, rhs)
    rounded = np.round(c.real)
    residual = float(np.max(np.abs(c - rounded)))
    if not residual < ROUNDING_GATE:
        cond = float(np.linalg.cond(M))
        raise NumericalConditioningError(
            f'rounding residual {residual:.3g} >= {ROUNDING_GATE:g} (cond(M) = {cond:.3g})', cond)
    labels = enumerate_permissible(ctx)
    elem = FusionElement.from_terms({h: int(v) for h, v in zip(labels, rounded)})
    if full_output:
        return elem, residual
    return elem


class FusionTable(Mapping):
    """Fusion products of all unordered permissible pairs.

    Lookup is symmetric: ``table[f, g]`` and ``table[g, f]`` return the same
    element. Iteration yields each unordered pair once, ``f <= g``.
    """

    def __init__(self, ctx: LevelContext, entries: Mapping):
        self.ctx = ctx
        self._entries = dict(sorted(
            ((tuple(sorted((normalize(f), normalize(g)))), FusionElement(e))
             for (f, g), e in entries.items())))

    def __getitem__(self, key):
        f, g = key
        return self._entries[tuple(sorted((normalize(f), normalize(g))))]

    def __iter__(self) -> Iterator:
        return iter(self._entries)

    def __len__(self):
        return len(self._entries)

    def __eq__(self, other):
        if not isinstance(other, FusionTable):
            return NotImplemented
        return self.ctx == other.ctx and self._entries == other._entries

    def coefficient(self, f, g, h) -> int:
        return self[f, g].get(normalize(h), 0)

    def to_json(self) -> dict:
        return {
            'n': self.ctx.N,
            'level': self.ctx.level,
            'entries': [
                {'f': list(f), 'g': list(g), 'result': e.to_json()}
                for (f, g), e in self._entries.items()
            ],
        }

    @classmethod
    def from_json(cls, data: Mapping) -> 'FusionTable':
        ctx = LevelContext(int(data['n']), int(data['level']))
        entries = {
            (tuple(d['f']), tuple(d['g'])): FusionElement.from_json(d['result'])
            for d in data['entries']
        }
        return cls(ctx, entries)

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)


def fusion_table(ctx: LevelContext, method: str = 'folding') -> FusionTable:
    """Fuse every unordered pair of permissible signatures."""
    if method == 'folding':
        op = fuse
    elif method == 'verlinde':
        op = fuse_numeric
    else:
        raise ArgumentError(f'unknown method {method!r}')
    labels = enumerate_permissible(ctx)
    return FusionTable(ctx, {(f, g): op(f, g, ctx) for f, g in combinations_with_replacement(labels, 2)})


def kernel_residual(f: Sequence[int], ctx: LevelContext) -> float:
    """``max |chi_f|`` over the Verlinde points, for ``f_1 - f_N = level + 1``."""
    f = as_signature(f)
    if len(f) != ctx.N:
        raise ArgumentError(f'signature {f} has length {len(f)}, expected N={ctx.N}')
    if f[0] - f[-1] != ctx.level + 1:
        raise ArgumentError(f'kernel_residual needs f_1 - f_N = level + 1, got {f}')
    return float(np.max(np.abs(theta(f, ctx))))

"""Signatures (Young diagrams) of SU(N) and their combinatorics.

A signature is a weakly decreasing tuple of integers of length N. Two
signatures that differ by a constant vector label the same SU(N)
representation; the canonical representative has last entry 0.

All functions here are pure and work on plain tuples, so signatures can be
used directly as dictionary keys.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import comb
from typing import Iterable, Sequence

from .errors import ArgumentError, DimensionError, InvalidSignatureError

__all__ = [
    'Signature', 'LevelContext', 'as_signature', 'normalize', 'is_permissible',
    'add_boxes', 'covers', 'lower_covers_su', 'casimir_delta', 'conjugate',
    'enumerate_permissible', 'paths', 'sig_to_str', 'sig_from_str',
]

Signature = tuple[int, ...]


@dataclass(frozen=True)
class LevelContext:
    """Rank ``N`` of SU(N) together with the level."""

    N: int
    level: int

    def __post_init__(self):
        if int(self.N) != self.N or self.N < 2:
            raise ArgumentError(f'N must be an integer >= 2, got {self.N!r}')
        if int(self.level) != self.level or self.level < 1:
            raise ArgumentError(f'level must be an integer >= 1, got {self.level!r}')

    @property
    def kappa(self) -> int:
        """N + level."""
        return self.N + self.level

    @property
    def weyl(self) -> Signature:
        """The Weyl vector (N-1, N-2, ..., 1, 0)."""
        return tuple(range(self.N - 1, -1, -1))

    def __str__(self):
        return f'SU({self.N}) level {self.level}'


def as_signature(seq: Iterable[int]) -> Signature:
    """Convert to a tuple of ints and check it is weakly decreasing."""
    sig = tuple(int(x) for x in seq)
    if len(sig) == 0:
        raise InvalidSignatureError('empty signature')
    if any(a < b for a, b in zip(sig, sig[1:])):
        raise InvalidSignatureError(f'signature {sig} is not weakly decreasing')
    return sig


def normalize(sig: Sequence[int]) -> Signature:
    """Shift ``sig`` by a constant so that its last entry is 0."""
    sig = as_signature(sig)
    last = sig[-1]
    return tuple(x - last for x in sig)


def _check_length(sig, N):
    if len(sig) != N:
        raise DimensionError(f'signature {tuple(sig)} has length {len(sig)}, expected {N}')


def is_permissible(sig: Sequence[int], ctx: LevelContext) -> bool:
    """Level-``ctx.level`` quantisation condition ``f_1 - f_N <= level``."""
    sig = as_signature(sig)
    _check_length(sig, ctx.N)
    return sig[0] - sig[-1] <= ctx.level


def add_boxes(sig: Sequence[int], k: int, N: int | None = None) -> list[Signature]:
    """All diagrams obtained by adding ``k`` boxes to ``sig``, no two in one row.

    The result is not normalized, so ``|g| = |sig| + k`` for every ``g``.
    Ordered by the set of rows receiving a box (lexicographically).
    """
    sig = as_signature(sig)
    if N is None:
        N = len(sig)
    _check_length(sig, N)
    if not 1 <= k <= N:
        raise ArgumentError(f'k must satisfy 1 <= k <= N={N}, got {k}')
    out = []
    for rows in combinations(range(N), k):
        g = list(sig)
        for r in rows:
            g[r] += 1
        if all(a >= b for a, b in zip(g, g[1:])):
            out.append(tuple(g))
    return out


def covers(f: Sequence[int], g: Sequence[int]) -> bool:
    """True iff ``g`` is ``f`` with one box added.

    Signatures are compared as SU(N) classes: ``g`` may be given in any
    representative, e.g. ``covers((1, 1, 0), (0, 0, 0))`` is true because
    ``(1, 1, 1)`` and ``(0, 0, 0)`` agree up to a constant.
    """
    f = as_signature(f)
    g = as_signature(g)
    if len(f) != len(g):
        raise DimensionError('signatures of different length')
    N = len(f)
    diff = [b - a for a, b in zip(f, g)]
    # g - f must be e_i + c(1,...,1); the shift c is fixed by the sums
    total = sum(diff) - 1
    if total % N:
        return False
    c = total // N
    unit = [d - c for d in diff]
    if sorted(unit) != [0] * (N - 1) + [1]:
        return False
    return tuple(a + u for a, u in zip(f, unit)) in add_boxes(f, 1, N)


def lower_covers_su(sig: Sequence[int], N: int | None = None) -> list[Signature]:
    """Normalized ``f`` with ``V_f`` a summand of the dual vector rep times ``V_sig``.

    A box may be removed from row ``k < N`` when ``sig_k > sig_{k+1}``; removal
    from row ``N`` is always allowed and is followed by renormalization. The
    count equals ``len(add_boxes(sig, 1))``. Ordered by row.
    """
    sig = normalize(sig)
    if N is None:
        N = len(sig)
    _check_length(sig, N)
    out = []
    for k in range(N):
        if k == N - 1 or sig[k] > sig[k + 1]:
            f = list(sig)
            f[k] -= 1
            out.append(normalize(f))
    return out


def casimir_delta(sig: Sequence[int], N: int | None = None) -> Fraction:
    """Quadratic Casimir eigenvalue on ``V_sig``, as an exact rational."""
    sig = as_signature(sig)
    if N is None:
        N = len(sig)
    _check_length(sig, N)
    s = sum(f * f + f * (N - 2 * i + 1) for i, f in enumerate(sig, start=1))
    return Fraction(s) - Fraction(sum(sig) ** 2, N)


def conjugate(sig: Sequence[int]) -> Signature:
    """Signature of the dual representation, ``f'_i = -f_{N-i+1}``, normalized."""
    sig = as_signature(sig)
    return normalize([-x for x in reversed(sig)])


def enumerate_permissible(ctx: LevelContext) -> list[Signature]:
    """Normalized permissible signatures in increasing lexicographic order."""
    N, level = ctx.N, ctx.level
    out = []

    def rec(prefix, bound):
        if len(prefix) == N - 1:
            out.append(tuple(prefix) + (0,))
            return
        for x in range(bound + 1):
            rec(prefix + [x], x)

    for first in range(level + 1):
        rec([first], first)
    out.sort()
    assert len(out) == comb(N + level - 1, N - 1)
    return out


def paths(f: Sequence[int], g: Sequence[int], ctx: LevelContext,
          permissible_only: bool = False) -> list[list[Signature]]:
    """All chains ``f = f_0 < f_1 < ... < f_k = g`` of single-box additions.

    If ``|g| < |f|`` then ``g`` is first shifted by the smallest constant
    vector making ``|g| >= |f|``. With ``permissible_only`` every member of
    the chain, endpoints included, must be permissible.
    """
    f = as_signature(f)
    g = as_signature(g)
    _check_length(f, ctx.N)
    _check_length(g, ctx.N)
    N = ctx.N
    deficit = sum(f) - sum(g)
    if deficit > 0:
        shift = -(-deficit // N)
        g = tuple(x + shift for x in g)
    if any(a > b for a, b in zip(f, g)):
        return []

    def ok(s):
        return not permissible_only or s[0] - s[-1] <= ctx.level

    if not (ok(f) and ok(g)):
        return []
    out = []

    def rec(chain):
        cur = chain[-1]
        if cur == g:
            out.append(list(chain))
            return
        for nxt in add_boxes(cur, 1, N):
            if all(a <= b for a, b in zip(nxt, g)) and ok(nxt):
                chain.append(nxt)
                rec(chain)
                chain.pop()

    rec([f])
    return out


def sig_to_str(sig: Sequence[int]) -> str:
    """``(2, 1, 0)`` -> ``'2,1,0'``; the key format used in JSON output."""
    return ','.join(str(int(x)) for x in sig)


def sig_from_str(text: str) -> Signature:
    """Parse ``'2,1,0'`` into a signature."""
    try:
        parts = [int(p) for p in text.replace(' ', '').split(',') if p != '']
    except ValueError as exc:
        raise InvalidSignatureError(f'cannot parse signature {text!r}') from exc
    return as_signature(parts)

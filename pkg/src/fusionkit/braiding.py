"""Braiding of vector and dual-vector primary fields from KZ transport.

The four-point KZ equation restricted to a multiplicity space reduces to a
transport problem whose spectra are differences of Casimir constants. Only
those spectra are needed (transport depends on eigenvalues alone), so the
Casimir operators are never built as matrices.

Cases:

- ``A``: vector then dual vector around a fixed middle signature ``g``.
  In-channels remove a box from ``g``, out-channels add one.
- ``B``: two vectors from ``f`` to ``h`` with two intermediate signatures.
- ``C``: vector/dual pair with a one-dimensional channel space.
- ``D``: two vectors with a single intermediate; the coefficient is
  ``exp(i pi nu)`` with ``nu = (+-N - 1) / (N kappa)``.

All exponents are exact :class:`~fractions.Fraction` values, so entries on
non-permissible channels come out as exact zeros. The rule that holds is:
for a permissible in-channel, the entry is 0 iff the out-channel is not
permissible. Rows whose in-channel is not permissible carry no physical
field and may have zeros anywhere.

Anomaly exponents use the denominator ``2 kappa`` in all four cases, e.g.
``(Delta_h + Delta_f - Delta_g - Delta_g1) / (2 kappa)`` in case B.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import NamedTuple, Sequence

import numpy as np

from .errors import ArgumentError, InternalConsistencyError, PermissibilityError
from .repcore import (LevelContext, Signature, add_boxes, as_signature, casimir_delta, covers,
                      enumerate_permissible, is_permissible, lower_covers_su, normalize)
from .transport import _phase, problem_from_spectrum, spectral, transport_coefficients, transport_numeric

__all__ = [
    'BraidContext', 'KZParameters', 'BraidCoefficients', 'VanishingReport',
    'kz_parameters', 'braid_matrix', 'abelian_coefficients', 'braid_problem',
    'braid_numeric', 'vanishing_report', 'nu_pm',
]

CASES = ('A', 'B', 'C', 'D')


def _box(N):
    return (1,) + (0,) * (N - 1)


def _shift_to_size(sig, size):
    """Shift ``sig`` by a constant vector so that its entries sum to ``size``."""
    N = len(sig)
    diff = size - sum(sig)
    if diff % N:
        raise ArgumentError(f'{sig} has no representative with |h| = {size}')
    return tuple(x + diff // N for x in sig)


@dataclass(frozen=True)
class BraidContext:
    """Fixed signatures of a braiding problem.

    Use the ``case_*`` constructors, which validate the channel structure.
    Signatures are stored normalized except ``h``, which is kept with
    ``|h| = |f| + 2`` in cases B and D.
    """
    ctx: LevelContext
    case: str
    g: Signature | None = None
    f: Signature | None = None
    h: Signature | None = None
    g1: Signature | None = None
    intermediates: tuple = field(default=())

    @classmethod
    def case_a(cls, ctx: LevelContext, g: Sequence[int]) -> 'BraidContext':
        g = _fixed(g, ctx)
        return cls(ctx, 'A', g=g)

    @classmethod
    def case_b(cls, ctx: LevelContext, f: Sequence[int], h: Sequence[int],
               check_h: bool = True) -> 'BraidContext':
        """Two vectors from ``f`` to ``h``; falls back to case D with one intermediate."""
        f = _fixed(f, ctx)
        h = _shift_to_size(_fixed(h, ctx, check=check_h), sum(f) + 2)
        mids = tuple(g for g in add_boxes(f, 1, ctx.N) if covers(g, h))
        if len(mids) == 2:
            return cls(ctx, 'B', f=f, h=h, intermediates=mids)
        if len(mids) == 1:
            return cls(ctx, 'D', f=f, h=h, g=mids[0], intermediates=mids)
        raise ArgumentError(f'no chain of two boxes from {f} to {h}')

    @classmethod
    def case_c(cls, ctx: LevelContext, f: Sequence[int], g: Sequence[int],
               g1: Sequence[int]) -> 'BraidContext':
        """``g != g1`` both one box above ``f``; ``h`` is their union."""
        f = _fixed(f, ctx, check=False)
        g = _shift_to_size(_fixed(g, ctx), sum(f) + 1)
        g1 = _shift_to_size(_fixed(g1, ctx), sum(f) + 1)
        if g == g1 or not (covers(f, g) and covers(f, g1)):
            raise ArgumentError('case C needs two distinct signatures one box above f')
        h = tuple(a + b - c for a, b, c in zip(g, g1, f))
        return cls(ctx, 'C', f=f, g=g, g1=g1, h=h)

    @classmethod
    def case_d(cls, ctx: LevelContext, f: Sequence[int], h: Sequence[int]) -> 'BraidContext':
        """Single intermediate. Only ``f`` must be permissible: ``nu`` does not depend on ``h``."""
        bc = cls.case_b(ctx, f, h, check_h=False)
        if bc.case != 'D':
            raise ArgumentError(f'{f} -> {h} has two intermediate signatures; use case B')
        return bc

    @property
    def symmetric(self) -> bool:
        """Case D: True if both boxes land in the same row."""
        if self.case != 'D':
            raise ArgumentError('only defined for case D')
        return max(a - b for a, b in zip(self.h, self.f)) == 2


def _fixed(sig, ctx, check=True):
    sig = normalize(as_signature(sig))
    if len(sig) != ctx.N:
        raise ArgumentError(f'signature {sig} has length {len(sig)}, expected N={ctx.N}')
    if check and not is_permissible(sig, ctx):
        raise PermissibilityError(f'{sig} is not permissible at {ctx}')
    return sig


class KZParameters(NamedTuple):
    channels_in: list
    channels_out: list
    lambdas: list
    mus: list
    alpha: Fraction
    beta: Fraction
    anomalies: dict


def nu_pm(ctx: LevelContext, sign: int) -> Fraction:
    """``nu_+-  = (+-N - 1) / (N kappa)``."""
    return Fraction(sign * ctx.N - 1, ctx.N * ctx.kappa)


def kz_parameters(bc: BraidContext) -> KZParameters:
    """Eigenvalues, ``alpha``, ``beta`` and anomaly exponents, all exact.

    ``beta`` is obtained from the trace identity
    ``sum(lambdas) - sum(mus) = -d alpha + beta`` and checked against the
    value predicted by the Casimir of the two inserted boxes. The
    one-dimensional cases C and D are returned in scalar form with
    ``alpha = 0`` and ``beta = lambda - mu``.
    """
    ctx = bc.ctx
    N, two_k = ctx.N, 2 * ctx.kappa
    D = casimir_delta
    d_box = D(_box(N))
    if bc.case == 'A':
        g = bc.g
        ins = lower_covers_su(g)
        outs = [normalize(h) for h in add_boxes(g, 1)]
        lambdas = [(D(f) - d_box - D(g)) / two_k for f in ins]
        mus = [(D(g) - D(h) - d_box) / two_k for h in outs]
        alpha = Fraction(1, N * ctx.kappa)
        expected = Fraction(N, ctx.kappa)
        anomalies = {(f, h): (2 * D(g) - D(f) - D(h)) / two_k for f in ins for h in outs}
    elif bc.case == 'B':
        f, h = bc.f, bc.h
        ins = outs = [normalize(g) for g in bc.intermediates]
        lambdas = [(D(g) - D(f) - d_box) / two_k for g in ins]
        mus = [(D(h) - D(g) - d_box) / two_k for g in ins]
        alpha = Fraction(N - 1, N * ctx.kappa)
        expected = Fraction(2, ctx.kappa)
        anomalies = {(g, g1): (D(h) + D(f) - D(g) - D(g1)) / two_k for g in ins for g1 in outs}
    elif bc.case == 'C':
        f, g, g1, h = bc.f, bc.g, bc.g1, bc.h
        ins, outs = [normalize(f)], [normalize(h)]
        lam = (D(f) - d_box - D(g1)) / two_k
        mu = (D(g) - d_box - D(h)) / two_k
        if lam - mu != -Fraction(1, N * ctx.kappa):
            raise InternalConsistencyError(f'case C exponent gap {lam - mu}')
        anomalies = {(ins[0], outs[0]): (D(g) + D(g1) - D(f) - D(h)) / two_k}
        return KZParameters(ins, outs, [lam], [mu], Fraction(0), lam - mu, anomalies)
    elif bc.case == 'D':
        f, g, h = bc.f, bc.g, bc.h
        ins = outs = [normalize(g)]
        lam = (D(g) - D(f) - d_box) / two_k
        mu = (D(h) - D(g) - d_box) / two_k
        nu = nu_pm(ctx, 1 if bc.symmetric else -1)
        if mu - lam != nu:
            raise InternalConsistencyError(f'case D exponent gap {mu - lam} != {nu}')
        anomalies = {(ins[0], outs[0]): (D(h) + D(f) - 2 * D(g)) / two_k}
        return KZParameters(ins, outs, [lam], [mu], Fraction(0), lam - mu, anomalies)
    else:
        raise ArgumentError(f'unknown case {bc.case!r}')
    beta = sum(lambdas) - sum(mus) + len(lambdas) * alpha
    if beta != expected:
        raise InternalConsistencyError(f'case {bc.case}: trace gives beta = {beta}, expected {expected}')
    return KZParameters(list(ins), list(outs), lambdas, mus, alpha, beta, anomalies)


@dataclass
class BraidCoefficients:
    """Transport matrix over (in-channel, out-channel) pairs.

    ``zeros`` lists the pairs whose entry is exactly 0. ``permissible_in``
    and ``permissible_out`` flag the channels realised by primary fields.
    """
    case: str
    channels_in: list
    channels_out: list
    matrix: np.ndarray
    anomalies: dict
    zeros: list
    permissible_in: list
    permissible_out: list

    def entry(self, fin, fout) -> complex:
        return complex(self.matrix[self.channels_in.index(normalize(fin)),
                                   self.channels_out.index(normalize(fout))])

    def to_json(self) -> dict:
        from .repcore import sig_to_str
        return {
            'case': self.case,
            'channels': {
                'in': [sig_to_str(s) for s in self.channels_in],
                'out': [sig_to_str(s) for s in self.channels_out],
            },
            'matrix': [[[float(x.real), float(x.imag)] for x in row] for row in self.matrix],
            'anomalies': {f'{sig_to_str(a)}|{sig_to_str(b)}': f'{v.numerator}/{v.denominator}'
                          for (a, b), v in sorted(self.anomalies.items())},
            'zeros': [[sig_to_str(a), sig_to_str(b)] for a, b in self.zeros],
            'permissible_in': list(self.permissible_in),
            'permissible_out': list(self.permissible_out),
        }


def braid_matrix(bc: BraidContext) -> BraidCoefficients:
    """Braiding coefficients from the Gamma-product transport formula."""
    p = kz_parameters(bc)
    c = transport_coefficients(p.lambdas, p.mus, p.alpha)
    zeros = [(a, b) for i, a in enumerate(p.channels_in) for j, b in enumerate(p.channels_out)
             if c[i, j] == 0]
    perm_in = [is_permissible(s, bc.ctx) for s in p.channels_in]
    perm_out = [is_permissible(s, bc.ctx) for s in p.channels_out]
    return BraidCoefficients(bc.case, p.channels_in, p.channels_out, c, p.anomalies,
                             zeros, perm_in, perm_out)


def abelian_coefficients(bc: BraidContext) -> complex:
    """Scalar braiding coefficient of a one-dimensional channel space.

    Case D returns ``exp(i pi nu_+-)``, ``+`` for two boxes in one row. The
    scalar transport coefficient is the complex conjugate of this (the
    orientation of the continuation is not fixed at coefficient level).
    Case C returns the transport coefficient ``exp(i pi (lambda - mu))``.
    """
    if bc.case == 'D':
        return _phase(nu_pm(bc.ctx, 1 if bc.symmetric else -1))
    if bc.case == 'C':
        p = kz_parameters(bc)
        return complex(transport_coefficients(p.lambdas, p.mus)[0, 0])
    raise ArgumentError(f'case {bc.case} does not have a one-dimensional channel space')


def braid_problem(bc: BraidContext):
    """A companion-form transport problem with the spectra of ``bc``."""
    p = kz_parameters(bc)
    return problem_from_spectrum([float(x) for x in p.lambdas], [float(x) for x in p.mus],
                                 float(p.alpha))


def braid_numeric(bc: BraidContext, **kwargs) -> np.ndarray:
    """Braiding matrix by ODE integration of :func:`braid_problem`, in channel order."""
    p = kz_parameters(bc)
    prob = braid_problem(bc)
    spec = spectral(prob).reordered([float(x) for x in p.lambdas], [float(x) for x in p.mus])
    return transport_numeric(prob, spec=spec, **kwargs)


@dataclass
class VanishingReport:
    """Result of a sweep over all case-A and case-B problems at one level.

    Only rows with a permissible in-channel are physical. ``counterexamples``
    lists physical entries where ``entry == 0`` disagrees with
    ``out-channel non-permissible``; ``small_entries`` lists physical
    nonzero entries with modulus at most 1e-10. ``unphysical`` counts
    entries in non-permissible rows, which are not constrained.
    """
    ctx: LevelContext
    problems: int = 0
    entries_checked: int = 0
    zeros: int = 0
    unphysical: int = 0
    counterexamples: list = field(default_factory=list)
    small_entries: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.counterexamples and not self.small_entries

    def to_json(self) -> dict:
        return {
            'n': self.ctx.N, 'level': self.ctx.level, 'problems': self.problems,
            'entries_checked': self.entries_checked, 'zeros': self.zeros,
            'unphysical': self.unphysical, 'pass': self.ok,
            'counterexamples': [str(c) for c in self.counterexamples],
            'small_entries': [str(c) for c in self.small_entries],
        }


def _case_b_contexts(ctx):
    seen = set()
    for f in enumerate_permissible(ctx):
        for g in add_boxes(f, 1):
            for h in add_boxes(g, 1):
                key = (f, normalize(h))
                if key in seen or not is_permissible(h, ctx):
                    continue
                seen.add(key)
                bc = BraidContext.case_b(ctx, f, h)
                if bc.case == 'B':
                    yield bc


def vanishing_report(ctx: LevelContext) -> VanishingReport:
    """Check ``entry == 0  <=>  out-channel non-permissible`` on all physical rows."""
    rep = VanishingReport(ctx)
    contexts = [BraidContext.case_a(ctx, g) for g in enumerate_permissible(ctx)]
    contexts += list(_case_b_contexts(ctx))
    for bc in contexts:
        bm = braid_matrix(bc)
        rep.problems += 1
        for i, a in enumerate(bm.channels_in):
            for j, b in enumerate(bm.channels_out):
                if not bm.permissible_in[i]:
                    rep.unphysical += 1
                    continue
                rep.entries_checked += 1
                val = bm.matrix[i, j]
                is_zero = bool(val == 0)
                rep.zeros += int(is_zero)
                if is_zero != (not bm.permissible_out[j]):
                    rep.counterexamples.append((bc.case, bc.g or (bc.f, bc.h), a, b, complex(val)))
                elif not is_zero and abs(val) <= 1e-10:
                    rep.small_entries.append((bc.case, bc.g or (bc.f, bc.h), a, b, complex(val)))
    return rep

"""Cross-method verification sweeps.

Each suite returns a plain dict with a boolean ``pass`` plus counts, so the
results can be printed by the command line front end or asserted in tests.
"""
from __future__ import annotations

from itertools import combinations_with_replacement, product

import numpy as np

from .braiding import (BraidContext, _case_b_contexts, abelian_coefficients, braid_matrix,
                       braid_numeric, nu_pm, vanishing_report)
from .fusionring import fuse, fuse_numeric, kernel_residual
from .repcore import LevelContext, add_boxes, conjugate, enumerate_permissible, is_permissible, normalize
from .transport import (chi_p, chi_r, random_problem, spectral, transport_formula,
                        transport_numeric)

__all__ = [
    'FUSION_GRID', 'BRAID_GRID', 'fusion_suite', 'ring_axioms', 'kernel_suite',
    'path_identity', 'transport_suite', 'braiding_suite',
]

FUSION_GRID = [(2, 1), (2, 2), (2, 3), (2, 4), (3, 1), (3, 2), (3, 3), (4, 1), (4, 2)]
BRAID_GRID = [(2, 1), (2, 2), (2, 3), (3, 1), (3, 2)]


def fusion_suite(N: int, level: int) -> dict:
    """``fuse`` against ``fuse_numeric`` on every ordered permissible pair."""
    ctx = LevelContext(N, level)
    labels = enumerate_permissible(ctx)
    mismatches = []
    worst = 0.0
    for f, g in product(labels, repeat=2):
        num, resid = fuse_numeric(f, g, ctx, full_output=True)
        worst = max(worst, resid)
        if fuse(f, g, ctx) != num:
            mismatches.append([list(f), list(g)])
    out = {'pass': not mismatches, 'pairs_checked': len(labels) ** 2}
    if mismatches:
        out['mismatches'] = mismatches
    return out


def ring_axioms(N: int, level: int, triples: bool = True) -> dict:
    """Commutativity, associativity, unit and conjugate uniqueness, by folding."""
    ctx = LevelContext(N, level)
    labels = enumerate_permissible(ctx)
    vac = (0,) * N
    table = {(f, g): fuse(f, g, ctx) for f, g in product(labels, repeat=2)}
    violations = []
    for f, g in combinations_with_replacement(labels, 2):
        if table[f, g] != table[g, f]:
            violations.append(('commutativity', f, g))
    for f in labels:
        if table[f, vac] != {f: 1}:
            violations.append(('unit', f))
        fbar = conjugate(f)
        for g in labels:
            want = 1 if g == fbar else 0
            if table[f, g].get(vac, 0) != want:
                violations.append(('conjugate', f, g))
    if triples:
        for f, g, h in product(labels, repeat=3):
            left, right = {}, {}
            for x, m in table[f, g].items():
                for y, n in table[x, h].items():
                    left[y] = left.get(y, 0) + m * n
            for x, m in table[g, h].items():
                for y, n in table[f, x].items():
                    right[y] = right.get(y, 0) + m * n
            if left != right:
                violations.append(('associativity', f, g, h))
    return {'pass': not violations, 'violations': [str(v) for v in violations],
            'labels': len(labels)}


def kernel_suite(N: int, level: int, tol: float = 1e-10) -> dict:
    """``max |chi_f|`` on the Verlinde points for all ``f`` with ``f_1 - f_N = level + 1``."""
    ctx = LevelContext(N, level)
    worst = 0.0
    count = 0
    for f in enumerate_permissible(LevelContext(N, level + 1)):
        if f[0] == level + 1:
            worst = max(worst, kernel_residual(f, ctx))
            count += 1
    return {'pass': worst <= tol, 'signatures': count, 'max_abs_character': worst}


def path_identity(N: int, level: int, k: int) -> dict:
    """Count permissible ``g`` in ``f < g <_k h`` and in ``f <_k g < h`` for permissible ``f, h``."""
    ctx = LevelContext(N, level)
    violations = []
    checked = 0
    for f in enumerate_permissible(ctx):
        one_then_k, k_then_one = {}, {}
        for g in add_boxes(f, 1):
            if is_permissible(g, ctx):
                for h in add_boxes(g, k):
                    one_then_k.setdefault(h, set()).add(g)
        for g in add_boxes(f, k):
            if is_permissible(g, ctx):
                for h in add_boxes(g, 1):
                    k_then_one.setdefault(h, set()).add(g)
        for h in set(one_then_k) | set(k_then_one):
            if not is_permissible(h, ctx):
                continue
            checked += 1
            a, b = len(one_then_k.get(h, ())), len(k_then_one.get(h, ()))
            if a != b:
                violations.append((f, normalize(h), a, b))
    return {'pass': not violations, 'checked': checked, 'violations': [str(v) for v in violations]}


def transport_suite(n_problems: int = 50, seed: int = 0, max_dim: int = 5,
                    rtol: float = 1e-10, conjugations: int = 0) -> dict:
    """Formula vs integration, trace identity, chi identities on random problems.

    Problem ``k`` has dimension ``1 + k % max_dim``; half of them are basic
    (``alpha = 0``) so the chi checks apply.
    """
    rng = np.random.default_rng(seed)
    worst = {'transport': 0.0, 'trace': 0.0, 'chi': 0.0, 'inversion': 0.0, 'conjugation': 0.0}
    for k in range(n_problems):
        d = 1 + k % max_dim
        prob = random_problem(d, rng, alpha=0.0 if k % 2 == 0 else None)
        spec = spectral(prob)
        cf = transport_formula(prob, spec)
        cn = transport_numeric(prob, spec=spec, rtol=rtol)
        worst['transport'] = max(worst['transport'], float(np.max(np.abs(cf - cn) / np.abs(cf))))
        trB = np.trace(prob.B)
        worst['trace'] = max(worst['trace'], abs(spec.lambdas.sum() - spec.mus.sum() - trB))
        if prob.is_basic:
            for t in rng.normal(size=20) * 3 + 1j * rng.normal(size=20) * 3:
                val = chi_p(prob, t, spec)
                worst['chi'] = max(worst['chi'], abs(val.resolvent - val.product) / abs(val.product))
                inv = chi_r(prob, t) * chi_p(prob, -t, spec).resolvent
                worst['inversion'] = max(worst['inversion'], abs(inv - 1))
        for _ in range(conjugations):
            S = rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d))
            moved = prob.conjugated(S)
            mspec = spectral(moved).reordered(spec.lambdas, spec.mus)
            cm = transport_numeric(moved, spec=mspec, rtol=rtol)
            worst['conjugation'] = max(worst['conjugation'],
                                       float(np.max(np.abs(cm - cn)) / np.max(np.abs(cn))))
    ok = (worst['transport'] <= 1e-5 and worst['trace'] <= 1e-10 and worst['chi'] <= 1e-9
          and worst['inversion'] <= 1e-9 and worst['conjugation'] <= 1e-6)
    return {'pass': ok, 'problems': n_problems, 'max_errors': worst}


def braiding_suite(grid=None, numeric_grid=((2, 2), (3, 2))) -> dict:
    """Vanishing pattern, Gamma formula vs integration, and abelian phases."""
    grid = BRAID_GRID if grid is None else grid
    reports = [vanishing_report(LevelContext(N, l)) for N, l in grid]
    numeric_worst = 0.0
    numeric_count = 0
    for N, l in numeric_grid:
        ctx = LevelContext(N, l)
        cases = [BraidContext.case_a(ctx, g) for g in enumerate_permissible(ctx)]
        cases += list(_case_b_contexts(ctx))
        for bc in cases:
            c = braid_matrix(bc).matrix
            cn = braid_numeric(bc)
            numeric_worst = max(numeric_worst, float(np.max(np.abs(c - cn)) / np.max(np.abs(c))))
            numeric_count += 1
    abelian_worst = 0.0
    for N, l in grid:
        ctx = LevelContext(N, l)
        f = (0,) * N
        for h, sign in (((2,) + (0,) * (N - 1), 1), ((1, 1) + (0,) * (N - 2), -1)):
            bc = BraidContext.case_d(ctx, f, h)
            delta = abelian_coefficients(bc)
            transported = braid_matrix(bc).matrix[0, 0]
            target = np.exp(1j * np.pi * float(nu_pm(ctx, sign)))
            abelian_worst = max(abelian_worst, abs(abs(delta) - 1), abs(delta - target),
                                abs(np.conj(transported) - target))
    ok = (all(r.ok for r in reports) and numeric_worst <= 1e-6 and abelian_worst <= 1e-12)
    return {
        'pass': ok,
        'vanishing': [r.to_json() for r in reports],
        'numeric_problems': numeric_count,
        'numeric_max_rel_error': numeric_worst,
        'abelian_max_error': abelian_worst,
    }

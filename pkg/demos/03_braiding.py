"""Braiding coefficients of SU(N) primary fields with the vector representation.

The exponents of the Knizhnik-Zamolodchikov system come from Casimir
differences, so everything is an exact rational until the Gamma functions
are evaluated. Channels that are not integrable at the level get exactly
zero coefficients.
"""
import numpy as np

from fusionkit import LevelContext
from fusionkit.braiding import (BraidContext, abelian_coefficients, braid_matrix, braid_numeric,
                                kz_parameters, nu_pm, vanishing_report)

ctx = LevelContext(2, 2)
bc = BraidContext.case_a(ctx, (1, 0))
p = kz_parameters(bc)
print('vector x dual around g = (1,0) at SU(2) level 2')
print('  in channels :', p.channels_in, ' lambdas', [str(x) for x in p.lambdas])
print('  out channels:', p.channels_out, ' mus', [str(x) for x in p.mus])
print('  alpha =', p.alpha, ' beta =', p.beta)
bm = braid_matrix(bc)
print(np.round(bm.matrix, 6))
print('  by integration, max deviation:', f'{np.max(np.abs(braid_numeric(bc) - bm.matrix)):.1e}')

# one channel leaves the alcove: its coefficient is an exact zero
bc = BraidContext.case_b(LevelContext(2, 1), (1, 0), (2, 1))
bm = braid_matrix(bc)
print('\ntwo vectors from (1,0) to (2,1) at level 1, channels', bm.channels_in)
print(bm.matrix)
print('exact zeros at', bm.zeros)

# one intermediate: a pure phase
for N, level, h in [(2, 1, (1, 1)), (3, 1, (2, 0, 0)), (3, 1, (1, 1, 0))]:
    c = LevelContext(N, level)
    bc = BraidContext.case_d(c, (0,) * N, h)
    sign = 1 if bc.symmetric else -1
    print(f'SU({N}) level {level}, vacuum -> {h}: nu = {nu_pm(c, sign)}, '
          f'coefficient {np.round(abelian_coefficients(bc), 6)}')

print()
for N, level in [(2, 1), (2, 2), (2, 3), (3, 1), (3, 2), (4, 2)]:
    rep = vanishing_report(LevelContext(N, level))
    print(f'SU({N}) level {level}: {rep.problems:3d} problems, {rep.entries_checked:3d} entries, '
          f'{rep.zeros:2d} zeros, counterexamples {len(rep.counterexamples)}')

"""Level-l fusion rules for SU(N), two ways.

Walks through the integrable labels at a level, the affine Weyl folding of
a classical tensor product, and the same numbers recovered from characters
evaluated at the finite set of Verlinde points.
"""
import numpy as np

from fusionkit import LevelContext, enumerate_permissible, fuse, fuse_numeric, normalize, tensor_decompose
from fusionkit.fusionring import character_matrix, fusion_table, kernel_residual, verlinde_points, weyl_fold

ctx = LevelContext(3, 2)
labels = enumerate_permissible(ctx)
print(f'SU(3) at level 2: kappa = {ctx.kappa}, {len(labels)} integrable labels')
for f in labels:
    print('  ', f)

# classical product first, then fold each h + delta into the alcove
f, g = (2, 1, 0), (2, 1, 0)
classical = tensor_decompose(f, g)
delta = np.array(ctx.weyl)
print(f'\n{f} x {g} classically:', dict(classical))
for h, m in sorted(classical.items()):
    res = weyl_fold(np.array(h) + delta, ctx)
    back = normalize([int(a - b) for a, b in zip(res.folded, delta)]) if res.sign else 'dropped'
    print(f'   {h} (x{m}) -> sign {res.sign:+d}, {back}')
print('fused at level 2:', dict(fuse(f, g, ctx)))

# the Verlinde points are diagonal SU(3) elements; the character matrix is invertible there
pts = verlinde_points(ctx)
M = character_matrix(ctx)
print(f'\n{len(pts)} Verlinde points, character matrix condition number {np.linalg.cond(M):.2f}')
print('numeric fusion agrees:', fuse_numeric(f, g, ctx) == fuse(f, g, ctx))

# characters one step outside the alcove vanish on every point
for h in [(3, 0, 0), (3, 1, 0), (3, 2, 0), (3, 3, 0)]:
    print(f'max |chi_{h}| on the points: {kernel_residual(h, ctx):.1e}')

# the whole table; multiplicities are nonnegative integers and the ring is commutative
table = fusion_table(ctx)
print(f'\ntable has {len(table)} ordered pairs')
worst = max(sum(v.values()) for v in table.values())
print('largest number of channels in a single product:', worst)

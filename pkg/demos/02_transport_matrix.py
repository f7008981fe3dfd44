"""Transport of canonical solutions of a Fuchsian system from 0 to infinity.

The system is f' = A f / z + B f / (1 - z) with B a rank-one perturbation of
a multiple of the identity. The connection matrix has a closed form in
Gamma functions of the exponents; here it is compared against direct ODE
integration along the negative real axis, and against an Euler integral.
"""
import numpy as np

from fusionkit.transport import (euler_asymptotic_c11, euler_c11, euler_projected, problem_from_spectrum,
                                 projected_series, random_problem, spectral, transport_formula,
                                 transport_numeric, validate)

rng = np.random.default_rng(7)
prob = random_problem(3, rng)
print('random problem: alpha =', np.round(prob.alpha, 4), ' beta =', np.round(prob.beta, 4))
diag = validate(prob)
print('general position:', diag.ok)
for k, v in diag.margins.items():
    print(f'   {k:28s} {v:.3f}')

spec = spectral(prob)
print('\nexponents at 0:  ', np.round(spec.lambdas, 4))
print('exponents at inf:', np.round(spec.mus, 4))
print('sum(lambda) - sum(mu) - tr B =', abs(spec.lambdas.sum() - spec.mus.sum() - np.trace(prob.B)))

c = transport_formula(prob, spec)
cn, info = transport_numeric(prob, spec=spec, full_output=True)
print('\nGamma-product transport matrix:')
print(np.round(c, 5))
print(f'max relative deviation from integration: {np.max(np.abs(c - cn) / np.abs(c)):.1e}')
print(f'matching solve residual {info["max_residual"]:.1e}, condition {info["condition"]:.1f}')

# only the eigenvalues matter: conjugating the data changes nothing
S = rng.normal(size=(3, 3)) + 1j * rng.normal(size=(3, 3))
moved = prob.conjugated(S)
cm = transport_numeric(moved, spec=spectral(moved).reordered(spec.lambdas, spec.mus))
print(f'after a random change of basis: {np.max(np.abs(cm - cn)) / np.max(np.abs(cn)):.1e}')

# a real example where phi(f_1) is a double Euler integral
lam, mu = (0.0, -0.3, -0.6), (0.9, 0.8, 0.7)
p = problem_from_spectrum(lam, mu)
sp = spectral(p).reordered(lam, mu)
for z in (-0.1, -0.5, -0.9):
    a = projected_series(p, 0, z, spec=sp)
    b = euler_projected(p, z, spec=sp)
    print(f'z = {z:5.2f}: series {a:.8f}  integral {b:.8f}')
c11 = transport_formula(p, sp)[0, 0]
print('c11 from Gamma products:', np.round(c11, 10))
print('c11 from the integral  :', np.round(euler_c11(p, spec=sp), 10))

# reading c11 off a single far point only works if the subleading term dies fast
for x in (-1e2, -1e3, -1e4):
    est = euler_asymptotic_c11(p, x, spec=sp)
    print(f'x = {x:8.0f}: relative error of far-field estimate {abs(est - c11) / abs(c11):.3f}')

import cmath
import json
import warnings

import numpy as np
import pytest

from fusionkit.errors import ArgumentError, BranchError, DomainError, ValidationError
from fusionkit.numerics import integrate_ode, poly_roots
from fusionkit.transport import (TransportProblem, TruncationWarning, branch_log, chi_p, chi_r,
                                 euler_asymptotic_c11, euler_c11, euler_projected, problem_from_spectrum,
                                 projected_series, random_problem, rational_canonical, series_at_infinity,
                                 series_at_zero, spectral, transport_coefficients, transport_formula,
                                 transport_numeric, validate)


@pytest.fixture
def scalar():
    return TransportProblem([[0.3]], [1.0], [1.0], 0.0, -0.5)


def generic_problem(lambdas, seed=0):
    rng = np.random.default_rng(seed)
    d = len(lambdas)
    S = rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d))
    A = S @ np.diag(lambdas) @ np.linalg.inv(S)
    v = rng.normal(size=d) + 1j * rng.normal(size=d)
    phi = rng.normal(size=d) + 1j * rng.normal(size=d)
    return TransportProblem.basic(A, v, 0.4 * phi / (phi @ v))


def rel(a, b):
    return np.max(np.abs(np.asarray(a) - b)) / np.max(np.abs(b))


def test_problem_construction():
    with pytest.raises(ArgumentError):
        TransportProblem([[0.3]], [1.0], [2.0], 0, 1)
    with pytest.raises(ArgumentError):
        TransportProblem([[0.3]], [1.0], [1.0], 0, 0)
    with pytest.raises(ArgumentError):
        TransportProblem(np.eye(2), [1.0], [1.0], 0, 1)
    p = TransportProblem.basic([[0.3]], [2.0], [1.0])
    assert p.beta == 2 and p.is_basic
    np.testing.assert_allclose(p.B, [[2.0]])


def test_problem_json_round_trip(scalar):
    p = random_problem(3, np.random.default_rng(4))
    for prob in (scalar, p):
        again = TransportProblem.from_json(json.loads(json.dumps(prob.to_json())))
        np.testing.assert_array_equal(again.A, prob.A)
        assert again.beta == prob.beta and again.alpha == prob.alpha


def test_validate_examples(scalar):
    assert validate(scalar).ok
    bad = TransportProblem(np.diag([0.0, 1.0]), [1.0, 1.0], [0.5, 0.5], 0, 0.3)
    diag = validate(bad)
    assert not diag.ok
    assert any('positive integer' in v for v in diag.violations)
    # phi kills the second eigenvector of diag(0.1, 0.4)
    blind = TransportProblem(np.diag([0.1, 0.4]), [1.0, 1.0], [1.0, 0.0], 0, 0.3)
    diag = validate(blind)
    assert not diag.ok
    assert any('annihilates' in v for v in diag.violations)


def test_spectral_scalar(scalar):
    spec = spectral(scalar)
    assert spec.lambdas[0] == pytest.approx(0.3)
    assert spec.mus[0] == pytest.approx(0.8)


def test_trace_identity_and_normalization():
    rng = np.random.default_rng(5)
    for d in (1, 2, 3, 4):
        p = random_problem(d, rng)
        spec = spectral(p)
        assert abs(spec.lambdas.sum() - spec.mus.sum() - np.trace(p.B)) <= 1e-10
        np.testing.assert_allclose(p.phi @ spec.xis, 1, atol=1e-12)
        np.testing.assert_allclose(p.A @ spec.xis, spec.xis * spec.lambdas, atol=1e-10)


def test_chi_scalar_and_limits(scalar):
    for t in (0.1j, -2.0, 5 + 1j):
        val = chi_p(scalar, t)
        assert val.product == pytest.approx((t - 0.8) / (t - 0.3))
        assert val.resolvent == pytest.approx(val.product)
    assert abs(chi_p(scalar, 1e9).product - 1) < 1e-8
    with pytest.raises(DomainError):
        chi_p(scalar, 0.3)


def test_chi_dual_and_inversion():
    rng = np.random.default_rng(6)
    for d in (2, 3, 5):
        p = random_problem(d, rng, alpha=0)
        spec = spectral(p)
        for t in rng.normal(size=20) * 2 + 1j * rng.normal(size=20):
            val = chi_p(p, t, spec)
            assert abs(val.resolvent - val.product) <= 1e-9 * abs(val.product)
            assert abs(chi_r(p, t) * chi_p(p, -t, spec).product - 1) <= 1e-9


def test_chi_requires_basic():
    p = random_problem(2, np.random.default_rng(7), alpha=0.2)
    with pytest.raises(ArgumentError):
        chi_p(p, 1j)


def test_branch_log():
    assert branch_log(-1) == pytest.approx(1j * np.pi)
    assert branch_log(-1j).imag == pytest.approx(1.5 * np.pi)
    assert 0 < branch_log(1 + 1e-9j).imag < 1e-8
    for z in (0, 0.5, 3):
        with pytest.raises(BranchError):
            branch_log(z)


def test_series_scalar_closed_form(scalar):
    z = -0.4 + 0.2j
    f = series_at_zero(scalar, 0, z)[0]
    assert f == pytest.approx(cmath.exp(0.3 * branch_log(z)) * (1 - z) ** 0.5, rel=1e-12)
    # first two coefficients: xi_0 = 1, xi_1 = -0.5
    with pytest.warns(TruncationWarning):
        two = series_at_zero(scalar, 0, z, nmax=1)[0]
    assert two == pytest.approx(cmath.exp(0.3 * branch_log(z)) * (1 - 0.5 * z))
    h = series_at_infinity(scalar, 0, -3.0)[0]
    assert h == pytest.approx(3 ** 0.8 * cmath.exp(0.8j * np.pi) * (1 + 1 / 3) ** 0.5, rel=1e-12)


def test_series_domain_errors(scalar):
    with pytest.raises(DomainError):
        series_at_zero(scalar, 0, -2.0)
    with pytest.raises(DomainError):
        series_at_infinity(scalar, 0, -0.5)
    with pytest.raises(BranchError):
        series_at_zero(scalar, 0, 0.5)


def test_truncation_warning():
    p = random_problem(2, np.random.default_rng(8))
    with pytest.warns(TruncationWarning):
        series_at_zero(p, 0, -0.9, nmax=3)
    with warnings.catch_warnings():
        warnings.simplefilter('error')
        series_at_zero(p, 0, -0.3)


def test_series_leading_order():
    p = random_problem(3, np.random.default_rng(9))
    spec = spectral(p)
    for i in range(3):
        z = -1e-4
        f = series_at_zero(p, i, z, spec=spec)
        lead = spec.xis[:, i] * cmath.exp(spec.lambdas[i] * branch_log(z))
        assert np.linalg.norm(f - lead) <= 1e-2 * np.linalg.norm(lead)
    for j in range(3):
        z = -100.0
        h = series_at_infinity(p, j, z, spec=spec)
        lead = spec.zetas[:, j] * cmath.exp(spec.mus[j] * branch_log(z))
        assert np.linalg.norm(h - lead) <= 1e-2 * np.linalg.norm(lead)


def test_projected_matches_series():
    rng = np.random.default_rng(10)
    for d in (1, 3):
        p = random_problem(d, rng, alpha=0)
        spec = spectral(p)
        for i in range(d):
            z = -0.3
            a = projected_series(p, i, z, spec=spec)
            b = p.phi @ series_at_zero(p, i, z, spec=spec)
            assert abs(a - b) <= 1e-9 * abs(b)


def test_transport_formula_scalar(scalar):
    c = transport_formula(scalar)
    assert c[0, 0] == pytest.approx(-1j)
    assert transport_numeric(scalar)[0, 0] == pytest.approx(-1j, abs=1e-8)


def test_transport_gauss_case():
    p = generic_problem([0.17, -0.23], seed=1)
    assert validate(p).ok
    c, info = transport_numeric(p, full_output=True)
    assert rel(c, transport_formula(p)) <= 1e-6
    assert info['max_residual'] < 1e-10


def test_transport_row_identity():
    p = random_problem(3, np.random.default_rng(11))
    spec = spectral(p)
    c = transport_formula(p, spec)
    Y0 = np.column_stack([series_at_zero(p, i, -0.1, spec=spec) for i in range(3)])
    Y = integrate_ode(p.field, [-0.1, -2.0], Y0)
    H = np.column_stack([series_at_infinity(p, j, -2.0, spec=spec) for j in range(3)])
    for i in range(3):
        assert np.linalg.norm(Y[:, i] - H @ c[i]) <= 1e-5 * np.linalg.norm(Y[:, i])


def test_gauge_factor():
    # (1 - z)^alpha behaves like e^{-i pi alpha} z^alpha on the negative axis
    basic = random_problem(2, np.random.default_rng(12), alpha=0)
    shifted = TransportProblem(basic.A, basic.v, basic.phi, 0.21, basic.beta)
    c0 = transport_numeric(basic)
    c1 = transport_numeric(shifted)
    assert rel(c1, np.exp(-0.21j * np.pi) * c0) <= 1e-6
    assert rel(transport_formula(shifted), c1) <= 1e-6


def test_similarity_invariance():
    rng = np.random.default_rng(13)
    p = random_problem(3, rng)
    spec = spectral(p)
    S = rng.normal(size=(3, 3)) + 1j * rng.normal(size=(3, 3))
    q = p.conjugated(S)
    spec_q = spectral(q).reordered(spec.lambdas, spec.mus)
    assert rel(transport_numeric(q, spec=spec_q), transport_numeric(p, spec=spec)) <= 1e-6


def test_transport_coefficients_exact_zero():
    from fractions import Fraction as F
    lam, mu = [F(1, 4), F(-1, 4)], [F(1, 2), F(-3, 4)]
    c = transport_coefficients(lam, mu)
    # mu_2 - lambda_1 = -1 puts 1/Gamma at a pole in entry (2, 2) only
    assert c[1, 1] == 0
    assert np.all(np.abs(c.ravel()[:3]) > 1e-3)
    np.testing.assert_allclose(c, transport_coefficients([float(x) for x in lam], [float(x) for x in mu]),
                               atol=1e-12)


def test_rational_canonical():
    p = random_problem(3, np.random.default_rng(14), alpha=0)
    T, a, b, c = rational_canonical(p)
    M = np.linalg.inv(T) @ p.A @ T
    expected = np.zeros((3, 3), dtype=complex)
    expected[1:, :-1] = np.eye(2)
    expected[:, -1] = a
    np.testing.assert_allclose(M, expected, atol=1e-9)
    assert b[-1] == pytest.approx(np.trace(p.beta * p.Q))
    spec = spectral(p)
    for coeffs, want in ((a, spec.lambdas), (c, spec.mus)):
        roots = poly_roots(np.concatenate([[1], -coeffs[::-1]]))
        for x in want:
            assert np.min(np.abs(roots - x)) < 1e-8
    # b has no common root with a
    assert all(abs(np.polyval(b[::-1], x)) > 1e-8 for x in spec.lambdas)


def test_rational_canonical_scalar(scalar):
    T, a, b, c = rational_canonical(scalar)
    assert a[0] == pytest.approx(0.3) and b[0] == pytest.approx(-0.5) and c[0] == pytest.approx(0.8)


def test_problem_from_spectrum():
    lam, mu = [0.1, -0.3 + 0.2j, 0.45], [0.6, -0.1, 0.2j]
    p = problem_from_spectrum(lam, mu)
    spec = spectral(p)
    for want, got in ((lam, spec.lambdas), (mu, spec.mus)):
        for x in want:
            assert np.min(np.abs(got - x)) < 1e-10
    assert np.allclose(transport_formula(p, spec.reordered(lam, mu)), transport_coefficients(lam, mu))


EULER_LAM = (0.0, -0.3, -0.6)
EULER_MU = (0.9, 0.8, 0.7)


def test_euler_projected_example():
    p = problem_from_spectrum(EULER_LAM, EULER_MU)
    spec = spectral(p)
    i = int(np.argmax(spec.lambdas.real))
    want = projected_series(p, i, -0.5, spec=spec)
    assert abs(euler_projected(p, -0.5, spec=spec) - want) <= 1e-4 * abs(want)


def test_euler_scalar():
    p = problem_from_spectrum([0.2], [0.7])
    z = -0.4
    assert euler_projected(p, z) == pytest.approx(projected_series(p, 0, z), rel=1e-12)


def test_euler_c11_limits():
    for mu in (EULER_MU, (0.999, 0.5, 0.2)):
        p = problem_from_spectrum(EULER_LAM, mu)
        spec = spectral(p).reordered(EULER_LAM, mu)
        c11 = transport_formula(p, spec)[0, 0]
        assert euler_c11(p, spec=spec) == pytest.approx(c11, rel=1e-10)
    # far-field read-off works when mu_1 - mu_2 is large
    assert abs(euler_asymptotic_c11(p, spec=spec) - c11) <= 1e-3 * abs(c11)


def test_euler_constraints():
    with pytest.raises(DomainError, match='mu_j < lambda_1 \\+ 1'):
        euler_projected(problem_from_spectrum(EULER_LAM, (1.2, 0.8, 0.7)), -0.5)
    with pytest.raises(DomainError):
        euler_projected(problem_from_spectrum(EULER_LAM, EULER_MU), 0.5)


def test_transport_formula_rejects_invalid():
    bad = TransportProblem(np.diag([0.0, 1.0]), [1.0, 1.0], [0.5, 0.5], 0, 0.3)
    with pytest.raises(ValidationError):
        transport_formula(bad)

from fractions import Fraction
from math import comb

import pytest
from hypothesis import given, strategies as st

from fusionkit.errors import ArgumentError, DimensionError, InvalidSignatureError
from fusionkit.repcore import (LevelContext, add_boxes, casimir_delta, conjugate, covers,
                               enumerate_permissible, is_permissible, lower_covers_su, normalize,
                               paths, sig_from_str, sig_to_str)

from oracles import brute_chains


def signatures(max_n=4, max_entry=5):
    @st.composite
    def build(draw):
        n = draw(st.integers(2, max_n))
        parts = sorted(draw(st.lists(st.integers(0, max_entry), min_size=n, max_size=n)), reverse=True)
        return tuple(parts)
    return build()


def test_level_context():
    ctx = LevelContext(3, 2)
    assert ctx.kappa == 5
    assert ctx.weyl == (2, 1, 0)
    with pytest.raises(ArgumentError):
        LevelContext(1, 2)
    with pytest.raises(ArgumentError):
        LevelContext(2, 0)


@pytest.mark.parametrize('sig, expected', [
    ((3, 1, 1), (2, 0, 0)),
    ((0, 0), (0, 0)),
    ((2, 1, 1, -1), (3, 2, 2, 0)),
])
def test_normalize(sig, expected):
    assert normalize(sig) == expected


def test_normalize_rejects_increasing():
    with pytest.raises(InvalidSignatureError):
        normalize((0, 1))


def test_is_permissible():
    assert is_permissible((1, 0), LevelContext(2, 1))
    assert not is_permissible((2, 0), LevelContext(2, 1))
    assert is_permissible((0, 0, 0, 0), LevelContext(4, 1))
    with pytest.raises(DimensionError):
        is_permissible((1, 0, 0), LevelContext(2, 1))


def test_add_boxes_examples():
    assert set(add_boxes((1, 0), 1)) == {(2, 0), (1, 1)}
    assert add_boxes((0, 0, 0), 3) == [(1, 1, 1)]
    assert set(add_boxes((2, 1, 0), 2)) == {(3, 2, 0), (3, 1, 1), (2, 2, 1)}
    with pytest.raises(ArgumentError):
        add_boxes((1, 0), 3)


@given(signatures(), st.data())
def test_add_boxes_adds_one_per_row(sig, data):
    k = data.draw(st.integers(1, len(sig)))
    for g in add_boxes(sig, k):
        diff = [b - a for a, b in zip(sig, g)]
        assert sum(diff) == k
        assert set(diff) <= {0, 1}


def test_covers():
    assert covers((1, 0), (1, 1))
    assert not covers((1, 0), (3, 0))
    assert covers((2, 2), (3, 2))
    # SU(N) classes: (1,1,1) is the same representation as (0,0,0)
    assert covers((1, 1, 0), (0, 0, 0))


def test_lower_covers_su():
    assert lower_covers_su((0, 0)) == [(1, 0)]
    assert set(lower_covers_su((1, 0))) == {(0, 0), (2, 0)}
    assert set(lower_covers_su((1, 0, 0))) == {(0, 0, 0), (2, 1, 0)}


@given(signatures())
def test_lower_covers_count_matches_upper(sig):
    sig = normalize(sig)
    assert len(lower_covers_su(sig)) == len(add_boxes(sig, 1))


@pytest.mark.parametrize('N', [2, 3, 4, 5])
def test_casimir_examples(N):
    adjoint = (1,) + (0,) * (N - 2) + (-1,)
    assert casimir_delta(adjoint) == 2 * N
    assert casimir_delta((0,) * N) == 0
    assert casimir_delta((1,) + (0,) * (N - 1)) == Fraction(N * N - 1, N)


@given(signatures(), st.integers(-4, 4))
def test_casimir_shift_invariant(sig, a):
    assert casimir_delta(sig) == casimir_delta(tuple(x + a for x in sig))


def test_conjugate():
    assert conjugate((1, 0, 0)) == (1, 1, 0)
    assert conjugate((0, 0)) == (0, 0)
    assert conjugate((2, 1, 0)) == (2, 1, 0)


@given(signatures())
def test_conjugate_involution(sig):
    sig = normalize(sig)
    assert conjugate(conjugate(sig)) == sig


@pytest.mark.parametrize('N, level, expected', [
    (2, 1, [(0, 0), (1, 0)]),
    (2, 2, [(0, 0), (1, 0), (2, 0)]),
    (3, 1, [(0, 0, 0), (1, 0, 0), (1, 1, 0)]),
])
def test_enumerate_permissible(N, level, expected):
    assert enumerate_permissible(LevelContext(N, level)) == expected


@pytest.mark.parametrize('N, level', [(2, 4), (3, 3), (4, 2), (5, 2)])
def test_enumerate_count(N, level):
    labels = enumerate_permissible(LevelContext(N, level))
    assert len(labels) == comb(N + level - 1, N - 1)
    assert labels == sorted(labels)


def test_paths_examples():
    assert paths((0, 0), (1, 1), LevelContext(2, 2)) == [[(0, 0), (1, 0), (1, 1)]]
    assert paths((0, 0, 0), (1, 1, 0), LevelContext(3, 1), permissible_only=True) == \
        [[(0, 0, 0), (1, 0, 0), (1, 1, 0)]]
    got = paths((0, 0), (2, 1), LevelContext(2, 1), permissible_only=True)
    assert got == [[(0, 0), (1, 0), (1, 1), (2, 1)]]
    assert len(paths((0, 0), (2, 1), LevelContext(2, 3))) == 2


def test_paths_shifts_smaller_target():
    # |g| < |f|: g is lifted by a constant vector first
    assert paths((1, 0), (0, 0), LevelContext(2, 2)) == [[(1, 0), (1, 1)]]


@pytest.mark.parametrize('f, g, level', [
    ((0, 0, 0), (2, 1, 0), None), ((1, 0, 0), (3, 2, 1), 2), ((0, 0, 0, 0), (2, 1, 1, 0), 2),
    ((0, 0), (3, 1), 2),
])
def test_paths_against_brute_force(f, g, level):
    ctx = LevelContext(len(f), level or 9)
    got = paths(f, g, ctx, permissible_only=level is not None)
    assert sorted(tuple(c) for c in got) == brute_chains(f, g, level)


def test_signature_strings():
    assert sig_to_str((2, 1, 0)) == '2,1,0'
    assert sig_from_str(' 2, 1,0') == (2, 1, 0)
    with pytest.raises(InvalidSignatureError):
        sig_from_str('2,a')

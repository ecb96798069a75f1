import pytest

from rnajoint.joint import (
    build_inflation,
    eta_series,
    joint_by_recurrence,
    joint_gf,
    joint_series,
    joint_series_by_composition,
    recurrence_coefficients,
    recurrence_series,
    stem_series,
)
from rnajoint.oracle import enumerate_joint
from rnajoint.secondary import PreconditionError, StructureParams, T_series
from rnajoint.series import UnivariateSeries, ps_div, ps_seq

J1 = [2, 4, 10, 26, 70, 194, 550, 1590, 4674, 13940, 42106, 128610]
J2 = [2, 3, 4, 6, 12, 26, 54, 105, 200, 389, 780, 1589]


def test_inflation_valuations():
    assert eta_series(1, 2, 10).valuation() == 2
    assert eta_series(2, 2, 10).valuation() == 4
    pieces = build_inflation(StructureParams(1, 2, 2), (6, 6, 6))
    assert pieces.eta0[0, 0, 0] == 0
    assert min(pieces.eta0.coeffs) == (2, 2, 2)
    assert all(n >= h and m >= h for n, m, h in pieces.eta0.coeffs)


def test_stem_series_two_ways():
    order = 16
    K, N, M = stem_series(1, 2, order)
    z2 = UnivariateSeries.monomial(2, order)
    T = T_series(1, 2, order)
    closed = ps_div(ps_div(z2, 1 - z2), 1 - ps_div(z2, 1 - z2) * (T * T - 1))
    assert M == closed
    assert M == K * ps_seq(N)


def test_inflation_precondition():
    with pytest.raises(PreconditionError, match=r"lambda <= tau\+1 violated"):
        joint_gf(StructureParams(2, 1, 3), (3, 3, 3))
    with pytest.raises(PreconditionError, match=r"sigma == tau"):
        joint_series(StructureParams(1, 2, 2), 5)
    with pytest.raises(PreconditionError, match=r"lambda <= sigma\+1"):
        joint_series(StructureParams(1, 1, 3), 5)
    with pytest.raises(PreconditionError):
        joint_by_recurrence(1, 5, lam=3)


def test_known_counts():
    for sigma, row in ((1, J1), (2, J2)):
        p = StructureParams(sigma, sigma, 2)
        assert list(joint_series(p, 12).coeffs)[1:] == row
        assert joint_by_recurrence(sigma, 12)[1:] == row
        assert joint_series(p, 12)[0] == 1


def test_composition_path_known_counts():
    assert list(joint_series_by_composition(StructureParams(1, 1, 2), 12).coeffs)[1:] == J1


@pytest.mark.parametrize("sigma", [1, 2, 3])
def test_functional_equation_residual(sigma):
    A, B, C = recurrence_series(sigma, 150)
    J = joint_series(StructureParams(sigma, sigma, 2), 150)
    assert ((A * J + B) * J + C).is_zero()


def test_recurrence_coefficients():
    rc = recurrence_coefficients(1, 6)
    assert rc.a[0] == 0 and rc.b[0] == -1
    assert rc.a == [0, 0, 2, 0, -1, -2, -3]
    assert rc.b == [-1, 0, -1, -2, -2, -2, -3]
    assert rc.c == [1, 2, 3, 6, 13, 28, 62]
    for sigma in (2, 3, 4):
        rc = recurrence_coefficients(sigma, 5)
        assert rc.a[0] == 0 and rc.b[0] == -1


@pytest.mark.parametrize("sigma,lam", [(1, 1), (2, 3), (3, 4)])
def test_recurrence_general_lambda(sigma, lam):
    p = StructureParams(sigma, sigma, lam)
    assert joint_by_recurrence(sigma, 60, lam) == list(joint_series(p, 60).coeffs)


def test_joint_gf_small_coefficients():
    J = joint_gf(StructureParams(1, 1, 2), (4, 4, 4))
    assert J[1, 1, 1] == 1 and J[0, 0, 0] == 1
    assert enumerate_joint(1, 1, StructureParams(1, 1, 2)) == {h: J[1, 1, h] for h in (0, 1)}


@pytest.mark.parametrize("params", [StructureParams(1, 1, 2), StructureParams(2, 1, 2), StructureParams(1, 2, 3)])
def test_joint_gf_symmetry_and_z0_slice(params):
    J = joint_gf(params, (8, 8, 8))
    assert J == J.swap_xy()
    T = T_series(params.sigma, params.lam, 8)
    for n in range(9):
        for m in range(9):
            assert J[n, m, 0] == T[n] * T[m]


@pytest.mark.parametrize("sigma", [1, 2])
def test_diagonal_consistency(sigma):
    p = StructureParams(sigma, sigma, 2)
    diag = joint_gf(p, (12, 12, 12)).specialize()
    assert diag == joint_series(p, 12)


@pytest.mark.parametrize(
    "params", [StructureParams(1, 1, 2), StructureParams(2, 1, 2), StructureParams(1, 2, 2), StructureParams(3, 2, 3)]
)
def test_joint_gf_matches_oracle_small(params):
    cap = 9
    J = joint_gf(params, (cap, cap, cap))
    for n in range(cap + 1):
        for m in range(cap + 1 - n):
            brute = enumerate_joint(n, m, params)
            assert {h: J[n, m, h] for h in range(cap + 1) if J[n, m, h]} == brute


def test_cross_paths_long():
    for sigma in (1, 2):
        p = StructureParams(sigma, sigma, 2)
        a = list(joint_series(p, 200).coeffs)
        assert a == list(joint_series_by_composition(p, 200).coeffs)
        assert a == joint_by_recurrence(sigma, 200)

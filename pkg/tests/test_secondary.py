import mpmath
import pytest

from rnajoint.oracle import enumerate_secondary
from rnajoint.secondary import (
    DomainError,
    ParameterError,
    PreconditionError,
    StructureParams,
    T_eval_real,
    T_series,
    T_series_by_composition,
    T_singularity,
    catalan_series,
    u_sigma,
    v_lambda,
)
from rnajoint.series import UnivariateSeries, ps_div

# Counts for sigma=2, lambda=2 produced by the exhaustive enumerator.
T2_BRUTE = [1, 1, 1, 1, 1, 2, 4, 8, 14, 23]


def series_value(s, x):
    acc = mpmath.mpf(0)
    for c in reversed(s.coeffs):
        acc = acc * x + c
    return acc


def test_params_validation():
    with pytest.raises(ParameterError, match="sigma >= 1"):
        StructureParams(sigma=0)
    with pytest.raises(ParameterError, match="lambda >= 1"):
        StructureParams(lam=0)
    with pytest.raises(PreconditionError, match=r"lambda <= tau\+1 violated"):
        StructureParams(sigma=1, tau=1, lam=3).check_inflation()
    StructureParams(sigma=1, tau=2, lam=3).check_inflation()


def test_u_sigma():
    assert u_sigma(1, 6) == UnivariateSeries.one(6)
    got = u_sigma(2, 8)
    z = UnivariateSeries.variable(8)
    assert got == ps_div(z**2, z**4 - z**2 + 1)
    assert list(got.coeffs) == [0, 0, 1, 0, 1, 0, 0, 0, -1]
    assert all(u_sigma(s, 5)[0] == 0 for s in (2, 3, 4))


def test_v_lambda():
    assert v_lambda(1, 1, 6) == UnivariateSeries([1, -1], 6)
    assert v_lambda(1, 2, 6) == UnivariateSeries([1, -1, 1], 6)
    z = UnivariateSeries.variable(8)
    assert v_lambda(2, 3, 8) == 1 - z + u_sigma(2, 8) * (z**2 + z**3)


def test_catalan():
    assert list(catalan_series(6).coeffs) == [1, 1, 2, 5, 14, 42, 132]


def test_T_examples():
    assert list(T_series(1, 2, 9).coeffs) == [1, 1, 1, 2, 4, 8, 17, 37, 82, 185]
    assert list(T_series(2, 2, 9).coeffs) == T2_BRUTE
    assert all(T_series(s, l, 3)[0] == 1 for s in (1, 2, 5) for l in (1, 2, 4))


def test_T_lambda1_is_motzkin():
    assert list(T_series(1, 1, 8).coeffs) == [1, 1, 2, 4, 9, 21, 51, 127, 323]


@pytest.mark.parametrize("sigma", [1, 2, 3])
@pytest.mark.parametrize("lam", [1, 2, 3, 4])
def test_T_matches_oracle(sigma, lam):
    T = T_series(sigma, lam, 14)
    assert [enumerate_secondary(n, sigma, lam) for n in range(15)] == list(T.coeffs)


@pytest.mark.parametrize("sigma", [1, 2, 3, 5])
@pytest.mark.parametrize("lam", [1, 2, 3, 6])
def test_two_closed_form_paths_agree(sigma, lam):
    assert T_series(sigma, lam, 40) == T_series_by_composition(sigma, lam, 40)


def test_monotone_in_restrictions():
    N = 30
    for sigma in (1, 2, 3):
        for lam in (1, 2, 3):
            here = T_series(sigma, lam, N).coeffs
            more_lam = T_series(sigma, lam + 1, N).coeffs
            more_sigma = T_series(sigma + 1, lam, N).coeffs
            assert all(a >= b for a, b in zip(here, more_lam))
            assert all(a >= b for a, b in zip(here, more_sigma))


def test_T_eval_examples():
    with mpmath.workdps(30):
        assert T_eval_real(1, 2, 0) == 1
        for sigma, lam, x in ((1, 2, "0.2"), (2, 3, "0.3")):
            x = mpmath.mpf(x)
            got = T_eval_real(sigma, lam, x)
            ref = series_value(T_series(sigma, lam, 200), x)
            assert abs(got - ref) < mpmath.mpf(10) ** -10 * ref


@pytest.mark.parametrize("sigma,lam", [(1, 1), (1, 2), (2, 2), (2, 3), (4, 5)])
def test_T_eval_at_80_percent_of_radius(sigma, lam):
    with mpmath.workdps(40):
        x = mpmath.mpf("0.8") * T_singularity(sigma, lam)
        ref = series_value(T_series(sigma, lam, 400), x)
        assert abs(T_eval_real(sigma, lam, x) - ref) < mpmath.mpf(10) ** -10


def test_T_eval_domain():
    with mpmath.workdps(30):
        xT = T_singularity(1, 2)
        assert abs(xT - (3 - mpmath.sqrt(5)) / 2) < mpmath.mpf(10) ** -20
        with pytest.raises(DomainError):
            T_eval_real(1, 2, xT + mpmath.mpf("0.01"))
        with pytest.raises(DomainError):
            T_eval_real(1, 2, -1)

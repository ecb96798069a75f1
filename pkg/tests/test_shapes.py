from collections import Counter

import mpmath
import pytest

from rnajoint.oracle import enumerate_shapes, generate_shapes, tight_decompose
from rnajoint.series import TrivariateSeries
from rnajoint.shapes import (
    U_quadratic,
    U_radicand,
    U_series,
    rho,
    shape_coefficients,
    shape_gf,
    shape_grammar_components,
)

K = 5
BOX = (K, K, K)


@pytest.fixture(scope="module")
def G():
    return shape_gf(BOX)


@pytest.fixture(scope="module")
def brute():
    return enumerate_shapes(K)


def within_total(series, total):
    return {k: v for k, v in series.coeffs.items() if sum(k) <= total}


def test_small_coefficients(G):
    assert G[0, 0, 0] == 1 and G[0, 0, 1] == 1
    assert G[1, 0, 1] == 1 and G[0, 1, 1] == 1
    assert G[0, 0, 2] == 0  # two side-by-side exterior arcs would be a stack


def test_coefficients_equal_brute_force(G, brute):
    assert within_total(G, K) == brute


def test_brute_force_totals():
    counts = enumerate_shapes(3)
    assert {k: v for k, v in counts.items() if sum(k) <= 2} == {
        (0, 0, 0): 1,
        (0, 0, 1): 1,
        (1, 0, 1): 1,
        (0, 1, 1): 1,
    }
    by_total = Counter()
    for key, v in counts.items():
        by_total[sum(key)] += v
    assert [by_total[t] for t in range(4)] == [1, 1, 2, 5]


def test_U_against_brute_force_and_diagonal(G, brute):
    U = U_series(K)
    assert list(U.coeffs)[:4] == [1, 1, 2, 5]
    for t in range(K + 1):
        assert U[t] == sum(v for key, v in brute.items() if sum(key) == t)
        assert U[t] == sum(v for key, v in G.coeffs.items() if sum(key) == t)


def test_U_residual():
    A, B, C = U_quadratic(60)
    U = U_series(60)
    assert ((A * U + B) * U + C).is_zero()


def test_G_residual(G):
    A, B, C = shape_coefficients(BOX)
    assert ((A * G + B) * G + C).is_zero()


def test_coefficient_polynomials():
    A, B, C = shape_coefficients((3, 3, 3))
    for P in (A, B, C):
        assert P == P.swap_xy()
        assert max(sum(k) for k in P.coeffs) <= 3
    assert C.coeffs == {k: 1 for k in [(a, b, c) for a in (0, 1) for b in (0, 1) for c in (0, 1)]}


def test_symmetry(G):
    assert G == G.swap_xy()


def test_interior_arcs_need_exterior_arcs(G):
    for t1 in range(K + 1):
        for t2 in range(K + 1):
            if t1 + t2:
                assert G[t1, t2, 0] == 0


def test_slices(G):
    # G(u, v, 0) = 1 and G(0, 0, z) = 1 + z
    assert {k: v for k, v in G.coeffs.items() if k[2] == 0} == {(0, 0, 0): 1}
    assert {k: v for k, v in G.coeffs.items() if k[0] == k[1] == 0} == {(0, 0, 0): 1, (0, 0, 1): 1}


def test_grammar_identities():
    c = shape_grammar_components(BOX)
    z = TrivariateSeries.monomial((0, 0, 1), BOX)
    u = TrivariateSeries.monomial((1, 0, 0), BOX)
    v = TrivariateSeries.monomial((0, 1, 0), BOX)
    assert c.I == 1 + z
    assert c.G == c.G_RC * c.I + c.I  # step 1
    assert c.G_RC == c.G * c.G_C  # step 2
    assert c.G_C == c.G_tri_down + c.G_tri_up + c.G_square  # step 3
    assert c.G_tri_down == u * z + u * c.G_DT
    assert c.G_tri_up == v * z + v * c.G_DT
    assert c.G_square == u * v * z + u * v * c.G_DT
    assert c.G_DT == c.G - c.I - c.G_C  # step 4


def test_closed_components_match_single_block_shapes():
    c = shape_grammar_components(BOX)
    found = Counter()
    for key, d in generate_shapes(K):
        dec = tight_decompose(d)
        if len(dec.blocks) == 1 and dec.blocks[0].kind != "circle":
            found[dec.blocks[0].kind, key] += 1
    for kind, series in (("down", c.G_tri_down), ("up", c.G_tri_up), ("square", c.G_square)):
        got = {key: n for (k, key), n in found.items() if k == kind}
        assert got == within_total(series, K)


def test_rho():
    with mpmath.workdps(60):
        r = rho()
        assert mpmath.mpf("0.22143") < r < mpmath.mpf("0.22145")
        assert round(float(r), 5) == 0.22144
        assert abs(U_radicand(r)) < mpmath.mpf(10) ** -25
        # smallest positive root: no sign change on (0, r)
        assert all(U_radicand(r * k / 100) > 0 for k in range(100))

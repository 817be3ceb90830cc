import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from strategies import seeds

from kleislian.algebra import Algebra, commutative_algebra, matrix_algebra, operator_norm
from kleislian.gelfand import (
    NotCommutativeError,
    Polynomial,
    SpectrumOutOfRangeError,
    c2_factorization,
    c2_sigma,
    c3_witness,
    characters,
    check_c_initial,
    check_gelfand,
    check_stat_c2,
    functional_calculus,
    gelfand_transform,
    polynomial_eval,
    random_c2_sigma,
    rho_c2,
    state_from_x,
)
from kleislian.maps import NotPUError, apply, classify, is_state, make_map, random_density_state

M2 = matrix_algebra(2)
C2 = commutative_algebra(2)


def test_characters_of_c2():
    chars = characters(C2)
    assert len(chars) == 2
    b = C2.diag([3 + 1j, -2])
    assert [w(b) for w in chars] == [3 + 1j, -2]
    for w in chars:
        assert classify(w.map).label == "MIU"


@pytest.mark.parametrize("k", [1, 2, 5])
def test_character_count(k):
    assert len(characters(commutative_algebra(k))) == k


def test_characters_need_commutativity():
    with pytest.raises(NotCommutativeError):
        characters(M2)


@pytest.mark.parametrize("k", [1, 2, 3, 5])
def test_gelfand_exact(k):
    v = check_gelfand(commutative_algebra(k))
    assert v and v.details["rank"] == k


def test_gelfand_is_isometric(rng):
    A = commutative_algebra(4)
    g = gelfand_transform(A)
    for _ in range(50):
        b = A.random(rng)
        assert operator_norm(apply(g, b)) == operator_norm(b)


# polynomials and functional calculus -------------------------------------------

def test_polynomial_arithmetic():
    p = Polynomial((1, 2))
    q = Polynomial((0, 0, 1))
    assert (p * q).coeffs == (0, 0, 1, 2)
    assert (p + q).coeffs == (1, 2, 1)
    assert Polynomial((1, 0, 0)).degree == 0
    assert p(np.array([0.0, 1.0, 2.0])).tolist() == [1, 3, 5]
    assert Polynomial.from_json(p.to_json()) == p


def test_square_of_diagonal():
    a = commutative_algebra(3).diag([0, 0.5, 1])
    sq = functional_calculus(a, Polynomial.monomial(2))
    assert np.allclose(sq.to_vector(), [0, 0.25, 1], atol=1e-15)


def test_functional_calculus_matches_horner(rng):
    A = Algebra((2, 3))
    b = A.random_positive(rng)
    a = b * (1 / operator_norm(b))
    p = Polynomial((0.5, -1j, 2, 0, 3))
    assert functional_calculus(a, p).allclose(polynomial_eval(a, p), 1e-12)


def test_functional_calculus_rejects_bad_spectrum():
    with pytest.raises(SpectrumOutOfRangeError):
        functional_calculus(M2.unit() * 2, Polynomial.monomial(1))
    with pytest.raises(SpectrumOutOfRangeError):
        functional_calculus(M2.element([[[0, 1], [0, 0]]]), Polynomial.monomial(1))


@settings(max_examples=30)
@given(seeds, st.integers(0, 8), st.integers(0, 8))
def test_functional_calculus_is_multiplicative(seed, i, j):
    rng = np.random.default_rng(seed)
    b = M2.random_positive(rng)
    a = b * (1 / operator_norm(b))
    xi, xj = Polynomial.monomial(i), Polynomial.monomial(j)
    lhs = functional_calculus(a, xi * xj)
    rhs = functional_calculus(a, xi) @ functional_calculus(a, xj)
    assert lhs.allclose(rhs, 1e-12)


# the initial objects C and C^2 -------------------------------------------------

@pytest.mark.parametrize("dims", [(1,), (2,), (2, 1), (1, 1, 1), (3, 2)])
def test_c_is_initial(dims):
    assert check_c_initial(Algebra(dims))


def test_rho_oracles():
    r = rho_c2(2, 5)
    assert r(1.0) == 2 and r(0.0) == 5
    assert r(0.3) == pytest.approx(0.3 * 2 + 0.7 * 5)


def test_c2_scalar_evaluation():
    """For ``a = 0.3`` the extension is evaluation at 0.3."""
    fac = c2_factorization(c2_sigma(M2.unit() * 0.3))
    assert fac.verdict
    p = Polynomial((1, -2, 0, 4))
    assert fac.sigma_bar(p).allclose(M2.unit() * complex(p(0.3)), 1e-14)


def test_c2_projection():
    """For ``a = diag(0, 1)`` the extension reads off ``p(0)`` and ``p(1)``."""
    a = M2.element([np.diag([0.0, 1.0])])
    fac = c2_factorization(c2_sigma(a))
    assert fac.verdict
    p = Polynomial((2, 3, -1))
    assert np.allclose(fac.sigma_bar(p).blocks[0], np.diag([2, 4]), atol=1e-14)


def test_c2_factorization_residuals(rng):
    A = Algebra((2, 3))
    for _ in range(10):
        fac = c2_factorization(random_c2_sigma(A, rng))
        assert fac.verdict, fac.residuals
        assert fac.residuals["factorization"] < 1e-9
        assert fac.residuals["multiplicativity"] < 1e-8


def test_c2_extension_is_unique(rng):
    """Powers of ``a`` by repeated matrix multiplication must agree."""
    sigma = random_c2_sigma(M2, rng)
    fac = c2_factorization(sigma)
    a = fac.a.blocks[0]
    for k in range(9):
        assert np.allclose(fac.sigma_bar(Polynomial.monomial(k)).blocks[0],
                           np.linalg.matrix_power(a, k), atol=1e-12)


def test_c2_refuses_non_pu():
    with pytest.raises(NotPUError):
        c2_factorization(c2_sigma(M2.unit() * 2))


# C^3 ----------------------------------------------------------------------------

def test_c3_witness():
    w = c3_witness()
    assert w.passed
    comm = (w.a1 @ w.a2 - w.a2 @ w.a1).blocks[0]
    assert np.allclose(comm, [[0, -1 / 8], [1 / 8, 0]], atol=1e-15)
    assert w.report["noncommuting"].details["norm"] == pytest.approx(1 / 8)


def test_c3_witness_is_deterministic():
    a, b = c3_witness(), c3_witness()
    assert np.array_equal(a.f.matrix, b.f.matrix)


def test_c3_map_labels():
    mc = classify(c3_witness().f)
    assert mc.labels == ["CPU", "PU", "PsU"]


# states on C^2 ----------------------------------------------------------------

@pytest.mark.parametrize("x, values", [(0.0, [0, 1]), (1.0, [1, 0]), (0.25, [0.25, 0.75])])
def test_state_from_x(x, values):
    phi = state_from_x(x).phi
    assert is_state(phi)
    assert np.allclose(phi.matrix[0], values)


def test_state_from_x_range():
    with pytest.raises(ValueError):
        state_from_x(1.5)


def test_stat_c2():
    v = check_stat_c2()
    assert v and v.details["inverse_error"] == 0.0


def test_every_state_on_c2_is_an_xbar(rng):
    for _ in range(50):
        phi, _, _ = random_density_state(C2, rng)
        x = apply(phi, C2.diag([1, 0])).blocks[0][0, 0].real
        assert np.allclose(phi.matrix, state_from_x(x).phi.matrix, atol=1e-15)


def test_non_state_on_c2_is_detected():
    assert not is_state(make_map(C2, Algebra((1,)), [Algebra((1,)).unit() * 2,
                                                     Algebra((1,)).unit() * -1]))

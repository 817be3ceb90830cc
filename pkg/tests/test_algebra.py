import numpy as np
import pytest
from hypothesis import given
from strategies import algebra_and_rng, algebras

from kleislian.algebra import (
    Algebra,
    NotNormalError,
    NotSelfAdjointError,
    ParentMismatchError,
    Tolerance,
    commutative_algebra,
    is_positive_element,
    jordan_decompose,
    leq,
    make_algebra,
    matrix_algebra,
    mul,
    operator_norm,
    order_unit_norm,
    spectrum,
    spectrum_values,
    star,
    unit,
)

M2 = matrix_algebra(2)
C2 = commutative_algebra(2)
P1 = np.array([[0, 0], [0, 1]], dtype=complex)
PPLUS = 0.5 * np.array([[1, 1], [1, 1]], dtype=complex)


def test_make_algebra_shapes():
    assert make_algebra((1, 1)).commutative
    assert make_algebra((1, 1)).dim == 2
    assert make_algebra((2,)).dim == 4
    triv = make_algebra(())
    assert triv.trivial and triv.dim == 0
    assert operator_norm(triv.zero()) == 0.0


def test_bad_block_dims_rejected():
    with pytest.raises(ValueError):
        Algebra((2, 0))


def test_basis_order_is_block_major_row_major():
    A = Algebra((2, 1))
    assert [A.basis_label(p) for p in range(A.dim)] == [
        (0, 0, 0), (0, 0, 1), (0, 1, 0), (0, 1, 1), (1, 0, 0)]
    e = A.basis()[2]
    assert e.blocks[0][1, 0] == 1 and np.count_nonzero(e.to_vector()) == 1


def test_unit_of_c2():
    assert np.array_equal(unit(C2).to_vector(), [1, 1])


def test_product_of_c3_generators():
    a1, a2 = M2.element([0.5 * P1]), M2.element([0.5 * PPLUS])
    expected = np.array([[0, 0], [1 / 8, 1 / 8]])
    assert np.array_equal(mul(a1, a2).blocks[0], expected)


def test_star_of_nilpotent():
    a = M2.element([[[0, 1j], [0, 0]]])
    assert np.array_equal(star(a).blocks[0], [[0, 0], [-1j, 0]])


def test_parent_mismatch():
    with pytest.raises(ParentMismatchError):
        M2.unit() + C2.unit()


@pytest.mark.parametrize("A", [M2, C2, Algebra((2, 1, 3))])
def test_unit_norm_is_one(A):
    assert operator_norm(A.unit()) == pytest.approx(1.0, abs=1e-15)


def test_norm_oracles():
    assert operator_norm(C2.diag([3, -4])) == 4.0
    # singular values of [[0,2],[0,0]] are 2 and 0
    assert operator_norm(M2.element([[[0, 2], [0, 0]]])) == pytest.approx(2.0, abs=1e-15)


def test_norm_is_max_over_blocks(rng):
    A = Algebra((2, 3, 1))
    a = A.random(rng)
    by_hand = max(np.sqrt(np.max(np.linalg.eigvalsh(b.conj().T @ b))) for b in a.blocks)
    assert operator_norm(a) == pytest.approx(by_hand, rel=1e-12)


def test_spectrum_oracles():
    vals = sorted(spectrum_values(commutative_algebra(3).diag([2, -1j, 0.5])), key=abs)
    assert np.allclose(vals, [0.5, -1j, 2])
    half = sorted(spectrum_values(M2.element([0.5 * PPLUS])).real)
    assert np.allclose(half, [0, 0.5], atol=1e-15)
    assert spectrum(Algebra((2, 1)).unit()) == [(1, 0), (1, 0), (1, 1)]


def test_spectrum_needs_normal():
    with pytest.raises(NotNormalError):
        spectrum(M2.element([[[0, 1], [0, 0]]]))


def test_positivity_oracles(rng):
    b = M2.random(rng)
    assert is_positive_element(b.star() @ b)
    v = is_positive_element(-M2.unit())
    assert not v and v.witness["eigenvalue"] == pytest.approx(-1.0)
    a3 = M2.unit() - M2.element([0.5 * P1]) - M2.element([0.5 * PPLUS])
    assert is_positive_element(a3)
    # a3 = [[3/4, -1/4], [-1/4, 1/4]]: trace 1, det 1/8, eigenvalues (1 +- 1/sqrt 2)/2
    assert np.allclose(a3.blocks[0], [[0.75, -0.25], [-0.25, 0.25]])
    assert v.margin == -1.0
    assert is_positive_element(a3).margin == pytest.approx((1 - 1 / np.sqrt(2)) / 2, abs=1e-15)


def test_positivity_witness_replays():
    a = M2.element([[[1, 2], [2, 1]]])
    v = is_positive_element(a)
    x = np.asarray(v.witness["vector"])
    assert not v
    assert np.vdot(x, a.blocks[0] @ x).real == pytest.approx(-1.0)


def test_non_self_adjoint_is_not_positive():
    v = is_positive_element(M2.element([[[1, 1], [0, 1]]]))
    assert not v and v.witness["reason"] == "not self-adjoint"


def test_order():
    assert leq(C2.diag([0, 0]), C2.diag([1, 0]))
    assert not leq(C2.diag([1, 0]), C2.diag([0, 1]))


@given(algebra_and_rng())
def test_positive_below_norm_times_unit(data):
    A, rng = data
    c = A.random_positive(rng)
    assert leq(c, A.unit() * operator_norm(c))


def test_jordan_oracles():
    c = M2.element([[[2, 1], [1, 2]]])
    c1, c2, c3, c4 = jordan_decompose(c)
    assert c1.allclose(c, 1e-14)
    assert all(operator_norm(x) < 1e-14 for x in (c2, c3, c4))
    parts = jordan_decompose(-M2.unit())
    assert parts[1].allclose(M2.unit(), 1e-14)
    assert all(operator_norm(x) < 1e-14 for x in (parts[0], parts[2], parts[3]))


def test_jordan_of_nilpotent():
    c = M2.element([[[0, 1], [0, 0]]])
    c1, c2, c3, c4 = jordan_decompose(c)
    # (c + c*)/2 = X/2 has spectral parts (1 +- X)/4; (c - c*)/2i = Y/2 likewise
    X = np.array([[0, 1], [1, 0]])
    Y = np.array([[0, -1j], [1j, 0]])
    I2 = np.eye(2)
    assert np.allclose(c1.blocks[0], (I2 + X) / 4)
    assert np.allclose(c2.blocks[0], (I2 - X) / 4)
    assert np.allclose(c3.blocks[0], (I2 + Y) / 4)
    assert np.allclose(c4.blocks[0], (I2 - Y) / 4)


def test_order_unit_norm():
    assert order_unit_norm(M2.unit()) == 1.0
    assert order_unit_norm(C2.diag([2, -5])) == 5.0
    assert order_unit_norm(M2.element([0.5 * PPLUS])) == pytest.approx(0.5)
    with pytest.raises(NotSelfAdjointError):
        order_unit_norm(M2.element([[[0, 1], [0, 0]]]))


def test_elements_are_immutable(rng):
    a = M2.random(rng)
    with pytest.raises(ValueError):
        a.blocks[0][0, 0] = 5


# invariants -------------------------------------------------------------------

def test_cstar_identity_on_1000_elements(rng):
    for k in range(1000):
        A = Algebra(tuple(rng.integers(1, 4, size=rng.integers(1, 4))))
        a = A.random(rng, scale=10.0 ** rng.uniform(-3, 3))
        n = operator_norm(a)
        assert abs(operator_norm(a.star() @ a) - n ** 2) <= 1e-8 * (1 + n ** 2)


@given(algebra_and_rng())
def test_submultiplicative(data):
    A, rng = data
    a, b = A.random(rng), A.random(rng)
    assert operator_norm(a @ b) <= operator_norm(a) * operator_norm(b) + 1e-9


@given(algebra_and_rng())
def test_spectrum_of_square_in_range(data):
    A, rng = data
    a = A.random(rng)
    vals = spectrum_values(a.star() @ a)
    n2 = operator_norm(a) ** 2
    tol = 1e-9 * (1 + n2)
    assert np.all(np.abs(vals.imag) <= tol)
    assert np.all(vals.real >= -tol) and np.all(vals.real <= n2 + tol)


@given(algebra_and_rng())
def test_jordan_reassembles(data):
    A, rng = data
    c = A.random(rng)
    c1, c2, c3, c4 = jordan_decompose(c)
    back = c1 - c2 + c3 * 1j - c4 * 1j
    assert operator_norm(back - c) < 1e-10
    assert all(is_positive_element(x) for x in (c1, c2, c3, c4))
    assert operator_norm(c1 @ c2) < 1e-10 and operator_norm(c3 @ c4) < 1e-10


@given(algebras)
def test_unit_and_zero_laws(A):
    e = A.basis()
    for x in e:
        assert (A.unit() @ x).equals(x) and (x @ A.unit()).equals(x)
        assert (x + A.zero()).equals(x)


@given(algebra_and_rng())
def test_star_is_antimultiplicative(data):
    A, rng = data
    a, b = A.random(rng), A.random(rng)
    assert (a @ b).star().allclose(b.star() @ a.star(), 1e-12)
    assert a.star().star().equals(a)


@given(algebra_and_rng())
def test_order_unit_norm_matches_norm_on_self_adjoint(data):
    A, rng = data
    v = A.random_self_adjoint(rng)
    assert order_unit_norm(v) == pytest.approx(operator_norm(v), rel=1e-12, abs=1e-14)


def test_tolerance_validation():
    assert Tolerance(1e-9, 0.0).bound(100) == 1e-9
    with pytest.raises(ValueError):
        Tolerance(-1.0)

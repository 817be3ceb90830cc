import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from strategies import algebras, seeds

from kleislian.algebra import Algebra, commutative_algebra, matrix_algebra, operator_norm
from kleislian.constructions import (
    NotMIUError,
    check_equaliser_factorization,
    direct_sum,
    equaliser,
)
from kleislian.maps import LinearMap, classify, compose, identity_map, map_from_function
from kleislian.zoo import coordinate_map, random_cpu_map, random_unitary, transpose_map

M2 = matrix_algebra(2)
C = Algebra((1,))


def test_direct_sum_concatenates_blocks():
    assert direct_sum([M2, C]).algebra.block_dims == (2, 1)
    single = direct_sum([M2])
    assert single.algebra == M2
    assert np.array_equal(single.injections[0].matrix, np.eye(4))


def test_projections_miu_injections_not_unital():
    S = direct_sum([M2, C, matrix_algebra(3)])
    for p in S.projections:
        assert classify(p).label == "MIU"
    for i in S.injections:
        mc = classify(i)
        assert mc.multiplicative and mc.involutive and not mc.unital


@given(st.lists(algebras, min_size=1, max_size=3), seeds)
def test_injected_norm_is_exact(parts, seed):
    rng = np.random.default_rng(seed)
    S = direct_sum(parts)
    for A, inj in zip(parts, S.injections):
        a = A.random(rng)
        assert operator_norm(inj(a)) == operator_norm(a)


@given(st.lists(algebras, min_size=1, max_size=3), seeds)
def test_sum_norm_is_sup(parts, seed):
    rng = np.random.default_rng(seed)
    S = direct_sum(parts)
    xs = [A.random(rng) for A in parts]
    assert operator_norm(S.element(xs)) == max(operator_norm(x) for x in xs)


def test_tupling_is_the_unique_mediating_map(rng):
    parts = [M2, C]
    S = direct_sum(parts)
    dom = Algebra((2, 1))
    fs = [random_cpu_map(dom, A, rng) for A in parts]
    t = S.tuple_maps(fs)
    for p, f in zip(S.projections, fs):
        assert np.allclose(compose(p, t).matrix, f.matrix, atol=1e-14)
    # a map is determined by its components
    assert np.array_equal(S.tuple_maps([compose(p, t) for p in S.projections]).matrix, t.matrix)


# equalisers --------------------------------------------------------------------

def test_equaliser_of_equal_maps_is_everything():
    E = equaliser(identity_map(M2), identity_map(M2))
    assert E.dim == 4


def test_equaliser_refuses_transpose():
    with pytest.raises(NotMIUError):
        equaliser(identity_map(M2), transpose_map(2))


def test_equaliser_of_swap_is_diagonal():
    C2 = commutative_algebra(2)
    E = equaliser(identity_map(C2), coordinate_map(C2, C2, [1, 0]))
    assert E.dim == 1
    v = E.basis[0].to_vector()
    assert np.allclose(v / v[0], [1, 1])


def _miu_pairs(rng):
    M22 = Algebra((2, 2))
    u = random_unitary(2, rng)
    f = map_from_function(M2, M22, lambda a: M22.element([a.blocks[0], a.blocks[0]]))
    g = map_from_function(M2, M22, lambda a: M22.element([a.blocks[0], u.conj().T @ a.blocks[0] @ u]))
    yield f, g, 2
    yield identity_map(M22), coordinate_map(M22, M22, [1, 0]), 4
    C3, C2 = commutative_algebra(3), commutative_algebra(2)
    yield coordinate_map(C3, C2, [0, 1]), coordinate_map(C3, C2, [0, 2]), 2


def test_equaliser_dimensions_and_closure(rng):
    for f, g, dim in _miu_pairs(rng):
        E = equaliser(f, g)
        assert E.dim == dim
        assert E.closure_check(1e-8)
        incl = E.inclusion
        assert np.abs(f.matrix @ incl - g.matrix @ incl).max() < 1e-12
        assert E.contains(f.dom.unit())


def test_equaliser_interplay(rng):
    """d = (projection onto E) . (random CPU) is PU, equalises, and factors."""
    for f, g, _ in _miu_pairs(rng):
        E = equaliser(f, g)
        P = E.inclusion @ E.inclusion.conj().T
        A = f.dom
        for _ in range(5):
            d0 = random_cpu_map(Algebra((2, 1)), A, rng)
            d = LinearMap(d0.dom, A, P @ d0.matrix, "projected")
            mc = classify(d, n_samples=200)
            assert mc.unital and mc.positive
            v = check_equaliser_factorization(E, f, g, d)
            assert v, v.witness
            h = E.factor(d)
            assert np.abs(E.inclusion @ h - d.matrix).max() < 1e-12


def test_factorization_rejects_non_equalising(rng):
    f, g, _ = next(_miu_pairs(rng))
    E = equaliser(f, g)
    v = check_equaliser_factorization(E, f, g, identity_map(M2))
    assert not v and v.witness["reason"] == "f.d != g.d"

import dataclasses
from itertools import chain, combinations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from kleislian.kleisli import (
    INSTANCES,
    Arrow,
    FiniteCategory,
    FinSet,
    KleisliError,
    build_instance,
    build_kleisli,
    build_multimap_instance,
    build_option_neg_instance,
    check_adjunction,
    check_bijective_on_objects,
    check_category_laws,
    check_L_iso,
    check_monad_laws,
    discrete_category,
    inverse_K,
    relabel_functor,
    rel_category,
    run_law_suite,
    set_category,
    underlying,
)
from kleislian.kleisli.category import then


def powerset_oracle(xs):
    xs = list(xs)
    return {frozenset(c) for c in chain.from_iterable(combinations(xs, r) for r in range(len(xs) + 1))}


def test_finset_powerset_is_lazy_and_correct():
    X = FinSet.range(3)
    P = FinSet.powerset(X)
    assert len(P) == 8
    assert set(P) == powerset_oracle(range(3))
    assert frozenset({0, 2}) in P and frozenset({5}) not in P
    huge = FinSet.powerset(FinSet.powerset(FinSet.powerset(FinSet.range(3))))
    assert huge.size == 2 ** 256


def test_finset_equality():
    assert FinSet.range(2) == FinSet([0, 1])
    assert FinSet.powerset(FinSet.range(1)) == FinSet([frozenset(), frozenset({0})])


def test_hom_sizes():
    objs = [FinSet.range(k) for k in range(3)]
    Rel = rel_category(objs)
    Set = set_category(objs)
    two = FinSet.range(2)
    assert len(Rel.homs(two, two)) == 16
    for X in objs:
        for Y in objs:
            assert len(Rel.homs(X, Y)) == 2 ** (len(X) * len(Y))
            assert len(Set.homs(X, Y)) == len(Y) ** len(X)


@pytest.mark.parametrize("n", [1, 2])
def test_powerset_instance_laws(n):
    out = run_law_suite(build_multimap_instance(n))
    failed = {k: v.witness for k, v in out["verdicts"].items() if not v}
    assert not failed
    assert all(out["facts"].values())
    assert "K L = id" in out["verdicts"] and "L K = id" in out["verdicts"]


def test_monad_is_union_and_singleton():
    kd = build_kleisli(build_multimap_instance(2))
    m = kd.monad
    X = FinSet.range(2)
    assert set(m.T(X)) == powerset_oracle(range(2))
    for x in X:
        assert m.unit(X)(x) == frozenset({x})
    mu = m.mult(X)
    for family in m.T(m.T(X)):
        assert mu(family) == frozenset().union(*family)


def test_G_is_direct_image():
    kd = build_kleisli(build_multimap_instance(2))
    X, Y = FinSet.range(2), FinSet.range(2)
    for f in kd.Kl.hom(X, Y):
        Gf = kd.G(f)
        for A in powerset_oracle(range(2)):
            assert Gf(A) == frozenset().union(*(f(x) for x in A))


def test_GV_is_powerset():
    kd = build_kleisli(build_multimap_instance(2))
    Set = kd.adj.C
    for X in Set.objects:
        for Y in Set.objects:
            for f in Set.hom(X, Y):
                GVf = kd.G(kd.V(f))
                for A in powerset_oracle(X):
                    assert GVf(A) == frozenset(f(a) for a in A)


def test_L_is_the_relation():
    kd = build_kleisli(build_multimap_instance(2))
    X = FinSet.range(2)
    for f in kd.Kl.hom(X, X):
        Lf = kd.L(f)
        assert Lf.dom == X and Lf.cod == X
        assert all(Lf(x) == f(x) for x in X)


def test_K_inverts_L():
    kd = build_kleisli(build_multimap_instance(2))
    K = inverse_K(kd)
    for f in kd.Kl.arrows():
        assert K(kd.L(f)) == f


def test_kleisli_composition_is_relational():
    kd = build_kleisli(build_multimap_instance(2))
    X = FinSet.range(2)
    for f in kd.Kl.hom(X, X):
        for g in kd.Kl.hom(X, X):
            gf = kd.Kl.compose(g, f)
            for x in X:
                assert gf(x) == frozenset(z for y in f(x) for z in g(y))


def test_underlying_retags_codomain():
    kd = build_kleisli(build_multimap_instance(1))
    f = next(iter(kd.Kl.arrows()))
    assert underlying(kd.monad, f).cod == FinSet.powerset(f.cod)


# option instances ---------------------------------------------------------------

def test_option_instance_laws():
    out = run_law_suite(build_instance("option", 2))
    assert all(out["verdicts"].values())
    assert all(out["facts"].values())


def test_option_neg_reports_missed_object():
    out = run_law_suite(build_option_neg_instance(1))
    assert all(out["verdicts"].values())
    facts = out["facts"]
    assert not facts["F bijective on objects"]
    assert "({0,1},0)" in facts["F bijective on objects"].witness["missed"]
    assert not facts["L isomorphism"]
    assert facts["L isomorphism"].witness["reason"] == "not bijective on objects"
    assert not facts["K defined"]


def test_option_neg_K_raises():
    kd = build_kleisli(build_option_neg_instance(1))
    with pytest.raises(KleisliError) as exc:
        inverse_K(kd)
    assert exc.value.witness["reason"] == "not surjective"


@pytest.mark.parametrize("name", sorted(INSTANCES))
def test_biconditional_holds_for_every_instance(name):
    out = run_law_suite(build_instance(name, 1))
    assert out["verdicts"]["F bijective on objects iff L iso"]
    assert out["verdicts"]["L unique"]


def test_bad_instance_arguments():
    with pytest.raises(KleisliError):
        build_instance("nope")
    with pytest.raises(KleisliError):
        build_instance("powerset", 9)


# bijective on objects -------------------------------------------------------------

def test_discrete_inclusion_is_not_bijective():
    two, three = discrete_category("2", [0, 1]), discrete_category("3", [0, 1, 2])
    v = check_bijective_on_objects(relabel_functor(two, three, {0: 0, 1: 1}))
    assert not v and v.witness["missed"] == ["2"]


def test_discrete_collapse_is_not_injective():
    two, one = discrete_category("2", [0, 1]), discrete_category("1", [0])
    v = check_bijective_on_objects(relabel_functor(two, one, {0: 0, 1: 0}))
    assert not v and v.witness["reason"] == "not injective"


@given(st.permutations([0, 1, 2, 3]))
def test_relabelling_is_bijective(perm):
    D = discrete_category("4", range(4))
    assert check_bijective_on_objects(relabel_functor(D, D, dict(enumerate(perm))))


# failing checks produce witnesses --------------------------------------------------

def test_broken_unit_breaks_a_triangle():
    adj = build_multimap_instance(1)
    empty = lambda X: Arrow(X, FinSet.powerset(X), X, lambda x: frozenset(), "empty")
    report = check_adjunction(dataclasses.replace(adj, unit=empty))
    assert report["unit naturality"]
    assert not report["triangle (U eps)(eta U) = id"]
    assert report["triangle (U eps)(eta U) = id"].witness["law"].startswith("triangle")


def test_non_associative_composition_is_caught():
    Set = set_category([FinSet.range(2)])

    def compose(g, f):
        # identities behave; any other composite collapses to a constant
        if f.label == "id" or g.label == "id":
            return then(f, g)
        c = g(f(0))
        return Arrow(f.dom, g.cod, f.carrier, lambda x: c)

    broken = FiniteCategory("broken", Set.objects, Set.hom, Set.identity, compose)
    v = check_category_laws(broken)
    assert not v and v.witness["law"] == "associativity"


def test_monad_laws_skip_large_carriers():
    kd = build_kleisli(build_multimap_instance(2))
    out = check_monad_laws(kd.monad, max_carrier=16)
    assert out["monad associativity"].details["skipped"] == ["{0,1}"]
    assert out["monad unit laws"]


def test_L_iso_on_powerset():
    assert check_L_iso(build_kleisli(build_multimap_instance(2)))

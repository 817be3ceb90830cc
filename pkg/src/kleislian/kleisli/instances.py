"""Finite-set instances of adjunctions, selected by name.

* ``powerset``: finite sets and functions against finite sets and multimaps
  (relations).  ``F`` is the graph embedding, ``U`` sends a set to its
  powerset and a multimap to its image map.  The monad is powerset.
* ``identity``: ``F = U = Id`` on finite sets.
* ``option``: pointed sets of the form ``(X + 1, new point)`` only.  The
  monad is ``X -> X + 1``.
* ``option-neg``: the same ``F`` into *all* finite pointed sets, where
  ``F`` misses e.g. ``({0, 1}, 0)``.  Laws hold but ``L`` is not an iso.

Base sets are ``{0, ..., k-1}`` for ``0 <= k <= max_size``.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import product
from typing import Callable

from .adjunction import AdjunctionData, KleisliError
from .category import Arrow, FiniteCategory, FinSet, FunctorData, ordered, then

MAX_SIZE = 4


def _check_size(max_size: int, low: int = 0):
    if not low <= max_size <= MAX_SIZE:
        raise KleisliError(f"max_size must lie in [{low}, {MAX_SIZE}]", {"max_size": max_size})


def base_sets(max_size: int) -> tuple[FinSet, ...]:
    return tuple(FinSet.range(k) for k in range(max_size + 1))


# categories ----------------------------------------------------------------------

def set_category(objects, name: str = "Set") -> FiniteCategory:
    """Finite sets and all functions between them."""

    def hom(X: FinSet, Y: FinSet):
        xs, ys = ordered(X), ordered(Y)
        for values in product(ys, repeat=len(xs)):
            yield Arrow.from_dict(X, Y, X, dict(zip(xs, values)))

    def identity(X):
        return Arrow(X, X, X, lambda x: x, "id")

    return FiniteCategory(name, tuple(objects), hom, identity, lambda g, f: then(f, g))


def rel_category(objects, name: str = "Rel") -> FiniteCategory:
    """Finite sets and multimaps ``x -> subset of Y``, composed by union."""

    def hom(X: FinSet, Y: FinSet):
        xs = ordered(X)
        subsets = ordered(FinSet.powerset(Y))
        for values in product(subsets, repeat=len(xs)):
            yield Arrow.from_dict(X, Y, X, dict(zip(xs, values)))

    def identity(X):
        return Arrow(X, X, X, lambda x: frozenset((x,)), "id")

    def compose(g: Arrow, f: Arrow) -> Arrow:
        gf, ff = g.fn, f.fn
        return Arrow(f.dom, g.cod, f.carrier,
                     lambda x: frozenset().union(*(gf(y) for y in ff(x))))

    return FiniteCategory(name, tuple(objects), hom, identity, compose)


def pointed_category(objects, name: str = "Pointed") -> FiniteCategory:
    """Objects ``(S, p)``; arrows are functions preserving the point."""

    def hom(A, B):
        (X, p), (Y, q) = A, B
        xs = [x for x in ordered(X) if x != p]
        for values in product(ordered(Y), repeat=len(xs)):
            table = dict(zip(xs, values))
            table[p] = q
            yield Arrow.from_dict(A, B, X, table)

    def identity(A):
        return Arrow(A, A, A[0], lambda x: x, "id")

    return FiniteCategory(name, tuple(objects), hom, identity, lambda g, f: then(f, g))


# powerset ------------------------------------------------------------------------

def build_multimap_instance(max_size: int = 2) -> AdjunctionData:
    """Functions against multimaps; ``F`` the graph, ``U`` the image map."""
    _check_size(max_size, 1)
    objs = base_sets(max_size)
    C, D = set_category(objs, "Set"), rel_category(objs, "Rel")

    def F_arr(f: Arrow) -> Arrow:
        fn = f.fn
        return Arrow(f.dom, f.cod, f.carrier, lambda x: frozenset((fn(x),)), "graph")

    def U_arr(R: Arrow) -> Arrow:
        rn = R.fn
        PX = FinSet.powerset(R.dom)
        return Arrow(PX, FinSet.powerset(R.cod), PX,
                     lambda A: frozenset().union(*(rn(a) for a in A)), "image")

    F = FunctorData("F", C, D, lambda X: X, F_arr)
    U = FunctorData("U", D, C, FinSet.powerset, U_arr)

    def unit(X):
        return Arrow(X, FinSet.powerset(X), X, lambda x: frozenset((x,)), "singleton")

    def counit(Y):
        PY = FinSet.powerset(Y)
        return Arrow(PY, Y, PY, lambda A: A, "member")

    return AdjunctionData("powerset", C, D, F, U, unit, counit)


# identity ------------------------------------------------------------------------

def build_identity_instance(max_size: int = 2) -> AdjunctionData:
    _check_size(max_size)
    C = set_category(base_sets(max_size))
    Id = FunctorData("Id", C, C, lambda X: X, lambda f: f)
    return AdjunctionData("identity", C, C, Id, FunctorData("Id", C, C, lambda X: X, lambda f: f),
                          C.identity, C.identity)


# option --------------------------------------------------------------------------

def _fresh(X: FinSet) -> int:
    return max(X.elements, default=-1) + 1


@lru_cache(maxsize=None)
def _plus_point(X: FinSet):
    n = _fresh(X)
    return (FinSet(X.elements | {n}), n)


def _option_adjunction(name: str, max_size: int, d_objects) -> AdjunctionData:
    objs = base_sets(max_size)
    C, D = set_category(objs), pointed_category(d_objects)

    def F_arr(f: Arrow) -> Arrow:
        (SX, nX), (SY, nY) = _plus_point(f.dom), _plus_point(f.cod)
        fn = f.fn
        return Arrow((SX, nX), (SY, nY), SX, lambda x: nY if x == nX else fn(x), "F")

    def U_arr(g: Arrow) -> Arrow:
        return Arrow(g.dom[0], g.cod[0], g.carrier, g.fn, "U")

    F = FunctorData("F", C, D, _plus_point, F_arr)
    U = FunctorData("U", D, C, lambda A: A[0], U_arr)

    def unit(X):
        return Arrow(X, _plus_point(X)[0], X, lambda x: x, "inl")

    def counit(A):
        Y, p = A
        FUA = _plus_point(Y)
        n = FUA[1]
        return Arrow(FUA, A, FUA[0], lambda y: p if y == n else y, "collapse")

    return AdjunctionData(name, C, D, F, U, unit, counit)


def build_option_instance(max_size: int = 2) -> AdjunctionData:
    """``D`` = the free pointed sets ``(X + 1, new)`` only."""
    _check_size(max_size)
    return _option_adjunction("option", max_size,
                              [_plus_point(X) for X in base_sets(max_size)])


def build_option_neg_instance(max_size: int = 2) -> AdjunctionData:
    """``D`` = every pointed ``({0..k-1}, p)`` with ``1 <= k <= max_size + 1``."""
    _check_size(max_size, 1)
    d_objects = [(FinSet.range(k), p) for k in range(1, max_size + 2) for p in range(k)]
    return _option_adjunction("option-neg", max_size, d_objects)


INSTANCES: dict[str, Callable[[int], AdjunctionData]] = {
    "powerset": build_multimap_instance,
    "identity": build_identity_instance,
    "option": build_option_instance,
    "option-neg": build_option_neg_instance,
}


def build_instance(name: str, max_size: int = 2) -> AdjunctionData:
    if name not in INSTANCES:
        raise KleisliError(f"unknown instance {name!r}", {"known": sorted(INSTANCES)})
    return INSTANCES[name](max_size)

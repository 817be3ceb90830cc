"""Enumerable categories whose morphisms are functions between finite carriers.

Objects are opaque hashable values.  A morphism is an :class:`Arrow`: a
domain, a codomain, the finite carrier of the domain and a Python callable.
Arrows compare structurally by evaluating on every carrier element, so
composites stay lazy and only the domain that is actually compared is ever
enumerated.

A :class:`FiniteCategory` enumerates a finite set of *base* objects and the
hom-sets between them.  Composition and identities are total on every object
the category can produce (e.g. ``P(P(X))``), which is what the monad and
naturality checks need; exhaustive law checks range over the base
enumeration.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations, product
from typing import Any, Callable, Hashable, Iterable, Iterator

from ..verdict import Verdict


def canon_key(x: Any):
    """Total order on the nested ints / strings / tuples / frozensets we use."""
    if isinstance(x, bool):
        return (0, int(x))
    if isinstance(x, int):
        return (0, x)
    if isinstance(x, str):
        return (1, x)
    if isinstance(x, frozenset):
        return (2, len(x), tuple(sorted(canon_key(y) for y in x)))
    if isinstance(x, tuple):
        return (3, len(x), tuple(canon_key(y) for y in x))
    return (4, repr(x))


class FinSet:
    """A finite set, either listed or the powerset of another FinSet.

    Powersets are materialized only when iterated, so ``len(P(P(P(X))))`` is
    available even when the carrier itself is far too large to build.
    """

    __slots__ = ("_elems", "base")

    def __init__(self, elements: Iterable | None = None, base: "FinSet | None" = None):
        if (elements is None) == (base is None):
            raise ValueError("give either elements or a base set")
        self._elems = None if elements is None else frozenset(elements)
        self.base = base

    @classmethod
    def range(cls, k: int) -> "FinSet":
        return cls(range(k))

    @classmethod
    def powerset(cls, X: "FinSet") -> "FinSet":
        return cls(base=X)

    @property
    def size(self) -> int:
        """Cardinality as an exact integer (``len`` overflows past ``sys.maxsize``)."""
        if self._elems is not None:
            return len(self._elems)
        return 2 ** self.base.size

    def __len__(self) -> int:
        return self.size

    @property
    def elements(self) -> frozenset:
        if self._elems is None:
            items = ordered(self.base)
            self._elems = frozenset(
                frozenset(c) for r in range(len(items) + 1) for c in combinations(items, r))
        return self._elems

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, x) -> bool:
        if self._elems is None and isinstance(x, frozenset):
            return all(y in self.base for y in x)
        return x in self.elements

    def __eq__(self, other) -> bool:
        if not isinstance(other, FinSet):
            return NotImplemented
        if self is other:
            return True
        if self.base is not None and other.base is not None:
            return self.base == other.base
        if self.size != other.size:
            return False
        return self.elements == other.elements

    def __hash__(self):
        return hash(("FinSet", self.size))

    def __repr__(self):
        return _show(self)


def carrier_size(carrier) -> int:
    return carrier.size if isinstance(carrier, FinSet) else len(carrier)


@lru_cache(maxsize=None)
def ordered(carrier) -> tuple:
    return tuple(sorted(carrier, key=canon_key))


class Arrow:
    """A function ``carrier(dom) -> carrier(cod)`` tagged with its objects."""

    __slots__ = ("dom", "cod", "carrier", "fn", "label", "_table")

    def __init__(self, dom: Hashable, cod: Hashable, carrier,
                 fn: Callable[[Any], Any], label: str | None = None):
        self.dom = dom
        self.cod = cod
        self.carrier = carrier
        self.fn = fn
        self.label = label
        self._table = None

    @classmethod
    def from_dict(cls, dom, cod, carrier, table: dict, label=None) -> "Arrow":
        return cls(dom, cod, carrier, table.__getitem__, label)

    def __call__(self, x):
        return self.fn(x)

    def frozen(self, limit: int = 4096) -> "Arrow":
        """Same arrow backed by a lookup table (lazy ones above ``limit`` stay lazy)."""
        if carrier_size(self.carrier) > limit:
            return self
        fn = self.fn
        return Arrow.from_dict(self.dom, self.cod, self.carrier,
                               {x: fn(x) for x in self.carrier}, self.label)

    @property
    def table(self) -> tuple:
        if self._table is None:
            self._table = tuple(self.fn(x) for x in ordered(self.carrier))
        return self._table

    def __eq__(self, other) -> bool:
        if not isinstance(other, Arrow):
            return NotImplemented
        if self is other:
            return True
        if not (_same(self.dom, other.dom) and _same(self.cod, other.cod)):
            return False
        if self._table is not None and other._table is not None:
            return self._table == other._table
        return all(self.fn(x) == other.fn(x) for x in self.carrier)

    def __hash__(self):
        return hash((self.dom, self.cod, self.table))

    def __repr__(self):
        name = self.label or "Arrow"
        if carrier_size(self.carrier) <= 8:
            pairs = ", ".join(f"{_show(x)}->{_show(self.fn(x))}" for x in ordered(self.carrier))
            return f"{name}[{_show(self.dom)} -> {_show(self.cod)}]{{{pairs}}}"
        return f"{name}[{_show(self.dom)} -> {_show(self.cod)}]"

    def to_json(self):
        return {"dom": _show(self.dom), "cod": _show(self.cod),
                "table": [[_show(x), _show(self.fn(x))] for x in ordered(self.carrier)]}


def _same(a, b) -> bool:
    return a is b or a == b


def _show(x) -> str:
    if isinstance(x, FinSet):
        if x.base is not None and x.size > 16:
            return f"P({_show(x.base)})"
        x = x.elements
    if isinstance(x, frozenset):
        return "{" + ",".join(_show(y) for y in ordered(x)) + "}"
    if isinstance(x, tuple):
        return "(" + ",".join(_show(y) for y in x) + ")"
    return str(x)


def then(f: Arrow, g: Arrow, label: str | None = None) -> Arrow:
    """Plain function composition ``g . f`` (no codomain bookkeeping)."""
    gf, ff = g.fn, f.fn
    return Arrow(f.dom, g.cod, f.carrier, lambda x: gf(ff(x)), label)


@dataclass(frozen=True)
class FiniteCategory:
    """A category with a finite enumeration of base objects and hom-sets."""

    name: str
    objects: tuple
    hom: Callable[[Any, Any], Iterable[Arrow]]
    identity: Callable[[Any], Arrow]
    compose: Callable[[Arrow, Arrow], Arrow]  # compose(g, f) = g after f

    def homs(self, X, Y) -> list[Arrow]:
        return list(self.hom(X, Y))

    def arrows(self) -> Iterator[Arrow]:
        for X in self.objects:
            for Y in self.objects:
                yield from self.hom(X, Y)


@dataclass(frozen=True)
class FunctorData:
    name: str
    source: FiniteCategory
    target: FiniteCategory
    on_objects: Callable[[Any], Any]
    on_arrows: Callable[[Arrow], Arrow]

    def __call__(self, x):
        if isinstance(x, Arrow):
            return self.on_arrows(x)
        return self.on_objects(x)


def compose_functors(G: FunctorData, F: FunctorData, name: str | None = None) -> FunctorData:
    """``G . F``."""
    return FunctorData(name or f"{G.name}{F.name}", F.source, G.target,
                       lambda X: G.on_objects(F.on_objects(X)),
                       lambda f: G.on_arrows(F.on_arrows(f)))


def identity_functor(C: FiniteCategory) -> FunctorData:
    return FunctorData("Id", C, C, lambda X: X, lambda f: f)


# law checks ------------------------------------------------------------------

def _fail(law: str, **witness) -> Verdict:
    return Verdict(False, 0.0, {"law": law, **{k: _jsonish(v) for k, v in witness.items()}})


def _jsonish(v):
    if isinstance(v, Arrow):
        return v.to_json()
    if isinstance(v, (frozenset, tuple)):
        return _show(v)
    return v


def check_category_laws(C: FiniteCategory, budget: int = 250_000) -> Verdict:
    """Identity and associativity over every enumerated composable triple.

    Object quadruples with more than ``budget`` triples are skipped and
    listed under ``details["skipped"]`` rather than counted as checked.
    """
    homs = {(X, Y): C.homs(X, Y) for X in C.objects for Y in C.objects}
    skipped = []
    checked = 0
    for (X, Y), fs in homs.items():
        idX, idY = C.identity(X), C.identity(Y)
        for f in fs:
            checked += 1
            if C.compose(f, idX) != f or C.compose(idY, f) != f:
                return _fail("identity", arrow=f)
    for X, Y, Z, W in product(C.objects, repeat=4):
        if len(homs[X, Y]) * len(homs[Y, Z]) * len(homs[Z, W]) > budget:
            skipped.append(_show((X, Y, Z, W)))
            continue
        hgs = {(g, h): C.compose(h, g).frozen() for g in homs[Y, Z] for h in homs[Z, W]}
        for f in homs[X, Y]:
            for g in homs[Y, Z]:
                gf = C.compose(g, f).frozen()
                for h in homs[Z, W]:
                    checked += 1
                    if C.compose(h, gf) != C.compose(hgs[g, h], f):
                        return _fail("associativity", f=f, g=g, h=h)
    return Verdict(True, 0.0, details={"checks": checked, "skipped": skipped})


def check_functor_laws(F: FunctorData) -> Verdict:
    """Identities and binary composites are preserved on the enumeration."""
    S, T = F.source, F.target
    homs = {(X, Y): S.homs(X, Y) for X in S.objects for Y in S.objects}
    checked = 0
    for X in S.objects:
        checked += 1
        if F.on_arrows(S.identity(X)) != T.identity(F.on_objects(X)):
            return _fail("preserves identity", object=X)
    for X, Y, Z in product(S.objects, repeat=3):
        for f in homs[X, Y]:
            Ff = F.on_arrows(f)
            if not (_same(Ff.dom, F.on_objects(X)) and _same(Ff.cod, F.on_objects(Y))):
                return _fail("typing", arrow=f)
            for g in homs[Y, Z]:
                checked += 1
                if F.on_arrows(S.compose(g, f)) != T.compose(F.on_arrows(g), Ff):
                    return _fail("preserves composition", f=f, g=g)
    return Verdict(True, 0.0, details={"checks": checked})


def functors_agree(F: FunctorData, G: FunctorData) -> Verdict:
    """``F = G`` on every enumerated object and arrow of the common source."""
    S = F.source
    checked = 0
    for X in S.objects:
        checked += 1
        if not _same(F.on_objects(X), G.on_objects(X)):
            return _fail("objects differ", object=X)
    for f in S.arrows():
        checked += 1
        if F.on_arrows(f) != G.on_arrows(f):
            return _fail("arrows differ", arrow=f, left=F.on_arrows(f), right=G.on_arrows(f))
    return Verdict(True, 0.0, details={"checks": checked})


def check_bijective_on_objects(F: FunctorData) -> Verdict:
    """Object map injective and onto the target enumeration."""
    images = {}
    for X in F.source.objects:
        Y = F.on_objects(X)
        if Y in images:
            return Verdict(False, 0.0, {"reason": "not injective", "objects": [
                _show(images[Y]), _show(X)], "image": _show(Y)})
        images[Y] = X
    missed = [Y for Y in F.target.objects if Y not in images]
    outside = [Y for Y in images if Y not in set(F.target.objects)]
    if missed or outside:
        return Verdict(False, 0.0, {"reason": "not surjective" if missed else "image outside target",
                                    "missed": [_show(Y) for Y in missed],
                                    "outside": [_show(Y) for Y in outside]},
                       details={"source_objects": len(F.source.objects),
                                "target_objects": len(F.target.objects)})
    return Verdict(True, 0.0, details={"objects": len(images)})


def discrete_category(name: str, objects) -> FiniteCategory:
    """Only identity arrows; handy for object-level tests."""
    objects = tuple(objects)

    def ident(X):
        return Arrow(X, X, frozenset([X]), lambda x: x, "id")

    return FiniteCategory(name, objects,
                          lambda X, Y: [ident(X)] if X == Y else [],
                          ident, lambda g, f: then(f, g))


def relabel_functor(C: FiniteCategory, D: FiniteCategory, mapping: dict) -> FunctorData:
    """Functor between discrete categories induced by an object mapping."""

    def on_arrows(f: Arrow) -> Arrow:
        return D.identity(mapping[f.dom])

    return FunctorData("relabel", C, D, mapping.__getitem__, on_arrows)

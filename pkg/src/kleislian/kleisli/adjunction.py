"""Adjunctions, their monads, Kleisli categories and the comparison functor.

Given ``F -| U`` with unit ``eta`` and counit ``eps`` the monad is ``T = UF``
with ``mu_C = U eps_{FC}``.  The Kleisli category has the objects of ``C``
and arrows ``C1 -> T C2``; an arrow of ``Kl`` is stored as the underlying
``C``-arrow retagged with its Kleisli codomain, so the same callable serves
both readings.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from functools import lru_cache
from itertools import product
from typing import Any, Callable

from ..verdict import Verdict
from .category import (
    Arrow,
    FiniteCategory,
    FunctorData,
    _fail,
    carrier_size,
    _same,
    _show,
    check_bijective_on_objects,
    check_category_laws,
    check_functor_laws,
    compose_functors,
    functors_agree,
    identity_functor,
)


class KleisliError(ValueError):
    """Raised when a construction's precondition fails; carries a witness."""

    def __init__(self, message: str, witness: dict | None = None):
        super().__init__(message)
        self.witness = witness or {}


@dataclass(frozen=True)
class AdjunctionData:
    name: str
    C: FiniteCategory
    D: FiniteCategory
    F: FunctorData  # C -> D
    U: FunctorData  # D -> C
    unit: Callable[[Any], Arrow]  # X -> UFX in C
    counit: Callable[[Any], Arrow]  # FUY -> Y in D


@dataclass(frozen=True)
class MonadData:
    C: FiniteCategory
    T: FunctorData
    unit: Callable[[Any], Arrow]
    mult: Callable[[Any], Arrow]  # TTX -> TX


def retag(f: Arrow, dom, cod, label: str | None = None) -> Arrow:
    return Arrow(dom, cod, f.carrier, f.fn, label or f.label)


# adjunction laws ---------------------------------------------------------------

def check_unit_naturality(adj: AdjunctionData) -> Verdict:
    C, T = adj.C, compose_functors(adj.U, adj.F)
    n = 0
    for f in C.arrows():
        n += 1
        if C.compose(T(f), adj.unit(f.dom)) != C.compose(adj.unit(f.cod), f):
            return _fail("eta naturality", arrow=f)
    return Verdict(True, details={"checks": n})


def check_counit_naturality(adj: AdjunctionData) -> Verdict:
    D, S = adj.D, compose_functors(adj.F, adj.U)
    n = 0
    for g in D.arrows():
        n += 1
        if D.compose(g, adj.counit(g.dom)) != D.compose(adj.counit(g.cod), S(g)):
            return _fail("eps naturality", arrow=g)
    return Verdict(True, details={"checks": n})


def check_triangle_F(adj: AdjunctionData) -> Verdict:
    """``eps_{FX} . F(eta_X) = id_{FX}``."""
    for X in adj.C.objects:
        FX = adj.F(X)
        if adj.D.compose(adj.counit(FX), adj.F(adj.unit(X))) != adj.D.identity(FX):
            return _fail("triangle eps_F . F eta", object=X)
    return Verdict(True, details={"checks": len(adj.C.objects)})


def check_triangle_U(adj: AdjunctionData) -> Verdict:
    """``U(eps_Y) . eta_{UY} = id_{UY}``."""
    for Y in adj.D.objects:
        UY = adj.U(Y)
        if adj.C.compose(adj.U(adj.counit(Y)), adj.unit(UY)) != adj.C.identity(UY):
            return _fail("triangle U eps . eta_U", object=Y)
    return Verdict(True, details={"checks": len(adj.D.objects)})


def check_adjunction(adj: AdjunctionData) -> dict[str, Verdict]:
    return {
        "F functor": check_functor_laws(adj.F),
        "U functor": check_functor_laws(adj.U),
        "unit naturality": check_unit_naturality(adj),
        "counit naturality": check_counit_naturality(adj),
        "triangle (eps F)(F eta) = id": check_triangle_F(adj),
        "triangle (U eps)(eta U) = id": check_triangle_U(adj),
    }


# monad -------------------------------------------------------------------------

def monad_from_adjunction(adj: AdjunctionData) -> MonadData:
    T = compose_functors(adj.U, adj.F, "T")

    @lru_cache(maxsize=None)
    def mult(X):
        return adj.U(adj.counit(adj.F(X)))

    return MonadData(adj.C, T, adj.unit, mult)


def check_monad_laws(m: MonadData, max_carrier: int = 70_000) -> dict[str, Verdict]:
    """Associativity and both unit laws per base object.

    An object whose ``TTTX`` carrier exceeds ``max_carrier`` is skipped for
    associativity and listed in the verdict details.
    """
    C, T, eta, mu = m.C, m.T, m.unit, m.mult
    skipped, n = [], 0
    for X in C.objects:
        TX, TTX = T(X), T(T(X))
        if carrier_size(T(TTX)) > max_carrier:
            skipped.append(_show(X))
            continue
        n += 1
        if C.compose(mu(X), T(mu(X))) != C.compose(mu(X), mu(TX)):
            return {"monad associativity": _fail("mu . T mu = mu . mu T", object=X)}
    assoc = Verdict(True, details={"checks": n, "skipped": skipped})
    for X in C.objects:
        TX = T(X)
        ident = C.identity(TX)
        if C.compose(mu(X), T(eta(X))) != ident:
            return {"monad associativity": assoc,
                    "monad unit laws": _fail("mu . T eta = id", object=X)}
        if C.compose(mu(X), eta(TX)) != ident:
            return {"monad associativity": assoc,
                    "monad unit laws": _fail("mu . eta T = id", object=X)}
    return {"monad associativity": assoc,
            "monad unit laws": Verdict(True, details={"checks": 2 * len(C.objects)})}


# Kleisli category --------------------------------------------------------------

def kleisli(m: MonadData, name: str = "Kl") -> FiniteCategory:
    C, T, eta, mu = m.C, m.T, m.unit, m.mult

    def hom(X, Y):
        for f in C.hom(X, T(Y)):
            yield retag(f, X, Y)

    def identity(X):
        return retag(eta(X), X, X, "eta")

    def compose(g: Arrow, f: Arrow) -> Arrow:
        # g (.) f = mu_{C3} . T g . f, with g read as a C-arrow Y -> T Z
        Z = g.cod
        g_u = retag(g, g.dom, T(Z))
        h = C.compose(mu(Z), C.compose(T(g_u), retag(f, f.dom, T(g.dom))))
        return retag(h, f.dom, Z)

    return FiniteCategory(name, C.objects, hom, identity, compose)


def underlying(m: MonadData, f: Arrow) -> Arrow:
    """A Kleisli arrow ``X -> Y`` read as the ``C``-arrow ``X -> TY``."""
    return retag(f, f.dom, m.T(f.cod))


@dataclass(frozen=True)
class KleisliData:
    adj: AdjunctionData
    monad: MonadData
    Kl: FiniteCategory
    V: FunctorData
    G: FunctorData
    L: FunctorData


def functor_V(adj: AdjunctionData, m: MonadData, Kl: FiniteCategory) -> FunctorData:
    """``V f = eta_{C2} . f``."""
    return FunctorData("V", adj.C, Kl, lambda X: X,
                       lambda f: retag(adj.C.compose(m.unit(f.cod), f), f.dom, f.cod))


def functor_G(adj: AdjunctionData, m: MonadData, Kl: FiniteCategory) -> FunctorData:
    """``G f = mu_{C2} . UF f``."""
    return FunctorData("G", Kl, adj.C, m.T.on_objects,
                       lambda f: adj.C.compose(m.mult(f.cod), m.T(underlying(m, f))))


def comparison_L(adj: AdjunctionData, m: MonadData, Kl: FiniteCategory) -> FunctorData:
    """``LC = FC`` and ``L f = eps_{FC2} . F f``."""
    return FunctorData("L", Kl, adj.D, adj.F.on_objects,
                       lambda f: adj.D.compose(adj.counit(adj.F(f.cod)), adj.F(underlying(m, f))))


def build_kleisli(adj: AdjunctionData) -> KleisliData:
    m = monad_from_adjunction(adj)
    Kl = kleisli(m, f"Kl({adj.name})")
    return KleisliData(adj, m, Kl, functor_V(adj, m, Kl), functor_G(adj, m, Kl),
                       comparison_L(adj, m, Kl))


def object_inverse(F: FunctorData) -> dict:
    """``F^{-1}`` on objects, or :class:`KleisliError` with the witness."""
    v = check_bijective_on_objects(F)
    if not v:
        raise KleisliError(f"{F.name} is not bijective on objects", v.witness)
    return {F.on_objects(X): X for X in F.source.objects}


def inverse_K(kd: KleisliData) -> FunctorData:
    """``K D = F^{-1} D`` and ``K g = U g . eta_{K D1}``."""
    adj, m = kd.adj, kd.monad
    inv = object_inverse(adj.F)

    def K_obj(Y):
        for k, X in inv.items():
            if _same(k, Y):
                return X
        raise KleisliError("object outside the enumeration", {"object": _show(Y)})

    def K_arr(g: Arrow) -> Arrow:
        X1, X2 = K_obj(g.dom), K_obj(g.cod)
        return retag(adj.C.compose(adj.U(g), m.unit(X1)), X1, X2)

    return FunctorData("K", adj.D, kd.Kl, K_obj, K_arr)


def check_hom_bijection(L: FunctorData) -> Verdict:
    """Is ``L`` a bijection on every hom-set of its source enumeration?"""
    S, T = L.source, L.target
    n = 0
    for X, Y in product(S.objects, repeat=2):
        images = {L(f) for f in S.hom(X, Y)}
        target = set(T.hom(L(X), L(Y)))
        n += len(target)
        if len(images) != len(S.homs(X, Y)) or images != target:
            return _fail("hom-set bijection", source=(X, Y),
                         source_size=len(S.homs(X, Y)), image_size=len(images),
                         target_size=len(target))
    return Verdict(True, details={"arrows": n})


def check_L_iso(kd: KleisliData) -> Verdict:
    """``L`` is an isomorphism: bijective on objects and on every hom-set."""
    obj = check_bijective_on_objects(kd.L)
    if not obj:
        return Verdict(False, witness={"reason": "not bijective on objects", "objects": obj.witness})
    return check_hom_bijection(kd.L)


def check_kleisli_composition_paths(kd: KleisliData) -> Verdict:
    """``g (.) f`` equals ``U(gbar) . f`` with ``gbar = eps_{FZ} . F g`` the adjunct."""
    adj, m, Kl = kd.adj, kd.monad, kd.Kl
    n = 0
    for X, Y, Z in product(Kl.objects, repeat=3):
        for f in Kl.hom(X, Y):
            f_u = underlying(m, f)
            for g in Kl.hom(Y, Z):
                n += 1
                gbar = adj.D.compose(adj.counit(adj.F(Z)), adj.F(underlying(m, g)))
                via_adjunct = adj.C.compose(adj.U(gbar), f_u)
                if underlying(m, Kl.compose(g, f)) != via_adjunct:
                    return _fail("transpose path", f=f, g=g)
    return Verdict(True, details={"checks": n})


def VG_adjunction(kd: KleisliData) -> AdjunctionData:
    """``V -| G`` with unit ``eta`` and counit ``id_{TX}`` read as ``TX -> X`` in Kl."""
    m = kd.monad

    def counit(X):
        TX = m.T(X)
        return retag(kd.adj.C.identity(TX), TX, X, "eps'")

    return AdjunctionData(f"V-|G({kd.adj.name})", kd.adj.C, kd.Kl, kd.V, kd.G, m.unit, counit)


def search_comparison_functors(kd: KleisliData, limit: int = 1_000_000) -> Verdict:
    """Brute force every ``L'`` with ``U L' = G`` and ``L' V = F``.

    Objects are forced (``L' X = L' V X = F X``).  Arrow candidates are the
    ``D``-arrows ``FX -> FY`` whose ``U``-image is ``G f``, further pinned to
    ``F h`` on arrows of the form ``V h``.  Every assignment in the product is
    tested for functoriality.  Passes iff exactly one functor survives and it
    is ``L``.
    """
    adj, Kl, V, G, L = kd.adj, kd.Kl, kd.V, kd.G, kd.L
    arrows = list(Kl.arrows())
    pinned = {}
    for h in adj.C.arrows():
        pinned.setdefault(V(h), adj.F(h))
    options, total = [], 1
    for f in arrows:
        cands = [d for d in adj.D.hom(adj.F(f.dom), adj.F(f.cod)) if adj.U(d) == G(f)]
        if f in pinned:
            cands = [d for d in cands if d == pinned[f]]
        options.append(cands)
        total *= len(cands)
        if total > limit:
            return Verdict(False, witness={"reason": "search space too large", "size": total})
    pairs = [(f, g, Kl.compose(g, f)) for f in arrows for g in arrows if _same(f.cod, g.dom)]
    found = []
    for choice in product(*options):
        table = dict(zip(arrows, choice))
        if all(table[Kl.identity(X)] == adj.D.identity(adj.F(X)) for X in Kl.objects) and all(
                table[gf] == adj.D.compose(table[g], table[f]) for f, g, gf in pairs):
            found.append(table)
    if len(found) != 1:
        return Verdict(False, witness={"functors_found": len(found)},
                       details={"candidates": total})
    agrees = all(found[0][f] == L(f) for f in arrows)
    return Verdict(agrees, witness=None if agrees else {"reason": "unique functor is not L"},
                   details={"candidates": total, "arrows": len(arrows)})


# the whole suite -----------------------------------------------------------------

def run_law_suite(adj: AdjunctionData, uniqueness: bool | None = None) -> dict:
    """Every law for one instance.

    Returns ``{"verdicts", "facts", "timings", "skipped", "kleisli"}``.  The
    brute-force uniqueness search for ``L`` runs by default only when ``C``
    has at most three base objects; otherwise it is listed under ``skipped``.  Verdicts are
    things that must hold for any adjunction.  Facts are instance-dependent
    (``F`` bijective on objects, ``L`` iso, ``K`` defined); the biconditional
    between the first two is a verdict, as are the ``K`` round trips when
    ``K`` exists.
    """
    kd = build_kleisli(adj)
    verdicts: dict[str, Verdict] = {}
    facts: dict[str, Verdict] = {}
    timings: dict[str, float] = {}

    def run(name, fn, into=verdicts):
        t0 = time.perf_counter()
        into[name] = fn()
        timings[name] = time.perf_counter() - t0

    run(f"{adj.C.name} category laws", lambda: check_category_laws(adj.C))
    run(f"{adj.D.name} category laws", lambda: check_category_laws(adj.D))
    run("F functor", lambda: check_functor_laws(adj.F))
    run("U functor", lambda: check_functor_laws(adj.U))
    run("unit naturality", lambda: check_unit_naturality(adj))
    run("counit naturality", lambda: check_counit_naturality(adj))
    run("triangle (eps F)(F eta) = id", lambda: check_triangle_F(adj))
    run("triangle (U eps)(eta U) = id", lambda: check_triangle_U(adj))
    monad = check_monad_laws(kd.monad)
    run("monad associativity", lambda: monad["monad associativity"])
    run("monad unit laws", lambda: monad.get("monad unit laws", Verdict(False, witness="not reached")))
    run("Kleisli category laws", lambda: check_category_laws(kd.Kl))
    run("V functor", lambda: check_functor_laws(kd.V))
    run("G functor", lambda: check_functor_laws(kd.G))
    run("L functor", lambda: check_functor_laws(kd.L))
    run("G V = U F", lambda: functors_agree(compose_functors(kd.G, kd.V), kd.monad.T))
    vg = VG_adjunction(kd)
    run("V -| G unit naturality", lambda: check_unit_naturality(vg))
    run("V -| G counit naturality", lambda: check_counit_naturality(vg))
    run("V -| G triangles", lambda: _both(check_triangle_F(vg), check_triangle_U(vg)))
    run("U L = G", lambda: functors_agree(compose_functors(adj.U, kd.L), kd.G))
    run("L V = F", lambda: functors_agree(compose_functors(kd.L, kd.V), adj.F))
    skipped = []
    if uniqueness is None:
        uniqueness = len(adj.C.objects) <= 3
    if uniqueness:
        run("L unique", lambda: search_comparison_functors(kd))
    else:
        skipped.append("L unique")
    run("Kleisli composition via adjunct", lambda: check_kleisli_composition_paths(kd))

    run("F bijective on objects", lambda: check_bijective_on_objects(adj.F), facts)
    run("L isomorphism", lambda: check_L_iso(kd), facts)
    try:
        K = inverse_K(kd)
    except KleisliError as exc:
        facts["K defined"] = Verdict(False, witness={"error": str(exc), **exc.witness})
    else:
        facts["K defined"] = Verdict(True)
        run("K L = id", lambda: functors_agree(compose_functors(K, kd.L), identity_functor(kd.Kl)))
        run("L K = id", lambda: functors_agree(compose_functors(kd.L, K), identity_functor(adj.D)))
    bij, iso = facts["F bijective on objects"], facts["L isomorphism"]
    verdicts["F bijective on objects iff L iso"] = Verdict(
        bool(bij) == bool(iso), details={"bijective": bool(bij), "iso": bool(iso)})
    return {"verdicts": verdicts, "facts": facts, "timings": timings, "skipped": skipped,
            "kleisli": kd}


def _both(a: Verdict, b: Verdict) -> Verdict:
    if not a:
        return a
    if not b:
        return b
    return Verdict(True, details={"checks": a.details.get("checks", 0) + b.details.get("checks", 0)})

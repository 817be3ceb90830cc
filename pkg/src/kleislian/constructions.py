"""Products (finite direct sums) and equalisers of C*-algebras."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .algebra import DEFAULT_TOL, Algebra, Element, Tolerance, distance, operator_norm
from .maps import (
    LinearMap,
    ShapeMismatchError,
    apply,
    check_involutive,
    check_multiplicative,
    check_unital,
    compose,
)
from .verdict import Verdict


class NotMIUError(ValueError):
    pass


@dataclass(frozen=True)
class DirectSum:
    algebra: Algebra
    summands: tuple[Algebra, ...]
    injections: tuple[LinearMap, ...]
    projections: tuple[LinearMap, ...]

    def tuple_maps(self, maps: Sequence[LinearMap]) -> LinearMap:
        """The unique ``<f_i>: C -> (+) A_i`` with ``pi_k . <f_i> = f_k``."""
        if len(maps) != len(self.summands):
            raise ShapeMismatchError("one map per summand required")
        dom = maps[0].dom
        for f, A in zip(maps, self.summands):
            if f.dom != dom or f.cod != A:
                raise ShapeMismatchError(f"{f} does not fit summand {A}")
        return LinearMap(dom, self.algebra, np.vstack([f.matrix for f in maps]), "tuple")

    def element(self, parts: Sequence[Element]) -> Element:
        blocks = []
        for p, A in zip(parts, self.summands):
            if p.parent != A:
                raise ShapeMismatchError(f"{p.parent} is not {A}")
            blocks.extend(p.blocks)
        return self.algebra.element(blocks)


def direct_sum(algebras: Sequence[Algebra]) -> DirectSum:
    """``(+)_i A_i`` with the sup norm; block lists are concatenated.

    Projections are MIU maps.  Injections preserve products and the
    involution but are unital only when there is a single summand.
    """
    algebras = tuple(algebras)
    total = Algebra(tuple(n for A in algebras for n in A.block_dims),
                    algebras[0].label if len(algebras) == 1 else None)
    injections, projections = [], []
    row = 0
    for k, A in enumerate(algebras):
        emb = np.zeros((total.dim, A.dim))
        emb[row:row + A.dim, :] = np.eye(A.dim)
        injections.append(LinearMap(A, total, emb, f"inject_{k}"))
        projections.append(LinearMap(total, A, emb.T, f"project_{k}"))
        row += A.dim
    return DirectSum(total, algebras, tuple(injections), tuple(projections))


@dataclass(frozen=True)
class SubalgebraView:
    """Subspace of ``parent`` spanned by ``basis`` (orthonormal coordinates).

    ``inclusion`` is the ``parent.dim x d`` matrix sending subalgebra
    coordinates to parent coordinates; it is an isometry for the coordinate
    inner product, and trivially for the C*-norm since the norm is inherited.
    """

    parent: Algebra
    basis: tuple[Element, ...]
    unital: bool

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def inclusion(self) -> np.ndarray:
        if not self.basis:
            return np.zeros((self.parent.dim, 0), dtype=complex)
        return np.column_stack([b.to_vector() for b in self.basis])

    def include(self, coords) -> Element:
        return self.parent.from_vector(self.inclusion @ np.asarray(coords, dtype=complex))

    def coordinates(self, a: Element) -> np.ndarray:
        return self.inclusion.conj().T @ a.to_vector()

    def residual(self, a: Element) -> float:
        """Norm of the part of ``a`` outside the span."""
        return distance(a, self.include(self.coordinates(a)))

    def contains(self, a: Element, tol: Tolerance = DEFAULT_TOL) -> bool:
        return self.residual(a) <= tol.bound(operator_norm(a))

    def closure_check(self, tol: float = 1e-8) -> Verdict:
        """Sums and scalings hold by construction; check ``*`` and products."""
        worst, where = 0.0, None
        for p, x in enumerate(self.basis):
            r = self.residual(x.star())
            if r > worst:
                worst, where = r, ("star", p)
            for q, y in enumerate(self.basis):
                r = self.residual(x @ y)
                if r > worst:
                    worst, where = r, ("product", p, q)
        ok = worst < tol
        if self.unital:
            r = self.residual(self.parent.unit())
            if r >= tol:
                ok, where, worst = False, ("unit",), max(worst, r)
        return Verdict(ok, tol - worst, None if ok else {"where": where, "residual": worst})

    def factor(self, d: LinearMap) -> np.ndarray:
        """Coordinates of ``h`` with ``e . h = d`` for ``d`` landing in the span."""
        if d.cod != self.parent:
            raise ShapeMismatchError(f"{d} does not land in {self.parent}")
        return self.inclusion.conj().T @ d.matrix


def _require_miu(f: LinearMap, tol: Tolerance, which: str):
    for check in (check_unital, check_involutive, check_multiplicative):
        v = check(f, tol)
        if not v:
            raise NotMIUError(f"{which} fails {check.__name__[6:]}: {v.witness}")


def equaliser(f: LinearMap, g: LinearMap, tol: Tolerance = DEFAULT_TOL) -> SubalgebraView:
    """``E = {a : f(a) = g(a)}`` for MIU maps ``f, g``.

    PU maps are refused: for them ``E`` need not be a subalgebra.
    """
    if f.dom != g.dom or f.cod != g.cod:
        raise ShapeMismatchError("equaliser needs parallel maps")
    _require_miu(f, tol, "f")
    _require_miu(g, tol, "g")
    diff = f.matrix - g.matrix
    A = f.dom
    if diff.size == 0:
        kernel = np.eye(A.dim, dtype=complex)
    else:
        _, s, vh = np.linalg.svd(diff)
        cutoff = tol.bound(float(s[0]) if s.size else 0.0)
        rank = int(np.sum(s > cutoff))
        kernel = vh[rank:].conj().T
    basis = tuple(A.from_vector(kernel[:, j]) for j in range(kernel.shape[1]))
    view = SubalgebraView(A, basis, unital=True)
    closure = view.closure_check()
    if not closure:
        raise ArithmeticError(f"equaliser span failed closure: {closure.witness}")
    return view


def check_equaliser_factorization(view: SubalgebraView, f: LinearMap, g: LinearMap,
                                  d: LinearMap, tol: float = 1e-10) -> Verdict:
    """For ``d`` with ``f.d = g.d``, confirm ``d`` lands in ``E`` and ``e.h = d``."""
    fd, gd = compose(f, d), compose(g, d)
    gap = float(np.abs(fd.matrix - gd.matrix).max()) if fd.matrix.size else 0.0
    if gap > tol:
        return Verdict(False, -gap, {"reason": "f.d != g.d", "residual": gap})
    h = view.factor(d)
    back = view.inclusion @ h
    err = float(np.abs(back - d.matrix).max()) if back.size else 0.0
    return Verdict(err <= tol, tol - err, None if err <= tol else {"residual": err},
                   details={"factor_shape": list(h.shape)})

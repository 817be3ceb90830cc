"""Linear maps between finite-dimensional C*-algebras and their classification.

A :class:`LinearMap` is stored as the matrix whose ``p``-th column holds the
coordinates of the image of the ``p``-th matrix unit of the domain.  The
classification lattice is built from six flags:

    unital, subunital, involutive, multiplicative, positive, completely_positive

and the labels MIU, CPU, PU and PsU are conjunctions of those flags.

Complete positivity is decided with one Choi matrix per domain block.
Positivity in ``M_m(M_{n_1} + ... + M_{n_K})`` splits blockwise, so ``f`` is
CP exactly when every restriction ``f . iota_k`` is CP, and for a domain
``M_n`` the ``n``-th amplification (equivalently the Choi matrix
``sum_ij E_ij (x) f(E_ij)``) already decides complete positivity.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Sequence

import numpy as np
from scipy.linalg import block_diag

from .algebra import (
    DEFAULT_TOL,
    Algebra,
    Element,
    Tolerance,
    distance,
    is_positive_element,
    jordan_decompose,
    leq,
    operator_norm,
)
from .verdict import Verdict


class ShapeMismatchError(ValueError):
    pass


class NotPUError(ValueError):
    """A checker that presupposes a PU map (or a state) got something else."""


class LinearMap:
    """Linear map ``dom -> cod`` given by images of the matrix-unit basis."""

    def __init__(self, dom: Algebra, cod: Algebra, matrix, name: str | None = None):
        matrix = np.array(matrix, dtype=complex)
        if matrix.shape != (cod.dim, dom.dim):
            raise ShapeMismatchError(
                f"map {dom} -> {cod} needs a {cod.dim}x{dom.dim} matrix, got {matrix.shape}")
        matrix.flags.writeable = False
        self.dom = dom
        self.cod = cod
        self.matrix = matrix
        self.name = name

    def __repr__(self):
        return f"LinearMap({self.name or '?'}: {self.dom} -> {self.cod})"

    def __call__(self, a: Element) -> Element:
        return apply(self, a)

    @property
    def basis_images(self) -> list[Element]:
        return [self.cod.from_vector(self.matrix[:, p]) for p in range(self.dom.dim)]

    @cached_property
    def classification(self) -> "MapClassification":
        return classify(self)

    def __add__(self, other: "LinearMap") -> "LinearMap":
        _same_shape(self, other)
        return LinearMap(self.dom, self.cod, self.matrix + other.matrix)

    def __sub__(self, other: "LinearMap") -> "LinearMap":
        _same_shape(self, other)
        return LinearMap(self.dom, self.cod, self.matrix - other.matrix)

    def __mul__(self, scalar) -> "LinearMap":
        return LinearMap(self.dom, self.cod, complex(scalar) * self.matrix)

    __rmul__ = __mul__


def _same_shape(f: LinearMap, g: LinearMap):
    if f.dom != g.dom or f.cod != g.cod:
        raise ShapeMismatchError(f"{f.dom}->{f.cod} vs {g.dom}->{g.cod}")


def make_map(dom: Algebra, cod: Algebra, basis_images: Sequence[Element], name=None) -> LinearMap:
    if len(basis_images) != dom.dim:
        raise ShapeMismatchError(f"need {dom.dim} basis images, got {len(basis_images)}")
    cols = []
    for e in basis_images:
        if e.parent != cod:
            raise ShapeMismatchError(f"basis image lives in {e.parent}, expected {cod}")
        cols.append(e.to_vector())
    matrix = np.column_stack(cols) if cols else np.zeros((cod.dim, 0), dtype=complex)
    return LinearMap(dom, cod, matrix, name)


def map_from_function(dom: Algebra, cod: Algebra, fn, name=None) -> LinearMap:
    """Tabulate a Python callable on the matrix units (assumed linear)."""
    return make_map(dom, cod, [fn(e) for e in dom.basis()], name)


def apply(f: LinearMap, a: Element) -> Element:
    if a.parent != f.dom:
        raise ShapeMismatchError(f"{f} applied to an element of {a.parent}")
    return f.cod.from_vector(f.matrix @ a.to_vector())


def compose(g: LinearMap, f: LinearMap) -> LinearMap:
    """``g . f``."""
    if f.cod != g.dom:
        raise ShapeMismatchError(f"cannot compose {g} after {f}")
    name = f"{g.name}.{f.name}" if g.name and f.name else None
    return LinearMap(f.dom, g.cod, g.matrix @ f.matrix, name)


def identity_map(A: Algebra) -> LinearMap:
    return LinearMap(A, A, np.eye(A.dim), "id")


# classification flags -------------------------------------------------------

def check_unital(f: LinearMap, tol: Tolerance = DEFAULT_TOL) -> Verdict:
    r = distance(apply(f, f.dom.unit()), f.cod.unit())
    ok = r <= tol.abs
    return Verdict(ok, tol.abs - r, None if ok else {"f(1)": apply(f, f.dom.unit()), "residual": r})


def check_subunital(f: LinearMap, tol: Tolerance = DEFAULT_TOL) -> Verdict:
    return leq(apply(f, f.dom.unit()), f.cod.unit(), tol)


def check_involutive(f: LinearMap, tol: Tolerance = DEFAULT_TOL) -> Verdict:
    """``f(e*) = f(e)*`` on every matrix unit (enough by conjugate linearity)."""
    worst, where = 0.0, None
    for p, e in enumerate(f.dom.basis()):
        r = distance(apply(f, e.star()), apply(f, e).star())
        if r > worst:
            worst, where = r, p
    ok = worst <= tol.abs
    witness = None if ok else {"basis_index": where, "basis_label": f.dom.basis_label(where),
                               "residual": worst}
    return Verdict(ok, tol.abs - worst, witness)


def multiplicativity_residuals(f: LinearMap) -> np.ndarray:
    """``|f(e_p e_q) - f(e_p) f(e_q)|`` for all pairs of matrix units."""
    basis = f.dom.basis()
    images = [apply(f, e) for e in basis]
    out = np.zeros((len(basis), len(basis)))
    for p, ep in enumerate(basis):
        for q, eq in enumerate(basis):
            out[p, q] = distance(apply(f, ep @ eq), images[p] @ images[q])
    return out


def check_multiplicative(f: LinearMap, tol: Tolerance = DEFAULT_TOL) -> Verdict:
    """Products of matrix-unit pairs are preserved (enough by bilinearity)."""
    if f.dom.dim == 0:
        return Verdict(True, tol.abs)
    res = multiplicativity_residuals(f)
    p, q = np.unravel_index(np.argmax(res), res.shape)
    worst = float(res[p, q])
    ok = worst <= tol.abs
    witness = None
    if not ok:
        basis = f.dom.basis()
        witness = {"p": int(p), "q": int(q),
                   "e_p": basis[p], "e_q": basis[q],
                   "f(e_p e_q)": apply(f, basis[p] @ basis[q]),
                   "f(e_p) f(e_q)": apply(f, basis[p]) @ apply(f, basis[q]),
                   "residual": worst}
    return Verdict(ok, tol.abs - worst, witness)


def _rank_one_sweep(A: Algebra):
    """Deterministic rank-one projections: basis vectors and their pairwise
    combinations ``e_i + e_j``, ``e_i + i e_j`` in each block."""
    for k, n in enumerate(A.block_dims):
        vecs = [np.eye(n)[i] for i in range(n)]
        for i in range(n):
            for j in range(i + 1, n):
                for phase in (1, -1, 1j, -1j):
                    v = np.zeros(n, dtype=complex)
                    v[i], v[j] = 1, phase
                    vecs.append(v / np.sqrt(2))
        for v in vecs:
            yield _block_projection(A, k, v)


def _block_projection(A: Algebra, k: int, v: np.ndarray) -> Element:
    blocks = [np.zeros((n, n), dtype=complex) for n in A.block_dims]
    blocks[k] = np.outer(v, v.conj())
    return A.element(blocks)


def _random_rank_one(A: Algebra, rng: np.random.Generator) -> Element:
    k = int(rng.integers(len(A.block_dims)))
    n = A.block_dims[k]
    v = rng.standard_normal(n) + 1j * rng.standard_normal(n)
    return _block_projection(A, k, v / np.linalg.norm(v))


def check_positive(f: LinearMap, n_samples: int = 1000, seed: int = 42,
                   tol: Tolerance = DEFAULT_TOL) -> Verdict:
    """Positivity of ``f``.

    Exact for a commutative domain, whose positive cone is generated by the
    coordinate projections.  Otherwise sampled: a fixed sweep of rank-one
    block projections, then ``n_samples`` random elements alternating
    between ``b* b`` and random rank-one projections.
    """
    A = f.dom
    if A.trivial:
        return Verdict(True, 0.0)
    if A.commutative:
        margin = np.inf
        for k, e in enumerate(A.basis()):
            v = is_positive_element(apply(f, e), tol)
            if not v:
                return Verdict(False, v.margin,
                               {"input": e, "output": apply(f, e), "output_check": v.witness})
            margin = min(margin, v.margin)
        return Verdict(True, float(margin))

    rng = np.random.default_rng(seed)

    def candidates():
        yield from _rank_one_sweep(A)
        for s in range(n_samples):
            yield A.random_positive(rng) if s % 2 == 0 else _random_rank_one(A, rng)

    margin = np.inf
    count = 0
    for a in candidates():
        count += 1
        scale = operator_norm(a)
        v = is_positive_element(apply(f, a) * (1 / scale), tol)
        if not v:
            return Verdict(False, v.margin,
                           {"input": a, "output": apply(f, a), "output_check": v.witness},
                           method="sampled")
        margin = min(margin, v.margin)
    return Verdict(True, float(margin), method="sampled",
                   details={"note": "no counterexample found (sampled)", "samples": count})


# Choi matrices and amplification -------------------------------------------

@dataclass(frozen=True)
class ChoiData:
    """One Choi matrix per domain block, codomain embedded block-diagonally."""

    matrices: tuple[np.ndarray, ...]
    eigenvalues: tuple[np.ndarray, ...]

    @property
    def min_eigenvalue(self) -> float:
        vals = [float(v[0]) for v in self.eigenvalues if len(v)]
        return min(vals) if vals else 0.0


def choi(f: LinearMap) -> ChoiData:
    """``C_k = sum_ij E_ij (x) f(iota_k(E_ij))`` for each domain block ``k``."""
    mats, eigs = [], []
    M = f.cod.rep_dim
    for k, n in enumerate(f.dom.block_dims):
        C = np.zeros((n * M, n * M), dtype=complex)
        for i in range(n):
            for j in range(n):
                img = f.cod.from_vector(f.matrix[:, f.dom.basis_index(k, i, j)]).to_matrix()
                C[i * M:(i + 1) * M, j * M:(j + 1) * M] = img
        C.flags.writeable = False
        mats.append(C)
        eigs.append(np.linalg.eigvalsh((C + C.conj().T) / 2))
    return ChoiData(tuple(mats), tuple(eigs))


def check_completely_positive(f: LinearMap, tol: Tolerance = DEFAULT_TOL) -> Verdict:
    """Pass iff every per-block Choi matrix is PSD (min eigenvalue >= -tol)."""
    data = choi(f)
    herm = max((float(np.abs(C - C.conj().T).max()) for C in data.matrices if C.size),
               default=0.0)
    if herm > tol.abs:
        return Verdict(False, -herm, {"reason": "Choi matrix not Hermitian", "residual": herm})
    worst, where = np.inf, None
    for k, C in enumerate(data.matrices):
        if not C.size:
            continue
        vals, vecs = np.linalg.eigh((C + C.conj().T) / 2)
        if vals[0] < worst:
            worst, where = float(vals[0]), (k, vecs[:, 0])
    if where is None:
        return Verdict(True, 0.0)
    ok = worst >= -tol.abs
    witness = None if ok else {"block": where[0], "eigenvalue": worst, "vector": where[1]}
    return Verdict(ok, worst, witness, details={"choi_eigenvalues": list(data.eigenvalues)})


def amplified_algebra(A: Algebra, m: int) -> Algebra:
    """``M_m(A)`` regrouped as ``M_{m n_1} + ... + M_{m n_K}``."""
    return Algebra(tuple(m * n for n in A.block_dims))


def matrix_of_elements_to_element(entries: Sequence[Sequence[Element]]) -> Element:
    """Pack an ``m x m`` matrix over ``A`` into the regrouped ``M_m(A)``.

    Block ``k`` has rows indexed by ``(r, i)``: entry ``((r,i),(s,j))`` is
    ``(a_rs)_k[i, j]``.
    """
    m = len(entries)
    if any(len(row) != m for row in entries):
        raise ShapeMismatchError("need a square matrix of elements")
    A = entries[0][0].parent
    blocks = []
    for k, n in enumerate(A.block_dims):
        big = np.zeros((m * n, m * n), dtype=complex)
        for r in range(m):
            for s in range(m):
                if entries[r][s].parent != A:
                    raise ShapeMismatchError("entries from different algebras")
                big[r * n:(r + 1) * n, s * n:(s + 1) * n] = entries[r][s].blocks[k]
        blocks.append(big)
    return amplified_algebra(A, m).element(blocks)


def element_to_matrix_of_elements(x: Element, A: Algebra, m: int) -> list[list[Element]]:
    if x.parent != amplified_algebra(A, m):
        raise ShapeMismatchError(f"{x.parent} is not M_{m}({A})")
    out = []
    for r in range(m):
        row = []
        for s in range(m):
            row.append(A.element([
                x.blocks[k][r * n:(r + 1) * n, s * n:(s + 1) * n]
                for k, n in enumerate(A.block_dims)]))
        out.append(row)
    return out


def amplify(f: LinearMap, m: int) -> LinearMap:
    """``M_m f``: apply ``f`` to every entry of an ``m x m`` matrix over ``dom``."""
    if m < 1:
        raise ValueError("amplification order must be >= 1")
    if m == 1:
        return f
    src, dst = amplified_algebra(f.dom, m), amplified_algebra(f.cod, m)

    def act(x: Element) -> Element:
        entries = element_to_matrix_of_elements(x, f.dom, m)
        return matrix_of_elements_to_element([[apply(f, a) for a in row] for row in entries])

    name = f"M{m}({f.name})" if f.name else None
    return map_from_function(src, dst, act, name)


def realize(a: Element, rep: Sequence[int] | None = None) -> np.ndarray:
    """Block-diagonal matrix of ``a`` under the representation listing blocks
    in the order ``rep`` (repeats allowed, every block at least once)."""
    A = a.parent
    rep = range(len(A.block_dims)) if rep is None else rep
    if set(rep) != set(range(len(A.block_dims))):
        raise ValueError("representation must use every block (faithfulness)")
    return block_diag(*(a.blocks[k] for k in rep))


def matrix_norm_over_algebra(entries: Sequence[Sequence[Element]],
                             rep_permutation: Sequence[int] | None = None) -> float:
    """Operator norm of an ``m x m`` matrix over ``A`` in ``M_m(B(H))``,
    ``H`` the Hilbert space of the chosen faithful block representation."""
    m = len(entries)
    if any(len(row) != m for row in entries):
        raise ShapeMismatchError("need a square matrix of elements")
    big = np.block([[realize(a, rep_permutation) for a in row] for row in entries])
    return float(np.linalg.norm(big, 2)) if big.size else 0.0


# norm bound and covariance ----------------------------------------------------

def is_pu(f: LinearMap, n_samples: int = 200, seed: int = 42,
          tol: Tolerance = DEFAULT_TOL) -> bool:
    return bool(check_unital(f, tol)) and bool(check_positive(f, n_samples, seed, tol))


def pu_norm_bound_check(f: LinearMap, n_samples: int = 1000, seed: int = 42,
                        tol: Tolerance = DEFAULT_TOL) -> Verdict:
    """Sample ``c`` and confirm ``|f(c)| <= 4 |c|`` along the Jordan route.

    Each sample is split as ``c1 - c2 + i c3 - i c4``; we check
    ``|f(c_i)| <= |c_i| <= |c|`` for the positive parts and the resulting
    bound.  ``details['max_ratio']`` records the largest ``|f(c)|/|c|`` seen;
    it is expected to stay below 1 but that is not asserted.
    """
    if not is_pu(f, tol=tol, seed=seed):
        raise NotPUError(f"{f} is not a PU map")
    rng = np.random.default_rng(seed)
    max_ratio, worst_margin = 0.0, np.inf
    for _ in range(n_samples):
        c = f.dom.random(rng)
        nc = operator_norm(c)
        if nc == 0:
            continue
        parts = jordan_decompose(c)
        for part in parts:
            npart = operator_norm(part)
            slack = tol.bound(nc)
            if operator_norm(apply(f, part)) > npart + slack or npart > nc + slack:
                return Verdict(False, -1.0, {"c": c, "part": part,
                                             "|f(part)|": operator_norm(apply(f, part)),
                                             "|part|": npart, "|c|": nc})
        ratio = operator_norm(apply(f, c)) / nc
        max_ratio = max(max_ratio, ratio)
        worst_margin = min(worst_margin, 4.0 - ratio)
        if ratio > 4.0 + tol.rel:
            return Verdict(False, 4.0 - ratio, {"c": c, "ratio": ratio}, method="sampled")
    return Verdict(True, float(worst_margin), method="sampled",
                   details={"max_ratio": max_ratio, "samples": n_samples})


def is_state(phi: LinearMap, tol: Tolerance = DEFAULT_TOL) -> Verdict:
    """PU map into the one-dimensional algebra ``C``."""
    if phi.cod.block_dims != (1,):
        return Verdict(False, -1.0, {"reason": f"codomain {phi.cod} is not C"})
    u = check_unital(phi, tol)
    if not u:
        return Verdict(False, u.margin, {"reason": "not unital", **u.witness})
    p = check_positive(phi, tol=tol)
    if not p:
        return Verdict(False, p.margin, {"reason": "not positive", **p.witness}, method=p.method)
    return Verdict(True, min(u.margin, p.margin), method=p.method)


def scalar(e: Element) -> complex:
    return complex(e.blocks[0][0, 0])


def covariance(phi: LinearMap, a: Element, b: Element, check: bool = True) -> complex:
    """``Cov_phi(a, b) = phi(a* b) - conj(phi(a)) phi(b)``."""
    if check and not is_state(phi):
        raise NotPUError("covariance needs a state (PU map into C)")
    return scalar(apply(phi, a.star() @ b)) - np.conj(scalar(apply(phi, a))) * scalar(apply(phi, b))


def density_state(A: Algebra, densities: Sequence[np.ndarray], weights: Sequence[float],
                  name: str | None = None) -> LinearMap:
    """``x -> sum_k w_k tr(rho_k x_k)`` as a map ``A -> C``."""
    C = Algebra((1,))
    row = np.zeros(A.dim, dtype=complex)
    for k, (n, rho, w) in enumerate(zip(A.block_dims, densities, weights)):
        for i in range(n):
            for j in range(n):
                row[A.basis_index(k, i, j)] = w * rho[j, i]
    return LinearMap(A, C, row[None, :], name)


def random_density_state(A: Algebra, rng: np.random.Generator):
    """Mixture of Ginibre density matrices per block with Dirichlet weights.

    Returns ``(phi, densities, weights)``.
    """
    densities = []
    for n in A.block_dims:
        g = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
        rho = g @ g.conj().T
        densities.append(rho / np.trace(rho).real)
    weights = rng.dirichlet(np.ones(len(A.block_dims)))
    return density_state(A, densities, weights, "random-state"), densities, weights


def covariance_preservation_test(T: LinearMap, n_states: int = 50, n_pairs: int = 20,
                                 seed: int = 42, tol: Tolerance = Tolerance(1e-10, 0.0)) -> Verdict:
    """Sample ``(phi, a, b)`` and compare ``Cov_phi(Ta, Tb)`` with
    ``Cov_{phi.T}(a, b)``.

    A pass certifies nothing beyond the samples.  The margin is the largest
    deviation seen; a failure carries the violating triple.
    """
    if not is_pu(T, tol=DEFAULT_TOL, seed=seed):
        raise NotPUError(f"{T} is not a PU map")
    rng = np.random.default_rng(seed)
    worst, witness = 0.0, None
    for _ in range(n_states):
        phi, dens, w = random_density_state(T.cod, rng)
        pulled = compose(phi, T)
        for _ in range(n_pairs):
            a, b = T.dom.random(rng), T.dom.random(rng)
            lhs = covariance(phi, apply(T, a), apply(T, b), check=False)
            rhs = covariance(pulled, a, b, check=False)
            dev = abs(lhs - rhs)
            if dev > worst:
                worst = dev
                witness = {"densities": dens, "weights": w, "a": a, "b": b,
                           "Cov_phi(Ta,Tb)": lhs, "Cov_phiT(a,b)": rhs, "deviation": dev}
    ok = worst <= tol.abs
    return Verdict(ok, float(worst), None if ok else witness, method="sampled",
                   details={"samples": n_states * n_pairs, "max_deviation": float(worst)})


# classification record ------------------------------------------------------

@dataclass(frozen=True)
class MapClassification:
    unital: Verdict
    subunital: Verdict
    involutive: Verdict
    multiplicative: Verdict
    positive: Verdict
    completely_positive: Verdict

    @property
    def labels(self) -> list[str]:
        out = []
        if self.multiplicative and self.involutive and self.unital:
            out.append("MIU")
        if self.completely_positive and self.unital:
            out.append("CPU")
        if self.positive and self.unital:
            out.append("PU")
        if self.positive and self.subunital:
            out.append("PsU")
        return out

    @property
    def label(self) -> str:
        labels = self.labels
        return labels[0] if labels else "none"

    def coherent(self) -> Verdict:
        """MIU implies CP implies P, as a consistency check on the flags."""
        problems = []
        if "MIU" in self.labels and not (self.positive and self.completely_positive):
            problems.append("MIU without CP/P")
        if self.completely_positive and not self.positive:
            problems.append("CP without P")
        return Verdict(not problems, 0.0, problems or None)

    def to_json(self) -> dict:
        return {
            "unital": self.unital.to_json(),
            "subunital": self.subunital.to_json(),
            "involutive": self.involutive.to_json(),
            "multiplicative": self.multiplicative.to_json(),
            "positive": self.positive.to_json(),
            "completely_positive": self.completely_positive.to_json(),
            "labels": self.labels,
            "label": self.label,
        }


def classify(f: LinearMap, n_samples: int = 1000, seed: int = 42,
             tol: Tolerance = DEFAULT_TOL) -> MapClassification:
    return MapClassification(
        unital=check_unital(f, tol),
        subunital=check_subunital(f, tol),
        involutive=check_involutive(f, tol),
        multiplicative=check_multiplicative(f, tol),
        positive=check_positive(f, n_samples, seed, tol),
        completely_positive=check_completely_positive(f, tol),
    )

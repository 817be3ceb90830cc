"""Finite-dimensional C*-algebras as direct sums of matrix blocks.

Every finite-dimensional C*-algebra is isomorphic to some
``M_{n_1}(C) + ... + M_{n_K}(C)``; an :class:`Algebra` records the block sizes
and an :class:`Element` holds one complex matrix per block.  Coordinates are
taken in the matrix-unit basis, block-major and row-major inside a block.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Sequence

import numpy as np

from .verdict import Verdict


class ParentMismatchError(ValueError):
    """Two elements from different algebras were combined."""


class NotNormalError(ValueError):
    pass


class NotSelfAdjointError(ValueError):
    pass


@dataclass(frozen=True)
class Tolerance:
    """Absolute plus relative slack: ``abs + rel * scale``."""

    abs: float = 1e-9
    rel: float = 1e-9

    def __post_init__(self):
        if self.abs < 0 or self.rel < 0:
            raise ValueError("tolerances must be non-negative")

    def bound(self, scale: float = 0.0) -> float:
        return self.abs + self.rel * scale


DEFAULT_TOL = Tolerance()


@dataclass(frozen=True)
class Algebra:
    """``M_{n_1} + ... + M_{n_K}``; an empty ``block_dims`` is the zero algebra."""

    block_dims: tuple[int, ...]
    label: str | None = field(default=None, compare=False)

    def __post_init__(self):
        dims = tuple(int(n) for n in self.block_dims)
        if any(n < 1 for n in dims):
            raise ValueError(f"block dimensions must be positive, got {dims}")
        object.__setattr__(self, "block_dims", dims)

    @property
    def trivial(self) -> bool:
        return len(self.block_dims) == 0

    @property
    def commutative(self) -> bool:
        return all(n == 1 for n in self.block_dims)

    @property
    def dim(self) -> int:
        """Complex vector-space dimension ``sum n_k**2``."""
        return sum(n * n for n in self.block_dims)

    @property
    def rep_dim(self) -> int:
        """Size of the defining block-diagonal representation, ``sum n_k``."""
        return sum(self.block_dims)

    @cached_property
    def offsets(self) -> tuple[int, ...]:
        out, acc = [], 0
        for n in self.block_dims:
            out.append(acc)
            acc += n * n
        return tuple(out)

    def basis_index(self, k: int, i: int, j: int) -> int:
        return self.offsets[k] + i * self.block_dims[k] + j

    def basis_label(self, p: int) -> tuple[int, int, int]:
        """Inverse of :meth:`basis_index`: ``p -> (block, row, col)``."""
        for k, n in enumerate(self.block_dims):
            if p < self.offsets[k] + n * n:
                r = p - self.offsets[k]
                return k, r // n, r % n
        raise IndexError(p)

    def __str__(self):
        if self.label:
            return self.label
        if self.trivial:
            return "0"
        if self.commutative:
            return f"C^{len(self.block_dims)}" if len(self.block_dims) > 1 else "C"
        return "+".join("C" if n == 1 else f"M{n}" for n in self.block_dims)

    # element constructors ------------------------------------------------

    def element(self, blocks: Sequence) -> "Element":
        return Element(self, tuple(np.asarray(b, dtype=complex) for b in blocks))

    def from_vector(self, v) -> "Element":
        v = np.asarray(v, dtype=complex).reshape(-1)
        if v.shape[0] != self.dim:
            raise ValueError(f"expected {self.dim} coordinates, got {v.shape[0]}")
        blocks = [v[o:o + n * n].reshape(n, n) for o, n in zip(self.offsets, self.block_dims)]
        return self.element(blocks)

    def diag(self, values) -> "Element":
        """Element of a commutative algebra from its coordinates."""
        if not self.commutative:
            raise ValueError("diag() needs a commutative algebra")
        return self.from_vector(values)

    def unit(self) -> "Element":
        return self.element([np.eye(n) for n in self.block_dims])

    def zero(self) -> "Element":
        return self.element([np.zeros((n, n)) for n in self.block_dims])

    def basis(self) -> list["Element"]:
        """Matrix units ``iota_k(E_ij)`` in coordinate order."""
        eye = np.eye(self.dim)
        return [self.from_vector(eye[p]) for p in range(self.dim)]

    def random(self, rng: np.random.Generator, scale: float = 1.0) -> "Element":
        """Complex Ginibre element (each block entry standard complex normal)."""
        return self.element([
            scale * (rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))) / np.sqrt(2)
            for n in self.block_dims
        ])

    def random_positive(self, rng: np.random.Generator) -> "Element":
        b = self.random(rng)
        return b.star() @ b

    def random_self_adjoint(self, rng: np.random.Generator) -> "Element":
        b = self.random(rng)
        return (b + b.star()) * 0.5


def make_algebra(block_dims: Sequence[int], label: str | None = None) -> Algebra:
    return Algebra(tuple(block_dims), label)


def matrix_algebra(n: int) -> Algebra:
    return Algebra((n,))


def commutative_algebra(n: int) -> Algebra:
    return Algebra((1,) * n)


class Element:
    """An element of an :class:`Algebra`; blocks are read-only arrays."""

    __slots__ = ("parent", "blocks")

    def __init__(self, parent: Algebra, blocks: tuple[np.ndarray, ...]):
        if len(blocks) != len(parent.block_dims):
            raise ValueError(
                f"{parent} has {len(parent.block_dims)} blocks, got {len(blocks)}")
        frozen = []
        for b, n in zip(blocks, parent.block_dims):
            b = np.array(b, dtype=complex)
            if b.shape != (n, n):
                raise ValueError(f"block of shape {b.shape} does not fit M{n}")
            b.flags.writeable = False
            frozen.append(b)
        self.parent = parent
        self.blocks = tuple(frozen)

    def __repr__(self):
        return f"Element({self.parent}, {[b.tolist() for b in self.blocks]})"

    def _check(self, other: "Element"):
        if not isinstance(other, Element):
            raise TypeError(f"expected Element, got {type(other).__name__}")
        if other.parent != self.parent:
            raise ParentMismatchError(f"{self.parent} vs {other.parent}")

    def __add__(self, other):
        self._check(other)
        return Element(self.parent, tuple(a + b for a, b in zip(self.blocks, other.blocks)))

    def __sub__(self, other):
        self._check(other)
        return Element(self.parent, tuple(a - b for a, b in zip(self.blocks, other.blocks)))

    def __neg__(self):
        return Element(self.parent, tuple(-a for a in self.blocks))

    def __matmul__(self, other):
        self._check(other)
        return Element(self.parent, tuple(a @ b for a, b in zip(self.blocks, other.blocks)))

    def __mul__(self, scalar):
        if isinstance(scalar, Element):
            raise TypeError("use @ (or mul) for the algebra product")
        return Element(self.parent, tuple(complex(scalar) * a for a in self.blocks))

    __rmul__ = __mul__

    def star(self) -> "Element":
        return Element(self.parent, tuple(a.conj().T for a in self.blocks))

    def to_vector(self) -> np.ndarray:
        if not self.blocks:
            return np.zeros(0, dtype=complex)
        return np.concatenate([b.reshape(-1) for b in self.blocks])

    def to_matrix(self) -> np.ndarray:
        """Block-diagonal matrix in the defining representation."""
        from scipy.linalg import block_diag

        if not self.blocks:
            return np.zeros((0, 0), dtype=complex)
        return block_diag(*self.blocks)

    def equals(self, other: "Element") -> bool:
        """Exact coordinate equality."""
        self._check(other)
        return all(np.array_equal(a, b) for a, b in zip(self.blocks, other.blocks))

    def allclose(self, other: "Element", atol: float = 1e-9) -> bool:
        self._check(other)
        return distance(self, other) <= atol


# functional spellings ------------------------------------------------------

def add(a: Element, b: Element) -> Element:
    return a + b


def mul(a: Element, b: Element) -> Element:
    return a @ b


def scale(lam: complex, a: Element) -> Element:
    return a * lam


def star(a: Element) -> Element:
    return a.star()


def unit(A: Algebra) -> Element:
    return A.unit()


def zero(A: Algebra) -> Element:
    return A.zero()


def commutator(a: Element, b: Element) -> Element:
    return a @ b - b @ a


# norms, spectra, order ----------------------------------------------------

def operator_norm(a: Element) -> float:
    """Sup over blocks of the largest singular value; 0 on the zero algebra."""
    if a.parent.trivial:
        return 0.0
    return max(float(np.linalg.norm(b, 2)) for b in a.blocks)


def distance(a: Element, b: Element) -> float:
    return operator_norm(a - b)


def is_self_adjoint(a: Element, tol: Tolerance = DEFAULT_TOL) -> bool:
    return distance(a, a.star()) <= tol.bound(operator_norm(a))


def is_normal(a: Element, tol: Tolerance = DEFAULT_TOL) -> bool:
    s = a.star()
    return distance(s @ a, a @ s) <= tol.bound(operator_norm(a) ** 2)


def spectrum(a: Element, tol: Tolerance = DEFAULT_TOL) -> list[tuple[complex, int]]:
    """Eigenvalues of a normal element as ``(value, block index)`` pairs.

    Hermitian blocks go through ``eigvalsh`` so their spectrum is exactly real.
    """
    if not is_normal(a, tol):
        raise NotNormalError("spectrum() requires a normal element")
    out = []
    for k, b in enumerate(a.blocks):
        if np.allclose(b, b.conj().T, atol=tol.abs, rtol=0):
            vals = np.linalg.eigvalsh((b + b.conj().T) / 2).astype(complex)
        else:
            vals = np.linalg.eigvals(b)
        out.extend((complex(v), k) for v in vals)
    return out


def spectrum_values(a: Element, tol: Tolerance = DEFAULT_TOL) -> np.ndarray:
    return np.array([v for v, _ in spectrum(a, tol)], dtype=complex)


def _hermitian_eigh(a: Element):
    for k, b in enumerate(a.blocks):
        vals, vecs = np.linalg.eigh((b + b.conj().T) / 2)
        yield k, vals, vecs


def is_positive_element(a: Element, tol: Tolerance = DEFAULT_TOL) -> Verdict:
    """Self-adjoint with smallest eigenvalue at least ``-tol.abs * (1 + |a|)``.

    The margin is the smallest eigenvalue.  On failure the witness names the
    block and a unit eigenvector ``v`` with ``<v, a v> < 0`` (or the
    anti-Hermitian residual when ``a`` is not self-adjoint).
    """
    norm = operator_norm(a)
    if a.parent.trivial:
        return Verdict(True, 0.0)
    asym = distance(a, a.star())
    if asym > tol.bound(norm):
        return Verdict(False, -asym, witness={"reason": "not self-adjoint", "residual": asym})
    slack = tol.abs * (1.0 + norm)
    worst = (np.inf, None, None)
    for k, vals, vecs in _hermitian_eigh(a):
        if vals[0] < worst[0]:
            worst = (float(vals[0]), k, vecs[:, 0])
    lam, k, v = worst
    if lam >= -slack:
        return Verdict(True, lam)
    return Verdict(False, lam, witness={"block": k, "eigenvalue": lam, "vector": v})


def leq(a: Element, b: Element, tol: Tolerance = DEFAULT_TOL) -> Verdict:
    """``a <= b`` in the C*-order, i.e. ``b - a`` is positive."""
    a._check(b)
    return is_positive_element(b - a, tol)


def _positive_part(h: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    vals, vecs = np.linalg.eigh((h + h.conj().T) / 2)
    pos = (vecs * np.clip(vals, 0, None)) @ vecs.conj().T
    neg = (vecs * np.clip(-vals, 0, None)) @ vecs.conj().T
    return pos, neg


def jordan_decompose(c: Element) -> tuple[Element, Element, Element, Element]:
    """Split ``c = c1 - c2 + i c3 - i c4`` into four positive elements.

    ``c1, c2`` are the positive and negative spectral parts of the real part
    ``(c + c*)/2``; ``c3, c4`` those of the imaginary part ``(c - c*)/2i``.
    Consequently ``c1 c2 = 0`` and ``c3 c4 = 0``.
    """
    A = c.parent
    parts = [[], [], [], []]
    for b in c.blocks:
        re = (b + b.conj().T) / 2
        im = (b - b.conj().T) / 2j
        p1, p2 = _positive_part(re)
        p3, p4 = _positive_part(im)
        for lst, m in zip(parts, (p1, p2, p3, p4)):
            lst.append(m)
    c1, c2, c3, c4 = (A.element(p) for p in parts)
    return c1, c2, c3, c4


def order_unit_norm(v: Element, tol: Tolerance = DEFAULT_TOL) -> float:
    """Least ``lam >= 0`` with ``-lam 1 <= v <= lam 1`` for self-adjoint ``v``."""
    if not is_self_adjoint(v, tol):
        raise NotSelfAdjointError("order unit norm is defined on self-adjoint elements")
    if v.parent.trivial:
        return 0.0
    lo = min(vals[0] for _, vals, _ in _hermitian_eigh(v))
    hi = max(vals[-1] for _, vals, _ in _hermitian_eigh(v))
    return float(max(hi, -lo, 0.0))

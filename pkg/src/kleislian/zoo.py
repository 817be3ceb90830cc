"""Named maps and random generators used by the property suites and the CLI."""

from __future__ import annotations

import numpy as np

from .algebra import Algebra, Element, commutative_algebra, matrix_algebra
from .constructions import direct_sum
from .maps import LinearMap, compose, identity_map, make_map, map_from_function

M2, M3 = matrix_algebra(2), matrix_algebra(3)


def random_unitary(n: int, rng: np.random.Generator) -> np.ndarray:
    z = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    q, r = np.linalg.qr(z)
    return q * (np.diag(r) / np.abs(np.diag(r)))


def random_isometry(rows: int, cols: int, rng: np.random.Generator) -> np.ndarray:
    """``rows x cols`` matrix with orthonormal columns (``rows >= cols``)."""
    z = rng.standard_normal((rows, cols)) + 1j * rng.standard_normal((rows, cols))
    q, _ = np.linalg.qr(z)
    return q


# fixed maps --------------------------------------------------------------------

def transpose_map(n: int = 2) -> LinearMap:
    A = matrix_algebra(n)
    return map_from_function(A, A, lambda a: A.element([a.blocks[0].T]), f"transpose_M{n}")


def unitary_conjugation(u: np.ndarray, name: str | None = None) -> LinearMap:
    """``a -> u* a u`` on ``M_n``."""
    u = np.asarray(u, dtype=complex)
    A = matrix_algebra(u.shape[0])
    return map_from_function(A, A, lambda a: A.element([u.conj().T @ a.blocks[0] @ u]),
                             name or f"conj_M{u.shape[0]}")


def depolarizing(n: int = 2, p: float = 0.5) -> LinearMap:
    """``a -> (1 - p) a + p tr(a)/n 1``."""
    A = matrix_algebra(n)
    return map_from_function(
        A, A, lambda a: A.element([(1 - p) * a.blocks[0] + p * np.trace(a.blocks[0]) / n * np.eye(n)]),
        f"depolarizing_M{n}")


def pinching(n: int = 2) -> LinearMap:
    """Keep the diagonal; a conditional expectation, CPU but not MIU."""
    A = matrix_algebra(n)
    return map_from_function(A, A, lambda a: A.element([np.diag(np.diag(a.blocks[0]))]),
                             f"pinching_M{n}")


def normalized_trace(n: int = 2) -> LinearMap:
    A, C = matrix_algebra(n), Algebra((1,))
    return map_from_function(A, C, lambda a: C.element([[[np.trace(a.blocks[0]) / n]]]),
                             f"trace_M{n}")


def reduction_map(n: int = 3) -> LinearMap:
    """``a -> (tr(a) 1 - a)/(n - 1)``: unital and positive, not 2-positive."""
    A = matrix_algebra(n)
    return map_from_function(
        A, A, lambda a: A.element([(np.trace(a.blocks[0]) * np.eye(n) - a.blocks[0]) / (n - 1)]),
        f"reduction_M{n}")


def ampliation(n: int, r: int, u: np.ndarray | None = None) -> LinearMap:
    """``a -> w* (a (x) 1_r) w`` from ``M_n`` to ``M_{nr}``."""
    A, B = matrix_algebra(n), matrix_algebra(n * r)
    w = np.eye(n * r) if u is None else u

    def act(a: Element) -> Element:
        return B.element([w.conj().T @ np.kron(a.blocks[0], np.eye(r)) @ w])

    return map_from_function(A, B, act, f"ampliation_M{n}_x{r}")


def block_embedding(A: Algebra, B: Algebra, order) -> LinearMap:
    """``a -> diag(a_{order[0]}, a_{order[1]}, ...)`` into a single block of ``B``."""

    def act(a: Element) -> Element:
        from scipy.linalg import block_diag

        return B.element([block_diag(*(a.blocks[k] for k in order))])

    return map_from_function(A, B, act, "block_embedding")


def coordinate_map(A: Algebra, B: Algebra, source_of, name=None) -> LinearMap:
    """``b_l = a_{source_of[l]} (x) 1`` blockwise, a unital *-homomorphism.

    Block ``l`` of ``B`` must be a multiple of the size of its source block.
    """
    reps = [B.block_dims[l] // A.block_dims[k] for l, k in enumerate(source_of)]
    if any(r * A.block_dims[k] != B.block_dims[l]
           for l, (r, k) in enumerate(zip(reps, source_of))):
        raise ValueError("codomain block sizes must be multiples of their source blocks")

    def act(a: Element) -> Element:
        return B.element([np.kron(a.blocks[k], np.eye(r)) for k, r in zip(source_of, reps)])

    return map_from_function(A, B, act, name)


def commutative_pu(weights) -> LinearMap:
    """``C^k -> A``, ``e_i -> a_i`` for a positive partition of unity ``a_i``."""
    weights = list(weights)
    return make_map(commutative_algebra(len(weights)), weights[0].parent, weights, "commutative_pu")


def random_partition_of_unity(A: Algebra, k: int, rng: np.random.Generator) -> list[Element]:
    bs = [A.random_positive(rng) for _ in range(k)]
    s = bs[0]
    for b in bs[1:]:
        s = s + b
    blocks_inv = []
    for blk in s.blocks:
        vals, vecs = np.linalg.eigh(blk)
        blocks_inv.append((vecs / np.sqrt(vals)) @ vecs.conj().T)
    s_inv = A.element(blocks_inv)
    parts = [s_inv @ b @ s_inv for b in bs[:-1]]
    last = A.unit()
    for p in parts:
        last = last - p
    return parts + [(last + last.star()) * 0.5]


def random_cpu_map(dom: Algebra, cod: Algebra, rng: np.random.Generator,
                   multiplicity: int = 2) -> LinearMap:
    """Stinespring form ``f(a)_l = V_l* (pi(a) (x) 1_r) V_l`` with isometries ``V_l``."""
    H = dom.rep_dim * multiplicity
    while H < max(cod.block_dims, default=1):
        multiplicity += 1
        H = dom.rep_dim * multiplicity
    vs = [random_isometry(H, m, rng) for m in cod.block_dims]

    def act(a: Element) -> Element:
        big = np.kron(a.to_matrix(), np.eye(multiplicity))
        return cod.element([v.conj().T @ big @ v for v in vs])

    return map_from_function(dom, cod, act, f"random_cpu_{dom}_{cod}")


def random_pu_map(rng: np.random.Generator) -> LinearMap:
    """A PU map of one of several flavours: CPU, transpose after CPU, or
    out of a commutative algebra."""
    shapes = [(2,), (3,), (2, 1), (1, 1), (1, 1, 1), (2, 2)]
    dom = Algebra(shapes[rng.integers(len(shapes))])
    cod = Algebra(shapes[rng.integers(len(shapes))])
    kind = rng.integers(3)
    if kind == 0 or (kind == 1 and cod.block_dims[0] == 1):
        return random_cpu_map(dom, cod, rng)
    if kind == 1:
        T = map_from_function(cod, cod, lambda a: cod.element(
            [a.blocks[0].T] + list(a.blocks[1:])), "partial_transpose")
        return compose(T, random_cpu_map(dom, cod, rng))
    k = int(rng.integers(2, 5))
    return commutative_pu(random_partition_of_unity(cod, k, rng))


# zoo lists -------------------------------------------------------------------

def miu_zoo(seed: int = 7) -> list[LinearMap]:
    """Twenty unital *-homomorphisms."""
    rng = np.random.default_rng(seed)
    C, C2, C3, C4 = (commutative_algebra(k) for k in (1, 2, 3, 4))
    M2C = Algebra((2, 1))
    M2M2 = Algebra((2, 2))
    u2, u3 = random_unitary(2, rng), random_unitary(3, rng)
    maps = [
        identity_map(M2),
        identity_map(M3),
        unitary_conjugation(u2),
        unitary_conjugation(u3),
        coordinate_map(C, M2, [0], "unitization_M2"),
        coordinate_map(C, M2C, [0, 0], "unitization_M2+C"),
        block_embedding(C2, M2, [0, 1]),
        compose(unitary_conjugation(u3), block_embedding(C3, M3, [0, 1, 2])),
        ampliation(2, 2),
        coordinate_map(M2, M2M2, [0, 0], "diagonal_M2"),
        map_from_function(M2, M2M2, lambda a: M2M2.element(
            [a.blocks[0], u2.conj().T @ a.blocks[0] @ u2]), "twisted_diagonal"),
        direct_sum([M2, C]).projections[0],
        direct_sum([M2, C]).projections[1],
        block_embedding(M2C, M3, [0, 1]),
        coordinate_map(C2, C2, [1, 0], "swap_C2"),
        coordinate_map(C2, C3, [0, 0, 1], "duplicate_C2_C3"),
        coordinate_map(C3, C, [1], "character_C3"),
        coordinate_map(M2M2, M2M2, [1, 0], "swap_blocks"),
        ampliation(2, 3, random_unitary(6, rng)),
        coordinate_map(C4, C4, [2, 0, 3, 1], "permute_C4"),
    ]
    assert len(maps) == 20
    return maps


def pu_not_miu_zoo(seed: int = 11) -> list[LinearMap]:
    """PU maps that fail multiplicativity."""
    from .gelfand import c3_witness, state_from_x

    rng = np.random.default_rng(seed)
    half = make_map(M2, M2, [0.5 * (e + transpose_map(2)(e)) for e in M2.basis()],
                    "half_id_half_transpose")
    return [
        transpose_map(2),
        transpose_map(3),
        depolarizing(2, 0.5),
        c3_witness().f,
        pinching(2),
        normalized_trace(2),
        reduction_map(3),
        half,
        random_cpu_map(M2, M3, rng),
        random_cpu_map(Algebra((2, 1)), M2, rng),
        commutative_pu(random_partition_of_unity(M2, 3, rng)),
        state_from_x(0.3).phi,
    ]


def full_zoo() -> list[LinearMap]:
    return miu_zoo() + pu_not_miu_zoo()

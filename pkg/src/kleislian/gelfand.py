"""Characters, Gelfand transform, functional calculus and the small worked
examples around the initial arrows out of ``C``, ``C^2`` and ``C^3``.

``C[0,1]`` is represented by its dense subalgebra of polynomials, so every
claim about it is checked up to a degree bound.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from .algebra import (
    DEFAULT_TOL,
    Algebra,
    Element,
    Tolerance,
    commutator,
    distance,
    is_positive_element,
    is_self_adjoint,
    matrix_algebra,
    operator_norm,
)
from .maps import (
    LinearMap,
    NotPUError,
    apply,
    check_involutive,
    check_multiplicative,
    check_positive,
    check_unital,
    identity_map,
    is_state,
    make_map,
)
from .verdict import Verdict


class NotCommutativeError(ValueError):
    pass


class SpectrumOutOfRangeError(ValueError):
    pass


C1 = Algebra((1,), "C")
C2 = Algebra((1, 1), "C^2")
C3 = Algebra((1, 1, 1), "C^3")


# characters and the Gelfand transform ---------------------------------------

@dataclass(frozen=True)
class Character:
    map: LinearMap
    index: int

    def __call__(self, b: Element) -> complex:
        return complex(apply(self.map, b).blocks[0][0, 0])


def characters(A: Algebra) -> list[Character]:
    """The coordinate evaluations; in finite dimension there are no others."""
    if not A.commutative:
        raise NotCommutativeError(f"{A} is not commutative")
    n = A.dim
    return [Character(LinearMap(A, C1, np.eye(n)[k][None, :], f"omega_{k}"), k)
            for k in range(n)]


def gelfand_transform(A: Algebra) -> LinearMap:
    """``b -> (omega(b))_omega`` into the algebra of functions on characters."""
    chars = characters(A)
    table = Algebra((1,) * len(chars), f"C(Sigma {A})")
    rows = np.vstack([c.map.matrix for c in chars])
    return LinearMap(A, table, rows, "gamma")


def check_gelfand(A: Algebra, tol: Tolerance = Tolerance(0.0, 0.0)) -> Verdict:
    """MIU and bijective; with the default zero tolerance the check is exact."""
    g = gelfand_transform(A)
    flags = {"unital": check_unital(g, tol), "involutive": check_involutive(g, tol),
             "multiplicative": check_multiplicative(g, tol)}
    rank = int(np.linalg.matrix_rank(g.matrix)) if g.matrix.size else 0
    bij = rank == A.dim == g.cod.dim
    ok = all(flags.values()) and bij
    failed = [k for k, v in flags.items() if not v] + ([] if bij else ["bijective"])
    return Verdict(ok, 0.0, failed or None, details={"rank": rank})


# polynomials -------------------------------------------------------------------

@dataclass(frozen=True)
class Polynomial:
    """Complex polynomial, coefficients lowest degree first, trailing zeros trimmed."""

    coeffs: tuple[complex, ...] = (0j,)

    def __post_init__(self):
        c = [complex(x) for x in self.coeffs] or [0j]
        while len(c) > 1 and c[-1] == 0:
            c.pop()
        object.__setattr__(self, "coeffs", tuple(c))

    @classmethod
    def monomial(cls, k: int, coeff: complex = 1.0) -> "Polynomial":
        return cls((0,) * k + (coeff,))

    @classmethod
    def constant(cls, c: complex) -> "Polynomial":
        return cls((c,))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __call__(self, x):
        """Horner evaluation at a scalar or array of scalars."""
        acc = np.zeros_like(np.asarray(x, dtype=complex))
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __add__(self, other: "Polynomial") -> "Polynomial":
        n = max(len(self.coeffs), len(other.coeffs))
        a = np.pad(np.array(self.coeffs), (0, n - len(self.coeffs)))
        b = np.pad(np.array(other.coeffs), (0, n - len(other.coeffs)))
        return Polynomial(tuple(a + b))

    def __mul__(self, other):
        if isinstance(other, Polynomial):
            return Polynomial(tuple(np.convolve(self.coeffs, other.coeffs)))
        return Polynomial(tuple(complex(other) * c for c in self.coeffs))

    __rmul__ = __mul__

    def conj(self) -> "Polynomial":
        """Pointwise complex conjugate on the real line."""
        return Polynomial(tuple(np.conj(self.coeffs)))

    def to_json(self) -> list:
        return [[c.real, c.imag] for c in self.coeffs]

    @classmethod
    def from_json(cls, data) -> "Polynomial":
        return cls(tuple(complex(re, im) for re, im in data))


def polynomial_eval(a: Element, p: Polynomial) -> Element:
    """Algebraic evaluation ``p(a)`` by Horner's rule in the algebra."""
    A = a.parent
    acc = A.zero()
    one = A.unit()
    for c in reversed(p.coeffs):
        acc = acc @ a + one * c
    return acc


def functional_calculus(a: Element, p: Polynomial | Callable,
                        tol: Tolerance = DEFAULT_TOL) -> Element:
    """``p(a)`` through the spectral decomposition of a self-adjoint
    ``0 <= a <= 1``: per block ``V diag(p(lambda)) V*``."""
    if not is_self_adjoint(a, tol):
        raise SpectrumOutOfRangeError("functional calculus needs a self-adjoint element")
    blocks = []
    for b in a.blocks:
        vals, vecs = np.linalg.eigh((b + b.conj().T) / 2)
        if vals.size and (vals[0] < -tol.abs or vals[-1] > 1 + tol.abs):
            raise SpectrumOutOfRangeError(
                f"spectrum [{vals[0]:.3g}, {vals[-1]:.3g}] not inside [0, 1]")
        blocks.append((vecs * np.asarray(p(vals), dtype=complex)) @ vecs.conj().T)
    return a.parent.element(blocks)


# C: the identity is initial ---------------------------------------------------

def unit_map(A: Algebra) -> LinearMap:
    """``lambda -> lambda 1``, the only PU map ``C -> A``."""
    return LinearMap(C1, A, A.unit().to_vector()[:, None], "unitization")


def check_c_initial(A: Algebra, tol: Tolerance = DEFAULT_TOL) -> Verdict:
    """A linear map out of ``C`` is fixed by the image of 1, and unitality
    forces that image to be 1; so the unique PU map ``C -> A`` is the
    unitization, and it is MIU.  Its factorization through the identity
    ``C -> C`` is therefore itself."""
    sigma = unit_map(A)
    flags = {name: fn(sigma, tol) for name, fn in [
        ("unital", check_unital), ("involutive", check_involutive),
        ("multiplicative", check_multiplicative), ("positive", check_positive)]}
    rho = identity_map(C1)
    factor_residual = float(np.abs(sigma.matrix @ rho.matrix - sigma.matrix).max())
    ok = all(flags.values()) and factor_residual == 0.0
    return Verdict(ok, 0.0, None if ok else {k: v.to_json() for k, v in flags.items()},
                   details={"codomain": str(A), "factor_residual": factor_residual})


# C^2: functional calculus factorization --------------------------------------

def rho_c2(lam: complex, mu: complex) -> Polynomial:
    """``rho(lam, mu)(x) = lam x + mu (1 - x)``."""
    return Polynomial((mu, lam - mu))


def c2_sigma(a: Element) -> LinearMap:
    """``(lam, mu) -> lam a + mu (1 - a)``; PU exactly when ``0 <= a <= 1``."""
    one = a.parent.unit()
    return make_map(C2, a.parent, [a, one - a], "sigma")


def random_c2_sigma(A: Algebra, rng: np.random.Generator) -> LinearMap:
    """A random PU ``sigma: C^2 -> A`` with ``0 <= sigma(1, 0) <= 1``.

    ``a`` is a random positive element rescaled into the unit interval; the
    occasional projection exercises a spectrum sitting on both endpoints.
    """
    if rng.random() < 0.1:
        v = [rng.standard_normal(n) + 1j * rng.standard_normal(n) for n in A.block_dims]
        a = A.element([np.outer(x, x.conj()) / np.vdot(x, x).real for x in v])
    else:
        b = A.random_positive(rng)
        a = b * (rng.uniform(0.2, 1.0) / operator_norm(b))
    return c2_sigma(a)


@dataclass
class C2Factorization:
    sigma: LinearMap
    a: Element
    sigma_bar: Callable[[Polynomial], Element]
    verdict: Verdict
    residuals: dict = field(default_factory=dict)


def c2_factorization(sigma: LinearMap, degree: int = 8,
                     tol: Tolerance = DEFAULT_TOL, grid: int = 5,
                     factor_tol: float = 1e-9, mult_tol: float = 1e-8) -> C2Factorization:
    """Factor a PU map ``sigma: C^2 -> A`` as ``sigma_bar . rho``.

    ``a = sigma(1, 0)`` and ``sigma_bar(p) = p(a)`` by functional calculus.
    The verdict bundles

    * factorization ``sigma_bar(rho(lam, mu)) = sigma(lam, mu)`` on a
      ``grid x grid`` set of complex ``(lam, mu)``;
    * multiplicativity ``sigma_bar(x^i x^j) = sigma_bar(x^i) sigma_bar(x^j)``,
      ``i, j <= degree``;
    * unit and involution preservation, on monomials with complex weights;
    * uniqueness: any MIU factorization agrees with ``sigma_bar`` on ``1, x``
      and so on ``x^k = x^k``; compared against the algebraic power ``a^k``.
    """
    if sigma.dom.block_dims != (1, 1):
        raise ValueError("sigma must be defined on C^2")
    if not (check_unital(sigma, tol) and check_positive(sigma, tol=tol)):
        raise NotPUError("sigma is not PU")
    A = sigma.cod
    a = apply(sigma, C2.diag([1, 0]))

    def sigma_bar(p: Polynomial) -> Element:
        return functional_calculus(a, p, tol)

    pts = np.linspace(-1, 1, grid)
    factor_res = 0.0
    for lam_re, mu_re in [(x, y) for x in pts for y in pts]:
        lam, mu = complex(lam_re, 0.5 * mu_re), complex(mu_re, -0.5 * lam_re)
        lhs = sigma_bar(rho_c2(lam, mu))
        rhs = apply(sigma, C2.diag([lam, mu]))
        factor_res = max(factor_res, distance(lhs, rhs))

    powers = [sigma_bar(Polynomial.monomial(k)) for k in range(2 * degree + 1)]
    mult_res = 0.0
    for i in range(degree + 1):
        for j in range(degree + 1):
            mult_res = max(mult_res, distance(powers[i + j], powers[i] @ powers[j]))

    unit_res = distance(sigma_bar(Polynomial.constant(1)), A.unit())
    inv_res = 0.0
    for k in range(degree + 1):
        p = Polynomial.monomial(k, complex(1, k))
        inv_res = max(inv_res, distance(sigma_bar(p.conj()), sigma_bar(p).star()))

    uniq_res = 0.0
    alg = A.unit()
    for k in range(degree + 1):
        uniq_res = max(uniq_res, distance(powers[k], alg))
        alg = alg @ a
    uniq_bound = max(degree, 1) * 1e-9 * max(1.0, operator_norm(a)) ** degree

    residuals = {"factorization": factor_res, "multiplicativity": mult_res,
                 "unit": unit_res, "involution": inv_res, "uniqueness": uniq_res}
    ok = (factor_res < factor_tol and mult_res < mult_tol and unit_res < factor_tol
          and inv_res < factor_tol and uniq_res <= uniq_bound)
    verdict = Verdict(ok, factor_tol - factor_res, None if ok else residuals,
                      details=residuals)
    return C2Factorization(sigma, a, sigma_bar, verdict, residuals)


# C^3: the free algebra is not commutative ----------------------------------

@dataclass
class C3Witness:
    a1: Element
    a2: Element
    a3: Element
    f: LinearMap
    report: dict

    @property
    def passed(self) -> bool:
        return all(v.passed for v in self.report.values())


def c3_witness(tol: Tolerance = Tolerance(1e-12, 0.0)) -> C3Witness:
    """Three positive 2x2 matrices summing to 1 with ``a1 a2 != a2 a1``, and
    the PU map ``f(l1, l2, l3) = l1 a1 + l2 a2 + l3 a3`` from ``C^3``.

    A MIU map out of a commutative algebra would force ``a1 a2 = a2 a1``, so
    ``f`` cannot factor through any commutative algebra by a MIU map.
    """
    M2 = matrix_algebra(2)
    P1 = np.array([[0, 0], [0, 1]], dtype=complex)
    Pplus = 0.5 * np.array([[1, 1], [1, 1]], dtype=complex)
    a1 = M2.element([0.5 * P1])
    a2 = M2.element([0.5 * Pplus])
    a3 = M2.unit() - a1 - a2
    f = make_map(C3, M2, [a1, a2, a3], "f_C3")

    report = {}
    pos = [is_positive_element(x, tol) for x in (a1, a2, a3)]
    report["positive"] = Verdict(all(pos), min(v.margin for v in pos),
                                 None if all(pos) else [v.to_json() for v in pos])
    total = a1 + a2 + a3
    exact = total.equals(M2.unit())
    report["sum_is_unit"] = Verdict(exact, 0.0, None if exact else {"sum": total})
    comm = commutator(a1, a2)
    cn = operator_norm(comm)
    report["noncommuting"] = Verdict(cn > 0.1, cn - 0.1, None, details={"norm": cn,
                                                                       "commutator": comm})
    unital = check_unital(f, tol)
    positive = check_positive(f, tol=tol)
    report["f_is_pu"] = Verdict(bool(unital) and bool(positive) and positive.method == "exact",
                                min(unital.margin, positive.margin),
                                None if unital and positive else
                                {"unital": unital.to_json(), "positive": positive.to_json()})
    e1, e2 = C3.diag([1, 0, 0]), C3.diag([0, 1, 0])
    prod_images = apply(f, e1) @ apply(f, e2)
    image_prod = apply(f, e1 @ e2)
    gap = distance(prod_images, image_prod)
    mult = check_multiplicative(f, tol)
    report["f_not_multiplicative"] = Verdict(
        (not mult.passed) and gap > 0.1, gap,
        {"f(e1) f(e2)": prod_images, "f(e1 e2)": image_prod, "residual": gap,
         "f(e2) f(e1)": apply(f, e2) @ apply(f, e1)})
    return C3Witness(a1, a2, a3, f, report)


# states on C^2 -----------------------------------------------------------------

@dataclass(frozen=True)
class StateSample:
    phi: LinearMap
    provenance: str
    weights: tuple[float, ...] = ()


def state_from_x(x: float) -> StateSample:
    """``(lam, mu) -> x lam + (1 - x) mu``."""
    if not 0.0 <= x <= 1.0:
        raise ValueError(f"x = {x} is outside [0, 1]")
    phi = LinearMap(C2, C1, np.array([[x, 1.0 - x]]), f"xbar({x})")
    return StateSample(phi, "convex mixture of the two characters", (x, 1.0 - x))


def check_stat_c2(n_grid: int = 101, tol: Tolerance = DEFAULT_TOL) -> Verdict:
    """Every ``xbar`` is a state and ``x -> xbar`` is injective on a grid;
    the inverse is ``phi -> phi(1, 0)``.  Each state on ``C^2`` is of this
    form since it is fixed by ``phi(1,0)`` and ``phi(0,1) = 1 - phi(1,0)``.
    """
    xs = np.linspace(0, 1, n_grid)
    e = C2.diag([1, 0])
    recovered = []
    for x in xs:
        s = state_from_x(float(x))
        v = is_state(s.phi, tol)
        if not v:
            return Verdict(False, v.margin, {"x": float(x), "state_check": v.to_json()})
        recovered.append(apply(s.phi, e).blocks[0][0, 0].real)
    recovered = np.array(recovered)
    inverse_err = float(np.abs(recovered - xs).max())
    gaps = np.diff(np.sort(recovered))
    injective = bool(np.all(gaps > 0))
    ok = injective and inverse_err <= tol.abs
    return Verdict(ok, float(gaps.min()) if gaps.size else 0.0,
                   None if ok else {"inverse_error": inverse_err},
                   details={"grid": n_grid, "inverse_error": inverse_err})

"""Named verification bundles: the worked examples run end to end.

Each bundle returns a :class:`Bundle` of named verdicts plus wall times.
The command line runs them through ``verify <name>``.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .algebra import DEFAULT_TOL, Algebra, Tolerance, matrix_algebra, operator_norm
from .constructions import (
    NotMIUError,
    check_equaliser_factorization,
    direct_sum,
    equaliser,
)
from .gelfand import (
    c2_factorization,
    c3_witness,
    check_c_initial,
    check_stat_c2,
    random_c2_sigma,
)
from .maps import (
    apply,
    check_involutive,
    check_multiplicative,
    check_unital,
    compose,
    covariance_preservation_test,
    identity_map,
    map_from_function,
)
from .verdict import Verdict
from .zoo import depolarizing, pinching, random_cpu_map, random_unitary, unitary_conjugation

COVARIANCE_TOL = 1e-10
VIOLATION_FLOOR = 1e-3


@dataclass
class Bundle:
    verdicts: dict[str, Verdict] = field(default_factory=dict)
    timings: dict[str, float] = field(default_factory=dict)
    data: dict = field(default_factory=dict)

    def run(self, name: str, fn: Callable[[], Verdict]) -> Verdict:
        t0 = time.perf_counter()
        v = fn()
        self.timings[name] = time.perf_counter() - t0
        self.verdicts[name] = v
        return v

    @property
    def passed(self) -> bool:
        return all(self.verdicts.values())


def parse_algebra(text: str) -> Algebra:
    """``"M2+M3"``, ``"C3"``, ``"M2+C"`` and so on."""
    dims = []
    for tok in text.replace(" ", "").split("+"):
        if tok.startswith("M") and tok[1:].isdigit() and int(tok[1:]) > 0:
            dims.append(int(tok[1:]))
        elif tok == "C":
            dims.append(1)
        elif tok.startswith("C") and tok[1:].isdigit() and int(tok[1:]) > 0:
            dims.extend([1] * int(tok[1:]))
        else:
            raise ValueError(f"cannot parse algebra {text!r}")
    return Algebra(tuple(dims))


# examples ----------------------------------------------------------------------

def verify_c(tol: Tolerance = DEFAULT_TOL, **_) -> Bundle:
    b = Bundle()
    for label in ("C", "M2", "M2+C", "C3", "M3+M2"):
        A = parse_algebra(label)
        b.run(f"unique PU map C -> {label} is MIU", lambda A=A: check_c_initial(A, tol))
    return b


def verify_c2(codomain: str = "M2+M3", degree: int = 8, trials: int = 100, seed: int = 42,
              tol: Tolerance = DEFAULT_TOL, **_) -> Bundle:
    """Random PU ``sigma: C^2 -> A`` factor through ``C[0,1]`` by functional calculus."""
    A = parse_algebra(codomain)
    rng = np.random.default_rng(seed)
    worst = {"factorization": 0.0, "multiplicativity": 0.0, "unit": 0.0,
             "involution": 0.0, "uniqueness": 0.0}
    failures = []
    t0 = time.perf_counter()
    for t in range(trials):
        fac = c2_factorization(random_c2_sigma(A, rng), degree=degree, tol=tol)
        for k in worst:
            worst[k] = max(worst[k], fac.residuals[k])
        if not fac.verdict:
            failures.append({"trial": t, **fac.residuals})
    elapsed = time.perf_counter() - t0
    b = Bundle(data={"codomain": codomain, "degree": degree, "trials": trials, "max": worst})
    limits = {"factorization": 1e-9, "multiplicativity": 1e-8, "unit": 1e-9, "involution": 1e-9}
    for k, lim in limits.items():
        r = worst[k]
        b.verdicts[f"{k} residual < {lim:g}"] = Verdict(r < lim, lim - r,
                                                       None if r < lim else {"residual": r},
                                                       details={"max_residual": r})
        b.timings[f"{k} residual < {lim:g}"] = elapsed / len(limits)
    b.verdicts["every trial passes its own bundle"] = Verdict(not failures, 0.0, failures or None)
    b.timings["every trial passes its own bundle"] = 0.0
    return b


def verify_c3(tol: Tolerance = Tolerance(1e-12, 0.0), **_) -> Bundle:
    t0 = time.perf_counter()
    w = c3_witness(tol)
    elapsed = time.perf_counter() - t0
    b = Bundle(verdicts=dict(w.report), data={
        "a1": w.a1, "a2": w.a2, "a3": w.a3,
        "commutator_norm": w.report["noncommuting"].details["norm"]})
    b.timings = {k: elapsed / len(w.report) for k in w.report}
    return b


def verify_covariance(channel: str = "unitary", seed: int = 42, **_) -> Bundle:
    """Sample ``Cov_phi(Ta, Tb)`` against ``Cov_{phi T}(a, b)`` over 1000 triples.

    ``unitary``: an MIU conjugation on ``M3`` must preserve covariance.
    ``depolarizing``: the half-mixing channel on ``M2`` must be caught, so
    the check passes when a violation above ``1e-3`` is found.
    """
    b = Bundle()
    tol = Tolerance(COVARIANCE_TOL, 0.0)
    if channel == "unitary":
        T = unitary_conjugation(random_unitary(3, np.random.default_rng(seed)))
        b.run("covariance preserved by unitary conjugation",
              lambda: covariance_preservation_test(T, 50, 20, seed, tol))
    elif channel == "depolarizing":
        T = depolarizing(2, 0.5)

        def detect() -> Verdict:
            v = covariance_preservation_test(T, 50, 20, seed, tol)
            found = v.margin > VIOLATION_FLOOR
            return Verdict(found, v.margin - VIOLATION_FLOOR,
                           None if found else {"max_deviation": v.margin}, method="sampled",
                           details={"expected": "violation", "violation": v.witness,
                                    "max_deviation": v.margin})

        b.run("covariance violation detected for depolarizing", detect)
    else:
        raise ValueError(f"unknown channel {channel!r} (unitary, depolarizing)")
    return b


def verify_stat_c2(tol: Tolerance = DEFAULT_TOL, **_) -> Bundle:
    b = Bundle()
    b.run("states on C^2 are exactly the xbar", lambda: check_stat_c2(101, tol))
    return b


def verify_product(seed: int = 42, tol: Tolerance = DEFAULT_TOL, **_) -> Bundle:
    """``M2 (+) C (+) M3``: MIU projections, tupling, and the sup norm."""
    rng = np.random.default_rng(seed)
    parts = [matrix_algebra(2), Algebra((1,)), matrix_algebra(3)]
    S = direct_sum(parts)
    b = Bundle(data={"algebra": S.algebra})

    def projections_miu() -> Verdict:
        bad = [k for k, p in enumerate(S.projections)
               if not (check_unital(p, tol) and check_involutive(p, tol)
                       and check_multiplicative(p, tol))]
        return Verdict(not bad, 0.0, bad or None)

    def tupling() -> Verdict:
        dom = Algebra((2, 1))
        maps = [random_cpu_map(dom, A, rng) for A in parts]
        t = S.tuple_maps(maps)
        err = max(float(np.abs(compose(p, t).matrix - f.matrix).max())
                  for p, f in zip(S.projections, maps))
        # uniqueness: tupling the projections gives the identity
        ident = S.tuple_maps(list(S.projections))
        err_id = float(np.abs(ident.matrix - identity_map(S.algebra).matrix).max())
        ok = err <= tol.abs and err_id == 0.0
        return Verdict(ok, tol.abs - err, None if ok else {"residual": err, "identity": err_id})

    def sup_norm() -> Verdict:
        worst = 0.0
        for _ in range(200):
            xs = [A.random(rng) for A in parts]
            whole = S.element(xs)
            gap = abs(operator_norm(whole) - max(operator_norm(x) for x in xs))
            worst = max(worst, gap)
        return Verdict(worst <= 1e-12, 1e-12 - worst, None if worst <= 1e-12 else {"gap": worst},
                       method="sampled", details={"samples": 200})

    b.run("projections are MIU", projections_miu)
    b.run("tupling commutes and is unique", tupling)
    b.run("norm is the max of the summand norms", sup_norm)
    return b


def verify_equaliser(seed: int = 42, tol: Tolerance = DEFAULT_TOL, **_) -> Bundle:
    """``f(a) = (a, a)`` and ``g(a) = (a, u* a u)`` on ``M2`` with ``u`` diagonal.

    The equaliser is the commutant of ``u``, the diagonal matrices.  The
    pinching ``d`` lands there, so it factors through the inclusion.
    """
    M2 = matrix_algebra(2)
    M22 = Algebra((2, 2))
    u = np.diag([1.0, np.exp(0.7j)])
    f = map_from_function(M2, M22, lambda a: M22.element([a.blocks[0], a.blocks[0]]), "f")
    g = map_from_function(M2, M22, lambda a: M22.element(
        [a.blocks[0], u.conj().T @ a.blocks[0] @ u]), "g")
    b = Bundle()
    view = equaliser(f, g, tol)
    b.data["dimension"] = view.dim

    def equalises() -> Verdict:
        incl = view.inclusion
        gap = float(np.abs(f.matrix @ incl - g.matrix @ incl).max())
        return Verdict(gap <= 1e-12, 1e-12 - gap, None if gap <= 1e-12 else {"residual": gap})

    def refuses_pu() -> Verdict:
        try:
            equaliser(f, compose(g, pinching(2)), tol)
        except NotMIUError as exc:
            return Verdict(True, details={"refusal": str(exc)})
        return Verdict(False, witness="PU map accepted")

    b.run("equaliser is the diagonal subalgebra (dim 2)",
          lambda: Verdict(view.dim == 2, 0.0, None if view.dim == 2 else {"dim": view.dim}))
    b.run("span closed under * and products", view.closure_check)
    b.run("f . e = g . e", equalises)
    b.run("PU map with f.d = g.d factors through e",
          lambda: check_equaliser_factorization(view, f, g, pinching(2)))
    b.run("non-MIU input refused", refuses_pu)
    return b


EXAMPLES: dict[str, Callable[..., Bundle]] = {
    "c": verify_c,
    "c2": verify_c2,
    "c3": verify_c3,
    "covariance": verify_covariance,
    "stat-c2": verify_stat_c2,
    "product": verify_product,
    "equaliser": verify_equaliser,
}

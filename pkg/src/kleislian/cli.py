"""Command line front end.

Every command prints one JSON report (or a table with ``--pretty``) and
exits 0 when all verdicts pass, 1 when any fails, 2 on bad input.  Wall
times and the timestamp live under ``"timing"`` so that two runs with the
same seed agree byte for byte everywhere else.

    kleislian algebra check element.json
    kleislian map classify transpose_m2.json
    kleislian map choi depolarizing.json
    kleislian verify c2 --codomain M2+M3 --degree 8 --trials 100
    kleislian category laws powerset --max-size 2
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from dataclasses import dataclass, field
from datetime import datetime, timezone
from typing import Callable

import numpy as np

from .algebra import (
    Algebra,
    Element,
    Tolerance,
    is_normal,
    is_positive_element,
    is_self_adjoint,
    jordan_decompose,
    operator_norm,
    order_unit_norm,
    spectrum,
)
from .bundles import EXAMPLES
from .io import FormatError, algebra_from_json, element_from_json, map_from_json, read_json
from .kleisli import KleisliError, build_instance, run_law_suite
from .maps import ShapeMismatchError, check_completely_positive, choi, classify
from .verdict import Verdict, jsonable

INPUT_ERRORS = (FormatError, ShapeMismatchError, KleisliError, OSError, ValueError)


@dataclass
class RunReport:
    command: list[str]
    seed: int
    tolerance: float
    verdicts: dict[str, Verdict] = field(default_factory=dict)
    timings: dict[str, float] = field(default_factory=dict)
    sections: dict = field(default_factory=dict)

    def run(self, name: str, fn: Callable[[], Verdict]) -> Verdict:
        t0 = time.perf_counter()
        v = fn()
        self.timings[name] = time.perf_counter() - t0
        self.verdicts[name] = v
        return v

    @property
    def passed(self) -> bool:
        return all(self.verdicts.values())

    @property
    def exit_code(self) -> int:
        return 0 if self.passed else 1

    def to_json(self, timing: bool = True) -> dict:
        out = {
            "command": " ".join(self.command),
            "seed": self.seed,
            "tolerance": self.tolerance,
            "passed": self.passed,
            "verdicts": [{"name": k, **self.verdicts[k].to_json()} for k in sorted(self.verdicts)],
        }
        out.update(jsonable(self.sections))
        if timing:
            out["timing"] = {
                "timestamp": datetime.now(timezone.utc).isoformat(timespec="seconds"),
                "seconds": {k: round(v, 6) for k, v in sorted(self.timings.items())},
            }
        return out

    def to_table(self) -> str:
        width = max((len(k) for k in self.verdicts), default=10)
        lines = [f"{' '.join(self.command)}   (seed {self.seed}, tol {self.tolerance:g})", ""]
        for k in sorted(self.verdicts):
            v = self.verdicts[k]
            mark = "PASS" if v else "FAIL"
            lines.append(f"{mark}  {k:<{width}}  margin {v.margin:+.3e}  "
                         f"{self.timings.get(k, 0.0):7.3f}s  {v.method}")
        for name, section in self.sections.items():
            lines.append("")
            lines.append(f"{name}:")
            if isinstance(section, dict):
                for key, val in section.items():
                    lines.append(f"  {key}: {_short(val)}")
            else:
                lines.append(f"  {_short(section)}")
        lines.append("")
        lines.append("ALL PASS" if self.passed else "SOME CHECKS FAILED")
        return "\n".join(lines)


def _short(val) -> str:
    if isinstance(val, Verdict):
        return "pass" if val else f"fail {json.dumps(jsonable(val.witness))[:200]}"
    return json.dumps(jsonable(val))[:200]


# commands ------------------------------------------------------------------------

def cmd_algebra_check(args, report: RunReport):
    data = read_json(args.file)
    tol = report_tol(report)
    rng = np.random.default_rng(report.seed)
    if isinstance(data, dict) and "algebra" in data:
        a = element_from_json(data)
        _check_element(a, tol, report)
    else:
        A = algebra_from_json(data)
        _check_algebra(A, tol, rng, report)


def _check_algebra(A: Algebra, tol: Tolerance, rng, report: RunReport):
    report.sections["algebra"] = {"blocks": list(A.block_dims), "dim": A.dim,
                                  "commutative": A.commutative}
    samples = [A.random(rng) for _ in range(200)]

    def cstar() -> Verdict:
        worst = max(abs(operator_norm(a.star() @ a) - operator_norm(a) ** 2)
                    / max(1.0, operator_norm(a) ** 2) for a in samples)
        return Verdict(worst <= tol.abs, tol.abs - worst, method="sampled",
                       details={"samples": len(samples), "max_relative_gap": worst})

    def unit() -> Verdict:
        one = A.unit()
        worst = max(max(np.abs((one @ e - e).to_vector()).max(),
                        np.abs((e @ one - e).to_vector()).max()) for e in A.basis())
        return Verdict(worst == 0.0, 0.0, None if worst == 0.0 else {"residual": worst})

    def involution() -> Verdict:
        worst = 0.0
        for a, b in zip(samples[:100], samples[100:]):
            worst = max(worst, float(np.abs(((a @ b).star() - b.star() @ a.star()).to_vector()).max()))
        return Verdict(worst <= tol.abs, tol.abs - worst, method="sampled",
                       details={"max_residual": worst})

    report.run("unit acts as identity on the basis", unit)
    report.run("C*-identity |a*a| = |a|^2", cstar)
    report.run("(ab)* = b* a*", involution)


def _check_element(a: Element, tol: Tolerance, report: RunReport):
    norm = operator_norm(a)
    info = {"algebra": list(a.parent.block_dims), "norm": norm,
            "self_adjoint": is_self_adjoint(a, tol), "normal": is_normal(a, tol)}
    if info["normal"]:
        info["spectrum"] = [[complex(z), k] for z, k in spectrum(a, tol)]
    if info["self_adjoint"]:
        info["order_unit_norm"] = order_unit_norm(a, tol)
    info["positive"] = is_positive_element(a, tol)
    report.sections["element"] = info

    def cstar() -> Verdict:
        gap = abs(operator_norm(a.star() @ a) - norm ** 2)
        bound = tol.bound(norm ** 2)
        return Verdict(gap <= bound, bound - gap, details={"gap": gap})

    def jordan() -> Verdict:
        c1, c2, c3, c4 = jordan_decompose(a)
        back = c1 - c2 + c3 * 1j - c4 * 1j
        err = float(np.abs((back - a).to_vector()).max())
        pos = all(is_positive_element(c, tol) for c in (c1, c2, c3, c4))
        bound = tol.bound(norm)
        ok = err <= bound and pos
        return Verdict(ok, bound - err, None if ok else {"reassembly": err, "parts_positive": pos})

    report.run("C*-identity |a*a| = |a|^2", cstar)
    report.run("Jordan decomposition reassembles", jordan)


def _load_map(path):
    return map_from_json(read_json(path))


def cmd_map_classify(args, report: RunReport):
    f = _load_map(args.file)
    tol = report_tol(report)
    mc = classify(f, n_samples=args.samples, seed=report.seed, tol=tol)
    data = choi(f)
    report.sections["map"] = {"name": f.name, "dom": list(f.dom.block_dims),
                              "cod": list(f.cod.block_dims)}
    report.sections["classification"] = mc.to_json()
    report.sections["choi_eigenvalues"] = [np.sort(e).tolist() for e in data.eigenvalues]
    report.run("classification coherent (MIU => CP => P)", mc.coherent)
    report.run("Choi matrices Hermitian", lambda: _choi_hermitian(data, tol))


def cmd_map_choi(args, report: RunReport):
    f = _load_map(args.file)
    tol = report_tol(report)
    data = choi(f)
    cp = check_completely_positive(f, tol)
    report.sections["choi"] = {
        "eigenvalues": [np.sort(e).tolist() for e in data.eigenvalues],
        "min_eigenvalue": data.min_eigenvalue,
        "completely_positive": cp,
    }
    report.run("Choi matrices Hermitian", lambda: _choi_hermitian(data, tol))


def _choi_hermitian(data, tol: Tolerance) -> Verdict:
    worst = max((float(np.abs(m - m.conj().T).max()) for m in data.matrices), default=0.0)
    return Verdict(worst <= tol.abs, tol.abs - worst, None if worst <= tol.abs else {"gap": worst})


def cmd_verify(args, report: RunReport):
    if args.example not in EXAMPLES:
        raise ValueError(f"unknown example {args.example!r}; choose from {sorted(EXAMPLES)}")
    kwargs = {"seed": report.seed}
    if args.tol is not None:
        kwargs["tol"] = report_tol(report)
    for key in ("degree", "codomain", "trials", "channel"):
        val = getattr(args, key)
        if val is not None:
            kwargs[key] = val
    bundle = EXAMPLES[args.example](**kwargs)
    report.verdicts.update(bundle.verdicts)
    report.timings.update(bundle.timings)
    if bundle.data:
        report.sections["data"] = bundle.data


def cmd_category_laws(args, report: RunReport):
    adj = build_instance(args.instance, args.max_size)
    result = run_law_suite(adj)
    report.verdicts.update(result["verdicts"])
    report.timings.update(result["timings"])
    report.sections["instance"] = {"name": args.instance, "max_size": args.max_size}
    report.sections["facts"] = result["facts"]
    report.sections["skipped"] = result["skipped"]


def report_tol(report: RunReport) -> Tolerance:
    return Tolerance(report.tolerance, report.tolerance)


# parser ----------------------------------------------------------------------------

def _seed_default() -> int:
    env = os.environ.get("WORKBENCH_SEED")
    if env is None:
        return 42
    try:
        return int(env)
    except ValueError:
        raise SystemExit(f"WORKBENCH_SEED must be an integer, got {env!r}") from None


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--tol", type=float, default=None, help="absolute tolerance (default 1e-9)")
    common.add_argument("--seed", type=int, default=None,
                        help="RNG seed (default $WORKBENCH_SEED, else 42)")
    common.add_argument("--pretty", action="store_true", help="human-readable table")

    p = argparse.ArgumentParser(prog="kleislian", description=__doc__.split("\n\n")[0])
    groups = p.add_subparsers(dest="group", required=True)

    alg = groups.add_parser("algebra").add_subparsers(dest="action", required=True)
    a = alg.add_parser("check", parents=[common], help="check an algebra.json or element.json")
    a.add_argument("file")
    a.set_defaults(func=cmd_algebra_check)

    mp = groups.add_parser("map").add_subparsers(dest="action", required=True)
    m = mp.add_parser("classify", parents=[common], help="flags, labels and Choi spectrum")
    m.add_argument("file")
    m.add_argument("--samples", type=int, default=1000, help="positivity samples")
    m.set_defaults(func=cmd_map_classify)
    m = mp.add_parser("choi", parents=[common], help="Choi matrix eigenvalues")
    m.add_argument("file")
    m.set_defaults(func=cmd_map_choi)

    v = groups.add_parser("verify", parents=[common], help="run a worked example")
    v.add_argument("example", help=", ".join(EXAMPLES))
    v.add_argument("--degree", type=int)
    v.add_argument("--codomain")
    v.add_argument("--trials", type=int)
    v.add_argument("--channel", choices=["unitary", "depolarizing"])
    v.set_defaults(func=cmd_verify)

    cat = groups.add_parser("category").add_subparsers(dest="action", required=True)
    c = cat.add_parser("laws", parents=[common], help="exhaustive law suite for an instance")
    c.add_argument("instance")
    c.add_argument("--max-size", type=int, default=2)
    c.set_defaults(func=cmd_category_laws)
    return p


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    args = build_parser().parse_args(argv)
    seed = args.seed if args.seed is not None else _seed_default()
    tol = args.tol if args.tol is not None else 1e-9
    report = RunReport(command=argv, seed=seed, tolerance=tol)
    try:
        args.func(args, report)
    except INPUT_ERRORS as exc:
        err = {"command": " ".join(argv), "error": type(exc).__name__, "message": str(exc)}
        if isinstance(exc, KleisliError):
            err["witness"] = jsonable(exc.witness)
        print(json.dumps(err, indent=None if not args.pretty else 2), file=sys.stderr)
        return 2
    if args.pretty:
        print(report.to_table())
    else:
        print(json.dumps(report.to_json(), indent=1))
    return report.exit_code


if __name__ == "__main__":
    sys.exit(main())

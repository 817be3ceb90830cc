"""Outcome records shared by every checker."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

import numpy as np


@dataclass(frozen=True)
class Verdict:
    """Pass/fail plus a signed numeric certificate.

    ``margin`` is positive (or zero) on success for inequality-style checks,
    e.g. the smallest eigenvalue in a positivity test.  A failed verdict
    carries a ``witness`` from which the violated inequality can be replayed.
    ``method`` is ``"exact"`` or ``"sampled"``; sampled passes only mean that
    no counterexample was found.
    """

    passed: bool
    margin: float = 0.0
    witness: Any = None
    method: str = "exact"
    details: dict = field(default_factory=dict)

    def __bool__(self) -> bool:
        return bool(self.passed)

    def to_json(self) -> dict:
        out = {
            "passed": bool(self.passed),
            "margin": jsonable(self.margin),
            "witness": jsonable(self.witness),
            "method": self.method,
        }
        if self.details:
            out["details"] = jsonable(self.details)
        return out


def jsonable(obj: Any) -> Any:
    """Convert numpy / complex payloads into plain JSON values.

    Complex numbers become ``[re, im]`` pairs, matching the element file format.
    """
    # local import: algebra imports this module
    from .algebra import Element, Algebra

    if obj is None or isinstance(obj, (bool, str)):
        return obj
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        return float(obj)
    if isinstance(obj, (complex, np.complexfloating)):
        return [float(obj.real), float(obj.imag)]
    if isinstance(obj, Element):
        from .io import element_to_json

        return element_to_json(obj)
    if isinstance(obj, Algebra):
        from .io import algebra_to_json

        return algebra_to_json(obj)
    if isinstance(obj, Verdict):
        return obj.to_json()
    if isinstance(obj, np.ndarray):
        if np.iscomplexobj(obj):
            return [jsonable(x) for x in obj.tolist()]
        return obj.tolist()
    if isinstance(obj, dict):
        return {str(k): jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple, frozenset, set)):
        items = sorted(obj, key=repr) if isinstance(obj, (set, frozenset)) else obj
        return [jsonable(x) for x in items]
    return repr(obj)

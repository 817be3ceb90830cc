"""JSON formats for algebras, elements and maps.

* algebra: ``{"blocks": [n_1, ..., n_k]}``
* element: ``{"algebra": <algebra>, "blocks": [[[re, im], ...], ...]}``, one
  flat row-major list of ``[re, im]`` pairs per block.  Nested rows and bare
  real numbers are accepted on input.
* map: ``{"dom": <algebra>, "cod": <algebra>, "basis_images": [<element>, ...]}``
  in matrix-unit order (block-major, row-major within a block).  An image
  may omit ``"algebra"`` or be given as its bare block list.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any

import numpy as np

from .algebra import Algebra, Element
from .maps import LinearMap, ShapeMismatchError, make_map


class FormatError(ValueError):
    """Input that does not match one of the JSON formats."""


def algebra_to_json(A: Algebra) -> dict:
    return {"blocks": list(A.block_dims)}


def algebra_from_json(obj: Any) -> Algebra:
    if isinstance(obj, dict):
        obj = obj.get("blocks")
    if not isinstance(obj, list) or not all(isinstance(n, int) and not isinstance(n, bool)
                                            for n in obj):
        raise FormatError("algebra must be {'blocks': [int, ...]}")
    if any(n < 1 for n in obj):
        raise FormatError("block sizes must be positive")
    return Algebra(tuple(obj))


def _complex(x) -> complex:
    if isinstance(x, (int, float)) and not isinstance(x, bool):
        return complex(x)
    if isinstance(x, list) and len(x) == 2 and all(
            isinstance(t, (int, float)) and not isinstance(t, bool) for t in x):
        return complex(x[0], x[1])
    raise FormatError(f"expected a number or an [re, im] pair, got {x!r}")


def _block(data, n: int) -> np.ndarray:
    if not isinstance(data, list):
        raise FormatError("a block must be a list")
    if len(data) == n and n > 0 and all(
            isinstance(r, list) and len(r) == n for r in data):
        flat = [x for r in data for x in r]  # nested rows
    else:
        flat = data
    if len(flat) != n * n:
        raise FormatError(f"block of size {n} needs {n * n} entries, got {len(flat)}")
    return np.array([_complex(x) for x in flat], dtype=complex).reshape(n, n)


def element_to_json(a: Element) -> dict:
    return {"algebra": algebra_to_json(a.parent),
            "blocks": [[[float(z.real), float(z.imag)] for z in b.reshape(-1)] for b in a.blocks]}


def element_from_json(obj: Any, algebra: Algebra | None = None) -> Element:
    if isinstance(obj, list):
        obj = {"blocks": obj}
    if not isinstance(obj, dict) or "blocks" not in obj:
        raise FormatError("element must be an object with 'blocks'")
    A = algebra_from_json(obj["algebra"]) if "algebra" in obj else algebra
    if A is None:
        raise FormatError("element has no algebra")
    if algebra is not None and A != algebra:
        raise ShapeMismatchError(f"element lives in {A}, expected {algebra}")
    blocks = obj["blocks"]
    if not isinstance(blocks, list) or len(blocks) != len(A.block_dims):
        raise FormatError(f"{A} needs {len(A.block_dims)} blocks")
    return A.element([_block(b, n) for b, n in zip(blocks, A.block_dims)])


def map_to_json(f: LinearMap) -> dict:
    return {"name": f.name, "dom": algebra_to_json(f.dom), "cod": algebra_to_json(f.cod),
            "basis_images": [element_to_json(e) for e in f.basis_images]}


def map_from_json(obj: Any) -> LinearMap:
    if not isinstance(obj, dict) or not {"dom", "cod", "basis_images"} <= obj.keys():
        raise FormatError("map needs 'dom', 'cod' and 'basis_images'")
    dom, cod = algebra_from_json(obj["dom"]), algebra_from_json(obj["cod"])
    images = obj["basis_images"]
    if not isinstance(images, list) or len(images) != dom.dim:
        raise ShapeMismatchError(f"{dom} has {dom.dim} basis elements, got "
                                 f"{len(images) if isinstance(images, list) else 'none'}")
    return make_map(dom, cod, [element_from_json(e, cod) for e in images], obj.get("name"))


def read_json(path) -> Any:
    try:
        return json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise FormatError(f"{path}: {exc}") from exc


def load_map(path) -> LinearMap:
    return map_from_json(read_json(path))


def save_map(f: LinearMap, path) -> None:
    Path(path).write_text(json.dumps(map_to_json(f), indent=1) + "\n")


def load_element(path) -> Element:
    return element_from_json(read_json(path))


def load_algebra(path) -> Algebra:
    return algebra_from_json(read_json(path))

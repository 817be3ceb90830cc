"""Regenerate the JSON inputs under demos/data used by the command line examples.

Run:  python demos/make_data.py
"""

import json
from pathlib import Path

import numpy as np

from kleislian.algebra import Algebra
from kleislian.io import algebra_to_json, element_to_json, save_map
from kleislian.zoo import depolarizing, transpose_map, unitary_conjugation

out = Path(__file__).resolve().parent / "data"
out.mkdir(exist_ok=True)

save_map(transpose_map(2), out / "transpose_m2.json")
hadamard = np.array([[1, 1], [1, -1]]) / np.sqrt(2)
save_map(unitary_conjugation(hadamard, "hadamard_conjugation"), out / "unitary_conjugation.json")
save_map(depolarizing(2, 0.5), out / "depolarizing.json")

A = Algebra((2, 1))
(out / "m2_plus_c.json").write_text(json.dumps(algebra_to_json(A)))
a = A.element([[[2, 1j], [-1j, 1]], [[-0.5]]])
(out / "element.json").write_text(json.dumps(element_to_json(a), indent=1))
print(f"wrote {sorted(p.name for p in out.iterdir())}")

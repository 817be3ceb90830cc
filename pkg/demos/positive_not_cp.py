"""Transpose on M2: positive, unital, and still not completely positive.

Run:  python demos/positive_not_cp.py
"""

import numpy as np

from kleislian.algebra import is_positive_element
from kleislian.maps import amplify, apply, check_completely_positive, choi, classify
from kleislian.zoo import transpose_map

T = transpose_map(2)
mc = classify(T)
print(f"labels of {T.name}: {mc.labels}")
print(f"positivity checked by {mc.positive.method} search, margin {mc.positive.margin:.3g}")

# The Choi matrix sum_ij E_ij (x) T(E_ij) is the swap operator.
data = choi(T)
print("Choi eigenvalues:", np.round(data.eigenvalues[0], 12))
cp = check_completely_positive(T)
print(f"complete positivity: {'yes' if cp else 'no'}, witness vector {np.round(cp.witness['vector'], 3)}")

# The same obstruction seen through the second amplification: the maximally
# entangled projector is positive, its image is not.
T2 = amplify(T, 2)
omega = np.array([1, 0, 0, 1]) / np.sqrt(2)
P = T2.dom.element([np.outer(omega, omega)])
image = apply(T2, P)
print(f"P positive: {bool(is_positive_element(P))}")
print(f"(M2 T)(P) eigenvalues: {np.round(np.linalg.eigvalsh(image.to_matrix()), 12)}")

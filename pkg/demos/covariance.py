"""Covariance is preserved by unital *-homomorphisms and broken by noise.

For a state phi and a PU map T the two sides
    Cov_phi(Ta, Tb)   and   Cov_{phi T}(a, b)
agree for every phi, a and b exactly when T is multiplicative.

Run:  python demos/covariance.py
"""

import numpy as np

from kleislian.maps import covariance_preservation_test
from kleislian.zoo import depolarizing, pinching, random_unitary, unitary_conjugation

maps = [
    unitary_conjugation(random_unitary(3, np.random.default_rng(1))),
    depolarizing(2, 0.5),
    pinching(3),
]
for T in maps:
    v = covariance_preservation_test(T, n_states=50, n_pairs=20, seed=42)
    verdict = "preserved" if v else "violated"
    print(f"{T.name:<18} {verdict:<10} max deviation {v.margin:.3e} over {v.details['samples']} samples")

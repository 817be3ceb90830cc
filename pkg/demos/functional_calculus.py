"""PU maps out of C^2 factor through polynomials on [0, 1]; out of C^3 they need not.

A PU map sigma: C^2 -> A is fixed by a = sigma(1, 0) with 0 <= a <= 1.
Functional calculus p -> p(a) extends it multiplicatively.  Three positive
matrices summing to one that do not commute show that the analogous
statement fails for C^3.

Run:  python demos/functional_calculus.py
"""

import numpy as np

from kleislian.algebra import Algebra
from kleislian.gelfand import Polynomial, c2_factorization, c3_witness, random_c2_sigma

rng = np.random.default_rng(0)
A = Algebra((2, 3))
fac = c2_factorization(random_c2_sigma(A, rng))
print(f"sigma: C^2 -> {A}")
for name, r in fac.residuals.items():
    print(f"  {name:<18} residual {r:.2e}")

p = Polynomial((0.5, -1.0, 0.0, 2.0))
print("sigma_bar(0.5 - x + 2 x^3), first block:")
print(np.round(fac.sigma_bar(p).blocks[0], 6))

w = c3_witness()
print("\nC^3 witness")
print("  a1 a2 - a2 a1 =", np.round((w.a1 @ w.a2 - w.a2 @ w.a1).blocks[0], 6).tolist())
for name, v in w.report.items():
    print(f"  {name:<22} {'ok' if v else 'FAILED'}")

"""Classify every map in the built-in zoo and print the label lattice.

The labels form a chain, MIU implies CPU implies PU implies PsU, and the
table shows where each example lands.

Run:  python demos/classify_zoo.py
"""

from kleislian.maps import classify
from kleislian.zoo import full_zoo

print(f"{'map':<28} {'domain':<12} {'codomain':<12} labels")
for f in full_zoo():
    mc = classify(f, n_samples=500)
    assert mc.coherent()
    print(f"{f.name or '?':<28} {str(f.dom):<12} {str(f.cod):<12} {', '.join(mc.labels)}")

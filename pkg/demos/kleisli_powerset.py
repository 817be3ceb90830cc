"""The powerset monad on small finite sets and its Kleisli category.

Functions X -> P(Y) compose by union; the comparison functor L sends each
one to the relation it describes.  Because the left adjoint (graph of a
function) is the identity on objects, L is an isomorphism.  The pointed-set
instance with extra objects shows the opposite case.

Run:  python demos/kleisli_powerset.py
"""

from kleislian.kleisli import (
    FinSet,
    build_kleisli,
    build_multimap_instance,
    build_option_neg_instance,
    run_law_suite,
)

kd = build_kleisli(build_multimap_instance(2))
two = FinSet.range(2)
homs = kd.Kl.homs(two, two)
print(f"Kleisli arrows {{0,1}} -> {{0,1}}: {len(homs)}")
f, g = homs[5], homs[9]
print(f"f = {f}\ng = {g}\ng after f = {kd.Kl.compose(g, f)}")
print(f"L f as a relation: {kd.L(f)}")

for adj in (build_multimap_instance(2), build_option_neg_instance(1)):
    out = run_law_suite(adj)
    failed = [k for k, v in out["verdicts"].items() if not v]
    print(f"\n{adj.name}: {len(out['verdicts'])} law verdicts, {len(failed)} failed")
    for name, fact in out["facts"].items():
        extra = "" if fact else f"  {fact.witness}"
        print(f"  {name:<24} {bool(fact)}{extra}")

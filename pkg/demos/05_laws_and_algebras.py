"""Law checking: monads, monad maps, truth-value algebras, and the
lifting conditions that tie modalities to their structure classes.

Everything here is an executable check with a concrete witness on
failure, so a corrupted structure is not just rejected but explained.
"""

from fractions import Fraction as F

from wpbench import (
    FinSet,
    KleisliArrow,
    MonadKind,
    builtin_modality,
    check_algebra_laws,
    check_monad_laws,
    check_monad_map_laws,
    lifting_check,
    monad_map_to_algebra,
    sigma_spec,
    witness_is_sound,
)
from wpbench.modalities import Modality

A = FinSet("A", ["a0"])
B = FinSet("B", ["b0", "b1"])

print("== monad laws ==")
for kind in MonadKind:
    verdict = check_monad_laws(kind, [A, B], sample_count=40)
    print(f"  {kind.value:15s} {verdict.describe()}")

print("\n== a corrupted composition is caught with a witness ==")


def intersect_compose(f, g):
    # union replaced by intersection: right unit fails on two-point rows
    rows = []
    for x in f.source.elements:
        row = None
        for y in f.row(x):
            row = g.row(y) if row is None else (row & g.row(y))
        rows.append(row if row is not None else frozenset())
    return KleisliArrow(f.kind, f.source, g.target, rows)


verdict = check_monad_laws("powerset", [A, B], compose=intersect_compose)
print(" ", verdict.describe())
print("  witness replays to a strict violation:", witness_is_sound(intersect_compose, verdict.witness))

print("\n== the join functional is a monad map; its algebra is join ==")
sigma = sigma_spec()
print(" ", "laws:", check_monad_map_laws(sigma, [A, B]).describe())
alg = monad_map_to_algebra(sigma)
for s in (frozenset(), frozenset({0}), frozenset({0, 1})):
    print(f"  algebra({set(s) or '{}'}) = {alg.apply_algebra(s)}")

print("\n== algebra laws and a corrupted modality ==")
print("  total:", check_algebra_laws(builtin_modality("total")).describe())
bad = Modality(
    "sum_of_squares",
    MonadKind.SUBDIST,
    "rational",
    None,
    lambda p, f: sum((q * f(x) ** 2 for x, q in p.items()), F(0)),
)
print("  squared:", check_algebra_laws(bad).describe())

print("\n== lifting conditions pin modalities to their classes ==")
for name in ("diamond", "box", "total", "partial", "convex"):
    mod = builtin_modality(name)
    verdict = lifting_check(mod, mod.structure_class, n_max=2, samples_per_n=40)
    print(f"  {name:8s} as {mod.structure_class:11s} {verdict.status}")
mismatch = lifting_check(builtin_modality("diamond"), "cl_meet", n_max=2)
print(f"  diamond  as cl_meet     {mismatch.status}")
print("   ", mismatch.witness.describe())

"""Relations, weakest preconditions, and the may/must healthiness story.

A binary relation R between finite sets X and Y is a nondeterministic
computation.  The may-semantics asks "can some successor satisfy the
postcondition?"; the must-semantics asks "do all successors satisfy it?".
The punchline: the transformers you can get this way are exactly the
join-preserving (resp. meet-preserving) maps, and the relation can be
read back off the transformer.
"""

from wpbench import (
    BooleanTransformer,
    FinSet,
    KleisliArrow,
    check_join_preserving,
    check_meet_preserving,
    synth_relation,
    wp_box,
    wp_diamond,
)

X = FinSet("X", ["x0", "x1"])
Y = FinSet("Y", ["y0", "y1"])

R = KleisliArrow("powerset", X, Y, {"x0": ["y0", "y1"], "x1": ["y1"]})
print("computation R:")
for x in X:
    print(f"  {x} -> {sorted(R.row(x))}")

phi = wp_diamond(R)
print("\nmay-transformer (dense table, postcondition mask -> precondition mask):")
for m, out in enumerate(phi.table):
    post = [y for j, y in enumerate(Y) if (m >> j) & 1]
    pre = [x for i, x in enumerate(X) if (out >> i) & 1]
    print(f"  {post!r:20s} -> {pre!r}")

print("\nhealthiness:")
print("  join-preserving?", check_join_preserving(phi).describe())
print("  meet-preserving?", check_meet_preserving(phi).describe())

# a transformer that ignores the bottom cannot come from any relation
broken = BooleanTransformer(Y, X, (3, 3, 3, 3))
verdict = check_join_preserving(broken)
print("\nconstant-true transformer:", verdict.describe())

# synthesis reads the relation off Dirac probes: x R y iff phi({y})(x) = 1
result = synth_relation(phi, "diamond")
print("\nsynthesized relation equals R:", result.arrow.rows == R.rows)
print("re-evaluation residual:", result.residual.describe())

# the must side runs dually, via co-singleton probes
psi = wp_box(R)
print("\nmust-transformer healthiness:", check_meet_preserving(psi).describe())
back = synth_relation(psi, "box")
print("must-side synthesis recovers R:", back.arrow.rows == R.rows)

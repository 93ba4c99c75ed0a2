"""Probabilistic computations: subdistributions, the r-indexed modalities,
effect-module healthiness, and exact Dirac-probe synthesis.

A row with mass below one models possible divergence.  The modality
parameter r decides what divergence is worth: r = 0 (total) counts it as
failure, r = 1 (partial) as success, anything between interpolates.
Everything is exact rational arithmetic; no floats are involved.
"""

from fractions import Fraction as F

from wpbench import (
    FinSet,
    KleisliArrow,
    ProbeGrid,
    builtin_modality,
    check_gemod_morphism,
    pt_modality,
    roundtrip_verify,
    synth_subdist,
)

X = FinSet("X", ["start"])
Y = FinSet("Y", ["good", "bad"])

# succeeds with 1/2, fails with 1/4, diverges with the missing 1/4
f = KleisliArrow("subdist", X, Y, {"start": {"good": F(1, 2), "bad": F(1, 4)}})
print("row at 'start':", f.row("start"), "mass:", f.row("start").mass)

post = (F(1), F(0))  # reward 1 on 'good'
for r in ("0", "1/4", "1/2", "1"):
    mod = builtin_modality(f"tau_r:{r}")
    phi = pt_modality(mod, f)
    print(f"  tau_r({r}): wp(post)(start) = {phi.apply_values(post)[0]}")

# healthiness: the total transformer preserves 0, partial sums, scalars
total = pt_modality(builtin_modality("total"), f)
grid = ProbeGrid.default(Y, seed=0)
print("\ngeneralized-effect-module check:", check_gemod_morphism(total, grid, "total").describe())

# a genuinely nonlinear transformer is rejected with a concrete witness
from wpbench import RationalTransformer

square = RationalTransformer(Y, X, lambda v: (v[0] * v[0],), label="square")
verdict = check_gemod_morphism(square, grid, "total")
print("squaring transformer:", verdict.status)
print("  witness:", verdict.witness.describe())

# synthesis reads the row off Dirac probes, exactly
result = synth_subdist(total, "total", grid)
print("\nsynthesized row:", result.arrow.row("start"))
print("equals original:", result.arrow.rows == f.rows)

# the partial modality sees the same row through divergence-as-success
print("\nround trips:")
print("  total:  ", roundtrip_verify(f, "subdist_total", grid).describe())
print("  partial:", roundtrip_verify(f, "subdist_partial", grid).describe())

from fractions import Fraction
from random import Random

import pytest

from wpbench.core import FinSet
from wpbench.healthiness import ProbeGrid
from wpbench.monads import (
    BOT,
    DistV,
    KleisliArrow,
    MonadKind,
    enumerate_arrows,
    random_arrow,
    unit,
    up_closure,
)
from wpbench.semantics import (
    BooleanTransformer,
    MissingProbeError,
    RationalTransformer,
    pt_alternating,
    wp_box,
    wp_diamond,
)
from wpbench.synthesis import (
    UnhealthyInputError,
    cv_semantically_equal,
    roundtrip_verify,
    synth_dijkstra,
    synth_dist,
    synth_polytope,
    synth_relation,
    synth_subdist,
    synth_upfamily,
)
from wpbench.verdicts import witness_is_sound

F = Fraction


def test_synth_relation_identity(Y2):
    ident = BooleanTransformer(Y2, Y2, tuple(range(4)))
    res = synth_relation(ident, "diamond")
    assert res.ok
    assert res.arrow.rows == (frozenset({"y0"}), frozenset({"y1"}))


def test_synth_relation_constant_zero_gives_empty(Y2, X2):
    phi = BooleanTransformer(Y2, X2, (0, 0, 0, 0))
    res = synth_relation(phi, "diamond")
    assert res.ok
    assert res.arrow.rows == (frozenset(), frozenset())


def test_synth_relation_or_unique_by_exhaustion(Y2):
    X = FinSet("X", ("x",))
    phi = BooleanTransformer(Y2, X, (0, 1, 1, 1))
    res = synth_relation(phi, "diamond")
    assert res.ok
    assert res.arrow.rows == (frozenset({"y0", "y1"}),)
    # uniqueness: wp_diamond over all 2^(|X||Y|) relations hits phi exactly once
    hits = [
        R
        for R in enumerate_arrows(MonadKind.POWERSET, X, Y2)
        if wp_diamond(R).table == phi.table
    ]
    assert len(hits) == 1 and hits[0].rows == res.arrow.rows


def test_synth_relation_box(Y2, X2):
    rng = Random(0)
    for _ in range(20):
        R = random_arrow(MonadKind.POWERSET, rng, X2, Y2)
        res = synth_relation(wp_box(R), "box")
        assert res.ok and res.arrow.rows == R.rows


def test_synth_relation_rejects_unhealthy(Y2, X2):
    const1 = BooleanTransformer(Y2, X2, (3, 3, 3, 3))
    with pytest.raises(UnhealthyInputError):
        synth_relation(const1, "diamond")


def test_synth_subdist_total_example(Y2):
    X = FinSet("X", ("x",))

    def fn(values):
        return (F(1, 2) * values[0] + F(1, 4) * values[1],)

    phi = RationalTransformer(Y2, X, fn)
    res = synth_subdist(phi, "total")
    assert res.ok
    assert res.arrow.row("x") == DistV({"y0": F(1, 2), "y1": F(1, 4)})


def test_synth_subdist_identity_gives_unit(Y2):
    phi = RationalTransformer(Y2, Y2, lambda v: tuple(v))
    res = synth_subdist(phi, "total")
    assert res.ok
    assert res.arrow.rows == unit(MonadKind.SUBDIST, Y2).rows


def test_synth_subdist_partial_subtracts_divergence(Y2):
    X = FinSet("X", ("x",))

    def fn(values):
        return (F(1, 2) * values[0] + F(1, 2),)

    phi = RationalTransformer(Y2, X, fn)
    res = synth_subdist(phi, "partial")
    assert res.ok
    assert res.arrow.row("x") == DistV({"y0": F(1, 2)})
    assert res.arrow.row("x").mass == F(1, 2)


def test_synth_dist_identity_and_uniform(Y2):
    phi = RationalTransformer(Y2, Y2, lambda v: tuple(v))
    res = synth_dist(phi)
    assert res.ok and res.arrow.rows == unit(MonadKind.DIST, Y2).rows
    X = FinSet("X", ("x",))
    avg = RationalTransformer(Y2, X, lambda v: ((v[0] + v[1]) / 2,))
    res = synth_dist(avg)
    assert res.ok
    assert res.arrow.row("x") == DistV({"y0": F(1, 2), "y1": F(1, 2)})


def test_synth_dist_rejects_mass_failure(Y2):
    X = FinSet("X", ("x",))
    half = RationalTransformer(Y2, X, lambda v: (F(1, 2) * v[0],))
    with pytest.raises(UnhealthyInputError):
        synth_dist(half)  # fails the unit (one) law already


def test_synth_upfamily_examples(Y2):
    X = FinSet("X", ("x",))
    meet = BooleanTransformer(Y2, X, (0, 0, 0, 1))
    res = synth_upfamily(meet)
    assert res.ok
    assert res.arrow.row("x") == up_closure([frozenset({"y0", "y1"})], Y2)

    const1 = BooleanTransformer(Y2, X, (1, 1, 1, 1))
    res = synth_upfamily(const1)
    assert res.ok
    assert res.arrow.row("x") == frozenset(
        {frozenset(), frozenset({"y0"}), frozenset({"y1"}), frozenset({"y0", "y1"})}
    )

    ident = BooleanTransformer(Y2, Y2, tuple(range(4)))
    res = synth_upfamily(ident)
    assert res.ok
    assert res.arrow.row("y0") == up_closure([frozenset({"y0"})], Y2)


def test_synth_dijkstra_examples(Y2):
    X = FinSet("X", ("x",))
    ev = BooleanTransformer(Y2, X, (0, 1, 0, 1))
    res = synth_dijkstra(ev)
    assert res.ok and res.arrow.row("x") == frozenset({"y0"})

    const0 = BooleanTransformer(Y2, X, (0, 0, 0, 0))
    res = synth_dijkstra(const0)
    assert res.ok and res.arrow.row("x") == frozenset({BOT})
    assert "bottom-absorption" in res.normalization

    meet = BooleanTransformer(Y2, X, (0, 0, 0, 1))
    res = synth_dijkstra(meet)
    assert res.ok and res.arrow.row("x") == frozenset({"y0", "y1"})


def test_synth_dijkstra_rejects_empty_carrier(X2):
    empty = FinSet("E", ())
    phi = BooleanTransformer(empty, X2, (0,))
    with pytest.raises(ValueError):
        synth_dijkstra(phi)


def test_synth_polytope_dirac_pinned(Y2):
    X = FinSet("X", ("x",))
    phi = RationalTransformer(Y2, X, lambda v: (v[0],), label="eval-y0")
    grid = ProbeGrid.default(Y2, seed=1)
    res = synth_polytope(phi, grid)
    assert res.ok
    region = res.regions[0]
    assert region["vertices"] == ((F(1), F(0)),)
    assert res.arrow.row("x") == (DistV.dirac("y0"),)


def test_synth_polytope_min_segment(Y2):
    X = FinSet("X", ("x",))
    phi = RationalTransformer(Y2, X, lambda v: (min(v),), label="min")
    grid = ProbeGrid.default(Y2, seed=2)
    res = synth_polytope(phi, grid)
    assert res.ok
    verts = set(res.regions[0]["vertices"])
    assert (F(1), F(0)) in verts and (F(0), F(1)) in verts


def test_synth_polytope_full_simplex(Y3):
    X = FinSet("X", ("x",))
    phi = RationalTransformer(Y3, X, lambda v: (min(v),), label="min3")
    grid = ProbeGrid.default(Y3, seed=3)
    res = synth_polytope(phi, grid)
    assert res.ok
    verts = set(res.regions[0]["vertices"])
    for j in range(3):
        assert tuple(F(1) if k == j else F(0) for k in range(3)) in verts


def test_synth_polytope_inconclusive_on_grid_insufficient_input(Y2):
    X = FinSet("X", ("x",))
    lookup = {
        (F(0), F(0)): (F(0),),
        (F(1), F(1)): (F(1),),
        (F(1), F(0)): (F(1, 4),),
        (F(0), F(1)): (F(1, 4),),
        (F(1, 2), F(1)): (F(1, 2),),
    }

    def fn(values):
        key = tuple(values)
        if key not in lookup:
            raise MissingProbeError(key)
        return lookup[key]

    phi = RationalTransformer(Y2, X, fn, label="crafted")
    grid = ProbeGrid.explicit(Y2, list(lookup), scalars=(F(0), F(1)))
    from wpbench.healthiness import check_regular_sublinear

    assert check_regular_sublinear(phi, grid).is_healthy  # grid-limited pass
    res = synth_polytope(phi, grid)
    assert res.residual.status == "inconclusive"
    w = res.residual.witness
    assert w is not None and w.law == "polytope.certify"
    assert witness_is_sound(phi, w)


def test_roundtrip_powerset_exhaustive_2x2(X2, Y2):
    for R in enumerate_arrows(MonadKind.POWERSET, X2, Y2):
        assert roundtrip_verify(R, "may").is_healthy
        assert roundtrip_verify(R, "must").is_healthy


def test_roundtrip_powerset_exhaustive_3x3():
    # 2^(3*3) = 512 relations; both directions exact for each
    X = FinSet("X", ("x0", "x1", "x2"))
    Y = FinSet("Y", ("y0", "y1", "y2"))
    count = 0
    for R in enumerate_arrows(MonadKind.POWERSET, X, Y):
        count += 1
        assert roundtrip_verify(R, "may").is_healthy
        assert roundtrip_verify(R, "must").is_healthy
    assert count == 512


def test_roundtrip_bottom_mixed_row_collapses(Y2):
    X = FinSet("X", ("x",))
    f = KleisliArrow("lift_powerset", X, Y2, {"x": frozenset({BOT, "y0"})})
    verdict = roundtrip_verify(f, "dijkstra")
    assert verdict.is_healthy
    assert "bottom-absorption" in verdict.note


def test_roundtrip_sampled_rational(Y3):
    rng = Random(17)
    X = FinSet("X", ("x0", "x1"))
    grid = ProbeGrid.default(Y3, seed=17)
    for kind, inst in (("subdist", "subdist_total"), ("subdist", "subdist_partial"), ("dist", "dist_convex")):
        for _ in range(10):
            f = random_arrow(kind, rng, X, Y3)
            verdict = roundtrip_verify(f, inst, grid)
            assert verdict.is_healthy, f"{inst}: {verdict.describe()}"


def test_roundtrip_cv_semantic_equality(Y2):
    rng = Random(23)
    X = FinSet("X", ("x",))
    grid = ProbeGrid.default(Y2, seed=23)
    for _ in range(10):
        f = random_arrow("cv_dist", rng, X, Y2)
        phi = pt_alternating("demonic_prob", f)
        res = synth_polytope(phi, grid)
        assert res.ok
        assert cv_semantically_equal(f, res.arrow, grid)


def test_cv_semantic_equality_detects_difference(Y2):
    X = FinSet("X", ("x",))
    a = KleisliArrow("cv_dist", X, Y2, {"x": (DistV.dirac("y0"),)})
    b = KleisliArrow("cv_dist", X, Y2, {"x": (DistV.dirac("y1"),)})
    assert not cv_semantically_equal(a, b)
    mixed = KleisliArrow(
        "cv_dist", X, Y2, {"x": (DistV.dirac("y0"), DistV({"y0": F(1, 2), "y1": F(1, 2)}))}
    )
    hull_equal = KleisliArrow(
        "cv_dist",
        X,
        Y2,
        {"x": (DistV({"y0": F(1, 2), "y1": F(1, 2)}), DistV.dirac("y0"), DistV({"y0": F(3, 4), "y1": F(1, 4)}))},
    )
    assert cv_semantically_equal(mixed, hull_equal)


def test_grid_core_sums_expose_overweight_masses(Y3):
    # coefficients 2/5 each: every pairwise Dirac sum is fine, but the grid's
    # core already contains the two-Dirac sums as members, so pairing them
    # with the remaining Dirac exposes the full-carrier mass 6/5
    X = FinSet("X", ("x",))

    def fn(values):
        return (min(F(2, 5) * (values[0] + values[1] + values[2]), F(1)),)

    phi = RationalTransformer(Y3, X, fn, label="overweight")
    grid = ProbeGrid.default(Y3, seed=0)
    from wpbench.healthiness import check_gemod_morphism

    verdict = check_gemod_morphism(phi, grid, "total")
    assert verdict.is_unhealthy
    assert witness_is_sound(phi, verdict.witness)
    with pytest.raises(UnhealthyInputError):
        synth_subdist(phi, "total", grid)

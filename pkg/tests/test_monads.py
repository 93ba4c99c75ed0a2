import itertools
from fractions import Fraction
from random import Random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from wpbench.core import FinSet
from wpbench.monads import (
    BOT,
    ContinuationTarget,
    DistV,
    KleisliArrow,
    MonadKind,
    MonadMapSpec,
    _lattice_membership,
    check_monad_laws,
    check_monad_map_laws,
    cv_values_equal,
    dedup_vertices,
    enumerate_tvalues,
    is_up_closed,
    kleisli_compose,
    random_arrow,
    sigma_inverse,
    sigma_prime_inverse,
    sigma_prime_spec,
    sigma_spec,
    support_map_spec,
    unit,
    unit_value,
    up_closure,
)
from wpbench.verdicts import witness_is_sound

F = Fraction


@pytest.fixture
def carriers():
    return [FinSet("A", ("a0",)), FinSet("B", ("b0", "b1"))]


def test_unit_values(Y2):
    assert unit_value(MonadKind.POWERSET, Y2, "y0") == frozenset({"y0"})
    assert unit_value(MonadKind.DIST, Y2, "y1") == DistV.dirac("y1")
    # up-closure of {{y0}} inside {y0, y1}
    assert unit_value(MonadKind.UP_POWERSET, Y2, "y0") == frozenset(
        {frozenset({"y0"}), frozenset({"y0", "y1"})}
    )
    assert unit_value(MonadKind.LIFT_POWERSET, Y2, "y0") == frozenset({"y0"})
    assert unit_value(MonadKind.CV_DIST, Y2, "y0") == (DistV.dirac("y0"),)


def test_kleisli_compose_powerset_union_oracle(X1, Y2):
    Z = FinSet("Z", ("z",))
    f = KleisliArrow("powerset", X1, Y2, {"x0": ["y0", "y1"]})
    g = KleisliArrow("powerset", Y2, Z, {"y0": ["z"], "y1": []})
    composed = kleisli_compose(f, g)
    assert composed.row("x0") == frozenset({"z"})


def test_kleisli_compose_subdist_sum_product(X1, Y2):
    Z = FinSet("Z", ("z",))
    f = KleisliArrow("subdist", X1, Y2, {"x0": {"y0": F(1, 2)}})
    g = KleisliArrow("subdist", Y2, Z, {"y0": {"z": F(1, 2)}, "y1": {}})
    composed = kleisli_compose(f, g)
    assert composed.row("x0") == DistV({"z": F(1, 4)})


def test_compose_with_units_is_identity(carriers):
    rng = Random(0)
    for kind in MonadKind:
        f = random_arrow(kind, rng, carriers[0], carriers[1])
        left = kleisli_compose(unit(kind, carriers[0]), f)
        right = kleisli_compose(f, unit(kind, carriers[1]))
        for x in carriers[0].elements:
            if kind == MonadKind.CV_DIST:
                assert cv_values_equal(left.row(x), f.row(x), f.target)
                assert cv_values_equal(right.row(x), f.row(x), f.target)
            else:
                assert left.row(x) == f.row(x)
                assert right.row(x) == f.row(x)


def test_lift_bottom_contributes_bottom(X1, Y2):
    Z = FinSet("Z", ("z",))
    f = KleisliArrow("lift_powerset", X1, Y2, {"x0": frozenset(["y0", BOT])})
    g = KleisliArrow("lift_powerset", Y2, Z, {"y0": ["z"], "y1": ["z"]})
    composed = kleisli_compose(f, g)
    assert composed.row("x0") == frozenset({"z", BOT})


def test_up_closure():
    Y = FinSet("Y", ("a", "b"))
    assert up_closure([], Y) == frozenset()
    closed = up_closure([frozenset({"a"})], Y)
    assert closed == frozenset({frozenset({"a"}), frozenset({"a", "b"})})
    assert up_closure(closed, Y) == closed  # idempotent
    assert is_up_closed(closed, Y)


@settings(max_examples=40)
@given(st.integers(min_value=0, max_value=255))
def test_up_closure_idempotent_random(mask):
    Y = FinSet("Y", ("a", "b", "c"))
    subsets = enumerate_tvalues(MonadKind.POWERSET, Y)
    fam = [s for i, s in enumerate(subsets) if (mask >> i) & 1]
    closed = up_closure(fam, Y)
    assert up_closure(closed, Y) == closed
    assert is_up_closed(closed, Y)


def test_monad_laws_enumerable_exhaustive(carriers):
    for kind in ("powerset", "lift_powerset", "up_powerset"):
        verdict = check_monad_laws(kind, carriers)
        assert verdict.is_healthy, verdict.describe()


def test_monad_laws_sampled(carriers):
    for kind in ("subdist", "dist", "cv_dist"):
        verdict = check_monad_laws(kind, carriers, sample_count=60, seed=4)
        assert verdict.is_healthy, verdict.describe()


def test_monad_laws_corrupted_composition_witnessed(carriers):
    def bad_compose(f, g):
        # union replaced by intersection
        if f.kind == MonadKind.POWERSET:
            rows = []
            for x in f.source.elements:
                row = None
                for y in f.row(x):
                    row = g.row(y) if row is None else (row & g.row(y))
                rows.append(row if row is not None else frozenset())
            return KleisliArrow(f.kind, f.source, g.target, rows)
        return kleisli_compose(f, g)

    verdict = check_monad_laws("powerset", carriers, compose=bad_compose)
    assert verdict.is_unhealthy
    assert verdict.witness.law in ("monad.left_unit", "monad.right_unit", "monad.assoc")


def test_cv_composition_vertex_order_independent(X1, Y2):
    Z = FinSet("Z", ("z0", "z1"))
    rng = Random(7)
    f = random_arrow("cv_dist", rng, X1, Y2)
    g = random_arrow("cv_dist", rng, Y2, Z)
    fw = kleisli_compose(f, g)
    f2 = KleisliArrow("cv_dist", X1, Y2, [tuple(reversed(r)) for r in f.rows])
    g2 = KleisliArrow("cv_dist", Y2, Z, [tuple(reversed(r)) for r in g.rows])
    bw = kleisli_compose(f2, g2)
    for x in X1.elements:
        assert frozenset(fw.row(x)) == frozenset(bw.row(x))


def test_dedup_vertices():
    a, b = DistV.dirac("y"), DistV.dirac("z")
    assert dedup_vertices((a, b, a)) == (a, b)


def test_sigma_laws_and_bijectivity(carriers):
    spec = sigma_spec()
    assert check_monad_map_laws(spec, carriers).is_healthy
    for n in (1, 2, 3):
        X = FinSet("X", tuple(f"x{i}" for i in range(n)))
        for S in enumerate_tvalues(MonadKind.POWERSET, X):
            assert sigma_inverse(X, spec.at(X, S)) == S


def test_sigma_prime_laws_and_bijectivity(carriers):
    spec = sigma_prime_spec()
    assert check_monad_map_laws(spec, carriers).is_healthy
    for n in (1, 2, 3):
        X = FinSet("X", tuple(f"x{i}" for i in range(n)))
        for S in enumerate_tvalues(MonadKind.POWERSET, X):
            assert sigma_prime_inverse(X, spec.at(X, S)) == S


def _join_preserving_tables(n):
    """All dense functionals 2^(2^n) -> 2 that preserve joins (oracle)."""
    out = []
    for table in itertools.product((0, 1), repeat=1 << n):
        if table[0]:
            continue
        if all(
            table[m] == max((table[1 << j] for j in range(n) if (m >> j) & 1), default=0)
            for m in range(1 << n)
        ):
            out.append(table)
    return out


def test_sigma_surjective_onto_join_preserving():
    # sigma(sigma_inv(xi)) = xi for every functional in the join target
    spec = sigma_spec()
    for n in (1, 2, 3):
        X = FinSet("X", tuple(f"x{i}" for i in range(n)))
        tables = _join_preserving_tables(n)
        assert len(tables) == 1 << n
        for table in tables:
            xi = lambda f, table=table: table[
                sum(1 << j for j, x in enumerate(X.elements) if f(x))
            ]
            S = sigma_inverse(X, xi)
            rebuilt = spec.at(X, S)
            for bits in itertools.product((0, 1), repeat=n):
                valuation = dict(zip(X.elements, bits))
                idx = sum(1 << j for j, b in enumerate(bits) if b)
                assert rebuilt(lambda x: valuation[x]) == table[idx]


def test_support_map_laws(carriers):
    verdict = check_monad_map_laws(support_map_spec(), carriers, sample_count=40)
    assert verdict.is_healthy, verdict.describe()


def test_corrupted_sigma_membership_fails(carriers):
    bad = MonadMapSpec(
        "bad_sigma",
        MonadKind.POWERSET,
        ContinuationTarget(),
        lambda elems, s: (lambda f: min((f(x) for x in s), default=1)),
        _lattice_membership(True),
    )
    verdict = check_monad_map_laws(bad, carriers)
    assert verdict.is_unhealthy
    assert verdict.witness.law == "map.membership"
    assert witness_is_sound(bad, verdict.witness)


def test_arrow_validation():
    X = FinSet("X", ("x",))
    Y = FinSet("Y", ("y0", "y1"))
    with pytest.raises(ValueError):
        KleisliArrow("subdist", X, Y, {"x": {"y0": F(5, 8), "y1": F(5, 8)}})
    with pytest.raises(ValueError):
        KleisliArrow("dist", X, Y, {"x": {"y0": F(1, 2)}})
    with pytest.raises(ValueError):
        KleisliArrow("lift_powerset", X, Y, {"x": []})
    with pytest.raises(ValueError):
        KleisliArrow("up_powerset", X, Y, {"x": [["y0"]]})  # not up-closed
    with pytest.raises(ValueError):
        KleisliArrow("cv_dist", X, Y, {"x": []})
    with pytest.raises(KeyError):
        KleisliArrow("powerset", X, Y, {"x": ["nope"]})


def test_distv_arithmetic():
    d = DistV({"a": F(1, 2), "b": F(0)})
    assert d.support == frozenset({"a"})
    assert d.mass == F(1, 2)
    assert d.scale(F(1, 2)) == DistV({"a": F(1, 4)})
    assert d.add(DistV({"a": F(1, 4)})) == DistV({"a": F(3, 4)})
    assert DistV.mix([(F(1, 2), DistV.dirac("a")), (F(1, 2), DistV.dirac("b"))]) == DistV(
        {"a": F(1, 2), "b": F(1, 2)}
    )
    with pytest.raises(ValueError):
        DistV({"a": F(-1, 2)})

import itertools
from fractions import Fraction
from random import Random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from wpbench.core import FinSet, SizeGuardError
from wpbench.modalities import (
    BOOLEAN,
    RATIONAL,
    Modality,
    algebra_to_monad_map,
    builtin_modality,
    builtin_modality_names,
    check_algebra_laws,
    enumerate_algebra_morphisms,
    free_algebra,
    lifting_check,
    monad_map_to_algebra,
    omega_algebra,
)
from wpbench.monads import (
    DistV,
    MonadKind,
    check_monad_map_laws,
    enumerate_tvalues,
    random_tvalue,
    sigma_prime_spec,
    sigma_spec,
)
from wpbench.verdicts import witness_is_sound

F = Fraction


def test_catalog_names_and_classes():
    expect = {
        "diamond": "cl_join",
        "box": "cl_meet",
        "total": "gemod",
        "partial": "gemod_dual",
        "convex": "emod",
        "dijkstra": "strict_cl_meet",
        "game": "pos",
        "demonic_prob": "emod_sublinear",
    }
    for name, cls in expect.items():
        assert builtin_modality(name).structure_class == cls
    assert set(expect) == set(builtin_modality_names())
    with pytest.raises(ValueError):
        builtin_modality("no_such_modality")
    with pytest.raises(ValueError):
        builtin_modality("tau_r:3/2")


def test_tau_r_zero_subdistribution():
    zero = DistV()
    assert builtin_modality("tau_r:0").evaluate(zero, lambda v: v) == 0
    assert builtin_modality("tau_r:1").evaluate(zero, lambda v: v) == 1
    third = builtin_modality("tau_r:1/3")
    assert third.evaluate(zero, lambda v: v) == F(1, 3)


def test_tau_r_dirac_unit_law():
    for r in ("0", "1/4", "1", "2/3"):
        mod = builtin_modality(f"tau_r:{r}")
        for v in (F(0), F(1, 2), F(1)):
            assert mod.evaluate(DistV.dirac(v), lambda x: x) == v


def test_tau_r_total_on_full_mass_is_r_independent():
    rng = Random(3)
    X = FinSet("V", (F(0), F(1, 4), F(1, 2), F(1)))
    for _ in range(40):
        p = random_tvalue(MonadKind.DIST, rng, X)
        vals = [
            builtin_modality(f"tau_r:{r}").evaluate(p, lambda v: v)
            for r in ("0", "1/4", "1/2", "1")
        ]
        assert len(set(vals)) == 1


def test_sigma_is_diamond_induced_map(Y2):
    spec = algebra_to_monad_map(builtin_modality("diamond"))
    ref = sigma_spec()
    for S in enumerate_tvalues(MonadKind.POWERSET, Y2):
        for bits in itertools.product((0, 1), repeat=2):
            val = dict(zip(Y2.elements, bits))
            f = lambda y: val[y]
            assert spec.at(Y2, S)(f) == ref.at(Y2, S)(f)
    assert check_monad_map_laws(spec, [Y2]).is_healthy


def test_sigma_prime_is_box_induced_map(Y2):
    spec = algebra_to_monad_map(builtin_modality("box"))
    ref = sigma_prime_spec()
    for S in enumerate_tvalues(MonadKind.POWERSET, Y2):
        for bits in itertools.product((0, 1), repeat=2):
            val = dict(zip(Y2.elements, bits))
            f = lambda y: val[y]
            assert spec.at(Y2, S)(f) == ref.at(Y2, S)(f)


def test_monad_map_to_algebra_recovers_join_and_meet():
    sigma_alg = monad_map_to_algebra(sigma_spec())
    sigma_prime_alg = monad_map_to_algebra(sigma_prime_spec())
    for subset in [frozenset(), frozenset({0}), frozenset({1}), frozenset({0, 1})]:
        assert sigma_alg.apply_algebra(subset) == max(subset, default=0)
        assert sigma_prime_alg.apply_algebra(subset) == min(subset, default=1)


def test_prop_correspondence_roundtrip_on_catalog():
    # algebra -> map -> algebra is the identity on the structure maps
    for name in builtin_modality_names():
        mod = builtin_modality(name)
        rebuilt = monad_map_to_algebra(algebra_to_monad_map(mod), name=mod.name)
        rng = Random(13)
        values = (0, 1) if mod.carrier == BOOLEAN else (F(0), F(1, 4), F(1, 2), F(1))
        omega = FinSet("omega", values)
        if mod.monad in (MonadKind.POWERSET, MonadKind.LIFT_POWERSET, MonadKind.UP_POWERSET):
            ts = enumerate_tvalues(mod.monad, omega)
        else:
            ts = [random_tvalue(mod.monad, rng, omega) for _ in range(40)]
        for t in ts:
            assert rebuilt.apply_algebra(t) == mod.apply_algebra(t)


def test_algebra_laws_catalog():
    for name in builtin_modality_names():
        verdict = check_algebra_laws(builtin_modality(name), sample_depth=20)
        assert verdict.is_healthy, f"{name}: {verdict.describe()}"


def test_algebra_laws_tau_r_family():
    for r in ("0", "1/2", "1"):
        verdict = check_algebra_laws(builtin_modality(f"tau_r:{r}"), sample_depth=50)
        assert verdict.is_healthy and verdict.checked >= 200


def test_algebra_laws_corrupted_witnessed():
    bad = Modality(
        "sum_of_squares",
        MonadKind.SUBDIST,
        RATIONAL,
        None,
        lambda p, f: sum((q * f(x) ** 2 for x, q in p.items()), F(0)),
    )
    verdict = check_algebra_laws(bad, sample_depth=20)
    assert verdict.is_unhealthy
    assert verdict.witness.law in ("algebra.unit", "algebra.mult")
    assert witness_is_sound(bad, verdict.witness)


def test_lifting_catalog_nmax3():
    # every catalog modality passes at n <= 3 for its declared class
    for name in builtin_modality_names():
        mod = builtin_modality(name)
        verdict = lifting_check(mod, mod.structure_class, n_max=3, samples_per_n=60)
        assert verdict.is_healthy, f"{name}/{mod.structure_class}: {verdict.describe()}"


def test_lifting_mismatch_diamond_meet():
    mod = builtin_modality("diamond")
    verdict = lifting_check(mod, "cl_meet", n_max=2)
    assert verdict.is_unhealthy
    # reproducible witness
    again = lifting_check(mod, "cl_meet", n_max=2)
    assert again.witness == verdict.witness


def test_lifting_binary_meet_violation_exists():
    # the documented two-point violation: join fails binary meets on {a,b}
    mod = builtin_modality("diamond")
    t = frozenset({"e0", "e1"})
    f, g = (1, 0), (0, 1)
    F_t = lambda tup: mod.evaluate(t, lambda x: tup[0 if x == "e0" else 1])
    met = tuple(min(a, b) for a, b in zip(f, g))
    assert F_t(met) == 0
    assert min(F_t(f), F_t(g)) == 1


def test_lifting_rejects_bad_nmax():
    with pytest.raises(ValueError):
        lifting_check(builtin_modality("diamond"), "cl_join", n_max=0)


def test_free_algebra_morphisms_counts(Y2):
    one = FinSet("Y1", ("y",))
    mod = builtin_modality("diamond")
    free1 = free_algebra(MonadKind.POWERSET, one)
    assert len(enumerate_algebra_morphisms(free1, mod)) == 2
    free2 = free_algebra(MonadKind.POWERSET, Y2)
    morphisms = len(enumerate_algebra_morphisms(free2, mod))
    assert morphisms == 4  # = 2^|Y2|, by freeness


def test_omega_algebra_contains_identity():
    mod = builtin_modality("diamond")
    alg = omega_algebra(mod)
    morphisms = enumerate_algebra_morphisms(alg, mod)
    assert {0: 0, 1: 1} in morphisms


def test_algebra_morphisms_guard():
    with pytest.raises(SizeGuardError):
        enumerate_algebra_morphisms(
            free_algebra(MonadKind.POWERSET, FinSet("Y", ("a",))), builtin_modality("total")
        )


# pointwise class structure on [0,1]^n satisfies the GEMod/EMod axioms
rat = st.fractions(min_value=0, max_value=1, max_denominator=16)


@settings(max_examples=60)
@given(st.tuples(rat, rat, rat), st.tuples(rat, rat, rat), st.tuples(rat, rat, rat), rat, rat)
def test_pointwise_gemod_axioms(x, y, z, r, s):
    def defined(a, b):
        return all(u + v <= 1 for u, v in zip(a, b))

    def add(a, b):
        return tuple(u + v for u, v in zip(a, b))

    zero = (F(0),) * 3
    # commutativity and zero
    if defined(x, y):
        assert add(x, y) == add(y, x)
    assert add(x, zero) == x
    # Kleene-associativity: if both groupings are defined they agree
    if defined(x, y) and defined(add(x, y), z) and defined(y, z) and defined(x, add(y, z)):
        assert add(add(x, y), z) == add(x, add(y, z))
    # positivity and cancellativity
    if defined(x, y) and add(x, y) == zero:
        assert x == zero and y == zero
    if defined(x, y) and defined(x, z) and add(x, y) == add(x, z):
        assert y == z
    # scalar laws
    if r + s <= 1:
        assert tuple((r + s) * u for u in x) == add(tuple(r * u for u in x), tuple(s * u for u in x))
    assert tuple(r * (s * u) for u in x) == tuple((r * s) * u for u in x)
    assert tuple(1 * u for u in x) == x
    # EMod top element: everything sits below the constant-one tuple
    one = (F(1),) * 3
    gap = tuple(1 - u for u in x)
    assert add(x, gap) == one

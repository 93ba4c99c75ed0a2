import pytest

from wpbench.core import SizeGuardError
from wpbench.sweep import TheoremInstance, enum_verify


def test_may_2x2_partition():
    report = enum_verify(TheoremInstance("may", (2, 2)))
    assert report.equal
    assert report.counts["transformers"] == 256
    assert report.counts["healthy"] == 16
    assert report.counts["image"] == 16
    assert report.counts["wp_injective"] == "yes"
    assert report.counts["set_equality"] == "checked"


def test_must_2x2_partition():
    report = enum_verify(TheoremInstance("must", (2, 2)))
    assert report.equal
    assert report.counts["healthy"] == 16


def test_may_asymmetric_sizes():
    report = enum_verify(TheoremInstance("may", (1, 2)))
    assert report.equal
    assert report.counts["healthy"] == 4  # relations {x} -> 2^{2 elements}
    report = enum_verify(TheoremInstance("may", (2, 1)))
    assert report.equal
    assert report.counts["healthy"] == 4


def test_boolean_completeness_all_sizes_up_to_two():
    # healthy set = image, for every condition and every carrier pair <= 2
    for theorem in ("may", "must", "game", "dijkstra"):
        for nx in (1, 2):
            for ny in (1, 2):
                report = enum_verify(TheoremInstance(theorem, (nx, ny)))
                assert report.equal, f"{theorem} {(nx, ny)}: {report.render()}"


def test_game_2x2():
    report = enum_verify(TheoremInstance("game", (2, 2)))
    assert report.equal
    assert report.counts["healthy"] == 36
    assert report.counts["computations"] == 36


def test_dijkstra_2x2():
    report = enum_verify(TheoremInstance("dijkstra", (2, 2)))
    assert report.equal
    assert report.counts["healthy"] == 16
    assert report.counts["computations"] == 49  # collapses onto 16 classes
    assert report.counts["image"] == 16


def test_sampled_instances_small():
    for theorem in ("subdist_total", "subdist_partial", "dist_convex"):
        report = enum_verify(TheoremInstance(theorem, (2, 2), "sampled", seed=5, count=20))
        assert report.equal, report.render()
        assert report.counts["healthy_images"] == 20
        assert report.counts["roundtrips_exact"] == 20
        assert report.counts["constructed_synthesized"] == 20
    report = enum_verify(TheoremInstance("cv_sublinear", (2, 2), "sampled", seed=5, count=10))
    assert report.equal
    assert report.counts["roundtrips_exact"] == 10


def test_size_guard():
    with pytest.raises(SizeGuardError):
        enum_verify(TheoremInstance("may", (4, 4)))
    with pytest.raises(ValueError):
        TheoremInstance("bogus", (2, 2))


def test_report_rendering_deterministic():
    a = enum_verify(TheoremInstance("may", (2, 2))).render()
    b = enum_verify(TheoremInstance("may", (2, 2))).render()
    assert a == b
    assert "wall_time" not in a  # timing never leaks into the deterministic report
    timed = enum_verify(TheoremInstance("may", (2, 2))).render(include_timing=True)
    assert "wall_time_s" in timed


def test_jobs_partition_matches_serial():
    serial = enum_verify(TheoremInstance("may", (2, 2)), jobs=1)
    parallel = enum_verify(TheoremInstance("may", (2, 2)), jobs=4)
    assert serial.render() == parallel.render()

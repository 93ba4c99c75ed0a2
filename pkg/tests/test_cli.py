import json
from fractions import Fraction

import pytest

from wpbench.cli import (
    EXIT_HEALTHY,
    EXIT_INCONCLUSIVE,
    EXIT_INPUT,
    EXIT_UNHEALTHY,
    SpecError,
    parse_spec,
    run,
)
from wpbench.monads import BOT, MonadKind
from wpbench.semantics import BooleanTransformer

F = Fraction

RELATION_DOC = {
    "sets": {"X": ["x0", "x1"], "Y": ["y0", "y1"]},
    "computation": {
        "monad": "powerset",
        "source": "X",
        "target": "Y",
        "rows": {"x0": ["y0", "y1"], "x1": []},
    },
    "modality": "diamond",
}


def write(tmp_path, doc, name="doc.json"):
    path = tmp_path / name
    path.write_text(json.dumps(doc))
    return str(path)


def test_parse_minimal_relation():
    doc = parse_spec(json.dumps(RELATION_DOC))
    assert doc.computation.kind == MonadKind.POWERSET
    assert doc.computation.row("x0") == frozenset({"y0", "y1"})
    assert doc.modality == "diamond"


def test_parse_error_codes():
    with pytest.raises(SpecError) as err:
        parse_spec("not json")
    assert err.value.code == "E_JSON"

    bad_mass = {
        "sets": {"X": ["a", "b"]},
        "computation": {
            "monad": "subdist",
            "source": "X",
            "target": "X",
            "rows": {"a": {"a": "5/8", "b": "5/8"}, "b": {}},
        },
    }
    with pytest.raises(SpecError) as err:
        parse_spec(json.dumps(bad_mass))
    assert err.value.code == "E_MASS"

    bad_rat = json.loads(json.dumps(bad_mass))
    bad_rat["computation"]["rows"]["a"] = {"a": "1/0"}
    with pytest.raises(SpecError) as err:
        parse_spec(json.dumps(bad_rat))
    assert err.value.code == "E_RAT"

    unknown_set = json.loads(json.dumps(RELATION_DOC))
    unknown_set["computation"]["target"] = "Z"
    with pytest.raises(SpecError) as err:
        parse_spec(json.dumps(unknown_set))
    assert err.value.code == "E_SET"

    not_up_closed = {
        "sets": {"X": ["x"], "Y": ["y0", "y1"]},
        "computation": {
            "monad": "up_powerset",
            "source": "X",
            "target": "Y",
            "rows": {"x": [["y0"]]},
        },
    }
    with pytest.raises(SpecError) as err:
        parse_spec(json.dumps(not_up_closed))
    assert err.value.code == "E_UPCLOSED"


def test_parse_lift_and_generators():
    doc = {
        "sets": {"X": ["x"], "Y": ["y0", "y1"]},
        "computation": {
            "monad": "lift_powerset",
            "source": "X",
            "target": "Y",
            "rows": {"x": {"elements": ["y0"], "bottom": True}},
        },
    }
    parsed = parse_spec(json.dumps(doc))
    assert parsed.computation.row("x") == frozenset({"y0", BOT})

    doc["computation"] = {
        "monad": "up_powerset",
        "source": "X",
        "target": "Y",
        "rows": {"x": {"generators": [["y0"]]}},
    }
    parsed = parse_spec(json.dumps(doc))
    assert frozenset({"y0"}) in parsed.computation.row("x")
    assert frozenset({"y0", "y1"}) in parsed.computation.row("x")


def test_parse_truth_table_complete_and_incomplete():
    doc = {
        "sets": {"X": ["x"], "Y": ["y0", "y1"]},
        "transformer": {
            "kind": "truth_table",
            "source": "Y",
            "target": "X",
            "rows": {"00": "0", "10": "1", "01": "1", "11": "1"},
        },
    }
    parsed = parse_spec(json.dumps(doc))
    assert isinstance(parsed.transformer, BooleanTransformer)
    assert parsed.transformer.table == (0, 1, 1, 1)
    del doc["transformer"]["rows"]["11"]
    with pytest.raises(SpecError) as err:
        parse_spec(json.dumps(doc))
    assert err.value.code == "E_TABLE"


def test_cmd_check_exit_codes(tmp_path, capsys):
    spec = write(tmp_path, RELATION_DOC)
    assert run(["check", "--spec", spec, "--condition", "join"]) == EXIT_HEALTHY
    assert run(["check", "--spec", spec, "--condition", "meet"]) == EXIT_UNHEALTHY
    out = capsys.readouterr().out
    assert "witness" in out or "violated" in out


def test_cmd_check_inconclusive(tmp_path):
    doc = {
        "sets": {"X": ["x"], "Y": ["y0", "y1"]},
        "transformer": {
            "kind": "probe_table",
            "source": "Y",
            "target": "X",
            "pairs": [
                [["0", "0"], ["0"]],
                [["1", "1"], ["1"]],
                [["1", "0"], ["1/4"]],
                [["0", "1"], ["1/4"]],
            ],
        },
        "probes": {"predicates": [["0", "0"]], "scalars": ["0", "1"]},
    }
    spec = write(tmp_path, doc)
    # grid below minimum (no diracs): inconclusive
    assert run(["check", "--spec", spec, "--condition", "gemod_total"]) == EXIT_INCONCLUSIVE


def test_cmd_wp_and_synth_roundtrip_through_files(tmp_path, capsys):
    spec = write(tmp_path, RELATION_DOC)
    out_file = tmp_path / "phi.json"
    assert run(["wp", "--spec", spec, "--out", str(out_file)]) == EXIT_HEALTHY
    payload = json.loads(out_file.read_text())
    payload["modality"] = "diamond"
    spec2 = write(tmp_path, payload, "phi_doc.json")
    out_file2 = tmp_path / "synth.txt"
    assert run(["synth", "--spec", spec2, "--out", str(out_file2)]) == EXIT_HEALTHY
    emitted = out_file2.read_text()
    rebuilt = json.loads(emitted[: emitted.index("\nresidual")])
    assert rebuilt["computation"]["rows"] == {"x0": ["y0", "y1"], "x1": []}
    # emitted computation re-parses and re-verifies
    spec3 = write(tmp_path, rebuilt, "rebuilt.json")
    assert run(["roundtrip", "--spec", spec3]) == EXIT_HEALTHY


def test_cmd_synth_rejects_unhealthy(tmp_path):
    doc = {
        "sets": {"X": ["x0", "x1"], "Y": ["y0", "y1"]},
        "transformer": {
            "kind": "truth_table",
            "source": "Y",
            "target": "X",
            "rows": {"00": "11", "10": "11", "01": "11", "11": "11"},
        },
        "modality": "diamond",
    }
    spec = write(tmp_path, doc)
    assert run(["synth", "--spec", spec]) == EXIT_UNHEALTHY


def test_cmd_wp_probe_output_deterministic(tmp_path):
    doc = {
        "sets": {"X": ["x"], "Y": ["y0", "y1"]},
        "computation": {
            "monad": "subdist",
            "source": "X",
            "target": "Y",
            "rows": {"x": {"y0": "1/2", "y1": "1/4"}},
        },
        "modality": "total",
        "seed": 9,
    }
    spec = write(tmp_path, doc)
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    assert run(["wp", "--spec", spec, "--out", str(a)]) == EXIT_HEALTHY
    assert run(["wp", "--spec", spec, "--out", str(b)]) == EXIT_HEALTHY
    assert a.read_bytes() == b.read_bytes()


def test_cmd_enum_verify(tmp_path, capsys):
    assert run(["enum-verify", "--theorem", "may", "--sizes", "2", "2"]) == EXIT_HEALTHY
    out = capsys.readouterr().out
    assert "transformers: 256" in out
    assert "equivalence: holds" in out
    assert run(["enum-verify", "--theorem", "bogus"]) == EXIT_INPUT
    assert run(["enum-verify", "--theorem", "may", "--sizes", "4", "4"]) == EXIT_INPUT


def test_cmd_enum_verify_deterministic_output(tmp_path):
    a, b = tmp_path / "a.txt", tmp_path / "b.txt"
    run(["enum-verify", "--theorem", "dijkstra", "--sizes", "2", "2", "--out", str(a)])
    run(["enum-verify", "--theorem", "dijkstra", "--sizes", "2", "2", "--out", str(b)])
    assert a.read_bytes() == b.read_bytes()


def test_cmd_laws(capsys):
    assert run(["laws", "--monad", "powerset", "--sizes", "2", "2"]) == EXIT_HEALTHY
    out = capsys.readouterr().out
    assert "monad powerset: healthy" in out
    assert "monad-map sigma" in out


def test_unknown_command_and_flags():
    assert run(["frobnicate"]) == EXIT_INPUT
    assert run(["check", "--no-such-flag"]) == EXIT_INPUT
    assert run([]) == EXIT_INPUT
    assert run(["check", "--condition", "join"]) == EXIT_INPUT  # missing --spec
    assert run(["check", "--spec", "/nonexistent.json", "--condition", "join"]) == EXIT_INPUT


def test_cmd_alternating_pipeline(tmp_path):
    doc = {
        "sets": {"X": ["x"], "Y": ["y0", "y1"]},
        "computation": {
            "monad": "up_powerset",
            "source": "X",
            "target": "Y",
            "rows": {"x": {"generators": [["y0", "y1"]]}},
        },
        "modality": "game",
    }
    spec = write(tmp_path, doc, "game.json")
    assert run(["check", "--spec", spec, "--condition", "monotone"]) == EXIT_HEALTHY
    assert run(["roundtrip", "--spec", spec]) == EXIT_HEALTHY
    out = tmp_path / "game_phi.json"
    assert run(["wp", "--spec", spec, "--out", str(out)]) == EXIT_HEALTHY
    payload = json.loads(out.read_text())
    assert payload["transformer"]["rows"] == {"00": "0", "10": "0", "01": "0", "11": "1"}
    payload["modality"] = "game"
    spec2 = write(tmp_path, payload, "game_phi_doc.json")
    synth_out = tmp_path / "game_synth.txt"
    assert run(["synth", "--spec", spec2, "--out", str(synth_out)]) == EXIT_HEALTHY
    emitted = synth_out.read_text()
    rebuilt = json.loads(emitted[: emitted.index("\nresidual")])
    assert rebuilt["computation"]["monad"] == "up_powerset"


def test_cmd_cv_dist_pipeline(tmp_path):
    doc = {
        "sets": {"X": ["x"], "Y": ["y0", "y1"]},
        "computation": {
            "monad": "cv_dist",
            "source": "X",
            "target": "Y",
            "rows": {"x": [{"y0": "3/4", "y1": "1/4"}, {"y0": "1/4", "y1": "3/4"}]},
        },
        "modality": "demonic_prob",
        "seed": 3,
    }
    spec = write(tmp_path, doc, "cv.json")
    assert run(["check", "--spec", spec, "--condition", "regular_sublinear"]) == EXIT_HEALTHY
    assert run(["roundtrip", "--spec", spec]) == EXIT_HEALTHY
    assert run(["synth", "--spec", spec]) == EXIT_HEALTHY


def test_cmd_synth_inconclusive_paths(tmp_path):
    # probe table + insufficient grid: the precondition is inconclusive
    doc = {
        "sets": {"X": ["x"], "Y": ["y0", "y1"]},
        "transformer": {
            "kind": "probe_table",
            "source": "Y",
            "target": "X",
            "pairs": [
                [["0", "0"], ["0"]],
                [["1", "1"], ["1"]],
                [["1", "0"], ["1/4"]],
                [["0", "1"], ["1/4"]],
            ],
        },
        "probes": {"predicates": [["0", "0"]], "scalars": ["0", "1"]},
        "modality": "total",
    }
    spec = write(tmp_path, doc, "inc1.json")
    assert run(["synth", "--spec", spec]) == EXIT_INCONCLUSIVE

    # adequate probes for the check, but certification fails: inconclusive
    doc["modality"] = "demonic_prob"
    doc["transformer"]["pairs"].append([["1/2", "1"], ["1/2"]])
    doc["probes"] = {
        "predicates": [["0", "0"], ["1", "1"], ["1", "0"], ["0", "1"], ["1/2", "1"]],
        "scalars": ["0", "1"],
    }
    spec = write(tmp_path, doc, "inc2.json")
    assert run(["synth", "--spec", spec]) == EXIT_INCONCLUSIVE

    # a probe table cannot answer Dirac probes outside its list: inconclusive,
    # never a crash
    doc["modality"] = "total"
    doc["probes"] = {
        "predicates": [["0", "0"], ["1", "1"], ["1", "0"], ["0", "1"], ["1/2", "1"], ["1/2", "1/2"]],
        "scalars": ["0", "1"],
    }
    spec = write(tmp_path, doc, "inc3.json")
    assert run(["synth", "--spec", spec]) == EXIT_INCONCLUSIVE


def test_cmd_check_finitary(tmp_path, capsys):
    spec = write(tmp_path, RELATION_DOC)
    assert run(["check", "--spec", spec, "--condition", "finitary"]) == EXIT_HEALTHY
    out = capsys.readouterr().out
    assert "supports" in out


def test_cmd_laws_modality(capsys):
    assert run(["laws", "--monad", "powerset", "--modality", "diamond"]) == EXIT_HEALTHY
    out = capsys.readouterr().out
    assert "algebra diamond: healthy" in out
    assert "lifting diamond:cl_join: healthy" in out


def test_probe_table_backed_by_computation_mismatch(tmp_path):
    doc = {
        "sets": {"X": ["x"], "Y": ["y0", "y1"]},
        "computation": {
            "monad": "subdist",
            "source": "X",
            "target": "Y",
            "rows": {"x": {"y0": "1/2"}},
        },
        "modality": "total",
        "transformer": {
            "kind": "probe_table",
            "source": "Y",
            "target": "X",
            "pairs": [[["1", "0"], ["1/3"]]],  # disagrees: should be 1/2
        },
    }
    with pytest.raises(SpecError) as err:
        parse_spec(json.dumps(doc))
    assert err.value.code == "E_PROBE"

"""Command-line front end: spec-file parsing, verdict reporting, sweeps.

The concrete syntax is JSON with rationals written as strings "p/q" and
dense truth tables keyed by predicate bitstrings in canonical order
(character j of a bitstring is the value at element j of the carrier).
Reports are deterministic for identical inputs and seeds; wall-clock
timing goes to stderr only.

Exit codes: 0 healthy/pass, 1 unhealthy (witness printed),
2 inconclusive, 64 input error.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import dataclass
from fractions import Fraction

from .core import FinSet, SizeGuardError, format_rational, parse_rational
from .healthiness import CONDITIONS, ProbeGrid, run_condition
from .modalities import builtin_modality, check_algebra_laws, lifting_check
from .monads import (
    BOT,
    DistV,
    KleisliArrow,
    MonadKind,
    check_monad_laws,
    check_monad_map_laws,
    sigma_prime_spec,
    sigma_spec,
    support_map_spec,
)
from .semantics import (
    BooleanTransformer,
    MissingProbeError,
    RationalTransformer,
    pt_modality,
)
from .sweep import THEOREM_IDS, TheoremInstance, enum_verify
from .synthesis import INSTANCES, UnhealthyInputError
from .synthesis import roundtrip_verify
from .verdicts import Verdict

__all__ = ["SpecError", "SpecDocument", "parse_spec", "run", "main"]

EXIT_HEALTHY = 0
EXIT_UNHEALTHY = 1
EXIT_INCONCLUSIVE = 2
EXIT_INPUT = 64

_MODALITY_INSTANCE = {
    "diamond": "may",
    "box": "must",
    "total": "subdist_total",
    "partial": "subdist_partial",
    "convex": "dist_convex",
    "game": "game",
    "dijkstra": "dijkstra",
    "demonic_prob": "cv_sublinear",
}


class SpecError(ValueError):
    """A parse/validation failure with a stable code and a document path."""

    def __init__(self, code: str, message: str, path: str = "$"):
        self.code = code
        self.path = path
        super().__init__(f"[{code}] at {path}: {message}")


@dataclass
class SpecDocument:
    sets: dict
    computation: KleisliArrow | None
    modality: str | None
    transformer: object | None
    probes: dict | None  # raw probe override; resolved per domain on demand
    seed: int

    def grid_for(self, domain: FinSet) -> ProbeGrid:
        if self.probes is None:
            return ProbeGrid.default(domain, seed=self.seed)
        preds = self.probes.get("predicates")
        scalars = self.probes.get("scalars")
        random_count = self.probes.get("random", 0 if preds else 50)
        if preds is None:
            return ProbeGrid.default(domain, seed=self.seed, random_count=random_count)
        tuples = [tuple(v) for v in preds]
        for t in tuples:
            if len(t) != len(domain):
                raise SpecError("E_PROBE", "probe predicate length mismatch", "$.probes")
        if random_count:
            tuples += ProbeGrid.random_tuples(domain, self.seed, random_count)
        return ProbeGrid.explicit(domain, tuples, scalars, seed=self.seed)


def _rat(value, path: str) -> Fraction:
    try:
        q = parse_rational(value)
    except (ValueError, TypeError) as exc:
        raise SpecError("E_RAT", str(exc), path) from None
    if not (0 <= q <= 1):
        raise SpecError("E_RAT", f"value {q} outside [0, 1]", path)
    return q


def _parse_sets(obj, path: str) -> dict:
    if not isinstance(obj, dict) or not obj:
        raise SpecError("E_SCHEMA", "sets must be a nonempty object", path)
    out = {}
    for name, elems in obj.items():
        if not isinstance(elems, list):
            raise SpecError("E_SCHEMA", f"set {name!r} must be a list of labels", f"{path}.{name}")
        try:
            out[name] = FinSet(name, [str(e) for e in elems])
        except ValueError as exc:
            raise SpecError("E_SET", str(exc), f"{path}.{name}") from None
    return out


def _resolve_set(sets: dict, name, path: str) -> FinSet:
    if name not in sets:
        raise SpecError("E_SET", f"unknown set {name!r}", path)
    return sets[name]


def _parse_row(kind: MonadKind, target: FinSet, raw, path: str):
    if kind == MonadKind.POWERSET:
        if not isinstance(raw, list):
            raise SpecError("E_ROWS", "powerset row must be a list of labels", path)
        return frozenset(_check_label(target, x, path) for x in raw)
    if kind == MonadKind.LIFT_POWERSET:
        if isinstance(raw, list):
            elems, bottom = raw, False
        elif isinstance(raw, dict):
            elems, bottom = raw.get("elements", []), bool(raw.get("bottom", False))
        else:
            raise SpecError("E_ROWS", "lifted row must be a list or {elements, bottom}", path)
        row = {_check_label(target, x, path) for x in elems}
        if bottom:
            row.add(BOT)
        if not row:
            raise SpecError("E_ROWS", "lifted row must be nonempty", path)
        return frozenset(row)
    if kind in (MonadKind.SUBDIST, MonadKind.DIST):
        if not isinstance(raw, dict):
            raise SpecError("E_ROWS", "distribution row must map labels to rationals", path)
        pairs = []
        for y, q in raw.items():
            _check_label(target, y, path)
            pairs.append((y, _rat(q, f"{path}.{y}")))
        d = DistV(pairs)
        if d.mass > 1:
            raise SpecError("E_MASS", f"mass {d.mass} exceeds one", path)
        if kind == MonadKind.DIST and d.mass != 1:
            raise SpecError("E_MASS", f"distribution mass must equal one, got {d.mass}", path)
        return d
    if kind == MonadKind.UP_POWERSET:
        from .monads import is_up_closed, up_closure

        if isinstance(raw, dict) and "generators" in raw:
            gens = [
                frozenset(_check_label(target, x, f"{path}.generators") for x in s)
                for s in raw["generators"]
            ]
            return up_closure(gens, target)
        if isinstance(raw, list):
            fam = frozenset(
                frozenset(_check_label(target, x, path) for x in s) for s in raw
            )
            if not is_up_closed(fam, target):
                raise SpecError("E_UPCLOSED", "family is not up-closed (or use generators)", path)
            return fam
        raise SpecError("E_ROWS", "up-closed row must be a list of lists or {generators}", path)
    if kind == MonadKind.CV_DIST:
        if not isinstance(raw, list) or not raw:
            raise SpecError("E_ROWS", "polytope row must be a nonempty list of vertices", path)
        vertices = []
        for k, v in enumerate(raw):
            if not isinstance(v, dict):
                raise SpecError("E_ROWS", "each vertex maps labels to rationals", f"{path}[{k}]")
            pairs = [(y, _rat(q, f"{path}[{k}].{y}")) for y, q in v.items()]
            for y, _ in pairs:
                _check_label(target, y, f"{path}[{k}]")
            d = DistV(pairs)
            if d.mass != 1:
                raise SpecError("E_MASS", f"vertex mass must equal one, got {d.mass}", f"{path}[{k}]")
            vertices.append(d)
        return tuple(vertices)
    raise SpecError("E_SCHEMA", f"unknown monad kind {kind!r}", path)


def _check_label(target: FinSet, x, path: str) -> str:
    x = str(x)
    if x not in target:
        raise SpecError("E_SET", f"label {x!r} is not in set {target.name!r}", path)
    return x


def _parse_computation(obj, sets: dict, path: str) -> KleisliArrow:
    for key in ("monad", "source", "target", "rows"):
        if key not in obj:
            raise SpecError("E_SCHEMA", f"computation needs {key!r}", path)
    try:
        kind = MonadKind(obj["monad"])
    except ValueError:
        raise SpecError(
            "E_SCHEMA",
            f"unknown monad {obj['monad']!r}; choose from "
            + ", ".join(k.value for k in MonadKind),
            f"{path}.monad",
        ) from None
    source = _resolve_set(sets, obj["source"], f"{path}.source")
    target = _resolve_set(sets, obj["target"], f"{path}.target")
    raw_rows = obj["rows"]
    if not isinstance(raw_rows, dict):
        raise SpecError("E_ROWS", "rows must map source labels to row values", f"{path}.rows")
    missing = [x for x in source.elements if x not in raw_rows]
    if missing:
        raise SpecError("E_ROWS", f"missing rows for {missing}", f"{path}.rows")
    extra = [x for x in raw_rows if x not in source]
    if extra:
        raise SpecError("E_ROWS", f"rows for unknown labels {extra}", f"{path}.rows")
    rows = [
        _parse_row(kind, target, raw_rows[x], f"{path}.rows.{x}") for x in source.elements
    ]
    try:
        return KleisliArrow(kind, source, target, rows)
    except ValueError as exc:
        raise SpecError("E_ROWS", str(exc), f"{path}.rows") from None


def _mask_from_bits(bits: str, carrier: FinSet, path: str) -> int:
    if len(bits) != len(carrier) or any(c not in "01" for c in bits):
        raise SpecError(
            "E_TABLE", f"bitstring {bits!r} must have one 0/1 per element of {carrier.name!r}", path
        )
    m = 0
    for j, c in enumerate(bits):
        if c == "1":
            m |= 1 << j
    return m


def _bits_from_mask(mask: int, carrier: FinSet) -> str:
    return "".join("1" if (mask >> j) & 1 else "0" for j in range(len(carrier)))


def _parse_transformer(obj, sets: dict, doc_computation, doc_modality, path: str):
    kind = obj.get("kind")
    source = _resolve_set(sets, obj.get("source"), f"{path}.source")
    target = _resolve_set(sets, obj.get("target"), f"{path}.target")
    if kind == "truth_table":
        rows = obj.get("rows")
        if not isinstance(rows, dict):
            raise SpecError("E_TABLE", "truth_table needs a rows object", f"{path}.rows")
        n = 1 << len(source)
        table = [None] * n
        for bits, out_bits in rows.items():
            m = _mask_from_bits(bits, source, f"{path}.rows.{bits}")
            table[m] = _mask_from_bits(str(out_bits), target, f"{path}.rows.{bits}")
        missing = [i for i, v in enumerate(table) if v is None]
        if missing:
            raise SpecError(
                "E_TABLE",
                f"truth table incomplete: missing predicate index {missing[0]} of {n}",
                f"{path}.rows",
            )
        return BooleanTransformer(source, target, table)
    if kind == "probe_table":
        pairs = obj.get("pairs")
        if not isinstance(pairs, list) or not pairs:
            raise SpecError("E_TABLE", "probe_table needs a nonempty pairs list", f"{path}.pairs")
        lookup = {}
        for k, entry in enumerate(pairs):
            if not (isinstance(entry, list) and len(entry) == 2):
                raise SpecError(
                    "E_TABLE", "each pair is [predicate-values, value-row]", f"{path}.pairs[{k}]"
                )
            pred = tuple(_rat(v, f"{path}.pairs[{k}][0]") for v in entry[0])
            vals = tuple(_rat(v, f"{path}.pairs[{k}][1]") for v in entry[1])
            if len(pred) != len(source) or len(vals) != len(target):
                raise SpecError("E_TABLE", "pair lengths must match the carriers", f"{path}.pairs[{k}]")
            lookup[pred] = vals
        if doc_computation is not None and doc_modality is not None:
            backing = pt_modality(builtin_modality(doc_modality), doc_computation)
            for pred, vals in lookup.items():
                got = backing.apply_values(pred)
                if got != vals:
                    raise SpecError(
                        "E_PROBE",
                        f"probe pair {pred} disagrees with the defining computation: {got} != {vals}",
                        f"{path}.pairs",
                    )
            return backing

        def fn(values):
            key = tuple(values)
            if key not in lookup:
                raise MissingProbeError(key)
            return lookup[key]

        return RationalTransformer(source, target, fn, label="probe_table")
    raise SpecError("E_SCHEMA", "transformer kind must be truth_table or probe_table", f"{path}.kind")


def parse_spec(text: str) -> SpecDocument:
    """Parse and validate a JSON spec document; every failure carries a
    distinct error code and the offending path."""
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SpecError("E_JSON", f"malformed JSON: {exc}", f"line {exc.lineno}") from None
    if not isinstance(obj, dict):
        raise SpecError("E_SCHEMA", "document must be a JSON object")
    sets = _parse_sets(obj.get("sets"), "$.sets")
    seed = obj.get("seed", 0)
    if not isinstance(seed, int):
        raise SpecError("E_SCHEMA", "seed must be an integer", "$.seed")
    modality = obj.get("modality")
    if modality is not None:
        try:
            builtin_modality(modality)
        except ValueError as exc:
            raise SpecError("E_MODALITY", str(exc), "$.modality") from None
    computation = None
    if obj.get("computation") is not None:
        computation = _parse_computation(obj["computation"], sets, "$.computation")
    transformer = None
    if obj.get("transformer") is not None:
        transformer = _parse_transformer(
            obj["transformer"], sets, computation, modality, "$.transformer"
        )
    probes = obj.get("probes")
    if probes is not None and not isinstance(probes, dict):
        raise SpecError("E_SCHEMA", "probes must be an object", "$.probes")
    return SpecDocument(sets, computation, modality, transformer, probes, seed)


# ---------------------------------------------------------------------------
# Serialization (synth output re-parses as wp input)


def _row_to_json(kind: MonadKind, row, target: FinSet):
    if kind == MonadKind.POWERSET:
        return sorted(row, key=target.index)
    if kind == MonadKind.LIFT_POWERSET:
        return {
            "elements": sorted((y for y in row if y is not BOT), key=target.index),
            "bottom": BOT in row,
        }
    if kind in (MonadKind.SUBDIST, MonadKind.DIST):
        return {y: format_rational(q) for y, q in row.items_in(target)}
    if kind == MonadKind.UP_POWERSET:
        return [sorted(s, key=target.index) for s in sorted(row, key=lambda s: (len(s), sorted(map(target.index, s))))]
    if kind == MonadKind.CV_DIST:
        return [{y: format_rational(q) for y, q in v.items_in(target)} for v in row]
    raise ValueError(kind)


def computation_to_json(arrow: KleisliArrow) -> dict:
    return {
        "sets": {
            arrow.source.name: list(arrow.source.elements),
            arrow.target.name: list(arrow.target.elements),
        },
        "computation": {
            "monad": arrow.kind.value,
            "source": arrow.source.name,
            "target": arrow.target.name,
            "rows": {
                x: _row_to_json(arrow.kind, arrow.row(x), arrow.target)
                for x in arrow.source.elements
            },
        },
    }


def transformer_to_json(phi: BooleanTransformer) -> dict:
    return {
        "sets": {
            phi.source.name: list(phi.source.elements),
            phi.target.name: list(phi.target.elements),
        },
        "transformer": {
            "kind": "truth_table",
            "source": phi.source.name,
            "target": phi.target.name,
            "rows": {
                _bits_from_mask(m, phi.source): _bits_from_mask(phi.table[m], phi.target)
                for m in range(len(phi.table))
            },
        },
    }


def probe_evaluations_to_json(phi: RationalTransformer, grid: ProbeGrid) -> dict:
    pairs = []
    for p in grid.predicates:
        vals = phi.apply_values(p)
        pairs.append([[format_rational(v) for v in p], [format_rational(v) for v in vals]])
    return {
        "sets": {
            phi.source.name: list(phi.source.elements),
            phi.target.name: list(phi.target.elements),
        },
        "transformer": {
            "kind": "probe_table",
            "source": phi.source.name,
            "target": phi.target.name,
            "pairs": pairs,
        },
    }


# ---------------------------------------------------------------------------
# Commands


def _emit(text: str, out_file: str | None) -> None:
    if out_file:
        with open(out_file, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _verdict_exit(verdict: Verdict) -> int:
    if verdict.is_healthy:
        return EXIT_HEALTHY
    if verdict.is_unhealthy:
        return EXIT_UNHEALTHY
    return EXIT_INCONCLUSIVE


def _load_doc(args) -> SpecDocument:
    if not args.spec:
        raise SpecError("E_SCHEMA", "this command needs --spec FILE")
    try:
        with open(args.spec, "r", encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise SpecError("E_IO", str(exc), args.spec) from None
    return parse_spec(text)


def _doc_transformer(doc: SpecDocument, args):
    """The transformer under test: explicit, or wp of the stored computation."""
    if doc.transformer is not None:
        return doc.transformer
    if doc.computation is not None:
        name = args.modality or doc.modality
        if not name:
            raise SpecError("E_MODALITY", "a modality is needed to interpret the computation")
        return pt_modality(builtin_modality(name), doc.computation)
    raise SpecError("E_SCHEMA", "document has neither a transformer nor a computation")


def _cmd_wp(args) -> int:
    doc = _load_doc(args)
    if doc.computation is None:
        raise SpecError("E_SCHEMA", "wp needs a computation", "$.computation")
    name = args.modality or doc.modality
    if not name:
        raise SpecError("E_MODALITY", "wp needs a modality (flag or document)")
    phi = pt_modality(builtin_modality(name), doc.computation)
    if isinstance(phi, BooleanTransformer):
        payload = transformer_to_json(phi)
    else:
        payload = probe_evaluations_to_json(phi, doc.grid_for(phi.source))
    _emit(json.dumps(payload, indent=2) + "\n", args.out)
    return EXIT_HEALTHY


def _cmd_check(args) -> int:
    doc = _load_doc(args)
    if not args.condition:
        raise SpecError("E_SCHEMA", "check needs --condition NAME")
    if args.condition not in CONDITIONS:
        raise SpecError(
            "E_SCHEMA",
            f"unknown condition {args.condition!r}; choose from {'|'.join(sorted(CONDITIONS))}",
        )
    phi = _doc_transformer(doc, args)
    grid = None
    if isinstance(phi, RationalTransformer):
        grid = doc.grid_for(phi.source)
    verdict = run_condition(args.condition, phi, grid)
    report = f"condition: {args.condition}\nverdict: {verdict.describe()}\n"
    _emit(report, args.out)
    return _verdict_exit(verdict)


def _cmd_synth(args) -> int:
    doc = _load_doc(args)
    name = args.modality or doc.modality
    if not name:
        raise SpecError("E_MODALITY", "synth needs a modality to pick the inverse construction")
    mod = builtin_modality(name)
    base = mod.name.split(":")[0]
    instance = _MODALITY_INSTANCE.get(base)
    if instance is None:
        raise SpecError("E_MODALITY", f"no synthesis instance for modality {mod.name!r}")
    phi = _doc_transformer(doc, args)
    grid = doc.grid_for(phi.source) if isinstance(phi, RationalTransformer) else None
    try:
        result = INSTANCES[instance]["synth"](phi, grid)
    except UnhealthyInputError as exc:
        _emit(f"synthesis rejected: {exc.verdict.describe()}\n", args.out)
        return _verdict_exit(exc.verdict)
    lines = [f"residual: {result.residual.describe()}"]
    if result.normalization:
        lines.append(f"normalization: {', '.join(result.normalization)}")
    if result.arrow is not None:
        payload = computation_to_json(result.arrow)
        payload["modality"] = mod.name
        text = json.dumps(payload, indent=2) + "\n" + "\n".join(lines) + "\n"
    else:
        text = "\n".join(lines) + "\n"
    _emit(text, args.out)
    return _verdict_exit(result.residual)


def _cmd_roundtrip(args) -> int:
    doc = _load_doc(args)
    if doc.computation is None:
        raise SpecError("E_SCHEMA", "roundtrip needs a computation", "$.computation")
    name = args.modality or doc.modality
    instance = None
    if name:
        mod = builtin_modality(name)
        instance = _MODALITY_INSTANCE.get(mod.name.split(":")[0])
    grid = None
    if doc.computation.kind in (MonadKind.SUBDIST, MonadKind.DIST, MonadKind.CV_DIST):
        grid = doc.grid_for(doc.computation.target)
    verdict = roundtrip_verify(doc.computation, instance, grid)
    _emit(f"roundtrip: {verdict.describe()}\n", args.out)
    return _verdict_exit(verdict)


def _cmd_laws(args) -> int:
    sizes = args.sizes or [2, 2]
    carriers = [
        FinSet("A", tuple(f"a{i}" for i in range(sizes[0]))),
        FinSet("B", tuple(f"b{i}" for i in range(sizes[1]))),
    ]
    lines = []
    failures = 0

    def record(label: str, verdict: Verdict):
        nonlocal failures
        lines.append(f"{label}: {verdict.describe()}")
        if not verdict.is_healthy:
            failures += 1

    kinds = [MonadKind(args.monad)] if args.monad else list(MonadKind)
    for kind in kinds:
        record(f"monad {kind.value}", check_monad_laws(kind, carriers, seed=args.seed))
    if args.monad is None or args.monad == "powerset":
        record("monad-map sigma", check_monad_map_laws(sigma_spec(), carriers, seed=args.seed))
        record(
            "monad-map sigma_prime",
            check_monad_map_laws(sigma_prime_spec(), carriers, seed=args.seed),
        )
    if args.monad is None or args.monad == "dist":
        record(
            "monad-map support", check_monad_map_laws(support_map_spec(), carriers, seed=args.seed)
        )
    if args.modality:
        mod = builtin_modality(args.modality)
        record(f"algebra {mod.name}", check_algebra_laws(mod, seed=args.seed))
        if mod.structure_class:
            record(
                f"lifting {mod.name}:{mod.structure_class}",
                lifting_check(mod, mod.structure_class, n_max=3, seed=args.seed),
            )
    _emit("\n".join(lines) + "\n", args.out)
    return EXIT_HEALTHY if failures == 0 else EXIT_UNHEALTHY


def _cmd_enum_verify(args) -> int:
    if not args.theorem:
        raise SpecError("E_SCHEMA", "enum-verify needs --theorem ID")
    if args.theorem not in THEOREM_IDS:
        raise SpecError(
            "E_SCHEMA", f"unknown theorem {args.theorem!r}; ids: {', '.join(THEOREM_IDS)}"
        )
    sizes = tuple(args.sizes or (2, 2))
    mode = "exhaustive" if args.theorem in ("may", "must", "game", "dijkstra") else "sampled"
    count = 100 if args.theorem == "cv_sublinear" else 200
    instance = TheoremInstance(args.theorem, sizes, mode, seed=args.seed, count=count)
    t0 = time.perf_counter()
    report = enum_verify(instance, max_enum=args.max_enum, jobs=args.jobs)
    sys.stderr.write(f"elapsed: {time.perf_counter() - t0:.3f}s\n")
    _emit(report.render(), args.out)
    return EXIT_HEALTHY if report.equal else EXIT_UNHEALTHY


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # argparse default exits 2; the contract is 64
        self.print_usage(sys.stderr)
        sys.stderr.write(f"error: {message}\n")
        raise SystemExit(EXIT_INPUT)


def _build_parser() -> _Parser:
    parser = _Parser(prog="wpbench", description=__doc__)
    sub = parser.add_subparsers(dest="command")
    for name, fn in (
        ("wp", _cmd_wp),
        ("check", _cmd_check),
        ("synth", _cmd_synth),
        ("roundtrip", _cmd_roundtrip),
        ("laws", _cmd_laws),
        ("enum-verify", _cmd_enum_verify),
    ):
        p = sub.add_parser(name)
        p.set_defaults(fn=fn)
        p.add_argument("--spec", help="JSON spec file")
        p.add_argument("--condition", help="healthiness condition name")
        p.add_argument("--modality", help="modality name (e.g. diamond, tau_r:1/3)")
        p.add_argument("--theorem", help="theorem id for enum-verify")
        p.add_argument("--sizes", nargs=2, type=int, metavar=("A", "B"))
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--jobs", type=int, default=1)
        p.add_argument("--max-enum", dest="max_enum", type=int, default=1 << 28)
        p.add_argument("--monad", help="monad name for the laws command")
        p.add_argument("--out", help="write the report to a file")
    return parser


def run(argv) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_INPUT
    if not getattr(args, "fn", None):
        parser.print_usage(sys.stderr)
        return EXIT_INPUT
    try:
        return args.fn(args)
    except SpecError as exc:
        sys.stderr.write(f"{exc}\n")
        return EXIT_INPUT
    except SizeGuardError as exc:
        sys.stderr.write(f"size guard: {exc}\n")
        return EXIT_INPUT
    except MissingProbeError as exc:
        sys.stderr.write(f"inconclusive: probe table lacks a required evaluation point: {exc}\n")
        return EXIT_INCONCLUSIVE
    except (ValueError, TypeError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_INPUT


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()

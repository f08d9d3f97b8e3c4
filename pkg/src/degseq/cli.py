"""Command-line front end.

Subcommands: check, conjugate, corners, witness, bench, regress36.
Exit status: 0 realizable / success, 1 not realizable / failure,
2 malformed input, 3 oracle budget exceeded.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from importlib import resources
from typing import Optional

import jsonschema

from .criteria import CheckMode, Verdict, check, index_sets
from .errors import (
    BudgetExceeded,
    ConjugateFormUnavailable,
    DegSeqError,
    InvalidR,
    LengthMismatch,
    MaskInvalid,
    NegativeEntry,
    NotNonincreasing,
)
from .genconj import ClassSpec, ClassTag, StructureMask, class_conjugate, maximal_matrix
from .grids import nonincreasing_upto, signed_nonincreasing
from .oracle import realize, witness_problems
from .seqcore import corners, full_conjugate, weak_dominance

EXIT_OK, EXIT_NO, EXIT_INPUT, EXIT_BUDGET = 0, 1, 2, 3

# The avoid mask blocks the upper-left 2x2 block: two structural zeros in
# columns 1 and 2, outside the one-per-column family.
REGRESSION_MASK = ((1, 1, 0, 0), (1, 1, 0, 0), (0, 0, 0, 0), (0, 0, 0, 0))
REGRESSION_B = (2, 1, 1, 1)
REGRESSION_A = (2, 1, 1, 1)
REGRESSION_CONJUGATE = (2, 0, 2, 1)
REGRESSION_MATRIX = ((0, 0, 1, 1), (0, 0, 1, 0), (1, 0, 0, 0), (1, 0, 0, 0))


class InputError(DegSeqError):
    def __init__(self, field: str, message: str):
        self.field = field
        super().__init__(f"field '{field}': {message}")


def load_schema() -> dict:
    text = resources.files("degseq").joinpath("schema/query.schema.json").read_text("utf-8")
    return json.loads(text)


_VALIDATOR = jsonschema.Draft202012Validator(load_schema())


def validate_document(doc) -> dict:
    errors = sorted(_VALIDATOR.iter_errors(doc), key=lambda e: list(e.path))
    if errors:
        err = errors[0]
        path = list(err.absolute_path)
        if path:
            field = str(path[0])
        elif err.validator == "additionalProperties":
            field = next(iter(set(doc) - set(_VALIDATOR.schema["properties"])), "?")
        elif err.validator == "required":
            field = err.message.split("'")[1]
        else:
            field = "<document>"
        raise InputError(field, err.message)
    return doc


def _int_list(text: str, field: str) -> list[int]:
    if text.strip() == "":
        return []
    try:
        return [int(x) for x in text.split(",")]
    except ValueError:
        raise InputError(field, f"expected comma-separated integers, got {text!r}") from None


def _mask_arg(text: str) -> dict:
    rows = [_int_list(r, "mask") for r in text.split(";")]
    cols = len(rows[0]) if rows else 0
    if any(len(r) != cols for r in rows):
        raise InputError("mask", "rows have different lengths")
    return {"rows": len(rows), "cols": cols, "data": [x for r in rows for x in r]}


def document_from_args(ns) -> dict:
    doc: dict = {"class": ns.cls}
    for name in ("a", "b", "d"):
        value = getattr(ns, name, None)
        if value is not None:
            doc[name] = _int_list(value, name)
    if getattr(ns, "r", None) is not None:
        doc["r"] = ns.r
    if getattr(ns, "n", None) is not None:
        doc["n"] = ns.n
    if getattr(ns, "mask", None) is not None:
        doc["mask"] = _mask_arg(ns.mask)
    if getattr(ns, "polarity", None) is not None:
        doc["polarity"] = ns.polarity
    if getattr(ns, "mode", None) is not None:
        doc["mode"] = ns.mode
    if getattr(ns, "normalize", False):
        doc["normalize"] = True
    return validate_document(doc)


def normalized(doc: dict) -> dict:
    """Descending sort of the degree side; digraphic pairs are permuted jointly."""
    tag = ClassTag(doc["class"])
    if tag == ClassTag.STRUCTURED:
        raise InputError(
            "normalize",
            "refused for structured bipartite queries: mask columns are tied to the order of a",
        )
    out = dict(doc)
    if tag == ClassTag.DIGRAPHIC and "a" in doc and "b" in doc:
        if len(doc["a"]) != len(doc["b"]):
            raise InputError("b", "out- and in-degree lists differ in length")
        pairs = sorted(zip(doc["a"], doc["b"]), key=lambda p: (-p[0], -p[1]))
        out["a"] = [p[0] for p in pairs]
        out["b"] = [p[1] for p in pairs]
        return out
    for name in ("a", "d"):
        if name in doc:
            out[name] = sorted(doc[name], reverse=True)
    return out


def spec_from_document(doc: dict) -> ClassSpec:
    if doc.get("normalize"):
        doc = normalized(doc)
    mask = None
    if "mask" in doc:
        mk = doc["mask"]
        rows, cols, data = mk["rows"], mk["cols"], mk["data"]
        if len(data) != rows * cols:
            raise InputError("mask", f"data has {len(data)} entries, expected {rows}x{cols}")
        entries = [data[i * cols:(i + 1) * cols] for i in range(rows)]
        mask = StructureMask(entries, doc.get("polarity", "fill"))
    elif "polarity" in doc:
        raise InputError("polarity", "given without a mask")
    try:
        return ClassSpec(
            doc["class"],
            a=doc.get("a"),
            b=doc.get("b"),
            d=doc.get("d"),
            r=doc.get("r", 1),
            mask=mask,
            n=doc.get("n"),
        )
    except DegSeqError as exc:
        raise InputError(_guess_field(exc, doc), str(exc)) from None


def _guess_field(exc: Exception, doc: dict) -> str:
    if isinstance(exc, InputError):
        return exc.field
    # the first quoted field name in the message is the one at fault
    text = str(exc)
    hits = [(text.find(f"'{name}'"), name) for name in ("mask", "a", "b", "d", "n", "r")]
    hits = [h for h in hits if h[0] >= 0]
    if hits:
        return min(hits)[1]
    if isinstance(exc, MaskInvalid):
        return "mask"
    if isinstance(exc, InvalidR):
        return "r"
    if isinstance(exc, LengthMismatch):
        return "b"
    if isinstance(exc, ConjugateFormUnavailable):
        return "mode"
    if isinstance(exc, (NotNonincreasing, NegativeEntry)):
        return "d" if doc.get("class") == "imbalance" else "a"
    return "<document>"


# ---------------------------------------------------------------------------
# per-query handlers: each returns (exit status, JSON-able payload)


def handle_check(doc: dict):
    spec = spec_from_document(doc)
    mode = CheckMode(doc.get("mode", "reduced"))
    report = check(spec, mode)
    status = EXIT_OK if report.verdict == Verdict.REALIZABLE else EXIT_NO
    return status, {"class": spec.tag.value, **report.to_dict()}


def handle_conjugate(doc: dict):
    spec = spec_from_document(doc)
    return EXIT_OK, {"class": spec.tag.value, "conjugate": list(class_conjugate(spec))}


def handle_corners(doc: dict):
    spec = spec_from_document(doc)
    a = spec.d if spec.tag == ClassTag.IMBALANCE else spec.a
    if a is None:
        raise InputError("a", "corners needs a sequence")
    if min(a, default=0) < 0:
        return EXIT_OK, {"a": list(a), "corners": corners(a)}
    ac = full_conjugate(a)
    return EXIT_OK, {
        "a": list(a),
        "corners": corners(a),
        "conjugate": list(ac),
        "conjugate_corners": corners(ac),
    }


def handle_witness(doc: dict):
    spec = spec_from_document(doc)
    found = realize(spec)
    if found is None:
        return EXIT_NO, {"class": spec.tag.value, "witness": None}
    return EXIT_OK, {"class": spec.tag.value, "witness": found.matrix.tolist()}


HANDLERS = {
    "check": handle_check,
    "conjugate": handle_conjugate,
    "corners": handle_corners,
    "witness": handle_witness,
}


def run_one(command: str, doc) -> tuple[int, dict]:
    try:
        doc = validate_document(doc)
        return HANDLERS[command](doc)
    except BudgetExceeded as exc:
        return EXIT_BUDGET, {"error": str(exc), "field": None}
    except InputError as exc:
        return EXIT_INPUT, {"error": str(exc), "field": exc.field}
    except DegSeqError as exc:
        field = _guess_field(exc, doc if isinstance(doc, dict) else {})
        return EXIT_INPUT, {"error": f"field '{field}': {exc}", "field": field}


def combine_status(statuses) -> int:
    statuses = set(statuses)
    for s in (EXIT_INPUT, EXIT_BUDGET, EXIT_NO):
        if s in statuses:
            return s
    return EXIT_OK


def run_batch(command: str, docs: list, workers: Optional[int] = None) -> list:
    # map() yields results in input order regardless of completion order
    with ThreadPoolExecutor(max_workers=workers or os.cpu_count() or 1) as pool:
        return list(pool.map(lambda d: run_one(command, d), docs))


# ---------------------------------------------------------------------------
# text rendering


def _text(command: str, payload: dict) -> str:
    if "error" in payload:
        return f"error: {payload['error']}"
    if command == "check":
        lines = [f"{payload['class']}: {payload['verdict']} (mode {payload['mode']})"]
        if payload["shortcut"]:
            lines.append(f"  shortcut: {payload['shortcut']}")
        if payload["precondition_note"]:
            lines.append(f"  {payload['precondition_note']}")
        for k, lhs, rhs in payload["checked"]:
            mark = "ok" if lhs <= rhs else "FAIL"
            lines.append(f"  k={k}: {lhs} <= {rhs}  {mark}")
        return "\n".join(lines)
    if command == "witness":
        if payload["witness"] is None:
            return "none"
        return "\n".join(" ".join(map(str, row)) for row in payload["witness"])
    if command == "conjugate":
        return "(" + ",".join(map(str, payload["conjugate"])) + ")"
    if command == "corners" and "conjugate" not in payload:
        return f"C(a) = {payload['corners']}"
    if command == "corners":
        return (f"C(a) = {payload['corners']}\n"
                f"a' = {payload['conjugate']}\nC(a') = {payload['conjugate_corners']}")
    return json.dumps(payload)


# ---------------------------------------------------------------------------
# bench


def bench_row(spec: ClassSpec) -> dict:
    sets = index_sets(spec)
    seq = spec.d if spec.tag == ClassTag.IMBALANCE else spec.a
    report = check(spec, CheckMode.REDUCED)
    return {
        "class": spec.tag.value,
        "n": spec.n,
        "full": len(sets[CheckMode.FULL]),
        "corners": len(sets[CheckMode.CORNERS]),
        "reduced": len(sets[CheckMode.REDUCED]),
        "distinct": len({x for x in seq if x != 0}),
        "verdict": report.verdict.value,
    }


def grid_specs(cls: str, max_n: int, max_entry: int, r: int = 1):
    tag = ClassTag(cls)
    if tag == ClassTag.IMBALANCE:
        for n in range(1, max_n + 1):
            for d in signed_nonincreasing(n, max_entry):
                if sum(d) == 0:
                    yield ClassSpec(tag, d=d)
        return
    for a in nonincreasing_upto(max_n, max_entry, min_n=1):
        n = len(a)
        if tag == ClassTag.GRAPHIC:
            yield ClassSpec(tag, a=a)
        elif tag == ClassTag.MULTIGRAPHIC:
            yield ClassSpec(tag, a=a, r=r)
        elif tag == ClassTag.TOURNAMENT:
            if sum(a) == n * (n - 1) // 2:
                yield ClassSpec(tag, a=a)
        else:
            raise InputError("grid", f"no grid generator for class {cls!r}")


def render_table(rows: list) -> str:
    cols = ["class", "n", "full", "corners", "reduced", "distinct", "verdict"]
    widths = {c: max(len(c), *(len(str(r[c])) for r in rows)) if rows else len(c) for c in cols}
    lines = ["  ".join(c.rjust(widths[c]) for c in cols)]
    lines += ["  ".join(str(r[c]).rjust(widths[c]) for c in cols) for r in rows]
    if rows:
        mean = {c: sum(r[c] for r in rows) / len(rows) for c in ("full", "corners", "reduced", "distinct")}
        lines.append(
            f"mean over {len(rows)} rows: full {mean['full']:.3f}  corners {mean['corners']:.3f}  "
            f"reduced {mean['reduced']:.3f}  distinct {mean['distinct']:.3f}"
        )
    return "\n".join(lines)


# ---------------------------------------------------------------------------
# regression for the corner-reduction counterexample


def regress36(out=print) -> bool:
    mask = StructureMask(REGRESSION_MASK, "avoid")
    spec = ClassSpec(ClassTag.STRUCTURED, b=REGRESSION_B, mask=mask)
    bc = class_conjugate(spec)
    A = maximal_matrix(spec).entries
    cs = corners(REGRESSION_A)
    pa = [sum(REGRESSION_A[:k]) for k in range(5)]
    pb = [sum(bc[:k]) for k in range(5)]
    at_corners = all(pa[k] <= pb[k] for k in cs)
    dom = weak_dominance(REGRESSION_A, bc)
    found = realize(ClassSpec(ClassTag.STRUCTURED, a=REGRESSION_A, b=REGRESSION_B, mask=mask))

    checks = [
        (f"b^C = {bc}", bc == REGRESSION_CONJUGATE),
        ("maximal matrix = " + " / ".join("".join(map(str, r)) for r in A),
         A == REGRESSION_MATRIX),
        (f"corners of a = {cs}, inequalities hold there", cs == [1, 4] and at_corners),
        (f"prefix dominance violated at k={dom.first_violation and dom.first_violation[0]} "
         f"({dom.first_violation and dom.first_violation[1]} > "
         f"{dom.first_violation and dom.first_violation[2]})",
         not dom.holds and dom.first_violation == (2, 3, 2)),
        ("no realizing matrix exists", found is None),
    ]
    ok = all(passed for _, passed in checks)
    for label, passed in checks:
        out(f"  [{'ok' if passed else 'FAIL'}] {label}")
    out("PASS" if ok else "FAIL")
    return ok


# ---------------------------------------------------------------------------
# argument parsing


def _add_query_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--class", dest="cls", choices=[t.value for t in ClassTag])
    p.add_argument("--a", help="comma-separated degree sequence (column side)")
    p.add_argument("--b", help="comma-separated partner sequence (row side)")
    p.add_argument("--d", help="comma-separated imbalance sequence")
    p.add_argument("--r", type=int, help="edge multiplicity bound")
    p.add_argument("--n", type=int, help="vertex / column count when no sequence fixes it")
    p.add_argument("--mask", help="rows separated by ';', entries by ','")
    p.add_argument("--polarity", choices=["fill", "avoid"])
    p.add_argument("--normalize", action="store_true", help="sort descending before checking")
    p.add_argument("--file", help="JSON array of query documents (batch mode)")
    p.add_argument("--text", action="store_true", help="human-readable output")
    p.add_argument("--echo", action="store_true", help="print the parsed query document and exit")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="degseq", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    for name, help_text in (
        ("check", "decide realizability"),
        ("conjugate", "print the generalized conjugate"),
        ("corners", "print C(a), a' and C(a')"),
        ("witness", "search for a realization by brute force"),
    ):
        p = sub.add_parser(name, help=help_text)
        _add_query_args(p)
        if name == "check":
            p.add_argument("--mode", choices=[m.value for m in CheckMode])
    p = sub.add_parser("bench", help="count inequalities per mode over a batch")
    p.add_argument("--file", help="JSON array of query documents")
    p.add_argument("--grid", choices=["graphic", "multigraphic", "tournament", "imbalance"])
    p.add_argument("--max-n", type=int, default=6)
    p.add_argument("--max-entry", type=int, default=5)
    p.add_argument("--r", type=int, default=1)
    p.add_argument("--text", action="store_true")
    sub.add_parser("regress36", help="run the corner-reduction counterexample end to end")
    return parser


def _read_batch(path: str) -> list:
    try:
        with open(path, encoding="utf-8") as fh:
            docs = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise InputError("file", str(exc)) from None
    if not isinstance(docs, list):
        raise InputError("file", "expected a JSON array of query documents")
    return docs


def main(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr

    def emit(line: str) -> None:
        print(line, file=stdout)

    parser = build_parser()
    try:
        ns = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK

    try:
        if ns.command == "regress36":
            return EXIT_OK if regress36(emit) else EXIT_NO

        if ns.command == "bench":
            if ns.file:
                specs = []
                for doc in _read_batch(ns.file):
                    specs.append(spec_from_document(validate_document(doc)))
            elif ns.grid:
                specs = list(grid_specs(ns.grid, ns.max_n, ns.max_entry, ns.r))
            else:
                raise InputError("file", "bench needs --file or --grid")
            rows = [bench_row(s) for s in specs]
            if ns.text:
                emit(render_table(rows))
            else:
                for row in rows:
                    emit(json.dumps(row))
            return EXIT_OK

        if ns.file:
            docs = _read_batch(ns.file)
            if ns.echo:
                for doc in docs:
                    emit(json.dumps(validate_document(doc)))
                return EXIT_OK
            results = run_batch(ns.command, docs)
            for status, payload in results:
                emit(_text(ns.command, payload) if ns.text else json.dumps(payload))
            return combine_status(s for s, _ in results)

        if ns.cls is None:
            raise InputError("class", "--class is required without --file")
        doc = document_from_args(ns)
        if ns.echo:
            emit(json.dumps(doc))
            return EXIT_OK
        status, payload = run_one(ns.command, doc)
        if "error" in payload:
            print(f"degseq {ns.command}: {payload['error']}", file=stderr)
            return status
        emit(_text(ns.command, payload) if ns.text else json.dumps(payload))
        return status
    except BudgetExceeded as exc:
        print(f"degseq {ns.command}: {exc}", file=stderr)
        return EXIT_BUDGET
    except DegSeqError as exc:
        print(f"degseq {ns.command}: {exc}", file=stderr)
        return EXIT_INPUT


def witness_is_valid(spec: ClassSpec, matrix) -> bool:
    """Convenience for scripts: validate a matrix against ``spec``."""
    from .genconj import IntMatrix
    from .oracle import Witness

    return not witness_problems(spec, Witness(IntMatrix(tuple(map(tuple, matrix))), spec.tag))


if __name__ == "__main__":
    sys.exit(main())

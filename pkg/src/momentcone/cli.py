"""Command line interface.

Exit codes: 0 ok, 2 parse error, 3 invalid cone, 4 valid but not good,
5 oracle disagreement or internal consistency failure.
"""
from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path
from typing import Optional, Sequence

from momentcone import report
from momentcone.cone_model import ConeSpec, validate
from momentcone.errors import ConeParseError, ConsistencyFailure, InternalInvariantViolation
from momentcone.face_lattice import enumerate_faces
from momentcone.oracles import run_oracles
from momentcone.report import EXIT_INVALID, EXIT_OK, EXIT_ORACLE, EXIT_PARSE
from momentcone.witness import all_witnesses

log = logging.getLogger("momentcone")


def _reject_float(token):
    raise ConeParseError(f"non-integer number {token!r}")


def _is_int(x) -> bool:
    return isinstance(x, int) and not isinstance(x, bool)


def parse_cone_json(text: str, name: Optional[str] = None) -> ConeSpec:
    """Parse ``{"name": ..., "dim": n, "normals": [[...], ...]}``."""
    try:
        data = json.loads(text, parse_float=_reject_float, parse_constant=_reject_float)
    except json.JSONDecodeError as exc:
        raise ConeParseError(f"bad JSON: {exc}") from exc
    if not isinstance(data, dict):
        raise ConeParseError("expected a JSON object")
    dim, normals = data.get("dim"), data.get("normals")
    if not _is_int(dim) or dim < 1:
        raise ConeParseError("'dim' must be a positive integer")
    if not isinstance(normals, list) or not normals:
        raise ConeParseError("'normals' must be a nonempty list")
    for j, mu in enumerate(normals, 1):
        if not isinstance(mu, list) or not all(_is_int(x) for x in mu):
            raise ConeParseError(f"normal {j} is not a list of integers")
        if len(mu) != dim:
            raise ConeParseError(f"normal {j} has {len(mu)} entries, expected {dim}")
    label = data.get("name", name)
    if label is not None and not isinstance(label, str):
        raise ConeParseError("'name' must be a string")
    return ConeSpec(dim, tuple(tuple(mu) for mu in normals), label)


def parse_cone_text(text: str, name: Optional[str] = None) -> ConeSpec:
    """Parse the plain format: ``n N`` then N lines of n integers; '#' starts a comment."""
    lines = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].split()
        if line:
            lines.append(line)
    if not lines:
        raise ConeParseError("empty cone file")
    try:
        rows = [[int(tok) for tok in line] for line in lines]
    except ValueError as exc:
        raise ConeParseError(f"non-integer token: {exc}") from exc
    header, body = rows[0], rows[1:]
    if len(header) != 2:
        raise ConeParseError("first line must be 'n N'")
    n, N = header
    if n < 1 or N < 1:
        raise ConeParseError("n and N must be positive")
    if len(body) != N:
        raise ConeParseError(f"expected {N} normals, found {len(body)}")
    for j, mu in enumerate(body, 1):
        if len(mu) != n:
            raise ConeParseError(f"normal {j} has {len(mu)} entries, expected {n}")
    return ConeSpec(n, tuple(tuple(mu) for mu in body), name)


def parse_cone(text: str, name: Optional[str] = None) -> ConeSpec:
    if text.lstrip().startswith("{"):
        return parse_cone_json(text, name)
    return parse_cone_text(text, name)


def load_cone(path) -> ConeSpec:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise ConeParseError(f"cannot read {path}: {exc}") from exc
    return parse_cone(text, path.stem)


def _emit(args, payload: dict, text: str) -> None:
    if args.json:
        print(json.dumps(payload, sort_keys=True))
    else:
        print(text)


def cmd_validate(args) -> int:
    cone = load_cone(args.path)
    v = validate(cone)
    payload = {"schema": report.SCHEMA, "validation": report.validation_dict(v),
               "cone": report.cone_dict(v.cone) if v.cone else None}
    _emit(args, payload, "\n".join(report.validation_text(v)))
    return EXIT_OK if v.ok else EXIT_INVALID


def cmd_analyze(args) -> int:
    analysis = report.analyze(load_cone(args.path), witnesses=args.witnesses)
    if args.json:
        print(report.to_json(analysis, faces=args.faces))
    else:
        print(report.to_text(analysis, faces=args.faces))
    return analysis.exit_code


def _validated(args):
    v = validate(load_cone(args.path))
    if not v.ok:
        _emit(args, {"schema": report.SCHEMA, "validation": report.validation_dict(v)},
              "\n".join(report.validation_text(v)))
        return None
    return v.cone


def cmd_faces(args) -> int:
    cone = _validated(args)
    if cone is None:
        return EXIT_INVALID
    lattice = enumerate_faces(cone)
    payload = {"schema": report.SCHEMA, "cone": report.cone_dict(cone), **report.lattice_dict(lattice)}
    _emit(args, payload, "\n".join(report.faces_text(lattice)))
    return EXIT_OK


def cmd_witness(args) -> int:
    cone = _validated(args)
    if cone is None:
        return EXIT_INVALID
    witnesses = all_witnesses(cone, enumerate_faces(cone))
    payload = {"schema": report.SCHEMA, "cone": report.cone_dict(cone),
               "witnesses": [report.witness_dict(w) for w in witnesses]}
    _emit(args, payload, "\n".join(report.witnesses_text(witnesses)))
    return EXIT_OK


def cmd_oracle(args) -> int:
    cone = load_cone(args.path)
    try:
        analysis = report.analyze(cone)
        if analysis.exit_code != EXIT_OK:
            print("\n".join(report.validation_text(analysis.validation)))
            if analysis.goodness is not None:
                print("cone is not good; oracles need a good cone")
            return analysis.exit_code
        diffs = run_oracles(analysis.cone, analysis.lattice,
                            analysis.homotopy.pi1.invariant_factors)
    except (ConsistencyFailure, InternalInvariantViolation) as exc:
        diffs = [f"{type(exc).__name__}: {exc}"]
    if diffs:
        print("oracle disagreement:")
        for d in diffs:
            print(f"  {d}")
        return EXIT_ORACLE
    print("all oracles agree")
    return EXIT_OK


def _batch_item(item: tuple[int, str, Optional[str], bool, bool]) -> dict:
    index, source, text, faces, witnesses = item
    record = {"index": index, "source": source}
    try:
        if text is None:
            cone = load_cone(source)
        else:
            cone = parse_cone(text)
        analysis = report.analyze(cone, witnesses=witnesses)
    except (ConeParseError, ValueError) as exc:
        record.update(exit_code=EXIT_PARSE, error={"type": "ParseError", "message": str(exc)})
        return record
    except (ConsistencyFailure, InternalInvariantViolation) as exc:
        record.update(exit_code=EXIT_ORACLE,
                      error={"type": type(exc).__name__, "message": str(exc)})
        return record
    record.update(exit_code=analysis.exit_code, report=report.to_dict(analysis, faces))
    return record


def batch_items(list_path, faces: bool = False, witnesses: bool = False) -> list[tuple]:
    """One work item per non-blank, non-comment line of a batch list.

    A line starting with '{' is an inline JSON cone; anything else is a path,
    resolved relative to the list file.
    """
    list_path = Path(list_path)
    try:
        lines = list_path.read_text(encoding="utf-8").splitlines()
    except OSError as exc:
        raise ConeParseError(f"cannot read {list_path}: {exc}") from exc
    items = []
    for line in lines:
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        if line.startswith("{"):
            items.append((len(items), "<inline>", line, faces, witnesses))
        else:
            path = Path(line)
            if not path.is_absolute():
                path = list_path.parent / path
            items.append((len(items), str(path), None, faces, witnesses))
    return items


def run_batch(items: Sequence[tuple], jobs: int = 1) -> list[dict]:
    if jobs <= 1 or len(items) <= 1:
        return [_batch_item(it) for it in items]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(_batch_item, items, chunksize=max(1, len(items) // (4 * jobs))))


def cmd_batch(args) -> int:
    records = run_batch(batch_items(args.path, args.faces, args.witnesses), args.jobs)
    for rec in records:
        print(json.dumps(rec, sort_keys=True))
    return max((rec["exit_code"] for rec in records), default=EXIT_OK)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="momentcone",
        description="Homotopy invariants of contact toric manifolds from their moment cones.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help):
        p = sub.add_parser(name, help=help)
        p.add_argument("path")
        fmt = p.add_mutually_exclusive_group()
        fmt.add_argument("--json", action="store_true", help="machine-readable output")
        fmt.add_argument("--text", dest="json", action="store_false", help="plain text (default)")
        p.set_defaults(func=func)
        return p

    add("validate", cmd_validate, "check the cone hypotheses")
    p = add("analyze", cmd_analyze, "full report: goodness, pi_1, pi_2, arrangement")
    p.add_argument("--witnesses", action="store_true", help="include a witness per nonzero face")
    p.add_argument("--faces", action="store_true", help="include the face lattice")
    add("faces", cmd_faces, "print the extreme rays and face lattice")
    add("witness", cmd_witness, "print moment-map witnesses for every nonzero face")
    add("oracle", cmd_oracle, "cross-check the pipeline against brute-force oracles")
    p = add("batch", cmd_batch, "analyze a list of cones, one JSON record per line")
    p.add_argument("--jobs", type=int, default=1, help="worker processes (default 1)")
    p.add_argument("--witnesses", action="store_true")
    p.add_argument("--faces", action="store_true")
    return parser


def _configure_logging() -> None:
    level = os.environ.get("MOMENTCONE_LOG", "WARNING").upper()
    logging.basicConfig(level=getattr(logging, level, logging.WARNING), stream=sys.stderr,
                        format="%(levelname)s %(name)s: %(message)s")


def main(argv: Optional[Sequence[str]] = None) -> int:
    _configure_logging()
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ConeParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except (ConsistencyFailure, InternalInvariantViolation) as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return EXIT_ORACLE


if __name__ == "__main__":
    sys.exit(main())

"""End-to-end analysis of one cone and its serialized report."""
from __future__ import annotations

import json
import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Optional

from momentcone.cone_model import ConeSpec, ReebVector, ValidationReport, reeb_vector, validate
from momentcone.face_lattice import FaceLattice, GoodnessReport, check_good, enumerate_faces, extreme_rays
from momentcone.homotopy import HomotopyReport, consistency_check
from momentcone.witness import MomentWitness, all_witnesses

log = logging.getLogger(__name__)

SCHEMA = "momentcone.report/1"

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_INVALID = 3
EXIT_NOT_GOOD = 4
EXIT_ORACLE = 5


@dataclass(frozen=True)
class Analysis:
    validation: ValidationReport
    lattice: Optional[FaceLattice] = None
    goodness: Optional[GoodnessReport] = None
    reeb: Optional[ReebVector] = None
    homotopy: Optional[HomotopyReport] = None
    witnesses: Optional[list[MomentWitness]] = None

    @property
    def cone(self) -> Optional[ConeSpec]:
        return self.validation.cone

    @property
    def exit_code(self) -> int:
        if not self.validation.ok:
            return EXIT_INVALID
        if not self.goodness.good:
            return EXIT_NOT_GOOD
        return EXIT_OK


def analyze(raw: ConeSpec, witnesses: bool = False) -> Analysis:
    """Validate, enumerate faces, test goodness, and compute invariants when good."""
    validation = validate(raw)
    if not validation.ok:
        log.info("cone %s invalid: %s", raw.name, validation.codes())
        return Analysis(validation)
    cone = validation.cone
    rays = extreme_rays(cone)
    lattice = enumerate_faces(cone, rays)
    log.debug("%d rays, %d faces", len(rays), len(lattice))
    goodness = check_good(cone, lattice)
    reeb = reeb_vector(cone, rays)
    homotopy = consistency_check(cone, lattice, goodness) if goodness.good else None
    wit = all_witnesses(cone, lattice) if witnesses else None
    return Analysis(validation, lattice, goodness, reeb, homotopy, wit)


def _q(x: Fraction) -> Any:
    return x.numerator if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def _labels(s) -> list[int]:
    return sorted(s)


def cone_dict(cone: ConeSpec) -> dict:
    return {"name": cone.name, "dim": cone.n, "num_facets": cone.N,
            "normals": [list(mu) for mu in cone.normals]}


def validation_dict(v: ValidationReport) -> dict:
    return {
        "ok": v.ok,
        "normalized": list(v.normalized),
        "failures": [{"code": f.code, "indices": list(f.indices), "message": f.message}
                     for f in v.failures],
    }


def lattice_dict(lattice: FaceLattice) -> dict:
    return {
        "rays": [{"generator": list(r.generator), "active_set": _labels(r.active_set)}
                 for r in lattice.rays],
        "faces": [{"active_set": _labels(f.active_set), "dim": f.dim, "codim": f.codim,
                   "rays": list(f.rays)} for f in lattice],
    }


def witness_dict(w: MomentWitness) -> dict:
    return {"active_set": _labels(w.face.active_set), "eta": [_q(x) for x in w.eta],
            "m": [_q(x) for x in w.m]}


def homotopy_dict(h: HomotopyReport) -> dict:
    def group(g):
        return {"invariant_factors": list(g.invariant_factors), "free_rank": g.free_rank,
                "order": g.order() if g.is_finite else None, "text": str(g)}
    return {
        "pi1": group(h.pi1),
        "pi2_rank": h.pi2_rank,
        "pi0_T": group(h.pi0_T),
        "pi1_T_rank": h.pi1_T_rank,
        "oracle_order": h.oracle_order,
        "arrangement": {"minimal_members": h.arrangement.as_lists(),
                        "codims": list(h.arrangement.codims)},
    }


def to_dict(a: Analysis, faces: bool = False) -> dict:
    out: dict[str, Any] = {"schema": SCHEMA, "validation": validation_dict(a.validation)}
    out["cone"] = cone_dict(a.cone) if a.cone is not None else None
    if a.goodness is not None:
        out["goodness"] = {
            "good": a.goodness.good,
            "violations": [{"condition": v.condition, "active_set": _labels(v.active_set),
                            "codim": v.codim} for v in a.goodness.violations],
        }
        out["reeb_vector"] = list(a.reeb.X)
    if a.homotopy is not None:
        out["homotopy"] = homotopy_dict(a.homotopy)
    if faces and a.lattice is not None:
        out["faces"] = lattice_dict(a.lattice)
    if a.witnesses is not None:
        out["witnesses"] = [witness_dict(w) for w in a.witnesses]
    return out


def to_json(a: Analysis, faces: bool = False) -> str:
    return json.dumps(to_dict(a, faces), sort_keys=True)


def _vec(v) -> str:
    return "(" + ",".join(str(_q(Fraction(x))) for x in v) + ")"


def _set(s) -> str:
    return "{" + ",".join(map(str, _labels(s))) + "}"


def validation_text(v: ValidationReport) -> list[str]:
    lines = [f"validation: {'ok' if v.ok else 'FAILED'}"]
    if v.normalized:
        lines.append(f"  primitivized normals: {', '.join(map(str, v.normalized))}")
    for f in v.failures:
        where = f" at {', '.join(map(str, f.indices))}" if f.indices else ""
        lines.append(f"  {f.code}{where}: {f.message}")
    return lines


def to_text(a: Analysis, faces: bool = False) -> str:
    lines = []
    if a.cone is not None:
        c = a.cone
        lines.append(f"cone: {c.name or '-'}  n={c.n}  N={c.N}")
        lines.append("normals: " + " ".join(_vec(mu) for mu in c.normals))
    lines += validation_text(a.validation)
    if a.goodness is not None:
        lines.append(f"good: {'yes' if a.goodness.good else 'no'}")
        for v in a.goodness.violations:
            lines.append(f"  {v.condition} fails at face {_set(v.active_set)} (codim {v.codim})")
        lines.append(f"reeb vector: {_vec(a.reeb.X)}")
    if a.homotopy is not None:
        h = a.homotopy
        lines.append(f"pi1 = {h.pi1}  (invariant factors {list(h.pi1.invariant_factors)}, "
                     f"order {h.pi1.order()}, minors oracle {h.oracle_order})")
        lines.append(f"pi2 = Z^{h.pi2_rank}")
        lines.append(f"pi0(T) = {h.pi0_T}  pi1(T) = Z^{h.pi1_T_rank}")
        lines.append("U minimal: " + " ".join(_set(I) for I in h.arrangement.minimal_members))
    if faces and a.lattice is not None:
        lines += faces_text(a.lattice)
    if a.witnesses is not None:
        lines += witnesses_text(a.witnesses)
    return "\n".join(lines)


def faces_text(lattice: FaceLattice) -> list[str]:
    lines = [f"rays: {len(lattice.rays)}"]
    for i, r in enumerate(lattice.rays):
        lines.append(f"  r{i} {_vec(r.generator)} on {_set(r.active_set)}")
    lines.append(f"faces: {len(lattice)}")
    for f in lattice:
        rays = ",".join(f"r{i}" for i in f.rays) or "-"
        lines.append(f"  {_set(f.active_set):<16} dim {f.dim}  codim {f.codim}  rays {rays}")
    return lines


def witnesses_text(witnesses: list[MomentWitness]) -> list[str]:
    lines = [f"witnesses: {len(witnesses)}"]
    for w in witnesses:
        lines.append(f"  {_set(w.face.active_set):<16} eta {_vec(w.eta)}  |z|^2 {_vec(w.m)}")
    return lines

"""pi_1 and pi_2 of the contact manifold attached to a good cone.

pi_1 is the cokernel of the normal matrix ``Z^N -> Z^n``; pi_2 is free of rank
``N - n``. Both are also read off the kernel torus ``T``: its character
group ``Z^N / M^T Z^n`` has torsion ``pi_0(T)`` and free rank ``dim T``.
"""
from __future__ import annotations

from dataclasses import dataclass

from momentcone import lattice_algebra
from momentcone.cone_model import ConeSpec
from momentcone.errors import ConsistencyFailure, InternalInvariantViolation, NotGoodCone
from momentcone.face_lattice import (
    Arrangement,
    FaceLattice,
    GoodnessReport,
    arrangement_U,
    check_good,
    enumerate_faces,
)
from momentcone.lattice_algebra import FinAbGroup


@dataclass(frozen=True)
class HomotopyReport:
    pi1: FinAbGroup
    pi2_rank: int
    pi0_T: FinAbGroup
    pi1_T_rank: int
    arrangement: Arrangement
    oracle_order: int


def _require_good(cone: ConeSpec, lattice: FaceLattice | None) -> FaceLattice:
    if lattice is None:
        lattice = enumerate_faces(cone)
    report = check_good(cone, lattice)
    if not report.good:
        first = report.violations[0]
        raise NotGoodCone(
            f"{len(report.violations)} violation(s), first: {first.condition} "
            f"at face {sorted(first.active_set)}")
    return lattice


def compute_pi1(cone: ConeSpec, lattice: FaceLattice | None = None) -> FinAbGroup:
    """``Z^n / span_Z{mu_j}``, refusing cones that are not good."""
    _require_good(cone, lattice)
    group = lattice_algebra.cokernel(cone.matrix())
    if group.free_rank:
        raise InternalInvariantViolation(
            f"normals of a validated cone leave free rank {group.free_rank}")
    return group


def compute_pi2_rank(cone: ConeSpec, lattice: FaceLattice | None = None) -> int:
    _require_good(cone, lattice)
    return cone.N - cone.n


def kernel_torus_invariants(cone: ConeSpec) -> tuple[FinAbGroup, int]:
    """``(pi_0(T), dim T)`` from the character group of ``T``."""
    characters = lattice_algebra.cokernel(cone.matrix().T)
    return FinAbGroup(characters.invariant_factors), characters.free_rank


def consistency_check(cone: ConeSpec, lattice: FaceLattice | None = None,
                      goodness: GoodnessReport | None = None) -> HomotopyReport:
    """Assemble the homotopy report and cross-check every route.

    Raises ConsistencyFailure naming the check that disagreed: ``minor-order``
    and ``minor-chain`` compare the Smith form against determinantal divisors,
    ``arrangement`` the codimension bound, ``lemma-pi0`` and ``lemma-pi1``
    the two descriptions of T.
    """
    if lattice is None:
        lattice = enumerate_faces(cone)
    if goodness is None:
        goodness = check_good(cone, lattice)
    if not goodness.good:
        raise NotGoodCone("homotopy invariants are only defined for good cones")

    M = cone.matrix()
    pi1 = compute_pi1(cone, lattice)
    pi2_rank = cone.N - cone.n

    oracle_order = lattice_algebra.minor_gcd(M, cone.n)
    if pi1.order() != oracle_order:
        raise ConsistencyFailure(
            "minor-order", f"Smith order {pi1.order()} != gcd of maximal minors {oracle_order}")
    divisors = [1] + [lattice_algebra.minor_gcd(M, k) for k in range(1, cone.n + 1)]
    chain = tuple(d for d in (divisors[k] // divisors[k - 1] for k in range(1, cone.n + 1)) if d > 1)
    if chain != pi1.invariant_factors:
        raise ConsistencyFailure(
            "minor-chain", f"invariant factors {pi1.invariant_factors} != divisor ratios {chain}")

    try:
        arrangement = arrangement_U(cone, lattice)
    except InternalInvariantViolation as exc:
        raise ConsistencyFailure("arrangement", str(exc)) from exc
    if any(c < 2 for c in arrangement.codims):
        raise ConsistencyFailure("arrangement", f"codimensions {arrangement.codims}")

    pi0_T, pi1_T_rank = kernel_torus_invariants(cone)
    if pi0_T != pi1:
        raise ConsistencyFailure("lemma-pi0", f"pi_0(T) = {pi0_T} but Z^n/Lambda = {pi1}")
    if pi1_T_rank != pi2_rank:
        raise ConsistencyFailure("lemma-pi1", f"dim T = {pi1_T_rank} but N - n = {pi2_rank}")

    return HomotopyReport(pi1, pi2_rank, pi0_T, pi1_T_rank, arrangement, oracle_order)

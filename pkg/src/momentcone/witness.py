"""Exact moment-map witnesses for the faces of a cone.

A point ``z`` of C^N is tracked only through its squared magnitudes
``m_j = |z_j|^2``. The moment map of the standard torus is then just ``m``,
and the kernel-torus moment map is ``m`` restricted to the integer kernel of
the normal matrix, so every identity below is linear and exact over Q.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from momentcone.cone_model import ConeSpec
from momentcone.errors import InternalInvariantViolation, ZeroFace
from momentcone.face_lattice import Face, FaceLattice, Ray, enumerate_faces
from momentcone.lattice_algebra import kernel_basis

QVector = tuple[Fraction, ...]


@dataclass(frozen=True)
class MomentWitness:
    face: Face
    eta: QVector
    m: QVector


def relint_point(face: Face, rays: Sequence[Ray]) -> QVector:
    """Sum of the face's primitive ray generators."""
    if face.is_zero:
        raise ZeroFace(f"face {face.label()} is the vertex")
    gens = [rays[i].generator for i in face.rays]
    return tuple(Fraction(sum(c)) for c in zip(*gens))


def _pair_exact(cone: ConeSpec, eta: QVector) -> QVector:
    if all(x.denominator == 1 for x in eta):
        return tuple(Fraction(v) for v in cone.pair([x.numerator for x in eta]))
    return tuple(Fraction(v) for v in cone.pair(eta))


def witness_for_face(cone: ConeSpec, face: Face, rays: Sequence[Ray],
                     kernel: Optional[list] = None) -> MomentWitness:
    """Witness point for a nonzero face, with both identities verified."""
    eta = relint_point(face, rays)
    m = _pair_exact(cone, eta)
    zeros = frozenset(j for j, v in enumerate(m, 1) if v == 0)
    if any(v < 0 for v in m) or zeros != face.active_set:
        raise InternalInvariantViolation(
            f"witness {eta} for face {face.label()} has squared magnitudes {m}")
    if kernel is None:
        kernel = kernel_basis(cone.matrix())
    for k in kernel:
        if sum(a.numerator * b if a.denominator == 1 else a * b for a, b in zip(m, k)):
            raise InternalInvariantViolation(
                f"witness for face {face.label()} is not in the zero level: <m, {k}> != 0")
    return MomentWitness(face, eta, m)


def all_witnesses(cone: ConeSpec, lattice: FaceLattice) -> list[MomentWitness]:
    kernel = kernel_basis(cone.matrix())
    return [witness_for_face(cone, f, lattice.rays, kernel) for f in lattice.nonzero_faces()]


# Rejection reasons for membership_check.
NEGATIVE = "negative-magnitude"
NOT_IN_IMAGE = "not-in-image"
OUTSIDE_CONE = "outside-cone"
ORIGIN = "origin"


@dataclass(frozen=True)
class Membership:
    """Result of membership_check: a face, or a rejection reason."""

    face: Optional[Face]
    eta: Optional[QVector] = None
    reason: Optional[str] = None

    @property
    def accepted(self) -> bool:
        return self.face is not None


def _solve(rows: list[list[Fraction]], rhs: list[Fraction], unknowns: int) -> Optional[QVector]:
    """Unique solution of an overdetermined full-column-rank system, or None."""
    A = [row[:] + [b] for row, b in zip(rows, rhs)]
    pivots = []
    r = 0
    for col in range(unknowns):
        p = next((i for i in range(r, len(A)) if A[i][col] != 0), None)
        if p is None:
            continue
        A[r], A[p] = A[p], A[r]
        inv = 1 / A[r][col]
        A[r] = [x * inv for x in A[r]]
        for i in range(len(A)):
            if i != r and A[i][col] != 0:
                f = A[i][col]
                A[i] = [x - f * y for x, y in zip(A[i], A[r])]
        pivots.append(col)
        r += 1
    if any(A[i][-1] != 0 for i in range(r, len(A))):
        return None
    if len(pivots) < unknowns:
        raise InternalInvariantViolation("normals do not span; cone was not validated")
    return tuple(A[i][-1] for i in range(unknowns))


def membership_check(cone: ConeSpec, m: Sequence, lattice: FaceLattice | None = None) -> Membership:
    """Decide whether squared magnitudes ``m`` come from a nonzero point of C.

    Solves ``<eta, mu_j> = m_j`` for ``eta``. On success the face is the one
    whose active set is the zero pattern of ``m``.
    """
    m = [Fraction(v) for v in m]
    if len(m) != cone.N:
        raise ValueError(f"expected {cone.N} magnitudes, got {len(m)}")
    if any(v < 0 for v in m):
        return Membership(None, reason=NEGATIVE)
    rows = [[Fraction(x) for x in mu] for mu in cone.normals]
    eta = _solve(rows, m, cone.n)
    if eta is None:
        return Membership(None, reason=NOT_IN_IMAGE)
    if not any(eta):
        return Membership(None, eta, ORIGIN)
    if lattice is None:
        lattice = enumerate_faces(cone)
    face = lattice.face(j for j, v in enumerate(m, 1) if v == 0)
    if face is None or face.is_zero:
        # A nonzero point of C always has a closed zero pattern.
        return Membership(None, eta, OUTSIDE_CONE)
    return Membership(face, eta)

"""Moment cones given by inward facet normals, and their validation."""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional, Sequence

from momentcone.errors import InternalInvariantViolation
from momentcone.lattice_algebra import IntMatrix, Vector, primitive, rank

# Failure codes, in the order validate() checks them.
DIMENSION_TOO_SMALL = "DimensionTooSmall"
ZERO_NORMAL = "ZeroNormal"
DUPLICATE_NORMAL = "DuplicateNormal"
NOT_STRICTLY_CONVEX = "NotStrictlyConvex"
REDUNDANT_NORMAL = "RedundantNormal"


@dataclass(frozen=True)
class ConeSpec:
    """The cone ``{eta : <eta, mu_j> >= 0 for all j}`` in the dual of Z^n.

    Facets are labelled 1..N in the order the normals are given.
    """

    n: int
    normals: tuple[Vector, ...]
    name: Optional[str] = None

    def __post_init__(self):
        normals = tuple(tuple(int(x) for x in mu) for mu in self.normals)
        if self.n < 1:
            raise ValueError(f"dimension must be positive, got {self.n}")
        if not normals:
            raise ValueError("a cone needs at least one normal")
        for j, mu in enumerate(normals, 1):
            if len(mu) != self.n:
                raise ValueError(f"normal {j} has length {len(mu)}, expected {self.n}")
        object.__setattr__(self, "normals", normals)

    @property
    def N(self) -> int:
        return len(self.normals)

    @property
    def facets(self) -> range:
        return range(1, self.N + 1)

    def normal(self, j: int) -> Vector:
        """The normal of facet ``j`` (1-based)."""
        return self.normals[j - 1]

    def matrix(self) -> IntMatrix:
        """The n x N matrix whose columns are the normals."""
        return IntMatrix.from_columns(self.normals)

    def pair(self, eta: Sequence) -> tuple:
        """``(<eta, mu_1>, ..., <eta, mu_N>)``."""
        return tuple(sum(a * b for a, b in zip(eta, mu)) for mu in self.normals)

    def transformed(self, U: IntMatrix) -> ConeSpec:
        """Apply ``U`` in GL(n, Z) to every normal."""
        return ConeSpec(self.n, (U @ self.matrix()).T.entries, self.name)

    def permuted(self, order: Sequence[int]) -> ConeSpec:
        """Reorder normals; ``order`` lists old 1-based labels in new order."""
        return ConeSpec(self.n, tuple(self.normal(j) for j in order), self.name)


@dataclass(frozen=True)
class Failure:
    code: str
    indices: tuple[int, ...] = ()
    message: str = ""


@dataclass(frozen=True)
class ValidationReport:
    """Outcome of validate().

    ``cone`` is the primitivized cone, or None when a normal is zero or the
    dimension is too small to build one. ``normalized`` holds the 1-based
    labels of normals that had to be divided by their gcd.
    """

    cone: Optional[ConeSpec]
    normalized: tuple[int, ...] = ()
    failures: tuple[Failure, ...] = field(default_factory=tuple)

    @property
    def ok(self) -> bool:
        return not self.failures

    def codes(self) -> list[str]:
        return [f.code for f in self.failures]


def validate(raw: ConeSpec) -> ValidationReport:
    """Check the hypotheses the homotopy computation relies on.

    Checks run in a fixed order: dimension, zero normals, primitivization,
    duplicate or antipodal normals, rank, facet support. Independent checks
    all run; the facet-support check needs the earlier ones to pass.
    """
    from momentcone.face_lattice import extreme_rays

    failures = []
    if raw.n < 2:
        failures.append(Failure(DIMENSION_TOO_SMALL, (), f"n = {raw.n} < 2"))

    zero = tuple(j for j, mu in enumerate(raw.normals, 1) if not any(mu))
    if zero:
        failures.append(Failure(ZERO_NORMAL, zero, "normal is the zero vector"))

    normals = []
    normalized = []
    for j, mu in enumerate(raw.normals, 1):
        g = math.gcd(*mu)
        if g > 1:
            normalized.append(j)
        normals.append(primitive(mu))
    cone = ConeSpec(raw.n, tuple(normals), raw.name)

    seen: dict[Vector, int] = {}
    for j, mu in enumerate(normals, 1):
        if not any(mu):
            continue
        for key in (mu, tuple(-x for x in mu)):
            if key in seen:
                failures.append(Failure(DUPLICATE_NORMAL, (seen[key], j),
                                        "equal" if key == mu else "antipodal"))
                break
        seen.setdefault(mu, j)

    r = rank(normals)
    if r < raw.n:
        failures.append(Failure(NOT_STRICTLY_CONVEX, (), f"normals span rank {r} < {raw.n}"))

    if not failures:
        rays = extreme_rays(cone)
        redundant = tuple(
            j for j in cone.facets
            if rank(ray.generator for ray in rays if j in ray.active_set) != cone.n - 1
        )
        if redundant:
            failures.append(Failure(REDUNDANT_NORMAL, redundant, "normal does not support a facet"))

    return ValidationReport(cone, tuple(normalized), tuple(failures))


@dataclass(frozen=True)
class ReebVector:
    X: Vector


def reeb_vector(cone: ConeSpec, rays=None) -> ReebVector:
    """Sum of the normals, checked to be strictly positive on every extreme ray."""
    from momentcone.face_lattice import extreme_rays

    X = tuple(sum(col) for col in zip(*cone.normals))
    for ray in rays if rays is not None else extreme_rays(cone):
        if sum(a * b for a, b in zip(ray.generator, X)) <= 0:
            raise InternalInvariantViolation(
                f"Reeb candidate {X} is not positive on ray {ray.generator}")
    return ReebVector(X)

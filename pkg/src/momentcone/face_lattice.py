"""Extreme rays, the face lattice, goodness, and the vertex arrangement of a cone.

Facet labels are 1-based throughout. Internally active sets are bitmasks with
bit ``j - 1`` standing for facet ``j``.
"""
from __future__ import annotations

import functools
import itertools
import math
from dataclasses import dataclass
from typing import TYPE_CHECKING, Iterable, Iterator

from momentcone.errors import InternalInvariantViolation
from momentcone.lattice_algebra import Vector, is_direct_summand, primitive, rank

if TYPE_CHECKING:
    from momentcone.cone_model import ConeSpec

CONDITION_1 = "condition-1"
CONDITION_2 = "condition-2"


def to_mask(labels: Iterable[int]) -> int:
    mask = 0
    for j in labels:
        mask |= 1 << (j - 1)
    return mask


def from_mask(mask: int) -> frozenset[int]:
    return frozenset(j + 1 for j in range(mask.bit_length()) if mask >> j & 1)


def _sorted(labels) -> tuple[int, ...]:
    return tuple(sorted(labels))


@dataclass(frozen=True)
class Ray:
    """Primitive generator of an extreme ray and the facets containing it."""

    generator: Vector
    active_set: frozenset[int]


@dataclass(frozen=True)
class Face:
    """A face, keyed by the set of facets containing it.

    ``rays`` indexes into the owning lattice's ray list.
    """

    active_set: frozenset[int]
    dim: int
    codim: int
    rays: tuple[int, ...]

    @property
    def is_zero(self) -> bool:
        return self.dim == 0

    def label(self) -> str:
        return "{" + ",".join(map(str, _sorted(self.active_set))) + "}"


@dataclass(frozen=True)
class FaceLattice:
    n: int
    N: int
    rays: tuple[Ray, ...]
    faces: tuple[Face, ...]

    def __post_init__(self):
        object.__setattr__(self, "_by_set", {f.active_set: f for f in self.faces})

    def __iter__(self) -> Iterator[Face]:
        return iter(self.faces)

    def __len__(self) -> int:
        return len(self.faces)

    def face(self, active_set: Iterable[int]) -> Face | None:
        return self._by_set.get(frozenset(active_set))

    @property
    def cone_face(self) -> Face:
        return self._by_set[frozenset()]

    @property
    def zero_face(self) -> Face:
        return self._by_set[frozenset(range(1, self.N + 1))]

    def nonzero_faces(self) -> list[Face]:
        return [f for f in self.faces if not f.is_zero]

    def facets(self) -> list[Face]:
        return [f for f in self.faces if f.codim == 1]

    def closure(self, labels: Iterable[int]) -> Face:
        """Smallest face whose active set contains ``labels``."""
        mask = to_mask(labels)
        closed = (1 << self.N) - 1
        for ray in self.rays:
            rmask = to_mask(ray.active_set)
            if rmask & mask == mask:
                closed &= rmask
        return self._by_set[from_mask(closed)]


def _reduce(row: list[int], echelon: list[tuple[int, list[int]]]) -> list[int]:
    """Eliminate the pivot columns of ``echelon`` from ``row`` (fraction-free)."""
    for col, prow in echelon:
        b = row[col]
        if b:
            a = prow[col]
            row = [x * a - b * y for x, y in zip(row, prow)]
            g = math.gcd(*row)
            if g > 1:
                row = [x // g for x in row]
    return row


def _kernel_line(echelon: list[tuple[int, list[int]]], n: int) -> Vector:
    """Primitive generator of the kernel of a rank n-1 echelon system."""
    pivots = {col for col, _ in echelon}
    free = next(c for c in range(n) if c not in pivots)
    x = [0] * n
    x[free] = 1
    # back substitution, scaling x to stay integral
    for col, prow in reversed(echelon):
        s = sum(prow[j] * x[j] for j in range(n) if j != col)
        a = prow[col]
        g = math.gcd(s, a)
        scale = abs(a) // g
        if scale != 1:
            x = [v * scale for v in x]
        x[col] = -(s // g) * (1 if a > 0 else -1)
    return primitive(x)


@functools.lru_cache(maxsize=256)
def _extreme_rays(n: int, normals: tuple[Vector, ...]) -> tuple[Ray, ...]:
    N = len(normals)
    found: dict[Vector, frozenset[int]] = {}

    def orient(g):
        sign = 0
        pairing = []
        for mu in normals:
            v = sum(a * b for a, b in zip(g, mu))
            if v:
                if sign and (v > 0) != (sign > 0):
                    return None, None
                sign = sign or v
            pairing.append(v)
        if sign < 0:
            g = tuple(-x for x in g)
        return g, frozenset(j for j, v in enumerate(pairing, 1) if v == 0)

    # Depth-first over (n-1)-subsets in lexicographic order. Each level adds one
    # normal to a shared echelon form; a dependent normal prunes its subtree.
    def walk(start: int, echelon: list[tuple[int, list[int]]]):
        if len(echelon) == n - 1:
            g, active = orient(_kernel_line(echelon, n))
            if g is not None:
                found.setdefault(g, active)
            return
        for i in range(start, N - (n - 2 - len(echelon))):
            row = _reduce(list(normals[i]), echelon)
            col = next((c for c, v in enumerate(row) if v), None)
            if col is None:
                continue
            walk(i + 1, echelon + [(col, row)])

    walk(0, [])
    return tuple(Ray(g, found[g]) for g in sorted(found))


def extreme_rays(cone: ConeSpec) -> list[Ray]:
    """All extreme rays of the cone, sorted by generator.

    Every (n-1)-subset of normals of rank n-1 cuts out a line; its primitive
    generator is kept when one of its two orientations satisfies all
    inequalities. Results are cached per normal list.
    """
    return list(_extreme_rays(cone.n, cone.normals))


def enumerate_faces(cone: ConeSpec, rays: list[Ray] | None = None) -> FaceLattice:
    """The full face lattice, from C itself down to the zero face.

    Nonzero faces are exactly the intersections of ray active sets; the
    family is closed under intersection one ray at a time.
    """
    if rays is None:
        rays = extreme_rays(cone)
    N, n = cone.N, cone.n
    ray_masks = [to_mask(r.active_set) for r in rays]
    closed: set[int] = set()
    for rm in ray_masks:
        closed |= {rm & f for f in closed}
        closed.add(rm)
    closed.add(0)
    full = (1 << N) - 1
    closed.discard(full)

    faces = []
    for mask in closed:
        incident = tuple(i for i, rm in enumerate(ray_masks) if rm & mask == mask)
        d = rank(rays[i].generator for i in incident)
        faces.append(Face(from_mask(mask), d, n - d, incident))
    faces.append(Face(from_mask(full), 0, n, ()))
    faces.sort(key=lambda f: (f.codim, _sorted(f.active_set)))
    return FaceLattice(n, N, tuple(rays), tuple(faces))


@dataclass(frozen=True)
class Violation:
    active_set: frozenset[int]
    codim: int
    condition: str


@dataclass(frozen=True)
class GoodnessReport:
    violations: tuple[Violation, ...] = ()

    @property
    def good(self) -> bool:
        return not self.violations


def check_good(cone: ConeSpec, lattice: FaceLattice) -> GoodnessReport:
    """Test every proper face of codimension 0 < l < n.

    Condition 1: the face lies on exactly l facets. Condition 2: those
    l normals span a rank-l direct summand of Z^n. Condition 2 is only
    meaningful for the l facets singled out by condition 1, so it is checked
    only on faces that pass condition 1.
    """
    violations = []
    for face in lattice:
        if not 0 < face.codim < cone.n:
            continue
        if len(face.active_set) != face.codim:
            violations.append(Violation(face.active_set, face.codim, CONDITION_1))
            continue
        rows = [cone.normal(j) for j in _sorted(face.active_set)]
        if not is_direct_summand(rows):
            violations.append(Violation(face.active_set, face.codim, CONDITION_2))
    return GoodnessReport(tuple(violations))


@dataclass(frozen=True)
class Arrangement:
    """Index sets of facets meeting only at the vertex, by minimal members.

    Membership is upward closed, so the minimal members determine the union
    of the coordinate subspaces ``V_I``; each has complex codimension ``|I|``.
    """

    N: int
    minimal_members: tuple[frozenset[int], ...]

    @property
    def codims(self) -> tuple[int, ...]:
        return tuple(len(I) for I in self.minimal_members)

    def __contains__(self, labels) -> bool:
        labels = frozenset(labels)
        return any(I <= labels for I in self.minimal_members)

    def as_lists(self) -> list[list[int]]:
        return [list(_sorted(I)) for I in self.minimal_members]


def arrangement_U(cone: ConeSpec, lattice: FaceLattice) -> Arrangement:
    """Minimal index sets whose facets intersect only in the zero face.

    ``I`` qualifies iff no extreme ray lies on every facet in ``I``, which is
    the same as its closure in the lattice being the zero face.
    """
    ray_masks = [to_mask(r.active_set) for r in lattice.rays]
    minimal: list[int] = []
    for k in range(1, cone.N + 1):
        for combo in itertools.combinations(range(cone.N), k):
            mask = sum(1 << i for i in combo)
            if any(m & mask == m for m in minimal):
                continue
            if not any(rm & mask == mask for rm in ray_masks):
                minimal.append(mask)
    members = tuple(from_mask(m) for m in minimal)
    singletons = [I for I in members if len(I) < 2]
    if singletons:
        raise InternalInvariantViolation(
            f"facets {[_sorted(I) for I in singletons]} meet only at the vertex")
    return Arrangement(cone.N, members)

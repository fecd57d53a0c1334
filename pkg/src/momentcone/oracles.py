"""Slow, independent recomputations used to check the main pipeline.

Nothing here calls the Smith form or the incremental face closure.
"""
from __future__ import annotations

import itertools

from momentcone.cone_model import ConeSpec
from momentcone.face_lattice import FaceLattice, Ray, arrangement_U, extreme_rays
from momentcone.lattice_algebra import minor_gcd, rank
from momentcone.witness import all_witnesses, membership_check


def invariant_factors_by_minors(matrix) -> tuple[int, ...]:
    """Nontrivial invariant factors ``d_k / d_{k-1}`` from determinantal divisors."""
    size = min(len(matrix), len(matrix[0]))
    divisors = [1]
    for k in range(1, size + 1):
        d = minor_gcd(matrix, k)
        if d == 0:
            break
        divisors.append(d)
    return tuple(q for q in (b // a for a, b in zip(divisors, divisors[1:])) if q > 1)


def brute_force_faces(cone: ConeSpec, rays: list[Ray]) -> dict[frozenset[int], int]:
    """Map every closed active set to its face dimension, over all 2^N subsets.

    Dimension comes from the normals (``n - rank`` of the active normals),
    not from the rays.
    """
    everything = frozenset(cone.facets)
    faces = {}
    for k in range(cone.N + 1):
        for I in itertools.combinations(cone.facets, k):
            I = frozenset(I)
            closure = everything
            for ray in rays:
                if I <= ray.active_set:
                    closure &= ray.active_set
            if closure not in faces:
                dim = 0 if closure == everything else cone.n - rank(cone.normal(j) for j in closure)
                faces[closure] = dim
    return faces


def brute_force_arrangement(cone: ConeSpec, rays: list[Ray]) -> list[frozenset[int]]:
    """Minimal subsets lying on no common extreme ray, by full subset scan."""
    members = [
        frozenset(I)
        for k in range(1, cone.N + 1)
        for I in itertools.combinations(cone.facets, k)
        if not any(frozenset(I) <= r.active_set for r in rays)
    ]
    return [I for I in members if not any(J < I for J in members)]


def run_oracles(cone: ConeSpec, lattice: FaceLattice, pi1_factors: tuple[int, ...]) -> list[str]:
    """Compare the pipeline against every oracle; return human-readable diffs."""
    diffs = []
    M = cone.matrix().tolist()
    order = 1
    for d in pi1_factors:
        order *= d
    expected_order = minor_gcd(M, cone.n)
    if order != expected_order:
        diffs.append(f"pi1 order: smith {order} != minors {expected_order}")
    expected_factors = invariant_factors_by_minors(M)
    if tuple(pi1_factors) != expected_factors:
        diffs.append(f"pi1 factors: smith {list(pi1_factors)} != minors {list(expected_factors)}")

    rays = extreme_rays(cone)
    oracle_faces = brute_force_faces(cone, rays)
    lattice_faces = {f.active_set: f.dim for f in lattice}
    for I in sorted(set(oracle_faces) | set(lattice_faces), key=lambda s: (len(s), sorted(s))):
        a, b = lattice_faces.get(I), oracle_faces.get(I)
        if a != b:
            diffs.append(f"face {sorted(I)}: lattice dim {a} != brute force dim {b}")

    minimal = set(arrangement_U(cone, lattice).minimal_members)
    expected = set(brute_force_arrangement(cone, rays))
    if minimal != expected:
        diffs.append(f"arrangement: {sorted(map(sorted, minimal))} != {sorted(map(sorted, expected))}")
    if any(len(I) < 2 for I in expected):
        diffs.append("arrangement contains a singleton")

    for w in all_witnesses(cone, lattice):
        back = membership_check(cone, w.m, lattice)
        if back.face != w.face:
            diffs.append(f"witness round trip failed for face {w.face.label()}: {back.reason}")
    return diffs

import itertools
import random

import numpy as np
import pytest
from scipy.optimize import linprog

from cones import GOLDEN, NOT_GOOD, SQUARE, lens, random_good_cone, random_unimodular, sampled_cone, standard
from momentcone import (
    ConeSpec,
    arrangement_U,
    check_good,
    enumerate_faces,
    extreme_rays,
    validate,
)
from momentcone.errors import InternalInvariantViolation
from momentcone.oracles import brute_force_arrangement, brute_force_faces


def lp_faces(cone):
    """Face active sets by linear programming, independent of ray enumeration.

    For every subset I, slice F_I by <eta, X> = 1 with X the normal sum and
    maximize each remaining pairing; facets whose maximum is 0 are in the
    closure of I. Dimension is n minus the rank of the closed normals.
    """
    M = np.array(cone.normals, dtype=float)
    X = M.sum(axis=0)
    everything = frozenset(cone.facets)
    faces = {}
    for k in range(cone.N + 1):
        for I in itertools.combinations(range(cone.N), k):
            A_eq = np.vstack([M[list(I)], X]) if I else X[None, :]
            b_eq = np.zeros(len(I) + 1)
            b_eq[-1] = 1
            closure = set(j + 1 for j in I)
            feasible = True
            for j in range(cone.N):
                if j in I:
                    continue
                res = linprog(-M[j], A_ub=-M, b_ub=np.zeros(cone.N), A_eq=A_eq, b_eq=b_eq,
                              bounds=[(None, None)] * cone.n, method="highs")
                if res.status == 2:
                    feasible = False
                    break
                if -res.fun < 1e-9:
                    closure.add(j + 1)
            if not feasible:
                closure = everything
            closure = frozenset(closure)
            if closure not in faces:
                faces[closure] = 0 if closure == everything else cone.n - np.linalg.matrix_rank(
                    M[[j - 1 for j in closure]]) if closure else cone.n
    return faces


def rays_of(cone):
    return [r.generator for r in extreme_rays(cone)]


def test_extreme_rays_examples():
    assert rays_of(standard(2)) == [(0, 1), (1, 0)]
    assert sorted(rays_of(SQUARE)) == sorted([(1, 1, 1), (1, -1, 1), (-1, 1, 1), (-1, -1, 1)])
    for p in range(2, 8):
        assert rays_of(lens(p)) == [(0, 1), (p, -1)]


def test_ray_active_sets():
    rays = {r.generator: r.active_set for r in extreme_rays(SQUARE)}
    assert rays[(-1, -1, 1)] == {1, 3}
    assert rays[(1, 1, 1)] == {2, 4}


@pytest.mark.parametrize("cone, count", [
    (standard(2), 4),
    (SQUARE, 10),
    (lens(2), 4),
    (standard(3), 8),
])
def test_face_counts(cone, count):
    lattice = enumerate_faces(cone)
    assert len(lattice) == count
    assert lattice.cone_face.dim == cone.n and lattice.zero_face.dim == 0
    assert len(lattice.facets()) == cone.N


@pytest.mark.parametrize("cone", GOLDEN, ids=lambda c: c.name)
def test_lattice_matches_brute_force(cone):
    lattice = enumerate_faces(cone)
    assert {f.active_set: f.dim for f in lattice} == brute_force_faces(cone, extreme_rays(cone))


def test_lattice_matches_lp_oracle():
    rng = random.Random(11)
    cones = [SQUARE, NOT_GOOD, standard(3), lens(3)]
    cones += [random_good_cone(rng, 4, 7) for _ in range(6)]
    while len(cones) < 14:
        report = validate(sampled_cone(rng, rng.randint(3, 4), rng.randint(4, 6)))
        if report.ok:
            cones.append(report.cone)
    for cone in cones:
        lattice = enumerate_faces(cone)
        assert {f.active_set: f.dim for f in lattice} == lp_faces(cone), cone


def test_lattice_closed_under_intersection():
    rng = random.Random(5)
    for _ in range(20):
        cone = random_good_cone(rng)
        sets = {f.active_set for f in enumerate_faces(cone)}
        nonzero = sets - {frozenset(cone.facets)}
        for a, b in itertools.combinations(nonzero, 2):
            # union of active sets is the meet of faces; its closure must be a face
            assert enumerate_faces(cone).closure(a | b).active_set in sets


def test_lattice_order_deterministic():
    lattice = enumerate_faces(SQUARE)
    keys = [(f.codim, sorted(f.active_set)) for f in lattice]
    assert keys == sorted(keys)
    assert [sorted(f.active_set) for f in lattice][:5] == [[], [1], [2], [3], [4]]


def test_rays_satisfy_inequalities():
    rng = random.Random(9)
    for _ in range(50):
        report = validate(sampled_cone(rng, rng.randint(2, 5), rng.randint(3, 8)))
        if not report.ok:
            continue
        for r in extreme_rays(report.cone):
            pairing = report.cone.pair(r.generator)
            assert all(v >= 0 for v in pairing)
            assert r.active_set == {j for j, v in enumerate(pairing, 1) if v == 0}


@pytest.mark.parametrize("n", range(2, 7))
def test_standard_cone_good(n):
    cone = standard(n)
    assert check_good(cone, enumerate_faces(cone)).good


def test_square_good():
    assert check_good(SQUARE, enumerate_faces(SQUARE)).good


def test_not_good_condition_2():
    report = check_good(NOT_GOOD, enumerate_faces(NOT_GOOD))
    assert not report.good
    assert [(v.condition, sorted(v.active_set), v.codim) for v in report.violations] == [
        ("condition-2", [1, 2], 2)]


def test_condition_1_violation():
    # cone over a square pyramid: the apex ray lies on four facets
    cone = ConeSpec(4, ((1, 0, 0, 1), (-1, 0, 0, 1), (0, 1, 0, 1), (0, -1, 0, 1), (0, 0, 1, 0)))
    assert validate(cone).ok
    report = check_good(cone, enumerate_faces(cone))
    assert [(v.condition, sorted(v.active_set)) for v in report.violations] == [
        ("condition-1", [1, 2, 3, 4])]


@pytest.mark.parametrize("cone, members", [
    (standard(2), [[1, 2]]),
    (SQUARE, [[1, 2], [3, 4]]),
    (lens(3), [[1, 2]]),
    (standard(3), [[1, 2, 3]]),
])
def test_arrangement_examples(cone, members):
    arrangement = arrangement_U(cone, enumerate_faces(cone))
    assert arrangement.as_lists() == members
    assert arrangement.codims == tuple(len(m) for m in members)


@pytest.mark.parametrize("cone", GOLDEN, ids=lambda c: c.name)
def test_arrangement_upward_closed_and_brute_force(cone):
    lattice = enumerate_faces(cone)
    arrangement = arrangement_U(cone, lattice)
    assert set(arrangement.minimal_members) == set(brute_force_arrangement(cone, list(lattice.rays)))
    for k in range(cone.N + 1):
        for I in itertools.combinations(cone.facets, k):
            in_u = lattice.closure(I).is_zero
            assert (I in arrangement) == in_u
            if in_u:
                assert all(tuple(sorted(set(I) | {j})) in arrangement for j in cone.facets)
    assert min(arrangement.codims) >= 2


def test_arrangement_rejects_singleton():
    # unvalidated: facet 3 of this cone meets C only at 0
    cone = ConeSpec(2, ((1, 0), (0, 1), (-1, -1)))
    with pytest.raises(InternalInvariantViolation):
        arrangement_U(cone, enumerate_faces(cone))


def test_counts_invariant_under_unimodular_change():
    rng = random.Random(2)
    for cone in GOLDEN:
        base = enumerate_faces(cone)
        for _ in range(5):
            moved = cone.transformed(random_unimodular(rng, cone.n))
            lattice = enumerate_faces(moved)
            assert len(lattice) == len(base)
            assert len(lattice.facets()) == len(base.facets())
            assert {f.active_set for f in lattice} == {f.active_set for f in base}

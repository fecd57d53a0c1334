"""Golden cones and random cone generators shared by the tests."""
from __future__ import annotations

import random

from momentcone import ConeSpec, IntMatrix, check_good, enumerate_faces, validate


def standard(n: int) -> ConeSpec:
    return ConeSpec(n, tuple(tuple(int(i == j) for j in range(n)) for i in range(n)), f"standard{n}")


def lens(p: int) -> ConeSpec:
    return ConeSpec(2, ((1, 0), (1, p)), f"lens{p}")


SQUARE = ConeSpec(3, ((1, 0, 1), (-1, 0, 1), (0, 1, 1), (0, -1, 1)), "square")
NOT_GOOD = ConeSpec(3, ((1, 0, 0), (1, 2, 0), (0, 0, 1)), "notgood")

GOLDEN_GOOD = [standard(n) for n in range(2, 7)] + [lens(p) for p in range(2, 13)] + [SQUARE]
GOLDEN = GOLDEN_GOOD + [NOT_GOOD]


def random_unimodular(rng: random.Random, n: int, steps: int | None = None) -> IntMatrix:
    """A random element of GL(n, Z) built from elementary operations."""
    M = [[int(i == j) for j in range(n)] for i in range(n)]
    for _ in range(steps if steps is not None else 2 * n):
        op = rng.randrange(3)
        i, j = rng.sample(range(n), 2)
        if op == 0:
            c = rng.choice([-2, -1, 1, 2])
            M[i] = [x + c * y for x, y in zip(M[i], M[j])]
        elif op == 1:
            M[i], M[j] = M[j], M[i]
        else:
            M[i] = [-x for x in M[i]]
    return IntMatrix.from_rows(M)


def random_permutation(rng: random.Random, N: int) -> list[int]:
    order = list(range(1, N + 1))
    rng.shuffle(order)
    return order


def _simplex_product(rng: random.Random, d: int) -> list[tuple[int, ...]]:
    """Facet normals (a, b) of a product of scaled simplices, as vectors in Z^(d+1)."""
    parts = []
    left = d
    while left:
        k = rng.randint(1, left)
        parts.append(k)
        left -= k
    normals = []
    offset = 0
    for k in parts:
        size = rng.randint(1, 4)
        for i in range(k):
            a = [0] * d
            a[offset + i] = 1
            normals.append(tuple(a) + (0,))
        a = [0] * d
        for i in range(k):
            a[offset + i] = -1
        normals.append(tuple(a) + (size,))
        offset += k
    return normals


def _cut_corner(rng: random.Random, normals: list[tuple[int, ...]]) -> list[tuple[int, ...]] | None:
    """Blow up a random vertex of the cross-section polytope."""
    cone = validate(ConeSpec(len(normals[0]), tuple(normals)))
    if not cone.ok:
        return None
    from momentcone import extreme_rays

    vertex_rays = [r for r in extreme_rays(cone.cone) if r.generator[-1] > 0]
    ray = rng.choice(vertex_rays)
    at = sorted(ray.active_set)
    new = [sum(normals[j - 1][i] for j in at) for i in range(len(normals[0]))]
    new[-1] -= 1
    return normals + [tuple(new)]


def constructed_good_cone(rng: random.Random, n_max: int = 4, N_max: int = 8) -> ConeSpec | None:
    """Cone over a smooth polytope: good by construction, then disguised."""
    n = rng.randint(2, n_max)
    d = n - 1
    normals = _simplex_product(rng, d)
    scale = rng.choice([2, 3])
    normals = [mu[:-1] + (mu[-1] * scale,) for mu in normals]
    cuts = rng.randint(0, max(0, N_max - len(normals))) if d >= 2 else 0
    for _ in range(cuts):
        nxt = _cut_corner(rng, normals)
        if nxt is None:
            return None
        normals = nxt
    cone = ConeSpec(n, tuple(normals))
    cone = cone.transformed(random_unimodular(rng, n)).permuted(random_permutation(rng, cone.N))
    return cone


def sampled_cone(rng: random.Random, n: int, N: int, spread: int = 3) -> ConeSpec:
    """Random normals with positive last coordinate, so e_n is interior."""
    normals = set()
    while len(normals) < N:
        normals.add(tuple(rng.randint(-spread, spread) for _ in range(n - 1)) + (rng.randint(1, spread),))
    return ConeSpec(n, tuple(sorted(normals)))


def random_good_cone(rng: random.Random, n_max: int = 4, N_max: int = 8) -> ConeSpec:
    """A validated good cone with n <= n_max and N <= N_max."""
    while True:
        if rng.random() < 0.5:
            cone = constructed_good_cone(rng, n_max, N_max)
        else:
            n = rng.randint(3, n_max)
            cone = sampled_cone(rng, n, rng.randint(n, min(N_max, n + 2)))
        if cone is None or cone.N > N_max:
            continue
        report = validate(cone)
        if not report.ok:
            continue
        cone = report.cone
        if check_good(cone, enumerate_faces(cone)).good:
            return cone

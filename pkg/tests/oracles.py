"""Independent reference implementations used to cross-check the package.

Nothing here goes through the package's own algorithms: roots come from
numpy's companion matrix, resultants and discriminants from root-product
formulas, group-theoretic counts from breadth-first search on raw index
tuples.
"""

from __future__ import annotations

import numpy as np


def companion_roots(coeffs_constant_first) -> list[complex]:
    """Roots via numpy's companion-matrix eigenvalues (highest-first input)."""
    cs = [complex(c) for c in coeffs_constant_first]
    while len(cs) > 1 and cs[-1] == 0:
        cs.pop()
    if len(cs) == 1:
        return []
    return [complex(r) for r in np.roots(list(reversed(cs)))]


def horner(coeffs_constant_first, z: complex) -> complex:
    out = 0j
    for c in reversed([complex(c) for c in coeffs_constant_first]):
        out = out * z + c
    return out


def resultant_by_roots(p_coeffs, q_coeffs) -> complex:
    """Res(p, q) = lc(p)^deg(q) * prod over roots r of p of q(r)."""
    p = [complex(c) for c in p_coeffs]
    q = [complex(c) for c in q_coeffs]
    dq = len(q) - 1
    val = p[-1] ** dq
    for r in companion_roots(p):
        val *= horner(q, r)
    return val


def discriminant_by_roots(coeffs_constant_first) -> complex:
    """lc^(2d-2) * prod_{i<j} (r_i - r_j)^2 via companion roots."""
    cs = [complex(c) for c in coeffs_constant_first]
    rs = companion_roots(cs)
    d = len(rs)
    val = cs[-1] ** (2 * d - 2)
    for i in range(d):
        for j in range(i + 1, d):
            val *= (rs[i] - rs[j]) ** 2
    return val


def tuple_inverse(t: tuple[int, ...]) -> tuple[int, ...]:
    inv = [0] * len(t)
    for i, ti in enumerate(t):
        inv[ti] = i
    return tuple(inv)


def orbit_size(images: list[tuple[int, ...]], start: int) -> int:
    """Breadth-first orbit count on raw image tuples (generators + inverses)."""
    moves = list(images) + [tuple_inverse(t) for t in images]
    seen = {start}
    frontier = [start]
    while frontier:
        nxt = []
        for x in frontier:
            for t in moves:
                y = t[x]
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return len(seen)


def free_reduce(letters) -> list[tuple[str, int]]:
    """Stack reduction of (name, +-1) letters; cancels adjacent inverses."""
    out: list[tuple[str, int]] = []
    for name, step in letters:
        if out and out[-1][0] == name and out[-1][1] == -step:
            out.pop()
        else:
            out.append((name, step))
    return out


def random_transitive_images(rng: np.random.Generator, degree: int, k: int) -> list[tuple[int, ...]]:
    """k random permutation tuples whose group is transitive on the degree points."""
    while True:
        images = [tuple(int(x) for x in rng.permutation(degree)) for _ in range(k)]
        if orbit_size(images, 0) == degree:
            return images

"""Numerical monodromy of one-variable polynomial cover slices.

A slice is a monic polynomial ``P(z, w)`` of degree ``b`` in ``w``; its roots
over a base z-value form the fiber.  Branch points are the zeros of the
z-discriminant (computed by interpolating Sylvester determinants).  Each
branch point gets a basepoint lasso: a straight approach routed around the
other branch disks, a counterclockwise circle, and the reversed approach.
Fibers are continued along those paths with an adaptive corrector that never
lets a sheet move more than a third of the current fiber separation in one
step, so sheet identities cannot be exchanged silently.

Sheet indices always refer to the basepoint fiber sorted by (real, imag).
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .cpoly import BivarPoly, CPoly, discriminant, root_bound, roots, sylvester_resultant
from .errors import DegenerateCover, NumericFailure
from .perms import Perm, generated_order


@dataclass(frozen=True)
class CoverSlice:
    """A degree-b cover of the z-line: the w-roots of a monic P(z, w)."""

    poly: BivarPoly

    def __post_init__(self) -> None:
        lead = self.poly.w_coeffs[-1]
        if self.poly.w_degree < 1:
            raise DegenerateCover("cover needs positive degree in w")
        if lead.degree > 0:
            raise DegenerateCover("leading w-coefficient must not depend on z")
        lc = lead.coeffs[0]
        if lc == 0:
            raise DegenerateCover("leading w-coefficient vanishes")
        if lc != 1:
            object.__setattr__(
                self, "poly", BivarPoly(tuple(c.scale(1 / lc) for c in self.poly.w_coeffs))
            )

    @property
    def degree(self) -> int:
        return self.poly.w_degree

    def fiber(self, z: complex, residual_tol: float = 1e-9) -> tuple[complex, ...]:
        """The b roots over z, sorted by (real, imag)."""
        rs = roots(self.poly.at_z(z), residual_tol=residual_tol)
        return tuple(sorted(rs, key=lambda w: (w.real, w.imag)))


def z_discriminant(cover: CoverSlice, strip_tol: float = 1e-9) -> CPoly:
    """Discriminant of the fiber polynomial as a polynomial in z.

    Evaluated through Sylvester determinants at unit-circle sample points and
    interpolated back; coefficients below ``strip_tol`` of the largest are
    dropped.  Raises :class:`DegenerateCover` if it vanishes identically.
    """
    p = cover.poly
    dp = p.dw()
    bound = (dp.w_degree) * max(p.z_degree, 0) + p.w_degree * max(dp.z_degree, 0)
    npts = bound + 1
    zs = [cmath.exp(2j * math.pi * k / npts) for k in range(npts)]
    vals = [discriminant(p.at_z(z)) for z in zs]
    if npts == 1:
        coeffs = [vals[0]]
    else:
        vand = np.vander(np.array(zs, dtype=complex), N=npts, increasing=True)
        coeffs = list(np.linalg.solve(vand, np.array(vals, dtype=complex)))
    top = max(abs(c) for c in coeffs)
    if top == 0:
        raise DegenerateCover("z-discriminant vanishes identically (non-reduced cover)")
    cleaned = tuple(c if abs(c) > strip_tol * top else 0j for c in coeffs)
    return CPoly(cleaned)


def _poly_scale(p: CPoly, z: complex) -> float:
    return sum(abs(c) * max(1.0, abs(z)) ** k for k, c in enumerate(p.coeffs))


def _newton_refine(p: CPoly, z0: complex, max_iter: int = 60) -> complex | None:
    dp = p.derivative()
    z = z0
    for _ in range(max_iter):
        d = dp(z)
        if d == 0:
            return None
        step = p(z) / d
        z = z - step
        if abs(step) < 1e-13 * (1.0 + abs(z)):
            return z
    return None


def _clusters(points: Sequence[complex], tol: float) -> list[list[int]]:
    """Single-linkage clusters of indices at the given merge distance."""
    n = len(points)
    parent = list(range(n))

    def find(i: int) -> int:
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i in range(n):
        for j in range(i + 1, n):
            if abs(points[i] - points[j]) <= tol:
                ri, rj = find(i), find(j)
                if ri != rj:
                    parent[max(ri, rj)] = min(ri, rj)
    groups: dict[int, list[int]] = {}
    for i in range(n):
        groups.setdefault(find(i), []).append(i)
    return [groups[k] for k in sorted(groups)]


def branch_points(
    cover: CoverSlice,
    dedup_tol: float = 1e-8,
    residual_tol: float = 1e-9,
) -> tuple[complex, ...]:
    """Distinct branch points of the cover, each located to near machine accuracy.

    A zero of multiplicity m comes out of the root finder as a cluster of
    radius ~eps^(1/m), far wider than any fixed dedup tolerance.  Clusters are
    therefore collapsed only after verification: the centroid must Newton-
    refine on the (m-1)-th derivative, and all lower derivatives must vanish
    there to relative accuracy; otherwise the cluster stays as separate
    points.  The refined representatives replace the raw cluster.
    """
    disc = z_discriminant(cover)
    if disc.degree < 1:
        return ()
    raw = list(roots(disc, residual_tol=residual_tol))

    # Plain dedup first; each merged point remembers how many raw roots it ate,
    # because a multiple zero can stagnate as a tight one-sided clump whose
    # members are closer to each other than to the true root.
    merged: list[complex] = []
    counts: list[int] = []
    for grp in _clusters(raw, dedup_tol):
        merged.append(sum(raw[i] for i in grp) / len(grp))
        counts.append(len(grp))

    tau = 3e-4 * (1.0 + root_bound(disc))
    out: list[complex] = []
    for grp in _clusters(merged, tau):
        m = sum(counts[i] for i in grp)
        if m == 1:
            out.append(merged[grp[0]])
            continue
        centroid = sum(merged[i] * counts[i] for i in grp) / m
        deriv = disc
        for _ in range(m - 1):
            deriv = deriv.derivative()
        refined = _newton_refine(deriv, centroid)
        ok = refined is not None and abs(refined - centroid) <= 3 * tau
        if ok:
            d = disc
            for _ in range(m):
                if abs(d(refined)) > 1e-9 * _poly_scale(d, refined):  # type: ignore[arg-type]
                    ok = False
                    break
                d = d.derivative()
        if ok:
            out.append(refined)  # type: ignore[arg-type]
        else:
            out.extend(merged[i] for i in grp)
    return tuple(sorted((complex(z) for z in out), key=lambda z: (z.real, z.imag)))


def _minsep(points: Sequence[complex]) -> float:
    if len(points) < 2:
        return math.inf
    return min(
        abs(points[i] - points[j])
        for i in range(len(points))
        for j in range(i + 1, len(points))
    )


def _newton_w(p: CPoly, dp: CPoly, w: complex) -> complex | None:
    for _ in range(30):
        d = dp(w)
        if d == 0:
            return None
        step = p(w) / d
        w = w - step
        if abs(step) < 1e-13 * (1.0 + abs(w)):
            return w
    return None


def track_path(
    cover: CoverSlice,
    nodes: Sequence[complex],
    start_fiber: Sequence[complex],
    max_depth: int = 40,
) -> tuple[complex, ...]:
    """Continue the fiber along a polyline, keeping sheet order.

    Each step Newton-corrects every sheet at the new z and is accepted only
    when every correction converged and no sheet moved more than a third of
    the previous fiber's minimal separation; otherwise the step is bisected
    (up to ``max_depth`` levels, then :class:`NumericFailure`).
    """
    fiber = list(start_fiber)

    def advance(z_to: complex, depth: int, z_from: complex) -> None:
        nonlocal fiber
        p = cover.poly.at_z(z_to)
        dp = p.derivative()
        sep = _minsep(fiber)
        corrected: list[complex] = []
        ok = True
        for w in fiber:
            w2 = _newton_w(p, dp, w)
            if w2 is None or abs(w2 - w) >= sep / 3:
                ok = False
                break
            corrected.append(w2)
        if ok:
            fiber = corrected
            return
        if depth >= max_depth:
            raise NumericFailure(
                f"sheet tracking failed to converge near z = {z_to} "
                f"(bisection depth {depth})"
            )
        mid = (z_from + z_to) / 2
        advance(mid, depth + 1, z_from)
        advance(z_to, depth + 1, mid)

    for a, b in zip(nodes, nodes[1:]):
        advance(b, 0, a)
    return tuple(fiber)


def _seg_nodes(a: complex, b: complex, h: float) -> list[complex]:
    n = max(1, math.ceil(abs(b - a) / h))
    return [a + (b - a) * (k / n) for k in range(1, n + 1)]


def _arc_nodes(center: complex, radius: float, th0: float, sweep: float, h: float) -> list[complex]:
    n = max(6, math.ceil(abs(sweep) * radius / h))
    return [center + radius * cmath.exp(1j * (th0 + sweep * k / n)) for k in range(1, n + 1)]


def _route_segment(
    a: complex,
    b: complex,
    obstacles: Sequence[tuple[complex, float]],
    h: float,
) -> list[complex]:
    """Nodes from a to b along the segment, arcing over intervening disks.

    Both endpoints must lie outside every obstacle disk.  Where the segment
    crosses a disk, the chord is replaced by the circular arc whose midpoint
    has the larger imaginary part (counterclockwise on a tie).
    """
    d = b - a
    ll = abs(d) ** 2
    if ll == 0:
        return [a]
    events: list[tuple[float, float, complex, float]] = []
    for c, r in obstacles:
        ac = a - c
        bq = 2 * (d.conjugate() * ac).real
        cq = abs(ac) ** 2 - r * r
        disc = bq * bq - 4 * ll * cq
        if disc <= 0:
            continue
        sq = math.sqrt(disc)
        t1 = (-bq - sq) / (2 * ll)
        t2 = (-bq + sq) / (2 * ll)
        if t2 <= 0 or t1 >= 1:
            continue
        events.append((t1, t2, c, r))
    events.sort(key=lambda e: e[0])
    nodes = [a]
    cur = a
    for t1, t2, c, r in events:
        p1 = a + t1 * d
        p2 = a + t2 * d
        th1 = cmath.phase(p1 - c)
        th2 = cmath.phase(p2 - c)
        sweep_ccw = (th2 - th1) % (2 * math.pi)
        sweep_cw = sweep_ccw - 2 * math.pi
        mid_ccw = (c + r * cmath.exp(1j * (th1 + sweep_ccw / 2))).imag
        mid_cw = (c + r * cmath.exp(1j * (th1 + sweep_cw / 2))).imag
        sweep = sweep_ccw if mid_ccw >= mid_cw else sweep_cw
        nodes += _seg_nodes(cur, p1, h)
        nodes += _arc_nodes(c, r, th1, sweep, h)
        cur = p2
    nodes += _seg_nodes(cur, b, h)
    return nodes


def lasso_radii(branch: Sequence[complex], basepoint: complex) -> tuple[float, ...]:
    """Safe circle radius per branch point: 0.4 x distance to nearest other
    branch point and to the basepoint, so disks stay pairwise disjoint and
    never contain the basepoint."""
    out = []
    for k, c in enumerate(branch):
        others = [abs(c - branch[j]) for j in range(len(branch)) if j != k]
        out.append(float(0.4 * min(others + [abs(basepoint - c)])))
    return tuple(out)


def auto_basepoint(branch: Sequence[complex]) -> complex:
    """Real basepoint to the right of every branch point."""
    maxmod = max((abs(c) for c in branch), default=0.0)
    return complex(maxmod + 1.5, 0.0)


def lasso_nodes(
    branch: Sequence[complex],
    radii: Sequence[float],
    k: int,
    basepoint: complex,
    h: float,
) -> list[complex]:
    """Basepoint lasso around branch point k: approach, CCW circle, return."""
    c, r = branch[k], radii[k]
    e = c + r * (basepoint - c) / abs(basepoint - c)
    obstacles = [(branch[j], radii[j]) for j in range(len(branch)) if j != k]
    approach = _route_segment(basepoint, e, obstacles, h)
    circle = _arc_nodes(c, r, cmath.phase(e - c), 2 * math.pi, h)
    back = list(reversed(approach))[1:]
    return approach + circle + back


def boundary_nodes(
    branch: Sequence[complex],
    radii: Sequence[float],
    basepoint: complex,
    h: float,
) -> list[complex]:
    """Loop from the basepoint around a circle enclosing every branch disk."""
    m = sum(branch) / len(branch)
    spread = max(abs(c - m) for c in branch)
    rr = max(abs(c - m) + 2.5 * r for c, r in zip(branch, radii))
    rr = max(rr, abs(basepoint - m)) + 0.1 * (1.0 + spread)
    direction = (basepoint - m) / abs(basepoint - m) if basepoint != m else 1.0 + 0j
    exit_pt = m + rr * direction
    obstacles = list(zip(branch, radii))
    out = _route_segment(basepoint, exit_pt, obstacles, h)
    circle = _arc_nodes(m, rr, cmath.phase(exit_pt - m), 2 * math.pi, h)
    back = list(reversed(out))[1:]
    return out + circle + back


def _match_perm(fiber0: Sequence[complex], end: Sequence[complex]) -> Perm:
    """Permutation sending each start sheet to the sheet its endpoint equals."""
    tol = _minsep(fiber0) / 3
    images = []
    for w in end:
        dists = [abs(w - f) for f in fiber0]
        j = dists.index(min(dists))
        if dists[j] > tol:
            raise NumericFailure(
                f"tracked sheet ended at {w}, not within {tol:.3e} of any start sheet"
            )
        images.append(j)
    if sorted(images) != list(range(len(fiber0))):
        raise NumericFailure("tracked fiber endpoints do not permute the start fiber")
    return Perm(tuple(images))


@dataclass(frozen=True)
class MonodromyResult:
    """Lasso permutations of a cover slice around each branch point."""

    basepoint: complex
    fiber: tuple[complex, ...]
    branch: tuple[complex, ...]
    radii: tuple[float, ...]
    perms: tuple[Perm, ...]
    boundary_perm: Perm
    product_perm: Perm
    product_matches_boundary: bool

    def perm_around(self, center: complex) -> Perm:
        """Lasso permutation for the branch point nearest ``center``."""
        if not self.branch:
            raise ValueError("cover has no branch points")
        dists = [abs(c - center) for c in self.branch]
        k = dists.index(min(dists))
        if dists[k] > 1e-6 * (1.0 + abs(center)):
            raise ValueError(f"no branch point near {center}")
        return self.perms[k]

    def closure_order(self, cap: int = 1_000_000) -> int:
        """Order of the permutation group the lassos generate."""
        return generated_order(list(self.perms), cap=cap)


def full_monodromy(
    cover: CoverSlice,
    basepoint: complex | None = None,
    refine: int = 1,
) -> MonodromyResult:
    """Track every basepoint lasso and the outer boundary loop.

    Lassos are ordered by ascending argument of (branch point - basepoint),
    measured in [0, 2pi) so the cut lies on the basepoint's outward ray and
    quantized at a microradian so roundoff cannot flip the order; farther
    point first on (quantized) ties.  With that order their left-to-right
    product is compared against the boundary loop.  A cycle-type mismatch between the
    two is a tracking failure and raises; an orientation-level mismatch is
    recorded in ``product_matches_boundary``.
    """
    if refine < 1:
        raise ValueError("refine must be >= 1")
    branch = branch_points(cover)
    if basepoint is None:
        basepoint = auto_basepoint(branch)
    for c in branch:
        if abs(basepoint - c) < 1e-9:
            raise ValueError("basepoint coincides with a branch point")
    fiber0 = cover.fiber(basepoint)
    if _minsep(fiber0) == 0:
        raise NumericFailure("fiber at basepoint is not simple")

    if not branch:
        ident = Perm.identity(cover.degree)
        return MonodromyResult(
            basepoint, fiber0, (), (), (), ident, ident, True
        )

    order = sorted(
        range(len(branch)),
        key=lambda k: (
            round((cmath.phase(branch[k] - basepoint) % (2 * math.pi)) * 1e6),
            -abs(branch[k] - basepoint),
            branch[k].real,
            branch[k].imag,
        ),
    )
    branch_ord = tuple(branch[k] for k in order)
    radii = lasso_radii(branch_ord, basepoint)
    h = 0.35 * min(radii) / refine

    perms = []
    for k in range(len(branch_ord)):
        nodes = lasso_nodes(branch_ord, radii, k, basepoint, h)
        end = track_path(cover, nodes, fiber0)
        perms.append(_match_perm(fiber0, end))

    bnodes = boundary_nodes(branch_ord, radii, basepoint, h)
    bend = track_path(cover, bnodes, fiber0)
    boundary = _match_perm(fiber0, bend)

    product = Perm.identity(cover.degree)
    for p in perms:
        product = product * p
    if product.cycle_type() != boundary.cycle_type():
        raise NumericFailure(
            f"lasso product {product} is not conjugate to the boundary loop {boundary}; "
            f"tracking is inconsistent"
        )
    return MonodromyResult(
        basepoint,
        fiber0,
        branch_ord,
        radii,
        tuple(perms),
        boundary,
        product,
        product == boundary,
    )


def track_to(
    cover: CoverSlice,
    target: complex,
    basepoint: complex | None = None,
    refine: int = 1,
) -> tuple[tuple[complex, ...], tuple[complex, ...], complex]:
    """Continue the basepoint fiber to a target z along a detoured segment.

    Returns (basepoint fiber, continued fiber aligned to it, basepoint used).
    """
    branch = branch_points(cover)
    if basepoint is None:
        basepoint = auto_basepoint(branch)
    fiber0 = cover.fiber(basepoint)
    if not branch:
        nodes = [basepoint] + _seg_nodes(basepoint, target, max(abs(target - basepoint) / 8, 1e-9))
        return fiber0, track_path(cover, nodes, fiber0), basepoint
    radii = lasso_radii(branch, basepoint)
    h = 0.35 * min(radii) / refine
    obstacles = [
        (c, r) for c, r in zip(branch, radii) if abs(target - c) > r
    ]
    nodes = _route_segment(basepoint, target, obstacles, h)
    return fiber0, track_path(cover, nodes, fiber0), basepoint


def separates_fiber(
    cover: CoverSlice,
    func: BivarPoly,
    z: complex,
    tol: float = 1e-8,
) -> bool:
    """Whether the function takes distinct values on the fiber over z."""
    vals = [func(z, w) for w in cover.fiber(z)]
    scale = 1.0 + max(abs(v) for v in vals)
    return bool(_minsep(vals) > tol * scale)


def weierstrass_poly_of_function(
    cover: CoverSlice,
    func: BivarPoly,
    strip_tol: float = 1e-8,
) -> BivarPoly:
    """Monic polynomial (in a new variable) whose roots over z are the values
    of ``func`` on the fiber: the product of (zeta - func(z, w_i(z))).

    The coefficients are symmetric in the sheets, hence single-valued
    polynomials in z; they are recovered by sampling on a circle that keeps
    clear of every branch point and interpolating.
    """
    b = cover.degree
    max_c_deg = max(max(c.degree for c in cover.poly.w_coeffs), 1)
    bound = b * (max(func.z_degree, 0) + max(func.w_degree, 0) * max_c_deg)
    npts = bound + 1

    branch = branch_points(cover)
    radius = 1.37 * (1.0 + max((abs(c) for c in branch), default=0.0))
    for _ in range(60):
        if all(abs(abs(c) - radius) > 1e-3 * radius for c in branch):
            break
        radius *= 1.0371
    zs = [radius * cmath.exp(2j * math.pi * (k + 0.3) / npts) for k in range(npts)]

    samples = np.zeros((npts, b + 1), dtype=complex)
    for i, z in enumerate(zs):
        vals = [func(z, w) for w in cover.fiber(z)]
        prod = CPoly((1,))
        for v in vals:
            prod = prod * CPoly((-v, 1))
        cs = list(prod.coeffs) + [0j] * (b + 1 - len(prod.coeffs))
        samples[i, :] = cs
    vand = np.vander(np.array(zs, dtype=complex), N=npts, increasing=True)
    coeff_cols = np.linalg.solve(vand, samples)

    top = max(np.abs(coeff_cols).max(), 1.0)
    rows = []
    for j in range(b + 1):
        col = [c if abs(c) > strip_tol * top else 0j for c in coeff_cols[:, j]]
        rows.append(col)
    rows[b] = [1.0 + 0j]
    return BivarPoly.from_lists(rows)

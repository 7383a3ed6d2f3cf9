"""Defining functions for Hartogs-type domains and their Levi forms.

Points of C^n split as w = (w1, w2) with w1 the first n-q coordinates and
w2 the last q.  The defining function is

    rho_alpha(w) = -||w1||^2 + r^2/4 + (1 - r^2/4) * ||w2||^(2*alpha)

with Euclidean norms, 0 < r < 1 and alpha > 0.  Its complex Hessian is block
diagonal; the reported Levi matrix is scaled by 2 so the w1 block is exactly
-2 times the identity, and the w2 block has eigenvalues
2*kappa*alpha^2*S^(alpha-1) (radial direction) and 2*kappa*alpha*S^(alpha-1)
with S = ||w2||^2 and kappa = 1 - r^2/4; all positive away from w2 = 0.

Every closed-form Levi matrix is cross-checked against a finite-difference
complex Hessian before being returned.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .errors import NotSmooth, NumericFailure


def _split(w: Sequence[complex], q: int) -> tuple[np.ndarray, np.ndarray]:
    ws = np.asarray(list(w), dtype=complex)
    n = ws.size
    if not 1 <= q < n:
        raise ValueError(f"need 1 <= q < n, got q={q}, n={n}")
    return ws[: n - q], ws[n - q :]


def _validate(alpha: float, r: float) -> None:
    if not alpha > 0:
        raise ValueError("alpha must be positive")
    if not 0 < r < 1:
        raise ValueError("r must lie strictly between 0 and 1")


def rho_alpha(w: Sequence[complex], q: int, alpha: float, r: float) -> float:
    """Evaluate the defining function at a point."""
    _validate(alpha, r)
    w1, w2 = _split(w, q)
    kappa = 1.0 - r * r / 4.0
    s = float(np.sum(np.abs(w2) ** 2))
    return float(-np.sum(np.abs(w1) ** 2) + r * r / 4.0 + kappa * s**alpha)


def _fd_complex_hessian(
    f: Callable[[np.ndarray], float], w: np.ndarray, h: float
) -> np.ndarray:
    """Complex Hessian d^2 f / dw_j dwbar_k from real central differences."""
    n = w.size

    def ev(dx: np.ndarray, dy: np.ndarray) -> float:
        return f(w + dx + 1j * dy)

    def mixed(a: int, b: int, ya: bool, yb: bool) -> float:
        da = np.zeros(n)
        db = np.zeros(n)
        da[a] = h
        db[b] = h
        if a == b and ya == yb:
            # plain second difference in one real coordinate
            dx = np.zeros(n)
            dy = np.zeros(n)
            (dy if ya else dx)[a] = h
            return (ev(dx, dy) - 2.0 * ev(np.zeros(n), np.zeros(n)) + ev(-dx, -dy)) / (h * h)
        dxa = np.zeros(n)
        dya = np.zeros(n)
        (dya if ya else dxa)[a] = h
        dxb = np.zeros(n)
        dyb = np.zeros(n)
        (dyb if yb else dxb)[b] = h
        return (
            ev(dxa + dxb, dya + dyb)
            - ev(dxa - dxb, dya - dyb)
            - ev(dxb - dxa, dyb - dya)
            + ev(-dxa - dxb, -dya - dyb)
        ) / (4.0 * h * h)

    hess = np.zeros((n, n), dtype=complex)
    for j in range(n):
        for k in range(n):
            xx = mixed(j, k, False, False)
            yy = mixed(j, k, True, True)
            xy = mixed(j, k, False, True)
            yx = mixed(j, k, True, False)
            hess[j, k] = 0.25 * ((xx + yy) + 1j * (xy - yx))
    return hess


@dataclass(frozen=True)
class LeviData:
    """Levi matrix (2x complex Hessian), its spectrum, and the signature."""

    matrix: np.ndarray
    eigenvalues: tuple[float, ...]
    signature: tuple[int, int, int]  # (positive, negative, zero)


def levi_matrix(w: Sequence[complex], q: int, alpha: float, r: float) -> np.ndarray:
    """Closed-form Levi matrix of rho_alpha at a point (block diagonal)."""
    _validate(alpha, r)
    w1, w2 = _split(w, q)
    n1 = w1.size
    n = n1 + w2.size
    kappa = 1.0 - r * r / 4.0
    s = float(np.sum(np.abs(w2) ** 2))
    mat = np.zeros((n, n), dtype=complex)
    mat[:n1, :n1] = -2.0 * np.eye(n1)
    if s == 0.0:
        if abs(alpha - round(alpha)) > 0:
            raise NotSmooth(
                f"rho with alpha={alpha} is not twice differentiable where the "
                f"second block vanishes"
            )
        if round(alpha) == 1:
            mat[n1:, n1:] = 2.0 * kappa * np.eye(n - n1)
        # integer alpha >= 2: the block is identically zero at this point
        return mat
    v = np.conj(w2).reshape(-1, 1)
    block = alpha * s ** (alpha - 1) * np.eye(n - n1)
    block = block + alpha * (alpha - 1) * s ** (alpha - 2) * (v @ v.conj().T)
    mat[n1:, n1:] = 2.0 * kappa * block
    return mat


def levi_signature(
    w: Sequence[complex],
    q: int,
    alpha: float,
    r: float,
    fd_step: float = 1e-4,
    fd_rel_tol: float = 1e-5,
    zero_tol: float = 1e-8,
) -> LeviData:
    """Levi matrix, eigenvalues and inertia, cross-checked by differencing.

    The closed form is compared entrywise against a finite-difference complex
    Hessian (scaled by the same factor 2); disagreement beyond
    ``fd_rel_tol * (1 + max entry)`` raises :class:`NumericFailure`.
    """
    ws = np.asarray(list(w), dtype=complex)
    mat = levi_matrix(ws, q, alpha, r)

    fd = 2.0 * _fd_complex_hessian(lambda p: rho_alpha(p, q, alpha, r), ws, fd_step)
    scale = 1.0 + float(np.abs(mat).max())
    err = float(np.abs(fd - mat).max())
    if err > fd_rel_tol * scale:
        raise NumericFailure(
            f"closed-form Levi matrix deviates from finite differences by {err:.3e} "
            f"(allowed {fd_rel_tol * scale:.3e})"
        )

    eigs = np.linalg.eigvalsh(mat)
    tol = zero_tol * (1.0 + float(np.abs(eigs).max()))
    pos = int(np.sum(eigs > tol))
    neg = int(np.sum(eigs < -tol))
    zero = eigs.size - pos - neg
    return LeviData(mat, tuple(float(e) for e in eigs), (pos, neg, zero))


def in_hartogs_figure(w: Sequence[complex], q: int, r: float) -> bool:
    """Membership in the standard two-piece figure inside the unit polydisk.

    Uses the max of coordinate moduli on each block: inside the open unit
    polydisk, the point lies in the slab (first block inside the small
    polydisk of radius r, second block free) or in the ring (second block
    outside the closed polydisk of radius 1-r).
    """
    _validate(1.0, r)
    w1, w2 = _split(w, q)
    if max(np.abs(np.concatenate([w1, w2]))) >= 1.0:
        return False
    slab = float(np.max(np.abs(w1))) < r
    ring = float(np.max(np.abs(w2))) > 1.0 - r
    return slab or ring

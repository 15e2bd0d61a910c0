"""Dominance and angular-geometry primitives shared by the whole library.

Conventions used everywhere: an objective vector is a 1-D float array of
length M, a population is an (n, M) array of objective rows paired with an
(n, D) array of decision rows, and reference-vector directions are
nonnegative rows that sum to one. All functions in this module are pure.
"""

from __future__ import annotations

import numpy as np


def dominates(a, b) -> bool:
    """True iff objective vector ``a`` Pareto-dominates ``b``.

    Dominance is element-wise <= with at least one strict <, compared
    exactly (no epsilon).
    """
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    if a.shape != b.shape:
        raise ValueError(f"objective vectors differ in length: {a.shape} vs {b.shape}")
    return bool(np.all(a <= b) and np.any(a < b))


def nondominated_split(objs) -> tuple[np.ndarray, np.ndarray]:
    """Split objective rows into (frontier, dominated) index arrays.

    The frontier holds every row that no other row dominates; duplicated
    rows are all kept on the frontier. Both index arrays preserve the
    input order.
    """
    objs = np.asarray(objs, dtype=float)
    if objs.ndim != 2:
        raise ValueError("expected an (n, M) objective array")
    # dom[i, j] == True iff row i dominates row j
    le = np.all(objs[:, None, :] <= objs[None, :, :], axis=2)
    lt = np.any(objs[:, None, :] < objs[None, :, :], axis=2)
    dominated = (le & lt).any(axis=0)
    idx = np.arange(len(objs))
    return idx[~dominated], idx[dominated]


def angle_matrix(points, targets) -> np.ndarray:
    """Pairwise angles in radians between point rows and target rows.

    Rows are compared by direction only, so the result is invariant under
    positive scaling of any row. A zero-norm point is defined to have
    angle 0 to every target (it sits at the translation origin and should
    win every angular comparison). Zero-norm targets are rejected.
    """
    P = np.atleast_2d(np.asarray(points, dtype=float))
    Q = np.atleast_2d(np.asarray(targets, dtype=float))
    pn = np.linalg.norm(P, axis=1)
    qn = np.linalg.norm(Q, axis=1)
    if np.any(qn == 0.0):
        raise ValueError("target directions must have nonzero norm")
    cos = P @ Q.T
    cos /= qn[None, :]
    nz = pn > 0.0
    cos[nz] /= pn[nz, None]
    ang = np.arccos(np.clip(cos, -1.0, 1.0))
    ang[~nz] = 0.0
    return ang


def angle(o, z) -> float:
    """Angle in radians between a single objective vector and a direction."""
    o = np.asarray(o, dtype=float)
    z = np.asarray(z, dtype=float)
    return float(angle_matrix(o[None, :], z[None, :])[0, 0])


def associate(points, targets) -> np.ndarray:
    """Index of the angularly nearest target for every point row.

    Ties break toward the lowest target index so that association is
    deterministic across runs and platforms.
    """
    Q = np.atleast_2d(np.asarray(targets, dtype=float))
    if Q.shape[0] == 0:
        raise ValueError("cannot associate against an empty target set")
    return np.argmin(angle_matrix(points, Q), axis=1)


def update_ideal(objs, current=None) -> np.ndarray:
    """Element-wise minimum of all objective rows seen so far.

    The returned vector is the translation origin for every angular and
    proximity computation; it only ever moves down.
    """
    objs = np.atleast_2d(np.asarray(objs, dtype=float))
    low = objs.min(axis=0)
    if current is None:
        return low
    return np.minimum(np.asarray(current, dtype=float), low)

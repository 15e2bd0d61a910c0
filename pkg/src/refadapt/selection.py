"""Cascade-clustering selection.

One pass over a candidate pool produces the next population, the set of
active reference vectors, and one cluster center per active vector. The
pass is a pure function of its inputs, so maintaining a center archive
and selecting the population can share a single invocation.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.spatial.distance import cdist

from .core import angle_matrix, nondominated_split


@dataclass(frozen=True)
class SelectionResult:
    """Outcome of one cascade-clustering pass, as indices into the pool.

    ``selected`` lists the chosen pool rows in pick order, ``active`` the
    sorted indices of reference vectors that attracted at least one
    frontier individual, and ``centers`` the best frontier of each active
    vector (aligned with ``active``). ``pool_exhausted`` flags a pool
    smaller than the requested population.
    """

    selected: np.ndarray
    active: np.ndarray
    centers: np.ndarray
    pool_exhausted: bool = False


def pdm(objs, z, ideal) -> float:
    """Proximity-diversity measure of one individual against a direction.

    Mean of the ideal-translated objective components plus the sine of
    the angle to ``z``; lower is better. The translated mean keeps the
    proximity term nonnegative and on a scale comparable to sin in [0, 1].
    """
    t = np.asarray(objs, dtype=float) - np.asarray(ideal, dtype=float)
    ang = angle_matrix(t[None, :], np.asarray(z, dtype=float)[None, :])[0, 0]
    return float(t.mean() + np.sin(ang))


def cascade_cluster(objs, directions, n_select: int, ideal) -> SelectionResult:
    """Select ``n_select`` pool members guided by reference directions.

    Steps: split the pool into frontier and non-frontier; attach each
    frontier to its minimum-angle direction, which forms the clusters;
    rank each cluster's frontiers by ascending pdm (the best one is the
    cluster center); attach every non-frontier to the Euclidean-nearest
    center and rank by that distance; then pick round-robin over clusters
    in ascending direction index, frontiers before non-frontiers, one
    member per visit, until the quota or the pool runs out.

    All ties (angles, pdm, distances) break toward the lower index, so
    the result is deterministic.
    """
    objs = np.asarray(objs, dtype=float)
    Z = np.atleast_2d(np.asarray(directions, dtype=float))
    if objs.ndim != 2 or len(objs) == 0:
        raise ValueError("candidate pool must be a nonempty (n, M) array")
    if len(Z) == 0:
        raise ValueError("reference-vector set must be nonempty")
    if n_select < 1:
        raise ValueError("population size must be positive")

    translated = objs - np.asarray(ideal, dtype=float)
    frontier, non_frontier = nondominated_split(objs)

    # frontier attachment activates reference vectors
    ang = angle_matrix(translated[frontier], Z)
    activation = np.argmin(ang, axis=1)
    active = np.unique(activation)

    queues: list[list[int]] = []
    center_rows: list[int] = []
    frontier_counts: list[int] = []
    for ci, zi in enumerate(active):
        members = frontier[activation == zi]            # pool order
        scores = translated[members].mean(axis=1) + np.sin(ang[activation == zi, zi])
        order = np.argsort(scores, kind="stable")
        ranked = members[order]
        queues.append(list(ranked))
        center_rows.append(int(ranked[0]))
        frontier_counts.append(len(ranked))

    if len(non_frontier):
        dist = cdist(translated[non_frontier], translated[center_rows])
        attach = np.argmin(dist, axis=1)                # ties: lowest cluster index
        for ci in range(len(active)):
            members = non_frontier[attach == ci]
            order = np.argsort(dist[attach == ci, ci], kind="stable")
            queues[ci].extend(members[order])

    # round-robin picking
    picked: list[int] = []
    heads = [0] * len(queues)
    want = min(n_select, len(objs))
    while len(picked) < want:
        for ci, queue in enumerate(queues):
            if heads[ci] < len(queue):
                picked.append(int(queue[heads[ci]]))
                heads[ci] += 1
                if len(picked) == want:
                    break

    return SelectionResult(
        selected=np.array(picked, dtype=np.int64),
        active=active.astype(np.int64),
        centers=np.array(center_rows, dtype=np.int64),
        pool_exhausted=want < n_select,
    )

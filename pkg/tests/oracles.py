"""Independent reference implementations used as test oracles.

Everything here is deliberately written with plain Python scalars and
loops, separate from the vectorized library code, so the two can be
compared output for output. The only shared contract is the documented
tie-breaking (lowest index, pool order) and random draw order.
"""

import math

import numpy as np


# ---------------------------------------------------------------------------
# dominance

def dominates_oracle(a, b) -> bool:
    return all(x <= y for x, y in zip(a, b)) and any(x < y for x, y in zip(a, b))


def frontier_split_oracle(pool):
    """All-pairs dominance check; returns (frontier, rest) index lists."""
    n = len(pool)
    frontier = [
        i for i in range(n)
        if not any(dominates_oracle(pool[j], pool[i]) for j in range(n))
    ]
    rest = [i for i in range(n) if i not in frontier]
    return frontier, rest


# ---------------------------------------------------------------------------
# angles / association

def _norm(v):
    return math.sqrt(sum(x * x for x in v))


def angle_oracle(o, z) -> float:
    no, nz = _norm(o), _norm(z)
    if no == 0.0:
        return 0.0
    c = sum(a * b for a, b in zip(o, z)) / (no * nz)
    return math.acos(max(-1.0, min(1.0, c)))


def associate_oracle(points, targets):
    out = []
    for p in points:
        angles = [angle_oracle(p, t) for t in targets]
        best = 0
        for k in range(1, len(targets)):
            if angles[k] < angles[best]:
                best = k
        out.append(best)
    return out


# ---------------------------------------------------------------------------
# cascade clustering, step by step

def cascade_cluster_oracle(pool, Z, n_select, ideal):
    """Step-by-step selection: frontier split, angular attachment, pdm
    ranking, center-distance attachment, round-robin picking.

    Returns (selected, active, centers) as plain lists of pool indices.
    """
    pool = [list(map(float, row)) for row in pool]
    Z = [list(map(float, row)) for row in Z]
    ideal = list(map(float, ideal))
    m = len(ideal)
    translated = [[v - w for v, w in zip(row, ideal)] for row in pool]

    frontier, non_frontier = frontier_split_oracle(pool)

    activation = {i: None for i in frontier}
    for i in frontier:
        angles = [angle_oracle(translated[i], z) for z in Z]
        best = 0
        for k in range(1, len(Z)):
            if angles[k] < angles[best]:
                best = k
        activation[i] = best
    active = sorted(set(activation.values()))

    def pdm_value(i, zi):
        t = translated[i]
        return sum(t) / m + math.sin(angle_oracle(t, Z[zi]))

    queues = []
    centers = []
    for zi in active:
        members = [i for i in frontier if activation[i] == zi]   # pool order
        ranked = sorted(members, key=lambda i: pdm_value(i, zi)) # stable sort
        queues.append(list(ranked))
        centers.append(ranked[0])

    def distance(i, j):
        return math.sqrt(sum((a - b) ** 2 for a, b in zip(translated[i], translated[j])))

    nf_of_cluster = {ci: [] for ci in range(len(active))}
    for i in non_frontier:
        dists = [distance(i, centers[ci]) for ci in range(len(active))]
        best = 0
        for ci in range(1, len(active)):
            if dists[ci] < dists[best]:
                best = ci
        nf_of_cluster[best].append(i)
    for ci in range(len(active)):
        members = nf_of_cluster[ci]                              # pool order
        ranked = sorted(members, key=lambda i: distance(i, centers[ci]))
        queues[ci].extend(ranked)

    selected = []
    heads = [0] * len(queues)
    want = min(n_select, len(pool))
    while len(selected) < want:
        for ci in range(len(queues)):
            if heads[ci] < len(queues[ci]):
                selected.append(queues[ci][heads[ci]])
                heads[ci] += 1
                if len(selected) == want:
                    break
    return selected, active, centers


# ---------------------------------------------------------------------------
# variation operators (same documented draw order, scalar loops)

def _pow(base: float, exponent: float) -> float:
    """Exponentiation via numpy's elementwise kernel.

    The platform's vectorized pow differs from libm's scalar pow by one
    ulp on a few percent of inputs, but is self-consistent across array
    shapes; routing the oracle's single power operation through the same
    kernel keeps the comparison bit-exact while everything else stays an
    independent scalar implementation.
    """
    return float(np.power(np.array([base]), exponent)[0])


def sbx_oracle(p1, p2, eta_c, p_c, lower, upper, rng):
    d = len(p1)
    if rng.random() >= p_c:
        return list(p1), list(p2)
    apply_mask = rng.random(d)
    u = rng.random(d)
    c1, c2 = [], []
    for i in range(d):
        if apply_mask[i] < 0.5:
            ui = u[i]
            if ui <= 0.5:
                beta = _pow(2.0 * ui, 1.0 / (eta_c + 1.0))
            else:
                beta = _pow(1.0 / (2.0 * (1.0 - ui)), 1.0 / (eta_c + 1.0))
            a = 0.5 * ((1.0 + beta) * p1[i] + (1.0 - beta) * p2[i])
            b = 0.5 * ((1.0 - beta) * p1[i] + (1.0 + beta) * p2[i])
        else:
            a, b = p1[i], p2[i]
        c1.append(min(max(a, lower[i]), upper[i]))
        c2.append(min(max(b, lower[i]), upper[i]))
    return c1, c2


def poly_mutate_oracle(x, eta_m, p_m, lower, upper, rng):
    d = len(x)
    mask = rng.random(d)
    u = rng.random(d)
    out = []
    for i in range(d):
        xi = x[i]
        if mask[i] < p_m:
            span = upper[i] - lower[i]
            d_low = (xi - lower[i]) / span
            d_high = (upper[i] - xi) / span
            exp = eta_m + 1.0
            ui = u[i]
            if ui <= 0.5:
                dq = _pow(2.0 * ui + (1.0 - 2.0 * ui) * _pow(1.0 - d_low, exp), 1.0 / exp) - 1.0
            else:
                dq = 1.0 - _pow(2.0 * (1.0 - ui) + 2.0 * (ui - 0.5) * _pow(1.0 - d_high, exp), 1.0 / exp)
            xi = xi + dq * span
        out.append(min(max(xi, lower[i]), upper[i]))
    return out


# ---------------------------------------------------------------------------
# metrics

def igd_oracle(samples, population) -> float:
    total = 0.0
    for s in samples:
        best = math.inf
        for p in population:
            dist = math.sqrt(sum((a - b) ** 2 for a, b in zip(s, p)))
            if dist < best:
                best = dist
        total += best
    return total / len(samples)


# ---------------------------------------------------------------------------
# brute-force reference-density search (tiny scale only)

def brute_force_density_active(points, n, theta, m=2, cap_factor=64):
    """Try full lattices at doubling densities until the activity target.

    Returns the active count at the first density whose fully enabled
    lattice is activated by at least (1 - theta) * n directions, or the
    count at the density cap.
    """
    from refadapt.core import associate
    from refadapt.reference import initial_density, simplex_lattice

    h0 = initial_density(m, n)
    h = h0
    while True:
        dirs = simplex_lattice(m, h) / float(h)
        count = len(np.unique(associate(points, dirs)))
        if count >= (1.0 - theta) * n or h >= cap_factor * h0:
            return count
        h *= 2


def random_instance(rng, m, pool_max=30, z_max=12):
    """A random selection instance: pool, directions, quota, ideal."""
    n_pool = int(rng.integers(2, pool_max + 1))
    n_z = int(rng.integers(1, z_max + 1))
    pool = rng.uniform(0.05, 5.0, (n_pool, m))
    Z = rng.uniform(0.05, 1.0, (n_z, m))
    Z = Z / Z.sum(axis=1, keepdims=True)
    n_select = int(rng.integers(1, n_pool + 1))
    ideal = pool.min(axis=0)
    return pool, Z, n_select, ideal

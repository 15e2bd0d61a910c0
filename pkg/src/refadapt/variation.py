"""Real-coded variation operators: SBX crossover and polynomial mutation.

Both operators take an explicit numpy Generator and document their draw
order, so an identical stream reproduces identical offspring and an
independent implementation can be checked bit for bit.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class VariationParams:
    """Distribution indices and application probabilities.

    ``p_m`` of None means one expected mutation per individual (1 / D).
    """

    eta_c: float = 20.0
    eta_m: float = 20.0
    p_c: float = 1.0
    p_m: float | None = None

    def __post_init__(self):
        if self.eta_c <= 0 or self.eta_m <= 0:
            raise ValueError("distribution indices must be positive")
        if not 0.0 <= self.p_c <= 1.0:
            raise ValueError("crossover probability must lie in [0, 1]")
        if self.p_m is not None and not 0.0 <= self.p_m <= 1.0:
            raise ValueError("mutation probability must lie in [0, 1]")


def sbx(p1, p2, params: VariationParams, lower, upper, rng) -> tuple[np.ndarray, np.ndarray]:
    """Simulated binary crossover of two parent vectors.

    Draw order: one uniform for the pair gate, then D uniforms for the
    per-variable application mask (applied with probability 0.5 given the
    pair crossed), then D uniforms for the spread factors. The spread
    factor follows the standard power law: beta = (2u)^(1/(eta_c+1)) for
    u <= 0.5, else (1 / (2(1-u)))^(1/(eta_c+1)). Children are clamped to
    the box bounds.
    """
    p1 = np.asarray(p1, dtype=float)
    p2 = np.asarray(p2, dtype=float)
    d = len(p1)
    if rng.random() >= params.p_c:
        return p1.copy(), p2.copy()
    apply_mask = rng.random(d) < 0.5
    u = rng.random(d)
    beta = np.where(
        u <= 0.5,
        (2.0 * u) ** (1.0 / (params.eta_c + 1.0)),
        (1.0 / (2.0 * (1.0 - u))) ** (1.0 / (params.eta_c + 1.0)),
    )
    c1 = 0.5 * ((1.0 + beta) * p1 + (1.0 - beta) * p2)
    c2 = 0.5 * ((1.0 - beta) * p1 + (1.0 + beta) * p2)
    c1 = np.where(apply_mask, c1, p1)
    c2 = np.where(apply_mask, c2, p2)
    return (
        np.clip(c1, lower, upper),
        np.clip(c2, lower, upper),
    )


def poly_mutate(x, params: VariationParams, lower, upper, rng) -> np.ndarray:
    """Polynomial mutation of one solution vector.

    Draw order: D uniforms for the per-variable mask (probability ``p_m``,
    default 1 / D), then D uniforms for the perturbations. The result is
    clamped to the box bounds.
    """
    x = np.asarray(x, dtype=float)
    lower = np.asarray(lower, dtype=float)
    upper = np.asarray(upper, dtype=float)
    d = len(x)
    pm = params.p_m if params.p_m is not None else 1.0 / d
    mask = rng.random(d) < pm
    u = rng.random(d)
    span = upper - lower
    delta_low = (x - lower) / span
    delta_high = (upper - x) / span
    exp = params.eta_m + 1.0
    dq_low = (2.0 * u + (1.0 - 2.0 * u) * (1.0 - delta_low) ** exp) ** (1.0 / exp) - 1.0
    dq_high = 1.0 - (2.0 * (1.0 - u) + 2.0 * (u - 0.5) * (1.0 - delta_high) ** exp) ** (1.0 / exp)
    dq = np.where(u <= 0.5, dq_low, dq_high)
    out = np.where(mask, x + dq * span, x)
    return np.clip(out, lower, upper)


def make_offspring(
    population: np.ndarray,
    count: int,
    params: VariationParams,
    lower,
    upper,
    mating_rng,
    crossover_rng,
    mutation_rng,
) -> np.ndarray:
    """Produce ``count`` offspring by random pairing, SBX and mutation.

    Parents are paired from one random permutation of the population
    (the leftover of an odd-sized population pairs with the first drawn
    parent); pairs are processed in order and the child stream truncated
    to ``count``.
    """
    n = len(population)
    perm = mating_rng.permutation(n)
    pairs = [(perm[i], perm[i + 1]) for i in range(0, n - 1, 2)]
    if n % 2 == 1:
        pairs.append((perm[-1], perm[0]))
    children: list[np.ndarray] = []
    for i, j in pairs:
        if len(children) >= count:
            break
        c1, c2 = sbx(population[i], population[j], params, lower, upper, crossover_rng)
        children.append(poly_mutate(c1, params, lower, upper, mutation_rng))
        if len(children) < count:
            children.append(poly_mutate(c2, params, lower, upper, mutation_rng))
    return np.vstack(children[:count])

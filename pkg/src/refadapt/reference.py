"""Simplex-lattice reference vectors and the layered reference archive.

Reference vectors are stored as integer lattice coordinates over a layer
density H (each row sums to H); the direction of a vector is coords / H,
which lies on the unit simplex. Layer densities double from one layer to
the next, so every coarse lattice is an exact subset of the finer one and
new layers can drop already-present points by exact integer comparison.
"""

from __future__ import annotations

import itertools
import json
import math
from dataclasses import dataclass, field

import numpy as np

from .core import associate

# Hard ceiling on generated lattice points, to fail loudly instead of
# exhausting memory on absurd (M, H) combinations.
MAX_LATTICE_POINTS = 5_000_000


def lattice_size(m: int, h: int) -> int:
    """Number of lattice points at density ``h``: C(h + m - 1, m - 1)."""
    return math.comb(h + m - 1, m - 1)


def simplex_lattice(m: int, h: int) -> np.ndarray:
    """All integer compositions of ``h`` into ``m`` nonnegative parts.

    Returns an (count, m) int array in lexicographic row order with
    count = C(h + m - 1, m - 1). Divide by ``h`` for unit-simplex
    directions.
    """
    if m < 2:
        raise ValueError("need at least two objectives")
    if h < 1:
        raise ValueError("lattice density must be positive")
    count = lattice_size(m, h)
    if count > MAX_LATTICE_POINTS:
        raise ValueError(
            f"lattice M={m}, H={h} requires {count} points, "
            f"above the {MAX_LATTICE_POINTS} limit"
        )
    # Stars-and-bars: an (m-1)-subset of divider positions in lex order
    # maps to one composition, and divider lex order is composition lex
    # order.
    dividers = np.fromiter(
        itertools.chain.from_iterable(itertools.combinations(range(h + m - 1), m - 1)),
        dtype=np.int64,
        count=count * (m - 1),
    ).reshape(count, m - 1)
    upper = np.column_stack([dividers, np.full(count, h + m - 1, dtype=np.int64)])
    lower = np.column_stack([np.full(count, -1, dtype=np.int64), dividers])
    return upper - lower - 1


def initial_density(m: int, n: int) -> int:
    """Smallest density H whose lattice holds at least ``n`` points."""
    if n < m:
        raise ValueError(f"population size {n} below objective count {m}")
    h = 1
    while lattice_size(m, h) < n:
        h += 1
    return h


@dataclass
class ReferenceLayer:
    """One density level of the reference archive.

    ``assoc`` maps each vector to its angularly nearest vector among the
    stacked vectors of all lower layers (stack order, rows concatenated);
    it is empty for the base layer. ``enabled`` marks the vectors that
    participate in selection.
    """

    h: int
    coords: np.ndarray                     # (k, m) int, rows sum to h, lex order
    enabled: np.ndarray                    # (k,) bool
    assoc: np.ndarray = field(default_factory=lambda: np.empty(0, dtype=np.int64))

    def __len__(self) -> int:
        return len(self.coords)

    @property
    def directions(self) -> np.ndarray:
        return self.coords / float(self.h)


def _coord_keys(coords: np.ndarray) -> set[tuple[int, ...]]:
    return set(map(tuple, coords.tolist()))


class ReferenceArchive:
    """Ordered stack of reference layers with doubling densities.

    ``layers`` may hold more layers than are live: removing the top layer
    is symbolic (``live_count`` drops), and a later densification revives
    the stored layer instead of regenerating it. The base layer is always
    live and fully enabled at initialization, so the participating set is
    never empty.
    """

    def __init__(self, m: int, layers: list[ReferenceLayer], live_count: int | None = None):
        if not layers:
            raise ValueError("archive needs at least a base layer")
        self.m = m
        self.layers = layers
        self.live_count = len(layers) if live_count is None else live_count

    @classmethod
    def initialize(cls, m: int, n: int) -> "ReferenceArchive":
        """Base archive for population size ``n``: one fully enabled layer."""
        h = initial_density(m, n)
        coords = simplex_lattice(m, h)
        base = ReferenceLayer(h=h, coords=coords, enabled=np.ones(len(coords), dtype=bool))
        return cls(m, [base])

    @property
    def base_h(self) -> int:
        return self.layers[0].h

    @property
    def top_h(self) -> int:
        return self.layers[self.live_count - 1].h

    def live_layers(self) -> list[ReferenceLayer]:
        return self.layers[: self.live_count]

    def participating(self) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        """Enabled vectors of the live layers.

        Returns (directions (p, m), layer_index (p,), row_index (p,)) in
        stack order, rows in lattice order, so participating indices are
        stable between calls that do not mutate the archive.
        """
        dirs, lis, rows = [], [], []
        for li, layer in enumerate(self.live_layers()):
            sel = np.flatnonzero(layer.enabled)
            if len(sel):
                dirs.append(layer.directions[sel])
                lis.append(np.full(len(sel), li, dtype=np.int64))
                rows.append(sel)
        if not dirs:
            raise ValueError("participating reference-vector set is empty")
        return np.vstack(dirs), np.concatenate(lis), np.concatenate(rows)

    def participating_count(self) -> int:
        return int(sum(layer.enabled.sum() for layer in self.live_layers()))

    def stacked_directions(self, upto: int) -> np.ndarray:
        """All vectors (enabled or not) of layers[0:upto], stacked."""
        return np.vstack([layer.directions for layer in self.layers[:upto]])

    def new_layer(self) -> ReferenceLayer:
        """Construct the next, denser layer without attaching it.

        The layer density doubles the current top density; lattice points
        already present in any stored layer are removed by exact integer
        comparison, every remaining vector starts disabled, and each is
        associated with its nearest vector among the stored layers.
        """
        h_new = 2 * self.layers[len(self.layers) - 1].h
        lattice = simplex_lattice(self.m, h_new)
        seen: set[tuple[int, ...]] = set()
        for layer in self.layers:
            factor = h_new // layer.h
            seen |= _coord_keys(layer.coords * factor)
        keep = np.array([tuple(row) not in seen for row in lattice.tolist()], dtype=bool)
        coords = lattice[keep]
        if len(coords) == 0:
            raise ValueError("densified layer is empty; archive state is corrupted")
        assoc = associate(coords / float(h_new), self.stacked_directions(len(self.layers)))
        return ReferenceLayer(
            h=h_new,
            coords=coords,
            enabled=np.zeros(len(coords), dtype=bool),
            assoc=assoc,
        )

    def to_json_dict(self) -> dict:
        """Debug dump of the live layers: {M, layers: [{H, coords, enabled}]}."""
        return {
            "M": self.m,
            "layers": [
                {
                    "H": layer.h,
                    "coords": layer.coords.tolist(),
                    "enabled": layer.enabled.tolist(),
                }
                for layer in self.live_layers()
            ],
        }

    def dump_json(self, path) -> None:
        with open(path, "w", encoding="utf-8") as fh:
            json.dump(self.to_json_dict(), fh, indent=2, sort_keys=True)

"""Reference-archive adaptation: the shrink and expand subroutines.

Shrink reacts to too few active reference vectors by adding (or reviving)
a denser layer and enabling only the new vectors associated with the
currently active ones. Expand reacts to too many active vectors by
back-propagating the activity of the densest layer onto the coarser ones
and then retiring the densest layer. A stability window over the activity
bitvector decides when an adaptation attempt is due.
"""

from __future__ import annotations

import logging
from collections import deque
from dataclasses import dataclass

import numpy as np

from .core import associate
from .reference import MAX_LATTICE_POINTS, ReferenceArchive, lattice_size

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class AdaptationParams:
    """Tolerance band and stability window for reference adaptation."""

    n: int                       # population size the band is centred on
    theta: float = 0.2           # tolerance ratio in (0, 1)
    w: int = 20                  # stability window in generations
    density_cap_factor: int = 64 # top density never exceeds cap * base density

    def __post_init__(self):
        if not 0.0 < self.theta < 1.0:
            raise ValueError("tolerance ratio must lie in (0, 1)")
        if (1.0 - self.theta) * self.n < 1.0:
            raise ValueError("tolerance band must keep at least one active vector")
        if self.w < 1:
            raise ValueError("stability window must be at least one generation")
        if self.density_cap_factor < 1:
            raise ValueError("density cap factor must be at least 1")


@dataclass
class AdaptationEvent:
    """Telemetry for one adaptation attempt."""

    kind: str                    # "shrink" | "expand" | "none"
    generation: int
    active_before: int
    active_after: int
    participating_after: int

    def to_dict(self) -> dict:
        return {
            "kind": self.kind,
            "generation": self.generation,
            "active_before": self.active_before,
            "active_after": self.active_after,
            "participating_after": self.participating_after,
        }


def _assoc_pairs(archive: ReferenceArchive, position: int, assoc: np.ndarray):
    """Map flat association indices of layers[position] to (layer, row)."""
    sizes = np.array([len(layer) for layer in archive.layers[:position]])
    bounds = np.cumsum(sizes)
    layer_idx = np.searchsorted(bounds, assoc, side="right")
    starts = bounds - sizes
    row_idx = assoc - starts[layer_idx]
    return layer_idx, row_idx


def adapt(
    archive: ReferenceArchive,
    active,
    params: AdaptationParams,
    generation: int = 0,
) -> tuple[np.ndarray, AdaptationEvent]:
    """Run at most one adaptation subroutine against the archive.

    ``active`` holds indices into the current participating set (the
    vectors activated by nondominated individuals). The archive is
    mutated in place; the return value is the resulting participating
    direction matrix together with an event record. When the active count
    already sits inside the tolerance band, or a guard forbids the
    requested subroutine, nothing changes and the event kind is "none".
    """
    active = np.asarray(active, dtype=np.int64)
    _, layer_idx, row_idx = archive.participating()
    if len(active) and (active.min() < 0 or active.max() >= len(layer_idx)):
        raise ValueError("active indices outside the participating set")
    active_pairs = set(zip(layer_idx[active].tolist(), row_idx[active].tolist()))
    n_active = len(active)
    low = (1.0 - params.theta) * params.n
    high = (1.0 + params.theta) * params.n

    kind = "none"
    active_after = n_active

    if n_active < low:
        target_h = 2 * archive.top_h
        if target_h > params.density_cap_factor * archive.base_h:
            log.warning(
                "density cap reached (H=%d, base H=%d); shrink skipped",
                archive.top_h, archive.base_h,
            )
        elif lattice_size(archive.m, target_h) > MAX_LATTICE_POINTS:
            # combinatorial blow-up guard for many objectives: treat an
            # oversized lattice like the density cap instead of aborting
            log.warning(
                "lattice at H=%d would hold %d points; shrink skipped",
                target_h, lattice_size(archive.m, target_h),
            )
        else:
            position = archive.live_count
            if position < len(archive.layers):
                layer = archive.layers[position]     # revive the retired layer
            else:
                layer = archive.new_layer()
                archive.layers.append(layer)
            tgt_layer, tgt_row = _assoc_pairs(archive, position, layer.assoc)
            layer.enabled = np.array(
                [(int(l), int(r)) in active_pairs for l, r in zip(tgt_layer, tgt_row)],
                dtype=bool,
            )
            archive.live_count += 1
            kind = "shrink"

    elif n_active > high:
        if archive.live_count == 1:
            # the base layer is never removed; expanding past it would
            # empty the archive
            log.debug("expand requested with only the base layer live; skipped")
        else:
            top_pos = archive.live_count - 1
            top = archive.layers[top_pos]
            active_top = np.zeros(len(top), dtype=bool)
            for li, row in active_pairs:
                if li == top_pos:
                    active_top[row] = True
            top_dirs = top.directions
            for li in range(top_pos):
                lower_layer = archive.layers[li]
                back = associate(lower_layer.directions, top_dirs)
                lower_layer.enabled |= active_top[back]
            archive.live_count -= 1
            kind = "expand"
            active_after = sum(1 for li, _ in active_pairs if li < top_pos)

    directions = archive.participating()[0]
    event = AdaptationEvent(
        kind=kind,
        generation=generation,
        active_before=n_active,
        active_after=active_after,
        participating_after=len(directions),
    )
    return directions, event


def stability_check(history, w: int) -> bool:
    """True iff the history holds ``w`` identical activity bitvectors."""
    entries = list(history)
    if len(entries) != w:
        return False
    first = entries[0]
    return all(entry == first for entry in entries[1:])


class StabilityTracker:
    """Ring of recent activity bitvectors gating adaptation attempts.

    The ring clears itself whenever the participating set changes size
    (the bitvector length differs from the previous one); the caller
    resets it after every adaptation attempt so consecutive adaptations
    are separated by at least ``w`` stable generations.
    """

    def __init__(self, w: int):
        if w < 1:
            raise ValueError("stability window must be at least one generation")
        self.w = w
        self._history: deque[tuple[bool, ...]] = deque(maxlen=w)

    def push(self, activity) -> bool:
        """Record one generation's activity; True when stable for w."""
        bits = tuple(bool(b) for b in activity)
        if self._history and len(self._history[-1]) != len(bits):
            self._history.clear()
        self._history.append(bits)
        return stability_check(self._history, self.w)

    def reset(self) -> None:
        self._history.clear()

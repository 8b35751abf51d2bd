"""3-opt local search over the candidate-list move neighborhood.

The optimizer accepts the first improving 2- or 3-edge exchange it
finds, using per-city don't-look bits to skip anchors whose incident
edges have not changed, and a final certification sweep so that the
returned tour admits no improving exchange whose added edges lie in the
neighbor lists.  All gains are exact integer arithmetic on the cost
matrix; segment reversals keep an explicit position index in sync and
2-exchanges always reverse the shorter side.
"""

from __future__ import annotations

import numpy as np

from . import _kernels
from .landscape import SearchLandscape, Tour


def three_opt_improve(tour: Tour, landscape: SearchLandscape) -> Tour:
    """Return a 3-opt locally optimal tour at least as short as ``tour``."""
    perm = tour.perm.astype(np.int32).copy()
    n = perm.shape[0]
    pos = np.empty(n, dtype=np.int32)
    pos[perm] = np.arange(n, dtype=np.int32)
    dlb = np.zeros(n, dtype=np.bool_)
    gain = _kernels.three_opt(perm, pos, landscape.d, landscape.neighbors, dlb)
    return Tour(perm, tour.length - int(gain))


def apply_segment_reversal(tour: Tour, i: int, j: int, d: np.ndarray) -> Tour:
    """Reverse tour positions i..j (cyclic, inclusive) with an O(1) length fix.

    The length is updated from the two boundary edges only, not
    re-summed, so this doubles as the primitive that exchange moves are
    built from.
    """
    perm = tour.perm.astype(np.int32).copy()
    n = perm.shape[0]
    if not (0 <= i < n and 0 <= j < n):
        raise ValueError(f"positions must be in 0..{n - 1}")
    pos = np.empty(n, dtype=np.int32)
    pos[perm] = np.arange(n, dtype=np.int32)

    seg_len = (j - i) % n + 1
    if seg_len == n:  # whole-tour reversal: same cycle, same length
        _kernels.reverse_segment(perm, pos, i, j)
        return Tour(perm, tour.length)

    before = perm[(i - 1) % n]
    first = perm[i]
    last = perm[j]
    after = perm[(j + 1) % n]
    delta = (d[before, last] + d[first, after]) - (
        d[before, first] + d[last, after]
    )
    _kernels.reverse_segment(perm, pos, i, j)
    return Tour(perm, tour.length + int(delta))

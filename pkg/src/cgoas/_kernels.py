"""Compiled inner loops: tour evaluation, probabilistic construction,
and 3-opt local search.

Everything here is numba-compiled and operates on plain numpy arrays so
the hot path never touches Python objects.  Cities are 0-based int32,
costs are int64, pheromone/heuristic tables are float64, and random
draws come from the xoshiro256++ state arrays defined in ``_rng``.
"""

import numpy as np
from numba import njit

from ._rng import next_below, next_double, next_gauss

# ---------------------------------------------------------------------------
# tour evaluation


@njit(cache=True)
def tour_length(perm, d):
    """Total closed-tour cost of visiting ``perm`` in order."""
    n = perm.shape[0]
    total = np.int64(0)
    for i in range(n - 1):
        total += d[perm[i], perm[i + 1]]
    total += d[perm[n - 1], perm[0]]
    return total


@njit(cache=True)
def nearest_neighbor_tour(d, start):
    """Greedy nearest-neighbor tour; ties go to the lower city index."""
    n = d.shape[0]
    perm = np.empty(n, np.int32)
    visited = np.zeros(n, np.bool_)
    perm[0] = start
    visited[start] = True
    cur = start
    for step in range(1, n):
        best = -1
        best_d = np.int64(0)
        for j in range(n):
            if not visited[j] and (best < 0 or d[cur, j] < best_d):
                best = j
                best_d = d[cur, j]
        perm[step] = best
        visited[best] = True
        cur = best
    return perm


# ---------------------------------------------------------------------------
# probabilistic construction


@njit(cache=True)
def pick_next_city(tau, heur, nn, visited, cur, alpha, state, wbuf, cbuf):
    """One roulette-wheel step over the candidate list of ``cur``.

    Weights are tau^alpha * heur (heur already carries the beta power).
    Falls back to all unvisited cities when every candidate is used up,
    and to a uniform draw when the weight mass underflows to zero.
    """
    k = nn.shape[1]
    cnt = 0
    total = 0.0
    for m in range(k):
        cand = nn[cur, m]
        if visited[cand]:
            continue
        t = tau[cur, cand]
        if alpha == 1.0:
            wt = t * heur[cur, cand]
        else:
            wt = t ** alpha * heur[cur, cand]
        wbuf[cnt] = wt
        cbuf[cnt] = cand
        cnt += 1
        total += wt
    if cnt > 0:
        if total > 0.0:
            r = next_double(state) * total
            acc = 0.0
            for m in range(cnt):
                acc += wbuf[m]
                if r < acc:
                    return cbuf[m]
            return cbuf[cnt - 1]
        return cbuf[next_below(state, cnt)]
    # candidate list exhausted: weigh every unvisited city
    n = tau.shape[0]
    total = 0.0
    for j in range(n):
        if visited[j] or j == cur:
            continue
        if alpha == 1.0:
            total += tau[cur, j] * heur[cur, j]
        else:
            total += tau[cur, j] ** alpha * heur[cur, j]
    if total > 0.0:
        r = next_double(state) * total
        acc = 0.0
        last = -1
        for j in range(n):
            if visited[j] or j == cur:
                continue
            last = j
            if alpha == 1.0:
                acc += tau[cur, j] * heur[cur, j]
            else:
                acc += tau[cur, j] ** alpha * heur[cur, j]
            if r < acc:
                return np.int32(j)
        return np.int32(last)
    # zero mass everywhere: uniform over unvisited
    cnt = 0
    for j in range(n):
        if not visited[j] and j != cur:
            cnt += 1
    pick = next_below(state, cnt)
    seen = 0
    for j in range(n):
        if not visited[j] and j != cur:
            if seen == pick:
                return np.int32(j)
            seen += 1
    return np.int32(-1)  # unreachable: construction always has unvisited cities


@njit(cache=True)
def construct_social(tau, heur, nn, alpha, state):
    """Build a tour city by city from the shared pheromone/heuristic tables."""
    n = tau.shape[0]
    k = nn.shape[1]
    perm = np.empty(n, np.int32)
    visited = np.zeros(n, np.bool_)
    wbuf = np.empty(k, np.float64)
    cbuf = np.empty(k, np.int32)
    cur = np.int32(next_below(state, n))
    perm[0] = cur
    visited[cur] = True
    for step in range(1, n):
        nxt = pick_next_city(tau, heur, nn, visited, cur, alpha, state, wbuf, cbuf)
        perm[step] = nxt
        visited[nxt] = True
        cur = nxt
    return perm


@njit(cache=True)
def truncated_normal(state, sigma, bound):
    """Zero-mean normal draw rejected until it lands in [-bound, bound].

    Degenerate parameters (sigma <= 0 or bound <= 0) return 0.0 without
    consuming any randomness.
    """
    if sigma <= 0.0 or bound <= 0.0:
        return 0.0
    while True:
        x = next_gauss(state) * sigma
        if -bound <= x <= bound:
            return x


@njit(cache=True)
def clip_half_width(p_ind, w):
    """Shrink the truncation half-width so p_ind +/- w stays inside [0, 1]."""
    if p_ind - w <= 0.0:
        w = p_ind
    if p_ind + w >= 1.0:
        w = 1.0 - p_ind
    return w


@njit(cache=True)
def construct_mixed(parent, tau, heur, nn, alpha, p_ind, sigma_c, w, state):
    """Inherit a run of parent edges, then finish probabilistically.

    A fraction p_c ~ p_ind + TruncNormal(sigma_c, +/-w) of the tour is
    copied as consecutive edges from ``parent`` starting at a random
    city; the remaining cities are appended with the same roulette rule
    used for purely social construction.
    """
    n = parent.shape[0]
    k = nn.shape[1]
    perm = np.empty(n, np.int32)
    visited = np.zeros(n, np.bool_)
    wbuf = np.empty(k, np.float64)
    cbuf = np.empty(k, np.int32)

    cur = np.int32(next_below(state, n))
    perm[0] = cur
    visited[cur] = True

    w_eff = clip_half_width(p_ind, w)
    p_c = p_ind + truncated_normal(state, sigma_c, w_eff)
    n_p = int(np.floor(p_c * n + 0.5))  # round half up

    l = 0
    for idx in range(n):
        if parent[idx] == cur:
            l = idx
            break

    for step in range(1, n):
        if step <= n_p:
            l += 1
            if l >= n:
                l = 0
            nxt = parent[l]
        else:
            nxt = pick_next_city(
                tau, heur, nn, visited, cur, alpha, state, wbuf, cbuf
            )
        perm[step] = nxt
        visited[nxt] = True
        cur = nxt
    return perm


# ---------------------------------------------------------------------------
# 3-opt local search


@njit(cache=True)
def reverse_segment(perm, pos, i, j):
    """Reverse tour positions i..j inclusive, walking forward cyclically."""
    n = perm.shape[0]
    count = j - i
    if count < 0:
        count += n
    count += 1
    a = i
    b = j
    for _ in range(count // 2):
        ca = perm[a]
        cb = perm[b]
        perm[a] = cb
        perm[b] = ca
        pos[cb] = a
        pos[ca] = b
        a += 1
        if a >= n:
            a = 0
        b -= 1
        if b < 0:
            b = n - 1


@njit(cache=True)
def _pairs_match(y1l, y1h, y2l, y2h, y3l, y3h, p1a, p1b, p2a, p2b, p3a, p3b):
    """Set equality of two triples of undirected edges (y pairs pre-sorted)."""
    if p1a > p1b:
        p1a, p1b = p1b, p1a
    if p2a > p2b:
        p2a, p2b = p2b, p2a
    if p3a > p3b:
        p3a, p3b = p3b, p3a
    for e in range(3):
        if e == 0:
            el, eh = y1l, y1h
        elif e == 1:
            el, eh = y2l, y2h
        else:
            el, eh = y3l, y3h
        if not (
            (el == p1a and eh == p1b)
            or (el == p2a and eh == p2b)
            or (el == p3a and eh == p3b)
        ):
            return False
    for e in range(3):
        if e == 0:
            el, eh = p1a, p1b
        elif e == 1:
            el, eh = p2a, p2b
        else:
            el, eh = p3a, p3b
        if not (
            (el == y1l and eh == y1h)
            or (el == y2l and eh == y2h)
            or (el == y3l and eh == y3h)
        ):
            return False
    return True


@njit(cache=True)
def _apply_three_exchange(perm, pos, dlb, c1, t2, dir1, t3, t4, dir2, t5, t6, dir3):
    """Realize the exchange that removes (c1,t2),(t3,t4),(t5,t6) and adds
    (t2,t3),(t4,t5),(t6,c1), if the six endpoints describe one.

    Cut positions are normalized so each removed edge is (perm[p], perm[p+1]);
    the added-edge set is then matched against the reconnection patterns a
    pure-reversal decomposition can realize, and applied as 1-3 segment
    reversals.  Returns True when a pattern matched and was applied.
    Candidates whose added-edge set matches no pattern (or that reuse a cut
    position) are rejected; overlaps between added and removed edges are
    harmless, they just realize the equivalent 2-exchange.
    """
    n = perm.shape[0]
    p1 = pos[c1] if dir1 == 0 else pos[t2]
    p2 = pos[t3] if dir2 == 0 else pos[t4]
    p3 = pos[t5] if dir3 == 0 else pos[t6]
    if p1 == p2 or p1 == p3 or p2 == p3:
        return False
    qa = min(p1, min(p2, p3))
    qc = max(p1, max(p2, p3))
    qb = p1 + p2 + p3 - qa - qc

    a = perm[qa]
    an = perm[qa + 1]
    b = perm[qb]
    bn = perm[qb + 1]
    c = perm[qc]
    cn = perm[0] if qc == n - 1 else perm[qc + 1]

    y1l, y1h = (t2, t3) if t2 < t3 else (t3, t2)
    y2l, y2h = (t4, t5) if t4 < t5 else (t5, t4)
    y3l, y3h = (t6, c1) if t6 < c1 else (c1, t6)

    if _pairs_match(y1l, y1h, y2l, y2h, y3l, y3h, a, b, an, c, bn, cn):
        reverse_segment(perm, pos, qa + 1, qb)
        reverse_segment(perm, pos, qb + 1, qc)
    elif _pairs_match(y1l, y1h, y2l, y2h, y3l, y3h, a, bn, an, c, b, cn):
        reverse_segment(perm, pos, qa + 1, qb)
        reverse_segment(perm, pos, qb + 1, qc)
        reverse_segment(perm, pos, qa + 1, qc)
    elif _pairs_match(y1l, y1h, y2l, y2h, y3l, y3h, a, bn, b, c, an, cn):
        reverse_segment(perm, pos, qb + 1, qc)
        reverse_segment(perm, pos, qa + 1, qc)
    elif _pairs_match(y1l, y1h, y2l, y2h, y3l, y3h, a, c, an, bn, b, cn):
        reverse_segment(perm, pos, qa + 1, qb)
        reverse_segment(perm, pos, qa + 1, qc)
    else:
        return False

    dlb[c1] = False
    dlb[t2] = False
    dlb[t3] = False
    dlb[t4] = False
    dlb[t5] = False
    dlb[t6] = False
    return True


@njit(cache=True)
def _improve_from(c1, perm, pos, d, nn, dlb):
    """First improving 2- or 3-exchange anchored at city c1; 0 if none.

    Candidate edges come from the sorted neighbor lists, pruned by the
    positive-partial-gain rule, and both tour directions are tried at
    every level, so any improving exchange whose added edges all lie in
    the candidate lists is reachable from one of its anchor rotations.
    """
    n = perm.shape[0]
    k = nn.shape[1]
    q1 = pos[c1]
    for dir1 in range(2):
        if dir1 == 0:
            t2 = perm[q1 + 1] if q1 + 1 < n else perm[0]
        else:
            t2 = perm[q1 - 1] if q1 > 0 else perm[n - 1]
        g0 = d[c1, t2]

        # 2-exchange: replace (c1,t2) and (c2,t2b) by (c1,c2) and (t2,t2b)
        for m in range(k):
            c2 = nn[c1, m]
            d12 = d[c1, c2]
            if d12 >= g0:
                break
            if c2 == t2:
                continue
            qc2 = pos[c2]
            if dir1 == 0:
                t2b = perm[qc2 + 1] if qc2 + 1 < n else perm[0]
            else:
                t2b = perm[qc2 - 1] if qc2 > 0 else perm[n - 1]
            if t2b == c1:
                continue
            gain = (g0 + d[c2, t2b]) - (d12 + d[t2, t2b])
            if gain > 0:
                if dir1 == 0:
                    pa = q1
                    pb = qc2
                else:
                    pa = pos[t2]
                    pb = pos[t2b]
                if pa > pb:
                    pa, pb = pb, pa
                inner = pb - pa
                if inner * 2 <= n:
                    reverse_segment(perm, pos, pa + 1, pb)
                else:
                    nxt = pb + 1
                    if nxt >= n:
                        nxt = 0
                    reverse_segment(perm, pos, nxt, pa)
                dlb[c1] = False
                dlb[t2] = False
                dlb[c2] = False
                dlb[t2b] = False
                return gain

        # 3-exchange, built outward while partial gains stay positive
        for m in range(k):
            t3 = nn[t2, m]
            g1 = g0 - d[t2, t3]
            if g1 <= 0:
                break
            if t3 == c1:
                continue
            q3 = pos[t3]
            for dir2 in range(2):
                if dir2 == 0:
                    t4 = perm[q3 + 1] if q3 + 1 < n else perm[0]
                else:
                    t4 = perm[q3 - 1] if q3 > 0 else perm[n - 1]
                g2 = g1 + d[t3, t4]
                for mm in range(k):
                    t5 = nn[t4, mm]
                    d45 = d[t4, t5]
                    if d45 >= g2:
                        break
                    if t5 == t3:
                        continue
                    q5 = pos[t5]
                    for dir3 in range(2):
                        if dir3 == 0:
                            t6 = perm[q5 + 1] if q5 + 1 < n else perm[0]
                        else:
                            t6 = perm[q5 - 1] if q5 > 0 else perm[n - 1]
                        if t6 == c1:
                            continue
                        gain = (g2 - d45) + (d[t5, t6] - d[t6, c1])
                        if gain > 0:
                            if _apply_three_exchange(
                                perm, pos, dlb,
                                c1, t2, dir1, t3, t4, dir2, t5, t6, dir3,
                            ):
                                return gain
    return np.int64(0)


@njit(cache=True)
def three_opt(perm, pos, d, nn, dlb):
    """Drive the tour to a local optimum of the 2-/3-exchange move set.

    First-improvement sweeps with don't-look bits do the bulk of the
    work; a final certification sweep ignores the bits so that on
    return no improving exchange reachable through the candidate lists
    remains anywhere.  Returns the total (positive) length reduction.
    perm/pos are updated in place; dlb is a scratch bool array.
    """
    n = perm.shape[0]
    total = np.int64(0)
    for i in range(n):
        dlb[i] = False
    improved_any = True
    while improved_any:
        improved_any = False
        for c1 in range(n):
            if dlb[c1]:
                continue
            found = False
            while True:
                g = _improve_from(c1, perm, pos, d, nn, dlb)
                if g > 0:
                    total += g
                    found = True
                else:
                    break
            dlb[c1] = True
            if found:
                improved_any = True
    while True:
        changed = False
        for c1 in range(n):
            while True:
                g = _improve_from(c1, perm, pos, d, nn, dlb)
                if g > 0:
                    total += g
                    changed = True
                else:
                    break
        if not changed:
            break
    return total

"""Compiled inner loops for live-edge reachability and marginal gains.

All kernels operate on one world's live-edge CSR (indptr over vertices,
flat destination array of live edges only).  Reached sets are uint8 masks.
Candidate loops share scratch arrays (`mark`, `stack`, buffers) and use an
ever-increasing int64 stamp instead of clearing `mark` between candidates.
"""

import numpy as np
from numba import njit


@njit(cache=True)
def reach_into_mask(indptr, dst, seeds, mask, stack):
    """Mark every vertex reachable from `seeds` via the live edges."""
    top = 0
    for i in range(len(seeds)):
        s = seeds[i]
        if mask[s] == 0:
            mask[s] = 1
            stack[top] = s
            top += 1
    while top > 0:
        top -= 1
        u = stack[top]
        for j in range(indptr[u], indptr[u + 1]):
            v = dst[j]
            if mask[v] == 0:
                mask[v] = 1
                stack[top] = v
                top += 1


@njit(cache=True)
def extend_mask(indptr, dst, mask, v, stack):
    """In-place reach extension by one extra seed (no-op if already reached)."""
    if mask[v] != 0:
        return
    mask[v] = 1
    stack[0] = v
    top = 1
    while top > 0:
        top -= 1
        u = stack[top]
        for j in range(indptr[u], indptr[u + 1]):
            w = dst[j]
            if mask[w] == 0:
                mask[w] = 1
                stack[top] = w
                top += 1


@njit(cache=True)
def balanced_count(r1, r2):
    """Number of vertices reached by both campaigns or by neither."""
    total = 0
    for i in range(len(r1)):
        if r1[i] == r2[i]:
            total += 1
    return total


@njit(cache=True)
def counts_abc(ri1, ri2, rs1, rs2):
    """The three balanced groups inside the initially-reached region:
    both initial reaches; initial-1 only rescued by the added seeds of 2;
    initial-2 only rescued by the added seeds of 1."""
    a = 0
    b = 0
    c = 0
    for i in range(len(ri1)):
        if ri1[i] != 0 and ri2[i] != 0:
            a += 1
        elif ri1[i] != 0 and rs2[i] != 0:
            b += 1
        elif ri2[i] != 0 and rs1[i] != 0:
            c += 1
    return a, b, c


@njit(cache=True)
def gain_phi_single(indptr, dst, r_self, r_other, cands, mark, stack, stamp0, out):
    """Accumulate, per candidate, the balanced-count change from adding the
    candidate to the campaign whose reach mask is `r_self`.

    Each newly reached vertex flips from balanced to imbalanced (-1) unless
    the other campaign already reaches it (+1).  Returns the next free stamp.
    """
    stamp = stamp0
    for ci in range(len(cands)):
        v = cands[ci]
        stamp += 1
        if r_self[v] != 0:
            continue
        delta = 0
        mark[v] = stamp
        stack[0] = v
        top = 1
        while top > 0:
            top -= 1
            u = stack[top]
            if r_other[u] != 0:
                delta += 1
            else:
                delta -= 1
            for j in range(indptr[u], indptr[u + 1]):
                w = dst[j]
                if r_self[w] == 0 and mark[w] != stamp:
                    mark[w] = stamp
                    stack[top] = w
                    top += 1
        out[ci] += delta
    return stamp


@njit(cache=True)
def gain_reach_single(indptr, dst, r_self, cands, mark, stack, stamp0, out):
    """Accumulate, per candidate, the number of newly reached vertices."""
    stamp = stamp0
    for ci in range(len(cands)):
        v = cands[ci]
        stamp += 1
        if r_self[v] != 0:
            continue
        delta = 0
        mark[v] = stamp
        stack[0] = v
        top = 1
        while top > 0:
            top -= 1
            u = stack[top]
            delta += 1
            for j in range(indptr[u], indptr[u + 1]):
                w = dst[j]
                if r_self[w] == 0 and mark[w] != stamp:
                    mark[w] = stamp
                    stack[top] = w
                    top += 1
        out[ci] += delta
    return stamp


@njit(cache=True)
def gain_omega_single(indptr, dst, r_s_self, ri_self, ri_other, cands, mark, stack, stamp0, out):
    """Accumulate the growth of the rescued group for each candidate seed:
    newly reached vertices that the opposing initial seeds reach exclusively."""
    stamp = stamp0
    for ci in range(len(cands)):
        v = cands[ci]
        stamp += 1
        if r_s_self[v] != 0:
            continue
        delta = 0
        mark[v] = stamp
        stack[0] = v
        top = 1
        while top > 0:
            top -= 1
            u = stack[top]
            if ri_other[u] != 0 and ri_self[u] == 0:
                delta += 1
            for j in range(indptr[u], indptr[u + 1]):
                w = dst[j]
                if r_s_self[w] == 0 and mark[w] != stamp:
                    mark[w] = stamp
                    stack[top] = w
                    top += 1
        out[ci] += delta
    return stamp


@njit(cache=True)
def _collect_new(indptr, dst, r, v, mark, stack, buf, stamp):
    """BFS from v skipping `r`; stamp and collect the newly reached vertices."""
    cnt = 0
    if r[v] != 0:
        return cnt
    mark[v] = stamp
    stack[0] = v
    top = 1
    while top > 0:
        top -= 1
        u = stack[top]
        buf[cnt] = u
        cnt += 1
        for j in range(indptr[u], indptr[u + 1]):
            w = dst[j]
            if r[w] == 0 and mark[w] != stamp:
                mark[w] = stamp
                stack[top] = w
                top += 1
    return cnt


@njit(cache=True)
def gain_phi_pair(indptr1, dst1, indptr2, dst2, r1, r2, v1, v2,
                  mark1, mark2, stack, buf1, buf2, stamp):
    """Balanced-count change from adding v1 to campaign 1 and v2 to campaign 2
    simultaneously (one world).  Pass v1 < 0 or v2 < 0 to skip that side."""
    n1 = 0
    n2 = 0
    if v1 >= 0:
        n1 = _collect_new(indptr1, dst1, r1, v1, mark1, stack, buf1, stamp)
    if v2 >= 0:
        n2 = _collect_new(indptr2, dst2, r2, v2, mark2, stack, buf2, stamp)
    delta = 0
    for i in range(n1):
        x = buf1[i]
        if r2[x] != 0:
            delta += 1            # was one-sided, now both
        elif mark2[x] == stamp:
            pass                  # newly reached by both, stays balanced
        else:
            delta -= 1            # newly one-sided
    for i in range(n2):
        x = buf2[i]
        if mark1[x] == stamp:
            continue              # handled above
        if r1[x] != 0:
            delta += 1
        else:
            delta -= 1
    return delta


@njit(cache=True)
def gain_phi_common(indptr1, dst1, indptr2, dst2, r1, r2, cands,
                    mark1, mark2, stack, buf1, buf2, stamp0, out):
    """Accumulate the balanced-count change of adding each candidate as a
    shared seed of both campaigns."""
    stamp = stamp0
    for ci in range(len(cands)):
        v = cands[ci]
        stamp += 1
        out[ci] += gain_phi_pair(indptr1, dst1, indptr2, dst2, r1, r2, v, v,
                                 mark1, mark2, stack, buf1, buf2, stamp)
    return stamp


@njit(cache=True)
def world_breakdown(indptr1, dst1, indptr2, dst2, n, i1, i2, s1, s2):
    """Per-world objective pieces for one seed assignment.

    Returns (balanced, a, b, c): the balanced-vertex count for the combined
    seed sets, and the three balanced groups within the initially-reached
    region (see `counts_abc`).
    """
    r1 = np.zeros(n, dtype=np.uint8)
    r2 = np.zeros(n, dtype=np.uint8)
    ri1 = np.zeros(n, dtype=np.uint8)
    ri2 = np.zeros(n, dtype=np.uint8)
    rs1 = np.zeros(n, dtype=np.uint8)
    rs2 = np.zeros(n, dtype=np.uint8)
    stack = np.empty(n, dtype=np.int32)
    reach_into_mask(indptr1, dst1, i1, ri1, stack)
    reach_into_mask(indptr2, dst2, i2, ri2, stack)
    reach_into_mask(indptr1, dst1, s1, rs1, stack)
    reach_into_mask(indptr2, dst2, s2, rs2, stack)
    for i in range(n):
        r1[i] = 1 if (ri1[i] != 0 or rs1[i] != 0) else 0
        r2[i] = 1 if (ri2[i] != 0 or rs2[i] != 0) else 0
    phi = balanced_count(r1, r2)
    a, b, c = counts_abc(ri1, ri2, rs1, rs2)
    return phi, a, b, c

"""Hot loops: closures, matchings and the resumable depth-first searches.

Every search kernel is an explicit-stack DFS whose whole state lives in
caller-owned arrays, so it can stop after ``node_limit`` nodes and be
resumed by calling it again with the same arrays. The driver in
:func:`run_search` uses that to poll the wall clock between chunks.

Status codes returned by the step kernels: ``EXHAUSTED`` (no solution),
``FOUND`` (state arrays hold a solution), ``PAUSED`` (node limit hit).
"""
from __future__ import annotations

import numpy as np

from ._jit import kernel

EXHAUSTED = 0
FOUND = 1
PAUSED = 2


@kernel
def reflexive_transitive_closure(adj):
    n = adj.shape[0]
    r = adj.copy()
    for i in range(n):
        r[i, i] = True
    for k in range(n):
        for i in range(n):
            if r[i, k]:
                r[i, :] |= r[k, :]
    return r


@kernel
def max_bipartite_matching(adj):
    """Size of a maximum matching; ``adj[u, v]`` links left ``u`` to right ``v``."""
    n_left, n_right = adj.shape
    match_l = np.full(n_left, -1, np.int64)
    match_r = np.full(n_right, -1, np.int64)
    queue = np.empty(n_left, np.int64)
    parent = np.empty(n_right, np.int64)
    size = 0
    for u in range(n_left):
        parent[:] = -1
        queue[0] = u
        head, tail = 0, 1
        found = -1
        while head < tail and found < 0:
            x = queue[head]
            head += 1
            for v in np.nonzero(adj[x] & (parent < 0))[0]:
                parent[v] = x
                if match_r[v] < 0:
                    found = v
                    break
                queue[tail] = match_r[v]
                tail += 1
        if found >= 0:
            v = found
            while v >= 0:
                x = parent[v]
                nxt = match_l[x]
                match_l[x] = v
                match_r[v] = x
                v = nxt
            size += 1
    return size


@kernel
def _is_breadth_witness(up, elems, s):
    # elems[:s] pairwise incomparable is implied when this returns True
    n = up.shape[0]
    for i in range(s):
        acc = np.ones(n, np.bool_)
        for j in range(s):
            if j != i:
                acc &= up[elems[j]]
        if not np.any(acc & ~up[elems[i]]):
            return False
    return True


@kernel
def breadth_step(up, cand, k, sel, state, node_limit):
    """Look for ``k`` candidates forming a breadth witness.

    A set X is a witness when, for each x in X, some element lies above
    every other member of X but not above x. Witnesses are closed under
    subsets, so only extensions of witnesses are explored. ``sel[d]`` is an
    index into ``cand``; ``state = [depth, nodes]``.
    """
    c = cand.shape[0]
    d = state[0]
    nodes = state[1]
    elems = np.empty(k, np.int64)
    for i in range(d):
        elems[i] = cand[sel[i]]
    while True:
        if nodes >= node_limit:
            state[0] = d
            state[1] = nodes
            return PAUSED
        if sel[d] > c - (k - d):
            d -= 1
            if d < 0:
                state[0] = 0
                state[1] = nodes
                return EXHAUSTED
            sel[d] += 1
            continue
        nodes += 1
        x = cand[sel[d]]
        ok = True
        for j in range(d):
            if up[elems[j], x] or up[x, elems[j]]:
                ok = False
                break
        if ok:
            elems[d] = x
            ok = _is_breadth_witness(up, elems, d + 1)
        if not ok:
            sel[d] += 1
            continue
        if d + 1 == k:
            state[0] = d
            state[1] = nodes
            return FOUND
        d += 1
        sel[d] = sel[d - 1] + 1


@kernel
def color_step(pa, pb, t, R, choice, used, assign, state, node_limit):
    """Distribute ordered pairs over ``t`` linear extensions.

    Pair ``(pa[i], pb[i])`` asks for an extension placing ``pb[i]`` below
    ``pa[i]``. ``R[d, c]`` is the reflexive-transitive closure of bucket
    ``c`` after the first ``d`` pairs are placed; a pair fits bucket ``c``
    iff ``pa`` is not already forced below ``pb`` there. Buckets are
    interchangeable, so pair ``d`` may open at most one new bucket.
    """
    K = pa.shape[0]
    d = state[0]
    nodes = state[1]
    while True:
        if d == K:
            state[0] = d
            state[1] = nodes
            return FOUND
        if nodes >= node_limit:
            state[0] = d
            state[1] = nodes
            return PAUSED
        c = choice[d]
        top = used[d]
        if top > t - 1:
            top = t - 1
        if c > top:
            d -= 1
            if d < 0:
                state[0] = 0
                state[1] = nodes
                return EXHAUSTED
            choice[d] += 1
            continue
        nodes += 1
        a = pa[d]
        b = pb[d]
        if R[d, c, a, b]:
            choice[d] += 1
            continue
        R[d + 1] = R[d]
        rc = R[d + 1, c]
        above_a = rc[a].copy()
        for x in np.nonzero(rc[:, b])[0]:
            rc[x] |= above_a
        nused = used[d]
        if c + 1 > nused:
            nused = c + 1
        ok = True
        if nused >= t:
            for j in range(d + 1, K):
                fits = False
                for c2 in range(t):
                    if not R[d + 1, c2, pa[j], pb[j]]:
                        fits = True
                        break
                if not fits:
                    ok = False
                    break
        if not ok:
            choice[d] += 1
            continue
        assign[d] = c
        used[d + 1] = nused
        d += 1
        if d < K:
            choice[d] = 0


@kernel
def cover_step(masks, cov_ptr, cov_idx, block, max_sets, covered, req, opt, chosen, state, node_limit):
    """Exact set cover with at most ``max_sets`` members; member 0 is fixed.

    ``masks[s, q]`` says set ``s`` covers requirement ``q``; requirements
    come in consecutive blocks of ``block`` that no single set can cover
    twice, which gives the lower bound used for pruning. ``opt[d] < 0``
    marks a level that has not been expanded yet.
    """
    nreq = masks.shape[1]
    d = state[0]
    nodes = state[1]
    while True:
        if nodes >= node_limit:
            state[0] = d
            state[1] = nodes
            return PAUSED
        go_up = False
        if opt[d] < 0:
            nodes += 1
            first = -1
            for q in range(nreq):
                if not covered[d, q]:
                    first = q
                    break
            if first < 0:
                state[0] = d
                state[1] = nodes
                return FOUND
            need = 0
            for start in range(0, nreq, block):
                miss = 0
                for q in range(start, start + block):
                    if not covered[d, q]:
                        miss += 1
                if miss > need:
                    need = miss
            if d + need > max_sets:
                go_up = True
            else:
                req[d] = first
                opt[d] = cov_ptr[first]
        if not go_up:
            r = req[d]
            if opt[d] >= cov_ptr[r + 1]:
                go_up = True
        if go_up:
            d -= 1
            if d < 1:
                state[0] = 1
                state[1] = nodes
                return EXHAUSTED
            continue
        s = cov_idx[opt[d]]
        opt[d] += 1
        covered[d + 1] = covered[d] | masks[s]
        chosen[d] = s
        d += 1
        opt[d] = -1


@kernel
def embed_step(le_p, le_q, order, img, choice, used, state, node_limit):
    """Backtracking order-embedding of P into Q.

    ``order`` lists P's elements (a linear extension); ``img[i]`` is the
    image of ``order[i]``. A candidate must agree with every earlier
    assignment on comparability in both directions.
    """
    np_ = order.shape[0]
    nq = le_q.shape[0]
    d = state[0]
    nodes = state[1]
    while True:
        if d == np_:
            state[0] = d
            state[1] = nodes
            return FOUND
        if nodes >= node_limit:
            state[0] = d
            state[1] = nodes
            return PAUSED
        q = choice[d]
        if q >= nq:
            d -= 1
            if d < 0:
                state[0] = 0
                state[1] = nodes
                return EXHAUSTED
            used[img[d]] = False
            choice[d] += 1
            continue
        nodes += 1
        if used[q]:
            choice[d] += 1
            continue
        x = order[d]
        prev = order[:d]
        fprev = img[:d]
        if np.all(le_p[x][prev] == le_q[q][fprev]) and np.all(le_p[prev, x] == le_q[fprev, q]):
            img[d] = q
            used[q] = True
            d += 1
            if d < np_:
                choice[d] = 0
        else:
            choice[d] += 1


CHUNK = 200_000


def run_search(step, args, state, budget, chunk=CHUNK):
    """Drive a step kernel until it finishes or ``budget`` runs dry.

    Returns the kernel's final status; ``PAUSED`` means the budget expired.
    Nodes are charged to ``budget`` as they are spent.
    """
    while True:
        if budget.expired():
            return PAUSED
        limit = chunk
        remaining = budget.remaining_nodes()
        if remaining is not None:
            limit = min(limit, remaining)
        before = int(state[1])
        status = step(*args, state, np.int64(before + limit))
        budget.charge(int(state[1]) - before)
        if status != PAUSED:
            return status

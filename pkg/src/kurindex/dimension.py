"""Order-dimension by realizer search, and Dushnik's suitable-set number.

The dimension search works on critical pairs: ``(a, b)`` incomparable with
everything strictly below ``a`` also below ``b`` and everything strictly
above ``b`` also above ``a``. A family of linear extensions is a realizer
iff each critical pair is reversed (``b`` placed under ``a``) by one of
them, so ``dim(P)`` is the least number of buckets the critical pairs can
be split into with every bucket reversible by a single extension.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations, permutations
from typing import Sequence

import numpy as np

from . import kernels
from .budget import Budget, ensure
from .errors import BudgetExceeded, InvalidArgs
from .poset import Poset, join_irreducibles, linear_extension, subposet, width

LinearExtension = list
Realizer = list


@dataclass
class DimResult:
    value: int
    realizer: list[list[int]]
    lower: int
    nodes: int = 0

    def as_dict(self) -> dict:
        return {"value": self.value, "realizer": self.realizer, "nodes": self.nodes}


def critical_pairs(P: Poset) -> list[tuple[int, int]]:
    lt = P.lt
    comp = P.comparable()
    out = []
    for a in range(P.n):
        for b in range(P.n):
            if comp[a, b]:
                continue
            if (lt[:, a] & ~lt[:, b]).any():
                continue
            if (lt[b, :] & ~lt[a, :]).any():
                continue
            out.append((a, b))
    return out


def incomparable_pairs(P: Poset) -> list[tuple[int, int]]:
    comp = P.comparable()
    return [(a, b) for a in range(P.n) for b in range(P.n) if not comp[a, b]]


def _conflicts(P: Poset, pairs) -> np.ndarray:
    a = np.array([p[0] for p in pairs], dtype=np.int64)
    b = np.array([p[1] for p in pairs], dtype=np.int64)
    # b_i < a_i and b_j < a_j together close a cycle iff a_i <= b_j and a_j <= b_i
    x = P.le[np.ix_(a, b)]
    c = x & x.T
    np.fill_diagonal(c, False)
    return c


def _greedy_clique(conf: np.ndarray) -> int:
    order = np.argsort(-conf.sum(axis=1), kind="stable")
    clique: list[int] = []
    for i in order:
        if all(conf[i, j] for j in clique):
            clique.append(int(i))
    return len(clique)


def _add_reversal(R: np.ndarray, a: int, b: int) -> None:
    R[R[:, b]] |= R[a]


def _extension_from_closure(R: np.ndarray) -> list[int]:
    preds = R.sum(axis=0)
    return sorted(range(R.shape[0]), key=lambda i: (int(preds[i]), i))


def _greedy_realizer(P: Poset, pairs) -> list[list[int]]:
    buckets: list[np.ndarray] = []
    for a, b in pairs:
        for R in buckets:
            if not R[a, b]:
                _add_reversal(R, a, b)
                break
        else:
            R = P.le.copy()
            _add_reversal(R, a, b)
            buckets.append(R)
    exts = [_extension_from_closure(R) for R in buckets]
    while len(exts) < 2:
        exts.append(linear_extension(P))
    return exts


def is_linear_extension(P: Poset, L: Sequence[int]) -> bool:
    if sorted(L) != list(range(P.n)):
        return False
    pos = np.empty(P.n, dtype=np.int64)
    pos[list(L)] = np.arange(P.n)
    return bool((pos[:, None] <= pos[None, :])[P.le].all())


def is_realizer(P: Poset, R: Sequence[Sequence[int]]) -> bool:
    if not R or not all(is_linear_extension(P, L) for L in R):
        return False
    inter = np.ones((P.n, P.n), dtype=bool)
    for L in R:
        pos = np.empty(P.n, dtype=np.int64)
        pos[list(L)] = np.arange(P.n)
        inter &= pos[:, None] <= pos[None, :]
    return bool(np.array_equal(inter, P.le))


def dim_exact(P: Poset, budget: Budget | None = None, *, lower: int | None = None,
              pairs: str = "critical") -> DimResult:
    """Least size of a realizer of ``P`` together with one such realizer.

    ``pairs="all"`` colours every incomparable ordered pair instead of the
    critical ones (slower; used to cross-check the reduction). ``lower`` is
    a caller-certified lower bound. On budget exhaustion raises
    :class:`BudgetExceeded` carrying the certified interval and the best
    realizer found.
    """
    budget = ensure(budget)
    if P.is_chain():
        return DimResult(1, [linear_extension(P)], 1)
    prs = critical_pairs(P) if pairs == "critical" else incomparable_pairs(P)
    conf = _conflicts(P, prs)
    deg = conf.sum(axis=1)
    order = sorted(range(len(prs)), key=lambda i: (-int(deg[i]), prs[i]))
    prs = [prs[i] for i in order]
    conf = conf[np.ix_(order, order)]

    best = _greedy_realizer(P, prs)
    ub = len(best)
    lb = max(2, _greedy_clique(conf), lower or 0)
    nodes0 = budget.nodes_used
    K = len(prs)
    pa = np.array([p[0] for p in prs], dtype=np.int64)
    pb = np.array([p[1] for p in prs], dtype=np.int64)
    for t in range(lb, ub):
        R = np.empty((K + 1, t, P.n, P.n), dtype=bool)
        R[0] = P.le
        choice = np.zeros(K + 1, dtype=np.int64)
        used = np.zeros(K + 1, dtype=np.int64)
        assign = np.zeros(K, dtype=np.int64)
        state = np.zeros(2, dtype=np.int64)
        status = kernels.run_search(kernels.color_step, (pa, pb, np.int64(t), R, choice, used, assign), state, budget)
        if status == kernels.PAUSED:
            raise BudgetExceeded("dim", lower=t, upper=ub, witness=best)
        if status == kernels.FOUND:
            exts = [_extension_from_closure(R[K, c]) for c in range(t)]
            assert is_realizer(P, exts), "colouring did not yield a realizer"
            return DimResult(t, exts, t, budget.nodes_used - nodes0)
    assert is_realizer(P, best)
    return DimResult(ub, best, ub, budget.nodes_used - nodes0)


def dim_upper_width(P: Poset) -> int:
    """Width of the join-irreducibles, an upper bound on ``dim(P)``.

    A one-element poset has no join-irreducibles; it still needs one linear
    extension, so 1 is returned there.
    """
    J = join_irreducibles(P)
    if not J:
        return 1
    return width(subposet(P, J))


@dataclass
class SuitableFamily:
    m: int
    r: int
    orders: list[tuple[int, ...]] = field(default_factory=list)

    def is_valid(self) -> bool:
        return is_suitable(self.m, self.r, self.orders)


def is_suitable(m: int, r: int, orders: Sequence[Sequence[int]]) -> bool:
    """Each ``a`` of each ``r``-subset ``A`` is the top of ``A`` in some order.

    Orders list elements bottom to top.
    """
    pos = []
    for S in orders:
        if sorted(S) != list(range(m)):
            return False
        p = [0] * m
        for i, x in enumerate(S):
            p[x] = i
        pos.append(p)
    for A in combinations(range(m), r):
        for a in A:
            if not any(all(p[x] <= p[a] for x in A) for p in pos):
                return False
    return True


def n_suitable_exact(m: int, r: int, budget: Budget | None = None, *, max_m: int = 6) -> tuple[int, SuitableFamily]:
    """Dushnik's ``N(m, r)`` with a witnessing family.

    Set cover over all ``m!`` orderings; relabelling the ground set lets
    one member be the identity.
    """
    if not 1 <= r <= m:
        raise InvalidArgs(f"need 1 <= r <= m, got m={m}, r={r}")
    if m > max_m:
        raise InvalidArgs(f"m={m} exceeds the exhaustive-search limit {max_m}")
    budget = ensure(budget)
    perms = list(permutations(range(m)))
    reqs = [(A, a) for A in combinations(range(m), r) for a in A]
    masks = np.zeros((len(perms), len(reqs)), dtype=bool)
    for s, S in enumerate(perms):
        rank = [0] * m
        for i, x in enumerate(S):
            rank[x] = i
        for q, (A, a) in enumerate(reqs):
            masks[s, q] = max(A, key=rank.__getitem__) == a
    cov_lists = [np.nonzero(masks[:, q])[0] for q in range(len(reqs))]
    cov_ptr = np.zeros(len(reqs) + 1, dtype=np.int64)
    cov_ptr[1:] = np.cumsum([len(c) for c in cov_lists])
    cov_idx = np.concatenate(cov_lists).astype(np.int64)

    # one ordering per element with that element on top always works
    fallback = [tuple([x for x in range(m) if x != a] + [a]) for a in range(m)]
    for N in range(r, m):
        covered = np.zeros((N + 2, len(reqs)), dtype=bool)
        covered[1] = masks[0]
        req = np.zeros(N + 2, dtype=np.int64)
        opt = np.full(N + 2, -1, dtype=np.int64)
        chosen = np.zeros(N + 2, dtype=np.int64)
        state = np.array([1, 0], dtype=np.int64)
        args = (masks, cov_ptr, cov_idx, np.int64(r), np.int64(N), covered, req, opt, chosen)
        status = kernels.run_search(kernels.cover_step, args, state, budget)
        if status == kernels.PAUSED:
            raise BudgetExceeded("N(m,r)", lower=N, upper=m, witness=SuitableFamily(m, r, fallback))
        if status == kernels.FOUND:
            k = int(state[0])
            fam = SuitableFamily(m, r, [perms[int(s)] for s in chosen[:k]])
            assert fam.is_valid()
            return len(fam.orders), fam
    fam = SuitableFamily(m, r, fallback)
    assert fam.is_valid()
    return m, fam


@dataclass
class SuitableReport:
    m: int
    r: int
    dim: int
    n_suitable: int

    @property
    def equal(self) -> bool:
        return self.dim == self.n_suitable


def check_dim_equals_suitable(m: int, r: int, budget: Budget | None = None) -> SuitableReport:
    """``dim B_m(1,r)`` by realizer search against ``N(m, r+1)`` by set cover."""
    from .cubes import build_cube, one_and_r

    if not 1 < r < m:
        raise InvalidArgs(f"need 1 < r < m, got m={m}, r={r}")
    d = dim_exact(build_cube(one_and_r(m, r)), budget).value
    nval, _ = n_suitable_exact(m, r + 1, budget)
    return SuitableReport(m, r, d, nval)

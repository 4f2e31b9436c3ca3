"""Finite posets on ``0..n-1`` and the order-theoretic primitives.

A :class:`Poset` stores its order as a read-only boolean matrix,
``le[i, j]`` being true iff ``i <= j``. Element sets are returned as
``frozenset`` of indices.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Any, Iterable, Sequence

import numpy as np

from . import kernels
from .budget import Budget, ensure
from .errors import (
    BudgetExceeded,
    CapacityExceeded,
    CycleDetected,
    IndexOutOfRange,
    KurIndexError,
    NotJoinSemilattice,
)

MAX_ELEMENTS = 128

ElementSet = frozenset


@dataclass(frozen=True, eq=False)
class Poset:
    le: np.ndarray
    labels: tuple[str, ...] | None = None
    # set by the cube constructors so the kur engine can apply known values
    cube: Any = field(default=None, compare=False)

    @property
    def n(self) -> int:
        return self.le.shape[0]

    def __len__(self) -> int:
        return self.n

    def __eq__(self, other):
        return isinstance(other, Poset) and np.array_equal(self.le, other.le)

    def __hash__(self):
        return hash(self.le.tobytes())

    def __repr__(self):
        return f"Poset(n={self.n}, covers={self.covers()})"

    def label(self, i: int) -> str:
        return self.labels[i] if self.labels is not None else str(i)

    @property
    def lt(self) -> np.ndarray:
        return self.le & ~np.eye(self.n, dtype=bool)

    def comparable(self) -> np.ndarray:
        return self.le | self.le.T

    def covers(self) -> list[tuple[int, int]]:
        lt = self.lt
        between = (lt.astype(np.int64) @ lt.astype(np.int64)) > 0
        cov = lt & ~between
        return [(int(i), int(j)) for i, j in zip(*np.nonzero(cov))]

    def least(self) -> int | None:
        rows = np.nonzero(self.le.all(axis=1))[0]
        return int(rows[0]) if len(rows) else None

    def greatest(self) -> int | None:
        cols = np.nonzero(self.le.all(axis=0))[0]
        return int(cols[0]) if len(cols) else None

    def maximal(self) -> list[int]:
        return [int(i) for i in np.nonzero(self.lt.sum(axis=1) == 0)[0]]

    def is_chain(self) -> bool:
        return bool(self.comparable().all())

    def lub(self, xs: Iterable[int]) -> int | None:
        """Least upper bound of ``xs`` in this poset, or None."""
        ub = np.ones(self.n, dtype=bool)
        for x in xs:
            ub &= self.le[x]
        cand = np.nonzero(ub)[0]
        for u in cand:
            if self.le[u, cand].all():
                return int(u)
        return None

    def glb(self, xs: Iterable[int]) -> int | None:
        lb = np.ones(self.n, dtype=bool)
        for x in xs:
            lb &= self.le[:, x]
        cand = np.nonzero(lb)[0]
        for u in cand:
            if self.le[cand, u].all():
                return int(u)
        return None

    def join(self, a: int, b: int) -> int:
        j = self.lub((a, b))
        if j is None:
            raise NotJoinSemilattice(f"{self.label(a)} and {self.label(b)} have no join")
        return j

    def bottom(self) -> int:
        z = self.least()
        if z is None:
            raise NotJoinSemilattice("no least element")
        return z


def _check_capacity(n: int, cap: int) -> None:
    if n > cap:
        raise CapacityExceeded(f"{n} elements exceeds the cap of {cap}")


def _find_cycle(n: int, edges: Sequence[tuple[int, int]]) -> list[int] | None:
    succ: list[list[int]] = [[] for _ in range(n)]
    for i, j in edges:
        succ[i].append(j)
    color = [0] * n
    parent = [-1] * n
    for s in range(n):
        if color[s]:
            continue
        stack = [(s, iter(succ[s]))]
        color[s] = 1
        while stack:
            v, it = stack[-1]
            w = next(it, None)
            if w is None:
                color[v] = 2
                stack.pop()
            elif color[w] == 0:
                color[w] = 1
                parent[w] = v
                stack.append((w, iter(succ[w])))
            elif color[w] == 1:
                path = [v]
                while path[-1] != w:
                    path.append(parent[path[-1]])
                path.reverse()
                return path + [w]
    return None


def from_le(le, labels=None, cube=None, *, cap: int = MAX_ELEMENTS, validate: bool = True) -> Poset:
    le = np.array(le, dtype=bool)
    n = le.shape[0]
    if le.shape != (n, n):
        raise ValueError(f"relation matrix must be square, got {le.shape}")
    if n == 0:
        raise KurIndexError("posets are nonempty")
    _check_capacity(n, cap)
    if validate:
        if not le.diagonal().all():
            raise ValueError("relation is not reflexive")
        if (le & le.T & ~np.eye(n, dtype=bool)).any():
            raise ValueError("relation is not antisymmetric")
        if not np.array_equal(kernels.reflexive_transitive_closure(le), le):
            raise ValueError("relation is not transitive")
    le.setflags(write=False)
    if labels is not None:
        labels = tuple(str(x) for x in labels)
        if len(labels) != n:
            raise ValueError("one label per element")
    return Poset(le, labels, cube)


def poset_from_covers(n: int, covers: Iterable[tuple[int, int]], labels=None, *, cap: int = MAX_ELEMENTS) -> Poset:
    """Reflexive-transitive closure of the pairs ``i < j`` in ``covers``."""
    covers = [(int(i), int(j)) for i, j in covers]
    if n <= 0:
        raise KurIndexError("posets are nonempty")
    _check_capacity(n, cap)
    for i, j in covers:
        if not (0 <= i < n and 0 <= j < n):
            raise IndexOutOfRange(f"pair ({i},{j}) out of range for n={n}")
    cyc = _find_cycle(n, covers)
    if cyc is not None:
        raise CycleDetected(cyc)
    adj = np.zeros((n, n), dtype=bool)
    for i, j in covers:
        adj[i, j] = True
    return from_le(kernels.reflexive_transitive_closure(adj), labels, cap=cap, validate=False)


def chain(n: int) -> Poset:
    return poset_from_covers(n, [(i, i + 1) for i in range(n - 1)])


def antichain(n: int) -> Poset:
    return poset_from_covers(n, [])


def powerset(k: int) -> Poset:
    """Subsets of ``{0..k-1}`` under inclusion, indexed by bitmask."""
    size = 1 << k
    masks = np.arange(size)
    le = (masks[:, None] & ~masks[None, :]) == 0
    labels = ["{" + ",".join(str(b) for b in range(k) if m >> b & 1) + "}" for m in range(size)]
    return from_le(le, labels, validate=False)


def _check(P: Poset, a: int) -> None:
    if not 0 <= a < P.n:
        raise IndexOutOfRange(f"element {a} out of range for n={P.n}")


def downset(P: Poset, a: int) -> ElementSet:
    _check(P, a)
    return frozenset(int(i) for i in np.nonzero(P.le[:, a])[0])


def strict_downset(P: Poset, a: int) -> ElementSet:
    return downset(P, a) - {a}


def upset(P: Poset, a: int) -> ElementSet:
    _check(P, a)
    return frozenset(int(i) for i in np.nonzero(P.le[a])[0])


def subposet(P: Poset, elems: Iterable[int]) -> Poset:
    idx = sorted(set(int(e) for e in elems))
    for e in idx:
        _check(P, e)
    labels = [P.label(i) for i in idx] if P.labels is not None else [str(i) for i in idx]
    return from_le(P.le[np.ix_(idx, idx)], labels, validate=False)


def join_irreducibles(P: Poset) -> ElementSet:
    """Elements that are not the join of any finite set of other elements.

    If some ``X`` avoiding ``p`` has least upper bound ``p`` then ``X`` lies
    strictly below ``p`` and the whole strict down-set of ``p`` also has
    least upper bound ``p`` (its upper bounds are among those of ``X`` and
    include ``p``). So the test reduces to one least-upper-bound check per
    element, which also covers the empty join of a least element.
    """
    out = []
    for p in range(P.n):
        below = np.nonzero(P.lt[:, p])[0]
        if P.lub(below) != p:
            out.append(p)
    return frozenset(out)


def jp(P: Poset, a: int) -> ElementSet:
    return join_irreducibles(P) & downset(P, a)


def is_antichain(P: Poset) -> bool:
    return not P.lt.any()


def is_tree(P: Poset) -> bool:
    if P.least() is None:
        return False
    comp = P.comparable()
    for a in range(P.n):
        d = np.nonzero(P.le[:, a])[0]
        if not comp[np.ix_(d, d)].all():
            return False
    return True


def width(P: Poset) -> int:
    """Maximum antichain size: ``n`` minus a maximum matching of ``<`` (Dilworth)."""
    return P.n - int(kernels.max_bipartite_matching(np.ascontiguousarray(P.lt)))


def breadth(P: Poset, budget: Budget | None = None) -> int:
    """Least ``b`` such that ``x_i <= y_j`` for all ``i != j`` in ``0..b``
    forces some ``x_i <= y_i``.

    A violating system for ``b`` exists iff there is a ``(b+1)``-set X where
    every ``x`` has some element above the rest of X but not above ``x``;
    the ``y``'s can then be picked independently. Candidate sizes are tried
    upward. The one-element poset gets breadth 1.
    """
    budget = ensure(budget)
    z = P.least()
    cand = np.array([i for i in range(P.n) if i != z], dtype=np.int64)
    up = np.ascontiguousarray(P.le)
    best = 1
    k = 2
    while k <= len(cand):
        sel = np.zeros(k, dtype=np.int64)
        state = np.zeros(2, dtype=np.int64)
        status = kernels.run_search(kernels.breadth_step, (up, cand, np.int64(k), sel), state, budget)
        if status == kernels.PAUSED:
            raise BudgetExceeded("breadth", lower=best, upper=None)
        if status == kernels.EXHAUSTED:
            break
        best = k
        k += 1
    return best


def is_join_semilattice(P: Poset) -> bool:
    return all(P.lub((a, b)) is not None for a, b in combinations(range(P.n), 2))


def join_table(P: Poset) -> np.ndarray:
    n = P.n
    tab = np.empty((n, n), dtype=np.int64)
    for a in range(n):
        for b in range(a, n):
            j = P.lub((a, b))
            if j is None:
                raise NotJoinSemilattice(f"{P.label(a)} and {P.label(b)} have no join")
            tab[a, b] = tab[b, a] = j
    return tab


def breadth_join(P: Poset) -> int:
    """Breadth of a join-semilattice: least ``b`` such that every
    ``(b+1)``-subset has the join of one of its ``b``-subsets."""
    tab = join_table(P)

    def join_of(xs):
        it = iter(xs)
        acc = next(it)
        for x in it:
            acc = tab[acc, x]
        return acc

    b = 1
    while b + 1 <= P.n:
        bad = False
        for X in combinations(range(P.n), b + 1):
            jx = join_of(X)
            if all(join_of(X[:i] + X[i + 1:]) != jx for i in range(b + 1)):
                bad = True
                break
        if not bad:
            return b
        b += 1
    return b


def product(P: Poset, Q: Poset) -> Poset:
    """Componentwise order on ``P x Q``; element ``(p, q)`` has index ``p*|Q| + q``."""
    le = np.kron(P.le.astype(np.int8), Q.le.astype(np.int8)).astype(bool)
    labels = [f"({P.label(p)},{Q.label(q)})" for p in range(P.n) for q in range(Q.n)]
    return from_le(le, labels, validate=False)


def is_embedding(P: Poset, Q: Poset, f: Sequence[int]) -> bool:
    f = np.asarray(f, dtype=np.int64)
    if f.shape != (P.n,) or len(set(f.tolist())) != P.n:
        return False
    if f.min() < 0 or f.max() >= Q.n:
        return False
    return bool(np.array_equal(P.le, Q.le[np.ix_(f, f)]))


def linear_extension(P: Poset) -> list[int]:
    """Deterministic linear extension: by number of predecessors, then index."""
    preds = P.le.sum(axis=0)
    return sorted(range(P.n), key=lambda i: (int(preds[i]), i))


def embeds(P: Poset, Q: Poset, budget: Budget | None = None) -> list[int] | None:
    """An order-embedding ``f`` of P into Q (``f[x]`` is the image of x), or None."""
    budget = ensure(budget)
    if P.n > Q.n:
        return None
    order = np.array(linear_extension(P), dtype=np.int64)
    img = np.zeros(P.n, dtype=np.int64)
    choice = np.zeros(P.n, dtype=np.int64)
    used = np.zeros(Q.n, dtype=bool)
    state = np.zeros(2, dtype=np.int64)
    args = (np.ascontiguousarray(P.le), np.ascontiguousarray(Q.le), order, img, choice, used)
    status = kernels.run_search(kernels.embed_step, args, state, budget)
    if status == kernels.PAUSED:
        raise BudgetExceeded("embeds")
    if status == kernels.EXHAUSTED:
        return None
    f = [0] * P.n
    for i, x in enumerate(order):
        f[int(x)] = int(img[i])
    assert is_embedding(P, Q, f)
    return f

"""Finite set mappings, free sets, and the poset-indexed freeness condition.

Subsets of the ground set ``{0..N-1}`` are bitmasks. A :class:`SetMapping`
of order ``r`` assigns a value to (some of) the subsets with at most ``r``
elements; missing keys map to the empty set.

Searches that evaluate a mapping on larger arguments (the poset
conditions, the six-element configurations) use the isotone closure
``X -> union of F(Y) over Y subset of X``, which is also what makes a
configuration of the second kind automatically one of the first kind.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Iterator

import numpy as np

from .budget import Budget, ensure
from .cubes import fmt_set, mask_of, members, popcount
from .errors import BudgetExceeded, InvalidArgs, ParseError
from .poset import Poset, downset, join_irreducibles, jp, linear_extension

_POLL = 1024


def subsets_upto(mask: int, r: int) -> Iterator[int]:
    """Subsets of ``mask`` with at most ``r`` elements, empty set first."""
    elems = members(mask)
    for k in range(min(r, len(elems)) + 1):
        for c in combinations(elems, k):
            yield mask_of(c)


@dataclass
class SetMapping:
    ground: int
    order: int
    table: dict[int, int] = field(default_factory=dict)

    def __post_init__(self):
        if self.ground < 0 or self.order < 0:
            raise InvalidArgs("ground and order must be non-negative")
        full = (1 << self.ground) - 1
        clean = {}
        for k, v in self.table.items():
            k, v = int(k), int(v)
            if k & ~full or v & ~full:
                raise InvalidArgs(f"{fmt_set(k)} -> {fmt_set(v)} leaves the ground set")
            if popcount(k) > self.order:
                raise InvalidArgs(f"argument {fmt_set(k)} exceeds order {self.order}")
            if v:
                clean[k] = v
        self.table = clean
        self._memo: dict[int, int] = {}

    @property
    def full(self) -> int:
        return (1 << self.ground) - 1

    def __call__(self, X: int) -> int:
        return self.table.get(X, 0)

    def closure(self, X: int) -> int:
        """Union of ``F(Y)`` over ``Y`` subset of ``X`` (any size of ``X``)."""
        got = self._memo.get(X)
        if got is None:
            got = 0
            for k, v in self.table.items():
                if k & ~X == 0:
                    got |= v
            self._memo[X] = got
        return got

    def arguments(self) -> Iterator[int]:
        return subsets_upto(self.full, self.order)

    def is_isotone(self) -> bool:
        return all(self(X) == self.closure(X) for X in self.arguments())


def is_free(F: SetMapping, H: int) -> bool:
    """``F(X) & H`` is inside ``X`` for every ``X`` subset of ``H`` with ``|X| <= r``."""
    return all(F(X) & H & ~X == 0 for X in subsets_upto(H, F.order))


def is_free_exact(F: SetMapping, H: int) -> bool:
    """Freeness tested on ``r``-element arguments only."""
    return all(F(mask_of(c)) & H & ~mask_of(c) == 0 for c in combinations(members(H), F.order))


def find_free(F: SetMapping, m: int, budget: Budget | None = None) -> int | None:
    """An ``m``-element free set, or None when none exists.

    Subsets of free sets are free, so extending free sets in increasing
    element order is exhaustive.
    """
    budget = ensure(budget)
    N, r = F.ground, F.order
    if m > N:
        return None
    if m == 0:
        return 0
    nodes = 0

    def ok_to_add(H: int, z: int) -> bool:
        Hz = H | 1 << z
        for X in subsets_upto(H, r):
            if F(X) >> z & 1:
                return False
        for Xp in subsets_upto(H, r - 1):
            X = Xp | 1 << z
            if F(X) & Hz & ~X:
                return False
        return True

    stack = [(0, 0)]  # (free set, next candidate)
    while stack:
        H, nxt = stack.pop()
        if popcount(H) == m:
            assert is_free(F, H)
            return H
        for z in range(N - 1, nxt - 1, -1):
            if N - z < m - popcount(H):
                continue
            nodes += 1
            if nodes % _POLL == 0:
                budget.charge(_POLL)
                if budget.expired():
                    raise BudgetExceeded("find_free")
            if ok_to_add(H, z):
                stack.append((H | 1 << z, z + 1))
    budget.charge(nodes % _POLL)
    return None


def isotone_closure(F: SetMapping) -> SetMapping:
    return SetMapping(F.ground, F.order, {X: F.closure(X) for X in F.arguments()})


@dataclass
class FreeEmbedding:
    """Injective ``f`` from the elements of ``P`` to the ground set."""

    P: Poset
    F: SetMapping
    f: list[int]

    def verify(self) -> bool:
        return satisfies_leadsto(self.P, self.F, self.f)


def _image(f, elems) -> int:
    return mask_of(f[e] for e in elems)


def satisfies_leadsto(P: Poset, F: SetMapping, f) -> bool:
    """``G(f[P|x]) & f[P|y]`` inside ``f[P|x]`` for all ``x <= y``, ``G`` the isotone closure."""
    if len(set(f)) != P.n or any(not 0 <= v < F.ground for v in f):
        return False
    imgs = [_image(f, downset(P, a)) for a in range(P.n)]
    for x in range(P.n):
        gx = F.closure(imgs[x])
        for y in range(P.n):
            if P.le[x, y] and gx & imgs[y] & ~imgs[x]:
                return False
    return True


def _injection_search(n_items, N, checks, budget, what):
    """DFS over injections ``item -> ground``; ``checks[i](img)`` runs once
    items ``0..i`` are placed."""
    img = [0] * n_items
    used = [False] * N
    choice = [0] * (n_items + 1)
    d = 0
    nodes = 0
    if n_items == 0:
        return []
    while True:
        if d == n_items:
            budget.charge(nodes % _POLL)
            return list(img)
        c = choice[d]
        if c >= N:
            d -= 1
            if d < 0:
                budget.charge(nodes % _POLL)
                return None
            used[img[d]] = False
            choice[d] += 1
            continue
        nodes += 1
        if nodes % _POLL == 0:
            budget.charge(_POLL)
            if budget.expired():
                raise BudgetExceeded(what)
        if used[c]:
            choice[d] += 1
            continue
        img[d] = c
        if checks[d](img):
            used[c] = True
            d += 1
            choice[d] = 0
        else:
            choice[d] += 1


def leadsto_shadow(P: Poset, F: SetMapping, budget: Budget | None = None) -> FreeEmbedding | None:
    """Injective ``f: P -> ground`` meeting the freeness condition on every
    comparable pair, or None after exhausting all injections."""
    budget = ensure(budget)
    order = linear_extension(P)
    pos = {x: i for i, x in enumerate(order)}
    downs = [sorted(downset(P, a), key=pos.__getitem__) for a in range(P.n)]

    def make_check(i):
        y = order[i]
        lower = [x for x in downs[y] if x != y]

        def check(img):
            f_of = {order[k]: img[k] for k in range(i + 1)}
            iy = mask_of(f_of[e] for e in downs[y])
            for x in lower:
                ix = mask_of(f_of[e] for e in downs[x])
                if F.closure(ix) & iy & ~ix:
                    return False
            return True

        return check

    img = _injection_search(P.n, F.ground, [make_check(i) for i in range(P.n)], budget, "leadsto")
    if img is None:
        return None
    f = [0] * P.n
    for i, x in enumerate(order):
        f[x] = img[i]
    emb = FreeEmbedding(P, F, f)
    assert emb.verify()
    return emb


def satisfies_ji_condition(P: Poset, F: SetMapping, g: dict[int, int]) -> bool:
    """``G(g[J(x)]) & g[J(y)]`` inside ``g[J(x)]`` for all ``x <= y``."""
    J = join_irreducibles(P)
    if set(g) != set(J) or len(set(g.values())) != len(g):
        return False
    imgs = [mask_of(g[p] for p in jp(P, a)) for a in range(P.n)]
    for x in range(P.n):
        gx = F.closure(imgs[x])
        for y in range(P.n):
            if P.le[x, y] and gx & imgs[y] & ~imgs[x]:
                return False
    return True


@dataclass
class ShadowReport:
    full: FreeEmbedding | None
    ji: dict[int, int] | None
    full_timed_out: bool = False
    ji_timed_out: bool = False

    def as_dict(self) -> dict:
        return {
            "poset_map": None if self.full is None else self.full.f,
            "join_irreducible_map": None if self.ji is None else {str(k): v for k, v in self.ji.items()},
            "poset_search_timed_out": self.full_timed_out,
            "join_irreducible_search_timed_out": self.ji_timed_out,
        }


def ji_shadow_check(P: Poset, F: SetMapping, budget: Budget | None = None) -> ShadowReport:
    """Run the join-irreducible search next to :func:`leadsto_shadow`.

    Both outcomes are reported as found; no equivalence between them is
    asserted at finite scale.
    """
    budget = ensure(budget)
    lin = linear_extension(P)
    J = sorted(join_irreducibles(P), key=lin.index)
    jpos = {p: i for i, p in enumerate(J)}
    jps = [sorted(jp(P, a), key=jpos.__getitem__) for a in range(P.n)]
    due: list[list[tuple[int, int]]] = [[] for _ in J]
    for x in range(P.n):
        for y in range(P.n):
            if P.le[x, y] and x != y and jps[y]:
                due[jpos[jps[y][-1]]].append((x, y))

    def make_check(i):
        pairs = due[i]

        def check(img):
            for x, y in pairs:
                ix = mask_of(img[jpos[p]] for p in jps[x])
                iy = mask_of(img[jpos[p]] for p in jps[y])
                if F.closure(ix) & iy & ~ix:
                    return False
            return True

        return check

    ji = None
    ji_to = False
    try:
        img = _injection_search(len(J), F.ground, [make_check(i) for i in range(len(J))], budget, "ji-shadow")
        if img is not None:
            ji = {p: img[jpos[p]] for p in J}
            assert satisfies_ji_condition(P, F, ji)
    except BudgetExceeded:
        ji_to = True
    full = None
    full_to = False
    try:
        full = leadsto_shadow(P, F, budget)
    except BudgetExceeded:
        full_to = True
    return ShadowReport(full, ji, full_to, ji_to)


def check_config_p(F: SetMapping, xs, ys) -> bool:
    G = F.closure
    if len(set(xs) | set(ys)) != 6:
        return False
    X = mask_of(xs)
    for i in range(3):
        for j in range(3):
            if i == j:
                continue
            pair = G(mask_of((xs[j], ys[j])))
            if pair >> xs[i] & 1 or pair >> ys[i] & 1 or G(X) >> ys[i] & 1:
                return False
    return True


def check_config_q(F: SetMapping, xs, ys) -> bool:
    G = F.closure
    if len(set(xs) | set(ys)) != 6:
        return False
    X = mask_of(xs)
    for i in range(3):
        for j in range(3):
            if i == j:
                continue
            if G(mask_of((xs[j], ys[j]))) >> xs[i] & 1 or G(X | 1 << ys[j]) >> ys[i] & 1:
                return False
    return True


def _config_search(F: SetMapping, check) -> tuple[tuple[int, ...], tuple[int, ...]] | None:
    # simultaneous relabelling of the indices is a symmetry: take xs increasing
    N = F.ground
    for xs in combinations(range(N), 3):
        rest = [v for v in range(N) if v not in xs]
        ys: list[int] = []

        def extend() -> tuple | None:
            if len(ys) == 3:
                return tuple(ys) if check(F, xs, ys) else None
            for v in rest:
                if v in ys:
                    continue
                ys.append(v)
                if _partial_ok(F, xs, ys, check):
                    got = extend()
                    if got is not None:
                        return got
                ys.pop()
            return None

        got = extend()
        if got is not None:
            return tuple(xs), got
    return None


def _partial_ok(F, xs, ys, check) -> bool:
    G = F.closure
    k = len(ys)
    X = mask_of(xs)
    for i in range(3):
        for j in range(k):
            if i == j:
                continue
            pair = G(mask_of((xs[j], ys[j])))
            if pair >> xs[i] & 1:
                return False
            if i < k:
                if check is check_config_p:
                    if pair >> ys[i] & 1:
                        return False
                elif G(X | 1 << ys[j]) >> ys[i] & 1:
                    return False
    if check is check_config_p:
        gx = G(X)
        if any(gx >> y & 1 for y in ys):
            return False
    return True


def config_search_p(F: SetMapping):
    """Distinct ``xs``, ``ys`` (three each) with, for ``i != j``:
    ``x_i, y_i`` not in ``F({x_j, y_j})`` and ``y_i`` not in ``F(xs)``."""
    return _config_search(F, check_config_p)


def config_search_q(F: SetMapping):
    """Distinct ``xs``, ``ys`` with, for ``i != j``: ``x_i`` not in
    ``F({x_j, y_j})`` and ``y_i`` not in ``F(xs + {y_j})``."""
    return _config_search(F, check_config_q)


# generators


def empty_mapping(N: int, r: int) -> SetMapping:
    return SetMapping(N, r, {})


def constant_mapping(N: int, r: int, value: int | None = None) -> SetMapping:
    """Every nonempty argument maps to ``value`` (default: the ground set)."""
    value = (1 << N) - 1 if value is None else value
    return SetMapping(N, r, {X: value for X in subsets_upto((1 << N) - 1, r) if X})


def identity_mapping(N: int, r: int) -> SetMapping:
    return SetMapping(N, r, {X: X for X in subsets_upto((1 << N) - 1, r)})


def cyclic_mapping(N: int, r: int = 1) -> SetMapping:
    """``F({i}) = {i+1 mod N}``."""
    return SetMapping(N, r, {1 << i: 1 << ((i + 1) % N) for i in range(N)})


def greedy_mapping(N: int, r: int) -> SetMapping:
    """Each nonempty argument blocks the least element it does not contain."""
    full = (1 << N) - 1
    table = {}
    for X in subsets_upto(full, r):
        if X and X != full:
            miss = full & ~X
            table[X] = miss & -miss
    return SetMapping(N, r, table)


def random_mapping(N: int, r: int, density: float, seed: int | None = None, *, include_empty: bool = False) -> SetMapping:
    """Each ``y`` outside ``X`` lands in ``F(X)`` with probability ``density``."""
    rng = np.random.default_rng(seed)
    table = {}
    for X in subsets_upto((1 << N) - 1, r):
        if not X and not include_empty:
            continue
        hit = rng.random(N) < density
        table[X] = mask_of(y for y in range(N) if hit[y] and not X >> y & 1)
    return SetMapping(N, r, table)


def inward_mapping(N: int, r: int, seed: int | None = None) -> SetMapping:
    """Random values inside their own argument; every set is free."""
    rng = np.random.default_rng(seed)
    table = {}
    for X in subsets_upto((1 << N) - 1, r):
        keep = [y for y in members(X) if rng.random() < 0.5]
        table[X] = mask_of(keep)
    return SetMapping(N, r, table)


# file format


def _fmt_list(mask: int) -> str:
    return ",".join(map(str, members(mask)))


def _parse_list(text: str, N: int) -> int:
    text = text.strip().strip("{}").strip()
    if not text:
        return 0
    try:
        vals = [int(t) for t in text.split(",")]
    except ValueError as exc:
        raise ParseError(f"bad subset {text!r}") from exc
    if any(not 0 <= v < N for v in vals):
        raise ParseError(f"subset {text!r} leaves 0..{N - 1}")
    return mask_of(vals)


def dumps_mapping(F: SetMapping) -> str:
    lines = [f"N={F.ground} r={F.order}"]
    for X in sorted(F.table, key=lambda k: (popcount(k), k)):
        lines.append(f"{_fmt_list(X)} -> {_fmt_list(F.table[X])}")
    return "\n".join(lines) + "\n"


def loads_mapping(text: str) -> SetMapping:
    lines = [ln.split("#", 1)[0].strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln]
    if not lines:
        raise ParseError("empty mapping file")
    head = dict(tok.split("=", 1) for tok in lines[0].split() if "=" in tok)
    try:
        N, r = int(head["N"]), int(head["r"])
    except (KeyError, ValueError) as exc:
        raise ParseError(f"header must read 'N=<n> r=<r>', got {lines[0]!r}") from exc
    table: dict[int, int] = {}
    for ln in lines[1:]:
        if "->" not in ln:
            raise ParseError(f"expected 'X -> Y', got {ln!r}")
        lhs, rhs = ln.split("->", 1)
        X = _parse_list(lhs, N)
        if X in table:
            raise ParseError(f"argument {fmt_set(X)} listed twice")
        table[X] = _parse_list(rhs, N)
    try:
        return SetMapping(N, r, table)
    except InvalidArgs as exc:
        raise ParseError(str(exc)) from exc


def free_sets(F: SetMapping, m: int) -> Iterable[int]:
    """Every ``m``-element free set, by brute force (test oracle)."""
    for c in combinations(range(F.ground), m):
        H = mask_of(c)
        if is_free(F, H):
            yield H

"""Certified intervals for the Kuratowski index and aleph-relation records.

Bounds are only ever combined soundly: the interval widens on timeouts but
never claims more than the rules used can certify. Rule tags:

``antichain``        antichains have index 0
``tree``             a nontrivial tree has index 1
``nonantichain``     any non-antichain has index at least 1
``breadth-downsets`` max breadth of principal down-sets (needs a zero and
                     join-semilattice down-sets)
``cube-breadth``     ``B_m(<=r)`` has breadth ``r+1``
``dim-exact``        index is at most the order-dimension
``realizer``         ... at most the size of any realizer found
``width-J``          ... at most the width of the join-irreducibles
``card-J``           ... at most their number
``product-split``    ... at most the sum over factors of a product it
                     embeds into (factors with zero)
``dushnik`` / ``furedi-kahn``  dimension estimates for ``B_m(<=r)``
``known-kur``        ``kur B_m(<=r) = r+1`` for ``r`` in 1..3
``cube-n+2``         ``kur B_{r+2}(<=r) = r+1``
``gch``              ``kur B_m(<=r) = r+1`` assuming GCH (conditional)
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .budget import Budget, ensure
from .errors import BudgetExceeded, InternalConsistencyError, InvalidArgs
from .estimates import PowerOfTwo
from .poset import (
    Poset,
    breadth,
    downset,
    embeds,
    is_antichain,
    is_join_semilattice,
    is_tree,
    join_irreducibles,
    product,
    subposet,
)

DIM_BUDGET_MS = 2000.0


@dataclass
class BoundInterval:
    lo: int
    hi: int
    lo_provenance: list[str] = field(default_factory=list)
    hi_provenance: list[str] = field(default_factory=list)
    conditional: bool = False

    def __post_init__(self):
        if not 0 <= self.lo <= self.hi:
            raise InternalConsistencyError(f"empty interval [{self.lo}, {self.hi}]")

    @property
    def exact(self) -> bool:
        return self.lo == self.hi

    def as_dict(self) -> dict:
        return {
            "lo": self.lo,
            "hi": self.hi,
            "lo_provenance": self.lo_provenance,
            "hi_provenance": self.hi_provenance,
            "conditional": self.conditional,
        }

    def __str__(self):
        return f"[{self.lo}, {self.hi}]"


@dataclass
class AlephRelation:
    """``(lambda^{+offset}, order, lambda) -> size``."""

    offset: int
    order: int
    size: int | PowerOfTwo
    conditional: bool = False
    provenance: str | None = None

    def __post_init__(self):
        if self.offset < 0 or self.order < 1:
            raise InvalidArgs("offset must be >= 0 and order >= 1")

    def _size(self) -> str:
        return self.size.render() if isinstance(self.size, PowerOfTwo) else str(self.size)

    def render_aleph(self) -> str:
        return f"(aleph_{self.offset}, {self.order}, aleph_0) -> {self._size()}"

    def render_lambda(self) -> str:
        kappa = "lambda" if self.offset == 0 else f"lambda^{{+{self.offset}}}"
        return f"({kappa}, {self.order}, lambda) -> {self._size()}"

    def as_dict(self) -> dict:
        size = self.size
        return {
            "offset": self.offset,
            "order": self.order,
            "size": {"pow2": size.exponent} if isinstance(size, PowerOfTwo) else size,
            "aleph": self.render_aleph(),
            "lambda": self.render_lambda(),
            "conditional": self.conditional,
            "provenance": self.provenance,
        }

    def __str__(self):
        return self.render_aleph()


def relation_from_cube(m: int, r: int, kur_hi: int) -> AlephRelation:
    """``kur B_m(<=r) <= kur_hi`` gives ``(lambda^{+(kur_hi-1)}, r, lambda) -> m``."""
    if kur_hi < 1:
        raise InvalidArgs("kur_hi must be at least 1")
    return AlephRelation(offset=kur_hi - 1, order=r, size=m)


def kur_product_upper(b1: BoundInterval, b2: BoundInterval) -> int:
    return b1.hi + b2.hi


class _Collector:
    def __init__(self, init, better):
        self.value = init
        self.tags: list[str] = []
        self.better = better

    def offer(self, value, tag):
        if value is None:
            return
        if self.value is None or self.better(value, self.value):
            self.value = value
            self.tags = [tag]
        elif value == self.value:
            self.tags.append(tag)


def _breadth_lower(P: Poset, budget: Budget) -> tuple[int, bool] | None:
    """Max breadth over principal down-sets when that bound applies.

    Breadth only grows when passing to a larger down-set, so maximal
    elements suffice. Returns ``(value, complete)``.
    """
    if P.least() is None:
        return None
    downs = [downset(P, a) for a in range(P.n)]
    if not all(is_join_semilattice(subposet(P, d)) for d in downs):
        return None
    best = 1
    for a in P.maximal():
        try:
            best = max(best, breadth(subposet(P, downs[a]), budget))
        except BudgetExceeded as exc:
            return max(best, exc.lower or 1), False
    return best, True


def kur_bounds(P: Poset, budget: Budget | None = None, *, cube=None,
               factors: Sequence[Poset] | None = None, gch: bool = False) -> BoundInterval:
    """Certified ``[lo, hi]`` for ``kur(P)``.

    ``cube`` (defaults to ``P.cube``) enables the known values for truncated
    cubes; ``factors`` are posets with zero whose product ``P`` embeds
    into; ``gch`` admits the GCH-conditional cube values, flagging the
    result as conditional.
    """
    budget = ensure(budget)
    if is_antichain(P):
        return BoundInterval(0, 0, ["antichain"], ["antichain"])
    if is_tree(P):
        return BoundInterval(1, 1, ["tree"], ["tree"])
    cube = cube if cube is not None else P.cube

    lo = _Collector(None, lambda a, b: a > b)
    hi = _Collector(None, lambda a, b: a < b)
    lo.offer(1, "nonantichain")
    bl = _breadth_lower(P, budget)
    if bl is not None:
        lo.offer(bl[0], "breadth-downsets")

    J = join_irreducibles(P)
    hi.offer(len(J), "card-J")
    from .dimension import dim_exact, dim_upper_width

    hi.offer(dim_upper_width(P), "width-J")
    sub = Budget(ms=DIM_BUDGET_MS if budget.ms is None else max(0.0, budget.ms - budget.elapsed_ms()),
                 nodes=budget.remaining_nodes())
    try:
        hi.offer(dim_exact(P, sub).value, "dim-exact")
    except BudgetExceeded as exc:
        hi.offer(exc.upper, "realizer")
    budget.charge(sub.nodes_used)

    if factors:
        fb = [kur_bounds(F, budget, gch=gch) for F in factors]
        if all(F.least() is not None for F in factors):
            Q = factors[0]
            for F in factors[1:]:
                Q = product(Q, F)
            try:
                if embeds(P, Q, budget) is not None:
                    hi.offer(sum(b.hi for b in fb), "product-split")
            except BudgetExceeded:
                pass

    conditional = False
    if cube is not None and cube.upto is not None:
        m, r = cube.m, cube.upto
        lo.offer(r + 1, "cube-breadth")
        from .estimates import dushnik_dim, furedi_kahn_min_d

        if m >= 4:
            hi.offer(dushnik_dim(m, r + 1), "dushnik")
        hi.offer(furedi_kahn_min_d(m, r), "furedi-kahn")
        if r in (1, 2, 3):
            hi.offer(r + 1, "known-kur")
        if m == r + 2:
            lo.offer(r + 1, "cube-n+2")
            hi.offer(r + 1, "cube-n+2")
        if gch and hi.value > r + 1:
            hi.value, hi.tags = r + 1, ["gch"]
            conditional = True

    if lo.value > hi.value:
        raise InternalConsistencyError(f"kur bounds crossed: lo={lo.value} {lo.tags}, hi={hi.value} {hi.tags}")
    return BoundInterval(lo.value, hi.value, lo.tags, hi.tags, conditional)

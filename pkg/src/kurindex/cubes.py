"""Truncated Boolean cubes and the singleton-join embedding transfer.

Subsets of ``{0..m-1}`` are bitmasks. Cube elements are listed by
``(size, mask)``, so the same spec always yields the same indexing.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from math import comb
from typing import Any, Mapping, Sequence

import numpy as np

from .budget import Budget
from .errors import InvalidSpec, NotALattice, PhiNotEmbedding, PsiNotEmbedding
from .poset import MAX_ELEMENTS, Poset, from_le, is_join_semilattice


def popcount(x: int) -> int:
    return bin(x).count("1")


def mask_of(xs) -> int:
    m = 0
    for x in xs:
        m |= 1 << int(x)
    return m


def members(mask: int) -> list[int]:
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return out


def fmt_set(mask: int) -> str:
    return "{" + ",".join(map(str, members(mask))) + "}"


@dataclass(frozen=True)
class CubeSpec:
    """``B_m(<=r)`` when ``upto`` is set, ``B_m(r_0,...)`` when ``levels`` is."""

    m: int
    upto: int | None = None
    levels: tuple[int, ...] | None = None

    @classmethod
    def up_to(cls, m: int, r: int) -> "CubeSpec":
        if m < 2:
            raise InvalidSpec(f"B_m(<=r) needs m >= 2, got m={m}")
        if not 1 <= r <= m:
            raise InvalidSpec(f"need 1 <= r <= m, got m={m}, r={r}")
        # B_m(<=m) and B_m(<=m-1) coincide
        return cls(m, upto=min(r, m - 1))

    @classmethod
    def with_levels(cls, m: int, levels: Sequence[int]) -> "CubeSpec":
        levels = tuple(int(x) for x in levels)
        if m < 1 or not levels:
            raise InvalidSpec("need m >= 1 and at least one level")
        if any(not 1 <= x <= m for x in levels):
            raise InvalidSpec(f"levels must lie in 1..{m}: {levels}")
        if any(a >= b for a, b in zip(levels, levels[1:])):
            raise InvalidSpec(f"levels must be strictly increasing: {levels}")
        return cls(m, levels=levels)

    def subsets(self) -> list[int]:
        full = (1 << self.m) - 1
        if self.upto is not None:
            keep = [s for s in range(1 << self.m) if popcount(s) <= self.upto or s == full]
        else:
            want = set(self.levels)
            keep = [s for s in range(1 << self.m) if popcount(s) in want]
        return sorted(keep, key=lambda s: (popcount(s), s))

    def size(self) -> int:
        if self.upto is not None:
            return sum(comb(self.m, i) for i in range(self.upto + 1)) + 1
        return sum(comb(self.m, x) for x in self.levels)

    def uri(self) -> str:
        if self.upto is not None:
            return f"bm?m={self.m}&r={self.upto}"
        return f"blev?m={self.m}&levels={','.join(map(str, self.levels))}"

    def __str__(self):
        if self.upto is not None:
            return f"B_{self.m}(<={self.upto})"
        return f"B_{self.m}({','.join(map(str, self.levels))})"


def build_cube(spec: CubeSpec, *, cap: int = MAX_ELEMENTS) -> Poset:
    subs = spec.subsets()
    if len(subs) > cap:
        from .errors import CapacityExceeded

        raise CapacityExceeded(f"{spec} has {len(subs)} elements, cap is {cap}")
    s = np.array(subs, dtype=np.int64)
    le = (s[:, None] & ~s[None, :]) == 0
    return from_le(le, [fmt_set(x) for x in subs], cube=spec, cap=cap, validate=False)


def bm(m: int, r: int) -> Poset:
    return build_cube(CubeSpec.up_to(m, r))


def blev(m: int, *levels: int) -> Poset:
    return build_cube(CubeSpec.with_levels(m, levels))


def one_and_r(m: int, r: int) -> CubeSpec:
    """Spec of ``B_m(1, r)`` (just the singletons when ``r == 1``)."""
    return CubeSpec.with_levels(m, sorted({1, r}))


def cube_subsets(P: Poset) -> list[int]:
    """Bitmask of every element of a cube-built poset, by index."""
    if P.cube is None:
        raise InvalidSpec("poset was not built by build_cube")
    return P.cube.subsets()


def intersection_cover(X: int, H: int, r: int) -> list[int]:
    """``r``-subsets of ``H`` whose intersection is exactly ``X``.

    For each element of ``H`` outside ``X`` one ``r``-set is chosen that
    contains ``X`` and avoids that element; this needs ``|X| <= r < |H|``.
    When ``X == H`` there is nothing to avoid and ``[H]`` is returned if
    ``|H| == r``.
    """
    if X & ~H:
        raise InvalidSpec("X must be a subset of H")
    if popcount(X) > r:
        raise InvalidSpec("|X| must not exceed r")
    if X == H:
        if popcount(H) != r:
            raise InvalidSpec("X == H needs |H| == r")
        return [H]
    if popcount(H) <= r:
        raise InvalidSpec("need r < |H|")
    out = []
    for xi in members(H & ~X):
        pool = H & ~X & ~(1 << xi)
        extra = members(pool)[: r - popcount(X)]
        out.append(X | mask_of(extra))
    return out


class ChainProduct:
    """Product of chains ``0..L_k-1``, a lattice on integer tuples."""

    def __init__(self, lengths: Sequence[int]):
        self.lengths = tuple(int(x) for x in lengths)

    @property
    def bottom(self):
        return tuple(0 for _ in self.lengths)

    def le(self, a, b) -> bool:
        return all(x <= y for x, y in zip(a, b))

    def join(self, a, b):
        return tuple(max(x, y) for x, y in zip(a, b))

    def __repr__(self):
        return f"ChainProduct({list(self.lengths)})"


class PosetLattice:
    """Lattice view of a :class:`Poset` (checked on construction)."""

    def __init__(self, K: Poset):
        if K.least() is None or not is_join_semilattice(K):
            raise NotALattice("K must have a least element and all binary joins")
        self.K = K
        self.bottom = K.least()

    def le(self, a, b) -> bool:
        return bool(self.K.le[a, b])

    def join(self, a, b):
        return self.K.join(a, b)


def _as_lattice(K):
    if isinstance(K, Poset):
        return PosetLattice(K)
    if not all(hasattr(K, a) for a in ("le", "join", "bottom")):
        raise NotALattice(f"{K!r} exposes no le/join/bottom")
    return K


def _is_embedding_on(subsets, f, lat) -> bool:
    for X in subsets:
        for Y in subsets:
            if ((X & ~Y) == 0) != lat.le(f[X], f[Y]):
                return False
    return True


def psi_extend(m: int, r: int, K, phi: Mapping[int, Any]) -> dict[int, Any]:
    """Extend an embedding of ``B_m(1,r)`` into a lattice to ``B_m(<=r)``.

    ``phi`` maps bitmasks of ``B_m(1,r)`` to elements of ``K``; the result
    sends ``X`` to the join of ``phi({i})`` over ``i in X`` (the least
    element for the empty set). Both maps are verified as order-embeddings.
    """
    lat = _as_lattice(K)
    small = one_and_r(m, r).subsets()
    missing = [X for X in small if X not in phi]
    if missing:
        raise PhiNotEmbedding(f"phi undefined on {fmt_set(missing[0])}")
    if not _is_embedding_on(small, phi, lat):
        raise PhiNotEmbedding("phi is not an order-embedding of B_m(1,r)")
    big = CubeSpec.up_to(m, r).subsets()
    psi = {}
    for X in big:
        acc = lat.bottom
        for i in members(X):
            acc = lat.join(acc, phi[1 << i])
        psi[X] = acc
    if not _is_embedding_on(big, psi, lat):
        raise PsiNotEmbedding("singleton-join extension failed to be an order-embedding")
    return psi


def realizer_embedding(P: Poset, realizer) -> tuple[ChainProduct, list[tuple[int, ...]]]:
    """Coordinates of each element in the chains of a realizer."""
    pos = [dict((x, i) for i, x in enumerate(L)) for L in realizer]
    coords = [tuple(p[x] for p in pos) for x in range(P.n)]
    return ChainProduct([P.n] * len(realizer)), coords


@dataclass
class TransferReport:
    m: int
    r: int
    dim_upto: int
    dim_one_r: int
    psi_verified: bool
    equal: bool

    @property
    def passed(self) -> bool:
        return self.equal and self.psi_verified


def check_dim_transfer(m: int, r: int, budget: Budget | None = None) -> TransferReport:
    """Exact dimensions of ``B_m(<=r)`` and ``B_m(1,r)`` computed separately,
    plus the realizer -> chain product -> ``psi_extend`` pipeline."""
    from .dimension import dim_exact

    P_small = build_cube(one_and_r(m, r))
    P_big = build_cube(CubeSpec.up_to(m, r))
    d_small = dim_exact(P_small, budget)
    d_big = dim_exact(P_big, budget)
    K, coords = realizer_embedding(P_small, d_small.realizer)
    subs = cube_subsets(P_small)
    phi = {subs[i]: coords[i] for i in range(P_small.n)}
    try:
        psi_extend(m, r, K, phi)
        ok = True
    except PsiNotEmbedding:
        ok = False
    return TransferReport(m, r, d_big.value, d_small.value, ok, d_big.value == d_small.value)

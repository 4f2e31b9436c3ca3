"""Dimension estimates for truncated cubes in exact integer arithmetic.

Every threshold decision (Spencer floor, Füredi-Kahn inequality, Dushnik
windows) is made on Python integers. Floats appear only in
:func:`asymptotic_check`, which is a report.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import total_ordering

from .budget import Budget
from .errors import BudgetExceeded, InternalConsistencyError, InvalidArgs

DISPLAY_EXPONENT_CAP = 64


@total_ordering
@dataclass(frozen=True)
class PowerOfTwo:
    """The number ``2**exponent``, kept symbolic."""

    exponent: int

    def __post_init__(self):
        if self.exponent < 0:
            raise InvalidArgs("exponent must be non-negative")

    def __int__(self):
        return 1 << self.exponent

    def __eq__(self, other):
        if isinstance(other, PowerOfTwo):
            return self.exponent == other.exponent
        if isinstance(other, int):
            return other > 0 and other.bit_length() - 1 == self.exponent and other & (other - 1) == 0
        return NotImplemented

    def __lt__(self, other):
        if isinstance(other, PowerOfTwo):
            return self.exponent < other.exponent
        if isinstance(other, int):
            bits = other.bit_length()
            return bits > self.exponent + 1 or (bits == self.exponent + 1 and other != 1 << self.exponent)
        return NotImplemented

    def __hash__(self):
        return hash(("pow2", self.exponent))

    def render(self, cap: int = DISPLAY_EXPONENT_CAP) -> str:
        if self.exponent > cap:
            return f"2^{self.exponent}"
        return str(1 << self.exponent)

    def __str__(self):
        return self.render()


def iroot(x: int, k: int) -> int:
    """Largest integer ``s`` with ``s**k <= x``."""
    if x < 0 or k < 1:
        raise InvalidArgs("iroot needs x >= 0 and k >= 1")
    if x < 2 or k == 1:
        return x
    s = 1 << -(-x.bit_length() // k)  # s**k > x
    while True:
        t = ((k - 1) * s + x // s ** (k - 1)) // k
        if t >= s:
            break
        s = t
    while s ** k > x:
        s -= 1
    while (s + 1) ** k <= x:
        s += 1
    return s


def spencer_exponent(n: int, r: int) -> int:
    """``floor(1/2 * (1 - 2**-r) ** (-n/r))``.

    ``t`` is admissible iff ``(2t)**r * (2**r - 1)**n <= 2**(r*n)``, i.e.
    ``2t <= iroot(2**(r*n) // (2**r - 1)**n, r)``; the left side is an
    integer, so flooring the quotient loses nothing.
    """
    if not (isinstance(n, int) and isinstance(r, int)) or not 1 <= r < n:
        raise InvalidArgs(f"need integers 1 <= r < n, got n={n}, r={r}")
    q = (1 << (r * n)) // ((1 << r) - 1) ** n
    return iroot(q, r) // 2


def e_value(n: int, r: int) -> PowerOfTwo:
    return PowerOfTwo(spencer_exponent(n, r))


def table_e(r: int, n_max: int) -> list[tuple[int, PowerOfTwo]]:
    """Least ``n`` reaching each value of ``E(n, r)``, for ``r < n <= n_max``.

    Only rows with ``E(n, r) > n`` are kept: below that the free-set size
    does not beat the ``m``-element free sets that exist at offset ``m-1``
    anyway, so the relation says nothing new.
    """
    if r < 1:
        raise InvalidArgs("r must be positive")
    rows = []
    last = None
    for n in range(r + 1, n_max + 1):
        e = spencer_exponent(n, r)
        if e != last:
            last = e
            if (1 << e) > n:
                rows.append((n, PowerOfTwo(e)))
    return rows


def format_table_e(rows, r: int) -> str:
    head = ["n"] + [str(n) for n, _ in rows]
    vals = [f"E(n,{r})"] + [f"{int(e):,}" if e.exponent <= DISPLAY_EXPONENT_CAP else str(e) for _, e in rows]
    widths = [max(len(a), len(b)) for a, b in zip(head, vals)]
    line1 = " | ".join(h.rjust(w) if i else h.ljust(w) for i, (h, w) in enumerate(zip(head, widths)))
    line2 = " | ".join(v.rjust(w) if i else v.ljust(w) for i, (v, w) in enumerate(zip(vals, widths)))
    return line1 + "\n" + line2


def least_n_for(m: int, r: int, n_cap: int = 1 << 20) -> int | None:
    """Least ``n > r`` with ``E(n, r) >= m`` (exponential then binary search)."""
    if m < 1 or r < 2:
        return None
    need = (m - 1).bit_length()  # least e with 2**e >= m
    lo = r + 1
    if spencer_exponent(lo, r) >= need:
        return lo
    hi = lo
    while spencer_exponent(hi, r) < need:
        lo = hi
        hi *= 2
        if hi > n_cap:
            return None
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if spencer_exponent(mid, r) >= need:
            hi = mid
        else:
            lo = mid
    return hi


@dataclass
class AsymptoticRow:
    n: int
    exponent_bits: int
    lglg_e: float
    predicted: float
    ratio: float


def asymptotic_check(r: int, n_list) -> list[AsymptoticRow]:
    """``lg lg E(n, r)`` against ``n / (r 2^r ln 2)``."""
    rows = []
    for n in n_list:
        e = spencer_exponent(n, r)
        lglg = math.log2(e) if e > 0 else float("-inf")
        pred = n / (r * (1 << r) * math.log(2))
        rows.append(AsymptoticRow(n, e.bit_length(), lglg, pred, lglg / pred))
    return rows


def furedi_kahn_min_d(m: int, r: int) -> int:
    """Least ``d >= 1`` with ``m * C(m-1, r) * (r/(r+1))**d < 1``."""
    if not 1 <= r < m:
        raise InvalidArgs(f"need 1 <= r < m, got m={m}, r={r}")
    c = m * math.comb(m - 1, r)
    d = 1
    lhs = c * r
    rhs = r + 1
    while lhs >= rhs:
        d += 1
        lhs *= r
        rhs *= r + 1
    return d


def dushnik_dim(m: int, k: int) -> int | None:
    """Exact ``dim B_m(1, k-1)`` when one of Dushnik's windows contains ``k``.

    The window for ``j`` (``2 <= j <= isqrt(m)``) is
    ``floor((m+j^2-j)/j) <= k < floor((m+(j-1)^2-j+1)/(j-1))`` and yields
    ``m - j + 1``.
    """
    if m < 4:
        raise InvalidArgs(f"need m >= 4, got {m}")
    if k < 2:
        raise InvalidArgs(f"need k >= 2, got {k}")
    hits = []
    for j in range(2, math.isqrt(m) + 1):
        lo = (m + j * j - j) // j
        hi = (m + (j - 1) ** 2 - j + 1) // (j - 1)
        if lo <= k < hi:
            hits.append(j)
    if len(hits) > 1:
        raise InternalConsistencyError(f"Dushnik windows overlap at m={m}, k={k}: j in {hits}")
    return m - hits[0] + 1 if hits else None


def spencer_relation(n: int, r: int):
    from .kur import AlephRelation

    if not 2 <= r < n:
        raise InvalidArgs(f"need 2 <= r < n, got n={n}, r={r}")
    return AlephRelation(offset=n - 1, order=r, size=e_value(n, r), provenance="spencer")


# tie-break order when several bounds agree
_PRIORITY = ["exact-dim", "realizer", "dushnik", "furedi-kahn", "spencer", "width-J", "card-J", "known-kur"]


@dataclass
class BoundCandidate:
    tag: str
    value: int


def relation_candidates(m: int, r: int, budget: Budget | None = None, *, exact_max_elements: int = 40) -> list[BoundCandidate]:
    """Every implemented upper bound on ``kur B_m(<=r)``."""
    from .cubes import build_cube, one_and_r
    from .dimension import dim_exact

    if not 1 <= r < m:
        raise InvalidArgs(f"need 1 <= r < m, got m={m}, r={r}")
    out = [BoundCandidate("card-J", m), BoundCandidate("width-J", m)]
    if one_and_r(m, r).size() <= exact_max_elements:
        try:
            d = dim_exact(build_cube(one_and_r(m, r)), budget)
            out.append(BoundCandidate("exact-dim", d.value))
        except BudgetExceeded as exc:
            if exc.upper is not None:
                out.append(BoundCandidate("realizer", exc.upper))
    if m >= 4:
        d = dushnik_dim(m, r + 1)
        if d is not None:
            out.append(BoundCandidate("dushnik", d))
    out.append(BoundCandidate("furedi-kahn", furedi_kahn_min_d(m, r)))
    if r >= 2:
        n = least_n_for(m, r)
        if n is not None:
            out.append(BoundCandidate("spencer", n))
    if r in (1, 2, 3):
        out.append(BoundCandidate("known-kur", r + 1))
    return out


def best_relation(m: int, r: int, budget: Budget | None = None):
    """The strongest relation ``(lambda^{+n}, r, lambda) -> m`` derivable here."""
    from .kur import relation_from_cube

    cands = relation_candidates(m, r, budget)
    prio = {t: i for i, t in enumerate(_PRIORITY)}
    best = min(cands, key=lambda c: (c.value, prio.get(c.tag, len(prio))))
    rel = relation_from_cube(m, r, best.value)
    rel.provenance = best.tag
    return rel

"""Acceptance checks, one per criterion, each printing a PASS/FAIL line.

Run alone with ``python tests/test_acceptance.py`` for just the summary.
"""
import sys
import time
from itertools import combinations
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))
from conftest import random_lattice_like, random_poset  # noqa: E402
from kurindex.cli import run  # noqa: E402
from kurindex.cubes import bm, check_dim_transfer  # noqa: E402
from kurindex.dimension import check_dim_equals_suitable, dim_exact, dim_upper_width  # noqa: E402
from kurindex.estimates import asymptotic_check, furedi_kahn_min_d, spencer_exponent  # noqa: E402
from kurindex.freeset import (  # noqa: E402
    check_config_p,
    config_search_p,
    config_search_q,
    cyclic_mapping,
    find_free,
    is_free,
    is_free_exact,
    isotone_closure,
    random_mapping,
)
from kurindex.kur import AlephRelation, kur_bounds  # noqa: E402
from kurindex.poset import (  # noqa: E402
    antichain,
    breadth,
    breadth_join,
    is_antichain,
    is_join_semilattice,
    join_irreducibles,
)


def line_for(num: int, ok: bool, detail: str) -> str:
    return f"criterion {num:>2}: {'PASS' if ok else 'FAIL'}  {detail}"


def check_1():
    t = time.perf_counter()
    code, rep, text = run(["table-e", "r=4", "nmax=215"])
    dt = time.perf_counter() - t
    got = [(row["n"], row["E"]) for row in rep.result]
    want = [(172, 256), (180, 512), (186, 1024), (192, 2048), (197, 4096),
            (202, 8192), (207, 16384), (211, 32768), (215, 65536)]
    return code == 0 and got == want and dt < 1.0, f"table-e r=4 nmax=215: {len(got)} rows, exact={got == want}, {dt:.3f}s"


def check_2():
    a, b = spencer_exponent(171, 4), spencer_exponent(172, 4)
    return (a, b) == (7, 8), f"spencer_exponent(171,4)={a}, spencer_exponent(172,4)={b}"


def check_3():
    parts = []
    ok = True
    for m, r, want in [(3, 1, 2), (4, 2, 3)]:
        t = time.perf_counter()
        d = dim_exact(bm(m, r)).value
        dt = time.perf_counter() - t
        ok &= d == want and dt < 60
        parts.append(f"dim B_{m}(<={r})={d} in {dt:.2f}s")
    t = time.perf_counter()
    d = dim_exact(bm(5, 3)).value
    dt = time.perf_counter() - t
    parts.append(f"stretch dim B_5(<=3)={d} in {dt:.2f}s ({'met' if d == 4 and dt < 600 else 'missed'}, non-gating)")
    return ok, "; ".join(parts)


def check_4():
    res = [check_dim_equals_suitable(m, r) for m, r in [(3, 2), (4, 2), (4, 3)]]
    return all(s.equal for s in res), ", ".join(f"({s.m},{s.r}): dim={s.dim} N={s.n_suitable}" for s in res)


def check_5():
    res = [check_dim_transfer(m, r) for m, r in [(3, 2), (4, 2), (4, 3)]]
    return all(t.passed for t in res), ", ".join(
        f"({t.m},{t.r}): {t.dim_upto}={t.dim_one_r} psi={'ok' if t.psi_verified else 'bad'}" for t in res)


def check_6():
    code, rep, _ = run(["relations"])
    got = {(row["aleph"], row["provenance"]) for row in rep.result}
    want = {
        ("(aleph_210, 4, aleph_0) -> 32768", "spencer"),
        ("(aleph_109, 4, aleph_0) -> 257", "furedi-kahn"),
        ("(aleph_7, 4, aleph_0) -> 10", "dushnik"),
        ("(aleph_8, 4, aleph_0) -> 11", "dushnik"),
        ("(aleph_9, 5, aleph_0) -> 12", "dushnik"),
        ("(aleph_10, 5, aleph_0) -> 13", "dushnik"),
        ("(aleph_11, 5, aleph_0) -> 14", "dushnik"),
        ("(aleph_1, 1, aleph_0) -> 3", "exact-dim"),
        ("(aleph_2, 2, aleph_0) -> 4", "exact-dim"),
        ("(aleph_3, 3, aleph_0) -> 5", "exact-dim"),
    }
    lam = {row["lambda"] for row in rep.result if row["provenance"] == "exact-dim"}
    lam_ok = lam == {AlephRelation(n, n, n + 2).render_lambda() for n in (1, 2, 3)}
    fk = furedi_kahn_min_d(257, 4)
    missing = want - got
    return code == 0 and not missing and fk == 110 and lam_ok, (
        f"{len(want) - len(missing)}/{len(want)} relations with provenance, furedi_kahn_min_d(257,4)={fk}, "
        f"lambda forms {'ok' if lam_ok else 'wrong'}")


def check_7():
    rng = np.random.default_rng(7)
    n_ok = n_anti = n_semi = 0
    bad = []
    for i in range(500):
        if i % 5 == 4:
            P = random_lattice_like(rng, int(rng.integers(2, 5)))
            if P.n > 10:
                P = random_poset(rng, int(rng.integers(2, 11)))
        elif i % 25 == 3:
            P = antichain(int(rng.integers(2, 11)))
        else:
            P = random_poset(rng, int(rng.integers(2, 11)))
        iv = kur_bounds(P)
        d = dim_exact(P).value
        wj = dim_upper_width(P)
        cj = len(join_irreducibles(P))
        ok = iv.lo <= iv.hi <= d <= wj <= cj
        if is_antichain(P):
            n_anti += 1
            ok &= (iv.lo, iv.hi) == (0, 0)
        if is_join_semilattice(P):
            n_semi += 1
            ok &= breadth(P) == breadth_join(P)
        n_ok += ok
        if not ok:
            bad.append(i)
    return not bad, f"{n_ok}/500 posets satisfy the chain ({n_anti} antichains, {n_semi} join-semilattices)"


def check_8():
    bad = []
    for m in range(2, 7):
        for r in range(1, m):
            iv = kur_bounds(bm(m, r))
            if iv.lo != r + 1:
                bad.append((m, r, "lo"))
            if (r <= 3 or m == r + 2) and iv.hi != r + 1:
                bad.append((m, r, "hi"))
    return not bad, f"all 1 <= r < m <= 6 checked, failures: {bad or 'none'}"


def check_9():
    rng = np.random.default_rng(9)
    witnesses_ok = True
    for seed in range(50):
        F = random_mapping(int(rng.integers(3, 10)), int(rng.integers(1, 4)), float(rng.uniform(0, 0.4)), seed)
        for m in range(1, F.ground + 1):
            H = find_free(F, m)
            if H is not None and not is_free(F, H):
                witnesses_ok = False
    cyc = cyclic_mapping(3, 1)
    cyclic_ok = find_free(cyc, 2) is None and not any(
        is_free(cyc, (1 << a) | (1 << b)) for a, b in combinations(range(3), 2))
    equiv_ok = True
    for seed in range(200):
        N = int(rng.integers(2, 9))
        r = int(rng.integers(1, min(N, 4)))
        G = isotone_closure(random_mapping(N, r, float(rng.uniform(0.05, 0.6)), 10_000 + seed, include_empty=True))
        for k in range(r + 1, N + 1):
            for c in combinations(range(N), k):
                H = sum(1 << x for x in c)
                if is_free_exact(G, H) != is_free(G, H):
                    equiv_ok = False
    impl_ok = True
    n_q = 0
    for seed in range(100):
        F = random_mapping(int(rng.integers(6, 10)), 2, float(rng.uniform(0, 0.2)), 20_000 + seed)
        q = config_search_q(F)
        if q is not None:
            n_q += 1
            if config_search_p(F) is None or not check_config_p(F, *q):
                impl_ok = False
    ok = witnesses_ok and cyclic_ok and equiv_ok and impl_ok
    return ok, (f"witnesses free={witnesses_ok}, cyclic N=3 no 2-set={cyclic_ok}, "
                f"<=r vs =r on 200 isotone maps={equiv_ok}, q=>p on 100 maps ({n_q} with q)={impl_ok}")


def check_10():
    rows = asymptotic_check(4, [10**5, 10**6])
    within = all(abs(row.ratio - 1) <= 0.05 for row in rows)
    improving = abs(rows[1].ratio - 1) < abs(rows[0].ratio - 1)
    detail = ", ".join(f"n={row.n}: ratio={row.ratio:.5f}" for row in rows)
    return within and improving, f"{detail}; within 5%={within}, improving with n={improving}"


CHECKS = [check_1, check_2, check_3, check_4, check_5, check_6, check_7, check_8, check_9, check_10]


@pytest.mark.parametrize("num", range(1, 11))
def test_criterion(num, capsys):
    ok, detail = CHECKS[num - 1]()
    line = line_for(num, ok, detail)
    with capsys.disabled():
        print("\n" + line)
    assert ok, line


if __name__ == "__main__":
    failed = 0
    for i, chk in enumerate(CHECKS, 1):
        ok, detail = chk()
        print(line_for(i, ok, detail))
        failed += not ok
    sys.exit(1 if failed else 0)

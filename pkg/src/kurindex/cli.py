"""Command-line interface.

Parameters are ``key=value`` tokens after the subcommand::

    kurindex dim 'bm?m=4&r=2'
    kurindex --json table-e r=4 nmax=215
    kurindex freeset 'cyclic?N=3&r=1' m=2

Exit codes: 0 done, 1 a verification failed, 2 bad input, 3 budget
exhausted (certified partial results are still printed).
"""
from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field
from typing import Any, Callable

from . import estimates, freeset
from .budget import Budget
from .cubes import CubeSpec, build_cube, check_dim_transfer, fmt_set
from .dimension import check_dim_equals_suitable, dim_exact, dim_upper_width
from .errors import BudgetExceeded, KurIndexError, ParseError
from .kur import kur_bounds
from .poset import breadth, join_irreducibles, subposet, width
from .sources import load_mapping, load_poset

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_BUDGET = 0, 1, 2, 3

# relations shown by a bare ``relations``
HEADLINE = [(32768, 4), (257, 4), (10, 4), (11, 4), (12, 5), (13, 5), (14, 5), (3, 1), (4, 2), (5, 3)]


@dataclass
class RunReport:
    command: str
    inputs: dict[str, Any]
    result: Any = None
    budget: dict[str, Any] = field(default_factory=dict)
    provenance: list[str] = field(default_factory=list)
    status: str = "ok"
    text: str = ""

    def as_dict(self) -> dict:
        return {
            "command": self.command,
            "inputs": self.inputs,
            "result": self.result,
            "budget": self.budget,
            "provenance": self.provenance,
            "status": self.status,
        }


def parse_params(tokens: list[str]) -> dict[str, str]:
    out = {}
    for tok in tokens:
        if "=" not in tok:
            raise ParseError(f"expected key=value, got {tok!r}")
        k, v = tok.split("=", 1)
        out[k.strip()] = v.strip()
    return out


def _need_int(p: dict, key: str, default: int | None = None) -> int:
    if key not in p:
        if default is None:
            raise ParseError(f"missing parameter {key}=")
        return default
    try:
        return int(p[key])
    except ValueError as exc:
        raise ParseError(f"{key}={p[key]!r} is not an integer") from exc


def _flag(p: dict, key: str) -> bool:
    return p.get(key, "0").lower() in ("1", "true", "yes", "on")


def _timeout(rep: RunReport, exc: BudgetExceeded) -> RunReport:
    rep.status = "timeout"
    rep.result = {"lower": exc.lower, "upper": exc.upper}
    rep.provenance = ["timeout-interval"]
    rep.text = f"budget exhausted in {exc.what}: value in [{exc.lower}, {exc.upper}]"
    return rep


def cmd_dim(a, p, budget) -> RunReport:
    P = load_poset(a.source)
    rep = RunReport("dim", {"source": a.source, **p})
    try:
        d = dim_exact(P, budget, pairs="all" if _flag(p, "all") else "critical")
    except BudgetExceeded as exc:
        _timeout(rep, exc)
        rep.result["realizer"] = exc.witness
        return rep
    rep.result = {"value": d.value, "realizer": d.realizer}
    rep.provenance = ["exact-dim"]
    rep.text = f"dim = {d.value}\nrealizer:\n" + "\n".join("  " + " < ".join(P.label(x) for x in L) for L in d.realizer)
    return rep


def cmd_width(a, p, budget) -> RunReport:
    P = load_poset(a.source)
    w = width(P)
    return RunReport("width", {"source": a.source}, {"value": w}, provenance=["exact"], text=f"width = {w}")


def cmd_breadth(a, p, budget) -> RunReport:
    P = load_poset(a.source)
    rep = RunReport("breadth", {"source": a.source})
    try:
        b = breadth(P, budget)
    except BudgetExceeded as exc:
        return _timeout(rep, exc)
    rep.result, rep.provenance, rep.text = {"value": b}, ["exact"], f"breadth = {b}"
    return rep


def cmd_kur(a, p, budget) -> RunReport:
    P = load_poset(a.source)
    iv = kur_bounds(P, budget, gch=_flag(p, "gch"))
    text = f"kur in {iv}  lo by {', '.join(iv.lo_provenance)}; hi by {', '.join(iv.hi_provenance)}"
    if iv.conditional:
        text += "  (assuming GCH)"
    return RunReport("kur", {"source": a.source, **p}, iv.as_dict(),
                     provenance=sorted(set(iv.lo_provenance + iv.hi_provenance)), text=text)


def _spec(p: dict) -> CubeSpec:
    m = _need_int(p, "m")
    if "levels" in p:
        try:
            levels = [int(t) for t in p["levels"].split(",")]
        except ValueError as exc:
            raise ParseError(f"bad levels {p['levels']!r}") from exc
        return CubeSpec.with_levels(m, levels)
    return CubeSpec.up_to(m, _need_int(p, "r"))


def cmd_cube(a, p, budget) -> RunReport:
    spec = _spec(p)
    P = build_cube(spec)
    J = join_irreducibles(P)
    res = {
        "spec": spec.uri(),
        "size": P.n,
        "join_irreducibles": len(J),
        "width_J": width(subposet(P, J)) if J else 0,
        "elements": [P.label(i) for i in range(P.n)],
    }
    prov = ["exact"]
    try:
        res["breadth"] = breadth(P, budget)
    except BudgetExceeded:
        res["breadth"] = None
    if spec.upto is not None and spec.upto < spec.m:
        m, r = spec.m, spec.upto
        res["furedi_kahn"] = estimates.furedi_kahn_min_d(m, r)
        res["dushnik"] = estimates.dushnik_dim(m, r + 1) if m >= 4 else None
        prov += ["furedi-kahn", "dushnik"]
    lines = [f"{spec}: {P.n} elements, {len(J)} join-irreducible, breadth {res['breadth']}, width of J {res['width_J']}"]
    if "furedi_kahn" in res:
        lines.append(f"Furedi-Kahn dimension bound {res['furedi_kahn']}, Dushnik value {res['dushnik']}")
    return RunReport("cube", p, res, provenance=prov, text="\n".join(lines))


def cmd_relations(a, p, budget) -> RunReport:
    pairs = [(_need_int(p, "m"), _need_int(p, "r"))] if ("m" in p or "r" in p) else HEADLINE
    rows = []
    for m, r in pairs:
        rel = estimates.best_relation(m, r, budget)
        cands = estimates.relation_candidates(m, r, budget)
        row = rel.as_dict()
        row["m"] = m
        row["candidates"] = {c.tag: c.value for c in cands}
        rows.append(row)
    text = "\n".join(f"{row['aleph']}  [{row['provenance']}]" for row in rows)
    return RunReport("relations", p, rows, provenance=sorted({row["provenance"] for row in rows}), text=text)


def cmd_table_e(a, p, budget) -> RunReport:
    r, nmax = _need_int(p, "r"), _need_int(p, "nmax")
    rows = estimates.table_e(r, nmax)
    res = [{"n": n, "E_exponent": e.exponent, "E": int(e) if e.exponent <= 64 else e.render()} for n, e in rows]
    return RunReport("table-e", p, res, provenance=["spencer"], text=estimates.format_table_e(rows, r))


def cmd_fk(a, p, budget) -> RunReport:
    m, r = _need_int(p, "m"), _need_int(p, "r")
    d = estimates.furedi_kahn_min_d(m, r)
    return RunReport("fk", p, {"value": d}, provenance=["furedi-kahn"], text=f"dim B_{m}(<={r}) <= {d}")


def cmd_dushnik(a, p, budget) -> RunReport:
    m, k = _need_int(p, "m"), _need_int(p, "k")
    d = estimates.dushnik_dim(m, k)
    text = f"dim B_{m}(1,{k - 1}) = {d}" if d is not None else f"no window covers m={m}, k={k}"
    return RunReport("dushnik", p, {"value": d}, provenance=["dushnik"], text=text)


def cmd_spencer(a, p, budget) -> RunReport:
    n, r = _need_int(p, "n"), _need_int(p, "r")
    e = estimates.e_value(n, r)
    res = {"exponent": e.exponent, "E": int(e) if e.exponent <= 64 else e.render()}
    text = f"E({n},{r}) = {e}"
    if r >= 2:
        rel = estimates.spencer_relation(n, r)
        res["relation"] = rel.as_dict()
        text += f"\n{rel.render_aleph()}"
    return RunReport("spencer", p, res, provenance=["spencer"], text=text)


def cmd_freeset(a, p, budget) -> RunReport:
    F = load_mapping(a.mapping)
    m = _need_int(p, "m")
    rep = RunReport("freeset", {"mapping": a.mapping, **p})
    try:
        H = freeset.find_free(F, m, budget)
    except BudgetExceeded as exc:
        return _timeout(rep, exc)
    rep.result = {"free_set": None if H is None else freeset.members(H)}
    rep.provenance = ["exhaustive"] if H is None else ["verified-witness"]
    rep.text = f"no {m}-element free set" if H is None else f"free set {fmt_set(H)}"
    return rep


def cmd_leadsto(a, p, budget) -> RunReport:
    P = load_poset(a.source)
    F = load_mapping(a.mapping)
    rep = RunReport("leadsto", {"source": a.source, "mapping": a.mapping})
    sh = freeset.ji_shadow_check(P, F, budget)
    rep.result = sh.as_dict()
    rep.provenance = ["verified-witness" if sh.full else "exhaustive"]
    if sh.full_timed_out or sh.ji_timed_out:
        rep.status = "timeout"
        rep.provenance = ["timeout-interval"]
    rep.text = (f"poset map: {sh.full.f if sh.full else ('timeout' if sh.full_timed_out else 'none')}\n"
                f"join-irreducible map: {sh.ji if sh.ji else ('timeout' if sh.ji_timed_out else 'none')}")
    return rep


def _config(name: str, search: Callable):
    def run(a, p, budget) -> RunReport:
        F = load_mapping(a.mapping)
        got = search(F)
        res = None if got is None else {"xi": list(got[0]), "eta": list(got[1])}
        text = "no configuration" if got is None else f"xi = {list(got[0])}, eta = {list(got[1])}"
        return RunReport(name, {"mapping": a.mapping}, res,
                         provenance=["exhaustive" if got is None else "verified-witness"], text=text)
    return run


def cmd_verify(a, p, budget) -> RunReport:
    rep = RunReport("verify", {"check": a.check, **p})
    if a.check == "dim-eq-suitable":
        m, r = _need_int(p, "m"), _need_int(p, "r")
        s = check_dim_equals_suitable(m, r, budget)
        ok = s.equal
        rep.result = {"dim": s.dim, "n_suitable": s.n_suitable}
        rep.text = f"dim B_{m}(1,{r}) = {s.dim}, N({m},{r + 1}) = {s.n_suitable}"
    elif a.check == "dim-transfer":
        m, r = _need_int(p, "m"), _need_int(p, "r")
        t = check_dim_transfer(m, r, budget)
        ok = t.passed
        rep.result = {"dim_upto": t.dim_upto, "dim_one_r": t.dim_one_r, "psi_verified": t.psi_verified}
        rep.text = f"dim B_{m}(<={r}) = {t.dim_upto}, dim B_{m}(1,{r}) = {t.dim_one_r}, psi verified: {t.psi_verified}"
    elif a.check == "bound-chain":
        if "source" not in p:
            raise ParseError("bound-chain needs source=<poset>")
        P = load_poset(p["source"])
        iv = kur_bounds(P, budget)
        d = dim_exact(P, budget).value
        J = join_irreducibles(P)
        wj = dim_upper_width(P)
        ok = iv.lo <= iv.hi <= d <= wj <= max(len(J), 1)
        rep.result = {"kur_lo": iv.lo, "kur_hi": iv.hi, "dim": d, "width_J": wj, "card_J": len(J)}
        rep.text = f"kur in {iv} <= dim {d} <= wdt J {wj} <= |J| {len(J)}"
    else:
        raise ParseError(f"unknown check {a.check!r}")
    rep.status = "ok" if ok else "fail"
    rep.provenance = ["exact"]
    rep.text += "\n" + ("PASS" if ok else "FAIL")
    return rep


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", default=argparse.SUPPRESS, help="machine-readable output")
    common.add_argument("--ms", type=float, default=argparse.SUPPRESS, help="wall-clock budget in milliseconds")
    common.add_argument("--nodes", type=int, default=argparse.SUPPRESS, help="search-node budget")

    ap = argparse.ArgumentParser(prog="kurindex", description=__doc__.split("\n\n")[0])
    ap.add_argument("--json", action="store_true", help="machine-readable output")
    ap.add_argument("--ms", type=float, default=None, help="wall-clock budget in milliseconds")
    ap.add_argument("--nodes", type=int, default=None, help="search-node budget")
    sub = ap.add_subparsers(dest="command", required=True)

    def add(name, fn, *positional, help=None):
        sp = sub.add_parser(name, parents=[common], help=help)
        for pos in positional:
            sp.add_argument(pos)
        sp.add_argument("params", nargs="*", help="key=value parameters")
        sp.set_defaults(fn=fn)

    add("dim", cmd_dim, "source", help="exact order-dimension (all=1 colours every incomparable pair)")
    add("width", cmd_width, "source", help="maximum antichain size")
    add("breadth", cmd_breadth, "source", help="breadth")
    add("kur", cmd_kur, "source", help="certified Kuratowski-index interval (gch=1 admits GCH)")
    add("cube", cmd_cube, help="describe B_m(<=r) (m= r=) or B_m(levels) (m= levels=)")
    add("relations", cmd_relations, help="strongest free-set relation for m= r= (headline list if omitted)")
    add("table-e", cmd_table_e, help="least n for each value of E(n,r): r= nmax=")
    add("fk", cmd_fk, help="Furedi-Kahn dimension bound: m= r=")
    add("dushnik", cmd_dushnik, help="Dushnik's exact dimension of B_m(1,k-1): m= k=")
    add("spencer", cmd_spencer, help="E(n,r) and its relation: n= r=")
    add("freeset", cmd_freeset, "mapping", help="search an m-element free set: m=")
    add("leadsto", cmd_leadsto, "source", "mapping", help="free embedding of a poset, full and join-irreducible searches")
    add("config-p", _config("config-p", freeset.config_search_p), "mapping", help="six-element configuration, first kind")
    add("config-q", _config("config-q", freeset.config_search_q), "mapping", help="six-element configuration, second kind")
    add("verify", cmd_verify, "check", help="dim-eq-suitable | dim-transfer | bound-chain (m= r= / source=)")
    return ap


def run(argv: list[str] | None = None) -> tuple[int, RunReport | None, str]:
    ap = build_parser()
    args = ap.parse_args(argv)
    budget = Budget(ms=args.ms, nodes=args.nodes)
    try:
        params = parse_params(args.params)
        rep = args.fn(args, params, budget)
    except BudgetExceeded as exc:
        rep = _timeout(RunReport(args.command, {"params": args.params}), exc)
    except (ParseError, KurIndexError) as exc:
        return EXIT_INPUT, None, f"error: {exc}"
    # wall time is left out so that machine output is reproducible
    rep.budget = {k: v for k, v in budget.usage().items() if k != "ms_used"}
    code = {"ok": EXIT_OK, "fail": EXIT_FAIL, "timeout": EXIT_BUDGET}[rep.status]
    out = json.dumps(rep.as_dict(), sort_keys=True) if args.json else rep.text
    return code, rep, out


def main(argv: list[str] | None = None) -> int:
    code, _, out = run(argv)
    print(out, file=sys.stderr if code == EXIT_INPUT else sys.stdout)
    return code


if __name__ == "__main__":
    sys.exit(main())

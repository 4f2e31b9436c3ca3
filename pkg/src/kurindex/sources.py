"""Reading posets and set mappings from files or named constructors.

Poset text format::

    # comment
    n=4
    0<1
    0<2
    1<3

Every ``i<j`` line is a strict relation; the order is its transitive
closure. Named constructors look like query strings: ``bm?m=4&r=2``,
``blev?m=5&levels=1,3``, ``chain?n=5``, ``antichain?n=3``, ``powerset?n=3``.
Mapping generators: ``cyclic?N=3&r=1``, ``greedy?N=6&r=2``,
``random?N=8&r=2&density=0.2&seed=1``, ``inward?N=5&r=2&seed=0``,
``empty?N=6&r=2``, ``total?N=6&r=2``, ``identity?N=4&r=2``.
"""
from __future__ import annotations

import os
from urllib.parse import parse_qsl

from . import freeset
from .cubes import CubeSpec, build_cube
from .errors import KurIndexError, ParseError
from .poset import Poset, antichain, chain, poset_from_covers, powerset


def parse_uri(text: str) -> tuple[str, dict[str, str]]:
    name, _, query = text.partition("?")
    try:
        params = dict(parse_qsl(query, keep_blank_values=True, strict_parsing=bool(query)))
    except ValueError as exc:
        raise ParseError(f"bad query in {text!r}") from exc
    return name.strip(), params


def _int(params: dict, key: str, what: str) -> int:
    if key not in params:
        raise ParseError(f"{what} needs parameter {key!r}")
    try:
        return int(params[key])
    except ValueError as exc:
        raise ParseError(f"{what}: {key}={params[key]!r} is not an integer") from exc


def _ints(text: str, what: str) -> list[int]:
    try:
        return [int(t) for t in text.split(",") if t.strip()]
    except ValueError as exc:
        raise ParseError(f"{what}: bad integer list {text!r}") from exc


def parse_poset_text(text: str) -> Poset:
    n = None
    rels = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("n="):
            if n is not None:
                raise ParseError(f"line {lineno}: second size header")
            try:
                n = int(line[2:])
            except ValueError as exc:
                raise ParseError(f"line {lineno}: bad size {line!r}") from exc
            continue
        if "<" not in line:
            raise ParseError(f"line {lineno}: expected 'i<j', got {line!r}")
        a, b = line.split("<", 1)
        try:
            rels.append((int(a), int(b)))
        except ValueError as exc:
            raise ParseError(f"line {lineno}: expected 'i<j', got {line!r}") from exc
    if n is None:
        raise ParseError("missing 'n=<count>' header")
    try:
        return poset_from_covers(n, rels)
    except KurIndexError as exc:
        raise ParseError(str(exc)) from exc


def format_poset(P: Poset) -> str:
    lines = [f"n={P.n}"] + [f"{a}<{b}" for a, b in P.covers()]
    return "\n".join(lines) + "\n"


def named_poset(text: str) -> Poset:
    name, p = parse_uri(text)
    try:
        if name == "bm":
            return build_cube(CubeSpec.up_to(_int(p, "m", name), _int(p, "r", name)))
        if name == "blev":
            if "levels" not in p:
                raise ParseError("blev needs parameter 'levels'")
            return build_cube(CubeSpec.with_levels(_int(p, "m", name), _ints(p["levels"], name)))
        if name == "chain":
            return chain(_int(p, "n", name))
        if name == "antichain":
            return antichain(_int(p, "n", name))
        if name == "powerset":
            return powerset(_int(p, "n", name))
    except ParseError:
        raise
    except KurIndexError as exc:
        raise ParseError(f"{text}: {exc}") from exc
    raise ParseError(f"unknown poset constructor {name!r}")


def load_poset(source: str) -> Poset:
    """A file path, or else a named constructor."""
    if os.path.isfile(source):
        with open(source, encoding="utf-8") as fh:
            return parse_poset_text(fh.read())
    return named_poset(source)


_GENERATORS = {"cyclic", "greedy", "random", "inward", "empty", "total", "identity"}


def named_mapping(text: str) -> freeset.SetMapping:
    name, p = parse_uri(text)
    if name not in _GENERATORS:
        raise ParseError(f"unknown mapping generator {name!r}")
    N = _int(p, "N", name)
    r = int(p.get("r", 1)) if name == "cyclic" else _int(p, "r", name)
    seed = int(p["seed"]) if "seed" in p else None
    if name == "cyclic":
        return freeset.cyclic_mapping(N, r)
    if name == "greedy":
        return freeset.greedy_mapping(N, r)
    if name == "random":
        try:
            density = float(p.get("density", 0.2))
        except ValueError as exc:
            raise ParseError(f"bad density {p['density']!r}") from exc
        return freeset.random_mapping(N, r, density, seed)
    if name == "inward":
        return freeset.inward_mapping(N, r, seed)
    if name == "empty":
        return freeset.empty_mapping(N, r)
    if name == "total":
        return freeset.constant_mapping(N, r)
    return freeset.identity_mapping(N, r)


def load_mapping(source: str) -> freeset.SetMapping:
    if os.path.isfile(source):
        with open(source, encoding="utf-8") as fh:
            return freeset.loads_mapping(fh.read())
    return named_mapping(source)

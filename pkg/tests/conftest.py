import numpy as np
import pytest

from kurindex import _jit, kernels
from kurindex.poset import Poset, from_le


def random_poset(rng: np.random.Generator, n: int, p: float | None = None) -> Poset:
    """Transitive closure of a random DAG on ``0..n-1`` (edges go upward)."""
    p = rng.uniform(0.1, 0.7) if p is None else p
    adj = np.triu(rng.random((n, n)) < p, 1)
    le = adj | np.eye(n, dtype=bool)
    for k in range(n):
        le |= le[:, [k]] & le[[k], :]
    perm = rng.permutation(n)
    le = le[np.ix_(perm, perm)]
    return from_le(le)


def random_lattice_like(rng: np.random.Generator, n_gen: int) -> Poset:
    """Join-closure of random down-sets of a small poset, ordered by inclusion."""
    base = random_poset(rng, n_gen)
    downs = [frozenset(np.nonzero(base.le[:, a])[0].tolist()) for a in range(n_gen)]
    fam = {frozenset()}
    frontier = set(downs)
    while frontier:
        fam |= frontier
        frontier = {a | b for a in fam for b in fam} - fam
    elems = sorted(fam, key=lambda s: (len(s), sorted(s)))
    le = np.array([[a <= b for b in elems] for a in elems])
    return from_le(le)


KERNEL_NAMES = [
    "reflexive_transitive_closure",
    "max_bipartite_matching",
    "breadth_step",
    "color_step",
    "cover_step",
    "embed_step",
]


@pytest.fixture
def pure_kernels(monkeypatch):
    """Route every kernel through its uncompiled body."""
    for name in KERNEL_NAMES + ["_is_breadth_witness"]:
        monkeypatch.setattr(kernels, name, _jit.py_func(getattr(kernels, name)))
    yield


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)

"""Directed multigraphs G^X, the DFS burning algorithm and its tree inverse."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from itertools import combinations, product
from typing import Iterable, Optional, Sequence

import numpy as np

from .arrangement import COXETER, SHI, ArrangementSpec, LimitExceeded, build_arrangement
from .exact import IntMatrix, det_fraction_free

DEFAULT_ARBORESCENCE_LIMIT = 9


@dataclass(frozen=True, order=True)
class ArcId:
    tail: int
    head: int
    copy: int = 1

    def __str__(self):
        return f"({self.tail},{self.head}_{self.copy})"

    def as_list(self) -> list:
        return [self.tail, self.head, self.copy]


@dataclass(frozen=True)
class DirectedMultigraph:
    """Vertices ``0..n`` (augmented) or ``1..n``; arcs as a sorted multiset of pairs."""

    vertices: tuple
    arcs: tuple

    def __post_init__(self):
        vs = set(self.vertices)
        for t, h in self.arcs:
            if t == h:
                raise ValueError(f"loop at {t}")
            if t not in vs or h not in vs:
                raise ValueError(f"arc ({t},{h}) leaves the vertex set")
        object.__setattr__(self, "arcs", tuple(sorted(self.arcs)))

    @property
    def n(self) -> int:
        return max(self.vertices)

    def multiplicity(self, tail: int, head: int) -> int:
        return sum(1 for a in self.arcs if a == (tail, head))

    def out_count(self, tail: int, heads: Iterable[int]) -> int:
        heads = set(heads)
        return sum(1 for t, h in self.arcs if t == tail and h in heads)


def graph_of_arrangement(spec: ArrangementSpec) -> DirectedMultigraph:
    """C_ij -> (i, j); S_ij -> (j, i); I_ij -> (j, 1)."""
    arcs = []
    for h in build_arrangement(spec):
        if h.kind == COXETER:
            arcs.append((h.i, h.j))
        elif h.kind == SHI:
            arcs.append((h.j, h.i))
        else:
            arcs.append((h.j, 1))
    return DirectedMultigraph(tuple(range(1, spec.n + 1)), tuple(arcs))


@dataclass(frozen=True)
class AugmentedGraph:
    """The graph with source 0, every arc reversed, and ordered neighbour lists.

    ``neighbors[v]`` lists the arcs leaving v: heads descending, parallel
    copies adjacent in increasing copy index.
    """

    n: int
    neighbors: tuple

    @property
    def arcs(self) -> tuple:
        return tuple(a for nb in self.neighbors for a in nb)

    def heads(self, v: int) -> tuple:
        return tuple(a.head for a in self.neighbors[v])

    def in_arcs(self, v: int) -> tuple:
        return tuple(a for a in self.arcs if a.head == v)

    def multiplicity_matrix(self) -> np.ndarray:
        m = np.zeros((self.n + 1, self.n + 1), dtype=np.int64)
        for a in self.arcs:
            m[a.tail, a.head] += 1
        return m


def augmented_graph(g: DirectedMultigraph) -> AugmentedGraph:
    n = g.n
    pairs = Counter((0, i) for i in range(1, n + 1))
    pairs.update((h, t) for t, h in g.arcs)
    neighbors = []
    for v in range(n + 1):
        arcs = []
        for head in range(n, 0, -1):
            for c in range(1, pairs.get((v, head), 0) + 1):
                arcs.append(ArcId(v, head, c))
        neighbors.append(tuple(arcs))
    return AugmentedGraph(n, tuple(neighbors))


def augmented_of(spec: ArrangementSpec) -> AugmentedGraph:
    return augmented_graph(graph_of_arrangement(spec))


@dataclass(frozen=True)
class BurnTrace:
    burnt_vertices: tuple
    tree_edges: tuple
    dampened_edges: tuple
    fits: bool

    def as_json(self) -> dict:
        return {"burnt_vertices": list(self.burnt_vertices),
                "tree_edges": [a.as_list() for a in self.tree_edges],
                "dampened_edges": [a.as_list() for a in self.dampened_edges],
                "fits": self.fits}


def dfs_burn(gbar: AugmentedGraph, a: Sequence[int]) -> BurnTrace:
    """Run the DFS burning algorithm from vertex 0 on a copy of ``a``."""
    if len(a) != gbar.n or any(v < 0 for v in a):
        raise ValueError(f"need {gbar.n} non-negative entries, got {tuple(a)}")
    work = [None] + list(a)
    burnt = [0]
    is_burnt = [True] + [False] * gbar.n
    tree, dampened = [], []

    def dfs_from(i):
        for arc in gbar.neighbors[i]:
            j = arc.head
            if is_burnt[j]:
                continue
            if work[j] == 0:
                tree.append(arc)
                burnt.append(j)
                is_burnt[j] = True
                dfs_from(j)
            else:
                dampened.append(arc)
                work[j] -= 1

    dfs_from(0)
    return BurnTrace(tuple(burnt), tuple(tree), tuple(dampened), len(burnt) == gbar.n + 1)


def fits(gbar: AugmentedGraph, a: Sequence[int]) -> bool:
    return dfs_burn(gbar, a).fits


def is_parking_definition(g: DirectedMultigraph, a: Sequence[int]) -> bool:
    """Every nonempty I within [n] has i in I with #arcs i -> [n] \\ I at least a(i)."""
    n = g.n
    out = {}
    for t, h in g.arcs:
        out.setdefault(t, []).append(h)
    verts = range(1, n + 1)
    for size in range(1, n + 1):
        for subset in combinations(verts, size):
            inside = set(subset)
            if not any(sum(1 for h in out.get(i, ()) if h not in inside) >= a[i - 1]
                       for i in subset):
                return False
    return True


class NotAnArborescence(ValueError):
    pass


def is_arborescence(gbar: AugmentedGraph, tree: Iterable[ArcId]) -> bool:
    tree = set(tree)
    arcs = set(gbar.arcs)
    if not tree <= arcs:
        return False
    parent = {}
    for a in tree:
        if a.head == 0 or a.head in parent:
            return False
        parent[a.head] = a.tail
    if set(parent) != set(range(1, gbar.n + 1)):
        return False
    for v in parent:
        seen = set()
        while v != 0:
            if v in seen:
                return False
            seen.add(v)
            v = parent[v]
    return True


def tree_to_parking(gbar: AugmentedGraph, tree: Iterable[ArcId]) -> tuple:
    """Inverse of the burning algorithm: non-tree arcs reaching unburnt vertices count."""
    tree = frozenset(tree)
    if not is_arborescence(gbar, tree):
        raise NotAnArborescence(f"{sorted(map(str, tree))} is not a spanning arborescence from 0")
    a = [0] * (gbar.n + 1)
    is_burnt = [True] + [False] * gbar.n

    def tree_from(i):
        for arc in gbar.neighbors[i]:
            j = arc.head
            if is_burnt[j]:
                continue
            if arc in tree:
                is_burnt[j] = True
                tree_from(j)
            else:
                a[j] += 1

    tree_from(0)
    return tuple(a[1:])


def laplacian(gbar: AugmentedGraph) -> IntMatrix:
    """Diagonal: arcs pointing into the vertex; off-diagonal: minus arc multiplicity."""
    m = gbar.multiplicity_matrix()
    n = gbar.n + 1
    rows = [[int(-m[i, j]) for j in range(n)] for i in range(n)]
    for i in range(n):
        rows[i][i] = int(m[:, i].sum() - m[i, i])
    return IntMatrix.from_rows(rows)


def reduced_laplacian(gbar: AugmentedGraph) -> IntMatrix:
    return laplacian(gbar).minor(0, 0)


def reduced_determinant(gbar: AugmentedGraph) -> int:
    return det_fraction_free(reduced_laplacian(gbar))


def enumerate_arborescences(gbar: AugmentedGraph, *,
                            limit: int = DEFAULT_ARBORESCENCE_LIMIT) -> list:
    """All spanning arborescences rooted at 0, one incoming arc per vertex."""
    if gbar.n + 1 > limit:
        raise LimitExceeded(f"{gbar.n + 1} vertices exceed the arborescence limit {limit}")
    incoming = [None] + [gbar.in_arcs(v) for v in range(1, gbar.n + 1)]
    parent = [0] * (gbar.n + 1)
    chosen = []
    out = []

    def reaches_root(v, upto):
        # follow parents among assigned vertices (1..upto); unassigned ones are pending
        seen = set()
        while v != 0 and v <= upto:
            if v in seen:
                return False
            seen.add(v)
            v = parent[v]
        return True

    def rec(v):
        if v > gbar.n:
            if all(reaches_root(u, gbar.n) for u in range(1, gbar.n + 1)):
                out.append(tuple(sorted(chosen)))
            return
        for arc in incoming[v]:
            parent[v] = arc.tail
            if reaches_root(v, v):
                chosen.append(arc)
                rec(v + 1)
                chosen.pop()
        parent[v] = 0

    rec(1)
    return sorted(out)


def parking_mask(gbar: AugmentedGraph, vectors: np.ndarray) -> np.ndarray:
    """Vectorised order-independent burning: True where everything burns.

    A vertex burns once the arcs from the burnt set into it outnumber its
    value; this reaches the same final burnt set as the DFS version.
    """
    # float32 matmul is exact here (small integers) and much faster than int64
    m = gbar.multiplicity_matrix().astype(np.float32)
    vectors = np.asarray(vectors, dtype=np.float32)
    n = gbar.n
    burnt = np.zeros((vectors.shape[0], n + 1), dtype=np.float32)
    burnt[:, 0] = 1
    count = -1
    for _ in range(n):
        # supply only grows with the burnt set, so this never un-burns
        now = (burnt @ m)[:, 1:] > vectors
        burnt[:, 1:] = now
        c = int(now.sum())
        if c == count:
            break
        count = c
    return burnt[:, 1:].all(axis=1)


def all_vectors(n: int, top: int) -> np.ndarray:
    """Every vector in {0, ..., top-1}^n, lexicographic."""
    grids = np.indices((top,) * n, dtype=np.int8).reshape(n, -1).T
    return np.ascontiguousarray(grids)


def enumerate_parking_functions(gbar: AugmentedGraph, *, method: str = "dfs") -> list:
    """All a in {0..n-1}^n that fit; ``method`` is ``"dfs"`` or ``"vectorized"``."""
    n = gbar.n
    if method == "dfs":
        return [a for a in product(range(n), repeat=n) if fits(gbar, a)]
    if method == "vectorized":
        vs = all_vectors(n, n)
        return [tuple(int(v) for v in row) for row in vs[parking_mask(gbar, vs)]]
    raise ValueError(f"unknown method {method!r}")

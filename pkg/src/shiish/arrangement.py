"""The arrangements A^X, their regions and Pak-Stanley labels.

Every hyperplane is a difference condition ``x_p - x_q = c`` with ``p < q``,
so all of them contain the direction (1, ..., 1).  Regions are found in the
transversal ``x_n = 0`` and reported as points of R^n with last coordinate 0.

A hyperplane's positive side is ``x_p - x_q - c > 0``.  The base region
``x_n + 1 > x_1 > ... > x_n`` is positive on every Coxeter hyperplane and
negative on every other one, so "H separates R from R_0" is a plain sign
comparison.
"""

from __future__ import annotations

from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Optional

from .exact import GT, LT, Constraint, feasible_strict

COXETER, SHI, ISH = "C", "S", "I"
DEFAULT_REGION_LIMIT = 6


class LimitExceeded(ValueError):
    pass


@dataclass(frozen=True)
class ArrangementSpec:
    """Dimension ``n`` and the canonical Shi-index set ``X`` within {2, ..., n-1}.

    Index 1 is accepted and dropped (I_1j coincides with S_1j), as is ``n``
    (no hyperplane has first index n).
    """

    n: int
    shi_set: frozenset = field(default_factory=frozenset)

    def __post_init__(self):
        if self.n < 3:
            raise ValueError(f"A^X needs n >= 3, got {self.n}")
        xs = frozenset(int(i) for i in self.shi_set)
        bad = sorted(i for i in xs if not 1 <= i <= self.n)
        if bad:
            raise ValueError(f"indices {bad} outside [1, {self.n}]")
        object.__setattr__(self, "shi_set", frozenset(i for i in xs if 1 < i < self.n))

    @classmethod
    def shi(cls, n: int) -> "ArrangementSpec":
        return cls(n, frozenset(range(2, n)))

    @classmethod
    def ish(cls, n: int) -> "ArrangementSpec":
        return cls(n, frozenset())

    @classmethod
    def between(cls, k: int, n: int) -> "ArrangementSpec":
        """X = (k, n) = {k+1, ..., n-1}."""
        if not 1 <= k < n:
            raise ValueError(f"need 1 <= k < n, got k={k}, n={n}")
        return cls(n, frozenset(range(k + 1, n)))

    @property
    def x(self) -> tuple:
        return tuple(sorted(self.shi_set))

    def k_form(self) -> Optional[int]:
        """The k with X = (k, n), or None when X is not an upper interval."""
        for k in range(1, self.n):
            if self.shi_set == frozenset(range(k + 1, self.n)):
                return k
        return None

    def __str__(self):
        return f"A^{{{','.join(map(str, self.x))}}}_{self.n}"


def all_specs(n: int) -> list:
    """Every canonical X within {2, ..., n-1}, in binary-counter order."""
    inner = list(range(2, n))
    out = []
    for mask in range(1 << len(inner)):
        out.append(ArrangementSpec(n, frozenset(v for b, v in enumerate(inner) if mask >> b & 1)))
    return out


@dataclass(frozen=True)
class Hyperplane:
    kind: str
    i: int
    j: int
    n: int

    @property
    def p(self) -> int:
        return 1 if self.kind == ISH else self.i

    @property
    def q(self) -> int:
        return self.j

    @property
    def constant(self) -> int:
        return {COXETER: 0, SHI: 1, ISH: self.i}[self.kind]

    @property
    def normal(self) -> tuple:
        a = [0] * self.n
        a[self.p - 1] += 1
        a[self.q - 1] -= 1
        return tuple(a)

    @property
    def contribution(self) -> int:
        """Label coordinate incremented when this hyperplane is crossed away from R_0."""
        return self.i if self.kind == COXETER else self.j

    @property
    def base_sign(self) -> str:
        return "+" if self.kind == COXETER else "-"

    def value(self, x) -> Fraction:
        return x[self.p - 1] - x[self.q - 1] - self.constant

    def __str__(self):
        rhs = f"x{self.q}" + (f" + {self.constant}" if self.constant else "")
        return f"{self.kind}{self.i}{self.j}: x{self.p} = {rhs}"


def build_arrangement(spec: ArrangementSpec) -> tuple:
    n = spec.n
    pairs = [(i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1)]
    shi_rows = {1} | spec.shi_set
    out = [Hyperplane(COXETER, i, j, n) for i, j in pairs]
    out += [Hyperplane(SHI, i, j, n) for i, j in pairs if i in shi_rows]
    out += [Hyperplane(ISH, i, j, n) for i, j in pairs if i not in shi_rows]
    return tuple(out)


@dataclass(frozen=True)
class Region:
    signs: str
    witness: tuple

    def sign_at(self, k: int) -> str:
        return self.signs[k]


def sign_vector(hyperplanes, x) -> str:
    out = []
    for h in hyperplanes:
        v = h.value(x)
        if v == 0:
            raise ValueError(f"point lies on {h}")
        out.append("+" if v > 0 else "-")
    return "".join(out)


def _reduced_constraint(h: Hyperplane, sign: str) -> Constraint:
    # drop x_n (fixed to 0)
    return Constraint(h.normal[:-1], GT if sign == "+" else LT, Fraction(h.constant))


def region_system(hyperplanes, signs: str, skip: Optional[int] = None) -> list:
    return [_reduced_constraint(h, s)
            for k, (h, s) in enumerate(zip(hyperplanes, signs)) if k != skip]


def _lift(x) -> tuple:
    return tuple(x) + (Fraction(0),)


def is_region(hyperplanes, signs: str) -> Optional[tuple]:
    """Witness of the open cell with the given signs, or None if it is empty."""
    n = hyperplanes[0].n
    x = feasible_strict(region_system(hyperplanes, signs), dim=n - 1)
    return None if x is None else _lift(x)


def base_region(spec: ArrangementSpec) -> Region:
    hs = build_arrangement(spec)
    signs = "".join(h.base_sign for h in hs)
    w = is_region(hs, signs)
    assert w is not None
    return Region(signs, w)


def _split(args):
    hyperplanes, k, cells = args
    h = hyperplanes[k]
    dim = h.n - 1
    out = []
    for signs, w in cells:
        v = h.value(_lift(w))
        base = region_system(hyperplanes[:k], signs)
        for s in "+-":
            if (v > 0 and s == "+") or (v < 0 and s == "-"):
                out.append((signs + s, w))
                continue
            x = feasible_strict(base + [_reduced_constraint(h, s)], dim=dim)
            if x is not None:
                out.append((signs + s, x))
    return out


def _chunks(seq, k):
    size = max(1, -(-len(seq) // k))
    return [seq[i:i + size] for i in range(0, len(seq), size)]


def enumerate_regions(spec: ArrangementSpec, *, limit: int = DEFAULT_REGION_LIMIT,
                      jobs: int = 1) -> list:
    """All regions of A^X, sorted by sign string.

    Hyperplanes are inserted one at a time; each current cell is split by
    testing the side its witness does not already certify.
    """
    if spec.n > limit:
        raise LimitExceeded(f"n={spec.n} exceeds the region-enumeration limit {limit}")
    hs = build_arrangement(spec)
    cells = [("", tuple(Fraction(0) for _ in range(spec.n - 1)))]
    pool = ProcessPoolExecutor(jobs) if jobs > 1 else None
    try:
        for k in range(len(hs)):
            if pool is None:
                cells = _split((hs, k, cells))
            else:
                parts = pool.map(_split, [(hs, k, c) for c in _chunks(cells, jobs)])
                cells = [c for part in parts for c in part]
    finally:
        if pool is not None:
            pool.shutdown()
    return sorted((Region(s, _lift(w)) for s, w in cells), key=lambda r: r.signs)


def separating(region: Region, spec: ArrangementSpec) -> list:
    hs = build_arrangement(spec)
    if len(region.signs) != len(hs):
        raise ValueError(f"sign vector of length {len(region.signs)} for {len(hs)} hyperplanes")
    return [h for h, s in zip(hs, region.signs) if s != h.base_sign]


def pak_stanley_label(region: Region, spec: ArrangementSpec) -> tuple:
    """Coordinate m counts the hyperplanes separating the region from R_0
    whose contribution index is m (C_ij -> i, S_ij and I_ij -> j)."""
    label = [0] * spec.n
    for h in separating(region, spec):
        label[h.contribution - 1] += 1
    return tuple(label)


def original_pak_stanley_label(region: Region, spec: ArrangementSpec) -> tuple:
    """The original labeling of the Shi arrangement: C_ij -> j, S_ij -> i."""
    if spec.shi_set != ArrangementSpec.shi(spec.n).shi_set:
        raise ValueError("the original labeling is defined for the Shi arrangement only")
    label = [0] * spec.n
    for h in separating(region, spec):
        label[(h.j if h.kind == COXETER else h.i) - 1] += 1
    return tuple(label)


def label_census(spec: ArrangementSpec, regions: Optional[list] = None) -> tuple:
    """``(Counter label -> multiplicity, bijective)``."""
    if regions is None:
        regions = enumerate_regions(spec)
    counts = Counter(pak_stanley_label(r, spec) for r in regions)
    return counts, all(v == 1 for v in counts.values())


@dataclass(frozen=True)
class Adjacency:
    near: int   # index of the region on R_0's side of the wall
    far: int
    wall: int   # hyperplane index


def _wall_system(hyperplanes, signs, k):
    """Strict system on the wall ``x_p - x_q = c`` of hyperplane k, with x_p eliminated."""
    h = hyperplanes[k]
    n = h.n
    p, q, c = h.p - 1, h.q - 1, h.constant
    free = [i for i in range(n) if i != p]
    out = []
    for idx, (g, s) in enumerate(zip(hyperplanes, signs)):
        if idx == k:
            continue
        a = list(g.normal)
        const = Fraction(g.constant)
        if a[p]:
            # x_p = x_q + c
            const -= a[p] * c
            a[q] += a[p]
            a[p] = 0
        coeffs = tuple(a[i] for i in free)
        if not any(coeffs):
            if (s == "+" and not 0 > const) or (s == "-" and not 0 < const):
                return None
            continue
        out.append((coeffs, GT if s == "+" else LT, const))
    return free, out


def _wall_is_open(hyperplanes, signs, k) -> bool:
    sys_ = _wall_system(hyperplanes, signs, k)
    if sys_ is None:
        return False
    free, rows = sys_
    # translation invariance on the wall: fix the last free coordinate
    pinned = [Constraint(tuple(Fraction(v) for v in co[:-1]), rel, Fraction(const))
              for co, rel, const in rows]
    if not pinned:
        return True
    return feasible_strict(pinned, dim=len(free) - 1) is not None


def region_adjacency(regions: list, spec: ArrangementSpec) -> list:
    hs = build_arrangement(spec)
    index = {r.signs: i for i, r in enumerate(regions)}
    out = []
    for i, r in enumerate(regions):
        for k, h in enumerate(hs):
            if r.signs[k] != h.base_sign:
                continue
            flipped = r.signs[:k] + ("-" if r.signs[k] == "+" else "+") + r.signs[k + 1:]
            j = index.get(flipped)
            if j is not None and _wall_is_open(hs, r.signs, k):
                out.append(Adjacency(i, j, k))
    return sorted(out, key=lambda a: (a.near, a.far, a.wall))


def chamber_order(region: Region) -> tuple:
    """Indices 1..n sorted by decreasing coordinate of the witness."""
    w = region.witness
    return tuple(sorted(range(1, len(w) + 1), key=lambda i: -w[i - 1]))


def is_relatively_bounded(region: Region, spec: ArrangementSpec) -> bool:
    """Bounded modulo (1, ..., 1) iff the spread x_top - x_bottom is bounded.

    Inside a Coxeter chamber every difference lies between 0 and the spread.
    Vertices of bounded regions solve n-1 equations x_p - x_q = c with
    0 <= c <= n-1 along a spanning tree, so their spread is at most (n-1)^2;
    a point with larger spread therefore certifies unboundedness.
    """
    hs = build_arrangement(spec)
    n = spec.n
    order = chamber_order(region)
    top, bottom = order[0], order[-1]
    a = [0] * n
    a[top - 1] += 1
    a[bottom - 1] -= 1
    probe = Constraint(tuple(Fraction(v) for v in a[:-1]), GT, Fraction((n - 1) ** 2))
    return feasible_strict(region_system(hs, region.signs) + [probe], dim=n - 1) is None


def region_records(regions: Iterable[Region], spec: ArrangementSpec) -> list:
    return [{"signs": r.signs,
             "witness": [str(v) for v in r.witness],
             "label": list(pak_stanley_label(r, spec))}
            for r in regions]

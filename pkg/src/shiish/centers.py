"""Centers, reverse centers and the counting identities built on them."""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import combinations, product
from math import comb, factorial, prod
from typing import Sequence

import numpy as np

from .arrangement import ArrangementSpec, LimitExceeded, all_specs
from .graphs import all_vectors, augmented_of, parking_mask

DEFAULT_DISTRIBUTION_LIMIT = 7
DEFAULT_SWEEP_LIMIT = 7


@dataclass(frozen=True)
class CenterResult:
    member_set: frozenset
    length: int


def reverse_center(a: Sequence[int]) -> CenterResult:
    """Largest X = {x_1 > ... > x_l} with a[x_i] < i.

    Scanning x = n, ..., 1 and keeping x whenever a[x] <= (number kept so
    far) is exact: qualifying sets are closed under union.
    """
    kept = []
    for x in range(len(a), 0, -1):
        if a[x - 1] <= len(kept):
            kept.append(x)
    return CenterResult(frozenset(kept), len(kept))


def center(b: Sequence[int]) -> CenterResult:
    """Largest X = {x_1 < ... < x_l} with b[x_i] <= i, for b in [n]^n."""
    n = len(b)
    if any(not 1 <= v <= n for v in b):
        raise ValueError(f"entries of {tuple(b)} must lie in 1..{n}")
    kept = []
    for x in range(1, n + 1):
        if b[x - 1] <= len(kept) + 1:
            kept.append(x)
    return CenterResult(frozenset(kept), len(kept))


def star_shift(a: Sequence[int]) -> tuple:
    return tuple(v + 1 for v in a)


def is_ish_parking(a: Sequence[int]) -> bool:
    n = len(a)
    return all(0 <= v <= n - 1 for v in a) and 1 in reverse_center(a).member_set


def is_classical_parking(a: Sequence[int]) -> bool:
    return all(v <= i for i, v in enumerate(sorted(a))) and min(a, default=0) >= 0


# -- vectorised forms over arrays of vectors, one vector per row -------------

def reverse_center_lengths(vs: np.ndarray) -> np.ndarray:
    vs = np.asarray(vs)
    count = np.zeros(vs.shape[0], dtype=np.int64)
    for x in range(vs.shape[1] - 1, -1, -1):
        count += vs[:, x] <= count
    return count


def reverse_center_contains_one(vs: np.ndarray) -> np.ndarray:
    vs = np.asarray(vs)
    count = np.zeros(vs.shape[0], dtype=np.int64)
    for x in range(vs.shape[1] - 1, 0, -1):
        count += vs[:, x] <= count
    return vs[:, 0] <= count


def center_lengths_of_shift(vs: np.ndarray) -> np.ndarray:
    """z(a*) for each row a."""
    vs = np.asarray(vs)
    count = np.zeros(vs.shape[0], dtype=np.int64)
    for x in range(vs.shape[1]):
        count += vs[:, x] <= count
    return count


def classical_parking_mask(vs: np.ndarray) -> np.ndarray:
    s = np.sort(np.asarray(vs), axis=1)
    return (s <= np.arange(s.shape[1])).all(axis=1)


def _histogram(lengths: np.ndarray, n: int) -> tuple:
    h = np.bincount(lengths, minlength=n + 1)
    return tuple(int(v) for v in h)


def _check_limit(n, limit, allow_large):
    if n < 1:
        raise ValueError("n must be positive")
    if n > limit and not allow_large:
        raise LimitExceeded(f"n={n} exceeds the limit {limit}; pass allow_large to override")


@dataclass(frozen=True)
class DistributionVector:
    """``counts[k-1]`` = number of vectors whose (reverse) center has length k."""

    counts: tuple
    zero_length: int = 0

    @property
    def total(self) -> int:
        return sum(self.counts) + self.zero_length


def _as_distribution(hist: tuple) -> DistributionVector:
    return DistributionVector(hist[1:], hist[0])


def pf_center_distribution(n: int, *, limit: int = DEFAULT_DISTRIBUTION_LIMIT,
                           allow_large: bool = False) -> DistributionVector:
    """Classical parking functions bucketed by z(a*)."""
    _check_limit(n, limit, allow_large)
    vs = all_vectors(n, n)
    vs = vs[classical_parking_mask(vs)]
    return _as_distribution(_histogram(center_lengths_of_shift(vs), n))


def ipf_distribution(n: int, *, limit: int = DEFAULT_DISTRIBUTION_LIMIT,
                     allow_large: bool = False) -> DistributionVector:
    """Ish-parking functions bucketed by reverse-center length."""
    _check_limit(n, limit, allow_large)
    vs = all_vectors(n, n)
    vs = vs[reverse_center_contains_one(vs)]
    return _as_distribution(_histogram(reverse_center_lengths(vs), n))


def parking_reverse_center_distribution(spec: ArrangementSpec) -> DistributionVector:
    """Reverse-center lengths over the G^X-parking functions."""
    gbar = augmented_of(spec)
    n = spec.n
    hist = np.zeros(n + 1, dtype=np.int64)
    tail = all_vectors(n - 1, n)
    for first in range(n):
        # slices by leading coordinate keep memory flat at n = 8
        vs = np.hstack([np.full((tail.shape[0], 1), first, dtype=tail.dtype), tail])
        vs = vs[parking_mask(gbar, vs)]
        hist += np.bincount(reverse_center_lengths(vs), minlength=n + 1)
    return _as_distribution(tuple(int(v) for v in hist))


# -- closed forms ------------------------------------------------------------

def _weak_compositions(total: int, parts: int):
    if parts == 0:
        if total == 0:
            yield ()
        return
    if parts == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in _weak_compositions(total - first, parts - 1):
            yield (first,) + rest


def _check_range(n, r):
    if not 1 <= r <= n:
        raise ValueError(f"need 1 <= r <= n, got r={r}, n={n}")


def pf_center_count_compositions(n: int, r: int) -> int:
    """r! * sum over i_1 + ... + i_r = n - r of prod (n-m)^{i_m}."""
    _check_range(n, r)
    return factorial(r) * sum(prod((n - m) ** i for m, i in enumerate(c, start=1))
                              for c in _weak_compositions(n - r, r))


def pf_center_count_alternating(n: int, r: int) -> int:
    """r * sum_{j<r} (-1)^j C(r-1, j) (n-1-j)^(n-1)."""
    _check_range(n, r)
    return r * sum((-1) ** j * comb(r - 1, j) * (n - 1 - j) ** (n - 1) for j in range(r))


def pf_center_count_closed_form(n: int, r: int) -> int:
    a = pf_center_count_compositions(n, r)
    b = pf_center_count_alternating(n, r)
    if a != b:
        raise ArithmeticError(f"closed forms disagree at n={n}, r={r}: {a} != {b}")
    return a


def ipf_count_closed_form(n: int, k: int) -> int:
    """Count of Ish-parking functions with reverse center of length k.

    The composition sum written over placements: choose
    1 < i_{k-1} < ... < i_1 <= n; the center entries contribute k! and each of
    the j_l positions strictly between i_l and i_{l-1} has n - l choices.
    """
    _check_range(n, k)
    total = 0
    for rest in combinations(range(n, 1, -1), k - 1):
        idx = (n + 1,) + rest + (1,)
        ways = 1
        for ell in range(1, k + 1):
            gap = idx[ell - 1] - idx[ell] - 1
            ways *= (n - ell) ** gap
        total += ways
    return factorial(k) * total


def surjective_prefix_count(n: int, k: int) -> int:
    """k * #{f: [n-1] -> [n-1] whose image contains [k-1]}, by enumeration."""
    _check_range(n, k)
    need = set(range(1, k))
    m = n - 1
    return k * sum(1 for f in product(range(1, m + 1), repeat=m) if need <= set(f))


# -- rook words --------------------------------------------------------------

def _check_word(b):
    n = len(b)
    if any(not 1 <= v <= n for v in b):
        raise ValueError(f"entries of {tuple(b)} must lie in 1..{n}")


def run(b: Sequence[int]) -> int:
    _check_word(b)
    values = set(b)
    r = 0
    while r + 1 in values:
        r += 1
    return r


def is_rook_word(b: Sequence[int]) -> bool:
    return b[0] <= run(b)


def rook_r_set(b: Sequence[int]) -> frozenset:
    last = {}
    for pos, v in enumerate(b, start=1):
        last[v] = pos
    return frozenset(last[j] for j in range(1, run(b) + 1))


def rook_run_distribution(n: int) -> tuple:
    """counts[k-1] = number of rook words in [n]^n with run k."""
    counts = [0] * n
    for b in product(range(1, n + 1), repeat=n):
        if is_rook_word(b):
            counts[run(b) - 1] += 1
    return tuple(counts)


# -- the sweep over X ---------------------------------------------------------

@dataclass
class SweepReport:
    n: int
    distributions: dict = field(default_factory=dict)   # X tuple -> DistributionVector

    @property
    def all_equal(self) -> bool:
        return len({d.counts for d in self.distributions.values()}) <= 1

    @property
    def totals(self) -> dict:
        return {x: d.total for x, d in self.distributions.items()}

    def as_json(self) -> dict:
        return {"n": self.n,
                "distributions": [{"x": list(x), "by_length": list(d.counts),
                                   "zero_length": d.zero_length, "total": d.total}
                                  for x, d in self.distributions.items()],
                "all_equal": self.all_equal}


def _sweep_one(spec):
    return spec.x, parking_reverse_center_distribution(spec)


def conjecture_sweep(n: int, *, jobs: int = 1, limit: int = DEFAULT_SWEEP_LIMIT,
                     allow_large: bool = False) -> SweepReport:
    """Reverse-center-length distribution of G^X-parking functions for every X."""
    if n < 3:
        raise ValueError("the sweep needs n >= 3")
    _check_limit(n, limit, allow_large)
    specs = all_specs(n)
    if jobs > 1:
        with ProcessPoolExecutor(jobs) as pool:
            results = list(pool.map(_sweep_one, specs))
    else:
        results = [_sweep_one(s) for s in specs]
    return SweepReport(n, dict(results))

"""Valid pairs (w, I) of the Shi arrangement and the two label formulas on them.

A valid pair stands for the region with chain x_{w_1} > ... > x_{w_n}; for
positions i < j with w_i < w_j the region lies beyond x_{w_i} = x_{w_j} + 1
exactly when no interval of I contains both positions.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from fractions import Fraction
from itertools import permutations
from typing import Optional, Sequence

from .arrangement import (COXETER, ArrangementSpec, LimitExceeded, Region,
                          build_arrangement, is_region)
from .centers import center, star_shift

DEFAULT_PAIR_LIMIT = 6


class InvalidPair(ValueError):
    pass


@dataclass(frozen=True)
class ValidPair:
    w: tuple
    intervals: tuple = ()

    def __post_init__(self):
        w = tuple(int(v) for v in self.w)
        n = len(w)
        if sorted(w) != list(range(1, n + 1)):
            raise InvalidPair(f"{w} is not a permutation of 1..{n}")
        ivs = tuple(sorted((int(b), int(e)) for b, e in self.intervals))
        if len(set(ivs)) != len(ivs):
            raise InvalidPair("repeated interval")
        for b, e in ivs:
            if not 1 <= b < e <= n:
                raise InvalidPair(f"[{b},{e}] is not a proper interval of [{n}]")
            if not w[b - 1] < w[e - 1]:
                raise InvalidPair(f"w_{b} = {w[b - 1]} is not below w_{e} = {w[e - 1]}")
        for (b1, e1), (b2, e2) in zip(ivs, ivs[1:]):
            if not (b1 < b2 and e1 < e2):
                raise InvalidPair(f"[{b1},{e1}] and [{b2},{e2}] are nested")
        object.__setattr__(self, "w", w)
        object.__setattr__(self, "intervals", ivs)

    @property
    def n(self) -> int:
        return len(self.w)

    def __str__(self):
        ivs = ",".join(f"[{b},{e}]" for b, e in self.intervals)
        return f"({' '.join(map(str, self.w))}, {{{ivs}}})"


def _antichains(candidates, n, start=0, last_e=0):
    # candidates sorted by (b, e); an antichain has b and e strictly increasing
    yield ()
    for k in range(start, len(candidates)):
        b, e = candidates[k]
        if e <= last_e:
            continue
        nxt = k + 1
        while nxt < len(candidates) and candidates[nxt][0] == b:
            nxt += 1
        for rest in _antichains(candidates, n, nxt, e):
            yield ((b, e),) + rest


def enumerate_valid_pairs(n: int, *, limit: int = DEFAULT_PAIR_LIMIT) -> list:
    if n < 1:
        raise ValueError("n must be positive")
    if n > limit:
        raise LimitExceeded(f"n={n} exceeds the valid-pair limit {limit}")
    out = []
    for w in permutations(range(1, n + 1)):
        cands = [(b, e) for b in range(1, n + 1) for e in range(b + 1, n + 1)
                 if w[b - 1] < w[e - 1]]
        for ivs in _antichains(cands, n):
            out.append(ValidPair(w, ivs))
    return out


def interval_bounds(p: ValidPair) -> tuple:
    """(e, b): e[i] = max e over intervals containing i, b[j] = min b; defaults i and j."""
    n = p.n
    e = list(range(n + 1))
    b = list(range(n + 1))
    for lo, hi in p.intervals:
        for k in range(lo, hi + 1):
            e[k] = max(e[k], hi)
            b[k] = min(b[k], lo)
    return tuple(e[1:]), tuple(b[1:])


def label_lambda(p: ValidPair) -> tuple:
    """lambda(w, I, w_i) = n - i - #{j : i < j <= e_i, w_i < w_j}."""
    n, w = p.n, p.w
    e, _ = interval_bounds(p)
    out = [0] * n
    for i in range(1, n + 1):
        wi = w[i - 1]
        out[wi - 1] = n - i - sum(1 for j in range(i + 1, e[i - 1] + 1) if wi < w[j - 1])
    return tuple(out)


def label_ell(p: ValidPair) -> tuple:
    """ell(w, I, w_j) = j - 1 - #{i : b_j <= i < j, w_i < w_j}."""
    n, w = p.n, p.w
    _, b = interval_bounds(p)
    out = [0] * n
    for j in range(1, n + 1):
        wj = w[j - 1]
        out[wj - 1] = j - 1 - sum(1 for i in range(b[j - 1], j) if w[i - 1] < wj)
    return tuple(out)


def tilde(p: ValidPair) -> ValidPair:
    n = p.n
    return ValidPair(tuple(n + 1 - v for v in reversed(p.w)),
                     tuple((n + 1 - e, n + 1 - b) for b, e in p.intervals))


def _covered(p: ValidPair, i: int, j: int) -> bool:
    return any(b <= i and j <= e for b, e in p.intervals)


def region_signs(p: ValidPair) -> str:
    """Sign string of the pair's region over the Shi arrangement's hyperplanes."""
    n = p.n
    pos = {v: k for k, v in enumerate(p.w, start=1)}
    out = []
    for h in build_arrangement(ArrangementSpec.shi(n)):
        above = pos[h.i] < pos[h.j]          # x_i > x_j
        if h.kind == COXETER:
            out.append("+" if above else "-")
        else:
            lo, hi = sorted((pos[h.i], pos[h.j]))
            out.append("+" if above and not _covered(p, lo, hi) else "-")
    return "".join(out)


def region_of_valid_pair(p: ValidPair) -> Region:
    """The region as a sign vector plus witness; an empty cell is an error."""
    if p.n < 3:
        raise ValueError("regions are built for n >= 3")
    signs = region_signs(p)
    w = is_region(build_arrangement(ArrangementSpec.shi(p.n)), signs)
    if w is None:
        raise ArithmeticError(f"valid pair {p} gives an empty cell")
    return Region(signs, w)


def negate_reverse_point(x: Sequence) -> tuple:
    return tuple(-Fraction(v) for v in reversed(x))


@lru_cache(maxsize=None)
def _ell_table(n: int) -> dict:
    table = {}
    for p in enumerate_valid_pairs(n):
        a = label_ell(p)
        if a in table:
            raise ArithmeticError(f"label {a} hit twice: {table[a]} and {p}")
        table[a] = p
    return table


def _intervals_from_starts(bs: Sequence[int]) -> tuple:
    last = {}
    for j, beta in enumerate(bs, start=1):
        last[beta] = j
    return tuple(sorted((beta, e) for beta, e in last.items() if e > beta))


def search_ell_preimages(a: Sequence[int]) -> list:
    """Every valid pair with ell-label ``a``, by pruned search over positions.

    Antichains correspond to non-decreasing sequences b_1 <= ... <= b_n with
    b_j <= j (b_j the leftmost start of an interval covering j), and the
    ell-entry at w_j depends only on w_1..w_j and b_j, so each partial
    choice is checked as soon as it is made.
    """
    n = len(a)
    w, bs, used = [], [], [False] * (n + 1)
    found = []

    def rec(j, bmin):
        if j > n:
            ivs = _intervals_from_starts(bs)
            if all(w[b - 1] < w[e - 1] for b, e in ivs):
                found.append(ValidPair(tuple(w), ivs))
            return
        for v in range(1, n + 1):
            if used[v]:
                continue
            for bj in range(bmin, j + 1):
                if j - 1 - sum(1 for i in range(bj, j) if w[i - 1] < v) != a[v - 1]:
                    continue
                used[v] = True
                w.append(v)
                bs.append(bj)
                rec(j + 1, bj)
                bs.pop()
                w.pop()
                used[v] = False

    rec(1, 1)
    return found


def invert_ell(a: Sequence[int], n: Optional[int] = None, *,
               allow_slow: bool = False) -> ValidPair:
    """The valid pair whose ell-label is ``a``.

    Up to n = 6 this is a table lookup built from all valid pairs; larger n
    needs ``allow_slow`` and runs the pruned search.
    """
    a = tuple(int(v) for v in a)
    if n is None:
        n = len(a)
    if len(a) != n:
        raise ValueError(f"label of length {len(a)} for n={n}")
    if n <= DEFAULT_PAIR_LIMIT:
        p = _ell_table(n).get(a)
        if p is None:
            raise LookupError(f"{a} is not a parking function of length {n}")
        return p
    if not allow_slow:
        raise LimitExceeded(f"n={n} > {DEFAULT_PAIR_LIMIT} needs the search path "
                             "(allow_slow, or --allow-large on the command line)")
    found = search_ell_preimages(a)
    if not found:
        raise LookupError(f"{a} is not a parking function of length {n}")
    if len(found) > 1:
        raise ArithmeticError(f"{a} has {len(found)} preimages")
    return found[0]


def pair_from_coverage(w: Sequence[int], covered) -> ValidPair:
    """The valid pair with chain ``w`` whose covered ascents are ``covered(i, j)``.

    Only ascent pairs (i < j, w_i < w_j) matter to the region; the intervals
    are the maximal [b, e] with w_b < w_e all of whose inner ascents are covered.
    """
    w = tuple(w)
    n = len(w)

    def ok(b, e):
        return all(covered(i, j) for i in range(b, e + 1) for j in range(i + 1, e + 1)
                   if w[i - 1] < w[j - 1])

    good = [(b, e) for b in range(1, n + 1) for e in range(b + 1, n + 1)
            if w[b - 1] < w[e - 1] and ok(b, e)]
    top = [iv for iv in good
           if not any(o != iv and o[0] <= iv[0] and iv[1] <= o[1] for o in good)]
    return ValidPair(w, top)


def bottom_pair(p: ValidPair, m: int) -> ValidPair:
    """Projection of the pair's region onto its m lowest coordinates, renumbered 1..m."""
    n = p.n
    tail = p.w[n - m:]
    rank = {v: k for k, v in enumerate(sorted(tail), start=1)}
    return pair_from_coverage(tuple(rank[v] for v in tail),
                              lambda i, j: _covered(p, n - m + i, n - m + j))


@dataclass(frozen=True)
class Reduction:
    label: tuple                  # a = lambda(w, I)
    center_set: frozenset         # X = Z(a*)
    u_prefix: tuple               # u_1 .. u_m with u = reverse(w)
    reduced_w: tuple              # x^-1 o u_prefix
    reduced_intervals: tuple      # its intervals, in the same reversed reading
    restricted_label: tuple       # a o x
    reduced_label: tuple          # lambda of the reduced pair
    same_set: bool
    labels_match: bool


def reduction_step(p: ValidPair) -> Reduction:
    """Restrict lambda(p) to the center of its shift and compare with the
    lambda-label of the smaller pair cut from the reversed reading.

    The reduced pair (x^-1 o u', J') is read right to left, like u: it is the
    region cut down to the coordinates in X, whose standard form is
    ``bottom_pair(p, m)``.  Intervals of tilde(p) running past m still
    cover their part inside [m], so J' is recomputed from coverage rather
    than by dropping those intervals.
    """
    a = label_lambda(p)
    z = center(star_shift(a))
    xs = tuple(sorted(z.member_set))
    m = len(xs)
    u = tuple(reversed(p.w))
    u_prefix = u[:m]
    same_set = set(u_prefix) == set(xs)
    restricted = tuple(a[x - 1] for x in xs)
    if not same_set:
        return Reduction(a, z.member_set, u_prefix, (), (), restricted, (), False, False)
    rank = {x: k for k, x in enumerate(xs, start=1)}
    reduced_w = tuple(rank[v] for v in u_prefix)
    standard = bottom_pair(p, m)
    reduced_ivs = tuple(sorted((m + 1 - e, m + 1 - b) for b, e in standard.intervals))
    reduced_label = label_lambda(standard)
    return Reduction(a, z.member_set, u_prefix, reduced_w, reduced_ivs, restricted,
                     reduced_label, same_set, reduced_label == restricted)

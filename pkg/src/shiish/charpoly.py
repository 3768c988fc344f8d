"""Characteristic polynomials of A^X by counting points over prime fields."""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Sequence

from .arrangement import ArrangementSpec, LimitExceeded, build_arrangement
from .exact import IntPoly, interpolate_int_poly

DEFAULT_CHARPOLY_LIMIT = 6


def is_prime(q: int) -> bool:
    if q < 2:
        return False
    if q % 2 == 0:
        return q == 2
    f = 3
    while f * f <= q:
        if q % f == 0:
            return False
        f += 2
    return True


def primes_above(bound: int, count: int) -> list:
    out = []
    q = bound + 1
    while len(out) < count:
        if is_prime(q):
            out.append(q)
        q += 1
    return out


def _constraints_by_level(hyperplanes, n):
    """For each coordinate j (0-based) the pairs (p, c): x_j != x_p - c (mod q), p < j."""
    levels = [[] for _ in range(n)]
    for h in hyperplanes:
        levels[h.q - 1].append((h.p - 1, h.constant))
    return levels


def _count_slice(args):
    levels, n, q, x2 = args
    full = (1 << q) - 1

    def forbidden(j, xs):
        mask = 0
        for p, c in levels[j]:
            mask |= 1 << ((xs[p] - c) % q)
        return mask

    xs = [0] * n

    def rec(j):
        mask = forbidden(j, xs)
        if j == n - 1:
            return q - mask.bit_count()
        allowed = full & ~mask
        total = 0
        while allowed:
            low = allowed & -allowed
            xs[j] = low.bit_length() - 1
            total += rec(j + 1)
            allowed ^= low
        return total

    if n == 1:
        return 1
    if x2 is None:
        return rec(1)
    if (forbidden(1, xs) >> x2) & 1:
        return 0
    xs[1] = x2
    return 1 if n == 2 else rec(2)


def count_points(hyperplanes: Sequence, n: int, q: int, *, jobs: int = 1) -> int:
    """Points of F_q^n off every difference hyperplane ``x_p - x_q = c``.

    Uses x_1 = 0 and multiplies by q; the x_2 slices are independent.
    """
    levels = _constraints_by_level(hyperplanes, n)
    if n <= 2 or jobs <= 1:
        return q * _count_slice((levels, n, q, None))
    with ProcessPoolExecutor(jobs) as pool:
        parts = pool.map(_count_slice, [(levels, n, q, v) for v in range(q)])
        return q * sum(parts)


@dataclass(frozen=True)
class FiniteFieldCount:
    q: int
    count: int


def count_complement_points(spec: ArrangementSpec, q: int, *, jobs: int = 1) -> FiniteFieldCount:
    if not is_prime(q):
        raise ValueError(f"{q} is not prime")
    if q <= spec.n ** 2:
        raise ValueError(f"q={q} too small; need q > n^2 = {spec.n ** 2}")
    return FiniteFieldCount(q, count_points(build_arrangement(spec), spec.n, q, jobs=jobs))


@dataclass(frozen=True)
class CharPoly:
    poly: IntPoly
    primes_used: tuple
    validated_at: int

    def as_json(self) -> dict:
        regions, bounded = zaslavsky_counts(self.poly)
        return {"chi": list(self.poly.coefficients), "pretty": str(self.poly),
                "regions": regions, "bounded": bounded,
                "primes_used": list(self.primes_used), "validated_at": self.validated_at}


class ValidationMismatch(ArithmeticError):
    pass


def compute_charpoly(spec: ArrangementSpec, *, limit: int = DEFAULT_CHARPOLY_LIMIT,
                     jobs: int = 1) -> CharPoly:
    """Interpolate at the n+1 smallest primes above n^2, then check the next prime."""
    n = spec.n
    if n > limit:
        raise LimitExceeded(f"n={n} exceeds the characteristic-polynomial limit {limit}")
    primes = primes_above(n * n, n + 2)
    samples = [(q, count_complement_points(spec, q, jobs=jobs).count) for q in primes[:-1]]
    poly = interpolate_int_poly(samples)
    check = primes[-1]
    got = count_complement_points(spec, check, jobs=jobs).count
    if poly(check) != got:
        raise ValidationMismatch(f"chi({check}) = {poly(check)} but the count is {got}")
    if poly.degree != n or poly.coefficients[-1] != 1:
        raise ValidationMismatch(f"expected a monic polynomial of degree {n}, got {poly}")
    return CharPoly(poly, tuple(primes[:-1]), check)


def characteristic_polynomial(spec: ArrangementSpec, **kw) -> IntPoly:
    return compute_charpoly(spec, **kw).poly


def zaslavsky_counts(p: IntPoly) -> tuple:
    """(regions, relatively bounded regions) = ((-1)^n p(-1), (-1)^(n-1) p(1))."""
    n = p.degree
    return (-1) ** n * p(-1), (-1) ** (n - 1) * p(1)


# -- the bijection between constrained injections and arbitrary maps ---------

def _check_map(f, a):
    if len(f) != a:
        raise ValueError(f"map must have {a} values, got {len(f)}")


def is_valid_injection(f: Sequence[int], a: int, b: int) -> bool:
    """f: [a] -> [a+b] injective with f(i) = f(j) + 1 only when i > j."""
    if len(f) != a or len(set(f)) != a or any(not 1 <= v <= a + b for v in f):
        return False
    pos = {v: i for i, v in enumerate(f)}
    return all(pos[v - 1] < i for i, v in enumerate(f) if v - 1 in pos)


def injection_to_map(f: Sequence[int], a: int, b: int) -> tuple:
    """g(i) = number of elements of [f(i)] missed by f."""
    _check_map(f, a)
    if not is_valid_injection(f, a, b):
        raise ValueError(f"{tuple(f)} is not an admissible injection [{a}] -> [{a + b}]")
    image = sorted(f)
    rank = {v: r + 1 for r, v in enumerate(image)}
    return tuple(v - rank[v] for v in f)


def map_to_injection(g: Sequence[int], a: int, b: int) -> tuple:
    """Place the blocks g^-1(0), ..., g^-1(b) consecutively in increasing
    order, leaving one empty slot after each block but the last."""
    _check_map(g, a)
    if any(not 0 <= v <= b for v in g):
        raise ValueError(f"values of {tuple(g)} must lie in 0..{b}")
    f = [0] * a
    slot = 1
    for v in range(b + 1):
        for i in range(a):
            if g[i] == v:
                f[i] = slot
                slot += 1
        slot += 1
    return tuple(f)


def admissible_injections(a: int, b: int) -> list:
    from itertools import permutations
    return [f for f in permutations(range(1, a + b + 1), a) if is_valid_injection(f, a, b)]

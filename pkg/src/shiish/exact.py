"""Exact arithmetic substrate.

Rationals are :class:`fractions.Fraction`.  Everything here works over
Python integers, so nothing is ever rounded.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Iterable, NamedTuple, Optional, Sequence


class DimensionError(ValueError):
    pass


class InterpolationError(ValueError):
    pass


@dataclass(frozen=True)
class IntMatrix:
    rows: int
    cols: int
    entries: tuple

    def __post_init__(self):
        if self.rows <= 0 or self.cols <= 0:
            raise DimensionError("matrix dimensions must be positive")
        if len(self.entries) != self.rows * self.cols:
            raise DimensionError(
                f"{len(self.entries)} entries for a {self.rows}x{self.cols} matrix")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]]) -> "IntMatrix":
        rows = [list(r) for r in rows]
        if not rows or any(len(r) != len(rows[0]) for r in rows):
            raise DimensionError("ragged or empty row list")
        return cls(len(rows), len(rows[0]), tuple(int(v) for r in rows for v in r))

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls.from_rows([[int(i == j) for j in range(n)] for i in range(n)])

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> tuple:
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def to_rows(self) -> list:
        return [list(self.row(i)) for i in range(self.rows)]

    def minor(self, drop_row: int, drop_col: int) -> "IntMatrix":
        return IntMatrix.from_rows(
            [[v for j, v in enumerate(r) if j != drop_col]
             for i, r in enumerate(self.to_rows()) if i != drop_row])


def det_fraction_free(m: IntMatrix) -> int:
    """Determinant by Bareiss elimination; every intermediate is an integer."""
    if m.rows != m.cols:
        raise DimensionError(f"determinant of a non-square {m.rows}x{m.cols} matrix")
    a = m.to_rows()
    n = m.rows
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for r in range(k + 1, n):
                if a[r][k] != 0:
                    a[k], a[r] = a[r], a[k]
                    sign = -sign
                    break
            else:
                return 0
        piv = a[k][k]
        for i in range(k + 1, n):
            aik = a[i][k]
            row_i, row_k = a[i], a[k]
            for j in range(k + 1, n):
                row_i[j] = (row_i[j] * piv - aik * row_k[j]) // prev
        prev = piv
    return sign * a[n - 1][n - 1]


@dataclass(frozen=True)
class IntPoly:
    """Integer polynomial, constant term first."""

    coefficients: tuple

    def __post_init__(self):
        c = list(self.coefficients)
        while len(c) > 1 and c[-1] == 0:
            c.pop()
        if not c:
            c = [0]
        object.__setattr__(self, "coefficients", tuple(int(v) for v in c))

    @property
    def degree(self) -> int:
        if self.coefficients == (0,):
            return -1
        return len(self.coefficients) - 1

    def __call__(self, q):
        acc = 0
        for c in reversed(self.coefficients):
            acc = acc * q + c
        return acc

    def __str__(self):
        terms = []
        for k in range(len(self.coefficients) - 1, -1, -1):
            c = self.coefficients[k]
            if c == 0:
                continue
            mag = abs(c)
            body = "" if (mag == 1 and k > 0) else str(mag)
            if k >= 1:
                body += "q" if k == 1 else f"q^{k}"
            if not terms:
                terms.append(("-" if c < 0 else "") + body)
            else:
                terms.append(("- " if c < 0 else "+ ") + body)
        return " ".join(terms) if terms else "0"

    @classmethod
    def from_roots(cls, roots: Iterable[int]) -> "IntPoly":
        coeffs = [1]
        for r in roots:
            nxt = [0] * (len(coeffs) + 1)
            for k, c in enumerate(coeffs):
                nxt[k + 1] += c
                nxt[k] -= r * c
            coeffs = nxt
        return cls(tuple(coeffs))


def interpolate_int_poly(samples: Sequence[tuple]) -> IntPoly:
    """Lagrange interpolation through ``(abscissa, value)`` pairs.

    Raises :class:`InterpolationError` on duplicated abscissas or when the
    interpolant has a non-integral coefficient.
    """
    xs = [int(x) for x, _ in samples]
    if len(set(xs)) != len(xs):
        raise InterpolationError("duplicated abscissa")
    if not xs:
        raise InterpolationError("no samples")
    total = [Fraction(0)] * len(xs)
    for i, (xi, yi) in enumerate(samples):
        basis = [Fraction(1)]
        denom = 1
        for j, xj in enumerate(xs):
            if j == i:
                continue
            nxt = [Fraction(0)] * (len(basis) + 1)
            for k, c in enumerate(basis):
                nxt[k + 1] += c
                nxt[k] -= xj * c
            basis = nxt
            denom *= xi - xj
        scale = Fraction(int(yi), denom)
        for k, c in enumerate(basis):
            total[k] += scale * c
    if any(c.denominator != 1 for c in total):
        raise InterpolationError(f"non-integral coefficients {[str(c) for c in total]}")
    return IntPoly(tuple(int(c) for c in total))


GT, LT = ">", "<"


class Constraint(NamedTuple):
    """``coeffs . x  rel  const`` with ``rel`` one of ``">"``, ``"<"``."""

    coeffs: tuple
    rel: str
    const: Fraction


def strict_system(rows) -> list:
    out = []
    dim = None
    for coeffs, rel, const in rows:
        coeffs = tuple(Fraction(c) for c in coeffs)
        if rel not in (GT, LT):
            raise ValueError(f"relation must be '>' or '<', got {rel!r}")
        if dim is None:
            dim = len(coeffs)
        elif len(coeffs) != dim:
            raise DimensionError("constraints of different dimensions")
        out.append(Constraint(coeffs, rel, Fraction(const)))
    return out


def _satisfies(c: Constraint, x) -> bool:
    v = sum(a * xi for a, xi in zip(c.coeffs, x))
    return v > c.const if c.rel == GT else v < c.const


def satisfies_all(system, x) -> bool:
    return all(_satisfies(c, x) for c in system)


def _pivot(rows, r, s, d):
    pr = rows[r]
    p = pr[s]
    for i, row in enumerate(rows):
        if i == r:
            continue
        f = row[s]
        if f:
            new = [(p * v - f * w) // d for v, w in zip(row, pr)]
        else:
            new = [(p * v) // d for v in row]
        new[s] = -f
        rows[i] = new
    pr[s] = d
    return p


def feasible_strict(system, dim: Optional[int] = None) -> Optional[tuple]:
    """Return a rational point satisfying every strict constraint, or ``None``.

    Each constraint is rewritten as ``g.x - h >= t`` and ``t <= 1`` is
    maximised by the primal simplex method with Bland's rule, on an
    integer-preserving (fraction-free) condensed tableau.  The free ``x`` is
    split as ``x+ - x-`` and ``t`` is shifted so that the all-slack basis is
    feasible.  The search stops as soon as ``t > 0`` is reached.
    """
    system = strict_system(system) if system and not isinstance(system[0], Constraint) else list(system)
    if dim is None:
        if not system:
            raise DimensionError("cannot infer dimension of an empty system")
        dim = len(system[0].coeffs)
    if not system:
        return tuple(Fraction(0) for _ in range(dim))

    # g.x - h > 0
    gs, hs = [], []
    for c in system:
        if len(c.coeffs) != dim:
            raise DimensionError("constraint dimension mismatch")
        if c.rel == GT:
            gs.append(c.coeffs)
            hs.append(c.const)
        else:
            gs.append(tuple(-a for a in c.coeffs))
            hs.append(-c.const)
    t0 = min([Fraction(1)] + [-h for h in hs])
    if t0 > 0:
        return tuple(Fraction(0) for _ in range(dim))

    # columns: x+_0, x-_0, ..., x+_{d-1}, x-_{d-1}, s   (s = t - t0)
    ncols = 2 * dim + 1
    rows = []
    for g, h in zip(gs, hs):
        # -g.x+ + g.x- + s <= -h - t0
        fr = []
        for a in g:
            fr += [-a, a]
        fr += [Fraction(1), -h - t0]
        rows.append(fr)
    rows.append([Fraction(0)] * (2 * dim) + [Fraction(1), 1 - t0])
    int_rows = []
    for fr in rows:
        m = lcm(*(v.denominator for v in fr))
        int_rows.append([int(v * m) for v in fr])
    obj = [0] * ncols + [0]
    obj[2 * dim] = -1
    int_rows.append(obj)
    rows = int_rows

    m = len(rows) - 1
    nonbasic = list(range(ncols))
    basic = list(range(ncols, ncols + m))
    d = 1
    # objective value z = rows[-1][-1] / d; feasible once z > -t0
    while True:
        objrow = rows[-1]
        if Fraction(objrow[-1], d) + t0 > 0:
            break
        enter = None
        for col in sorted(range(ncols), key=lambda c: nonbasic[c]):
            if objrow[col] < 0:
                enter = col
                break
        if enter is None:
            break
        leave = None
        for i in range(m):
            a = rows[i][enter]
            if a <= 0:
                continue
            if leave is None:
                leave = i
                continue
            lhs = rows[i][-1] * rows[leave][enter]
            rhs = rows[leave][-1] * a
            if lhs < rhs or (lhs == rhs and basic[i] < basic[leave]):
                leave = i
        if leave is None:
            raise ArithmeticError("unbounded slack program; the cap row was lost")
        d = _pivot(rows, leave, enter, d)
        basic[leave], nonbasic[enter] = nonbasic[enter], basic[leave]

    if Fraction(rows[-1][-1], d) + t0 <= 0:
        return None
    values = [Fraction(0)] * ncols
    for i, var in enumerate(basic):
        if var < ncols:
            values[var] = Fraction(rows[i][-1], d)
    x = tuple(values[2 * k] - values[2 * k + 1] for k in range(dim))
    if not satisfies_all(system, x):
        raise ArithmeticError("simplex returned a point violating a strict constraint")
    return x

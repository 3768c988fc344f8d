from fractions import Fraction

import pytest


def _fm_feasible(rows, dim):
    """Fourier-Motzkin on an all-strict system of rows (a, c) meaning a.x > c."""
    rows = [(tuple(Fraction(v) for v in a), Fraction(c)) for a, c in rows]
    for k in range(dim):
        pos = [r for r in rows if r[0][k] > 0]
        neg = [r for r in rows if r[0][k] < 0]
        out = [r for r in rows if r[0][k] == 0]
        for ap, cp in pos:
            for an, cn in neg:
                s, t = -an[k], ap[k]
                out.append((tuple(s * x + t * y for x, y in zip(ap, an)), s * cp + t * cn))
        rows = out
    return all(0 > c for _, c in rows)


def strict_rows(system):
    """Constraints as rows a.x > c."""
    out = []
    for c in system:
        if c.rel == ">":
            out.append((c.coeffs, c.const))
        else:
            out.append((tuple(-v for v in c.coeffs), -c.const))
    return out


@pytest.fixture
def fm_feasible():
    return _fm_feasible


def difference_feasible(n, constraints):
    """Strict difference system: (p, q, c, sign) means x_p - x_q > c ('+') or < c ('-').

    Feasible iff every cycle of the constraint graph has positive weight
    (Floyd-Warshall over edges x_v - x_u < w).
    """
    inf = float("inf")
    d = [[inf] * (n + 1) for _ in range(n + 1)]
    for p, q, c, s in constraints:
        if s == "+":
            # x_q - x_p < -c
            u, v, w = p, q, -c
        else:
            # x_p - x_q < c
            u, v, w = q, p, c
        d[u][v] = min(d[u][v], w)
    for k in range(1, n + 1):
        for i in range(1, n + 1):
            if d[i][k] == inf:
                continue
            for j in range(1, n + 1):
                if d[i][k] + d[k][j] < d[i][j]:
                    d[i][j] = d[i][k] + d[k][j]
    return all(d[i][i] > 0 for i in range(1, n + 1))


SHI3_LABELS = {"021", "020", "012", "120", "011", "002", "001", "000",
               "010", "110", "102", "100", "101", "200", "210", "201"}
ISH3_LABELS = (SHI3_LABELS - {"201"}) | {"022"}


def word(label):
    return "".join(map(str, label))


def pytest_terminal_summary(terminalreporter):
    from test_acceptance import RESULTS
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in RESULTS:
            terminalreporter.write_line(line)

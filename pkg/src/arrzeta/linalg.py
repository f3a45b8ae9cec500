"""Dense exact linear algebra over Fraction.

Every matrix in this package is tiny (at most a few dozen rows), so plain
fraction-valued Gaussian elimination is both fast enough and exact.
Rows are lists; matrices are lists of rows.
"""

from __future__ import annotations

from fractions import Fraction


def rref(rows: list[list[Fraction]]) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form.  Returns (nonzero rows, pivot column indices)."""
    m = [[Fraction(x) for x in row] for row in rows]
    if not m:
        return [], []
    ncols = len(m[0])
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        pr = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if pr is None:
            continue
        m[r], m[pr] = m[pr], m[r]
        inv = m[r][c]
        m[r] = [x / inv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def rank(rows: list[list[Fraction]]) -> int:
    return len(rref(rows)[0])


def residual(rref_rows: list[list[Fraction]], pivots: list[int], row) -> list[Fraction]:
    """Reduce `row` against an rref basis; zero residual means row is in the span."""
    res = [Fraction(x) for x in row]
    for rr, p in zip(rref_rows, pivots):
        if res[p] != 0:
            f = res[p]
            res = [x - f * y for x, y in zip(res, rr)]
    return res


def in_span(rref_rows, pivots, row) -> bool:
    return all(x == 0 for x in residual(rref_rows, pivots, row))


def solve(a_rows: list[list[Fraction]], b: list[Fraction]) -> list[Fraction] | None:
    """One exact solution of A x = b, or None if the system is inconsistent."""
    if not a_rows:
        return [] if all(x == 0 for x in b) else None
    ncols = len(a_rows[0])
    aug = [list(row) + [bi] for row, bi in zip(a_rows, b)]
    red, pivots = rref(aug)
    if ncols in pivots:
        return None
    x = [Fraction(0)] * ncols
    for row, p in zip(red, pivots):
        x[p] = row[-1]
    return x

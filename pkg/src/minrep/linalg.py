"""Small exact linear algebra over Fraction vectors and matrices."""

from __future__ import annotations

from fractions import Fraction as Q

Vector = tuple[Q, ...]
Matrix = tuple[tuple[Q, ...], ...]


def identity(n: int) -> Matrix:
    return tuple(tuple(Q(1) if i == j else Q(0) for j in range(n)) for i in range(n))


def matvec(m: Matrix, v: Vector) -> Vector:
    return tuple(sum((a * b for a, b in zip(row, v, strict=True)), Q(0)) for row in m)


def matmul(a: Matrix, b: Matrix) -> Matrix:
    cols = tuple(zip(*b, strict=True))
    return tuple(
        tuple(sum((x * y for x, y in zip(row, col, strict=True)), Q(0)) for col in cols)
        for row in a
    )


def solve_combination(columns: list[Vector], target: Vector) -> tuple[Q, ...] | None:
    """Solve sum_k x_k * columns[k] = target exactly.

    Columns must be linearly independent.  Returns None when target is not in
    their span.
    """
    if not columns:
        return () if all(t == 0 for t in target) else None
    nrows = len(columns[0])
    ncols = len(columns)
    # augmented rows [col_0[i], ..., col_{k-1}[i] | target[i]]
    rows = [[Q(columns[j][i]) for j in range(ncols)] + [Q(target[i])] for i in range(nrows)]
    pivots: list[tuple[int, int]] = []
    r = 0
    for c in range(ncols):
        pr = next((i for i in range(r, nrows) if rows[i][c] != 0), None)
        if pr is None:
            continue
        rows[r], rows[pr] = rows[pr], rows[r]
        pv = rows[r][c]
        rows[r] = [x / pv for x in rows[r]]
        for i in range(nrows):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivots.append((r, c))
        r += 1
    if len(pivots) != ncols:
        raise ValueError("columns are linearly dependent")
    for i in range(r, nrows):
        if rows[i][ncols] != 0:
            return None
    sol = [Q(0)] * ncols
    for pr, pc in pivots:
        sol[pc] = rows[pr][ncols]
    return tuple(sol)

"""Exact dense linear algebra over the coefficient field.

Entries are field scalars (RatFunc or Fraction); everything is plain
fraction-free-ish Gaussian elimination. Matrices are lists of lists, row
major. Sizes here stay small (a few hundred rows at most), so clarity wins
over asymptotics.
"""

from __future__ import annotations


def _is_zero(x) -> bool:
    return not x


def rref(matrix, zero, one):
    """Reduced row echelon form. Returns (rows, pivot_columns)."""
    rows = [list(r) for r in matrix]
    pivots = []
    r = 0
    ncols = len(rows[0]) if rows else 0
    for c in range(ncols):
        pivot = None
        for i in range(r, len(rows)):
            if not _is_zero(rows[i][c]):
                pivot = i
                break
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        inv = one / rows[r][c]
        rows[r] = [x * inv for x in rows[r]]
        for i in range(len(rows)):
            if i != r and not _is_zero(rows[i][c]):
                f = rows[i][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return rows, pivots


def rank(matrix, zero, one) -> int:
    if not matrix:
        return 0
    _, pivots = rref(matrix, zero, one)
    return len(pivots)


def nullspace(matrix, zero, one):
    """Basis of the right nullspace of ``matrix`` (columns = unknowns)."""
    if not matrix:
        return []
    ncols = len(matrix[0])
    rows, pivots = rref(matrix, zero, one)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        vec = [zero] * ncols
        vec[fc] = one
        for r, pc in enumerate(pivots):
            vec[pc] = -rows[r][fc]
        basis.append(vec)
    return basis


class LinearSolver:
    """Factor a matrix once, then solve A x = b for many right-hand sides.

    Stores the rref of [A | I]; each solve is a matrix-vector product with
    the recorded row transform followed by a consistency check.
    """

    def __init__(self, matrix, zero, one):
        self.zero = zero
        self.one = one
        self.nrows = len(matrix)
        self.ncols = len(matrix[0]) if matrix else 0
        aug = [list(row) + [one if i == j else zero for j in range(self.nrows)]
               for i, row in enumerate(matrix)]
        rows, pivots = rref(aug, zero, one) if matrix else ([], [])
        pivots = [p for p in pivots if p < self.ncols]
        self.pivots = pivots
        self.reduced = [row[: self.ncols] for row in rows]
        self.transform = [row[self.ncols:] for row in rows]
        self.rank = len(pivots)

    def solve(self, rhs):
        """One exact solution of A x = b (free unknowns at zero), or None
        when the system is inconsistent."""
        tb = [sum((t * b for t, b in zip(trow, rhs) if not _is_zero(b)), self.zero)
              for trow in self.transform]
        for r in range(self.rank, self.nrows):
            if not _is_zero(tb[r]):
                return None
        x = [self.zero] * self.ncols
        for r, pc in enumerate(self.pivots):
            x[pc] = tb[r]
        return x

    def solve_unique(self, rhs):
        """Solve when the matrix has full column rank; raises otherwise."""
        if self.rank != self.ncols:
            raise ValueError(f"matrix has rank {self.rank} < {self.ncols} columns")
        x = self.solve(rhs)
        if x is None:
            raise ValueError("inconsistent linear system")
        return x

"""Exact integer linear algebra: Smith normal form, determinants, and a
sparse fraction-free elimination engine for windowed homology ranks.

Everything stays in Z; no floating point anywhere.  The eliminator keeps
entries small by preferring unit pivots and dividing rows by their gcd,
which is what makes the large windowed Koszul matrices tractable.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd


#: Invariants this module promises; each must be registered in `verify`.
INVARIANT_CHECKS = (
    "snf-validity",
)


@dataclass
class IntMatrix:
    """Dense arbitrary-precision integer matrix with optional labels."""

    rows: list
    ncols: int
    row_labels: tuple | None = None
    col_labels: tuple | None = None

    def __post_init__(self):
        for row in self.rows:
            if len(row) != self.ncols:
                raise ValueError("ragged matrix")

    @classmethod
    def from_rows(cls, rows, row_labels=None, col_labels=None):
        rows = [list(r) for r in rows]
        ncols = len(rows[0]) if rows else 0
        return cls(rows, ncols, row_labels, col_labels)

    @property
    def nrows(self) -> int:
        return len(self.rows)

    @property
    def shape(self) -> tuple[int, int]:
        return (self.nrows, self.ncols)

    def copy(self) -> "IntMatrix":
        return IntMatrix([row[:] for row in self.rows], self.ncols,
                         self.row_labels, self.col_labels)

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.ncols != other.nrows:
            raise ValueError("shape mismatch")
        out = []
        for row in self.rows:
            new = [0] * other.ncols
            for k, a in enumerate(row):
                if a:
                    orow = other.rows[k]
                    for j in range(other.ncols):
                        if orow[j]:
                            new[j] += a * orow[j]
            out.append(new)
        return IntMatrix(out, other.ncols)

    def __eq__(self, other):
        if not isinstance(other, IntMatrix):
            return NotImplemented
        return self.shape == other.shape and self.rows == other.rows

    def diagonal(self) -> list[int]:
        return [self.rows[i][i] for i in range(min(self.shape))]


def identity_matrix(n: int) -> IntMatrix:
    rows = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    return IntMatrix(rows, n)


def bareiss_determinant(m: IntMatrix) -> int:
    """Fraction-free determinant; exact for any integer matrix."""
    n = m.nrows
    if n != m.ncols:
        raise ValueError("determinant needs a square matrix")
    if n == 0:
        return 1
    a = [row[:] for row in m.rows]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k]:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
            a[i][k] = 0
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def smith_normal_form(m: IntMatrix) -> tuple[IntMatrix, IntMatrix, IntMatrix]:
    """Diagonalize by unimodular row/column operations: U @ m @ V = D.

    The diagonal is nonnegative and satisfies d_1 | d_2 | ... ; U and V
    are square unimodular transforms of the row and column spaces.
    """
    a = [row[:] for row in m.rows]
    nrows, ncols = m.nrows, m.ncols
    u = [[1 if i == j else 0 for j in range(nrows)] for i in range(nrows)]
    v = [[1 if i == j else 0 for j in range(ncols)] for i in range(ncols)]

    def row_op(i1, i2, q):  # row i2 += q * row i1
        a1, a2 = a[i1], a[i2]
        for j in range(ncols):
            a2[j] += q * a1[j]
        u1, u2 = u[i1], u[i2]
        for j in range(nrows):
            u2[j] += q * u1[j]

    def col_op(j1, j2, q):  # col j2 += q * col j1
        for row in a:
            row[j2] += q * row[j1]
        for row in v:
            row[j2] += q * row[j1]

    def row_swap(i1, i2):
        a[i1], a[i2] = a[i2], a[i1]
        u[i1], u[i2] = u[i2], u[i1]

    def col_swap(j1, j2):
        for row in a:
            row[j1], row[j2] = row[j2], row[j1]
        for row in v:
            row[j1], row[j2] = row[j2], row[j1]

    def negate_row(i):
        a[i] = [-x for x in a[i]]
        u[i] = [-x for x in u[i]]

    k = 0
    limit = min(nrows, ncols)
    while k < limit:
        # move a minimal-magnitude nonzero entry of the trailing block to (k, k)
        pivot = None
        for i in range(k, nrows):
            for j in range(k, ncols):
                x = a[i][j]
                if x and (pivot is None or abs(x) < pivot[0]):
                    pivot = (abs(x), i, j)
        if pivot is None:
            break
        _, pi, pj = pivot
        if pi != k:
            row_swap(k, pi)
        if pj != k:
            col_swap(k, pj)
        if a[k][k] < 0:
            negate_row(k)

        dirty = False
        for i in range(k + 1, nrows):
            if a[i][k]:
                q = a[i][k] // a[k][k]
                row_op(k, i, -q)
                if a[i][k]:
                    dirty = True
        for j in range(k + 1, ncols):
            if a[k][j]:
                q = a[k][j] // a[k][k]
                col_op(k, j, -q)
                if a[k][j]:
                    dirty = True
        if dirty:
            continue  # remainders became new smaller candidates

        # enforce divisibility of the rest of the block by a[k][k]
        offender = None
        for i in range(k + 1, nrows):
            for j in range(k + 1, ncols):
                if a[i][j] % a[k][k]:
                    offender = i
                    break
            if offender is not None:
                break
        if offender is not None:
            row_op(offender, k, 1)
            continue
        k += 1

    d = IntMatrix(a, ncols, m.row_labels, m.col_labels)
    return d, IntMatrix(u, nrows), IntMatrix(v, ncols)


def kernel_basis(m: IntMatrix) -> list[list[int]]:
    """Basis of the saturated integer kernel lattice, as column vectors."""
    d, _, v = smith_normal_form(m)
    diag = d.diagonal()
    rank = sum(1 for x in diag if x)
    return [[v.rows[i][j] for i in range(m.ncols)] for j in range(rank, m.ncols)]


def solve_exact(m: IntMatrix, targets: list[list[int]]) -> list[list[int]] | None:
    """Solve m @ x = t over Z for each target column; None if any fails.

    Requires nothing of m beyond exact divisibility of the actual
    solutions; used on full-column-rank cycle bases.
    """
    d, u, v = smith_normal_form(m)
    diag = d.diagonal()
    out = []
    for t in targets:
        rhs = [sum(u.rows[i][k] * t[k] for k in range(m.nrows)) for i in range(m.nrows)]
        coeffs = []
        for i in range(m.ncols):
            di = diag[i] if i < len(diag) else 0
            ti = rhs[i] if i < m.nrows else 0
            if di == 0:
                if i < m.nrows and ti != 0:
                    return None
                coeffs.append(0)
            else:
                if ti % di:
                    return None
                coeffs.append(ti // di)
        for i in range(m.ncols, m.nrows):
            if rhs[i] != 0:
                return None
        out.append([sum(v.rows[i][j] * coeffs[j] for j in range(m.ncols))
                    for i in range(m.ncols)])
    return out


# -- sparse elimination ------------------------------------------------------

_GROWTH_LIMIT = 1 << 96


@dataclass
class EliminationResult:
    ncols: int = 0
    rank: int = 0
    rank_outer: int = 0


class SparseEliminator:
    """Incremental exact column elimination over Z.

    Columns arrive as dicts mapping row keys to integer entries and are
    reduced against the stored pivot columns by cross-multiplication;
    rows classified as "outer" are always pivoted before inner rows, so
    the outer pivot count equals the rank of the outer row block while
    the total pivot count is the rank of the whole matrix.
    """

    def __init__(self, is_outer=None):
        self.pivots: dict = {}  # row key -> (order, pivot value, column)
        self.is_outer = is_outer
        self.result = EliminationResult()

    def add_column(self, v: dict) -> None:
        self.result.ncols += 1
        pivots = self.pivots
        while v:
            best_row = None
            best_order = None
            for r in v:
                p = pivots.get(r)
                if p is not None and (best_order is None or p[0] < best_order):
                    best_order = p[0]
                    best_row = r
            if best_row is None:
                break
            _, pval, pcol = pivots[best_row]
            c = v.pop(best_row)
            if pval == -1:
                c = -c
            elif pval != 1:
                for k in v:
                    v[k] *= pval
            for k, w in pcol.items():
                if k == best_row:
                    continue
                nv = v.get(k, 0) - c * w
                if nv:
                    v[k] = nv
                else:
                    v.pop(k, None)
            if v and any(abs(x) > _GROWTH_LIMIT for x in v.values()):
                g = 0
                for x in v.values():
                    g = gcd(g, x)
                if g > 1:
                    for k in v:
                        v[k] //= g
        if not v:
            return
        is_outer = self.is_outer
        outer_hit = False
        if is_outer is not None:
            outer_rows = [r for r in v if is_outer(r)]
            pool = outer_rows if outer_rows else list(v)
            outer_hit = bool(outer_rows)
        else:
            pool = list(v)
        r = min(pool, key=lambda k: (abs(v[k]) != 1, abs(v[k]), k))
        self.pivots[r] = (len(self.pivots), v[r], v)
        self.result.rank += 1
        if outer_hit:
            self.result.rank_outer += 1

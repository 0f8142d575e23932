import random
from fractions import Fraction

import pytest

from kconj.intlinalg import (
    IntMatrix,
    SparseEliminator,
    bareiss_determinant,
    identity_matrix,
    kernel_basis,
    smith_normal_form,
    solve_exact,
)


def snf_diagonal_oracle(rows):
    """Brute-force invariant factors by raw elementary operations.

    No transforms, no pivot strategy: repeatedly drag the smallest
    nonzero entry to the corner, clear its row and column by naive
    subtraction, and fix divisibility by folding rows in, recursing on
    the trailing block.
    """
    a = [list(r) for r in rows]
    if not a or not a[0]:
        return []
    m, n = len(a), len(a[0])
    out = []
    top = 0
    while top < min(m, n):
        entries = [
            (abs(a[i][j]), i, j)
            for i in range(top, m)
            for j in range(top, n)
            if a[i][j]
        ]
        if not entries:
            break
        _, pi, pj = min(entries)
        a[top], a[pi] = a[pi], a[top]
        for row in a:
            row[top], row[pj] = row[pj], row[top]
        p = a[top][top]
        dirty = False
        for i in range(top + 1, m):
            if a[i][top]:
                q = a[i][top] // p
                for j in range(top, n):
                    a[i][j] -= q * a[top][j]
                dirty = dirty or bool(a[i][top])
        for j in range(top + 1, n):
            if a[top][j]:
                q = a[top][j] // p
                for i in range(top, m):
                    a[i][j] -= q * a[i][top]
                dirty = dirty or bool(a[top][j])
        if dirty:
            continue
        offender = next(
            (
                i
                for i in range(top + 1, m)
                for j in range(top + 1, n)
                if a[i][j] % p
            ),
            None,
        )
        if offender is not None:
            for j in range(top, n):
                a[top][j] += a[offender][j]
            continue
        out.append(abs(p))
        top += 1
    return out


def fraction_rank_oracle(columns, nrows_hint=None):
    """Dense rank over Q by plain fraction Gaussian elimination."""
    rows_keys = sorted({k for col in columns for k in col})
    idx = {k: i for i, k in enumerate(rows_keys)}
    mat = [[Fraction(0)] * len(columns) for _ in rows_keys]
    for j, col in enumerate(columns):
        for k, v in col.items():
            mat[idx[k]][j] = Fraction(v)
    rank = 0
    for j in range(len(columns)):
        pivot = next((i for i in range(rank, len(mat)) if mat[i][j]), None)
        if pivot is None:
            continue
        mat[rank], mat[pivot] = mat[pivot], mat[rank]
        pv = mat[rank][j]
        for i in range(len(mat)):
            if i != rank and mat[i][j]:
                f = mat[i][j] / pv
                mat[i] = [x - f * y for x, y in zip(mat[i], mat[rank])]
        rank += 1
    return rank


def test_snf_worked_example():
    m = IntMatrix.from_rows([[2, 4], [6, 8]])
    d, u, v = smith_normal_form(m)
    assert d.diagonal() == [2, 4]
    assert (u @ m) @ v == d
    assert abs(bareiss_determinant(m)) == 8
    assert abs(bareiss_determinant(u)) == 1
    assert abs(bareiss_determinant(v)) == 1


def test_snf_identity_and_zero():
    ident = identity_matrix(3)
    d, _, _ = smith_normal_form(ident)
    assert d == ident
    zero = IntMatrix.from_rows([[0, 0], [0, 0]])
    d, _, _ = smith_normal_form(zero)
    assert d.rows == [[0, 0], [0, 0]]


def test_snf_against_elementary_oracle():
    rng = random.Random(31)
    for _ in range(120):
        nr, nc = rng.randint(1, 8), rng.randint(1, 8)
        rows = [[rng.randint(-50, 50) for _ in range(nc)] for _ in range(nr)]
        m = IntMatrix.from_rows(rows)
        d, u, v = smith_normal_form(m)
        assert (u @ m) @ v == d
        assert abs(bareiss_determinant(u)) == 1
        assert abs(bareiss_determinant(v)) == 1
        diag = [x for x in d.diagonal() if x]
        assert diag == snf_diagonal_oracle(rows)
        for i in range(len(diag) - 1):
            assert diag[i + 1] % diag[i] == 0


def test_snf_rectangular_shapes():
    m = IntMatrix.from_rows([[0, 3, 0, 0]])
    d, u, v = smith_normal_form(m)
    assert d.diagonal() == [3]
    assert (u @ m) @ v == d
    m2 = IntMatrix.from_rows([[6], [4]])
    d2, u2, v2 = smith_normal_form(m2)
    assert d2.diagonal() == [2]
    assert (u2 @ m2) @ v2 == d2


def test_determinantal_divisors_small():
    # first and last determinantal divisors pin the ends of the chain
    from itertools import combinations
    from math import gcd

    rng = random.Random(32)
    for _ in range(25):
        n = rng.randint(2, 4)
        rows = [[rng.randint(-9, 9) for _ in range(n)] for _ in range(n)]
        m = IntMatrix.from_rows(rows)
        d, _, _ = smith_normal_form(m)
        diag = d.diagonal()
        g1 = 0
        for row in rows:
            for x in row:
                g1 = gcd(g1, x)
        assert diag[0] == g1
        det = bareiss_determinant(m)
        prod = 1
        for x in diag:
            prod *= x
        assert prod == abs(det)


def test_kernel_basis_saturated():
    m = IntMatrix.from_rows([[2, 4, 6], [1, 2, 3]])
    basis = kernel_basis(m)
    assert len(basis) == 2
    for vec in basis:
        assert all(
            sum(m.rows[i][j] * vec[j] for j in range(3)) == 0 for i in range(2)
        )


def test_solve_exact():
    m = IntMatrix.from_rows([[2, 0], [0, 3], [1, 1]])
    sols = solve_exact(m, [[4, 9, 5]])
    assert sols == [[2, 3]]
    assert solve_exact(m, [[1, 0, 0]]) is None


def test_sparse_eliminator_matches_fraction_oracle():
    rng = random.Random(33)
    for _ in range(60):
        ncols = rng.randint(1, 12)
        nrows = rng.randint(1, 12)
        cols = []
        for _ in range(ncols):
            col = {}
            for i in range(nrows):
                if rng.random() < 0.4:
                    v = rng.randint(-6, 6)
                    if v:
                        col[i] = v
            cols.append(col)
        elim = SparseEliminator()
        for col in cols:
            elim.add_column(dict(col))
        assert elim.result.rank == fraction_rank_oracle(cols)


def test_sparse_eliminator_outer_priority():
    rng = random.Random(34)
    for _ in range(40):
        ncols = rng.randint(1, 10)
        nrows = rng.randint(2, 10)
        outer = {i for i in range(nrows) if rng.random() < 0.5}
        cols = []
        for _ in range(ncols):
            col = {}
            for i in range(nrows):
                if rng.random() < 0.4:
                    v = rng.randint(-5, 5)
                    if v:
                        col[i] = v
            cols.append(col)
        elim = SparseEliminator(lambda r: r in outer)
        for col in cols:
            elim.add_column(dict(col))
        outer_cols = [{k: v for k, v in col.items() if k in outer} for col in cols]
        assert elim.result.rank == fraction_rank_oracle(cols)
        assert elim.result.rank_outer == fraction_rank_oracle(outer_cols)

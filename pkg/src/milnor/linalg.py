"""Exact sparse linear algebra over the rationals and degree-wise matrices of
graded module maps."""

from __future__ import annotations

from gmpy2 import mpq

__all__ = ["sparse_rank", "degree_matrix_columns", "graded_piece_dim"]


def sparse_rank(columns):
    """Rank of a family of sparse vectors (dicts index -> rational)."""
    pivots = {}
    rank = 0
    for col in columns:
        v = {k: mpq(c) for k, c in col.items() if c}
        while v:
            p = max(v)
            row = pivots.get(p)
            if row is None:
                inv = 1 / v[p]
                pivots[p] = {k: c * inv for k, c in v.items()}
                rank += 1
                break
            c = v[p]
            for k, a in row.items():
                x = v.get(k, 0) - c * a
                if x:
                    v[k] = x
                else:
                    v.pop(k, None)
    return rank


def graded_piece_dim(ring, shifts, m):
    """``dim_Q`` of ``(+)_j S(-shifts[j])`` in degree ``m``."""
    from math import comb

    n = ring.nvars
    return sum(comb(m - s + n - 1, n - 1) for s in shifts if m - s >= 0)


def degree_matrix_columns(ring, matrix, source_shifts, target_shifts, m):
    """Columns of a graded matrix restricted to degree ``m``.

    ``matrix[i][j]`` maps basis vector ``j`` of the source to component ``i``
    of the target.  Each column is a sparse dict keyed by ``(i, monomial)``.
    """
    cols = []
    for j, e in enumerate(source_shifts):
        deg = m - e
        if deg < 0:
            continue
        entries = [(i, matrix[i][j]) for i in range(len(target_shifts)) if matrix[i][j]]
        for mu in ring.monomial_keys(deg):
            col = {}
            for i, p in entries:
                for k, c in p.terms.items():
                    key = (i, k + mu - ring.c0)
                    col[key] = col.get(key, 0) + c
            cols.append(col)
    return cols

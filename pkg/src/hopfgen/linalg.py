"""Exact linear algebra over Q(q).

Rows are sparse {column_index: Scalar} maps with no stored zeros; all
elimination is done with exact field arithmetic.
"""

from __future__ import annotations

from .arith import FieldSpec, Scalar
from .errors import NotInvertible


def axpy(a: dict, s: Scalar, b: dict) -> dict:
    """a + s*b with zero entries dropped."""
    out = dict(a)
    for k, v in b.items():
        w = out.get(k)
        w = s * v if w is None else w + s * v
        if w:
            out[k] = w
        else:
            out.pop(k, None)
    return out


def row_reduce(rows: list[dict], field: FieldSpec) -> tuple[list[dict], list[int]]:
    """Reduced row echelon form; returns (rows, pivot_columns), both sorted by pivot."""
    reduced: list[dict] = []
    pivots: list[int] = []
    for row in rows:
        r = dict(row)
        for p, rr in zip(pivots, reduced):
            if p in r:
                r = axpy(r, -r[p], rr)
        if not r:
            continue
        c = min(r)
        inv = r[c].inverse()
        r = {k: v * inv for k, v in r.items()}
        for i, rr in enumerate(reduced):
            if c in rr:
                reduced[i] = axpy(rr, -rr[c], r)
        reduced.append(r)
        pivots.append(c)
    order = sorted(range(len(pivots)), key=lambda i: pivots[i])
    return [reduced[i] for i in order], [pivots[i] for i in order]


def in_span(reduced: list[dict], pivots: list[int], vector: dict) -> bool:
    """Membership of vector in the row span of an already reduced matrix."""
    r = dict(vector)
    for p, rr in zip(pivots, reduced):
        if p in r:
            r = axpy(r, -r[p], rr)
    return not r


def nullspace(num_cols: int, rows: list[dict], field: FieldSpec) -> list[dict]:
    """Basis of the right kernel {x : row . x = 0 for every row}."""
    reduced, pivots = row_reduce(rows, field)
    pivot_set = set(pivots)
    basis = []
    for free in range(num_cols):
        if free in pivot_set:
            continue
        vec = {free: field.one}
        for p, rr in zip(pivots, reduced):
            c = rr.get(free)
            if c:
                vec[p] = -c
        basis.append(vec)
    return basis


def solve_unique(
    rows: list[dict], rhs: list[Scalar], num_unknowns: int, field: FieldSpec
) -> list[Scalar]:
    """Solve the square-rank system row . x = rhs; raises NotInvertible otherwise."""
    rhs_col = num_unknowns
    aug = []
    for row, b in zip(rows, rhs):
        r = dict(row)
        if b:
            r[rhs_col] = b
        aug.append(r)
    reduced, pivots = row_reduce(aug, field)
    if rhs_col in pivots:
        raise NotInvertible("inconsistent linear system")
    if len(pivots) < num_unknowns:
        raise NotInvertible("singular linear system")
    x = [field.zero] * num_unknowns
    for p, rr in zip(pivots, reduced):
        x[p] = rr.get(rhs_col, field.zero)
    return x


def scalar_det(matrix: list[list[Scalar]], field: FieldSpec) -> Scalar:
    """Determinant by exact Gaussian elimination."""
    n = len(matrix)
    m = [list(row) for row in matrix]
    det = field.one
    for c in range(n):
        piv = next((r for r in range(c, n) if m[r][c]), None)
        if piv is None:
            return field.zero
        if piv != c:
            m[c], m[piv] = m[piv], m[c]
            det = -det
        det = det * m[c][c]
        inv = m[c][c].inverse()
        for r in range(c + 1, n):
            if m[r][c]:
                f = m[r][c] * inv
                for k in range(c, n):
                    if m[c][k]:
                        m[r][k] = m[r][k] - f * m[c][k]
    return det

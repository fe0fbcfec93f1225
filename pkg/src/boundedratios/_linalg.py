"""Exact integer/rational linear algebra on lists of Python ints and Fractions."""
from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Sequence

Vector = tuple[int, ...]


def dot(a: Sequence, b: Sequence):
    return sum(x * y for x, y in zip(a, b) if x and y)


def primitive(v: Iterable) -> Vector:
    """Scale a rational vector by a positive factor to coprime integers."""
    v = list(v)
    den = 1
    for x in v:
        if isinstance(x, Fraction):
            den = lcm(den, x.denominator)
    ints = [int(x * den) for x in v]
    g = 0
    for x in ints:
        g = gcd(g, x)
    if g > 1:
        ints = [x // g for x in ints]
    return tuple(ints)


def echelon_pivots(rows: Sequence[Sequence], ncols: int | None = None) -> list[int]:
    """Pivot columns of a row echelon form, columns scanned left to right.

    Fraction-free (Bareiss) elimination on integer rows; rational input is
    scaled row by row first.  Pivot choice depends on column order only.
    """
    mat = [list(primitive(r)) for r in rows]
    if not mat:
        return []
    if ncols is None:
        ncols = len(mat[0])
    pivots = []
    r = 0
    prev = 1
    nrows = len(mat)
    for c in range(ncols):
        if r == nrows:
            break
        p = next((k for k in range(r, nrows) if mat[k][c]), None)
        if p is None:
            continue
        mat[r], mat[p] = mat[p], mat[r]
        pr = mat[r]
        pv = pr[c]
        for k in range(r + 1, nrows):
            row = mat[k]
            f = row[c]
            if f:
                mat[k] = [(pv * x - f * y) // prev for x, y in zip(row, pr)]
            elif pv != prev:
                mat[k] = [(pv * x) // prev for x in row]
        prev = pv
        pivots.append(c)
        r += 1
    return pivots


def rank(rows: Sequence[Sequence], ncols: int | None = None) -> int:
    return len(echelon_pivots(rows, ncols))


def rref(rows: Sequence[Sequence], ncols: int | None = None) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form over Q; returns (nonzero rows, pivot columns)."""
    mat = [[Fraction(x) for x in r] for r in rows]
    if not mat:
        return [], []
    if ncols is None:
        ncols = len(mat[0])
    pivots = []
    r = 0
    for c in range(ncols):
        p = next((k for k in range(r, len(mat)) if mat[k][c] != 0), None)
        if p is None:
            continue
        mat[r], mat[p] = mat[p], mat[r]
        pv = mat[r][c]
        if pv != 1:
            mat[r] = [x / pv for x in mat[r]]
        pr = mat[r]
        for k in range(len(mat)):
            if k != r and mat[k][c] != 0:
                f = mat[k][c]
                mat[k] = [x - f * y for x, y in zip(mat[k], pr)]
        pivots.append(c)
        r += 1
        if r == len(mat):
            break
    return mat[:r], pivots


def nullspace(rows: Sequence[Sequence], ncols: int) -> list[Vector]:
    """Integer basis of {x : row . x = 0 for every row}."""
    if not rows:
        return [tuple(1 if i == j else 0 for i in range(ncols)) for j in range(ncols)]
    red, pivots = rref(rows, ncols)
    pivset = set(pivots)
    basis = []
    for f in range(ncols):
        if f in pivset:
            continue
        x = [Fraction(0)] * ncols
        x[f] = Fraction(1)
        for r, pc in enumerate(pivots):
            x[pc] = -red[r][f]
        basis.append(primitive(x))
    return basis


def solve_combination(basis: Sequence[Sequence], target: Sequence) -> list[Fraction] | None:
    """Coefficients c with sum c_k basis_k = target, or None if not in the span."""
    k = len(basis)
    if k == 0:
        return [] if not any(target) else None
    dim = len(target)
    # columns are basis vectors; augment with target
    aug = [[Fraction(basis[j][i]) for j in range(k)] + [Fraction(target[i])] for i in range(dim)]
    red, pivots = rref(aug, k + 1)
    if k in pivots:
        return None
    coeffs = [Fraction(0)] * k
    for r, pc in enumerate(pivots):
        coeffs[pc] = red[r][k]
    return coeffs

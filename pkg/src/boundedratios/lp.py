"""Exact two-phase simplex on integer tableaux.

The tableau is stored fraction-free: every entry is an integer numerator over
a single positive common denominator, and pivots use the Bareiss update so
the exact division never leaves the integers.  Entering and leaving
variables follow Bland's rule, which guarantees termination.

Problems are given in standard form::

    minimize c.x  subject to  A x = b,  x >= 0

with integer or Fraction data.  Infeasible problems come back with a Farkas
vector y satisfying y.A_j <= 0 for every column and y.b > 0.
"""
from __future__ import annotations

import time
from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm
from typing import Sequence

from ._linalg import dot


class BudgetExceeded(RuntimeError):
    """Raised when a computation runs past its time budget."""


@dataclass
class LPResult:
    status: str  # "optimal", "infeasible" or "unbounded"
    x: list[Fraction] | None = None
    value: Fraction | None = None
    farkas: list[Fraction] | None = None
    ray: list[Fraction] | None = None
    pivots: int = 0
    basis: list[int] = field(default_factory=list)


def _row_denominator(row: Sequence) -> int:
    den = 1
    for x in row:
        if isinstance(x, Fraction):
            den = lcm(den, x.denominator)
    return den


def _int_row(row: Sequence, rhs) -> list[int]:
    den = _row_denominator(list(row) + [rhs])
    return [int(x * den) for x in row] + [int(rhs * den)]


class _Tableau:
    # rows[i][j] / D is the true tableau entry; rows[i][-1] is the rhs.
    def __init__(self, rows: list[list[int]], basis: list[int]):
        self.rows = rows
        self.basis = basis
        self.D = 1
        self.obj: list[int] = []
        self.pivots = 0

    def pivot(self, r: int, c: int) -> None:
        rows = self.rows
        pr = rows[r]
        p = pr[c]
        D = self.D
        nz = [j for j, v in enumerate(pr) if v]
        for i, row in enumerate(rows):
            if i == r:
                continue
            f = row[c]
            if f:
                new = [(p * v) // D for v in row] if p != D else row[:]
                for j in nz:
                    new[j] = (p * row[j] - f * pr[j]) // D
                rows[i] = new
            elif p != D:
                rows[i] = [(p * v) // D for v in row]
        obj = self.obj
        f = obj[c]
        if f:
            new = [(p * v) // D for v in obj] if p != D else obj[:]
            for j in nz:
                new[j] = (p * obj[j] - f * pr[j]) // D
            self.obj = new
        elif p != D:
            self.obj = [(p * v) // D for v in obj]
        self.D = p
        if p < 0:
            # keep D positive so sign tests on numerators stay valid
            self.rows = [[-v for v in row] for row in self.rows]
            self.obj = [-v for v in self.obj]
            self.D = -p
        self.basis[r] = c
        self.pivots += 1

    def run(self, allowed: int, deadline: float | None) -> tuple[str, int | None]:
        """Minimize the objective row; columns >= allowed never enter."""
        while True:
            if deadline is not None and time.monotonic() > deadline:
                raise BudgetExceeded("simplex time budget exhausted")
            obj = self.obj
            enter = next((j for j in range(allowed) if obj[j] < 0), None)
            if enter is None:
                return "optimal", None
            best = None
            for i, row in enumerate(self.rows):
                a = row[enter]
                if a > 0:
                    num = row[-1]
                    if best is None:
                        best = (i, num, a)
                        continue
                    _, bn, ba = best
                    lhs, rhs = num * ba, bn * a
                    if lhs < rhs or (lhs == rhs and self.basis[i] < self.basis[best[0]]):
                        best = (i, num, a)
            if best is None:
                return "unbounded", enter
            self.pivot(best[0], enter)

    def solution(self, nvars: int) -> list[Fraction]:
        x = [Fraction(0)] * nvars
        for i, b in enumerate(self.basis):
            if b < nvars:
                x[b] = Fraction(self.rows[i][-1], self.D)
        return x


def simplex(c: Sequence, A: Sequence[Sequence], b: Sequence,
            budget_seconds: float | None = None) -> LPResult:
    """Solve min c.x, A x = b, x >= 0 exactly."""
    deadline = None if budget_seconds is None else time.monotonic() + budget_seconds
    m = len(A)
    nvars = len(c)
    signs = []
    rows = []
    for i in range(m):
        den = _row_denominator(list(A[i]) + [b[i]])
        row = [int(x * den) for x in A[i]] + [int(b[i] * den)]
        s = -1 if row[-1] < 0 else 1
        if s < 0:
            row = [-v for v in row]
        signs.append(s * den)
        rows.append(row)
    # artificial columns nvars .. nvars+m-1
    full = []
    for i, row in enumerate(rows):
        art = [0] * m
        art[i] = 1
        full.append(row[:-1] + art + [row[-1]])
    tab = _Tableau(full, [nvars + i for i in range(m)])
    width = nvars + m
    # phase 1: minimise the sum of artificials
    tab.obj = [0] * (width + 1)
    for row in full:
        for j in range(nvars):
            tab.obj[j] -= row[j]
        tab.obj[-1] -= row[-1]
    status, _ = tab.run(nvars, deadline)
    # obj rhs holds -(phase-1 value) * D
    if tab.obj[-1] != 0:
        # y_i = 1 - reduced cost of artificial i
        y = [Fraction(tab.D - tab.obj[nvars + i], tab.D) * signs[i] for i in range(m)]
        return LPResult("infeasible", farkas=y, pivots=tab.pivots)
    # drive artificials out of the basis
    keep = []
    for i in range(m):
        if tab.basis[i] >= nvars:
            row = tab.rows[i]
            j = next((j for j in range(nvars) if row[j] != 0), None)
            if j is None:
                continue  # redundant equation
            tab.pivot(i, j)
        keep.append(i)
    if len(keep) < m:
        tab.rows = [tab.rows[i] for i in keep]
        tab.basis = [tab.basis[i] for i in keep]
    # phase 2 objective row: D*c_j - sum_i c_{B_i} * T_ij
    cint = _int_row(c, 0)[:-1]
    obj = [tab.D * cj for cj in cint] + [0] * m + [0]
    for i, bidx in enumerate(tab.basis):
        cb = cint[bidx]
        if cb:
            row = tab.rows[i]
            for j in range(width + 1):
                if row[j]:
                    obj[j] -= cb * row[j]
    tab.obj = obj
    status, enter = tab.run(nvars, deadline)
    if status == "unbounded":
        ray = [Fraction(0)] * nvars
        ray[enter] = Fraction(1)
        for i, bidx in enumerate(tab.basis):
            if bidx < nvars:
                ray[bidx] = Fraction(-tab.rows[i][enter], tab.D)
        return LPResult("unbounded", ray=ray, pivots=tab.pivots, basis=list(tab.basis))
    x = tab.solution(nvars)
    return LPResult("optimal", x=x, value=sum((Fraction(ci) * xi for ci, xi in zip(c, x)), Fraction(0)),
                    pivots=tab.pivots, basis=list(tab.basis))


def check_farkas(A: Sequence[Sequence], b: Sequence, y: Sequence) -> bool:
    """y.A_j <= 0 for all columns and y.b > 0."""
    ncols = len(A[0]) if A else 0
    for j in range(ncols):
        if sum(y[i] * A[i][j] for i in range(len(A)) if A[i][j]) > 0:
            return False
    return dot(y, b) > 0

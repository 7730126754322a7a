"""Exact dense linear algebra over Q.

Ranks use fraction-free (Bareiss) elimination on integer matrices obtained
by clearing denominators row by row.  Kernels use reduced row echelon form
over :class:`fractions.Fraction`.
"""
from __future__ import annotations

from fractions import Fraction
from math import lcm
from typing import List, Sequence

Matrix = List[List[int]]


def clear_denominators(rows: Sequence[Sequence[Fraction]]) -> Matrix:
    out = []
    for row in rows:
        den = 1
        for x in row:
            if isinstance(x, Fraction) and x.denominator != 1:
                den = lcm(den, x.denominator)
        out.append([int(x * den) for x in row])
    return out


def transpose(rows: Sequence[Sequence], ncols: int) -> list:
    return [[row[j] for row in rows] for j in range(ncols)]


def bareiss_rank(rows: Sequence[Sequence[int]]) -> int:
    """Rank of an integer matrix by fraction-free elimination, pivoting down columns."""
    A = [list(r) for r in rows if any(r)]
    if not A:
        return 0
    m, n = len(A), len(A[0])
    r, prev = 0, 1
    for c in range(n):
        if r == m:
            break
        piv = next((i for i in range(r, m) if A[i][c]), None)
        if piv is None:
            continue
        A[r], A[piv] = A[piv], A[r]
        p = A[r][c]
        pr = A[r]
        for i in range(r + 1, m):
            row = A[i]
            a = row[c]
            if a:
                for j in range(c + 1, n):
                    row[j] = (p * row[j] - a * pr[j]) // prev
            elif p != prev:
                for j in range(c + 1, n):
                    if row[j]:
                        row[j] = (p * row[j]) // prev
            row[c] = 0
        prev = p
        r += 1
    return r


def rank(rows: Sequence[Sequence], ncols: int, method: str = "row") -> int:
    """Exact rank; ``method='column'`` eliminates the transpose instead."""
    if not rows or ncols == 0:
        return 0
    M = clear_denominators(rows)
    if method == "column":
        M = transpose(M, ncols)
    elif method != "row":
        raise ValueError(f"unknown elimination method {method!r}")
    return bareiss_rank(M)


def rref(rows: Sequence[Sequence], ncols: int):
    """Reduced row echelon form over Q; returns (rows, pivot columns)."""
    A = [[Fraction(x) for x in r] for r in rows]
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(A)) if A[i][c]), None)
        if piv is None:
            continue
        A[r], A[piv] = A[piv], A[r]
        inv = 1 / A[r][c]
        A[r] = [x * inv for x in A[r]]
        for i in range(len(A)):
            if i != r and A[i][c]:
                f = A[i][c]
                A[i] = [x - f * y for x, y in zip(A[i], A[r])]
        pivots.append(c)
        r += 1
        if r == len(A):
            break
    return A[:r], pivots


def nullspace(rows: Sequence[Sequence], ncols: int) -> List[List[Fraction]]:
    """Basis of {x : rows · x = 0} (right kernel)."""
    if not rows:
        return [[Fraction(int(i == j)) for j in range(ncols)] for i in range(ncols)]
    R, pivots = rref(rows, ncols)
    free = [c for c in range(ncols) if c not in set(pivots)]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for row, pc in zip(R, pivots):
            v[pc] = -row[f]
        basis.append(v)
    return basis

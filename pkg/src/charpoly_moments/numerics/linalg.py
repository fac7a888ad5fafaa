"""Exact determinants over integral domains."""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence


class StructuralError(ValueError):
    """Raised for malformed matrices (ragged or non-square input)."""


def _check_square(matrix: Sequence[Sequence]) -> int:
    n = len(matrix)
    for row in matrix:
        if len(row) != n:
            raise StructuralError(
                f"determinant needs a square matrix, got a row of length {len(row)} in a {n}-row matrix"
            )
    return n


def _exact_quotient(a, b):
    if isinstance(a, int) and isinstance(b, int):
        q, r = divmod(a, b)
        if r:
            raise ArithmeticError("inexact integer division in Bareiss elimination")
        return q
    return a / b


def exact_det(matrix: Sequence[Sequence]):
    """Determinant by fraction-free (Bareiss) elimination.

    Works over any integral domain whose elements support ``+ - *``, ``== 0``
    and exact division ``/`` (ints, Fraction, GaussianRational,
    RationalFunction, AiryPolynomial).  Zero pivots are handled by row swaps.
    The empty matrix has determinant 1.
    """
    n = _check_square(matrix)
    if n == 0:
        return 1
    a = [list(row) for row in matrix]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for r in range(k + 1, n):
                if a[r][k] != 0:
                    a[k], a[r] = a[r], a[k]
                    sign = -sign
                    break
            else:
                return a[k][k] * 0
        pivot = a[k][k]
        for i in range(k + 1, n):
            aik = a[i][k]
            for j in range(k + 1, n):
                a[i][j] = _exact_quotient(a[i][j] * pivot - aik * a[k][j], prev)
            a[i][k] = aik * 0
        prev = pivot
    det = a[n - 1][n - 1]
    return det if sign > 0 else -det


def cofactor_det(matrix: Sequence[Sequence]):
    """Laplace expansion along the first row; exponential cost, for checks."""
    n = _check_square(matrix)
    if n == 0:
        return 1
    if n == 1:
        return matrix[0][0]
    total = 0
    for j in range(n):
        entry = matrix[0][j]
        if entry == 0:
            continue
        minor = [row[:j] + row[j + 1:] for row in (list(r) for r in matrix[1:])]
        term = entry * cofactor_det(minor)
        total = total + term if j % 2 == 0 else total - term
    return total


def rational_matrix(rows: Sequence[Sequence]) -> list[list[Fraction]]:
    return [[Fraction(x) for x in row] for row in rows]

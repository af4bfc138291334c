"""Exact integer and rational linear algebra.

Matrices are numpy arrays of ``dtype=object`` holding Python ``int`` (or
``fractions.Fraction``) entries, so arithmetic never leaves the exact domain.
"""
import itertools
import logging
from fractions import Fraction
from math import gcd
from typing import Iterable, List, Optional, Sequence, Tuple

import numpy as np

from galeforge.exceptions import InvalidInput, NonSaturated

logger = logging.getLogger(__name__)


def int_matrix(data: Iterable[Iterable[int]], cols: Optional[int] = None) -> np.ndarray:
    """Build an exact integer matrix.

    :param data:
        Rows of the matrix.
    :param int cols:
        (Optional) Number of columns, required to shape a matrix with no rows.
    :rtype: numpy.ndarray
    """
    rows = [list(row) for row in data]
    if not rows:
        return np.zeros((0, cols or 0), dtype=object)
    width = len(rows[0])
    if any(len(row) != width for row in rows):
        raise InvalidInput("matrix rows have different lengths")
    if cols is not None and width != cols:
        raise InvalidInput(f"expected {cols} columns, got {width}")
    matrix = np.empty((len(rows), width), dtype=object)
    for i, row in enumerate(rows):
        for j, value in enumerate(row):
            if isinstance(value, bool) or int(value) != value:
                raise InvalidInput(f"matrix entry {value!r} is not an integer")
            matrix[i, j] = int(value)
    return matrix


def identity(n: int) -> np.ndarray:
    matrix = np.zeros((n, n), dtype=object)
    for i in range(n):
        matrix[i, i] = 1
    return matrix


def to_rows(matrix: np.ndarray) -> Tuple[Tuple[int, ...], ...]:
    return tuple(tuple(int(x) for x in row) for row in matrix)


def _find_pivot(D: np.ndarray, t: int) -> Optional[Tuple[int, int]]:
    best = None
    for i in range(t, D.shape[0]):
        for j in range(t, D.shape[1]):
            value = abs(D[i, j])
            if value and (best is None or value < best[0]):
                best = (value, i, j)
    return None if best is None else (best[1], best[2])


def smith_normal_form(A: np.ndarray) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Compute the Smith normal form of an integer matrix.

    Pivots are chosen by smallest nonzero absolute value, ties broken by the
    lowest row index and then the lowest column index.

    :param numpy.ndarray A:
        An ``m x n`` integer matrix.
    :rtype: tuple
    :returns:
        Unimodular ``U`` (``m x m``), diagonal ``D`` and unimodular ``V``
        (``n x n``) with ``U @ A @ V == D`` and ``D[i, i]`` dividing
        ``D[i + 1, i + 1]``.
    """
    D = np.array(A, dtype=object).copy()
    m, n = D.shape
    U = identity(m)
    V = identity(n)

    for t in range(min(m, n)):
        while True:
            pivot = _find_pivot(D, t)
            if pivot is None:
                return U, D, V
            i, j = pivot
            if i != t:
                D[[t, i]] = D[[i, t]]
                U[[t, i]] = U[[i, t]]
            if j != t:
                D[:, [t, j]] = D[:, [j, t]]
                V[:, [t, j]] = V[:, [j, t]]

            p = D[t, t]
            for r in range(t + 1, m):
                q = D[r, t] // p
                if q:
                    D[r] -= q * D[t]
                    U[r] -= q * U[t]
            for c in range(t + 1, n):
                q = D[t, c] // p
                if q:
                    D[:, c] -= q * D[:, t]
                    V[:, c] -= q * V[:, t]

            if any(D[r, t] for r in range(t + 1, m)) or any(
                D[t, c] for c in range(t + 1, n)
            ):
                continue

            # Enforce divisibility by folding an offending row into row t.
            offender = next(
                (
                    r
                    for r in range(t + 1, m)
                    for c in range(t + 1, n)
                    if D[r, c] % p
                ),
                None,
            )
            if offender is None:
                break
            D[t] += D[offender]
            U[t] += U[offender]

        if D[t, t] < 0:
            D[t] = -D[t]
            U[t] = -U[t]

    return U, D, V


def invariant_factors(A: np.ndarray) -> List[int]:
    """Nonzero diagonal entries of the Smith normal form of ``A``."""
    _, D, _ = smith_normal_form(A)
    return [int(D[i, i]) for i in range(min(D.shape)) if D[i, i] != 0]


def kernel_saturated(A: np.ndarray) -> np.ndarray:
    """Basis of the saturated integer kernel ``{v : A v = 0}``, as columns."""
    A = np.array(A, dtype=object)
    _, D, V = smith_normal_form(A)
    r = sum(1 for i in range(min(D.shape)) if D[i, i] != 0)
    return V[:, r:]


def quotient_map(A: np.ndarray) -> np.ndarray:
    """Integer quotient map ``Z^m -> Z^m / im A``.

    :param numpy.ndarray A:
        An ``m x k`` integer matrix of full column rank.
    :raises NonSaturated:
        If the quotient has torsion.
    :returns:
        ``Q`` of shape ``(m - k) x m`` with ``Q @ A == 0``, surjective onto
        ``Z^(m - k)``.
    """
    A = np.array(A, dtype=object)
    m, k = A.shape
    U, D, _ = smith_normal_form(A)
    factors = [int(D[i, i]) for i in range(min(m, k)) if D[i, i] != 0]
    if len(factors) != k:
        raise InvalidInput("matrix does not have full column rank")
    if any(d != 1 for d in factors):
        raise NonSaturated(factors)
    return U[k:, :]


def det(A: np.ndarray) -> int:
    """Exact determinant of a square integer matrix (Bareiss elimination)."""
    M = [list(row) for row in np.array(A, dtype=object)]
    n = len(M)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for t in range(n - 1):
        if M[t][t] == 0:
            swap = next((r for r in range(t + 1, n) if M[r][t] != 0), None)
            if swap is None:
                return 0
            M[t], M[swap] = M[swap], M[t]
            sign = -sign
        for i in range(t + 1, n):
            for j in range(t + 1, n):
                M[i][j] = (M[i][j] * M[t][t] - M[i][t] * M[t][j]) // prev
        prev = M[t][t]
    return sign * int(M[n - 1][n - 1])


def rank(A: np.ndarray) -> int:
    A = np.array(A, dtype=object)
    if A.size == 0:
        return 0
    return len(_row_echelon(A)[1])


def _row_echelon(A: np.ndarray) -> Tuple[List[List[Fraction]], List[int]]:
    M = [[Fraction(x) for x in row] for row in A]
    rows = len(M)
    cols = len(M[0]) if rows else 0
    pivots: List[int] = []
    r = 0
    for c in range(cols):
        pivot = next((i for i in range(r, rows) if M[i][c] != 0), None)
        if pivot is None:
            continue
        M[r], M[pivot] = M[pivot], M[r]
        lead = M[r][c]
        M[r] = [x / lead for x in M[r]]
        for i in range(rows):
            if i != r and M[i][c] != 0:
                f = M[i][c]
                M[i] = [a - f * b for a, b in zip(M[i], M[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return M, pivots


def solve(A: np.ndarray, b: Sequence[int]) -> Optional[Tuple[Fraction, ...]]:
    """Solve the square system ``A x = b`` over the rationals.

    :returns:
        The unique solution, or None when ``A`` is singular.
    """
    A = np.array(A, dtype=object)
    n = A.shape[0]
    if A.shape != (n, n) or len(b) != n:
        raise InvalidInput(f"cannot solve a {A.shape} system with {len(b)} values")
    if n == 0:
        return ()
    augmented = np.empty((n, n + 1), dtype=object)
    augmented[:, :n] = A
    augmented[:, n] = list(b)
    M, pivots = _row_echelon(augmented)
    if pivots[:n] != list(range(n)):
        return None
    return tuple(M[i][n] for i in range(n))


def integer_solution(A: np.ndarray, b: Sequence[int]) -> Optional[Tuple[int, ...]]:
    """Find one integer solution of ``A x = b``, or None if there is none."""
    A = np.array(A, dtype=object)
    m, n = A.shape
    U, D, V = smith_normal_form(A)
    c = U.dot(np.array(list(b), dtype=object)) if m else np.zeros(0, dtype=object)
    y = [0] * n
    for i in range(m):
        d = D[i, i] if i < n else 0
        if d == 0:
            if c[i] != 0:
                return None
            continue
        if c[i] % d:
            return None
        y[i] = c[i] // d
    x = V.dot(np.array(y, dtype=object)) if n else np.zeros(0, dtype=object)
    return tuple(int(v) for v in x)


def minors(A: np.ndarray, size: int) -> Iterable[Tuple[Tuple[int, ...], Tuple[int, ...], int]]:
    """Yield ``(rows, cols, determinant)`` for every ``size x size`` minor."""
    A = np.array(A, dtype=object)
    m, n = A.shape
    for rows in itertools.combinations(range(m), size):
        for cols in itertools.combinations(range(n), size):
            yield rows, cols, det(A[np.ix_(rows, cols)])


def is_totally_unimodular(A: np.ndarray) -> bool:
    """True iff every square submatrix has determinant -1, 0 or 1."""
    A = np.array(A, dtype=object)
    m, n = A.shape
    for size in range(1, min(m, n) + 1):
        for rows, cols, value in minors(A, size):
            if value not in (-1, 0, 1):
                logger.debug("minor rows=%s cols=%s has determinant %s", rows, cols, value)
                return False
    return True


def is_unimodular(A: np.ndarray) -> bool:
    """True iff every maximal minor of the full row rank matrix ``A`` is in {-1, 0, 1}."""
    A = np.array(A, dtype=object)
    m, n = A.shape
    return all(
        det(A[:, list(cols)]) in (-1, 0, 1)
        for cols in itertools.combinations(range(n), m)
    )


def primitive(vector: Sequence[int]) -> Tuple[int, ...]:
    """Divide an integer vector by the gcd of its entries."""
    g = 0
    for x in vector:
        g = gcd(g, int(x))
    if g == 0:
        return tuple(int(x) for x in vector)
    return tuple(int(x) // g for x in vector)


def dot(u: Sequence, v: Sequence):
    return sum((a * b for a, b in zip(u, v)), 0)


def mat_vec(A: np.ndarray, v: Sequence) -> Tuple:
    A = np.array(A, dtype=object)
    return tuple(dot(row, v) for row in A)

"""Exact rational feasibility checks.

The primary engine is a phase-one simplex tableau over ``Fraction`` using
Bland's rule, so it cannot cycle. A Fourier-Motzkin eliminator is kept as an
independent cross-check for small systems.
"""
import logging
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

logger = logging.getLogger(__name__)


class Tableau:
    """Phase-one tableau for ``{y >= 0 : A y = r}``."""

    def __init__(self, A: Sequence[Sequence], r: Sequence):
        """Construct a :class:`Tableau <Tableau>`.

        :param A:
            Constraint rows, ``m`` rows of ``n`` entries.
        :param r:
            Right hand side of length ``m``.
        """
        self.m = len(A)
        self.n = len(A[0]) if self.m else 0
        self.rows: List[List[Fraction]] = []
        self.rhs: List[Fraction] = []
        for row, value in zip(A, r):
            row = [Fraction(x) for x in row]
            value = Fraction(value)
            if value < 0:
                row = [-x for x in row]
                value = -value
            # One artificial column per row.
            self.rows.append(row + [Fraction(int(i == len(self.rows))) for i in range(self.m)])
            self.rhs.append(value)
        self.basis = list(range(self.n, self.n + self.m))
        self.cost = [
            sum((self.rows[i][j] for i in range(self.m)), Fraction(0)) if j < self.n else Fraction(0)
            for j in range(self.n + self.m)
        ]
        self.value = sum(self.rhs, Fraction(0))
        self.pivots = 0

    def pivot(self, i: int, j: int) -> None:
        piv = self.rows[i][j]
        self.rows[i] = [x / piv for x in self.rows[i]]
        self.rhs[i] /= piv
        for k in range(self.m):
            if k != i and self.rows[k][j] != 0:
                f = self.rows[k][j]
                self.rows[k] = [a - f * b for a, b in zip(self.rows[k], self.rows[i])]
                self.rhs[k] -= f * self.rhs[i]
        f = self.cost[j]
        self.cost = [a - f * b for a, b in zip(self.cost, self.rows[i])]
        self.value -= f * self.rhs[i]
        self.basis[i] = j
        self.pivots += 1

    def bland_step(self) -> bool:
        """Perform one pivot. Returns False once the tableau is optimal."""
        entering = next((j for j in range(self.n) if self.cost[j] > 0), None)
        if entering is None:
            return False
        candidates = [
            (self.rhs[i] / self.rows[i][entering], self.basis[i], i)
            for i in range(self.m)
            if self.rows[i][entering] > 0
        ]
        # The phase-one objective is bounded below by zero, so a
        # positive cost column always has a positive entry.
        _, _, leaving = min(candidates)
        self.pivot(leaving, entering)
        return True

    def solve(self) -> bool:
        while self.bland_step():
            pass
        logger.debug("phase one finished after %d pivots, residual %s", self.pivots, self.value)
        return self.value == 0

    def point(self) -> Tuple[Fraction, ...]:
        y = [Fraction(0)] * self.n
        for i, j in enumerate(self.basis):
            if j < self.n:
                y[j] = self.rhs[i]
        return tuple(y)


def feasible_point(A: Sequence[Sequence], r: Sequence) -> Optional[Tuple[Fraction, ...]]:
    """Find ``y >= 0`` with ``A y = r``.

    :param A:
        Constraint rows.
    :param r:
        Right hand side.
    :rtype: tuple or None
    :returns:
        A feasible point, or None when the system is infeasible.
    """
    tableau = Tableau(A, r)
    if not tableau.solve():
        return None
    return tableau.point()


def is_feasible(A: Sequence[Sequence], r: Sequence) -> bool:
    return feasible_point(A, r) is not None


def _normalize(row: Sequence[Fraction], bound: Fraction) -> Tuple[Tuple[Fraction, ...], Fraction]:
    scale = next((abs(x) for x in row if x != 0), None)
    if scale is None:
        return tuple(row), bound
    return tuple(x / scale for x in row), bound / scale


def fourier_motzkin_feasible(A: Sequence[Sequence], b: Sequence) -> bool:
    """Decide whether ``{x : A x <= b}`` is nonempty by variable elimination.

    Exponential in the number of variables; intended for systems with a
    handful of unknowns.
    """
    system = {
        _normalize([Fraction(x) for x in row], Fraction(value))
        for row, value in zip(A, b)
    }
    n = len(A[0]) if A else 0
    for var in range(n):
        positive, negative, rest = [], [], set()
        for row, bound in system:
            if row[var] > 0:
                positive.append((row, bound))
            elif row[var] < 0:
                negative.append((row, bound))
            else:
                rest.add((row, bound))
        for prow, pbound in positive:
            for nrow, nbound in negative:
                p, q = prow[var], -nrow[var]
                row = [q * a + p * c for a, c in zip(prow, nrow)]
                rest.add(_normalize(row, q * pbound + p * nbound))
        system = rest
        logger.debug("eliminated variable %d, %d inequalities remain", var, len(system))
    return all(bound >= 0 for _, bound in system)

"""Truncated loop arrangements and the periodic dual data.

The loop arrangement repeats every edge ``e`` once per slot ``k`` in
``[-N, N]``. Loop chambers are sign patterns that are constant away from a
single slot per edge; the periodic side is described through the Gale dual
of the finite arrangement (``dual_mu``, :class:`MonoidSpec`, ``epsilon``,
``psi``).
"""
import itertools
import logging
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

from galeforge.arrangement import PolarizedArrangement, SignVector
from galeforge.exceptions import InvalidInput, NotABasis, WindowTooSmall
from galeforge.helpers import cache, l1_norm

logger = logging.getLogger(__name__)

POLE_ZERO = "0"
POLE_INFINITY = "inf"

WEAK_POSITIVE = ">=0"
WEAK_NEGATIVE = "<=0"
STRICT_POSITIVE = ">0"
STRICT_NEGATIVE = "<0"

_BOUNDS = {
    WEAK_POSITIVE: (0, None),
    STRICT_POSITIVE: (1, None),
    WEAK_NEGATIVE: (None, 0),
    STRICT_NEGATIVE: (None, -1),
}


@dataclass(frozen=True)
class LoopChamber:
    """A chamber of the loop arrangement.

    On edge ``e`` the sign at slot ``shift[e]`` is ``base[e]``. With pole
    ``0`` slots below are ``-`` and slots above are ``+``; with pole ``inf``
    it is the other way round.
    """

    base: SignVector
    shift: Tuple[int, ...]
    pole: str = POLE_ZERO

    def __post_init__(self):
        if self.pole not in (POLE_ZERO, POLE_INFINITY):
            raise InvalidInput(f"pole must be {POLE_ZERO!r} or {POLE_INFINITY!r}")
        if len(self.shift) != len(self.base):
            raise InvalidInput("shift and base sign have different lengths")

    def translate(self, delta: Sequence[int]) -> "LoopChamber":
        shift = tuple(a + b for a, b in zip(self.shift, delta))
        return LoopChamber(self.base, shift, self.pole)

    @property
    def reach(self) -> int:
        return max((abs(x) for x in self.shift), default=0)

    def signs(self, N: int) -> SignVector:
        """Signs on ``E x [-N, N]``, edge-major, whenever every shifted slot fits."""
        if N < self.reach:
            raise WindowTooSmall(N, self.reach)
        below, above = (-1, 1) if self.pole == POLE_ZERO else (1, -1)
        signs = []
        for e, (base, delta) in enumerate(zip(self.base, self.shift)):
            for k in range(-N, N + 1):
                signs.append(below if k < delta else above if k > delta else base)
        return SignVector(tuple(signs))

    def __str__(self) -> str:
        return f"{self.base}^{self.pole}{list(self.shift)}"


def truncate_chamber(chamber: LoopChamber, N: int) -> SignVector:
    """Truncate a loop chamber to ``E x [-N, N]``.

    :raises WindowTooSmall:
        Unless ``N`` exceeds every ``|shift_e|``.
    """
    check_window(N, chamber.shift)
    return chamber.signs(N)


def check_window(N: int, shift: Sequence[int]) -> None:
    """Truncation at ``N`` needs a free slot beyond every shifted one."""
    needed = max((abs(x) for x in shift), default=0) + 1
    if N < needed:
        raise WindowTooSmall(N, needed)


def slot_index(e: int, k: int, N: int) -> int:
    return e * (2 * N + 1) + (k + N)


def rotation_weight(A: PolarizedArrangement, N: int) -> int:
    return 1 + 2 * (2 * N + 1) * max((abs(z) for z in A.zeta_lift), default=0)


def truncate(A: PolarizedArrangement, N: int, rotation: Optional[int] = None) -> PolarizedArrangement:
    """The loop arrangement on ``E x [-N, N]``.

    Slot ``(e, k)`` carries the weight of ``e`` and the cocharacter lift
    ``zeta_e - n k``, where the loop rotation ``n`` dominates ``zeta``.
    """
    if N < 0:
        raise InvalidInput(f"truncation window must be nonnegative, got {N}")
    n = rotation_weight(A, N) if rotation is None else rotation
    edges, rows, zeta = [], [], []
    for e, label in enumerate(A.edges):
        for k in range(-N, N + 1):
            edges.append(f"{label}@{k}")
            rows.append(A.rows[e])
            zeta.append(A.zeta_lift[e] - n * k)
    return PolarizedArrangement(tuple(edges), tuple(rows), A.eta, tuple(zeta))


def loop_basis(b, gamma: Sequence[int], A: PolarizedArrangement, N: int) -> Tuple[int, ...]:
    """Truncated loop basis: every slot except ``(e, (B gamma)_e)`` for ``e`` outside ``b``."""
    subset = A.basis(b).b
    delta = A.image(gamma)
    check_window(N, delta)
    dropped = {slot_index(e, delta[e], N) for e in range(A.n_edges) if e not in subset}
    return tuple(i for i in range(A.n_edges * (2 * N + 1)) if i not in dropped)


def quasimap_chambers(
    A: PolarizedArrangement,
    gamma: Sequence[int],
    twist: Optional[Sequence[int]] = None,
    alpha_plus: Optional[SignVector] = None,
    alpha_minus: Optional[SignVector] = None,
) -> Tuple[LoopChamber, LoopChamber]:
    """The pair ``m . alpha_+^0`` and ``(B gamma) . alpha_-^inf`` of loop chambers."""
    n = A.n_edges
    twist = tuple(twist) if twist is not None else (0,) * n
    alpha_plus = alpha_plus or SignVector.all_plus(n)
    alpha_minus = alpha_minus or SignVector.all_minus(n)
    return (
        LoopChamber(alpha_plus, twist, POLE_ZERO),
        LoopChamber(alpha_minus, A.image(gamma), POLE_INFINITY),
    )


def periodic_tilting_index(A: PolarizedArrangement, alpha_plus: Optional[SignVector] = None) -> LoopChamber:
    """Index ``nu(alpha_+)^inf`` of the periodic tilting module.

    :raises NotBoundedFeasible:
        If ``alpha_plus`` is not bounded and feasible.
    """
    alpha_plus = alpha_plus or SignVector.all_plus(A.n_edges)
    return LoopChamber(A.nu(alpha_plus), (0,) * A.n_edges, POLE_INFINITY)


@cache
def gale_dual(A: PolarizedArrangement) -> PolarizedArrangement:
    return A.gale_dual()


def dual_mu(A: PolarizedArrangement, b) -> SignVector:
    """``mu`` of the Gale dual at the dual basis ``b`` (``k`` edges of ``A``)."""
    subset = A.subset(b)
    if len(subset) != A.k:
        raise NotABasis([A.edges[i] for i in subset])
    return gale_dual(A).mu(subset)


@dataclass(frozen=True)
class MonoidSpec:
    """Coordinatewise sign constraints on integer vectors indexed by a dual basis."""

    b: Tuple[int, ...]
    constraints: Tuple[str, ...]

    def contains(self, s: Sequence[int]) -> bool:
        for value, constraint in zip(s, self.constraints):
            lo, hi = _BOUNDS[constraint]
            if (lo is not None and value < lo) or (hi is not None and value > hi):
                return False
        return True

    @property
    def is_weak(self) -> bool:
        return all(c in (WEAK_POSITIVE, WEAK_NEGATIVE) for c in self.constraints)

    def weakened(self) -> "MonoidSpec":
        weak = {STRICT_POSITIVE: WEAK_POSITIVE, STRICT_NEGATIVE: WEAK_NEGATIVE}
        return MonoidSpec(self.b, tuple(weak.get(c, c) for c in self.constraints))


def monoid_spec(A: PolarizedArrangement, b, alpha: SignVector) -> MonoidSpec:
    """The monoid of degrees ``s`` on ``b`` attached to the chamber ``alpha``.

    With ``m = dual_mu(b)(e)``: agreement ``alpha(e) == m`` gives a weak
    half-line in the direction of ``m``, disagreement a strict one.
    """
    subset = A.subset(b)
    m = dual_mu(A, subset)
    constraints = []
    for e in subset:
        if alpha[e] == m[e]:
            constraints.append(WEAK_POSITIVE if m[e] > 0 else WEAK_NEGATIVE)
        else:
            constraints.append(STRICT_POSITIVE if m[e] > 0 else STRICT_NEGATIVE)
    return MonoidSpec(subset, tuple(constraints))


def epsilon(A: PolarizedArrangement, b) -> Tuple[int, ...]:
    """Indicator of the edges where ``dual_mu(b)`` is ``+``."""
    return tuple(1 if s > 0 else 0 for s in dual_mu(A, b))


def psi(A: PolarizedArrangement, b, k: Sequence[int], s: Sequence[int]) -> int:
    """Cohomological degree of the ``(k, s)`` term of the dual basis ``b``.

    ``|B phi(k)| + |B phi(k - s) - eps| - |B phi(s) + eps|`` with ``|.|`` the
    l1-norm on ``Z^E``.
    """
    eps = epsilon(A, b)
    r = [a - c for a, c in zip(k, s)]
    image_k = A.image(A.phi(b, k))
    image_r = A.image(A.phi(b, r))
    image_s = A.image(A.phi(b, s))
    return (
        l1_norm(image_k)
        + l1_norm(x - y for x, y in zip(image_r, eps))
        - l1_norm(x + y for x, y in zip(image_s, eps))
    )


def splittings(
    A: PolarizedArrangement,
    b,
    k: Sequence[int],
    alpha_plus: Optional[SignVector] = None,
    alpha_minus: Optional[SignVector] = None,
) -> List[Tuple[Tuple[int, ...], Tuple[int, ...]]]:
    """All ``(s, r)`` with ``s + r = k``, ``s`` in the ``alpha_+`` monoid and ``r`` in the ``alpha_-`` monoid.

    Both monoids point along ``dual_mu(b)`` on every coordinate, so there are
    finitely many splittings.
    """
    alpha_plus = alpha_plus or SignVector.all_plus(A.n_edges)
    alpha_minus = alpha_minus or SignVector.all_minus(A.n_edges)
    plus = monoid_spec(A, b, alpha_plus)
    minus = monoid_spec(A, b, alpha_minus)
    ranges = []
    for value, c_plus, c_minus in zip(k, plus.constraints, minus.constraints):
        lo1, hi1 = _BOUNDS[c_plus]
        lo2, hi2 = _BOUNDS[c_minus]
        # s in [lo1, hi1] and value - s in [lo2, hi2]
        if lo1 is not None:
            ranges.append(range(lo1, value - lo2 + 1))
        else:
            ranges.append(range(value - hi2, hi1 + 1))
    result = []
    for s in itertools.product(*ranges):
        r = tuple(value - x for value, x in zip(k, s))
        result.append((tuple(s), r))
    return result


def d_gamma(A: PolarizedArrangement, gamma: Sequence[int]) -> int:
    """``|B gamma| - rk T``."""
    return l1_norm(A.image(gamma)) - A.t_rank

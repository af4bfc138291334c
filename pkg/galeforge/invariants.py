"""Refined quasimap invariants computed two ways.

``upsilon_oracle`` counts torus fixed points on the quasimap moduli, which is
a toric GIT quotient of the vector space returned by :func:`quasimap_weights`.
``upsilon_formula`` sums ``tau ** psi`` over dual bases and splittings of the
degree. :func:`verify` compares the two term by term.
"""
import logging
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Callable, Dict, Iterator, List, Optional, Sequence, Tuple, TypeVar

from galeforge import loops, oracle
from galeforge.arrangement import PolarizedArrangement, SignVector
from galeforge.exceptions import ConventionError, InvalidInput, UnsupportedTwist
from galeforge.helpers import l1_norm
from galeforge.oracle import WeightedSpace
from galeforge.polynomial import Degree, GeneratingSeries, TauPolynomial

logger = logging.getLogger(__name__)

#: Worker threads used when ``threads`` is not given. ``None`` lets the
#: executor pick, which follows ``os.cpu_count()``.
DEFAULT_THREADS: Optional[int] = None

T = TypeVar("T")


def _map(func: Callable[[Degree], T], gammas: Sequence[Degree], threads: Optional[int]) -> List[T]:
    threads = threads if threads is not None else DEFAULT_THREADS
    if threads == 1 or len(gammas) < 2:
        return [func(g) for g in gammas]
    with ThreadPoolExecutor(max_workers=threads) as executor:
        # map() yields in submission order, independent of scheduling.
        return list(executor.map(func, gammas))


def threads_from_env() -> Optional[int]:
    value = os.environ.get("GALEFORGE_THREADS")
    if not value:
        return None
    try:
        threads = int(value)
    except ValueError:
        raise InvalidInput(f"GALEFORGE_THREADS must be a positive integer, got {value!r}")
    if threads < 1:
        raise InvalidInput(f"GALEFORGE_THREADS must be a positive integer, got {value!r}")
    return threads


def _check_twist(A: PolarizedArrangement, twist: Optional[Sequence[int]]) -> Tuple[int, ...]:
    if twist is None:
        return (0,) * A.n_edges
    twist = tuple(twist)
    if len(twist) != A.n_edges:
        raise InvalidInput(f"twist has length {len(twist)}, expected {A.n_edges}")
    return twist


def _l1_ball(k: int, radius: int) -> Iterator[Tuple[int, ...]]:
    if k == 0:
        yield ()
        return
    for head in range(-radius, radius + 1):
        for tail in _l1_ball(k - 1, radius - abs(head)):
            yield (head,) + tail


def degrees(A: PolarizedArrangement, D: int) -> List[Degree]:
    """Nonzero ``gamma`` with ``|B gamma| <= D``, lexicographically sorted.

    Since ``(B gamma)`` restricted to a dual basis ``b0`` determines ``gamma``
    and is bounded by ``|B gamma|``, it suffices to scan an l1-ball on ``b0``.
    """
    if A.k == 0:
        return []
    b0 = A.dual_bases()[0]
    found = set()
    for v in _l1_ball(A.k, D):
        gamma = A.phi(b0, v)
        if any(gamma) and l1_norm(A.image(gamma)) <= D:
            found.add(gamma)
    logger.debug("%d degrees with |B gamma| <= %d", len(found), D)
    return sorted(found)


def quasimap_weights(
    A: PolarizedArrangement, gamma: Sequence[int], twist: Optional[Sequence[int]] = None
) -> WeightedSpace:
    """Weighted coordinates of the space of quasimaps of degree ``gamma``.

    Edge ``e`` contributes ``t_e = (B gamma)_e - m_e`` coordinates of weight
    ``w_e`` if ``t_e > 0`` and ``|t_e|`` coordinates of weight ``-w_e`` if
    ``t_e < 0``.
    """
    twist = _check_twist(A, twist)
    coords = []
    for e, (degree, m) in enumerate(zip(A.image(gamma), twist)):
        t = degree - m
        weight = A.rows[e] if t > 0 else tuple(-x for x in A.rows[e])
        for i in range(abs(t)):
            coords.append((f"{A.edges[e]}#{i}", weight))
    return WeightedSpace(tuple(coords), A.eta, A.k)


def truncated_quasimap_weights(
    A: PolarizedArrangement, gamma: Sequence[int], N: int, twist: Optional[Sequence[int]] = None
) -> WeightedSpace:
    """The same data read off the truncated loop arrangement at window ``N``."""
    first, second = loops.quasimap_chambers(A, gamma, twist)
    truncated = loops.truncate(A, N)
    return truncated.lagrangian_weights(
        loops.truncate_chamber(first, N), loops.truncate_chamber(second, N)
    )


def _formula_coefficient(
    A: PolarizedArrangement,
    gamma: Degree,
    alpha_plus: SignVector,
    alpha_minus: SignVector,
) -> TauPolynomial:
    image = A.image(gamma)
    terms = []
    for b in A.dual_bases():
        k = tuple(image[e] for e in b)
        for s, _ in loops.splittings(A, b, k, alpha_plus, alpha_minus):
            value = loops.psi(A, b, k, s)
            if value < 0 or value % 2:
                raise ConventionError(value, f"basis {[A.edges[e] for e in b]}, k={list(k)}, s={list(s)}")
            terms.append((value, 1))
    return TauPolynomial.from_terms(terms)


def upsilon_formula(
    A: PolarizedArrangement,
    D: int,
    alpha_plus: Optional[SignVector] = None,
    alpha_minus: Optional[SignVector] = None,
    twist: Optional[Sequence[int]] = None,
    threads: Optional[int] = None,
) -> GeneratingSeries:
    """Refined generating series from the closed formula over dual bases.

    :raises UnsupportedTwist:
        For a nonzero ``twist``.
    :raises ConventionError:
        If some exponent comes out odd or negative.
    """
    if twist is not None and any(_check_twist(A, twist)):
        raise UnsupportedTwist(twist)
    alpha_plus = alpha_plus or SignVector.all_plus(A.n_edges)
    alpha_minus = alpha_minus or SignVector.all_minus(A.n_edges)
    for alpha in (alpha_plus, alpha_minus):
        if len(alpha) != A.n_edges:
            raise InvalidInput(f"sign vector {alpha} has length {len(alpha)}, expected {A.n_edges}")
    gammas = degrees(A, D)
    coefficients = _map(
        lambda g: _formula_coefficient(A, g, alpha_plus, alpha_minus), gammas, threads
    )
    return GeneratingSeries.from_mapping(D, dict(zip(gammas, coefficients)))


def upsilon_oracle(
    A: PolarizedArrangement,
    D: int,
    twist: Optional[Sequence[int]] = None,
    threads: Optional[int] = None,
) -> GeneratingSeries:
    """Refined generating series from fixed-point counts on the quasimap moduli."""
    twist = _check_twist(A, twist)
    gammas = degrees(A, D)
    coefficients = _map(
        lambda g: oracle.bb_poincare(quasimap_weights(A, g, twist)), gammas, threads
    )
    return GeneratingSeries.from_mapping(D, dict(zip(gammas, coefficients)))


def upsilon_euler(
    A: PolarizedArrangement,
    D: int,
    twist: Optional[Sequence[int]] = None,
    threads: Optional[int] = None,
) -> Dict[Degree, int]:
    """Unrefined invariants: Euler characteristics of the quasimap moduli."""
    twist = _check_twist(A, twist)
    gammas = degrees(A, D)
    counts = _map(lambda g: oracle.euler(quasimap_weights(A, g, twist)), gammas, threads)
    return {g: c for g, c in zip(gammas, counts) if c}


@dataclass(frozen=True)
class VerificationReport:
    degree_bound: int
    degrees_checked: int
    mismatches: Tuple[Tuple[Degree, TauPolynomial, TauPolynomial], ...]

    @property
    def passed(self) -> bool:
        return not self.mismatches

    def render(self) -> str:
        if self.passed:
            return f"all degrees match ({self.degrees_checked} degrees up to {self.degree_bound})"
        lines = [f"{len(self.mismatches)} mismatching degrees"]
        for gamma, formula, fixed_points in self.mismatches:
            lines.append(f"z^({', '.join(str(x) for x in gamma)}) formula: {formula} oracle: {fixed_points}")
        return "\n".join(lines)


def verify(
    A: PolarizedArrangement,
    D: int,
    alpha_plus: Optional[SignVector] = None,
    alpha_minus: Optional[SignVector] = None,
    threads: Optional[int] = None,
) -> VerificationReport:
    """Compare the formula and oracle series at the untwisted basepoint."""
    formula = upsilon_formula(A, D, alpha_plus, alpha_minus, threads=threads)
    fixed_points = upsilon_oracle(A, D, threads=threads)
    mismatches = tuple(formula.mismatches(fixed_points))
    for gamma, _, _ in mismatches:
        logger.debug("mismatch at gamma=%s", gamma)
    return VerificationReport(D, len(degrees(A, D)), mismatches)


def tilting_grdim_periodic(A: PolarizedArrangement, gamma: Sequence[int]) -> TauPolynomial:
    """Graded dimension of a weight space of the periodic tilting module.

    The formula coefficient of ``z^gamma`` shifted by ``tau^d_gamma``.
    """
    n = A.n_edges
    coefficient = _formula_coefficient(
        A, tuple(gamma), SignVector.all_plus(n), SignVector.all_minus(n)
    )
    return coefficient.shift(loops.d_gamma(A, gamma))


def ext_poincare(A: PolarizedArrangement, alpha1: SignVector, alpha2: SignVector) -> TauPolynomial:
    """Poincare polynomial of the intersection of two lagrangians, unshifted."""
    return oracle.bb_poincare(A.lagrangian_weights(alpha1, alpha2))

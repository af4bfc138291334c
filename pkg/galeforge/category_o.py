"""Character combinatorics of hypertoric category O.

Everything here is computed from ``mu``, sign agreement on bases and the
``zeta``-values of vertices; no algebra is constructed.
"""
import logging
from dataclasses import dataclass
from graphlib import CycleError, TopologicalSorter
from typing import Dict, Iterable, List, Set, Tuple, Union

from galeforge.arrangement import BasisVertex, PolarizedArrangement, SignVector
from galeforge.exceptions import Degenerate
from galeforge.helpers import cache

logger = logging.getLogger(__name__)

BasisLike = Union[BasisVertex, Iterable[int]]


@dataclass(frozen=True)
class TiltingFiltrationReport:
    """Nonzero subquotients of the tilting module with projective index ``index``.

    Each subquotient is a basis with the Verma index computed for ``-zeta``.
    """

    index: SignVector
    subquotients: Tuple[Tuple[Tuple[int, ...], SignVector], ...]

    @property
    def bases(self) -> List[Tuple[int, ...]]:
        return [b for b, _ in self.subquotients]

    def verma_index(self, b: Tuple[int, ...]) -> SignVector:
        return dict(self.subquotients)[tuple(b)]


def cone_membership(A: PolarizedArrangement, b: BasisLike, beta: SignVector) -> bool:
    """Whether ``beta`` agrees with ``mu(b)`` on ``b``."""
    vertex = A.basis(b)
    return beta.agrees_on(A.mu(vertex), vertex.b)


def verma_weight(A: PolarizedArrangement, b: BasisLike, alpha: SignVector) -> int:
    """Dimension (0 or 1) of the ``alpha`` weight space of the Verma module of ``b``."""
    return int(cone_membership(A, b, alpha))


def tilting_filtration(A: PolarizedArrangement, alpha: SignVector) -> TiltingFiltrationReport:
    """Verma filtration of the tilting module indexed by ``nu(alpha)``.

    :raises NotBoundedFeasible:
        If ``alpha`` is not a bounded feasible chamber.
    """
    A.mu_inverse(alpha)
    reverse = A.reverse_polarization()
    subquotients = tuple(
        (vertex.b, reverse.mu(vertex.b))
        for vertex in A.bases()
        if cone_membership(A, vertex, alpha)
    )
    logger.debug("tilting filtration of %s has %d subquotients", alpha, len(subquotients))
    return TiltingFiltrationReport(alpha, subquotients)


def tilting_multiplicity(A: PolarizedArrangement, alpha: SignVector, beta: SignVector) -> int:
    """Dimension of the ``beta`` weight space of the tilting module indexed by ``nu(alpha)``."""
    report = tilting_filtration(A, alpha)
    return sum(1 for b, index in report.subquotients if beta.agrees_on(index, b))


@cache
def basis_order_graph(A: PolarizedArrangement) -> Dict[Tuple[int, ...], Set[Tuple[int, ...]]]:
    """Generating relation of the basis order as successor sets.

    ``b -> b'`` when the bases differ in one element and ``zeta`` is strictly
    larger at the vertex of ``b'``.

    :raises Degenerate:
        If two adjacent vertices have the same ``zeta``-value.
    """
    bases = A.bases()
    values = {v.b: A.zeta_value(v) for v in bases}
    successors: Dict[Tuple[int, ...], Set[Tuple[int, ...]]] = {v.b: set() for v in bases}
    for i, first in enumerate(bases):
        for second in bases[i + 1:]:
            if len(set(first.b) ^ set(second.b)) != 2:
                continue
            low, high = values[first.b], values[second.b]
            if low == high:
                raise Degenerate(
                    f"bases {list(first.b)} and {list(second.b)} have equal zeta-value {low}"
                )
            if low < high:
                successors[first.b].add(second.b)
            else:
                successors[second.b].add(first.b)
    return successors


def is_order_acyclic(A: PolarizedArrangement) -> bool:
    graph = basis_order_graph(A)
    try:
        tuple(TopologicalSorter(graph).static_order())
    except CycleError:
        return False
    return True


def basis_order_less(A: PolarizedArrangement, b: BasisLike, b2: BasisLike) -> bool:
    """Strict order on bases: transitive closure of the generating relation."""
    start, target = A.basis(b).b, A.basis(b2).b
    if start == target:
        return False
    graph = basis_order_graph(A)
    seen = {start}
    stack = [start]
    while stack:
        for nxt in graph[stack.pop()]:
            if nxt == target:
                return True
            if nxt not in seen:
                seen.add(nxt)
                stack.append(nxt)
    return False


def is_linked(A: PolarizedArrangement, eta_bar) -> bool:
    """Whether the real feasible set at ``eta_bar`` equals the lattice feasible set at ``eta``.

    :raises Degenerate:
        If ``eta_bar`` is not generic.
    """
    other = A.with_parameters(eta=eta_bar)
    walls = [c.gamma for c, sign in zip(other.circuits(), other.kahler_signature()) if sign == 0]
    if walls:
        raise Degenerate(f"eta {list(other.eta)} lies on the wall of circuit {list(walls[0])}")
    real = set(other.enumerate_chambers("feasible"))
    integral = set(A.enumerate_chambers("feasible", lattice=True))
    return real == integral


def character_table(
    A: PolarizedArrangement, alpha: SignVector, box: int
) -> Dict[SignVector, int]:
    """Tilting character restricted to chambers with a lattice point in the box.

    Only nonzero multiplicities are listed.
    """
    report = tilting_filtration(A, alpha)
    table = {}
    for beta in A.enumerate_chambers("feasible", lattice=True):
        if not A.lattice_points(beta, box):
            continue
        multiplicity = sum(1 for b, index in report.subquotients if beta.agrees_on(index, b))
        if multiplicity:
            table[beta] = multiplicity
    return table


"""Polarized hyperplane arrangements.

An arrangement is the triple ``(B, eta, zeta_lift)``: row ``e`` of the integer
matrix ``B`` is the weight ``w_e`` of coordinate ``e`` under the torus of rank
``k``, ``eta`` is a character of that torus and ``zeta_lift`` an integer lift
of a cocharacter of the quotient torus ``Z^E / im B``.
"""
import itertools
import json
import logging
import math
from collections import deque
from dataclasses import dataclass, replace
from fractions import Fraction
from functools import cached_property
from typing import Any, Dict, Iterable, List, Optional, Sequence, Tuple, Union

import numpy as np

from galeforge import lattice, simplex
from galeforge.exceptions import (
    Degenerate,
    InvalidArrangement,
    InvalidInput,
    NonSaturated,
    NotABasis,
    NotBoundedFeasible,
    TooLarge,
)
from galeforge.helpers import cache, int_tuple
from galeforge.oracle import WeightedSpace
from galeforge.query import ChamberQuery

logger = logging.getLogger(__name__)

#: Chamber and basis enumeration refuse arrangements with more edges.
MAX_ENUMERATION_EDGES = 20

CHAMBER_FILTERS = ("feasible", "bounded", "both", "all")


@dataclass(frozen=True)
class SignVector:
    """An element of ``{+, -}^E``, stored as a tuple of ``1`` and ``-1``."""

    signs: Tuple[int, ...]

    def __post_init__(self):
        if any(s not in (1, -1) for s in self.signs):
            raise InvalidInput(f"sign vector entries must be +1 or -1, got {self.signs}")

    @classmethod
    def parse(cls, text: str) -> "SignVector":
        """Parse a string over ``{+, -}`` such as ``"+-+"``."""
        table = {"+": 1, "-": -1}
        try:
            return cls(tuple(table[c] for c in text.strip()))
        except KeyError:
            raise InvalidInput(f"sign vectors are strings over '+' and '-', got {text!r}")

    @classmethod
    def all_plus(cls, n: int) -> "SignVector":
        return cls((1,) * n)

    @classmethod
    def all_minus(cls, n: int) -> "SignVector":
        return cls((-1,) * n)

    def flip(self, indices: Iterable[int]) -> "SignVector":
        indices = set(indices)
        return SignVector(tuple(-s if i in indices else s for i, s in enumerate(self.signs)))

    def negate(self) -> "SignVector":
        return SignVector(tuple(-s for s in self.signs))

    def agrees_on(self, other: "SignVector", indices: Iterable[int]) -> bool:
        return all(self.signs[i] == other.signs[i] for i in indices)

    @property
    def sort_key(self) -> Tuple[int, ...]:
        return tuple(0 if s > 0 else 1 for s in self.signs)

    def __lt__(self, other: "SignVector") -> bool:
        return self.sort_key < other.sort_key

    def __getitem__(self, i: int) -> int:
        return self.signs[i]

    def __len__(self) -> int:
        return len(self.signs)

    def __iter__(self):
        return iter(self.signs)

    def __str__(self) -> str:
        return "".join("+" if s > 0 else "-" for s in self.signs)


@dataclass(frozen=True)
class BasisVertex:
    """A basis ``b`` together with the vertex where the hyperplanes of ``b`` meet."""

    b: Tuple[int, ...]
    vertex: Tuple[Fraction, ...]

    def to_json(self, edges: Sequence[str]) -> Dict[str, Any]:
        return {
            "basis": [edges[i] for i in self.b],
            "vertex": [int(x) if x.denominator == 1 else str(x) for x in self.vertex],
        }


@dataclass(frozen=True)
class Circuit:
    """A primitive lattice vector together with its image in ``Z^E``."""

    gamma: Tuple[int, ...]
    image: Tuple[int, ...]

    @property
    def support(self) -> Tuple[int, ...]:
        return tuple(i for i, x in enumerate(self.image) if x != 0)


@dataclass(frozen=True)
class ValidationReport:
    """Outcome of :meth:`PolarizedArrangement.validate`."""

    failures: Tuple[str, ...] = ()

    @property
    def passed(self) -> bool:
        return not self.failures

    def render(self) -> str:
        if self.passed:
            return "valid"
        return "\n".join(f"invalid: {failure}" for failure in self.failures)


def _sign(value) -> int:
    return (value > 0) - (value < 0)


def minimal_support_images(matrix: np.ndarray) -> List[Circuit]:
    """Primitive vectors of minimal support in the column span of ``matrix``.

    One representative is kept per sign pair: the one whose first nonzero
    image entry is positive. The result is sorted by image.
    """
    m, k = matrix.shape
    if k == 0:
        return []
    found: Dict[Tuple[int, ...], Tuple[int, ...]] = {}
    for subset in itertools.combinations(range(m), k - 1):
        sub = matrix[list(subset), :].reshape(len(subset), k)
        if lattice.rank(sub) != k - 1:
            continue
        gamma = tuple(int(x) for x in lattice.kernel_saturated(sub)[:, 0])
        image = tuple(int(x) for x in lattice.mat_vec(matrix, gamma))
        lead = next((x for x in image if x != 0), 0)
        if lead == 0:
            continue
        if lead < 0:
            gamma = tuple(-x for x in gamma)
            image = tuple(-x for x in image)
        found.setdefault(image, gamma)
    return [Circuit(gamma, image) for image, gamma in sorted(found.items())]


@dataclass(frozen=True)
class PolarizedArrangement:
    """Core developer interface for galeforge.

    :param edges:
        Edge labels, one per coordinate.
    :param rows:
        Weight ``w_e`` of each coordinate, the rows of ``B``.
    :param eta:
        Character, a vector of length ``k``.
    :param zeta_lift:
        Integer lift of the cocharacter, a vector indexed by edges.
    """

    edges: Tuple[str, ...]
    rows: Tuple[Tuple[int, ...], ...]
    eta: Tuple[int, ...]
    zeta_lift: Tuple[int, ...]

    def __post_init__(self):
        n, k = len(self.rows), len(self.eta)
        if len(self.edges) != n:
            raise InvalidInput(f"{len(self.edges)} edge labels for {n} matrix rows")
        if len(set(self.edges)) != n:
            raise InvalidInput("edge labels must be unique")
        for label, row in zip(self.edges, self.rows):
            if len(row) != k:
                raise InvalidInput(
                    f"row of edge {label!r} has {len(row)} entries, eta has {k}"
                )
        if len(self.zeta_lift) != n:
            raise InvalidInput(f"zeta_lift has length {len(self.zeta_lift)}, expected {n}")

    @classmethod
    def from_matrix(
        cls,
        matrix: Iterable[Iterable[int]],
        eta: Iterable[int],
        zeta_lift: Iterable[int],
        edges: Optional[Iterable[str]] = None,
    ) -> "PolarizedArrangement":
        """Build an arrangement from plain integer data."""
        eta = int_tuple(eta)
        rows = lattice.to_rows(lattice.int_matrix(matrix, cols=len(eta)))
        edges = tuple(edges) if edges is not None else tuple(f"e{i + 1}" for i in range(len(rows)))
        return cls(tuple(str(e) for e in edges), rows, eta, int_tuple(zeta_lift))

    @classmethod
    def from_json(cls, data: Dict[str, Any]) -> "PolarizedArrangement":
        """Parse the arrangement JSON schema.

        ``{"edges": [names], "matrix": [[int]], "eta": [int], "zeta_lift": [int]}``
        """
        try:
            return cls.from_matrix(
                data["matrix"], data["eta"], data["zeta_lift"], data.get("edges")
            )
        except KeyError as err:
            raise InvalidInput(f"arrangement is missing the {err.args[0]!r} field")
        except (TypeError, AttributeError, ValueError):
            raise InvalidInput("arrangement JSON does not match the schema")

    @classmethod
    def loads(cls, text: str) -> "PolarizedArrangement":
        try:
            return cls.from_json(json.loads(text))
        except json.JSONDecodeError as err:
            raise InvalidInput(f"invalid JSON: {err}")

    def to_json(self) -> Dict[str, Any]:
        return {
            "edges": list(self.edges),
            "matrix": [list(row) for row in self.rows],
            "eta": list(self.eta),
            "zeta_lift": list(self.zeta_lift),
        }

    @property
    def n_edges(self) -> int:
        return len(self.edges)

    @property
    def k(self) -> int:
        return len(self.eta)

    @property
    def t_rank(self) -> int:
        return self.n_edges - self.k

    @cached_property
    def B(self) -> np.ndarray:
        return lattice.int_matrix(self.rows, cols=self.k)

    @cached_property
    def Q(self) -> np.ndarray:
        """Quotient map ``Z^E -> Z^E / im B``.

        :raises NonSaturated:
            If the quotient has torsion.
        """
        return lattice.quotient_map(self.B)

    def index(self, edge: Union[int, str]) -> int:
        if isinstance(edge, str):
            try:
                return self.edges.index(edge)
            except ValueError:
                raise InvalidInput(f"unknown edge {edge!r}")
        if not 0 <= edge < self.n_edges:
            raise InvalidInput(f"edge index {edge} out of range")
        return int(edge)

    def subset(self, b: Union["BasisVertex", Iterable[Union[int, str]]]) -> Tuple[int, ...]:
        if isinstance(b, BasisVertex):
            return b.b
        return tuple(sorted({self.index(e) for e in b}))

    def with_parameters(
        self, eta: Optional[Sequence[int]] = None, zeta_lift: Optional[Sequence[int]] = None
    ) -> "PolarizedArrangement":
        return replace(
            self,
            eta=self.eta if eta is None else int_tuple(eta),
            zeta_lift=self.zeta_lift if zeta_lift is None else int_tuple(zeta_lift),
        )

    def reverse_polarization(self) -> "PolarizedArrangement":
        """The same arrangement polarized by ``-zeta``."""
        return self.with_parameters(zeta_lift=[-z for z in self.zeta_lift])

    def validate(self) -> ValidationReport:
        """Check every arrangement invariant and report the failures."""
        failures: List[str] = []
        r = lattice.rank(self.B)
        if r != self.k:
            failures.append(f"matrix does not have full column rank (rank {r}, expected {self.k})")
            return ValidationReport(tuple(failures))
        saturated = True
        try:
            if not lattice.is_unimodular(self.Q):
                failures.append("quotient map is not totally unimodular")
        except NonSaturated as err:
            failures.append(err.error_string)
            saturated = False
        for label, row in zip(self.edges, self.rows):
            if not any(row):
                failures.append(f"edge {label!r} has zero weight (a circuit of support 1)")
        for circuit in self.circuits():
            if lattice.dot(self.eta, circuit.gamma) == 0:
                failures.append(
                    f"eta is not generic: it pairs to zero with circuit {list(circuit.gamma)}"
                )
        # Cocircuits live in the quotient, which needs a saturated image.
        for cocircuit in self.cocircuits() if saturated else ():
            if lattice.dot(cocircuit.image, self.zeta_lift) == 0:
                failures.append(
                    f"zeta is not generic: it pairs to zero with cocircuit {list(cocircuit.image)}"
                )
        return ValidationReport(tuple(failures))

    def validated(self) -> "PolarizedArrangement":
        """Return ``self``, or raise :class:`InvalidArrangement` if validation fails."""
        report = self.validate()
        if not report.passed:
            raise InvalidArrangement(report)
        return self

    def _check_signs(self, alpha: SignVector) -> SignVector:
        if len(alpha) != self.n_edges:
            raise InvalidInput(f"sign vector {alpha} has length {len(alpha)}, expected {self.n_edges}")
        return alpha

    def is_feasible(self, alpha: SignVector, lattice: bool = False) -> bool:
        """Whether the polyhedron of ``alpha`` contains a real (or lattice) point."""
        return _feasible(self, self._check_signs(alpha), lattice)

    def is_bounded(self, alpha: SignVector) -> bool:
        """Whether ``zeta`` is bounded above on the polyhedron of ``alpha``."""
        return _bounded(self, self._check_signs(alpha))

    def _check_size(self) -> None:
        if self.n_edges > MAX_ENUMERATION_EDGES:
            raise TooLarge(self.n_edges, MAX_ENUMERATION_EDGES)

    def enumerate_chambers(self, filter: str = "both", lattice: bool = False) -> ChamberQuery:
        """All sign vectors passing ``filter``, in canonical order.

        :param str filter:
            One of ``feasible``, ``bounded``, ``both`` or ``all``.
        :param bool lattice:
            Use lattice feasibility.
        :rtype: :class:`ChamberQuery <galeforge.query.ChamberQuery>`
        """
        if filter not in CHAMBER_FILTERS:
            raise InvalidInput(f"unknown chamber filter {filter!r}")
        self._check_size()
        query = ChamberQuery(
            self,
            (SignVector(s) for s in itertools.product((1, -1), repeat=self.n_edges)),
        )
        feasible = True if filter in ("feasible", "both") else None
        bounded = True if filter in ("bounded", "both") else None
        result = query.filter(feasible=feasible, bounded=bounded, lattice=lattice)
        logger.debug("%s chambers (lattice=%s): %d", filter, lattice, len(result))
        return result

    @cached_property
    def _bases(self) -> Tuple[BasisVertex, ...]:
        self._check_size()
        Bt = self.B.T
        found = []
        for b in itertools.combinations(range(self.n_edges), self.t_rank):
            complement = [e for e in range(self.n_edges) if e not in b]
            solution = lattice.solve(Bt[:, complement], self.eta)
            if solution is None:
                continue
            vertex = [Fraction(0)] * self.n_edges
            for e, x in zip(complement, solution):
                vertex[e] = x
            found.append(BasisVertex(b, tuple(vertex)))
        logger.debug("%d bases", len(found))
        return tuple(found)

    def bases(self) -> List[BasisVertex]:
        """Subsets ``b`` of size ``|E| - k`` whose hyperplanes meet in one point."""
        return list(self._bases)

    def basis(self, b: Union[BasisVertex, Iterable[Union[int, str]]]) -> BasisVertex:
        subset = self.subset(b)
        for vertex in self._bases:
            if vertex.b == subset:
                return vertex
        raise NotABasis([self.edges[i] for i in subset])

    def fixed_point_count(self) -> int:
        return len(self._bases)

    def zeta_value(self, b: Union[BasisVertex, Iterable[int]]) -> Fraction:
        """Value of the lifted cocharacter at the vertex of ``b``."""
        return lattice.dot(self.zeta_lift, self.basis(b).vertex)

    def mu(self, b: Union[BasisVertex, Iterable[Union[int, str]]]) -> SignVector:
        """The bounded feasible chamber whose zeta-maximum is the vertex of ``b``.

        :raises Degenerate:
            If a vertex coordinate or a zeta pairing vanishes.
        """
        vertex = self.basis(b)
        complement = [e for e in range(self.n_edges) if e not in vertex.b]
        Bt_c = self.B.T[:, complement]
        signs = [0] * self.n_edges
        for e in complement:
            if vertex.vertex[e] == 0:
                raise Degenerate(f"vertex of basis {list(vertex.b)} lies on hyperplane {self.edges[e]}")
            signs[e] = _sign(vertex.vertex[e])
        for e in vertex.b:
            direction = lattice.solve(Bt_c, self.rows[e])
            pairing = self.zeta_lift[e] - sum(
                self.zeta_lift[c] * x for c, x in zip(complement, direction)
            )
            if pairing == 0:
                raise Degenerate(f"zeta is constant along edge {self.edges[e]} at basis {list(vertex.b)}")
            signs[e] = 1 if pairing < 0 else -1
        return SignVector(tuple(signs))

    @cached_property
    def _mu_table(self) -> Dict[SignVector, BasisVertex]:
        return {self.mu(vertex): vertex for vertex in self._bases}

    def mu_inverse(self, alpha: SignVector) -> BasisVertex:
        """The basis ``b`` with ``mu(b) == alpha``."""
        try:
            return self._mu_table[self._check_signs(alpha)]
        except KeyError:
            raise NotBoundedFeasible(str(alpha))

    def nu(self, alpha: SignVector) -> SignVector:
        """Flip a bounded feasible chamber on its basis ``mu^-1(alpha)``."""
        return alpha.flip(self.mu_inverse(alpha).b)

    def gale_dual(self) -> "PolarizedArrangement":
        """The Gale dual arrangement with matrix ``Q^T``, character ``-zeta`` and cocharacter ``-eta``."""
        Q = self.Q
        eta = tuple(-int(x) for x in lattice.mat_vec(Q, self.zeta_lift))
        zeta = lattice.integer_solution(self.B.T, [-x for x in self.eta])
        if zeta is None:
            raise NonSaturated(lattice.invariant_factors(self.B))
        return PolarizedArrangement(
            self.edges,
            lattice.to_rows(Q.T),
            eta,
            zeta,
        )

    def is_equivalent(self, other: "PolarizedArrangement") -> bool:
        """Whether ``other`` is this arrangement after a unimodular change of basis."""
        if other.edges != self.edges or other.k != self.k:
            return False
        if not self._bases:
            return False
        rows = [e for e in range(self.n_edges) if e not in self._bases[0].b]
        U = np.empty((self.k, self.k), dtype=object)
        for j in range(self.k):
            column = lattice.solve(self.B[rows, :], [other.rows[e][j] for e in rows])
            if any(x.denominator != 1 for x in column):
                return False
            U[:, j] = [int(x) for x in column]
        if lattice.det(U) not in (1, -1):
            return False
        if lattice.to_rows(self.B.dot(U)) != other.rows:
            return False
        if lattice.mat_vec(U.T, self.eta) != other.eta:
            return False
        difference = [a - b for a, b in zip(other.zeta_lift, self.zeta_lift)]
        return all(x == 0 for x in lattice.mat_vec(self.Q, difference))

    @cached_property
    def _circuits(self) -> Tuple[Circuit, ...]:
        return tuple(minimal_support_images(self.B))

    @cached_property
    def _cocircuits(self) -> Tuple[Circuit, ...]:
        return tuple(minimal_support_images(self.Q.T))

    def circuits(self) -> List[Circuit]:
        """Primitive ``gamma`` whose image ``B gamma`` has minimal support."""
        return list(self._circuits)

    def cocircuits(self) -> List[Circuit]:
        """Primitive vectors of minimal support in ``ker B^T``."""
        return list(self._cocircuits)

    def kahler_signature(self, eta: Optional[Sequence[int]] = None) -> Tuple[int, ...]:
        eta = self.eta if eta is None else eta
        return tuple(_sign(lattice.dot(eta, c.gamma)) for c in self._circuits)

    def equivariant_signature(self, zeta_lift: Optional[Sequence[int]] = None) -> Tuple[int, ...]:
        zeta = self.zeta_lift if zeta_lift is None else zeta_lift
        return tuple(_sign(lattice.dot(c.image, zeta)) for c in self._cocircuits)

    def chamber_distance(self, alpha: SignVector, beta: SignVector, within: str = "bounded"):
        """Length of the shortest path of single sign flips from ``alpha`` to ``beta``.

        :param str within:
            ``bounded`` to stay among bounded chambers, ``all`` for the
            Hamming distance.
        :returns:
            An ``int``, or ``math.inf`` when ``beta`` is unreachable.
        """
        self._check_signs(alpha)
        self._check_signs(beta)
        if within == "all":
            return sum(1 for a, b in zip(alpha, beta) if a != b)
        if within != "bounded":
            raise InvalidInput(f"unknown distance mode {within!r}")
        allowed = set(self.enumerate_chambers("bounded"))
        for chamber in (alpha, beta):
            if chamber not in allowed:
                raise InvalidInput(f"{chamber} is not bounded")
        distance = {alpha: 0}
        queue = deque([alpha])
        while queue:
            current = queue.popleft()
            if current == beta:
                return distance[current]
            for e in range(self.n_edges):
                step = current.flip([e])
                if step in allowed and step not in distance:
                    distance[step] = distance[current] + 1
                    queue.append(step)
        return math.inf

    def phi(self, b: Union[BasisVertex, Iterable[Union[int, str]]], s: Sequence[int]) -> Tuple[int, ...]:
        """The unique ``gamma`` with ``(B gamma)_e = s_e`` for ``e`` in ``b``.

        ``b`` is a basis of the Gale dual, i.e. ``k`` edges whose weights
        form a basis.
        """
        subset = self.subset(b)
        if len(subset) != self.k or len(s) != self.k:
            raise NotABasis([self.edges[i] for i in subset])
        solution = lattice.solve(self.B[list(subset), :].reshape(self.k, self.k), list(s))
        if solution is None:
            raise NotABasis([self.edges[i] for i in subset])
        return int_tuple(solution)

    def dual_bases(self) -> List[Tuple[int, ...]]:
        """Subsets of ``k`` edges whose weights form a basis."""
        return [tuple(sorted(set(range(self.n_edges)) - set(v.b))) for v in self._bases]

    def image(self, gamma: Sequence[int]) -> Tuple[int, ...]:
        """``B gamma``."""
        return tuple(int(x) for x in lattice.mat_vec(self.B, gamma))

    def lagrangian_weights(self, alpha1: SignVector, alpha2: SignVector) -> WeightedSpace:
        """Coordinates of the intersection of the lagrangians of two chambers."""
        self._check_signs(alpha1)
        self._check_signs(alpha2)
        coords = []
        for e, (a, b) in enumerate(zip(alpha1, alpha2)):
            if a == b == 1:
                coords.append((f"x_{self.edges[e]}", self.rows[e]))
            elif a == b == -1:
                coords.append((f"y_{self.edges[e]}", tuple(-x for x in self.rows[e])))
        return WeightedSpace(tuple(coords), self.eta, self.k)

    def lattice_points(self, alpha: SignVector, box: int) -> List[Tuple[int, ...]]:
        """Lattice points of the polyhedron of ``alpha`` with every ``|x_e| <= box``.

        Lattice points satisfy ``x_e >= 0`` where ``alpha`` is ``+`` and
        ``x_e <= -1`` where it is ``-``.
        """
        self._check_signs(alpha)
        if not self._bases:
            return []
        free = self._bases[0].b
        pinned = [e for e in range(self.n_edges) if e not in free]
        Bt_pinned = self.B.T[:, pinned]
        points = []
        for values in itertools.product(range(-box, box + 1), repeat=len(free)):
            rhs = list(self.eta)
            for e, x in zip(free, values):
                rhs = [r - x * w for r, w in zip(rhs, self.rows[e])]
            solution = lattice.solve(Bt_pinned, rhs)
            point = [0] * self.n_edges
            for e, x in zip(free, values):
                point[e] = x
            for e, x in zip(pinned, solution):
                point[e] = int(x)
            if all(abs(x) <= box for x in point) and all(
                x >= 0 if s > 0 else x <= -1 for x, s in zip(point, alpha)
            ):
                points.append(tuple(point))
        return sorted(points)

    def __str__(self) -> str:
        return (
            f"<PolarizedArrangement edges={len(self.edges)} k={self.k} "
            f"eta={list(self.eta)} zeta_lift={list(self.zeta_lift)}>"
        )


@cache
def _feasible(A: PolarizedArrangement, alpha: SignVector, lattice_mode: bool) -> bool:
    constraints = [
        [alpha[e] * A.rows[e][j] for e in range(A.n_edges)] for j in range(A.k)
    ]
    rhs = list(A.eta)
    if lattice_mode:
        # x_e = -1 - y_e on negative edges.
        for e in range(A.n_edges):
            if alpha[e] < 0:
                rhs = [r + w for r, w in zip(rhs, A.rows[e])]
    return simplex.is_feasible(constraints, rhs)


@cache
def _bounded(A: PolarizedArrangement, alpha: SignVector) -> bool:
    n = A.n_edges
    constraints = [
        [alpha[e] * A.rows[e][j] for e in range(n)] + [0] for j in range(A.k)
    ]
    constraints.append([1] * n + [0])
    constraints.append([A.zeta_lift[e] * alpha[e] for e in range(n)] + [-1])
    rhs = [0] * A.k + [1, 0]
    return not simplex.is_feasible(constraints, rhs)

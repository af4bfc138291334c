"""Torus fixed-point oracle for smooth toric GIT quotients.

A :class:`WeightedSpace` lists coordinates of a vector space together with
their weights under a torus ``(C^*)^k`` and a character ``eta``. The GIT
quotient at ``eta`` is smooth when every basis of weights is unimodular, and
its Poincare polynomial is obtained by counting, at each fixed point, the
tangent directions repelled by a generic positive one-parameter subgroup.
"""
import itertools
import logging
from dataclasses import dataclass
from typing import Any, Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

import numpy as np

from galeforge import lattice
from galeforge.exceptions import DegenerateEta, InvalidInput, NonUnimodular
from galeforge.polynomial import TauPolynomial

logger = logging.getLogger(__name__)

#: Probe used by :func:`bb_poincare` when none is given. ``None`` selects the
#: lexicographic probe ``(1, M, M^2, ...)`` with ``M`` arbitrarily large.
DEFAULT_PROBE: Optional[Sequence[int]] = None


@dataclass(frozen=True)
class WeightedSpace:
    """Coordinates with torus weights, plus the stability character."""

    coords: Tuple[Tuple[str, Tuple[int, ...]], ...]
    eta: Tuple[int, ...]
    k: int

    def __post_init__(self):
        if len(self.eta) != self.k:
            raise InvalidInput(f"eta has length {len(self.eta)}, expected {self.k}")
        for label, weight in self.coords:
            if len(weight) != self.k:
                raise InvalidInput(
                    f"weight of {label} has length {len(weight)}, expected {self.k}"
                )

    @classmethod
    def build(
        cls, weights: Iterable[Sequence[int]], eta: Sequence[int], labels: Optional[Iterable[str]] = None
    ) -> "WeightedSpace":
        weights = [tuple(int(x) for x in w) for w in weights]
        labels = list(labels) if labels is not None else [f"c{i}" for i in range(len(weights))]
        eta = tuple(int(x) for x in eta)
        return cls(tuple(zip(labels, weights)), eta, len(eta))

    @classmethod
    def from_json(cls, weights: Any, eta: Any) -> "WeightedSpace":
        """Parse the ``oracle`` command inputs: a list of weights and a character."""
        if isinstance(eta, int):
            eta = [eta]
        try:
            rows = [[w] if isinstance(w, int) else list(w) for w in weights]
            return cls.build(rows, eta)
        except TypeError:
            raise InvalidInput("weights must be a list of integer vectors")

    @property
    def weights(self) -> List[Tuple[int, ...]]:
        return [w for _, w in self.coords]

    @property
    def labels(self) -> List[str]:
        return [label for label, _ in self.coords]

    def weight_multiset(self) -> Tuple[Tuple[int, ...], ...]:
        """Weights sorted, for comparisons up to coordinate relabeling."""
        return tuple(sorted(self.weights))

    def __len__(self) -> int:
        return len(self.coords)

    def to_json(self) -> Dict[str, Any]:
        return {
            "coords": [{"label": label, "weight": list(w)} for label, w in self.coords],
            "eta": list(self.eta),
        }


def check_generic(W: WeightedSpace) -> None:
    """Raise :class:`DegenerateEta` if eta lies in a hyperplane spanned by weights."""
    weights = W.weights
    seen = set()
    for subset in itertools.combinations(range(len(weights)), W.k - 1):
        rows = lattice.int_matrix([weights[i] for i in subset], cols=W.k)
        if lattice.rank(rows) != W.k - 1:
            continue
        normal = lattice.primitive(lattice.kernel_saturated(rows)[:, 0])
        if normal in seen:
            continue
        seen.add(normal)
        if lattice.dot(normal, W.eta) == 0:
            raise DegenerateEta(
                f"eta {list(W.eta)} is orthogonal to {list(normal)}, "
                f"which annihilates {[W.labels[i] for i in subset]}"
            )


def _probe_sign(vector: Sequence, probe: Optional[Sequence[int]]) -> int:
    if probe is not None:
        value = lattice.dot(probe, vector)
        if value != 0:
            return 1 if value > 0 else -1
    for x in reversed(vector):
        if x != 0:
            return 1 if x > 0 else -1
    return 0


def fixed_points(W: WeightedSpace) -> List[Tuple[Tuple[int, ...], Tuple]]:
    """Fixed points of the quotient, as ``(beta, coefficients)`` pairs.

    ``beta`` is a set of ``k`` coordinates whose weights form a basis with
    eta a strictly positive combination of them.
    """
    weights = W.weights
    points = []
    for beta in itertools.combinations(range(len(weights)), W.k):
        basis = lattice.int_matrix([weights[i] for i in beta], cols=W.k)
        d = lattice.det(basis)
        if d == 0:
            continue
        if d not in (1, -1):
            raise NonUnimodular([W.labels[i] for i in beta], d)
        coefficients = lattice.solve(basis.T, W.eta)
        if all(a > 0 for a in coefficients):
            points.append((beta, coefficients))
    return points


def bb_poincare(W: WeightedSpace, probe: Optional[Sequence[int]] = None) -> TauPolynomial:
    """Poincare polynomial of the toric quotient ``W // eta``.

    :param WeightedSpace W:
        Coordinates with weights and a generic character.
    :param probe:
        (Optional) Strictly positive vector on the coordinates defining the
        one-parameter subgroup. Defaults to :data:`DEFAULT_PROBE`.
    :rtype: :class:`TauPolynomial <galeforge.polynomial.TauPolynomial>`
    """
    if W.k == 0:
        return TauPolynomial.one()
    probe = DEFAULT_PROBE if probe is None else probe
    if probe is not None:
        if len(probe) != len(W) or any(p <= 0 for p in probe):
            raise InvalidInput("probe must be a strictly positive vector on the coordinates")
    check_generic(W)

    weights = W.weights
    terms = []
    points = fixed_points(W)
    for beta, _ in points:
        basis_t = lattice.int_matrix([weights[i] for i in beta], cols=W.k).T
        repelling = 0
        for s in range(len(weights)):
            if s in beta:
                continue
            c = lattice.solve(basis_t, weights[s])
            direction = [0] * len(weights)
            direction[s] = 1
            for j, a in zip(beta, c):
                direction[j] -= a
            if _probe_sign(direction, probe) < 0:
                repelling += 1
        terms.append((2 * repelling, 1))
    logger.debug("%d coordinates, %d fixed points", len(W), len(points))
    return TauPolynomial.from_terms(terms)


def euler(W: WeightedSpace) -> int:
    """Euler characteristic of ``W // eta``: the number of torus fixed points."""
    if W.k == 0:
        return 1
    check_generic(W)
    return len(fixed_points(W))

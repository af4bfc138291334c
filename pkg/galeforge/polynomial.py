"""Integer Laurent polynomials in tau and generating series over degrees."""
from collections import defaultdict
from dataclasses import dataclass
from typing import Any, Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

from galeforge.exceptions import InvalidInput

Degree = Tuple[int, ...]


@dataclass(frozen=True)
class TauPolynomial:
    """A finite map from tau-exponent to nonzero integer coefficient."""

    terms: Tuple[Tuple[int, int], ...] = ()

    @classmethod
    def from_terms(cls, terms: Iterable[Tuple[int, int]]) -> "TauPolynomial":
        collected: Dict[int, int] = defaultdict(int)
        for exponent, coefficient in terms:
            collected[int(exponent)] += int(coefficient)
        return cls(tuple(sorted((e, c) for e, c in collected.items() if c != 0)))

    @classmethod
    def monomial(cls, exponent: int, coefficient: int = 1) -> "TauPolynomial":
        return cls.from_terms([(exponent, coefficient)])

    @classmethod
    def zero(cls) -> "TauPolynomial":
        return cls()

    @classmethod
    def one(cls) -> "TauPolynomial":
        return cls.monomial(0)

    @property
    def exponents(self) -> List[int]:
        return [e for e, _ in self.terms]

    def coefficient(self, exponent: int) -> int:
        return dict(self.terms).get(exponent, 0)

    def evaluate_at_one(self) -> int:
        return sum(c for _, c in self.terms)

    def shift(self, degree: int) -> "TauPolynomial":
        """Multiply by ``tau ** degree``."""
        return TauPolynomial(tuple((e + degree, c) for e, c in self.terms))

    def __add__(self, other: "TauPolynomial") -> "TauPolynomial":
        return TauPolynomial.from_terms(self.terms + other.terms)

    def __mul__(self, other: "TauPolynomial") -> "TauPolynomial":
        return TauPolynomial.from_terms(
            (e1 + e2, c1 * c2) for e1, c1 in self.terms for e2, c2 in other.terms
        )

    def __bool__(self) -> bool:
        return bool(self.terms)

    def to_json(self) -> List[List[int]]:
        return [[e, c] for e, c in self.terms]

    @classmethod
    def from_json(cls, data: Sequence[Sequence[int]]) -> "TauPolynomial":
        try:
            return cls.from_terms((int(e), int(c)) for e, c in data)
        except (TypeError, ValueError):
            raise InvalidInput(f"malformed tau polynomial {data!r}")

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for exponent, coefficient in self.terms:
            if exponent == 0:
                body = str(abs(coefficient))
            else:
                power = "t" if exponent == 1 else f"t^{exponent}"
                body = power if abs(coefficient) == 1 else f"{abs(coefficient)}*{power}"
            if not parts:
                parts.append(body if coefficient > 0 else f"-{body}")
            else:
                parts.append(("+ " if coefficient > 0 else "- ") + body)
        return " ".join(parts)


@dataclass(frozen=True)
class GeneratingSeries:
    """Coefficients ``z^gamma -> TauPolynomial`` for all gamma up to a degree bound.

    Zero coefficients are never stored, and terms are kept in lexicographic
    order of gamma.
    """

    degree_bound: int
    terms: Tuple[Tuple[Degree, TauPolynomial], ...] = ()

    @classmethod
    def from_mapping(
        cls, degree_bound: int, coefficients: Mapping[Degree, TauPolynomial]
    ) -> "GeneratingSeries":
        return cls(
            degree_bound,
            tuple(
                (tuple(gamma), poly)
                for gamma, poly in sorted(coefficients.items())
                if poly
            ),
        )

    @property
    def gammas(self) -> List[Degree]:
        return [gamma for gamma, _ in self.terms]

    def get(self, gamma: Sequence[int]) -> TauPolynomial:
        return dict(self.terms).get(tuple(gamma), TauPolynomial.zero())

    def __getitem__(self, gamma: Sequence[int]) -> TauPolynomial:
        return self.get(gamma)

    def __len__(self) -> int:
        return len(self.terms)

    def evaluate_at_one(self) -> Dict[Degree, int]:
        return {gamma: poly.evaluate_at_one() for gamma, poly in self.terms}

    def mismatches(self, other: "GeneratingSeries") -> List[Tuple[Degree, TauPolynomial, TauPolynomial]]:
        """Degrees where the two series disagree, with both coefficients."""
        gammas = sorted(set(self.gammas) | set(other.gammas))
        return [
            (gamma, self.get(gamma), other.get(gamma))
            for gamma in gammas
            if self.get(gamma) != other.get(gamma)
        ]

    def to_json(self) -> Dict[str, Any]:
        return {
            "degree_bound": self.degree_bound,
            "terms": [
                {"gamma": list(gamma), "tau": poly.to_json()}
                for gamma, poly in self.terms
            ],
        }

    @classmethod
    def from_json(cls, data: Mapping[str, Any]) -> "GeneratingSeries":
        try:
            coefficients = {
                tuple(int(x) for x in term["gamma"]): TauPolynomial.from_json(term["tau"])
                for term in data["terms"]
            }
            return cls.from_mapping(int(data["degree_bound"]), coefficients)
        except (KeyError, TypeError) as err:
            raise InvalidInput(f"malformed generating series: {err}")

    def render(self, gammas: Optional[Iterable[Degree]] = None) -> str:
        """Human readable listing, one ``z^(gamma) : polynomial`` line per term."""
        lines = []
        for gamma, poly in self.terms:
            if gammas is not None and gamma not in gammas:
                continue
            lines.append(f"z^({', '.join(str(x) for x in gamma)}) : {poly}")
        return "\n".join(lines)

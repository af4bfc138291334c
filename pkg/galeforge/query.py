"""This module provides a query interface for chambers of an arrangement."""
from collections.abc import Sequence
from typing import Callable, Iterable, List, Optional, Union


class ChamberQuery(Sequence):
    """Interface for querying sign vectors of a polarized arrangement."""

    def __init__(self, arrangement, chambers):
        """Construct a :class:`ChamberQuery <ChamberQuery>`.

        :param PolarizedArrangement arrangement:
            The arrangement the chambers belong to.
        :param list chambers:
            list of :class:`SignVector <galeforge.arrangement.SignVector>`
            instances, in canonical order.
        """
        self.arrangement = arrangement
        self.chambers = list(chambers)

    def filter(
        self,
        feasible: Optional[bool] = None,
        bounded: Optional[bool] = None,
        lattice: bool = False,
        agrees_with=None,
        on: Optional[Iterable[int]] = None,
        custom_filter_functions: Optional[List[Callable]] = None,
    ) -> "ChamberQuery":
        """Apply the given filtering criterion.

        :param bool feasible:
            (optional) Keep chambers whose polyhedron is (or is not) nonempty.
        :param bool bounded:
            (optional) Keep chambers that are (or are not) bounded.
        :param bool lattice:
            Test feasibility on lattice points instead of real points.
        :param agrees_with:
            (optional) A sign vector the chambers must agree with on ``on``.
        :param on:
            (optional) Edge indices used with ``agrees_with``.
        :param list custom_filter_functions:
            (optional) Interface for defining complex filters without
            subclassing.
        """
        filters = []
        if feasible is not None:
            filters.append(
                lambda a: self.arrangement.is_feasible(a, lattice=lattice) == feasible
            )

        if bounded is not None:
            filters.append(lambda a: self.arrangement.is_bounded(a) == bounded)

        if agrees_with is not None:
            indices = list(on) if on is not None else range(len(agrees_with))
            filters.append(lambda a: a.agrees_on(agrees_with, indices))

        if custom_filter_functions:
            filters.extend(custom_filter_functions)

        return self._filter(filters)

    def _filter(self, filters: List[Callable]) -> "ChamberQuery":
        chambers = self.chambers
        for filter_lambda in filters:
            chambers = filter(filter_lambda, chambers)
        return ChamberQuery(self.arrangement, list(chambers))

    def as_strings(self) -> List[str]:
        return [str(a) for a in self.chambers]

    def first(self):
        """Get the first chamber in the results, or None if there is none."""
        try:
            return self.chambers[0]
        except IndexError:
            return None

    def last(self):
        """Get the last chamber in the results, or None if there is none."""
        try:
            return self.chambers[-1]
        except IndexError:
            return None

    def __getitem__(self, i: Union[slice, int]):
        return self.chambers[i]

    def __len__(self) -> int:
        return len(self.chambers)

    def __repr__(self) -> str:
        return f"{self.as_strings()}"

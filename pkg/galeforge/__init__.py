# flake8: noqa: F401
# noreorder
"""
Galeforge: exact combinatorics of polarized hyperplane arrangements and the
refined quasimap invariants of hypertoric varieties.
"""
__title__ = "galeforge"
__license__ = "The Unlicense (Unlicense)"

from galeforge.version import __version__
from galeforge.exceptions import GaleforgeError
from galeforge.arrangement import PolarizedArrangement, SignVector, BasisVertex
from galeforge.query import ChamberQuery
from galeforge.polynomial import TauPolynomial, GeneratingSeries
from galeforge.oracle import WeightedSpace, bb_poincare
from galeforge.loops import LoopChamber
from galeforge.invariants import upsilon_formula, upsilon_oracle, verify
from galeforge.contrib.graph import Graph

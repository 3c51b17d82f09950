"""Exact arithmetic for congruence systems, geometric residue sets,
divisibility-lattice combinatorics and filter bases over eventually
periodic sets of non-negative integers."""

from . import antichain, crt, filter_lab, geometry, lattice, oracles, periodic_sets
from .crt import Congruence, FeasibilityStream, SolutionClass, solve_pair, solve_system
from .filter_lab import FilterBase
from .geometry import GeometricDescriptor
from .periodic_sets import PeriodicSet, divisibility_union, make, non_divisibility, progression

__version__ = "0.1.0"

__all__ = [
    "Congruence",
    "FeasibilityStream",
    "FilterBase",
    "GeometricDescriptor",
    "PeriodicSet",
    "SolutionClass",
    "antichain",
    "crt",
    "divisibility_union",
    "filter_lab",
    "geometry",
    "lattice",
    "make",
    "non_divisibility",
    "oracles",
    "periodic_sets",
    "progression",
    "solve_pair",
    "solve_system",
]

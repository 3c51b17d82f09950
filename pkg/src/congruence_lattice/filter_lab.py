"""Finitary laboratory for filter bases over eventually periodic sets.

A FilterBase is a finite family of PeriodicSets standing in for a filter
base on the positive integers.  The intersection property is strengthened
to "every finite intersection is infinite", so a valid base always extends
to nonprincipal ultrafilters; for a finite family that is equivalent to
the single condition that the meet of all members is infinite.

Everything here is exact: meets are computed in the periodic-set algebra
and infinitude is decidable there.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from math import gcd, lcm, prod
from typing import Iterable, Optional, Sequence, Union

from .crt import Congruence, solve_system
from .lattice import is_upward_closed
from .periodic_sets import PeriodicSet, progression


class NoWitnessSourceError(ValueError):
    """No pool element is coprime to the modulus and all forbidden divisors."""


def _meet(members: Sequence) -> PeriodicSet:
    out = None
    for s in members:
        out = s if out is None else out.intersect(s)
    return progression(1, 0) if out is None else out


@dataclass(frozen=True)
class FilterBase:
    members: tuple = ()

    def __post_init__(self):
        members = tuple(self.members)
        object.__setattr__(self, "members", members)
        for s in members:
            if not isinstance(s, PeriodicSet):
                raise TypeError(f"filter base members must be PeriodicSet, got {type(s).__name__}")
            if s.is_empty():
                raise ValueError("filter base members must be nonempty")
        meet = _meet(members)
        if not meet.is_infinite():
            raise ValueError("every finite intersection of a filter base must be infinite")
        object.__setattr__(self, "_intersection", meet)

    @property
    def intersection(self) -> PeriodicSet:
        """Meet of all members (cached)."""
        return self._intersection


BaseLike = Union[FilterBase, Sequence]


def _meet_of(base: BaseLike) -> PeriodicSet:
    if isinstance(base, FilterBase):
        return base.intersection
    return _meet(tuple(base))


def has_fip(members: BaseLike) -> bool:
    """True iff the intersection of all members is infinite.

    For a finite family this already implies that every sub-intersection
    is infinite.  Accepts a FilterBase or any sequence of PeriodicSets, so
    candidate families can be tested before constructing a base.
    """
    return _meet_of(members).is_infinite()


def extend(base: FilterBase, s: PeriodicSet) -> Optional[FilterBase]:
    """Base with s appended when that preserves the intersection property,
    else None."""
    if not base.intersection.meets_infinitely(s):
        return None
    return FilterBase(base.members + (s,))


def feasible_residues(base: BaseLike, modulus: int) -> set:
    """Residues r modulo `modulus` whose progression is consistent with the base.

    These are exactly the r for which extend(base, progression(modulus, r))
    would succeed; every ultrafilter extending the base has its residue in
    this set.  A degenerate base whose meet is finite (a principal carrier)
    falls back to the residues actually hit by the finite meet.
    """
    if not isinstance(modulus, int) or modulus < 2:
        raise ValueError(f"modulus must be an integer >= 2, got {modulus!r}")
    meet = _meet_of(base)
    if meet.is_infinite():
        g = gcd(meet.modulus, modulus)
        hit = {r % g for r in meet.residues}
        return {r for r in range(modulus) if r % g in hit}
    if not meet.is_empty():
        return {x % modulus for x in meet.added}
    return set()


class CongruenceVerdict(Enum):
    CONGRUENT = "congruent"
    NOT_CONGRUENT = "not_congruent"
    UNDETERMINED = "undetermined"


def congruent_mod(base_f: BaseLike, base_g: BaseLike, modulus: int) -> CongruenceVerdict:
    """Compare the feasible residue sets of two bases modulo `modulus`.

    Congruent when both are pinned to the same single residue; not
    congruent when the residue sets are disjoint; otherwise undetermined
    (base-level evidence cannot pin the residue down).
    """
    rf = feasible_residues(base_f, modulus)
    rg = feasible_residues(base_g, modulus)
    if rf == rg and len(rf) == 1:
        return CongruenceVerdict.CONGRUENT
    if rf.isdisjoint(rg):
        return CongruenceVerdict.NOT_CONGRUENT
    return CongruenceVerdict.UNDETERMINED


class DividesStatus(Enum):
    PASSES = "passes"
    FAILS = "fails"
    VACUOUS = "vacuous"


@dataclass(frozen=True)
class DividesReport:
    status: DividesStatus
    witness: Optional[PeriodicSet] = None


def divides_check(base_f: FilterBase, base_g: FilterBase) -> DividesReport:
    """Necessary condition for divisibility between ultrafilter extensions.

    Every purely periodic, upward-closed member of base_f must be
    consistent with base_g (their intersection infinite); a failing member
    is returned as the witness.  Vacuous when base_f certifies no
    upward-closed member.  This checks only the upward-closed sets the
    base exhibits, so a pass is never a completeness claim.
    """
    target = base_g.intersection
    found = False
    for member in base_f.members:
        if (member.added | member.removed) - {0}:
            continue  # closure undecidable under edits away from 0
        if not member.residues or not is_upward_closed(member):
            continue
        found = True
        if not target.meets_infinitely(member):
            return DividesReport(DividesStatus.FAILS, member)
    return DividesReport(DividesStatus.PASSES if found else DividesStatus.VACUOUS)


def nmax_witness(modulus: int, residue: int, forbidden: Iterable, pool: Iterable) -> int:
    """Least x with x = residue (mod modulus), a | x for the chosen pool
    element a, and n does not divide x for every forbidden n.

    The source a is the least pool element coprime to the modulus and to
    every forbidden divisor; with such an a the three conditions are
    always simultaneously satisfiable, and the least solution appears
    within one period lcm(modulus, a, product of forbidden).
    """
    if not isinstance(modulus, int) or modulus < 2:
        raise ValueError(f"modulus must be an integer >= 2, got {modulus!r}")
    if not 0 < residue < modulus:
        raise ValueError(f"residue must lie strictly between 0 and {modulus}")
    if gcd(modulus, residue) != 1:
        raise ValueError(f"gcd({modulus}, {residue}) = {gcd(modulus, residue)} != 1")
    forbidden = sorted({int(n) for n in forbidden})
    pool = sorted({int(a) for a in pool})
    if any(n < 2 for n in forbidden):
        raise ValueError("forbidden divisors must be >= 2")
    if not pool:
        raise ValueError("pool must be nonempty")
    if any(a < 2 for a in pool):
        raise ValueError("pool elements must be >= 2")
    source = next(
        (a for a in pool if gcd(a, modulus) == 1 and all(gcd(a, n) == 1 for n in forbidden)),
        None,
    )
    if source is None:
        raise NoWitnessSourceError(
            f"no pool element is coprime to {modulus} and to all of {forbidden}"
        )
    sol = solve_system([Congruence(modulus, residue), Congruence(source, 0)])
    if sol is None:
        raise RuntimeError("coprime moduli cannot produce an infeasible pair")
    cap = lcm(modulus, source, prod(forbidden, start=1))
    x = sol.residue
    while x <= cap:
        if all(x % n != 0 for n in forbidden):
            return x
        x += sol.modulus
    raise RuntimeError("witness search exhausted its period window")

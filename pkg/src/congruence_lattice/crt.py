"""Congruence systems over arbitrary moduli.

General (non-coprime) moduli are merged through gcd compatibility and the
extended Euclidean algorithm; nothing is ever factored.  An unsolvable
system is a value (None), not an exception: feasibility testing is the
whole point.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import Iterable, Mapping, NamedTuple, Optional

from .primes import is_prime


@dataclass(frozen=True)
class Congruence:
    """A single constraint x = residue (mod modulus); residue normalized."""

    modulus: int
    residue: int

    def __post_init__(self):
        if not isinstance(self.modulus, int) or isinstance(self.modulus, bool) or self.modulus < 1:
            raise ValueError(f"modulus must be a positive integer, got {self.modulus!r}")
        if not isinstance(self.residue, int) or isinstance(self.residue, bool):
            raise ValueError(f"residue must be an integer, got {self.residue!r}")
        object.__setattr__(self, "residue", self.residue % self.modulus)

    def satisfied_by(self, x: int) -> bool:
        return x % self.modulus == self.residue


@dataclass(frozen=True)
class SolutionClass:
    """The solved form of a system: one residue class modulo the lcm."""

    modulus: int
    residue: int

    def __post_init__(self):
        if not isinstance(self.modulus, int) or self.modulus < 1:
            raise ValueError(f"modulus must be a positive integer, got {self.modulus!r}")
        object.__setattr__(self, "residue", self.residue % self.modulus)


def _merge(m1: int, r1: int, m2: int, r2: int):
    """Intersect two residue classes; None when they are disjoint."""
    g = gcd(m1, m2)
    if (r1 - r2) % g != 0:
        return None
    m = m1 // g * m2
    t = ((r2 - r1) // g * pow(m1 // g, -1, m2 // g)) % (m2 // g)
    return m, (r1 + m1 * t) % m


def solve_pair(c1, c2) -> Optional[SolutionClass]:
    """Merge two congruences into the class modulo lcm, or None if disjoint."""
    merged = _merge(c1.modulus, c1.residue, c2.modulus, c2.residue)
    if merged is None:
        return None
    return SolutionClass(*merged)


def solve_system(congruences: Iterable) -> Optional[SolutionClass]:
    """Left-fold of solve_pair; the empty system solves to everything (1, 0)."""
    state = (1, 0)
    for c in congruences:
        state = _merge(state[0], state[1], c.modulus, c.residue)
        if state is None:
            return None
    return SolutionClass(*state)


class FeasibilityStream:
    """Accumulates congruences one at a time; infeasibility is sticky.

    Single-owner mutable state: after k pushes the state equals
    solve_system of those k congruences, in any push order.
    """

    def __init__(self):
        self._state: Optional[SolutionClass] = SolutionClass(1, 0)

    def push(self, congruence: Congruence) -> Optional[SolutionClass]:
        if self._state is not None:
            merged = _merge(
                self._state.modulus, self._state.residue, congruence.modulus, congruence.residue
            )
            self._state = None if merged is None else SolutionClass(*merged)
        return self._state

    @property
    def state(self) -> Optional[SolutionClass]:
        return self._state

    @property
    def is_feasible(self) -> bool:
        return self._state is not None


class ZeroToDepth(NamedTuple):
    """All listed residues are 0: zero up to the inspected depth."""

    depth: int


class NonZero(NamedTuple):
    """First depth at which the residue chain leaves 0."""

    first_nonzero: int


def validate_chain_table(table: Mapping) -> dict:
    """Check a prime -> residue-chain table.

    For each prime p the chain lists residues modulo p, p^2, ... and
    consecutive entries must be congruent (each entry refines the previous
    one p-adically).  Returns a normalized {prime: tuple} dict.
    """
    out = {}
    for p, chain in table.items():
        p = int(p)
        if not is_prime(p):
            raise ValueError(f"{p} is not prime")
        chain = tuple(int(r) for r in chain)
        if not chain:
            raise ValueError(f"empty residue chain for prime {p}")
        power = 1
        prev = 0
        for depth, r in enumerate(chain, start=1):
            power *= p
            if not 0 <= r < power:
                raise ValueError(f"residue {r} at depth {depth} out of range for {p}^{depth}")
            if depth > 1 and r % (power // p) != prev:
                raise ValueError(
                    f"chain for {p} inconsistent at depth {depth}: "
                    f"{r} != {prev} (mod {p}^{depth - 1})"
                )
            prev = r
        out[p] = chain
    return out


def classify_prime_support(table: Mapping) -> dict:
    """Classify each prime of a residue-chain table.

    ZeroToDepth(d): every listed residue is 0, so the prime divides to the
    full inspected depth d (and possibly beyond - that is not decidable
    from a finite table).  NonZero(s): s is the least depth whose residue
    is nonzero.
    """
    out = {}
    for p, chain in validate_chain_table(table).items():
        for depth, r in enumerate(chain, start=1):
            if r != 0:
                out[p] = NonZero(depth)
                break
        else:
            out[p] = ZeroToDepth(len(chain))
    return out

"""Exact algebra of eventually periodic subsets of the non-negative integers.

A set is stored as a periodic part (residues modulo a period) together with
finitely many explicit additions and removals.  The constructor `make`
canonicalizes: the period is minimal and the edit sets are minimal, so two
values are structurally equal exactly when they contain the same integers.

Membership semantics for a value with period m, residue set R and edit sets
(added, removed):

    n in A  <=>  n in added, or (n mod m in R and n not in removed)

The universe is the non-negative integers; callers that work over the
positive integers (divisibility, filter bases) simply never consult 0.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd, lcm
from typing import Iterable

from .primes import prime_factors


@dataclass(frozen=True)
class PeriodicSet:
    modulus: int
    residues: frozenset
    added: frozenset
    removed: frozenset

    def __repr__(self):
        return (
            f"PeriodicSet(mod={self.modulus}, residues={sorted(self.residues)}, "
            f"add={sorted(self.added)}, remove={sorted(self.removed)})"
        )

    # -- membership ---------------------------------------------------------

    def member(self, n: int) -> bool:
        """True iff n belongs to the set (negative n never does)."""
        if n < 0:
            return False
        if n in self.added:
            return True
        if n in self.removed:
            return False
        return n % self.modulus in self.residues

    __contains__ = member

    def is_empty(self) -> bool:
        return not self.residues and not self.added

    def is_infinite(self) -> bool:
        # finitely many removals cannot make a nonempty periodic part finite
        return bool(self.residues)

    def max_edit(self) -> int:
        """Largest explicitly edited element (0 when there are no edits)."""
        return max(self.added | self.removed, default=0)

    def enumerate_up_to(self, bound: int) -> list:
        """Sorted members n with 0 <= n <= bound."""
        if bound < 0:
            raise ValueError("bound must be non-negative")
        return [n for n in range(bound + 1) if self.member(n)]

    # -- boolean algebra -----------------------------------------------------

    def meets_infinitely(self, other: "PeriodicSet") -> bool:
        """Whether the intersection is infinite, decided without building it.

        Two residue classes intersect (and then infinitely often) exactly
        when their residues agree modulo the gcd of the periods; edits are
        finite and cannot change the answer.
        """
        g = gcd(self.modulus, other.modulus)
        hits = {r % g for r in self.residues}
        return any(r % g in hits for r in other.residues)

    def intersect(self, other: "PeriodicSet") -> "PeriodicSet":
        m = lcm(self.modulus, other.modulus)
        # enumerate lifts of the sparser operand, filter by the other
        a, b = self, other
        if len(a.residues) * (m // a.modulus) > len(b.residues) * (m // b.modulus):
            a, b = b, a
        residues = set()
        for r in a.residues:
            for x in range(r, m, a.modulus):
                if x % b.modulus in b.residues:
                    residues.add(x)
        return _rebuild(m, residues, (self, other), lambda n: n in self and n in other)

    def union(self, other: "PeriodicSet") -> "PeriodicSet":
        m = lcm(self.modulus, other.modulus)
        residues = set()
        for r in self.residues:
            residues.update(range(r, m, self.modulus))
        for r in other.residues:
            residues.update(range(r, m, other.modulus))
        return _rebuild(m, residues, (self, other), lambda n: n in self or n in other)

    def complement(self) -> "PeriodicSet":
        residues = frozenset(range(self.modulus)) - self.residues
        return make(self.modulus, residues, added=self.removed, removed=self.added)

    __and__ = intersect
    __or__ = union
    __invert__ = complement

    # -- serialization -------------------------------------------------------

    def to_json(self) -> dict:
        return {
            "modulus": self.modulus,
            "residues": sorted(self.residues),
            "add": sorted(self.added),
            "remove": sorted(self.removed),
        }

    @staticmethod
    def from_json(data: dict) -> "PeriodicSet":
        if not isinstance(data, dict):
            raise ValueError("periodic set JSON must be an object")
        if "modulus" not in data:
            raise ValueError('periodic set JSON: missing field "modulus"')
        fields = {}
        for key in ("residues", "add", "remove"):
            value = data.get(key, ())
            if not isinstance(value, (list, tuple)):
                raise ValueError(f'periodic set JSON: field "{key}" must be an array')
            fields[key] = [_json_int(v, key) for v in value]
        return make(_json_int(data["modulus"], "modulus"), fields["residues"], fields["add"], fields["remove"])


def _rebuild(modulus, residues, operands, truth):
    """Build the canonical result of a pointwise operation.

    `residues` is the periodic part already combined; membership of the
    finitely many edited points of the operands is fixed up explicitly.
    """
    added, removed = set(), set()
    edits = set()
    for s in operands:
        edits |= s.added | s.removed
    for n in edits:
        want = truth(n)
        periodic = n % modulus in residues
        if want and not periodic:
            added.add(n)
        elif not want and periodic:
            removed.add(n)
    return make(modulus, residues, added, removed)


def _minimal_period(modulus, residues):
    """Shrink (modulus, residues) until the residues are not a union of
    full cosets of any proper divisor of the modulus."""
    if not residues:
        return 1, frozenset()
    while modulus > 1:
        for p in prime_factors(modulus):
            d = modulus // p
            counts = {}
            for r in residues:
                counts[r % d] = counts.get(r % d, 0) + 1
            if all(c == p for c in counts.values()):
                residues = frozenset(r % d for r in residues)
                modulus = d
                break
        else:
            break
    return modulus, frozenset(residues)


def make(modulus: int, residues: Iterable = (), added: Iterable = (), removed: Iterable = ()) -> PeriodicSet:
    """Canonical constructor.

    Accepts any semantically valid description: redundant edits are dropped
    and the period is minimized.  Rejects a modulus < 1, residues outside
    [0, modulus) and overlapping edit sets.
    """
    if not isinstance(modulus, int) or isinstance(modulus, bool) or modulus < 1:
        raise ValueError(f"modulus must be a positive integer, got {modulus!r}")
    residues = frozenset(_as_int(r, "residue") for r in residues)
    for r in residues:
        if not 0 <= r < modulus:
            raise ValueError(f"residue {r} out of range for modulus {modulus}")
    added = frozenset(_as_int(a, "added element") for a in added)
    removed = frozenset(_as_int(x, "removed element") for x in removed)
    for e in added | removed:
        if e < 0:
            raise ValueError(f"edited element {e} must be non-negative")
    if added & removed:
        raise ValueError(f"ambiguous edits: {sorted(added & removed)} both added and removed")
    added = frozenset(a for a in added if a % modulus not in residues)
    removed = frozenset(x for x in removed if x % modulus in residues)
    modulus, residues = _minimal_period(modulus, residues)
    return PeriodicSet(modulus, residues, added, removed)


def _as_int(v, what):
    if isinstance(v, bool) or not isinstance(v, int):
        raise ValueError(f"{what} must be an integer, got {v!r}")
    return v


def _json_int(v, field):
    # integers beyond 2^53-1 round-trip through JSON as decimal strings
    if isinstance(v, str):
        try:
            return int(v, 10)
        except ValueError:
            raise ValueError(f'periodic set JSON: field "{field}" has non-integer {v!r}') from None
    return _as_int(v, f'periodic set JSON field "{field}"')


def progression(modulus: int, residue: int) -> PeriodicSet:
    """The arithmetic progression {n >= 0 : n = residue (mod modulus)}."""
    if not isinstance(modulus, int) or modulus < 1:
        raise ValueError(f"modulus must be a positive integer, got {modulus!r}")
    if not 0 <= residue < modulus:
        raise ValueError(f"residue {residue} out of range for modulus {modulus}")
    return make(modulus, (residue,))


def divisibility_union(divisors: Iterable) -> PeriodicSet:
    """Union of the multiple sets n*{0,1,2,...} over the given divisors."""
    ds = sorted({_as_int(n, "divisor") for n in divisors})
    if not ds:
        raise ValueError("divisibility_union needs at least one divisor")
    if ds[0] < 1:
        raise ValueError(f"divisors must be >= 1, got {ds[0]}")
    period = lcm(*ds)
    residues = set()
    for n in ds:
        residues.update(range(0, period, n))
    return make(period, residues)


def non_divisibility(n: int) -> PeriodicSet:
    """The non-negative integers not divisible by n (n >= 2)."""
    if not isinstance(n, int) or n < 2:
        raise ValueError(f"non_divisibility expects an integer >= 2, got {n!r}")
    return make(n, range(1, n))

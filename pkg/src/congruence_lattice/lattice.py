"""Combinatorics of the divisibility order on the positive integers.

Finite sets are passed around as plain iterables of positive integers and
returned as sorted lists.  Upward closures are eventually periodic, so they
come back as PeriodicSet values with 0 edited out (0 is not part of the
divisibility universe here).
"""

from __future__ import annotations

from math import gcd
from typing import Iterable

from .periodic_sets import PeriodicSet, divisibility_union, make
from .primes import FactorizationBudgetError, is_prime

__all__ = [
    "FactorizationBudgetError",
    "up_closure",
    "down_closure",
    "is_antichain",
    "is_convex",
    "convex_hull",
    "omega",
    "omega_lower_bound",
    "level_members",
    "is_upward_closed",
]

DEFAULT_TRIAL_BUDGET = 10**6


def _elements(xs: Iterable, allow_empty: bool = True) -> tuple:
    out = sorted({int(x) for x in xs})
    if out and out[0] < 1:
        raise ValueError(f"elements must be positive integers, got {out[0]}")
    if not out and not allow_empty:
        raise ValueError("expected a nonempty set of positive integers")
    return tuple(out)


def _divisors(n: int) -> list:
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d != n // d:
                large.append(n // d)
        d += 1
    return small + large[::-1]


def up_closure(elements: Iterable) -> PeriodicSet:
    """All positive integers divisible by some element of the given set."""
    els = _elements(elements, allow_empty=False)
    base = divisibility_union(els)
    return make(base.modulus, base.residues, base.added, set(base.removed) | {0})


def down_closure(elements: Iterable) -> list:
    """All divisors of elements of the given set, sorted."""
    els = _elements(elements, allow_empty=False)
    out = set()
    for n in els:
        out.update(_divisors(n))
    return sorted(out)


def is_antichain(elements: Iterable) -> bool:
    """True iff no element divides a distinct element."""
    els = _elements(elements)
    for i, a in enumerate(els):
        for b in els[i + 1 :]:
            if b % a == 0:
                return False
    return True


def is_convex(elements: Iterable) -> bool:
    """True iff every z with x | z | y for x, y in the set is itself in it."""
    els = _elements(elements)
    have = set(els)
    for y in els:
        for z in _divisors(y):
            if z not in have and any(z % x == 0 for x in els):
                return False
    return True


def convex_hull(elements: Iterable) -> list:
    """Least convex superset: all z with x | z | y for some set members x, y."""
    els = _elements(elements)
    out = set()
    for y in els:
        for z in _divisors(y):
            if any(z % x == 0 for x in els):
                out.add(z)
    return sorted(out)


def omega(n: int, trial_budget: int = DEFAULT_TRIAL_BUDGET) -> int:
    """Number of prime factors of n counted with multiplicity.

    Factoring is trial division up to `trial_budget`; if the leftover
    cofactor cannot be certified prime the call raises
    FactorizationBudgetError instead of stalling.
    """
    if not isinstance(n, int) or n < 1:
        raise ValueError(f"omega expects a positive integer, got {n!r}")
    count = 0
    d = 2
    while d * d <= n and d <= trial_budget:
        while n % d == 0:
            count += 1
            n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        if n <= trial_budget * trial_budget or is_prime(n):
            count += 1
        else:
            raise FactorizationBudgetError(
                f"budget exceeded: cannot count prime factors of residual {n}"
            )
    return count


def omega_lower_bound(n: int, primes: Iterable) -> int:
    """Sum of valuations of n at the supplied primes; cheap for huge n."""
    if not isinstance(n, int) or n < 1:
        raise ValueError(f"omega_lower_bound expects a positive integer, got {n!r}")
    total = 0
    for p in sorted({int(p) for p in primes}):
        if not is_prime(p):
            raise ValueError(f"{p} is not prime")
        while n % p == 0:
            total += 1
            n //= p
    return total


def level_members(level: int, bound: int) -> list:
    """Integers in [1, bound] with exactly `level` prime factors (with multiplicity)."""
    if level < 0:
        raise ValueError("level must be non-negative")
    if bound < 1:
        raise ValueError("bound must be positive")
    return [n for n in range(1, bound + 1) if omega(n) == level]


def is_upward_closed(s: PeriodicSet) -> bool:
    """Decide whether a purely periodic set is closed under taking multiples.

    0 is outside the divisibility universe, so edits at 0 are ignored; any
    other edit makes closure undecidable from the residue structure and is
    rejected.  The empty set does not count as upward closed.

    Criterion: with period m and residue set R, the set is upward closed
    iff for every r in R every multiple of gcd(r, m) modulo m is in R
    (the residues of the multiples of any n = r mod m are exactly
    gcd(r, m) * Z_m).
    """
    edits = (s.added | s.removed) - {0}
    if edits:
        raise ValueError(
            f"upward-closedness undecidable under edits at {sorted(edits)}; "
            "only purely periodic sets are supported"
        )
    if not s.residues:
        return False
    m = s.modulus
    # distinct gcds only: all residues with the same gcd demand the same classes
    for d in {gcd(r, m) for r in s.residues}:
        for x in range(0, m, d):
            if x not in s.residues:
                return False
    return True

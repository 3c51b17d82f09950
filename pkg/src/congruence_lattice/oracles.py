"""Seeded brute-force comparison suites.

Each suite replays library results against an independent enumeration
(bounded scans, exhaustive pair searches).  Given a seed the generated
case list is fixed, so reports are reproducible; an optional wall-clock
budget aborts a run early and flags the report.
"""

from __future__ import annotations

import random
import time
from math import lcm

from . import antichain, crt, filter_lab, geometry, lattice, periodic_sets

DEFAULT_SEED = 42

_GEOM_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31)


# -- independent brute-force checks ------------------------------------------


def scan_system(congruences):
    """Least solution of a congruence system found by scanning [0, lcm),
    or None.  Walks the first congruence's class and filters by the rest."""
    cs = list(congruences)
    if not cs:
        return (1, 0)
    period = lcm(*(c.modulus for c in cs))
    first, rest = cs[0], cs[1:]
    for x in range(first.residue, period, first.modulus):
        if all(x % c.modulus == c.residue for c in rest):
            return (period, x)
    return None


def upward_scan(s, factor: int = 10):
    """Bounded multiple-closure check over [1, factor * modulus^2].

    Any closure violation of a purely periodic set appears below
    modulus^2, so this scan decides upward-closedness exactly.
    """
    bound = factor * s.modulus * s.modulus
    members = [n for n in range(1, bound + 1) if n in s]
    if not members:
        return False
    have = set(members)
    for a in members:
        for x in range(2 * a, bound + 1, a):
            if x not in have:
                return False
    return True


def fip_scan(members):
    """Decide infinitude of the common intersection by scanning for a
    common element beyond all edits within 3 periods."""
    members = list(members)
    if not members:
        return True
    period = lcm(*(s.modulus for s in members))
    top = max(s.max_edit() for s in members)
    hi = 3 * period + top
    base = min(members, key=lambda s: len(s.residues) * (period // s.modulus))
    for r in sorted(base.residues):
        n = r if r > top else r + ((top - r) // base.modulus + 1) * base.modulus
        while n <= hi:
            if all(n in s for s in members):
                return True
            n += base.modulus
    return False


# -- case generators ----------------------------------------------------------


def _random_congruences(rng):
    k = rng.randint(1, 3)
    return [crt.Congruence(rng.randint(1, 30), rng.randint(-60, 60)) for _ in range(k)]


def _random_pure_set(rng):
    if rng.random() < 0.3:
        # upward-closed positives: unions of multiple-sets with period | 36
        els = rng.sample((2, 3, 4, 6, 9, 12, 18, 36), rng.randint(1, 3))
        return periodic_sets.divisibility_union(els)
    m = rng.randint(1, 36)
    density = rng.random()
    residues = {r for r in range(m) if rng.random() < density}
    return periodic_sets.make(m, residues)


def _random_member(rng):
    m = rng.randint(2, 24)
    residues = set(rng.sample(range(m), rng.randint(1, m)))
    added, removed = set(), set()
    if rng.random() < 0.25:
        added = {rng.randint(0, 60) for _ in range(rng.randint(1, 2))}
    if rng.random() < 0.25:
        removed = {rng.randint(0, 60) for _ in range(rng.randint(1, 2))} - added
    return periodic_sets.make(m, residues, added, removed)


def _random_chain(rng, p, depth, first_nonzero):
    chain = []
    value = 0
    power = 1
    for n in range(1, depth + 1):
        if n < first_nonzero:
            digit = 0
        elif n == first_nonzero:
            digit = rng.randint(1, p - 1)
        else:
            digit = rng.randint(0, p - 1)
        value += digit * power
        power *= p
        chain.append(value)
    return tuple(chain)


def random_antichain_spec(rng, last):
    chain_primes = rng.sample((3, 5, 7, 11, 13), rng.randint(2, 4))
    divisor_primes = rng.sample((2, 17, 19, 23), rng.randint(1, 2))
    chains = []
    for p in chain_primes:
        first = rng.randint(1, 2)
        chains.append((p, _random_chain(rng, p, first + last, first)))
    return antichain.AntichainSpec(tuple(chains), tuple(divisor_primes))


# -- suites -------------------------------------------------------------------


def _crt_suite(rng, cases, over_budget):
    mismatches = []
    run = 0
    for _ in range(cases):
        if over_budget():
            return run, mismatches, True
        run += 1
        cs = _random_congruences(rng)
        got = crt.solve_system(cs)
        want = scan_system(cs)
        if (got is None) != (want is None):
            mismatches.append(f"{cs}: solver {got} vs scan {want}")
        elif got is not None and (got.modulus, got.residue) != want:
            mismatches.append(f"{cs}: solver {got} vs scan {want}")
        shuffled = list(cs)
        rng.shuffle(shuffled)
        stream = crt.FeasibilityStream()
        for c in shuffled:
            stream.push(c)
        if (stream.state is None) != (got is None) or (
            got is not None and stream.state != got
        ):
            mismatches.append(f"{cs}: stream {stream.state} vs batch {got}")
    return run, mismatches, False


def _geom_suite(rng, cases, over_budget):
    mismatches = []
    run = 0
    for p in _GEOM_PRIMES:
        family = geometry.enumerate_geometric(p)
        for s in sorted(family, key=sorted):
            run += 1
            d = geometry.is_geometric(p, s)
            b = geometry.exhaustive_descriptor(p, s)
            if d is None or b is None:
                mismatches.append(f"p={p} {sorted(s)}: family member not recognized")
            elif geometry.expand(d) != s or geometry.expand(b) != s or d != b:
                mismatches.append(f"p={p} {sorted(s)}: descriptor mismatch {d} vs {b}")
        for _ in range(cases):
            if over_budget():
                return run, mismatches, True
            run += 1
            s = frozenset(rng.sample(range(p), rng.randint(1, p)))
            d = geometry.is_geometric(p, s)
            if (d is not None) != (s in family):
                mismatches.append(f"p={p} {sorted(s)}: recognizer vs enumeration")
            elif d is not None and geometry.expand(d) != s:
                mismatches.append(f"p={p} {sorted(s)}: expansion mismatch")
    return run, mismatches, False


def _upward_suite(rng, cases, over_budget):
    mismatches = []
    run = 0
    for _ in range(cases):
        if over_budget():
            return run, mismatches, True
        run += 1
        s = _random_pure_set(rng)
        got = lattice.is_upward_closed(s)
        want = upward_scan(s)
        if got != want:
            mismatches.append(f"{s}: criterion {got} vs scan {want}")
    return run, mismatches, False


def _fip_suite(rng, cases, over_budget):
    mismatches = []
    run = 0
    for _ in range(cases):
        if over_budget():
            return run, mismatches, True
        run += 1
        members = [_random_member(rng) for _ in range(rng.randint(1, 5))]
        got = filter_lab.has_fip(members)
        want = fip_scan(members)
        if got != want:
            mismatches.append(f"{members}: has_fip {got} vs scan {want}")
            continue
        if got:
            base = filter_lab.FilterBase(tuple(members))
            for m in range(2, 31):
                if not filter_lab.feasible_residues(base, m):
                    mismatches.append(f"{members}: no feasible residue mod {m}")
                    break
    return run, mismatches, False


def _antichain_suite(rng, cases, over_budget):
    mismatches = []
    run = 0
    for _ in range(cases):
        if over_budget():
            return run, mismatches, True
        run += 1
        last = rng.randint(1, 4)
        spec = random_antichain_spec(rng, last)
        values = antichain.build(spec, last)
        if values != antichain.build(spec, last):
            mismatches.append(f"{spec}: build is not deterministic")
        report = antichain.verify(values, spec)
        if not report.ok:
            mismatches.append(f"{spec}: verify failed {report.failures}")
            continue
        for index in range(1, last + 1):
            system = antichain.step_congruences(spec, index)
            period = lcm(*(c.modulus for c in system))
            if period > 10**6:
                continue
            for x in range(values[index - 1] + 1, values[index]):
                if all(c.satisfied_by(x) for c in system):
                    mismatches.append(f"{spec}: element {index} not least ({x} works)")
                    break
    return run, mismatches, False


SUITES = {
    "crt": (_crt_suite, 10_000),
    "geom": (_geom_suite, 10_000),
    "upward": (_upward_suite, 1_000),
    "fip": (_fip_suite, 1_000),
    "antichain": (_antichain_suite, 100),
}


def run_suite(suite: str, seed: int = DEFAULT_SEED, budget_s=None, cases=None) -> dict:
    """Run one suite; the report lists cases run, mismatches and wall time.

    `cases` scales the random portion (per prime for geom).  Deterministic
    given the seed; if the budget is hit the run stops early and the
    report says so.
    """
    if suite not in SUITES:
        raise ValueError(f"unknown suite {suite!r}; choose from {sorted(SUITES)}")
    fn, default_cases = SUITES[suite]
    n = default_cases if cases is None else int(cases)
    if n < 0:
        raise ValueError("cases must be non-negative")
    rng = random.Random(seed)
    start = time.perf_counter()
    if budget_s is None:
        over_budget = lambda: False
    else:
        deadline = start + float(budget_s)
        over_budget = lambda: time.perf_counter() > deadline
    cases_run, mismatches, exceeded = fn(rng, n, over_budget)
    wall = time.perf_counter() - start
    return {
        "suite": suite,
        "seed": seed,
        "cases": n,
        "cases_run": cases_run,
        "mismatches": len(mismatches),
        "mismatch_examples": mismatches[:5],
        "budget_exceeded": exceeded,
        "wall_time_s": round(wall, 3),
    }

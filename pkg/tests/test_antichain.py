"""Antichain construction: depths, building, verification."""

import random
from math import lcm

import pytest

from congruence_lattice import antichain as ac
from congruence_lattice.oracles import random_antichain_spec

# chain residues beyond the ones that matter for the early elements are held
# constant, which keeps each chain consistent at every depth
WORKED_SPEC = ac.AntichainSpec(
    chains=(
        (3, (1, 4, 13, 40, 40)),
        (5, (2, 7, 57, 57, 57)),
        (7, (3, 3, 3, 3, 3)),
    ),
    divisor_primes=(2,),
)


# -- spec validation -----------------------------------------------------------


def test_first_nonzero_depths():
    assert ac.first_nonzero_depths(WORKED_SPEC) == [1, 1, 1]
    spec = ac.AntichainSpec(chains=((3, (1, 4)), (5, (0, 5))))
    assert ac.first_nonzero_depths(spec) == [1, 2]


def test_all_zero_chain_rejected():
    with pytest.raises(ValueError):
        ac.AntichainSpec(chains=((7, (0, 0, 0)),))


def test_inconsistent_chain_rejected():
    with pytest.raises(ValueError):
        ac.AntichainSpec(chains=((3, (1, 5)),))  # 5 != 1 (mod 3)
    with pytest.raises(ValueError):
        ac.AntichainSpec(chains=((3, (3,)),))  # out of range


def test_duplicate_primes_rejected():
    with pytest.raises(ValueError):
        ac.AntichainSpec(chains=((3, (1,)), (3, (2,))))
    with pytest.raises(ValueError):
        ac.AntichainSpec(chains=((3, (1,)),), divisor_primes=(3,))


def test_spec_json_round_trip():
    data = WORKED_SPEC.to_json()
    assert ac.AntichainSpec.from_json(data) == WORKED_SPEC


# -- building ------------------------------------------------------------------


def test_first_element_is_first_nonzero_power():
    assert ac.build(WORKED_SPEC, 0) == [3]


def test_second_element_derived_by_scan():
    # element 1 solves x = 4 (mod 9), x = 0 (mod 5), x = 0 (mod 2)
    want = next(x for x in range(4, 200) if x % 9 == 4 and x % 5 == 0 and x % 2 == 0)
    assert want == 40
    assert ac.build(WORKED_SPEC, 1) == [3, 40]


def test_third_element_derived_by_scan():
    values = ac.build(WORKED_SPEC, 2)
    period = lcm(27, 125, 7, 4)
    assert period == 94500
    want = next(
        x
        for x in range(41, 41 + period)
        if x % 27 == 13 and x % 125 == 57 and x % 7 == 0 and x % 4 == 0
    )
    assert values == [3, 40, want]


def test_build_deterministic():
    assert ac.build(WORKED_SPEC, 4) == ac.build(WORKED_SPEC, 4)


def test_build_monotone_and_verified():
    values = ac.build(WORKED_SPEC, 4)
    assert values[:2] == [3, 40]
    assert all(a < b for a, b in zip(values, values[1:]))
    report = ac.verify(values, WORKED_SPEC)
    assert report.ok, report.failures


def test_strict_mode_requires_enough_primes():
    spec = ac.AntichainSpec(chains=((3, (1, 4)),), divisor_primes=(2,))
    with pytest.raises(ValueError):
        ac.build(spec, 1, substitution="strict")
    # safe mode substitutes and drops as needed
    values = ac.build(spec, 1, substitution="safe")
    assert len(values) == 2
    assert ac.verify(values, spec).ok


def test_strict_mode_requires_enough_divisor_primes():
    spec = ac.AntichainSpec(
        chains=((3, (1, 4, 13)), (5, (2, 7, 57)), (7, (3, 3, 3))),
        divisor_primes=(),
    )
    with pytest.raises(ValueError):
        ac.build(spec, 1, substitution="strict")


def test_build_rejects_short_chains():
    spec = ac.AntichainSpec(chains=((3, (1, 4)), (5, (2, 7))), divisor_primes=(2,))
    with pytest.raises(ValueError):
        ac.build(spec, 2)


def test_bad_substitution_mode():
    with pytest.raises(ValueError):
        ac.build(WORKED_SPEC, 1, substitution="loose")


# -- verification ---------------------------------------------------------------


def test_verify_detects_divisible_pair():
    report = ac.verify([3, 39], WORKED_SPEC)
    assert not report.antichain  # 3 | 39
    assert not report.ok


def test_verify_empty_prefix_vacuous():
    report = ac.verify([], WORKED_SPEC)
    assert report.ok


def test_verify_detects_wrong_residue():
    # swap element 1 for another multiple of 10 that misses 4 mod 9
    report = ac.verify([3, 50], WORKED_SPEC)
    assert not report.chain_tracking
    assert not report.ok


def test_verify_detects_nonmonotone():
    report = ac.verify([40, 3], WORKED_SPEC)
    assert not report.monotone
    assert not report.ok


def test_verify_reports_divisor_power_failure():
    values = ac.build(WORKED_SPEC, 2)
    tampered = values[:2] + [values[2] + lcm(27, 125, 7)]  # keeps residues mod odd part
    report = ac.verify(tampered, WORKED_SPEC)
    assert not report.ok


def test_random_specs_build_and_verify():
    rng = random.Random(8675309)
    for _ in range(40):
        last = rng.randint(1, 4)
        spec = random_antichain_spec(rng, last)
        values = ac.build(spec, last)
        report = ac.verify(values, spec)
        assert report.ok, (spec, values, report.failures)


def test_least_solution_property_by_scan():
    rng = random.Random(5551212)
    for _ in range(15):
        last = rng.randint(1, 3)
        spec = random_antichain_spec(rng, last)
        values = ac.build(spec, last)
        for index in range(1, last + 1):
            system = ac.step_congruences(spec, index)
            if lcm(*(c.modulus for c in system)) > 10**6:
                continue
            for x in range(values[index - 1] + 1, values[index]):
                assert not all(c.satisfied_by(x) for c in system)

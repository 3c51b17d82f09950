"""Primality testing and small factorization shared across the library."""

from __future__ import annotations

_SMALL_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)

# Deterministic Miller-Rabin witness set; correct for every n < 3.317e24.
# Beyond that range the same witnesses make the test a very strong
# probable-prime check (still deterministic as a function).
_MR_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


class FactorizationBudgetError(ValueError):
    """Raised when factoring would exceed the configured trial-division budget."""


def is_prime(n: int) -> bool:
    """Miller-Rabin primality test, deterministic below 3.3e24."""
    if n < 2:
        return False
    for p in _SMALL_PRIMES:
        if n == p:
            return True
        if n % p == 0:
            return False
    d = n - 1
    s = 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_WITNESSES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def prime_factors(n: int, trial_bound: int = 10**6) -> list[int]:
    """Distinct prime factors of n >= 1, ascending.

    Trial division up to `trial_bound`; a leftover cofactor is accepted if it
    is provably prime, otherwise a FactorizationBudgetError is raised.
    """
    if n < 1:
        raise ValueError("prime_factors expects n >= 1")
    out = []
    d = 2
    while d * d <= n and d <= trial_bound:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        # cofactor <= trial_bound**2 has no divisor <= trial_bound, hence prime
        if n <= trial_bound * trial_bound or is_prime(n):
            out.append(n)
        else:
            raise FactorizationBudgetError(f"budget exceeded: cannot factor residual {n}")
    return out


def primes_up_to(bound: int) -> list[int]:
    """All primes <= bound by sieve of Eratosthenes."""
    if bound < 2:
        return []
    sieve = bytearray([1]) * (bound + 1)
    sieve[0:2] = b"\x00\x00"
    for p in range(2, int(bound**0.5) + 1):
        if sieve[p]:
            sieve[p * p :: p] = b"\x00" * len(range(p * p, bound + 1, p))
    return [n for n in range(2, bound + 1) if sieve[n]]

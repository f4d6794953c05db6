"""Exact integer arithmetic: primality, factorization, square-free parts,
perfect squares and quadratic symbols.

Everything here is a pure function of its arguments.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from functools import lru_cache
from math import gcd, isqrt
from typing import NamedTuple

from .errors import BudgetExceeded, InvalidInput

# Deterministic Miller-Rabin witnesses; correct for every n < 3.317e24.
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)
_MR_DETERMINISTIC_LIMIT = 3_317_044_064_679_887_385_961_981


@dataclass(frozen=True)
class FactorizationLimits:
    trial_division_bound: int = 100_000
    rho_iteration_budget: int = 2_000_000
    primality_rounds: int = 20

    def __post_init__(self):
        if min(self.trial_division_bound, self.rho_iteration_budget, self.primality_rounds) <= 0:
            raise InvalidInput("factorization limits must be positive")


DEFAULT_LIMITS = FactorizationLimits()


class SquarefreeDecomposition(NamedTuple):
    """``k = u * v**2`` with ``u`` square-free, ``sign(u) == sign(k)`` and ``v >= 1``."""

    u: int
    v: int


@lru_cache(maxsize=16)
def primes_up_to(n: int) -> tuple[int, ...]:
    """All primes ``<= n`` by the sieve of Eratosthenes."""
    if n < 2:
        return ()
    sieve = bytearray([1]) * (n + 1)
    sieve[0] = sieve[1] = 0
    for i in range(2, isqrt(n) + 1):
        if sieve[i]:
            sieve[i * i :: i] = bytearray(len(range(i * i, n + 1, i)))
    return tuple(i for i, flag in enumerate(sieve) if flag)


def _miller_rabin(n: int, a: int, d: int, s: int) -> bool:
    x = pow(a, d, n)
    if x in (1, n - 1):
        return True
    for _ in range(s - 1):
        x = x * x % n
        if x == n - 1:
            return True
    return False


def is_prime(n: int, rounds: int = DEFAULT_LIMITS.primality_rounds) -> bool:
    """Miller-Rabin; deterministic below 3.3e24, ``rounds`` extra seeded bases above."""
    if n < 2:
        return False
    for p in _MR_BASES:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    if not all(_miller_rabin(n, a, d, s) for a in _MR_BASES):
        return False
    if n < _MR_DETERMINISTIC_LIMIT:
        return True
    rng = random.Random(n)
    return all(_miller_rabin(n, rng.randrange(2, n - 1), d, s) for _ in range(rounds))


def _brent_rho(n: int, budget: int, rng: random.Random) -> int:
    """Return a nontrivial factor of the odd composite ``n`` (Brent's cycle variant)."""
    spent = 0
    while spent < budget:
        y, c, m = rng.randrange(1, n), rng.randrange(1, n), 128
        g, r, q = 1, 1, 1
        x = ys = y
        while g == 1:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(m, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                g = gcd(q, n)
                k += m
            spent += r
            r *= 2
            if spent >= budget:
                break
        if g == n:
            # Backtrack one step at a time from the last checkpoint.
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = gcd(abs(x - ys), n)
        if 1 < g < n:
            return g
    raise BudgetExceeded(f"rho budget of {budget} iterations exhausted on {n}")


def factorize(k: int, limits: FactorizationLimits = DEFAULT_LIMITS) -> list[tuple[int, int]]:
    """Prime factorization of ``|k|`` as sorted ``(prime, exponent)`` pairs.

    The sign of ``k`` is not part of the result. Raises :class:`BudgetExceeded`
    when a cofactor survives trial division and the rho budget.
    """
    if k == 0:
        raise InvalidInput("cannot factor 0")
    k = abs(k)
    out: dict[int, int] = {}
    for p in primes_up_to(limits.trial_division_bound):
        if p * p > k:
            break
        if k % p == 0:
            e = 0
            while k % p == 0:
                k //= p
                e += 1
            out[p] = e
    if k > 1:
        rng = random.Random(0x5EED)
        stack = [k]
        while stack:
            m = stack.pop()
            if m == 1:
                continue
            if is_prime(m, limits.primality_rounds):
                out[m] = out.get(m, 0) + 1
                continue
            r = isqrt(m)
            if r * r == m:
                stack += [r, r]
                continue
            d = _brent_rho(m, limits.rho_iteration_budget, rng)
            stack += [d, m // d]
    return sorted(out.items())


def omega(k: int, limits: FactorizationLimits = DEFAULT_LIMITS) -> int:
    """Number of distinct prime divisors of the nonzero integer ``k``."""
    return len(factorize(k, limits))


def divisors(k: int, limits: FactorizationLimits = DEFAULT_LIMITS) -> list[int]:
    """Positive divisors of the nonzero integer ``k``, ascending."""
    divs = [1]
    for p, e in factorize(k, limits):
        divs = [d * p**i for d in divs for i in range(e + 1)]
    return sorted(divs)


def squarefree_part(k: int, limits: FactorizationLimits = DEFAULT_LIMITS) -> SquarefreeDecomposition:
    if k == 0:
        raise InvalidInput("square-free part of 0 is undefined")
    u, v = (1 if k > 0 else -1), 1
    for p, e in factorize(k, limits):
        if e % 2:
            u *= p
        v *= p ** (e // 2)
    return SquarefreeDecomposition(u, v)


def is_squarefree(k: int, limits: FactorizationLimits = DEFAULT_LIMITS) -> bool:
    return k != 0 and all(e == 1 for _, e in factorize(k, limits))


def is_perfect_square(k: int) -> tuple[bool, int | None]:
    """``(True, w)`` with ``w*w == k`` and ``w >= 0``, else ``(False, None)``."""
    if k < 0:
        return False, None
    w = isqrt(k)
    return (True, w) if w * w == k else (False, None)


def jacobi_symbol(a: int, m: int) -> int:
    """Jacobi symbol ``(a/m)`` for odd ``m >= 1``, by quadratic reciprocity."""
    if m < 1 or m % 2 == 0:
        raise InvalidInput(f"Jacobi modulus must be odd and positive, got {m}")
    a %= m
    acc = 1
    while a:
        while a % 2 == 0:
            a //= 2
            if m % 8 in (3, 5):
                acc = -acc
        a, m = m, a
        if a % 4 == 3 and m % 4 == 3:
            acc = -acc
        a %= m
    return acc if m == 1 else 0


def legendre_euler(a: int, p: int) -> int:
    """Legendre symbol for an odd prime ``p`` by Euler's criterion."""
    r = pow(a % p, (p - 1) // 2, p)
    return -1 if r == p - 1 else r


def sample_primes(count: int, seed: int, bound: int = 1 << 16) -> list[int]:
    """``count`` distinct odd primes below ``bound``, chosen deterministically from ``seed``."""
    pool = primes_up_to(bound)[1:]
    return random.Random(seed).sample(pool, min(count, len(pool)))


def probabilistic_square_test(k: int, prime_count: int, seed: int) -> bool:
    """Return False only if ``k`` is certainly not a square.

    A sampled odd prime ``p`` not dividing ``k`` with ``(k/p) == -1`` is a
    non-square certificate. True means every sampled prime was consistent
    with ``k`` being a square.
    """
    if k == 0:
        raise InvalidInput("k must be nonzero")
    if prime_count < 1:
        raise InvalidInput("prime_count must be at least 1")
    for p in sample_primes(prime_count, seed):
        if k % p and legendre_euler(k, p) == -1:
            return False
    return True

"""The square sieve over a window of primes ``(z, 2z]``, evaluated exactly."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple

from . import intarith
from ._parallel import map_chunks
from .census import HeightBox, disc_histogram
from .errors import BudgetExceeded, ConditionFailed, InvalidInput
from .poly_core import MonicIntPoly, disc_fast

MAX_Z = 10**8


@dataclass(frozen=True)
class SieveWindow:
    z: float
    primes: tuple[int, ...]

    @property
    def pi_count(self) -> int:
        return len(self.primes)


def make_window(z: float) -> SieveWindow:
    """All primes ``p`` with ``z < p <= 2z``."""
    if z < 2:
        raise InvalidInput("z must be at least 2")
    if z > MAX_Z:
        raise InvalidInput(f"z above {MAX_Z} would need too much memory")
    primes = intarith.primes_up_to(math.floor(2 * z))
    return SieveWindow(z, tuple(p for p in primes if p > z))


class IdentityCheck(NamedTuple):
    lhs: int
    rhs: int
    equal: bool


def _window_sum(value: int, window: SieveWindow) -> int:
    return sum(intarith.legendre_euler(value, p) for p in window.primes)


def sieve_identity_check(f: MonicIntPoly, window: SieveWindow) -> IdentityCheck:
    """``sum_p (u Disc f / p)`` against ``pi(z, 2z) - #{p : p | Disc f}``.

    u is the signed square-free part of ``Disc f``, so ``u Disc f`` is a
    square and every symbol is 1 except at window primes dividing ``Disc f``.
    """
    disc = disc_fast(f.coeffs)
    if disc == 0:
        raise InvalidInput("f must have nonzero discriminant")
    u = intarith.squarefree_part(disc).u
    lhs = _window_sum(u * disc, window)
    rhs = window.pi_count - sum(1 for p in window.primes if disc % p == 0)
    return IdentityCheck(lhs, rhs, lhs == rhs)


def optimal_z(n: int, H: float) -> float:
    """``H**(n/(2n-1)) (log H)**(-(n-1)/(2n-1))``, clamped below at ``(log H)**2``."""
    if n < 3:
        raise InvalidInput("the sieve bound needs n >= 3")
    if H < 3:
        raise InvalidInput("H must be at least 3")
    log_h = math.log(H)
    z = H ** (n / (2 * n - 1)) * log_h ** (-(n - 1) / (2 * n - 1))
    return max(z, log_h**2, 2.0)


class SieveBound(NamedTuple):
    value: Fraction  # 4 / pi(z,2z)**2 * sum_f |sum_p (u Disc f / p)|**2
    label: str  # "bound" when the window condition was verified, else "estimate"
    window: SieveWindow
    max_divisors_in_window: int  # over irreducible f with square-free part u
    exact_count: int  # T_n(H, u) from the census, signed u


def _squared_chunk(args) -> int:
    box, u, primes = args
    window = SieveWindow(0, primes)
    total = 0
    for coeffs in box:
        inner = _window_sum(u * disc_fast(coeffs), window)
        total += inner * inner
    return total


def sieve_upper_bound(n: int, H: int, u: int, z: float | None = None, budget: int = 10**7,
                      strict: bool = False, workers: int = 1) -> SieveBound:
    """Evaluate the square-sieve majorant of ``T_n(H, u)`` by direct summation.

    The value bounds ``T_n(H, u)`` whenever every f in the class has at most
    ``pi(z, 2z) / 2`` window primes dividing ``Disc f``. That condition is
    checked; if it fails the result is labelled ``"estimate"``, or
    :class:`ConditionFailed` is raised when ``strict``.
    """
    if u == 0 or not intarith.is_squarefree(u):
        raise InvalidInput("u must be a nonzero square-free integer")
    if (2 * H) ** n > budget:
        raise BudgetExceeded(f"(2H)^n = {(2 * H) ** n} exceeds budget {budget}")
    window = make_window(optimal_z(n, max(H, 3)) if z is None else z)
    box = HeightBox.strict(n, H)
    parts = map_chunks(_squared_chunk, [(c, u, window.primes) for c in box.chunks()], workers)
    value = Fraction(4 * sum(parts), window.pi_count**2)
    worst = exact = 0
    for d, c in disc_histogram(n, box, workers, budget).items():
        if intarith.squarefree_part(d).u == u:
            exact += c
            worst = max(worst, sum(1 for p in window.primes if d % p == 0))
    holds = window.pi_count >= 2 * worst
    result = SieveBound(value, "bound" if holds else "estimate", window, worst, exact)
    if strict and not holds:
        raise ConditionFailed("window too small: pi(z,2z) < 2 * max window divisors over the class", result)
    return result

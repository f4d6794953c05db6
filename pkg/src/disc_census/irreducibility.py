"""Irreducibility over Q for monic integer polynomials."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import NamedTuple, Sequence

from . import ffpoly, intarith
from ._parallel import map_chunks
from .errors import BudgetExceeded, InvalidInput
from .poly_core import MonicIntPoly, derivative, disc_fast, poly_divmod_monic, trim

IRREDUCIBLE = "irreducible"
REDUCIBLE = "reducible"
INCONCLUSIVE = "inconclusive-escalated"

SCREEN_PRIMES = 6
DEFAULT_NODE_BUDGET = 2_000_000


@dataclass(frozen=True)
class IrreducibilityVerdict:
    status: str
    witness: tuple[int, ...] | None = None  # lower coefficients of a monic factor
    certificate: str = ""

    @property
    def irreducible(self) -> bool:
        return self.status == IRREDUCIBLE


def _reducible(factor: Sequence[int], f: MonicIntPoly, how: str) -> IrreducibilityVerdict:
    factor = list(factor)
    _, rem = poly_divmod_monic(f.full, factor)
    assert not rem, "witness must divide f"
    return IrreducibilityVerdict(REDUCIBLE, tuple(factor[:-1]), how)


def eisenstein_test(f: MonicIntPoly) -> int | None:
    """Smallest prime p with p | a_i for all i and p**2 not dividing a_0, if any."""
    a0 = f.coeffs[0]
    if a0 == 0:
        return None
    for p, e in intarith.factorize(a0):
        if e == 1 and all(c % p == 0 for c in f.coeffs):
            return p
    return None


@lru_cache(maxsize=4096)
def _signed_divisors(k: int) -> tuple[int, ...]:
    ds = intarith.divisors(k)
    return tuple(itertools.chain.from_iterable((d, -d) for d in ds))


def _rational_root(f: MonicIntPoly) -> int | None:
    a0 = f.coeffs[0]
    if a0 == 0:
        return 0
    for d in _signed_divisors(abs(a0)):
        if f(d) == 0:
            return d
    return None


def _gcd_over_q(a: Sequence, b: Sequence) -> list[Fraction]:
    a = trim([Fraction(x) for x in a])
    b = trim([Fraction(x) for x in b])
    while b:
        rem = list(a)
        while len(rem) >= len(b) and rem:
            q = rem[-1] / b[-1]
            shift = len(rem) - len(b)
            for i, c in enumerate(b):
                rem[shift + i] -= q * c
            trim(rem)
        a, b = b, rem
    lead = a[-1]
    return [c / lead for c in a]


def _subset_sums(degrees: Sequence[int]) -> frozenset[int]:
    sums = {0}
    for d in degrees:
        sums |= {s + d for s in sums}
    return frozenset(sums)


def degree_pattern(f: MonicIntPoly, disc: int | None = None, primes: int = SCREEN_PRIMES) -> frozenset[int]:
    """Degrees a factor over Q could have, given factorization shapes mod small primes.

    Uses the first ``primes`` odd primes not dividing ``Disc(f)``. Returns
    ``{0, n}`` when f is proven irreducible.
    """
    n = f.degree
    if disc is None:
        disc = disc_fast(f.coeffs)
    if disc == 0:
        raise InvalidInput("degree patterns need a square-free polynomial")
    possible = frozenset(range(n + 1))
    used = 0
    for p in intarith.primes_up_to(10_000)[1:]:
        if disc % p == 0:
            continue
        possible &= _subset_sums(ffpoly.factor_degrees([c % p for c in f.full], p))
        used += 1
        if used >= primes or possible == {0, n}:
            break
    return possible


def _interpolate(xs: Sequence[int], ys: Sequence[int]) -> list[Fraction]:
    """Coefficients (constant first) of the Lagrange interpolant."""
    m = len(xs)
    out = [Fraction(0)] * m
    for i in range(m):
        basis = [Fraction(1)]
        denom = 1
        for j in range(m):
            if j != i:
                basis = [Fraction(0)] + basis
                for k in range(len(basis) - 1):
                    basis[k] -= xs[j] * basis[k + 1]
                denom *= xs[i] - xs[j]
        scale = Fraction(ys[i], denom)
        for k in range(m):
            out[k] += scale * basis[k]
    return out


def mignotte_bound(f: MonicIntPoly) -> int:
    """Coefficient bound ``2**n (1 + max|a_i| sqrt(n))`` for any monic integer factor."""
    n = f.degree
    return math.ceil(2**n * (1 + max(map(abs, f.coeffs)) * math.sqrt(n)))


def find_factor(f: MonicIntPoly, degrees: Sequence[int] | None = None,
                node_budget: int = DEFAULT_NODE_BUDGET) -> list[int] | None:
    """Exhaustive search for a monic integer factor (Kronecker's method).

    A monic factor g of degree d satisfies ``g(x) | f(x)`` at every integer x,
    so g is the interpolant of divisors of ``f(x_0), ..., f(x_{d-1})`` plus its
    leading term. Candidates with a coefficient above the Mignotte bound are
    skipped; survivors are confirmed by exact division.
    """
    n = f.degree
    bound = mignotte_bound(f)
    if degrees is None:
        degrees = range(1, n // 2 + 1)
    nodes: list[int] = []
    x = 0
    while len(nodes) < n:
        if f(x) == 0:
            return [-x, 1]
        nodes.append(x)
        x = -x if x > 0 else -x + 1
    spent = 0
    for d in sorted(set(degrees)):
        if not 1 <= d <= n // 2:
            continue
        xs = nodes[:d]
        # g(x) - x**d ranges over divisors of f(x) minus x**d at each node
        choices = [[t - xi**d for t in _signed_divisors(abs(f(xi)))] for xi in xs]
        for ys in itertools.product(*choices):
            spent += 1
            if spent > node_budget:
                raise BudgetExceeded(f"factor search exceeded {node_budget} nodes")
            low = _interpolate(xs, ys) if d else []
            if any(c.denominator != 1 or abs(c) > bound for c in low):
                continue
            g = [int(c) for c in low] + [1]
            if not poly_divmod_monic(f.full, g)[1]:
                return g
    return None


def is_irreducible(f: MonicIntPoly, node_budget: int = DEFAULT_NODE_BUDGET) -> IrreducibilityVerdict:
    """Exact decision: rational roots, repeated factors, Eisenstein, degree
    patterns mod small primes, then an exhaustive factor search."""
    n = f.degree
    if n == 1:
        return IrreducibilityVerdict(IRREDUCIBLE, None, "linear")
    root = _rational_root(f)
    if root is not None:
        return _reducible([-root, 1], f, f"rational root {root}")
    if n <= 3:
        return IrreducibilityVerdict(IRREDUCIBLE, None, "no rational root, degree <= 3")
    disc = disc_fast(f.coeffs)
    if disc == 0:
        g = _gcd_over_q(f.full, derivative(f.full))
        return _reducible([int(c) for c in g], f, "repeated factor gcd(f, f')")
    p = eisenstein_test(f)
    if p is not None:
        return IrreducibilityVerdict(IRREDUCIBLE, None, f"Eisenstein at {p}")
    possible = degree_pattern(f, disc)
    if possible == {0, n}:
        return IrreducibilityVerdict(IRREDUCIBLE, None, "degree patterns mod small primes")
    degrees = [d for d in possible if 1 <= d <= n // 2]
    g = find_factor(f, degrees, node_budget)
    if g is not None:
        return _reducible(g, f, "factor search")
    return IrreducibilityVerdict(IRREDUCIBLE, None, "exhaustive factor search")


def _count_chunk(args) -> int:
    n, H, lead = args
    total = 0
    for rest in itertools.product(range(-H + 1, H), repeat=n - 1):
        if is_irreducible(MonicIntPoly((*rest[::-1], lead))).irreducible:
            total += 1
    return total


def count_irreducible(n: int, H: int, budget: int = 10**7, workers: int = 1) -> int:
    """``#I_n(H)``: irreducible monic f of degree n with every ``|a_i| < H``."""
    if n < 1 or H < 1:
        raise InvalidInput("n and H must be positive")
    if (2 * H - 1) ** n > budget:
        raise BudgetExceeded(f"{(2 * H - 1) ** n} polynomials exceed budget {budget}")
    chunks = [(n, H, lead) for lead in range(-H + 1, H)]
    return sum(map_chunks(_count_chunk, chunks, workers))


class IrreducibleCount(NamedTuple):
    count: int
    lattice_ratio: Fraction  # count / (2H-1)**n, the points of the strict box
    main_term_ratio: Fraction  # count / (2H)**n, the asymptotic main term 2**n H**n


def irreducible_ratios(n: int, H: int, budget: int = 10**7, workers: int = 1) -> IrreducibleCount:
    count = count_irreducible(n, H, budget, workers)
    return IrreducibleCount(count, Fraction(count, (2 * H - 1) ** n), Fraction(count, (2 * H) ** n))

"""Polynomials over prime fields and character sums with discriminants.

Polynomials over F_p are plain lists of residues, constant term first.
Enumerations of the monic polynomials of degree n run lexicographically
over ``(a_{n-1}, ..., a_0)``.
"""

from __future__ import annotations

import cmath
import itertools
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import NamedTuple, Sequence

import numpy as np

from . import intarith
from ._parallel import map_chunks
from .errors import BudgetExceeded, InternalInconsistency, InvalidInput
from .poly_core import disc_fast, disc_multivariate, tschirnhaus_transform

DEFAULT_BUDGET = 10**7
# Calibrated by the exhaustive sweep over n = 3, p <= 31 (see README).
CHARSUM_CONSTANT = 16


def _check_odd_prime(p: int) -> None:
    if p < 3 or not intarith.is_prime(p):
        raise InvalidInput(f"{p} is not an odd prime")


def _check_budget(work: int, budget: int) -> None:
    if work > budget:
        raise BudgetExceeded(f"enumeration of {work} items exceeds budget {budget}")


@dataclass(frozen=True)
class FpPoly:
    """Monic ``X**n + a[n-1] X**(n-1) + ... + a[0]`` over F_p."""

    p: int
    coeffs: tuple[int, ...]

    def __post_init__(self):
        _check_odd_prime(self.p)
        if not self.coeffs:
            raise InvalidInput("degree must be at least 1")
        object.__setattr__(self, "coeffs", tuple(c % self.p for c in self.coeffs))

    @property
    def degree(self) -> int:
        return len(self.coeffs)

    @property
    def full(self) -> list[int]:
        return [*self.coeffs, 1]


# --- arithmetic in F_p[X] ----------------------------------------------------


def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def pmul(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _trim([c % p for c in out])


def psub(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    n = max(len(a), len(b))
    a = list(a) + [0] * (n - len(a))
    b = list(b) + [0] * (n - len(b))
    return _trim([(x - y) % p for x, y in zip(a, b)])


def pdivmod(a: Sequence[int], b: Sequence[int], p: int) -> tuple[list[int], list[int]]:
    b = _trim([c % p for c in b])
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    rem = [c % p for c in a]
    _trim(rem)
    db = len(b) - 1
    inv = pow(b[-1], -1, p)
    if len(rem) - 1 < db:
        return [], rem
    quot = [0] * (len(rem) - db)
    for i in range(len(rem) - 1, db - 1, -1):
        q = rem[i] * inv % p
        if q:
            quot[i - db] = q
            for j in range(db + 1):
                rem[i - db + j] = (rem[i - db + j] - q * b[j]) % p
    return _trim(quot), _trim(rem[:db])


def pmonic(a: Sequence[int], p: int) -> list[int]:
    a = _trim([c % p for c in a])
    if not a:
        return a
    inv = pow(a[-1], -1, p)
    return [c * inv % p for c in a]


def pgcd(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    """Monic gcd (the zero polynomial if both inputs vanish)."""
    a, b = _trim([c % p for c in a]), _trim([c % p for c in b])
    while b:
        a, b = b, pdivmod(a, b, p)[1]
    return pmonic(a, p)


def pderiv(a: Sequence[int], p: int) -> list[int]:
    return _trim([i * c % p for i, c in enumerate(a)][1:])


def ppowmod(base: Sequence[int], e: int, mod: Sequence[int], p: int) -> list[int]:
    result = [1]
    base = pdivmod(base, mod, p)[1]
    while e:
        if e & 1:
            result = pdivmod(pmul(result, base, p), mod, p)[1]
        base = pdivmod(pmul(base, base, p), mod, p)[1]
        e >>= 1
    return result


def squarefree_factorization(f: Sequence[int], p: int) -> list[tuple[list[int], int]]:
    """Square-free decomposition over F_p as ``[(factor, multiplicity)]``.

    Factors are monic, square-free and pairwise coprime; characteristic-p
    powers are handled by taking p-th roots.
    """
    f = pmonic(f, p)
    if len(f) <= 1:
        return []
    out = []
    fp = pderiv(f, p)
    if not fp:
        root = [f[i] for i in range(0, len(f), p)]
        return [(g, e * p) for g, e in squarefree_factorization(root, p)]
    c = pgcd(f, fp, p)
    w = pdivmod(f, c, p)[0]
    i = 1
    while len(w) > 1:
        y = pgcd(w, c, p)
        z = pdivmod(w, y, p)[0]
        if len(z) > 1:
            out.append((pmonic(z, p), i))
        i += 1
        w = y
        c = pdivmod(c, y, p)[0]
    if len(c) > 1:
        root = [c[i] for i in range(0, len(c), p)]
        out += [(g, e * p) for g, e in squarefree_factorization(root, p)]
    return out


def radical(f: Sequence[int], p: int) -> list[int]:
    g = [1]
    for factor, _ in squarefree_factorization(f, p):
        g = pmul(g, factor, p)
    return g


def distinct_degree_factorization(f: Sequence[int], p: int) -> list[tuple[int, list[int]]]:
    """For square-free monic ``f``: ``[(d, product of its degree-d irreducible factors)]``."""
    g = pmonic(f, p)
    out = []
    h = [0, 1]
    d = 0
    while len(g) - 1 >= 2 * (d + 1):
        d += 1
        h = ppowmod(h, p, g, p)
        factor = pgcd(g, psub(h, [0, 1], p), p)
        if len(factor) > 1:
            out.append((d, factor))
            g = pdivmod(g, factor, p)[0]
            h = pdivmod(h, g, p)[1]
    if len(g) > 1:
        out.append((len(g) - 1, g))
    return out


def factor_degrees(f: Sequence[int], p: int) -> list[int]:
    """Degrees of the irreducible factors of a square-free ``f``, with repetition."""
    degrees = []
    for d, prod in distinct_degree_factorization(f, p):
        degrees += [d] * ((len(prod) - 1) // d)
    return sorted(degrees)


def distinct_irreducible_factor_count(f: FpPoly) -> tuple[bool, int]:
    """``(is_squarefree, r)``; r counts distinct irreducible factors (of the radical)."""
    full = f.full
    sqf = squarefree_factorization(full, f.p)
    squarefree = all(e == 1 for _, e in sqf)
    rad = full if squarefree else radical(full, f.p)
    return squarefree, len(factor_degrees(rad, f.p))


def disc_mod_p(coeffs: Sequence[int], p: int) -> int:
    return disc_fast(list(coeffs)) % p


def stickelberger_symbol(f: FpPoly) -> int:
    """``(Disc f / p)``, cross-checked against ``(-1)**(n - r)``."""
    via_euler = intarith.legendre_euler(disc_mod_p(f.coeffs, f.p), f.p)
    squarefree, r = distinct_irreducible_factor_count(f)
    via_factors = (-1) ** (f.degree - r) if squarefree else 0
    if via_euler != via_factors:
        raise InternalInconsistency(
            f"Stickelberger routes disagree for {f}: Euler {via_euler}, factor count {via_factors}"
        )
    return via_euler


def iter_monic(n: int, p: int):
    """Lower coefficient tuples ``(a_0, ..., a_{n-1})`` in lexicographic order of
    ``(a_{n-1}, ..., a_0)``."""
    for high_first in itertools.product(range(p), repeat=n):
        yield high_first[::-1]


# --- character sums ----------------------------------------------------------


def _eval_monomials_mod(monomials, cols: Sequence[np.ndarray], p: int) -> np.ndarray:
    total = np.zeros(cols[0].shape, dtype=np.int64)
    for exps, c in monomials:
        term = np.full(cols[0].shape, c % p, dtype=np.int64)
        for col, e in zip(cols, exps):
            for _ in range(e):
                term = term * col % p
        total = (total + term) % p
    return total


@lru_cache(maxsize=64)
def _chi_table(p: int, n: int) -> np.ndarray:
    """``(Disc f / p)`` for every monic f of degree n, as an array indexed by
    ``(a_{n-1}, ..., a_0)``."""
    grids = np.indices((p,) * n).reshape(n, -1)  # row k holds a_{n-1-k}
    cols = [grids[n - 1 - j] for j in range(n)]  # a_0 .. a_{n-1}
    if n <= 5:
        disc = _eval_monomials_mod(disc_multivariate(n), cols, p)
    else:
        disc = np.array([disc_fast([int(c[i]) for c in cols]) % p for i in range(grids.shape[1])])
    legendre = np.array([intarith.legendre_euler(r, p) for r in range(p)], dtype=np.int64)
    table = legendre[disc].reshape((p,) * n)
    table.setflags(write=False)
    return table


def _total_chunk(args) -> int:
    p, n, lead = args
    total = 0
    for rest in itertools.product(range(p), repeat=n - 1):
        coeffs = (*rest[::-1], lead)
        total += intarith.legendre_euler(disc_mod_p(coeffs, p), p)
    return total


def charsum_disc_total(p: int, n: int, budget: int = DEFAULT_BUDGET, workers: int = 1) -> int:
    """Sum of ``(Disc f / p)`` over all monic f of degree n over F_p (always 0)."""
    _check_odd_prime(p)
    if n < 1:
        raise InvalidInput("n must be positive")
    _check_budget(p**n, budget)
    if n == 1:
        return p  # Disc of a linear polynomial is 1
    return sum(map_chunks(_total_chunk, [(p, n, lead) for lead in range(p)], workers))


class CharSum(NamedTuple):
    """An element ``sum_r counts[r] * e(r / modulus)`` of the cyclotomic integers."""

    modulus: int
    counts: tuple[int, ...]

    @property
    def value(self) -> complex:
        m = self.modulus
        return sum(c * cmath.exp(2j * math.pi * r / m) for r, c in enumerate(self.counts) if c)

    @property
    def magnitude(self) -> float:
        return abs(self.value)


def _lambda_dot(lam: Sequence[int], coeffs: Sequence[int]) -> int:
    # lam[0] pairs with a_{n-1}, lam[n-1] with a_0
    n = len(coeffs)
    return sum(l * coeffs[n - 1 - i] for i, l in enumerate(lam))


def mixed_charsum(p: int, n: int, lam: Sequence[int], budget: int = DEFAULT_BUDGET) -> CharSum:
    """``sum_f (Disc f / p) e_p(<lam o f>)`` over monic f of degree n, by enumeration.

    Returned as exact integer counts per residue of ``<lam o f>``.
    """
    _check_odd_prime(p)
    if n < 2 or len(lam) != n:
        raise InvalidInput("need n >= 2 and a lambda vector of length n")
    _check_budget(p**n, budget)
    counts = [0] * p
    for coeffs in iter_monic(n, p):
        chi = intarith.legendre_euler(disc_mod_p(coeffs, p), p)
        if chi:
            counts[_lambda_dot(lam, coeffs) % p] += chi
    return CharSum(p, tuple(counts))


class SweepResult(NamedTuple):
    p: int
    n: int
    max_ratio: float  # max |S(lam)| / p**(n-1) over nonzero lam
    argmax: tuple[int, ...]
    lambdas: int


def mixed_charsum_sweep(p: int, n: int, budget: int = DEFAULT_BUDGET) -> SweepResult:
    """Maximum of ``|S(lam)| / p**(n-1)`` over all nonzero ``lam``.

    Exact per-residue counts are formed once per projective direction; the
    p - 1 scalar multiples of a direction permute the residues, so only the
    final magnitudes use floating point.
    """
    _check_odd_prime(p)
    _check_budget(p**n, budget)
    table = _chi_table(p, n)
    grids = np.indices(table.shape).reshape(n, -1)
    flat = table.reshape(-1)
    scalars = np.arange(1, p)
    phase = np.exp(2j * np.pi * np.outer(scalars, np.arange(p)) / p)
    best, best_lam, seen = -1.0, None, 0
    for lam in itertools.product(range(p), repeat=n):
        nz = next((x for x in lam if x), 0)
        if nz != 1:
            continue  # one representative per direction: first nonzero entry is 1
        t = (np.asarray(lam, dtype=np.int64) @ grids) % p
        counts = np.zeros(p, dtype=np.int64)
        np.add.at(counts, t, flat)
        # S(c * lam) = sum_r counts[r] e_p(c r)
        values = np.abs(phase @ counts)
        seen += p - 1
        k = int(np.argmax(values))
        if values[k] > best:
            best = float(values[k])
            best_lam = tuple(int(scalars[k]) * x % p for x in lam)
    return SweepResult(p, n, best / p ** (n - 1), best_lam, seen)


def _crt_compose(sp: CharSum, sq: CharSum) -> CharSum:
    p, q = sp.modulus, sq.modulus
    m = p * q
    counts = [0] * m
    for t1, c1 in enumerate(sp.counts):
        if c1:
            for t2, c2 in enumerate(sq.counts):
                if c2:
                    counts[(q * t1 + p * t2) % m] += c1 * c2
    return CharSum(m, tuple(counts))


def jacobi_charsum(p: int, q: int, n: int, lam: Sequence[int], budget: int = DEFAULT_BUDGET) -> CharSum:
    """``sum_{a mod m} (Disc f / m) e_m(<lam o f>)`` for ``m = p q``.

    Computed directly, then recomposed from the two prime-modulus sums at
    ``x lam mod p`` and ``y lam mod q`` where ``x = q^-1 mod p``,
    ``y = p^-1 mod q``; the two count vectors must agree exactly.
    """
    _check_odd_prime(p)
    _check_odd_prime(q)
    if p == q:
        raise InvalidInput("p and q must be distinct")
    if len(lam) != n:
        raise InvalidInput("lambda vector must have length n")
    m = p * q
    _check_budget(m**n, budget)
    counts = [0] * m
    for coeffs in iter_monic(n, m):
        chi = intarith.jacobi_symbol(disc_fast(list(coeffs)), m)
        if chi:
            counts[_lambda_dot(lam, coeffs) % m] += chi
    direct = CharSum(m, tuple(counts))
    x, y = pow(q, -1, p), pow(p, -1, q)
    composed = _crt_compose(
        mixed_charsum(p, n, [x * l % p for l in lam], budget),
        mixed_charsum(q, n, [y * l % q for l in lam], budget),
    )
    if composed != direct:
        raise InternalInconsistency(f"CRT composition differs from direct sum for m={m}, lam={lam}")
    return direct


class BoxCharSum(NamedTuple):
    value: int
    bound: float  # H**(n-1) log m + m**(n-1) (log m)**n


def box_charsum(p: int, q: int, n: int, H: int, budget: int = DEFAULT_BUDGET) -> BoxCharSum:
    """``sum_{f in P_n(H)} (Disc f / m)`` with ``m = p q`` and ``|a_i| < H``."""
    _check_odd_prime(p)
    _check_odd_prime(q)
    if H < 1:
        raise InvalidInput("H must be positive")
    m = p * q
    _check_budget((2 * H - 1) ** n, budget)
    total = 0
    for coeffs in itertools.product(range(-H + 1, H), repeat=n):
        total += intarith.jacobi_symbol(disc_fast(list(coeffs)), m)
    log_m = math.log(m)
    return BoxCharSum(total, H ** (n - 1) * log_m + m ** (n - 1) * log_m**n)


# --- the (u, v) transforms over F_p -------------------------------------------


def transform_mod_p(coeffs: Sequence[int], u: int, v: int, p: int) -> tuple[int, ...]:
    """Lower coefficients of ``u**n f(u^-1 (X + v))`` over F_p."""
    out = tschirnhaus_transform([*coeffs, 1], u, v)
    return tuple(c % p for c in out[:-1])


class ExceptionalCount(NamedTuple):
    count: int
    bound: int
    within_bound: bool


def _transforms_collide(coeffs, p: int) -> bool:
    seen = set()
    for u in range(1, p):
        for v in range(p):
            t = transform_mod_p(coeffs, u, v, p)
            if t in seen:
                return True
            seen.add(t)
    return False


def exceptional_set_count(p: int, n: int, constant: int = 8, budget: int = DEFAULT_BUDGET) -> ExceptionalCount:
    """Number of monic f over F_p whose p(p-1) transforms are not pairwise distinct."""
    _check_odd_prime(p)
    if p <= n:
        raise InvalidInput("need p > n")
    _check_budget(p ** (n + 2), budget)
    count = sum(1 for coeffs in iter_monic(n, p) if _transforms_collide(coeffs, p))
    bound = constant * p ** (n // 2 + 1)
    return ExceptionalCount(count, bound, count <= bound)


def ff_transform_disc_check(p: int, n: int, budget: int = DEFAULT_BUDGET) -> bool:
    """Whether ``Disc(f_{u,v}) == u**(n(n-1)) Disc(f)`` for every f and (u, v) over F_p."""
    _check_odd_prime(p)
    if n < 2:
        raise InvalidInput("n must be at least 2")
    _check_budget(p ** (n + 2), budget)
    e = n * (n - 1)
    for coeffs in iter_monic(n, p):
        d = disc_mod_p(coeffs, p)
        for u in range(1, p):
            target = pow(u, e, p) * d % p
            for v in range(p):
                if disc_mod_p(transform_mod_p(coeffs, u, v, p), p) != target:
                    return False
    return True

"""Field discriminants through Dedekind's p-maximality criterion.

Only the square-free part of the field discriminant is always available:
``Disc(f) / Delta(f)`` is a square, so both share it. An exact ``Delta(f)``
is certified when ``Z[alpha]`` is maximal at every prime whose square
divides ``Disc(f)``, in which case ``Delta(f) = Disc(f)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import intarith
from .errors import InvalidInput
from .ffpoly import pdivmod, pgcd, pmul, squarefree_factorization
from .irreducibility import is_irreducible
from .poly_core import MonicIntPoly, discriminant, trim

MAXIMAL = "maximal"
NOT_MAXIMAL = "not-maximal"


@dataclass(frozen=True)
class DedekindReport:
    polynomial: MonicIntPoly
    disc: int
    tested_primes: tuple[tuple[int, str], ...]
    certified_field_disc: int | None
    sf_part_of_field_disc: intarith.SquarefreeDecomposition

    @property
    def r(self) -> int | None:
        """``r`` with ``Disc = r**2 * Delta``, when Delta is certified."""
        if self.certified_field_disc is None:
            return None
        return intarith.is_perfect_square(self.disc // self.certified_field_disc)[1]


def dedekind_p_maximal(f: MonicIntPoly, p: int, check_irreducible: bool = True) -> str:
    """Dedekind's criterion for ``Z[alpha]`` at the prime ``p``.

    With ``f = prod g_i**e_i`` mod p, put ``g = prod g_i`` and ``h = f / g``
    (mod p, lifted to Z) and ``F = (g h - f) / p``. ``Z[alpha]`` is p-maximal
    iff ``gcd(F mod p, g, h) = 1`` in F_p[X].
    """
    if not intarith.is_prime(p):
        raise InvalidInput(f"{p} is not prime")
    if check_irreducible and not is_irreducible(f).irreducible:
        raise InvalidInput(f"{f} is reducible; the Dedekind verdict is meaningless")
    full = f.full
    fbar = [c % p for c in full]
    g = [1]
    for factor, _ in squarefree_factorization(fbar, p):
        g = pmul(g, factor, p)
    h = pdivmod(fbar, g, p)[0]
    if len(h) <= 1:
        return MAXIMAL  # f square-free mod p
    gh = [0] * (len(g) + len(h) - 1)
    for i, x in enumerate(g):
        for j, y in enumerate(h):
            gh[i + j] += x * y
    diff = [x - y for x, y in zip(gh, full)]
    assert all(c % p == 0 for c in diff)
    big_f = trim([c // p % p for c in diff])
    common = pgcd(pgcd(big_f, g, p), h, p)
    return MAXIMAL if len(common) <= 1 else NOT_MAXIMAL


def field_disc(f: MonicIntPoly, check_irreducible: bool = True,
               limits: intarith.FactorizationLimits = intarith.DEFAULT_LIMITS) -> DedekindReport:
    if check_irreducible and not is_irreducible(f).irreducible:
        raise InvalidInput(f"{f} is reducible")
    disc = discriminant(f)
    return _report(f, disc, limits)


def _report(f: MonicIntPoly, disc: int, limits=intarith.DEFAULT_LIMITS) -> DedekindReport:
    factors = intarith.factorize(disc, limits)
    tested = tuple((p, dedekind_p_maximal(f, p, check_irreducible=False)) for p, e in factors if e >= 2)
    certified = disc if all(v == MAXIMAL for _, v in tested) else None
    u, v = 1 if disc > 0 else -1, 1
    for p, e in factors:
        u *= p ** (e % 2)
        v *= p ** (e // 2)
    return DedekindReport(f, disc, tested, certified, intarith.SquarefreeDecomposition(u, v))


def z_alpha_is_maximal(f: MonicIntPoly, disc: int) -> bool:
    """True iff ``Z[alpha]`` is the maximal order (so ``Delta(f) = disc``).

    ``f`` must be irreducible with discriminant ``disc``. A square-free
    discriminant settles it without any Dedekind test.
    """
    factors = intarith.factorize(disc)
    return all(dedekind_p_maximal(f, p, check_irreducible=False) == MAXIMAL for p, e in factors if e >= 2)


def monogenic_density(n: int, H: int, workers: int = 1) -> Fraction:
    """Fraction of ``f in I_n(H)`` with certified ``Delta(f) = Disc(f)``."""
    from .census import HeightBox, field_histogram

    hist = field_histogram(n, HeightBox.strict(n, H), workers)
    total = sum(hist.values())
    if total == 0:
        raise InvalidInput(f"I_{n}({H}) is empty; the density is undefined")
    certified = sum(c for (_, ok), c in hist.items() if ok)
    return Fraction(certified, total)

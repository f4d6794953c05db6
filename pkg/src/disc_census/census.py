"""Exhaustive censuses of monic polynomials grouped by discriminant class."""

from __future__ import annotations

import itertools
import math
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import NamedTuple, Sequence

from . import intarith
from ._parallel import map_chunks
from .errors import BudgetExceeded, InternalInconsistency, InvalidInput
from .fielddisc import z_alpha_is_maximal
from .irreducibility import is_irreducible
from .poly_core import MonicIntPoly, disc_fast, discriminant, trinomial_delta, trinomial_disc

DEFAULT_BUDGET = 10**7

SIGNED = "signed-squarefree-u"
ABSOLUTE = "absolute-u"
DISC_VALUE = "disc-value"


@dataclass(frozen=True)
class HeightBox:
    """Integer intervals ``[lo, hi]`` for ``a_0 .. a_{n-1}``."""

    intervals: tuple[tuple[int, int], ...]
    mode: str = "closed-box"

    def __post_init__(self):
        if not self.intervals or any(lo > hi for lo, hi in self.intervals):
            raise InvalidInput("box intervals must be nonempty")

    @classmethod
    def strict(cls, n: int, H: int) -> "HeightBox":
        """``|a_i| < H`` for every coefficient."""
        if n < 1 or H < 1:
            raise InvalidInput("n and H must be positive")
        return cls(((-H + 1, H - 1),) * n, "strict-symmetric")

    @property
    def degree(self) -> int:
        return len(self.intervals)

    @property
    def volume(self) -> int:
        return math.prod(hi - lo + 1 for lo, hi in self.intervals)

    def chunks(self) -> list["HeightBox"]:
        """Split on the outermost coefficient ``a_{n-1}``."""
        lo, hi = self.intervals[-1]
        return [HeightBox(self.intervals[:-1] + ((a, a),), self.mode) for a in range(lo, hi + 1)]

    def __iter__(self):
        """Lower coefficient tuples, lexicographic in ``(a_{n-1}, ..., a_0)``."""
        ranges = [range(lo, hi + 1) for lo, hi in reversed(self.intervals)]
        for high_first in itertools.product(*ranges):
            yield high_first[::-1]


@dataclass
class CountTable:
    kind: str
    counts: dict
    meta: dict = field(default_factory=dict)

    @property
    def total(self) -> int:
        return sum(self.counts.values())

    def rows(self) -> list[tuple[int, int]]:
        return sorted(self.counts.items())

    def argmax(self) -> tuple[int, int] | None:
        """Largest class; ties go to the smallest key."""
        if not self.counts:
            return None
        return min(self.counts.items(), key=lambda kv: (-kv[1], kv[0]))


def _check_budget(box: HeightBox, budget: int) -> None:
    if box.volume > budget:
        raise BudgetExceeded(f"box of {box.volume} polynomials exceeds budget {budget}")


@lru_cache(maxsize=1 << 16)
def _sf(disc: int) -> intarith.SquarefreeDecomposition:
    return intarith.squarefree_part(disc)


def _field_chunk(args) -> Counter:
    box, dedekind = args
    out = Counter()
    for coeffs in box:
        f = MonicIntPoly(coeffs)
        if f.degree >= 2 and not is_irreducible(f).irreducible:
            continue
        d = disc_fast(coeffs) if f.degree >= 2 else 1
        ok = z_alpha_is_maximal(f, d) if dedekind else None
        out[(d, ok)] += 1
    return out


_HISTOGRAMS: dict[tuple[HeightBox, bool], Counter] = {}


def _run(box: HeightBox, dedekind: bool, workers: int, budget: int) -> Counter:
    """Merged per-chunk histograms; memoized per box. Worker count never affects the result."""
    _check_budget(box, budget)
    for key in ((box, True), (box, dedekind)):
        if key in _HISTOGRAMS:
            return _HISTOGRAMS[key]
    total = Counter()
    for part in map_chunks(_field_chunk, [(c, dedekind) for c in box.chunks()], workers):
        total.update(part)
    if len(_HISTOGRAMS) > 64:
        _HISTOGRAMS.clear()
    _HISTOGRAMS[(box, dedekind)] = total
    return total


def field_histogram(n: int, box: HeightBox, workers: int = 1, budget: int = DEFAULT_BUDGET) -> Counter:
    """``{(Disc f, Z[alpha] maximal): count}`` over irreducible f in the box."""
    if box.degree != n:
        raise InvalidInput("box dimension must equal n")
    return Counter(_run(box, True, workers, budget))


def disc_histogram(n: int, box: HeightBox, workers: int = 1, budget: int = DEFAULT_BUDGET) -> Counter:
    """``{Disc f: count}`` over irreducible f in the box."""
    if box.degree != n:
        raise InvalidInput("box dimension must equal n")
    out: Counter = Counter()
    for (d, _), c in _run(box, False, workers, budget).items():
        out[d] += c  # a Dedekind-annotated memo splits each d by verdict
    return out


def _as_box(n: int, box) -> HeightBox:
    return box if isinstance(box, HeightBox) else HeightBox.strict(n, box)


def count_by_squarefree_class(n: int, box, key: str = SIGNED, workers: int = 1,
                              budget: int = DEFAULT_BUDGET) -> CountTable:
    """``T_n(H, u)`` for every class u present: irreducible f grouped by the
    square-free part of ``Disc f`` (equal to that of the field discriminant).

    ``box`` is a :class:`HeightBox` or a height H for the strict box.
    """
    box = _as_box(n, box)
    hist = disc_histogram(n, box, workers, budget)
    counts: Counter = Counter()
    for d, c in hist.items():
        if key == DISC_VALUE:
            counts[d] += c
        elif key == SIGNED:
            counts[_sf(d).u] += c
        elif key == ABSOLUTE:
            counts[abs(_sf(d).u)] += c
        else:
            raise InvalidInput(f"unknown key kind {key!r}")
    return CountTable(key, dict(counts), {"n": n, "box": box.intervals, "mode": box.mode, "filter": "irreducible"})


def theorem_condition_fails(u: int, n: int) -> bool:
    """True when ``|u| (n-1)**(n-1)`` or ``|u| n**n`` is a square, i.e. the
    case in which only the weaker sieve bound applies."""
    return (intarith.is_perfect_square(abs(u) * (n - 1) ** (n - 1))[0]
            or intarith.is_perfect_square(abs(u) * n**n)[0])


class ClassMax(NamedTuple):
    u: int
    count: int
    square_condition_flag: bool


def max_class_multiplicity(n: int, H: int, key: str = SIGNED, workers: int = 1) -> ClassMax | None:
    table = count_by_squarefree_class(n, H, key, workers)
    top = table.argmax()
    if top is None:
        return None
    return ClassMax(top[0], top[1], theorem_condition_fails(top[0], n))


class SmallDiscMass(NamedTuple):
    certified: int
    unresolved: int


def small_disc_mass(n: int, H: int, D: int, workers: int = 1) -> SmallDiscMass:
    """Irreducible f with certified ``|Delta(f)| <= D``, and those without a
    certificate whose field discriminant could still be that small
    (``|u| <= D`` for the square-free part u)."""
    if D < 1:
        return SmallDiscMass(0, 0)
    certified = unresolved = 0
    for (d, ok), c in field_histogram(n, HeightBox.strict(n, H), workers).items():
        if ok:
            certified += c if abs(d) <= D else 0
        elif abs(_sf(d).u) <= D:
            unresolved += c
    return SmallDiscMass(certified, unresolved)


def distinct_disc_count(n: int, H: int, key: str = DISC_VALUE, workers: int = 1) -> int:
    """``D_n(H)`` (or its square-free-class analogue) over ``I_n(H)``."""
    return len(count_by_squarefree_class(n, H, key, workers).counts)


class FamilyResult(NamedTuple):
    size: int
    distinct: int
    all_eisenstein: bool


def eisenstein_trinomial_family(n: int, H: int) -> list[tuple[int, int]]:
    """Pairs (a, b) with a even in [H/2, H], b = 2 mod 4 and 1 <= b <= H/(3n),
    indexing the trinomials ``X**n + a X - b``."""
    return [(a, b) for a in range(math.ceil(H / 2), H + 1) if a % 2 == 0
            for b in range(1, H // (3 * n) + 1) if b % 4 == 2]


def trinomial_family_distinctness(n: int, H: int) -> FamilyResult:
    pairs = eisenstein_trinomial_family(n, H)
    discs = {trinomial_disc(n, a, -b) for a, b in pairs}
    eisenstein = all(a % 2 == 0 and b % 2 == 0 and b % 4 != 0 for a, b in pairs)
    return FamilyResult(len(pairs), len(discs), eisenstein)


# --- trinomial boxes -----------------------------------------------------------


class TrinomialCount(NamedTuple):
    total: int
    per_a: dict
    max_per_a: int


def _represents(value: int, s: int) -> bool:
    """Whether ``value = s * r**2`` for a positive integer r."""
    if value == 0 or value % s:
        return False
    ok, r = intarith.is_perfect_square(value // s)
    return ok and r > 0


def trinomial_count(n: int, A: int, B: int, C: int, D: int, s: int, source: str = "closed") -> TrinomialCount:
    """Pairs ``(a, b) in [C, C+A] x [D, D+B]`` with ``Delta_n(a, b) = s r**2``.

    ``source="closed"`` uses ``(n-1)**(n-1) a**n + n**n b**(n-1)``;
    ``source="resultant"`` recomputes ``Disc(X**n + a X + b)`` by elimination
    (the two coincide for ``n = 1 mod 4``).
    """
    if n < 2 or s == 0:
        raise InvalidInput("need n >= 2 and nonzero s")
    if (A + 1) * (B + 1) > DEFAULT_BUDGET:
        raise BudgetExceeded("trinomial box exceeds budget")
    per_a = {}
    for a in range(C, C + A + 1):
        hits = 0
        for b in range(D, D + B + 1):
            if source == "closed":
                value = trinomial_delta(n, a, b)
            else:
                value = discriminant(MonicIntPoly((b, a) + (0,) * (n - 2)))
            hits += _represents(value, s)
        per_a[a] = hits
    return TrinomialCount(sum(per_a.values()), per_a, max(per_a.values()))


class PellCount(NamedTuple):
    count: int
    divisor_count: int | None


def pell_count(s: int, M: int, rhs: int, bound: int) -> PellCount:
    """Pairs ``(r, c)`` with ``|r|, |c| <= bound`` and ``s r**2 - M c**2 = rhs``.

    Counted by a loop over c. When ``s*M`` or ``-s*M`` is a perfect square the
    form factors (over Z, resp. the Gaussian integers) and the count is
    recomputed from the factorization of ``s * rhs``; the two must agree.
    """
    if rhs == 0:
        raise InvalidInput("rhs must be nonzero")
    if s == 0 or M == 0:
        raise InvalidInput("s and M must be nonzero")
    if bound > 10**7:
        raise BudgetExceeded("bound exceeds loop budget")
    count = 0
    for c in range(-bound, bound + 1):
        num = rhs + M * c * c
        if num % s:
            continue
        ok, r = intarith.is_perfect_square(num // s)
        if ok and r <= bound:
            count += 2 if r else 1
    other = None
    sq_pos, k_pos = intarith.is_perfect_square(s * M)
    sq_neg, k_neg = intarith.is_perfect_square(-s * M)
    if sq_pos:
        other = _pell_split(s, k_pos, rhs, bound)
    elif sq_neg:
        other = _pell_gaussian(s, k_neg, rhs, bound)
    if other is not None and other != count:
        raise InternalInconsistency(f"Pell routes disagree: loop {count}, divisor {other}")
    return PellCount(count, other)


def _pell_split(s: int, k: int, rhs: int, bound: int) -> int:
    # (s r - k c)(s r + k c) = s * rhs
    target = s * rhs
    found = set()
    for d in intarith.divisors(target):
        for d1 in (d, -d):
            e1 = target // d1
            if (d1 + e1) % 2:
                continue
            sr, kc = (d1 + e1) // 2, (e1 - d1) // 2
            if sr % s or kc % k:
                continue
            r, c = sr // s, kc // k
            if abs(r) <= bound and abs(c) <= bound:
                found.add((r, c))
    return len(found)


def _two_squares(N: int) -> set[tuple[int, int]]:
    """All integer (x, y) with ``x**2 + y**2 = N``, via Gaussian factorization."""
    if N < 0:
        return set()
    if N == 0:
        return {(0, 0)}
    gens = [(1, 0)]

    def gmul(a, b):
        return (a[0] * b[0] - a[1] * b[1], a[0] * b[1] + a[1] * b[0])

    for p, e in intarith.factorize(N):
        if p == 2:
            for _ in range(e):
                gens = [gmul(g, (1, 1)) for g in gens]
        elif p % 4 == 3:
            if e % 2:
                return set()
            gens = [(g[0] * p ** (e // 2), g[1] * p ** (e // 2)) for g in gens]
        else:
            pi = _gaussian_prime(p)
            conj = (pi[0], -pi[1])
            new = []
            for j in range(e + 1):
                t = (1, 0)
                for _ in range(j):
                    t = gmul(t, pi)
                for _ in range(e - j):
                    t = gmul(t, conj)
                new += [gmul(g, t) for g in gens]
            gens = new
    units = [(1, 0), (0, 1), (-1, 0), (0, -1)]
    return {gmul(g, w) for g in gens for w in units}


def _gaussian_prime(p: int) -> tuple[int, int]:
    """``(x, y)`` with ``x**2 + y**2 = p`` for a prime ``p = 1 mod 4`` (Hermite-Serret)."""
    c = next(c for c in range(2, p) if intarith.legendre_euler(c, p) == -1)
    t = pow(c, (p - 1) // 4, p)
    a, b = p, t
    limit = math.isqrt(p)
    while b > limit:
        a, b = b, a % b
    y = math.isqrt(p - b * b)
    assert b * b + y * y == p
    return b, y


def _pell_gaussian(s: int, k: int, rhs: int, bound: int) -> int:
    # (s r)**2 + (k c)**2 = s * rhs
    found = 0
    for x, y in _two_squares(s * rhs):
        if x % s == 0 and y % k == 0 and abs(x // s) <= bound and abs(y // k) <= bound:
            found += 1
    return found


class QuadraticFieldCount(NamedTuple):
    classes: int  # distinct square-free parts u != 1
    rational_class: bool  # some pair has u = 1
    irreducible_pairs: int


def quadratic_field_count(n: int, A: int, B: int, C: int, D: int) -> QuadraticFieldCount:
    """Distinct ``Q(sqrt(Delta_n(a, b)))`` over ``(a, b) in [C, C+A] x [D, D+B]``
    with ``X**n + a X + b`` irreducible."""
    classes, rational, pairs = set(), False, 0
    for a in range(C, C + A + 1):
        for b in range(D, D + B + 1):
            if not is_irreducible(MonicIntPoly((b, a) + (0,) * (n - 2))).irreducible:
                continue
            value = trinomial_delta(n, a, b)
            if value == 0:
                continue
            pairs += 1
            u = _sf(value).u
            if u == 1:
                rational = True
            else:
                classes.add(u)
    return QuadraticFieldCount(len(classes), rational, pairs)


class BoundedFieldCount(NamedTuple):
    classes: int
    rational_class: bool
    pairs: int
    reference: float  # Delta**(1/(n-1))


def quadratic_fields_below(n: int, delta: int) -> BoundedFieldCount:
    """Distinct quadratic fields from irreducible ``X**n + a X + b``, ``a, b >= 1``,
    with ``|Delta_n(a, b)| <= delta``."""
    classes, rational, pairs = set(), False, 0
    a = 1
    while trinomial_delta(n, a, 1) <= delta:
        b = 1
        while (value := trinomial_delta(n, a, b)) <= delta:
            if is_irreducible(MonicIntPoly((b, a) + (0,) * (n - 2))).irreducible:
                pairs += 1
                u = _sf(value).u
                if u == 1:
                    rational = True
                else:
                    classes.add(u)
            b += 1
        a += 1
    return BoundedFieldCount(len(classes), rational, pairs, delta ** (1 / (n - 1)))


class LineCount(NamedTuple):
    count: int
    lemma_applies: bool  # neither |u|(n-1)^(n-1) nor |u| n^n is a square


def lemma_l3_solution_count(n: int, fixed: Sequence[int], u: int, d0, d1, d2, H: int, c: float = 1.0) -> LineCount:
    """Integer ``(z, a_0, a_1)`` on the line ``d0 a_0 + d1 a_1 + d2 = 0`` with
    ``|a_0|, |a_1| <= H``, ``|z| <= H**c`` and ``z**2 = u Disc(f)``.

    ``fixed`` holds ``a_2 .. a_{n-1}``.
    """
    if n < 3 or len(fixed) != n - 2:
        raise InvalidInput("need n >= 3 and n - 2 fixed coefficients")
    d0, d1, d2 = Fraction(d0), Fraction(d1), Fraction(d2)
    if d0 == 0 and d1 == 0:
        raise InvalidInput("(d0, d1) must not be (0, 0)")
    if u == 0 or not intarith.is_squarefree(u):
        raise InvalidInput("u must be square-free")
    z_max = H**c
    points = []
    if d0 != 0:
        for a1 in range(-H, H + 1):
            a0 = -(d1 * a1 + d2) / d0
            if a0.denominator == 1 and abs(a0) <= H:
                points.append((int(a0), a1))
    else:
        a1 = -d2 / d1
        if a1.denominator == 1 and abs(a1) <= H:
            points = [(a0, int(a1)) for a0 in range(-H, H + 1)]
    count = 0
    for a0, a1 in points:
        ok, z = intarith.is_perfect_square(u * disc_fast([a0, a1, *fixed]))
        if ok and z <= z_max:
            count += 2 if z else 1
    return LineCount(count, not theorem_condition_fails(u, n))


class TrendRow(NamedTuple):
    H: int
    u: int
    count: int
    limit: float


def class_max_trend(n: int, heights: Sequence[int], exponent: float = 2.5, key: str = ABSOLUTE,
                    workers: int = 1) -> tuple[list[TrendRow], float]:
    """``max_u T_n(H, u)`` against ``H**exponent`` with the fitted log-log slope."""
    rows = []
    for H in heights:
        top = max_class_multiplicity(n, H, key, workers)
        rows.append(TrendRow(H, top.u, top.count, H**exponent))
    xs = [math.log(r.H) for r in rows]
    ys = [math.log(r.count) for r in rows]
    mx, my = sum(xs) / len(xs), sum(ys) / len(ys)
    slope = sum((x - mx) * (y - my) for x, y in zip(xs, ys)) / sum((x - mx) ** 2 for x in xs)
    return rows, slope

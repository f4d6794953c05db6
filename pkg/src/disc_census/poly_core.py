"""Monic integer polynomials, resultants and discriminants.

Coefficient lists are stored constant term first throughout the package;
``[a0, a1, ..., 1]`` is ``a0 + a1*X + ... + X**n``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb
from typing import NamedTuple, Sequence

from .errors import InternalInconsistency, InvalidInput


@dataclass(frozen=True)
class MonicIntPoly:
    """``X**n + a[n-1]*X**(n-1) + ... + a[0]``; ``coeffs`` holds ``a[0..n-1]``."""

    coeffs: tuple[int, ...]

    def __post_init__(self):
        if len(self.coeffs) < 1:
            raise InvalidInput("a monic polynomial needs degree >= 1")
        object.__setattr__(self, "coeffs", tuple(int(c) for c in self.coeffs))

    @classmethod
    def from_highest(cls, coeffs: Sequence[int]) -> "MonicIntPoly":
        """Build from highest-degree-first coefficients; the first must be 1."""
        coeffs = list(coeffs)
        if len(coeffs) < 2 or coeffs[0] != 1:
            raise InvalidInput("expected a monic polynomial of degree >= 1, leading coefficient 1")
        return cls(tuple(reversed(coeffs[1:])))

    @property
    def degree(self) -> int:
        return len(self.coeffs)

    @property
    def full(self) -> list[int]:
        return [*self.coeffs, 1]

    def __call__(self, x):
        acc = 1
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __str__(self):
        return poly_str(self.full)


def poly_str(coeffs: Sequence, var: str = "X") -> str:
    terms = []
    for i in range(len(coeffs) - 1, -1, -1):
        c = coeffs[i]
        if not c:
            continue
        mono = "" if i == 0 else var if i == 1 else f"{var}^{i}"
        if i and c == 1:
            s = mono
        elif i and c == -1:
            s = "-" + mono
        else:
            s = f"{c}{'*' if mono else ''}{mono}"
        terms.append(s)
    if not terms:
        return "0"
    return " + ".join(terms).replace("+ -", "- ")


def trim(p: list) -> list:
    while p and not p[-1]:
        p.pop()
    return p


def derivative(coeffs: Sequence) -> list:
    return [i * c for i, c in enumerate(coeffs)][1:]


def poly_mul(a: Sequence, b: Sequence) -> list:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return trim(out)


def poly_divmod_monic(a: Sequence[int], b: Sequence[int]) -> tuple[list[int], list[int]]:
    """Division with remainder by a monic integer polynomial ``b``."""
    if not b or b[-1] != 1:
        raise InvalidInput("divisor must be monic")
    rem = list(a)
    db = len(b) - 1
    if len(rem) - 1 < db:
        return [], trim(rem)
    quot = [0] * (len(rem) - db)
    for i in range(len(rem) - 1, db - 1, -1):
        q = rem[i]
        if q:
            quot[i - db] = q
            for j in range(db + 1):
                rem[i - db + j] -= q * b[j]
    return trim(quot), trim(rem[:db])


def sylvester_matrix(f: Sequence, g: Sequence) -> list[list]:
    """Sylvester matrix of ``f`` (degree n) and ``g`` (degree m), size n+m."""
    n, m = len(f) - 1, len(g) - 1
    size = n + m
    fh, gh = list(reversed(f)), list(reversed(g))
    rows = []
    for i in range(m):
        rows.append([0] * i + fh + [0] * (size - n - 1 - i))
    for i in range(n):
        rows.append([0] * i + gh + [0] * (size - m - 1 - i))
    return rows


def bareiss_det(matrix: Sequence[Sequence]) -> int | Fraction:
    """Determinant by fraction-free Bareiss elimination; exact over Z (and Q)."""
    a = [list(row) for row in matrix]
    n = len(a)
    if n == 0:
        return 1
    exact = all(isinstance(x, int) for row in a for x in row)
    sign, prev = 1, 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        akk = a[k][k]
        rk = a[k]
        for i in range(k + 1, n):
            ri = a[i]
            aik = ri[k]
            for j in range(k + 1, n):
                num = ri[j] * akk - aik * rk[j]
                ri[j] = num // prev if exact else num / prev
            ri[k] = 0
        prev = akk
    return sign * a[n - 1][n - 1]


def resultant(f: MonicIntPoly | Sequence, g: Sequence) -> int:
    """``Res(f, g)`` as the Sylvester determinant; ``g`` is constant-first."""
    fc = f.full if isinstance(f, MonicIntPoly) else list(f)
    gc = trim(list(g))
    if not gc:
        raise InvalidInput("g must be nonzero")
    return bareiss_det(sylvester_matrix(fc, gc))


def _disc_from_full(full: Sequence) -> int | Fraction:
    n = len(full) - 1
    r = bareiss_det(sylvester_matrix(full, derivative(full)))
    return -r if (n * (n - 1) // 2) % 2 else r


def discriminant(f: MonicIntPoly) -> int:
    """``(-1)**(n(n-1)/2) * Res(f, f')`` by exact Bareiss elimination."""
    if f.degree < 2:
        raise InvalidInput("discriminant needs degree >= 2")
    return _disc_from_full(f.full)


def trinomial_disc(n: int, a: int, b: int) -> int:
    """Discriminant of ``X**n + a*X + b`` in closed form."""
    if n < 2:
        raise InvalidInput("n must be at least 2")
    sign = -1 if ((n - 1) * (n + 2) // 2) % 2 else 1
    return sign * ((n - 1) ** (n - 1) * a**n + n**n * (-b) ** (n - 1))


def trinomial_delta(n: int, a: int, b: int) -> int:
    """``(n-1)**(n-1) * a**n + n**n * b**(n-1)``; equals the discriminant of
    ``X**n + a*X + b`` when ``n % 4 == 1``."""
    return (n - 1) ** (n - 1) * a**n + n**n * b ** (n - 1)


def quadrinomial_disc(n: int, a: int, b: int) -> int:
    """Discriminant of ``X**n + a*X**3 + b`` for ``n`` prime to 3."""
    if n < 4 or n % 3 == 0:
        raise InvalidInput("need n >= 4 and n coprime to 3")
    sign = -1 if (n * (n - 1) // 2) % 2 else 1
    inner = n**n * b ** (n - 3) + (-1) ** (n + 1) * (n - 3) ** (n - 3) * 27 * a**n
    return sign * b * b * inner


def tschirnhaus_transform(f: MonicIntPoly | Sequence, u, v) -> tuple:
    """Coefficients (constant first, monic) of ``u**n * f((X + v)/u)``.

    Works over any exact ring: pass Fractions for rational ``u, v`` or reduce
    the integer result modulo p for finite fields.
    """
    full = f.full if isinstance(f, MonicIntPoly) else list(f)
    if u == 0:
        raise InvalidInput("u must be nonzero")
    n = len(full) - 1
    out = [0] * (n + 1)
    for j, a in enumerate(full):
        if not a:
            continue
        scale = a * u ** (n - j)
        for i in range(j + 1):
            out[i] += scale * comb(j, i) * v ** (j - i)
    return tuple(out)


# ---------------------------------------------------------------------------
# the discriminant as a multivariate polynomial


class Monomial(NamedTuple):
    exponents: tuple[int, ...]  # over a_0 .. a_{n-1}
    coefficient: int


def monomial_weight(exponents: Sequence[int]) -> int:
    """Weighted degree where the coefficient of ``X**j`` carries weight ``n - j``."""
    n = len(exponents)
    return sum((n - j) * e for j, e in enumerate(exponents))


def _newton_to_monomial(values: list, nodes: Sequence[int]) -> list:
    """Monomial coefficients of the interpolant through ``(nodes[i], values[i])``."""
    m = len(nodes)
    dd = [Fraction(v) for v in values]
    for level in range(1, m):
        for i in range(m - 1, level - 1, -1):
            dd[i] = (dd[i] - dd[i - 1]) / (nodes[i] - nodes[i - level])
    coeffs = [Fraction(0)] * m
    coeffs[0] = dd[m - 1]
    deg = 0
    for i in range(m - 2, -1, -1):
        # coeffs <- coeffs * (x - nodes[i]) + dd[i]
        deg += 1
        for k in range(deg, 0, -1):
            coeffs[k] = coeffs[k - 1] - nodes[i] * coeffs[k]
        coeffs[0] = -nodes[i] * coeffs[0] + dd[i]
    return coeffs


@lru_cache(maxsize=None)
def disc_multivariate(n: int) -> tuple[Monomial, ...]:
    """Full expansion of the generic degree-``n`` monic discriminant.

    Evaluation at every point of the grid ``{0..n}**n`` followed by
    per-variable Newton interpolation; valid because every variable has
    degree at most ``n``.
    """
    if not 2 <= n <= 5:
        raise InvalidInput("disc_multivariate supports 2 <= n <= 5")
    nodes = list(range(n + 1))
    grid = {}
    for point in itertools.product(nodes, repeat=n):
        grid[point] = _disc_from_full([*point, 1])
    # Interpolate one axis at a time; after axis k the index in that slot is an exponent.
    for axis in range(n):
        new = {}
        for rest in itertools.product(range(n + 1), repeat=n - 1):
            idx = [rest[:axis] + (t,) + rest[axis:] for t in nodes]
            coeffs = _newton_to_monomial([grid[i] for i in idx], nodes)
            for e, c in zip(range(n + 1), coeffs):
                new[idx[e]] = c
        grid = new
    out = []
    for exps, c in sorted(grid.items()):
        if c:
            if c.denominator != 1:
                raise InternalInconsistency(f"non-integral coefficient {c} at {exps}")
            out.append(Monomial(exps, int(c)))
    return tuple(out)


def evaluate_monomials(monomials: Sequence[Monomial], coeffs: Sequence[int]) -> int:
    total = 0
    for exps, c in monomials:
        term = c
        for x, e in zip(coeffs, exps):
            if e:
                term *= x**e
        total += term
    return total


def disc_fast(coeffs: Sequence[int]) -> int:
    """Discriminant of the monic polynomial with lower coefficients ``coeffs``.

    Hot-loop entry point: evaluates the memoized expansion for degree <= 5,
    falls back to Bareiss elimination above.
    """
    n = len(coeffs)
    if 2 <= n <= 5:
        return evaluate_monomials(disc_multivariate(n), coeffs)
    return _disc_from_full([*coeffs, 1])


class LeadingTerm(NamedTuple):
    degree: int
    coefficient: int


def specialized_disc_leading(n: int, fixed: Sequence[int], c0, c1) -> LeadingTerm:
    """Leading term in ``A0`` of ``Disc(X^n + ... + a_2 X^2 + (c0*A0 + c1) X + A0)``.

    ``fixed`` lists ``a_2 .. a_{n-1}``. The result is checked against the
    expected closed form: degree n with coefficient
    ``(-1)**((n-1)(n-2)/2) * (n-1)**(n-1) * c0**n`` when ``c0 != 0``, else degree
    ``n - 1`` with coefficient ``(-1)**(n(n-1)/2) * n**n``.
    """
    if n < 3:
        raise InvalidInput("n must be at least 3")
    fixed = list(fixed)
    if len(fixed) != n - 2:
        raise InvalidInput(f"expected {n - 2} fixed coefficients a_2..a_(n-1)")
    c0, c1 = Fraction(c0), Fraction(c1)
    nodes = list(range(n + 2))
    values = [_disc_from_full([Fraction(t), c0 * t + c1, *map(Fraction, fixed), Fraction(1)]) for t in nodes]
    coeffs = trim(_newton_to_monomial(values, nodes))
    degree = len(coeffs) - 1
    lead = coeffs[-1]
    if c0 != 0:
        expected = LeadingTerm(n, (-1) ** ((n - 1) * (n - 2) // 2) * (n - 1) ** (n - 1) * c0**n)
    else:
        expected = LeadingTerm(n - 1, (-1) ** (n * (n - 1) // 2) * n**n)
    if (degree, lead) != tuple(expected):
        raise InternalInconsistency(f"leading term {lead}*A0^{degree} != expected {expected}")
    return LeadingTerm(degree, int(lead) if lead.denominator == 1 else lead)

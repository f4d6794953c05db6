import itertools
import random

import pytest
import sympy
from hypothesis import given, strategies as st

from disc_census import irreducibility as ir
from disc_census.errors import BudgetExceeded
from disc_census.poly_core import MonicIntPoly, poly_divmod_monic

X = sympy.symbols("X")


def sympy_irreducible(f: MonicIntPoly) -> bool:
    return sympy.Poly(f.full[::-1], X).is_irreducible


def check_witness(f, verdict):
    if verdict.status == ir.REDUCIBLE:
        g = [*verdict.witness, 1]
        assert 2 <= len(g) <= f.degree
        assert not poly_divmod_monic(f.full, g)[1]


@pytest.mark.parametrize("highest, p", [([1, 0, 0, 0, -2], 2), ([1, 0, 4, -2], 2), ([1, 0, -1], None), ([1, 3, 3, 12], 3), ([1, 2, 2, 4], None)])
def test_eisenstein(highest, p):
    assert ir.eisenstein_test(MonicIntPoly.from_highest(highest)) == p


def test_examples():
    assert ir.is_irreducible(MonicIntPoly.from_highest([1, 0, -1, -1])).irreducible
    v = ir.is_irreducible(MonicIntPoly.from_highest([1, 0, 0, 0, 1, 1]))
    assert v.status == ir.REDUCIBLE and v.witness == (1, 1)  # X^2 + X + 1
    for n in range(2, 7):
        v = ir.is_irreducible(MonicIntPoly((0,) * n))
        assert v.status == ir.REDUCIBLE and v.witness == (0,)


def test_quartic_product_of_quadratics_is_found():
    f = MonicIntPoly.from_highest([1, 0, 3, 0, 1])  # no rational root, (X^2+aX+b)(X^2-aX+b)?
    v = ir.is_irreducible(f)
    assert v.irreducible == sympy_irreducible(f)
    g = MonicIntPoly.from_highest([1, 0, 0, 0, 4])  # X^4 + 4 = (X^2+2X+2)(X^2-2X+2)
    v = ir.is_irreducible(g)
    assert v.status == ir.REDUCIBLE
    check_witness(g, v)


def test_repeated_factor_witness():
    f = MonicIntPoly.from_highest([1, 0, 2, 0, 1])  # (X^2 + 1)^2
    v = ir.is_irreducible(f)
    assert v.status == ir.REDUCIBLE and v.witness == (1, 0)


@given(st.lists(st.integers(-20, 20), min_size=1, max_size=6))
def test_agrees_with_sympy(coeffs):
    f = MonicIntPoly(tuple(coeffs))
    v = ir.is_irreducible(f)
    assert v.irreducible == sympy_irreducible(f)
    check_witness(f, v)


@given(st.lists(st.integers(-6, 6), min_size=1, max_size=3), st.lists(st.integers(-6, 6), min_size=1, max_size=3))
def test_products_are_reducible(a, b):
    from disc_census.poly_core import poly_mul
    f = MonicIntPoly(tuple(poly_mul([*a, 1], [*b, 1])[:-1]))
    v = ir.is_irreducible(f)
    assert v.status == ir.REDUCIBLE
    check_witness(f, v)


def test_quintic_routes_agree():
    """Degree-pattern screening and the bare factor search agree on every quintic with |a_i| <= 2."""
    for coeffs in itertools.product(range(-2, 3), repeat=5):
        f = MonicIntPoly(coeffs)
        v = ir.is_irreducible(f)
        check_witness(f, v)
        if ir._rational_root(f) is not None or ir.disc_fast(coeffs) == 0:
            continue
        assert (ir.find_factor(f) is None) == v.irreducible


def test_irreducible_mod_p_implies_irreducible():
    rng = random.Random(1)
    from disc_census import ffpoly
    for _ in range(300):
        f = MonicIntPoly(tuple(rng.randint(-9, 9) for _ in range(4)))
        for p in (3, 5, 7):
            if ffpoly.factor_degrees([c % p for c in f.full], p) == [4] and ir.disc_fast(f.coeffs) % p:
                assert ir.is_irreducible(f).irreducible


def test_degree_pattern():
    f = MonicIntPoly.from_highest([1, 0, 0, 0, -2])
    assert ir.degree_pattern(f) == {0, 4}
    g = MonicIntPoly.from_highest([1, 0, 0, 0, 4])
    assert 2 in ir.degree_pattern(g)


def test_find_factor_budget():
    f = MonicIntPoly.from_highest([1, 0, 0, 0, 0, 0, 720720])
    with pytest.raises(BudgetExceeded):
        ir.find_factor(f, [3], node_budget=10)


def test_mignotte_bound():
    assert ir.mignotte_bound(MonicIntPoly.from_highest([1, 0, 0, 0, 4])) == 16 * 9


def test_count_irreducible_small():
    assert ir.count_irreducible(2, 2) == 5  # frozen from sympy over the 9 quadratics
    assert ir.count_irreducible(3, 1) == 0
    assert ir.count_irreducible(3, 10) == 5756  # sympy oracle


def test_count_irreducible_budget_and_workers():
    with pytest.raises(BudgetExceeded):
        ir.count_irreducible(4, 100)
    assert ir.count_irreducible(3, 6, workers=2) == ir.count_irreducible(3, 6)


def test_irreducible_ratios_reports_both_normalizations():
    res = ir.irreducible_ratios(2, 2)
    assert res.count == 5
    assert res.lattice_ratio == sympy.Rational(5, 9)
    assert res.main_term_ratio == sympy.Rational(5, 16)

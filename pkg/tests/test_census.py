import itertools
import math
from collections import Counter

import pytest
import sympy
from hypothesis import given, strategies as st

from disc_census import census, intarith
from disc_census.census import HeightBox
from disc_census.errors import BudgetExceeded, InvalidInput
from disc_census.irreducibility import count_irreducible
from disc_census.poly_core import discriminant, MonicIntPoly, trinomial_delta

# T_3(3, u) by signed u, computed with sympy's is_irreducible, discriminant and factorint
T3_3 = [(-139, 2), (-87, 4), (-83, 6), (-67, 2), (-59, 8), (-51, 2), (-43, 2), (-38, 2), (-35, 2), (-31, 8),
        (-29, 4), (-26, 2), (-23, 8), (-19, 2), (-11, 8), (-3, 2), (-2, 2), (1, 4), (37, 2)]


def test_height_box():
    box = HeightBox.strict(2, 2)
    assert box.volume == 9 and box.mode == "strict-symmetric"
    assert list(box)[:3] == [(-1, -1), (0, -1), (1, -1)]
    assert [c.intervals[-1] for c in box.chunks()] == [(-1, -1), (0, 0), (1, 1)]
    with pytest.raises(InvalidInput):
        HeightBox(((1, 0),))


def test_class_table_examples():
    assert census.count_by_squarefree_class(3, 1).counts == {}
    table = census.count_by_squarefree_class(3, 3)
    assert table.rows() == T3_3
    assert table.total == count_irreducible(3, 3)
    assert table.kind == census.SIGNED


def test_class_table_bound_h10():
    table = census.count_by_squarefree_class(3, 10)
    assert max(table.counts.values()) <= 10**2.5


@pytest.mark.parametrize("n, H", [(2, 8), (3, 6), (4, 3)])
def test_partition_and_key_coherence(n, H):
    by_disc = census.count_by_squarefree_class(n, H, census.DISC_VALUE)
    signed = census.count_by_squarefree_class(n, H, census.SIGNED)
    absolute = census.count_by_squarefree_class(n, H, census.ABSOLUTE)
    assert by_disc.total == signed.total == absolute.total == count_irreducible(n, H)
    mapped = Counter()
    for d, c in by_disc.counts.items():
        mapped[intarith.squarefree_part(d).u] += c
    assert dict(mapped) == signed.counts
    folded = Counter()
    for u, c in signed.counts.items():
        folded[abs(u)] += c
    assert dict(folded) == absolute.counts


def test_unknown_key():
    with pytest.raises(InvalidInput):
        census.count_by_squarefree_class(3, 3, "bogus")


def test_budget():
    with pytest.raises(BudgetExceeded):
        census.count_by_squarefree_class(3, 3, budget=100)


def test_closed_box_census():
    box = HeightBox(((1, 3), (0, 0), (-2, 2)))
    table = census.count_by_squarefree_class(3, box)
    expected = Counter()
    for a0, a1, a2 in itertools.product(range(1, 4), [0], range(-2, 3)):
        f = MonicIntPoly((a0, a1, a2))
        if sympy.Poly(f.full[::-1], sympy.Symbol("X")).is_irreducible:
            expected[intarith.squarefree_part(discriminant(f)).u] += 1
    assert table.counts == dict(expected)


def test_class_table_after_dedekind_memo():
    census._HISTOGRAMS.clear()
    fresh = census.count_by_squarefree_class(3, 7).counts
    census._HISTOGRAMS.clear()
    census.field_histogram(3, HeightBox.strict(3, 7))
    assert census.count_by_squarefree_class(3, 7).counts == fresh


def test_workers_do_not_change_results():
    census._HISTOGRAMS.clear()
    one = census.count_by_squarefree_class(3, 5, workers=1).counts
    census._HISTOGRAMS.clear()
    four = census.count_by_squarefree_class(3, 5, workers=4).counts
    assert one == four


def test_max_class_multiplicity():
    # argmax values cross-checked against a sympy enumeration
    assert tuple(census.max_class_multiplicity(3, 5)) == (-3, 24, True)
    assert tuple(census.max_class_multiplicity(4, 5)) == (-3, 77, True)
    assert census.max_class_multiplicity(3, 1) is None


def test_theorem_condition_flag_n3():
    flagged = [u for u in range(-50, 51) if u and intarith.is_squarefree(u) and census.theorem_condition_fails(u, 3)]
    assert flagged == [-3, -1, 1, 3]


def test_small_disc_mass():
    assert census.small_disc_mass(3, 10, 0) == (0, 0)
    assert tuple(census.small_disc_mass(3, 10, 100)) == (162, 760)  # round_two oracle
    big = census.small_disc_mass(3, 10, 10**9)
    assert big.certified + big.unresolved == 5756


def test_certified_groups_dominated_by_class():
    hist = census.field_histogram(3, HeightBox.strict(3, 8))
    classes = census.count_by_squarefree_class(3, 8).counts
    by_delta = Counter()
    for (d, ok), c in hist.items():
        if ok:
            by_delta[d] += c
    for d, c in by_delta.items():
        assert c <= classes[intarith.squarefree_part(d).u]


def test_distinct_disc_count():
    assert census.distinct_disc_count(3, 2) == 3
    assert census.distinct_disc_count(3, 2, census.SIGNED) <= census.distinct_disc_count(3, 2)


def test_eisenstein_family_n5_h120():
    pairs = census.eisenstein_trinomial_family(5, 120)
    assert all(a % 2 == 0 and 60 <= a <= 120 and b % 4 == 2 and b <= 8 for a, b in pairs)
    res = census.trinomial_family_distinctness(5, 120)
    assert res.size == len(pairs) == 62 and res.distinct == res.size and res.all_eisenstein


def test_trinomial_count_examples():
    res = census.trinomial_count(5, 50, 50, 1, 1, 1)
    assert (res.total, res.max_per_a) == (3, 2)  # brute force with math.isqrt
    assert res.max_per_a <= 4
    # Delta_3(a, b) = 4a^3 + 27b^2 > 0 on a positive box, so s = -1 never matches
    assert census.trinomial_count(3, 5, 5, 1, 1, -1).total == 0
    s = intarith.squarefree_part(trinomial_delta(5, 2, 3)).u
    assert census.trinomial_count(5, 2, 2, 1, 2, s).per_a[2] >= 1


def test_trinomial_closed_form_matches_resultant_for_n_1_mod_4():
    for s in (1, 5, -1, 2):
        closed = census.trinomial_count(5, 8, 8, -4, -4, s)
        rerun = census.trinomial_count(5, 8, 8, -4, -4, s, source="resultant")
        assert closed == rerun


def test_trinomial_count_validation():
    with pytest.raises(InvalidInput):
        census.trinomial_count(5, 1, 1, 1, 1, 0)


def test_pell_examples():
    assert census.pell_count(1, 3125, 256, 10**4) == (2, None)
    assert census.pell_count(-5, 3125, -256, 10**4) == (0, 0)
    with pytest.raises(InvalidInput):
        census.pell_count(1, 3125, 0, 10)


def brute_pell(s, M, rhs, bound):
    return sum(1 for r in range(-bound, bound + 1) for c in range(-bound, bound + 1) if s * r * r - M * c * c == rhs)


@given(st.sampled_from([1, 2, 3, 5, -1, -2, -5]), st.integers(1, 40), st.integers(-300, 300).filter(bool))
def test_pell_matches_brute_force(s, M, rhs):
    got = census.pell_count(s, M, rhs, 40)
    assert got.count == brute_pell(s, M, rhs, 40)
    if intarith.is_perfect_square(s * M)[0] or intarith.is_perfect_square(-s * M)[0]:
        assert got.divisor_count == got.count


def test_pell_gaussian_branch_with_solutions():
    # s = -1, M = -4: -r^2 + 4c^2 = rhs factors over Z; s = 1, M = -1: r^2 + c^2 = 25
    assert census.pell_count(1, -1, 25, 10) == (12, 12)
    assert census.pell_count(-5, 5, -25 * 13, 100).divisor_count == brute_pell(-5, 5, -25 * 13, 100)


def test_two_squares():
    for N in range(0, 400):
        want = {(x, y) for x in range(-20, 21) for y in range(-20, 21) if x * x + y * y == N}
        assert census._two_squares(N) == want


def test_quadratic_field_count():
    res = census.quadratic_field_count(5, 30, 30, 1, 1)
    assert (res.classes, res.rational_class) == (918, True)  # sympy oracle
    assert res.classes >= 30 / 16
    assert census.quadratic_field_count(5, 0, 0, 3, 4).classes <= 1


def test_quadratic_fields_below():
    res = census.quadratic_fields_below(5, 10**6)
    want = set()
    for a in range(1, 10):
        for b in range(1, 10):
            v = trinomial_delta(5, a, b)
            if v <= 10**6 and sympy.Poly([1, 0, 0, 0, a, b], sympy.Symbol("X")).is_irreducible:
                want.add(intarith.squarefree_part(v).u)
    assert res.classes == len(want - {1}) == 13
    assert res.reference == pytest.approx(10**1.5)


def test_lemma_l3_counts():
    res = census.lemma_l3_solution_count(3, [0], 1, 1, -1, 0, 50)
    assert res.count == 5 and res.count <= 8 * math.sqrt(50)
    assert census.lemma_l3_solution_count(3, [0], -1, 0, 1, 0, 50).count == 1
    # on the line a_1 = 1, Disc(X^3 + X + a_0) = -4 - 27 a_0^2 < 0, so u = 1 has no solutions
    assert census.lemma_l3_solution_count(3, [0], 1, 0, 1, -1, 50).count == 0
    with pytest.raises(InvalidInput):
        census.lemma_l3_solution_count(3, [0], 1, 0, 0, 1, 5)
    with pytest.raises(InvalidInput):
        census.lemma_l3_solution_count(3, [0], 4, 1, 0, 1, 5)


def test_class_max_trend():
    rows, slope = census.class_max_trend(3, [4, 6, 8])
    assert [r.H for r in rows] == [4, 6, 8]
    assert all(r.count <= r.limit for r in rows)
    assert 0 < slope < 3

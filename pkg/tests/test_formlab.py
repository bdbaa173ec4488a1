import random
from itertools import product

import pytest

from qpdense.errors import (
    BudgetExceededError,
    CharacteristicDividesDegreeError,
)
from qpdense.forms import IntegralForm, LinearSplitForm
from qpdense.formlab import (
    binary_linear_split,
    cofactor_of_linear_mod_p,
    is_anisotropic_mod_p,
    linear_factors_mod_p,
    order_of_form,
    projective_point_count,
    projective_points,
    smooth_point_mod_p,
)
from qpdense.parser import parse_form


def test_projective_points_normalized_and_counted():
    for n, p in ((2, 3), (3, 3), (2, 7)):
        pts = list(projective_points(n, p))
        assert len(pts) == projective_point_count(n, p)
        assert len(set(pts)) == len(pts)
        for pt in pts:
            lead = next(c for c in pt if c)
            assert lead == 1
    # deterministic lexicographic order
    assert list(projective_points(2, 3))[:2] == [(0, 1), (1, 0)]


def test_order_examples(cyclo3):
    F = IntegralForm(3, 4, {(4, 0, 0): 1})
    assert order_of_form(F) == 1
    assert order_of_form(cyclo3) == 2
    comp = parse_form("x^6 + 2*y^6 + 6*y^4*z^2 + 6*y^2*z^4 + 2*z^6")
    assert order_of_form(comp) == 3


def test_order_char_guard(cyclo3):
    with pytest.raises(CharacteristicDividesDegreeError):
        order_of_form(cyclo3, 2)
    assert order_of_form(cyclo3, 5) == 2


def test_order_power_invariance():
    rng = random.Random(8)
    checked = 0
    while checked < 20:
        n = rng.choice((2, 3))
        terms = {}
        from itertools import combinations_with_replacement

        for combo in combinations_with_replacement(range(n), 3):
            exps = [0] * n
            for i in combo:
                exps[i] += 1
            c = rng.randint(-6, 6)
            if c:
                terms[tuple(exps)] = c
        if not terms:
            continue
        F = IntegralForm(n, 3, terms)
        if order_of_form(F) != n:
            continue
        checked += 1
        for r in (2, 3):
            assert order_of_form(F**r) == n


def test_order_matches_mod_p_window(quintic, sextic, cyclo3):
    from qpdense.modular import primes_upto

    for F in (quintic, sextic, cyclo3):
        oq = order_of_form(F)
        for p in primes_upto(100):
            if p <= 10 or F.degree % p == 0:
                continue
            assert order_of_form(F, p) == oq


def test_low_order_forms_are_singular_mod_p():
    # a cone: all partials share a projective zero for small p
    F = parse_form("(x + y)^3")
    assert order_of_form(F) == 1
    for p in (5, 7, 11):
        partials = [F.partial_derivative(i) for i in range(2)]
        common = [
            pt
            for pt in projective_points(2, p)
            if all(g.evaluate(pt, p) == 0 for g in partials)
        ]
        assert common


def test_anisotropy_examples(cyclo3):
    rep = is_anisotropic_mod_p(cyclo3, 2)
    assert rep.anisotropic and rep.points_checked == 3
    rep = is_anisotropic_mod_p(parse_form("x^3 + x^2*y + y^3"), 2)
    assert rep.anisotropic
    rep = is_anisotropic_mod_p(cyclo3, 7)
    assert not rep.anisotropic
    assert cyclo3.evaluate(rep.isotropic_witness, 7) == 0


def test_anisotropy_budget():
    F = parse_form("x^2 + y^2 + z^2 + w^2")
    with pytest.raises(BudgetExceededError):
        is_anisotropic_mod_p(F, 101, budget=10**6)


def test_anisotropic_random_spot_check(cyclo3):
    rng = random.Random(9)
    for p in (2, 5, 11):
        rep = is_anisotropic_mod_p(cyclo3, p)
        assert rep.anisotropic
        for _ in range(1000):
            pt = (rng.randrange(p), rng.randrange(p))
            if pt == (0, 0):
                continue
            assert cyclo3.evaluate(pt, p) != 0


def test_linear_factors_examples(cyclo3):
    F = parse_form("y*(x^2 + x*y + y^2)")
    got = linear_factors_mod_p(F, 5)
    assert ((0, 1), 1) in got
    assert linear_factors_mod_p(cyclo3, 2) == []
    F3 = IntegralForm(2, 3, {(3, 0): 1})
    assert linear_factors_mod_p(F3, 5) == [((1, 0), 3)]


def test_linear_factors_remultiply():
    rng = random.Random(10)
    for _ in range(25):
        p = rng.choice((2, 3, 5, 7))
        n = rng.choice((2, 3))
        from itertools import combinations_with_replacement

        terms = {}
        for combo in combinations_with_replacement(range(n), 3):
            exps = [0] * n
            for i in combo:
                exps[i] += 1
            c = rng.randint(0, p - 1)
            if c:
                terms[tuple(exps)] = c
        if not terms:
            continue
        F = IntegralForm(n, 3, terms)
        for coeffs, mult in linear_factors_mod_p(F, p):
            cof = dict(F.reduce_terms_mod(p))
            quotient = cofactor_of_linear_mod_p(F, coeffs, p)
            assert quotient is not None
            # re-multiply: L^mult * remaining == F mod p
            from qpdense.forms import linear_form, _dict_mul, _dict_pow

            lf = linear_form(n, coeffs)
            current = dict(F.reduce_terms_mod(p))
            rem = current
            for _ in range(mult):
                from qpdense.formlab import _divide_by_linear_mod_p

                pivot = next(i for i, c in enumerate(coeffs) if c)
                rem = _divide_by_linear_mod_p(rem, coeffs, pivot, p, n)
            back = _dict_mul(_dict_pow(lf.terms, mult, n), rem)
            back = {e: c % p for e, c in back.items() if c % p}
            assert back == F.reduce_terms_mod(p)


def test_smooth_point_examples(quintic):
    report = smooth_point_mod_p(parse_form("x*y"), 5)
    assert report is not None
    assert report.point == (0, 1)
    assert report.nonvanishing_partial_index == 0

    report = smooth_point_mod_p(quintic, 5)
    assert report is not None
    assert quintic.evaluate(report.point, 5) == 0

    assert smooth_point_mod_p(parse_form("(x + y)^2"), 3) is None


def test_smooth_point_is_first_in_lex_order(quintic):
    report = smooth_point_mod_p(quintic, 5)
    assert report.point == (0, 0, 1)


def test_binary_linear_split_examples():
    F = parse_form("x^3*y^2*(x + 2*y)")
    split = binary_linear_split(F)
    assert split is not None
    assert split.content == 1
    assert sorted(split.factors) == [((0, 1), 2), ((1, 0), 3), ((1, 2), 1)]
    assert split.expand() == F

    assert binary_linear_split(parse_form("x^2 + y^2")) is None


def test_binary_linear_split_nonmonic_and_content():
    F = parse_form("6*(2*x + 3*y)^2*(x - y)")
    split = binary_linear_split(F)
    assert split is not None
    assert split.expand() == F
    assert ((2, 3), 2) in split.factors
    assert ((1, -1), 1) in split.factors


def test_binary_linear_split_g2_roundtrip():
    from qpdense.families import finitely_dense_g

    g2 = finitely_dense_g(2, 2, 3, 5, 7)
    F = g2.expand()
    split = binary_linear_split(F)
    assert split is not None
    assert sorted(split.factors) == sorted(g2.factors)
    assert split.expand() == F

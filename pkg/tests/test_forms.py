import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qpdense.errors import (
    DimensionMismatchError,
    QpdenseError,
    ZeroFormError,
)
from qpdense.forms import (
    IntegralForm,
    LinearSplitForm,
    SplitPolynomial,
    form_from_unipoly_binary,
    linear_form,
)
from qpdense.parser import parse_form
from qpdense.unipoly import UniPoly


def test_invariants_enforced():
    with pytest.raises(QpdenseError):
        IntegralForm(2, 2, {(1, 0): 1})  # degree mismatch
    with pytest.raises(DimensionMismatchError):
        IntegralForm(2, 2, {(2, 0, 0): 1})
    f = IntegralForm(2, 2, {(2, 0): 1, (0, 2): 0})
    assert f.terms == {(2, 0): 1}  # zero coefficients dropped


def test_equality_is_term_equality():
    a = IntegralForm(2, 2, {(2, 0): 1, (1, 1): -1})
    b = IntegralForm(2, 2, {(1, 1): -1, (2, 0): 1})
    assert a == b and hash(a) == hash(b)
    assert a != IntegralForm(2, 2, {(2, 0): 1})


def test_evaluate_examples(quintic, cyclo3):
    assert cyclo3.evaluate((1, 1)) == 1
    assert quintic.evaluate((2, 1, 0)) == 35
    assert quintic.evaluate((3, 1, 0)) == 247
    assert quintic.evaluate((3, 1, 0), 13) == 0


def test_evaluate_dimension_error(cyclo3):
    with pytest.raises(DimensionMismatchError):
        cyclo3.evaluate((1, 2, 3))


def test_partial_derivative(cyclo3):
    d0 = IntegralForm(1, 3, {(3,): 1}).partial_derivative(0)
    assert d0 == IntegralForm(1, 2, {(2,): 3})
    d1 = cyclo3.partial_derivative(1)
    assert d1 == IntegralForm(2, 1, {(1, 0): -1, (0, 1): 2})
    three_var = IntegralForm(3, 2, {(2, 0, 0): 1, (1, 1, 0): -1, (0, 2, 0): 1})
    assert three_var.partial_derivative(2).is_zero


def test_specialize_examples(quintic, sextic, cyclo3):
    assert quintic.specialize(0, (1, 0)) == UniPoly((1, 1, 0, 0, 0, 1))
    assert sextic.specialize(2, (1, 0)) == UniPoly((1, 0, 0, 0, 1, 0, 1))
    assert cyclo3.specialize(0, (0,)) == UniPoly((0, 0, 1))


def test_content_and_primitive():
    f = IntegralForm(2, 2, {(2, 0): 2, (0, 2): 4})
    c, prim = f.content_and_primitive()
    assert c == 2 and prim == IntegralForm(2, 2, {(2, 0): 1, (0, 2): 2})
    g = parse_form("x^2 - x*y + y^2")
    assert g.content_and_primitive() == (1, g)
    h = IntegralForm(1, 3, {(3,): 6})
    assert h.content_and_primitive()[0] == 6
    with pytest.raises(ZeroFormError):
        IntegralForm(1, 2, {}).content_and_primitive()


@settings(max_examples=60, deadline=None)
@given(
    st.integers(1, 3),
    st.integers(1, 4),
    st.integers(-4, 4),
    st.data(),
)
def test_homogeneity_scaling(n_vars, degree, lam, data):
    from itertools import combinations_with_replacement

    terms = {}
    for combo in combinations_with_replacement(range(n_vars), degree):
        exps = [0] * n_vars
        for i in combo:
            exps[i] += 1
        c = data.draw(st.integers(-5, 5))
        if c:
            terms[tuple(exps)] = c
    if not terms:
        return
    F = IntegralForm(n_vars, degree, terms)
    point = tuple(data.draw(st.integers(-5, 5)) for _ in range(n_vars))
    scaled = tuple(lam * x for x in point)
    assert F.evaluate(scaled) == lam**degree * F.evaluate(point)


def test_form_arithmetic():
    x = linear_form(2, (1, 0))
    y = linear_form(2, (0, 1))
    assert (x + y) ** 2 == parse_form("x^2 + 2*x*y + y^2")
    assert x * y == parse_form("x*y")
    assert (x * -3).terms == {(1, 0): -3}


def test_binary_homogenization():
    f = UniPoly((1, 1, 0, 0, 0, 1))
    F = form_from_unipoly_binary(f, 5)
    assert F == parse_form("x^5 + x*y^4 + y^5")


def test_linear_split_form_roundtrip():
    split = LinearSplitForm(1, [((1, 0), 3), ((0, 1), 2), ((1, 2), 1)], 2)
    assert split.degree == 6
    assert split.expand() == parse_form("x^3*y^2*(x + 2*y)")
    assert split.evaluate((1, 1)) == 3
    assert split.evaluate((1, 1), 2) == 1


def test_linear_split_form_normalization_required():
    with pytest.raises(QpdenseError):
        LinearSplitForm(1, [((2, 4), 1)], 2)  # not primitive
    with pytest.raises(QpdenseError):
        LinearSplitForm(1, [((-1, 2), 1)], 2)  # bad sign


def test_split_polynomial():
    sp = SplitPolynomial(2, [((1, 0), 2), ((1, -3), 1)])
    assert sp.degree == 3
    assert sp.expand() == UniPoly((0, 0, -6, 2))
    assert sp.evaluate(4) == 2 * 16 * 1
    assert sp.evaluate(4, 7) == 32 % 7

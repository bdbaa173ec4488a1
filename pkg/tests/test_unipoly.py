import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qpdense.errors import (
    BothZeroError,
    ConstantPolynomialError,
    ZeroFormError,
)
from qpdense.unipoly import (
    NEG_INFINITY,
    UniPoly,
    cyclotomic_poly,
    discriminant,
    div_exact,
    factor_mod_p,
    gcd_z,
    gf_roots,
    pseudo_divmod,
    resultant,
    roots_mod_p,
    squarefree_decomposition,
    sylvester_resultant,
)

small_polys = st.lists(st.integers(-30, 30), min_size=1, max_size=7).map(UniPoly)


def test_zero_degree_marker():
    assert UniPoly(()).degree == NEG_INFINITY
    assert UniPoly((0, 0)).degree == NEG_INFINITY
    assert UniPoly((5,)).degree == 0


def test_arithmetic_basics():
    f = UniPoly((1, 2, 3))
    g = UniPoly((0, 1))
    assert (f + g).coeffs == (1, 3, 3)
    assert (f - f).is_zero
    assert (f * g).coeffs == (0, 1, 2, 3)
    assert (g**4).coeffs == (0, 0, 0, 0, 1)
    assert f.evaluate(2) == 1 + 4 + 12
    assert f.derivative().coeffs == (2, 6)


def test_modulus_normalization():
    f = UniPoly((7, -1, 5), 5)
    assert f.coeffs == (2, 4)
    assert f.degree == 1


def test_pseudo_divmod_identity():
    rng = random.Random(0)
    for _ in range(200):
        a = UniPoly([rng.randint(-9, 9) for _ in range(rng.randint(1, 7))])
        b = UniPoly([rng.randint(-9, 9) for _ in range(rng.randint(1, 5))])
        if b.is_zero or a.degree < b.degree:
            continue
        q, r = pseudo_divmod(a, b)
        scale = b.leading ** (int(a.degree) - int(b.degree) + 1)
        assert a * scale == q * b + r
        assert r.is_zero or r.degree < b.degree


def test_div_exact():
    a = UniPoly((1, 1)) * UniPoly((2, 3)) * UniPoly((-1, 0, 1))
    assert div_exact(a, UniPoly((2, 3))) == UniPoly((1, 1)) * UniPoly((-1, 0, 1))


def test_gcd_z():
    f = UniPoly((1, 1)) ** 2 * UniPoly((-3, 1))
    g = UniPoly((1, 1)) * UniPoly((5, 1))
    assert gcd_z(f, g) == UniPoly((1, 1))


# -- resultant / discriminant ------------------------------------------------


def test_resultant_examples():
    assert resultant(UniPoly((-3, 1)), UniPoly((-1, 1))) == 2
    assert resultant(UniPoly((1, 0, 1)), UniPoly((0, 1))) == 1
    # Res(t^2+t+1, x0 + x1 t) at (x0, x1) = (1, 1)
    assert resultant(UniPoly((1, 1, 1)), UniPoly((1, 1))) == 1


def test_resultant_errors():
    with pytest.raises(BothZeroError):
        resultant(UniPoly(()), UniPoly(()))
    assert resultant(UniPoly(()), UniPoly((1, 2))) == 0


@settings(max_examples=150, deadline=None)
@given(small_polys, small_polys)
def test_resultant_matches_sylvester(f, g):
    if f.is_zero and g.is_zero:
        return
    assert resultant(f, g) == sylvester_resultant(f, g)


def test_resultant_swap_sign():
    f = UniPoly((1, 2, 0, 1))
    g = UniPoly((4, -1, 1))
    assert resultant(f, g) == (-1) ** (3 * 2) * resultant(g, f)
    h = UniPoly((1, 1, 1))
    assert resultant(h, f) == (-1) ** (3 * 2) * resultant(f, h)


def test_discriminant_quadratic():
    # x^2 + bx + c -> b^2 - 4c
    rng = random.Random(1)
    for _ in range(50):
        b, c = rng.randint(-20, 20), rng.randint(-20, 20)
        assert discriminant(UniPoly((c, b, 1))) == b * b - 4 * c
    assert discriminant(UniPoly((-1, 0, 1))) == 4


def test_discriminant_paper_values():
    assert discriminant(UniPoly((1, 1, 0, 0, 0, 1))) == 3381
    assert discriminant(UniPoly((1, 0, 0, 0, 1, 0, 1))) == -(2**6) * 31**2


def test_discriminant_split_product_formula():
    # D = lc^(2n-2) * prod (r_i - r_j)^2 on split polynomials
    rng = random.Random(2)
    for _ in range(30):
        roots = rng.sample(range(-10, 10), rng.randint(2, 5))
        lc = rng.choice((1, 2, 3))
        f = UniPoly((lc,))
        for r in roots:
            f = f * UniPoly((-r, 1))
        n = len(roots)
        prod = 1
        for i in range(n):
            for j in range(i + 1, n):
                prod *= (roots[i] - roots[j]) ** 2
        assert discriminant(f) == lc ** (2 * n - 2) * prod


def test_discriminant_constant_error():
    with pytest.raises(ConstantPolynomialError):
        discriminant(UniPoly((3,)))


# -- squarefree decomposition -------------------------------------------------


def test_squarefree_examples():
    f = UniPoly((0, 0, 1)) * UniPoly((1, 1))
    assert squarefree_decomposition(f) == [(UniPoly((1, 1)), 1), (UniPoly((0, 1)), 2)]
    big = (
        UniPoly((0, 1)) ** 6 * UniPoly((1, 1)) ** 10 * UniPoly((2, 1)) ** 15
    )
    assert squarefree_decomposition(big) == [
        (UniPoly((0, 1)), 6),
        (UniPoly((1, 1)), 10),
        (UniPoly((2, 1)), 15),
    ]
    f = UniPoly((1, 1, 0, 0, 0, 1))
    assert squarefree_decomposition(f) == [(f, 1)]


def test_squarefree_zero_error():
    with pytest.raises(ZeroFormError):
        squarefree_decomposition(UniPoly(()))


@settings(max_examples=80, deadline=None)
@given(
    st.lists(
        st.tuples(st.integers(-6, 6), st.integers(1, 3)),
        min_size=1,
        max_size=3,
        unique_by=lambda t: t[0],
    ),
    st.integers(1, 4),
)
def test_discriminant_zero_iff_repeated(roots, content):
    f = UniPoly((content,))
    for r, e in roots:
        f = f * UniPoly((-r, 1)) ** e
    decomp = squarefree_decomposition(f)
    repeated = any(e >= 2 for _, e in decomp)
    if f.degree >= 1:
        assert (discriminant(f) == 0) == repeated


def test_resultant_zero_iff_common_factor():
    rng = random.Random(3)
    for _ in range(40):
        common = UniPoly((rng.randint(-5, 5), 1))
        f = common * UniPoly([rng.randint(-5, 5) for _ in range(3)] + [1])
        g = common * UniPoly([rng.randint(-5, 5) for _ in range(2)] + [1])
        assert resultant(f, g) == 0
        assert gcd_z(f, g).degree >= 1


# -- factorization over F_p ----------------------------------------------------


def _remultiply(unit, factors, p):
    acc = UniPoly((unit,), p)
    for g, m in factors:
        acc = acc * g**m
    return acc


def test_factor_examples():
    unit, factors = factor_mod_p(UniPoly((-1, 0, 1)), 5)
    assert unit == 1
    assert factors == [(UniPoly((1, 1), 5), 1), (UniPoly((4, 1), 5), 1)]

    # three simple linear factors mod 5
    unit, factors = factor_mod_p(UniPoly((6, 1, 1, 1)), 5)
    assert all(g.degree == 1 and m == 1 for g, m in factors)
    assert len(factors) == 3

    unit, factors = factor_mod_p(UniPoly((1, 0, 1)), 3)
    assert factors == [(UniPoly((1, 0, 1), 3), 1)]


def test_factor_remultiplies():
    rng = random.Random(4)
    for _ in range(60):
        p = rng.choice((2, 3, 5, 7, 13))
        f = UniPoly([rng.randint(0, p - 1) for _ in range(rng.randint(2, 8))])
        if f.reduce(p).is_zero:
            continue
        unit, factors = factor_mod_p(f, p)
        assert _remultiply(unit, factors, p) == f.reduce(p)


def test_factor_char_p_multiplicities():
    # x^p - x = prod over all residues; (x+1)^4 mod 2 needs the p-th root path
    unit, factors = factor_mod_p(UniPoly((1, 1)) ** 4, 2)
    assert factors == [(UniPoly((1, 1), 2), 4)]


def test_roots_examples():
    assert (2, 1) in roots_mod_p(UniPoly((1, 1, 0, 0, 0, 1)), 5)
    assert (2, 1) in roots_mod_p(UniPoly((1, 0, 0, 17, 1)), 17)
    assert roots_mod_p(UniPoly((0, 0, 1)), 7) == [(0, 2)]


def test_roots_multiplicity_is_exact():
    rng = random.Random(5)
    for _ in range(40):
        p = rng.choice((3, 5, 7, 11))
        roots = rng.sample(range(p), rng.randint(1, 3))
        f = UniPoly((1,))
        mults = {}
        for r in roots:
            e = rng.randint(1, 3)
            mults[r] = e
            f = f * UniPoly((-r, 1)) ** e
        got = dict(roots_mod_p(f, p))
        assert got == mults


def test_gf_roots_matches_roots_mod_p():
    rng = random.Random(6)
    for _ in range(50):
        p = rng.choice((2, 3, 5, 101, 997))
        coeffs = [rng.randint(-40, 40) for _ in range(rng.randint(2, 7))]
        f = UniPoly(coeffs)
        if f.reduce(p).is_zero:
            continue
        fast = gf_roots(coeffs, p)
        slow = sorted(r for r, _ in roots_mod_p(f, p))
        assert fast == slow


def test_factor_seed_determinism():
    f = UniPoly((3, 1, 4, 1, 5, 9, 2, 6, 1))
    assert factor_mod_p(f, 101, seed=0) == factor_mod_p(f, 101, seed=0)


def test_cyclotomic_poly():
    assert cyclotomic_poly(2) == UniPoly((1, 1))
    assert cyclotomic_poly(3) == UniPoly((1, 1, 1))
    assert cyclotomic_poly(5) == UniPoly((1, 1, 1, 1, 1))

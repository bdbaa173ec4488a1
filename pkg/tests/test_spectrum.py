import pytest

from qpdense.errors import QpdenseError
from qpdense.forms import LinearSplitForm, SplitPolynomial
from qpdense.modular import valuation_int
from qpdense.spectrum import (
    ValuationSpectrum,
    derive_spectrum,
    obstruction_from_spectrum,
    spectrum_difference_contains_one,
    univariate_nonvanishing_obstruction,
)
from qpdense.unipoly import UniPoly

PATTERN = SplitPolynomial(1, [((1, 0), 6), ((1, 1), 10), ((1, 2), 15)])


def test_pattern_spectrum_q7():
    spec = derive_spectrum(PATTERN, 7)
    assert spec.exhaustive_depth == 1
    assert spec.components == ((0, ()), (6, (6,)), (10, (10,)), (15, (15,)))
    assert spec.finite_values == (0,)
    assert obstruction_from_spectrum(spec, PATTERN) is not None


def test_pattern_spectrum_q2_has_difference_one():
    # nu_2(f(6)) = 51 and nu_2(f(31)) = 50: no obstruction at q = 2
    assert valuation_int(PATTERN.evaluate(6), 2) == 51
    assert valuation_int(PATTERN.evaluate(31), 2) == 50
    spec = derive_spectrum(PATTERN, 2)
    assert spec.contains(51) and spec.contains(50)
    assert spectrum_difference_contains_one(spec)
    assert obstruction_from_spectrum(spec, PATTERN) is None


def test_simple_factors_no_obstruction():
    f = SplitPolynomial(1, [((1, 0), 1), ((1, -1), 1)])
    spec = derive_spectrum(f, 5)
    assert spec.components == ((0, ()), (1, (1,)))
    assert obstruction_from_spectrum(spec, f) is None


def test_spectrum_matches_brute_force():
    for q, depth in ((3, 6), (5, 5), (7, 4), (2, 10)):
        spec = derive_spectrum(PATTERN, q)
        qK = q**depth
        brute = set()
        for x in range(qK):
            v = PATTERN.evaluate(x)
            if v:
                brute.add(valuation_int(v, q))
        for v in brute:
            assert spec.contains(v), (q, v)
        # every resolved spectrum value below the enumeration depth shows up
        for base, strides in spec.components:
            if not strides and base < depth:
                assert base in brute


def test_binary_spectrum_primitive_and_scaling():
    # x^2 * y^3: primitive spectrum {2a} U {3b}; scaling stride 5
    split = LinearSplitForm(1, [((1, 0), 2), ((0, 1), 3)], 2)
    spec = derive_spectrum(split, 7)
    assert spec.homogeneity_stride == 5
    assert (0, ()) in spec.components  # both coordinates units
    vals = set()
    for x in range(1, 50):
        for y in range(1, 50):
            if x % 7 == 0 and y % 7 == 0:
                continue
            vals.add(valuation_int(split.evaluate((x, y)), 7))
    for v in vals:
        assert spec.contains(v, with_scaling=False)
    # difference set contains 1 (2*2 - 3 = 1)
    assert spectrum_difference_contains_one(spec)


def test_g2_spectra():
    from qpdense.families import finitely_dense_g

    g2 = finitely_dense_g(2, 2, 3, 5, 7)
    spec = derive_spectrum(g2, 101)
    assert {s for _, strides in spec.components for s in strides} <= {15, 21, 35}
    assert obstruction_from_spectrum(spec, g2) is not None
    # q = 19: ord_19(2) = 18 exceeds every exponent gap, still clean
    spec19 = derive_spectrum(g2, 19)
    assert obstruction_from_spectrum(spec19, g2) is not None
    # q = 17: 2^8 = 1 mod 17 makes factor pairs collapse; mixed classes
    # produce consecutive valuations (e.g. 36 = 21 + 15 and 35), so the
    # difference set contains 1 and no certificate exists
    spec17 = derive_spectrum(g2, 17)
    assert spec17.exhaustive_depth == 2
    assert obstruction_from_spectrum(spec17, g2) is None


def test_g2_spectrum_17_matches_brute_force():
    from qpdense.families import finitely_dense_g

    g2 = finitely_dense_g(2, 2, 3, 5, 7)
    spec = derive_spectrum(g2, 17)
    brute = set()
    for x in range(17**2):
        for y in range(17**2):
            if x % 17 == 0 and y % 17 == 0:
                continue
            v = g2.evaluate((x, y))
            if v:
                brute.add(valuation_int(v, 17))
    for v in brute:
        assert spec.contains(v, with_scaling=False), v
    # the mixed classes realize the consecutive pair 50, 51
    assert 50 in brute and 51 in brute
    assert 35 not in brute


def test_gn_separable_spectrum():
    from qpdense.families import finitely_dense_g

    g3 = finitely_dense_g(3, 2, 3, 5, 7)
    spec = derive_spectrum(g3, 19)
    assert spec.homogeneity_stride == 0  # folded into the strides
    assert obstruction_from_spectrum(spec, g3) is not None
    # brute check on a small grid
    vals = set()
    for x in range(19):
        for y in range(19):
            for z in range(1, 19):
                v = g3.evaluate((x, y, z))
                if v:
                    vals.add(valuation_int(v, 19))
    for v in vals:
        assert spec.contains(v)


def test_spectrum_rejects_content_divisor():
    f = SplitPolynomial(5, [((1, 0), 2)])
    with pytest.raises(QpdenseError):
        derive_spectrum(f, 5)


def test_semigroup_membership_edges():
    spec = ValuationSpectrum(7, ((0, ()), (6, (6,)), (10, (10,))), 0, 1)
    assert spec.contains(0) and spec.contains(12) and spec.contains(36)
    assert not spec.contains(1)
    assert not spec.contains(8)
    # components are separate branches: 16 = 6 + 10 is not reachable
    assert not spec.contains(16)
    assert not spec.contains(-6)


def test_stride_gcd_reasoning():
    # strides 6, 10, 15: pairwise gcds 2, 3, 5 never allow a difference of 1
    spec = ValuationSpectrum(
        11, ((0, ()), (6, (6,)), (10, (10,)), (15, (15,))), 0, 1
    )
    assert not spectrum_difference_contains_one(spec)
    # but strides 2, 3 do: 3 - 2 = 1
    spec2 = ValuationSpectrum(11, ((2, (2,)), (3, (3,))), 0, 1)
    assert spectrum_difference_contains_one(spec2)


def test_univariate_nonvanishing():
    cert = univariate_nonvanishing_obstruction(UniPoly((1, 0, 1)), 3)
    assert cert is not None and cert.values == (1, 2, 2)
    assert univariate_nonvanishing_obstruction(UniPoly((0, 1)), 3) is None
    cert = univariate_nonvanishing_obstruction(UniPoly((1, 1, 1)), 2)
    assert cert is not None and cert.values == (1, 1)

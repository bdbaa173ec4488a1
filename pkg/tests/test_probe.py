from qpdense.forms import SplitPolynomial
from qpdense.parser import parse_form
from qpdense.probe import quotient_probe, valuation_census


def test_product_form_full_coverage():
    F = parse_form("x*y")
    report = quotient_probe(F, 5, unit_depth=1, window=1, budget=5000)
    assert report.coverage == 1.0
    assert report.has_valuation(1) and report.has_valuation(-1)


def test_anisotropic_form_even_valuations_only(cyclo3):
    report = quotient_probe(cyclo3, 5, unit_depth=1, window=2, budget=20000)
    assert all(v % 2 == 0 for v, _ in report.reachable)
    assert not report.has_valuation(1)


def test_witnesses_reproduce_classes():
    F = parse_form("x*y")
    report = quotient_probe(F, 3, unit_depth=2, window=1, budget=3000)
    from qpdense.modular import inv_mod, valuation_int

    pj = 9
    for (d, u), (wx, wy) in report.witnesses.items():
        vx = F.evaluate(wx)
        vy = F.evaluate(wy)
        nx, ny = valuation_int(vx, 3), valuation_int(vy, 3)
        assert nx - ny == d
        ux = (vx // 3**nx) % pj
        uy = (vy // 3**ny) % pj
        assert ux * inv_mod(uy, pj) % pj == u


def test_determinism():
    F = parse_form("x^3 + 2*y^3")
    a = quotient_probe(F, 7, unit_depth=2, window=2, budget=4000, seed=5)
    b = quotient_probe(F, 7, unit_depth=2, window=2, budget=4000, seed=5)
    assert a.reachable == b.reachable
    assert a.witnesses == b.witnesses
    c = quotient_probe(F, 7, unit_depth=2, window=2, budget=4000, seed=6)
    assert c.budget_used == a.budget_used


def test_census_example_spec():
    F = parse_form("x*y")
    census, exhaustive = valuation_census(F, 3, 3)
    assert exhaustive
    assert sorted(census) == [0, 1, 2, 3, 4]


def test_census_even_for_norm_form(cyclo3):
    census, exhaustive = valuation_census(cyclo3, 5, 3)
    assert exhaustive
    assert all(v % 2 == 0 for v in census)


def test_census_composite_multiples_of_three():
    F = parse_form("x^6 + 2*y^6 + 6*y^4*z^2 + 6*y^2*z^4 + 2*z^6")
    census, exhaustive = valuation_census(F, 7, 2)
    assert exhaustive
    assert all(v % 3 == 0 for v in census)


def test_census_sampling_fallback():
    F = parse_form("x*y")
    census, exhaustive = valuation_census(F, 3, 8, budget=2000)
    assert not exhaustive
    assert census


def test_census_agrees_with_spectrum():
    split = SplitPolynomial(1, [((1, 0), 6), ((1, 1), 10), ((1, 2), 15)])
    from qpdense.spectrum import derive_spectrum

    for q in (5, 7):
        spec = derive_spectrum(split, q)
        census, exhaustive = valuation_census(split, q, 4)
        assert exhaustive
        for v in census:
            assert spec.contains(v)


def test_probe_never_contradicts_not_dense_battery(cyclo3):
    # anisotropy forbids odd valuations entirely, at any budget
    for budget in (500, 5000, 20000):
        rep = quotient_probe(cyclo3, 2, unit_depth=1, window=3, budget=budget)
        assert not rep.has_valuation(1) and not rep.has_valuation(-1)

from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from relsing.arcs import (FAILS, HOLDS, INDETERMINATE, Arc, TruncatedSeries, Valuation,
                          compose_poly_arc, valuation, valuation_criterion_test)
from relsing.errors import RingMismatch
from relsing.poly import PolyRing, Polynomial, parse_polynomial

XYZT = PolyRing(("x", "y", "z", "t"), reserved=())
XYT = PolyRing(("x", "y", "t"), reserved=())
S = PolyRing(("s",), reserved=())


def P(text, ring=XYZT):
    return parse_polynomial(text, ring)


def arc(*texts, trunc=50):
    return Arc.from_polynomials([P(t, S) for t in texts], trunc)


class TestSeries:
    def test_drops_terms_beyond_truncation(self):
        ts = TruncatedSeries({1: 2, 7: 1}, 5)
        assert ts.coeffs == {1: 2}

    def test_product_truncates(self):
        a = TruncatedSeries({1: 1, 2: 1}, 4)
        assert (a * a).coeffs == {2: 1, 3: 2}

    def test_negative_exponent(self):
        with pytest.raises(ValueError):
            TruncatedSeries({-1: 1}, 5)


class TestValuation:
    def test_exact(self):
        assert valuation(TruncatedSeries({2: 1, 5: 3}, 50)) == Valuation(2)

    def test_empty_is_lower_bound(self):
        v = valuation(TruncatedSeries({}, 50))
        assert v == Valuation(50, exact=False) and str(v) == ">=50"


class TestCompose:
    def test_square_along_parabola(self):
        g = arc("s", "-s^2", "0", "0")
        assert compose_poly_arc(P("x^2"), g).coeffs == {2: 1}

    def test_cancellation_is_lower_bound(self):
        g = arc("s", "-s^2", "0", "0")
        assert valuation(compose_poly_arc(P("4*x^2 + 4*y"), g)) == Valuation(50, False)

    def test_constant(self):
        g = arc("s", "s^3", "0", "s")
        assert compose_poly_arc(P("7/3"), g).coeffs == {0: Fraction(7, 3)}

    def test_arity_mismatch(self):
        with pytest.raises(RingMismatch):
            compose_poly_arc(P("x", XYT), arc("s", "s", "s", "s"))

    def test_arc_must_pass_through_origin(self):
        with pytest.raises(ValueError):
            arc("1 + s", "s")

    def test_parameter_derivative_along_axis(self):
        a = arc("s", "0", "0")
        assert valuation(compose_poly_arc(P("x^5", XYT), a)) == Valuation(5)


class TestCriterion:
    def test_quintic_cusp_axis(self, corpus):
        doc = corpus("example_3_2")
        D = doc.deformation("F")
        res = valuation_criterion_test(D.dt(), D.relative_jacobian(doc.variety("V")),
                                       doc.arc("alpha"))
        assert (res.h_value, res.inf) == (Valuation(5), Valuation(5))
        assert (res.strict, res.weak) == (FAILS, HOLDS)

    def test_surface_family_witness(self, corpus):
        doc = corpus("example_3_1")
        D = doc.deformation("F")
        res = valuation_criterion_test(D.dt(), D.relative_jacobian(doc.variety("V")),
                                       doc.arc("gamma"))
        assert res.h_value == Valuation(2)
        assert [str(v) for v in res.values] == [">=50", ">=50", "3", ">=50"]
        assert res.weak == FAILS and res.strict == FAILS

    def test_exact_h_against_vanishing_generators(self):
        g = arc("s", "0", "0", "0")
        res = valuation_criterion_test(P("x^2"), [P("y"), P("z")], g)
        assert (res.strict, res.weak) == (FAILS, FAILS)

    def test_zero_h_holds_when_inf_is_exact(self):
        g = arc("s", "s", "0", "s")
        res = valuation_criterion_test(XYZT.zero(), [P("x^3"), P("y*t")], g)
        assert (res.strict, res.weak) == (HOLDS, HOLDS)

    def test_indeterminate_names_generators(self):
        g = arc("s", "0", "0", "0")
        res = valuation_criterion_test(P("y"), [P("z"), P("x"), P("t")], g)
        assert res.inf == Valuation(1)
        res = valuation_criterion_test(P("y"), [P("z"), P("t")], g)
        assert res.strict == res.weak == INDETERMINATE
        assert res.undecided == (1, 2)

    def test_needs_generators(self):
        with pytest.raises(ValueError):
            valuation_criterion_test(P("x"), [], arc("s", "0", "0", "0"))


exps = st.tuples(st.integers(0, 3), st.integers(0, 3), st.integers(0, 3), st.integers(0, 2))
polys = st.dictionaries(exps, st.integers(-4, 4), max_size=5).map(lambda d: Polynomial(XYZT, d))
series = st.dictionaries(st.integers(1, 6), st.integers(-3, 3), max_size=3)


def make_arc(comps, trunc):
    return Arc([TruncatedSeries(c, trunc) for c in comps], trunc)


@settings(max_examples=120, deadline=None)
@given(polys, polys, st.tuples(series, series, series, series), st.integers(8, 30))
def test_composition_is_a_ring_morphism(p, q, comps, trunc):
    g = make_arc(comps, trunc)
    cp, cq = compose_poly_arc(p, g), compose_poly_arc(q, g)
    assert compose_poly_arc(p + q, g) == cp + cq
    assert compose_poly_arc(p * q, g) == cp * cq
    vp, vq = valuation(cp), valuation(cq)
    vpq = valuation(compose_poly_arc(p * q, g))
    if vp.exact and vq.exact and vp.order + vq.order < trunc:
        assert vpq == Valuation(vp.order + vq.order)


@settings(max_examples=120, deadline=None)
@given(polys, st.tuples(series, series, series, series), st.integers(6, 20), st.integers(1, 20))
def test_raising_truncation_keeps_exact_valuations(p, comps, trunc, extra):
    low = valuation(compose_poly_arc(p, make_arc(comps, trunc)))
    high = valuation(compose_poly_arc(p, make_arc(comps, trunc + extra)))
    if low.exact:
        assert high == low
    else:
        assert high.order >= low.order

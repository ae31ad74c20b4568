from fractions import Fraction

import pytest

from milnor.algebra import MilnorAlgebra
from milnor.groebner import groebner_basis
from milnor.hilbert import (
    EngineInconsistency,
    WindowBound,
    ct,
    fit_hilbert_polynomial,
    hilbert_data,
    hilbert_function,
    hilbert_polynomial,
    hilbert_series,
    hilbert_series_from_resolution,
    smooth_series,
    stability_threshold,
)
from milnor.polyring import Ring, jacobian
from milnor.resolution import minimal_resolution
from milnor.series import format_poly
from milnor.zoo import gen

D7 = "x^6*z + y^7 + x^5*y*w + x^4*y^3"
QUARTIC = "x^4 - x*y*w^2 + z*w^3"


def _alg(R, text):
    return MilnorAlgebra(R(text))


def test_hilbert_function_xyzw(R4):
    gb = groebner_basis(jacobian(R4("x*y*z*w")))
    assert [hilbert_function(gb, k) for k in range(4)] == [1, 4, 10, 16]


def test_hilbert_function_d7_head(R4):
    gb = groebner_basis(jacobian(R4(D7)))
    assert [hilbert_function(gb, k) for k in range(6)] == [1, 4, 10, 20, 35, 56]


def test_smooth_function(R4):
    f = R4("x^4 + y^4 + z^4 + w^4 + x*y*z*w")
    gb = groebner_basis(jacobian(f))
    expected = smooth_series(4, 4)
    for k in range(0, 12):
        assert hilbert_function(gb, k) == expected.coefficient(k)
    assert hilbert_function(gb, 3) == expected.coefficient(3) == 16


def test_free_numerator_shape(R4):
    # free with exponents (1,2,3), degree 7
    hs = hilbert_series_from_resolution(minimal_resolution(jacobian(R4(D7))))
    assert hs.numerator == {0: 1, 6: -4, 7: 1, 8: 1, 9: 1}


def test_series_matches_staircase(R4):
    gb = groebner_basis(jacobian(R4(D7)))
    hs = hilbert_series_from_resolution(minimal_resolution(jacobian(R4(D7))))
    assert hs == hilbert_series(gb)
    assert hs.expand(0, 12) == [hilbert_function(gb, k) for k in range(13)]


def test_unit_ideal_series(R4):
    hs = hilbert_series_from_resolution(minimal_resolution([R4("1")]))
    assert hs.numerator == {}
    assert hs.expand(0, 5) == [0] * 6


@pytest.mark.parametrize("text, poly", [
    ("x*y*z*w", "6*k-2"),
    ("(x^3+y^3)*(z^3+w^3)", "17*k-33"),
    (D7, "25*k-70"),
    (QUARTIC, "5*k+1"),
])
def test_polynomials(R4, text, poly):
    alg = _alg(R4, text)
    assert format_poly(alg.polynomial) == poly
    assert fit_hilbert_polynomial(alg.series) == alg.polynomial


def test_delta4_polynomial():
    f = gen("delta4")
    hs = hilbert_series(groebner_basis(jacobian(f)))
    assert hilbert_polynomial(hs) == [26, -21, 8]
    assert format_poly(hilbert_polynomial(hs)) == "8*k^2-21*k+26"


@pytest.mark.parametrize("text, st", [
    (D7, 6),
    ("x^7*z + y^8 + x^6*y*w + x^4*y^4", 7),
    (QUARTIC, 3),
    ("x*y*z*w", 1),
])
def test_stability_threshold(R4, text, st):
    alg = _alg(R4, text)
    assert alg.st == st
    assert stability_threshold(alg.series) == st


def test_mdr_values(R4):
    assert _alg(R4, "x^3 + y^3 + z^3").mdr == 0
    assert _alg(R4, D7).mdr == 1
    assert MilnorAlgebra(gen("delta4_section")).mdr == 2
    assert _alg(R4, "x*y*z*w").mdr == 1


def test_ct_values(R4):
    assert _alg(R4, D7).ct == 6
    assert _alg(R4, "x*y*z*w").ct == 3
    smooth = _alg(R4, "x^4 + y^4 + z^4 + w^4")
    assert smooth.mdr is None
    assert isinstance(smooth.ct, WindowBound)
    assert str(smooth.ct) == f">= {smooth.window}"


def test_ct_cross_check_detects_disagreement():
    smooth = smooth_series(4, 4)
    with pytest.raises(EngineInconsistency):
        ct(1, 4, smooth.coefficient, 4, 10)


def test_hilbert_data_invariants(R4):
    for text in (D7, QUARTIC, "x^2*z + y^2*w", "x*y*z*w"):
        hd = hilbert_data(R4(text))
        poly = hd.polynomial
        for k, v in hd.function.items():
            if k >= hd.st:
                assert v == sum(c * k ** i for i, c in enumerate(poly))
        if hd.st > 0:
            k = hd.st - 1
            assert hd.function[k] != sum(c * k ** i for i, c in enumerate(poly))
        assert len(poly) <= 2
        js = hd.to_json()
        assert js["st"] == hd.st
        assert [Fraction(c) for c in js["polynomial_coefficients"]] == poly


def test_free_and_nearly_free_st_formula(R4):
    assert _alg(R4, D7).st == 7 + 3 - 4
    assert _alg(R4, QUARTIC).st == 4 + 2 - 3


def test_window_override(R4):
    alg = MilnorAlgebra(R4(D7), window=20)
    assert max(alg.hilbert_data.function) == 20
    assert alg.hilbert_data.function[20] == 25 * 20 - 70


def test_order_does_not_change_invariants():
    a = MilnorAlgebra(Ring("x,y,z,w", "grlex")(QUARTIC))
    b = MilnorAlgebra(Ring("x,y,z,w")(QUARTIC))
    assert a.series == b.series and a.st == b.st and a.mdr == b.mdr


def test_algebra_rejects_bad_input(R4):
    with pytest.raises(ValueError):
        MilnorAlgebra(R4("0"))
    with pytest.raises(ValueError):
        MilnorAlgebra(R4("x^2 + y"))
    with pytest.raises(TypeError):
        MilnorAlgebra("x*y")

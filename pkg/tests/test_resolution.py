import pytest

from milnor.groebner import Ideal, groebner_basis
from milnor.hilbert import hilbert_function
from milnor.polyring import Ring, jacobian
from milnor.resolution import (
    BettiTable,
    GradedFreeModule,
    ModuleMap,
    NonMinimalResolutionError,
    Resolution,
    betti,
    check_composition_zero,
    check_exactness,
    dual_complex,
    homology_dim,
    minimal_resolution,
    minimalize,
    projective_dimension,
    regularity,
)


def _res(R, text):
    return minimal_resolution(jacobian(R(text)))


def test_resolution_wrong_shape(R4):
    res = _res(R4, "x^2*z + y^3 + x*y*w")
    assert str(res) == "0 -> S(-5) -> S(-3)^3 + S(-4) -> S(-2)^4 -> S"


def test_resolution_too_long(R4):
    res = _res(R4, "x^2*z + y^2*w")
    assert str(res) == "0 -> S(-6) -> S(-5)^4 -> S(-3)^2 + S(-4)^4 -> S(-2)^4 -> S"


def test_resolution_times_x0_non_pappus(R4):
    g = "x*y*z*(x+y)*(x+3*z)*(y+z)*(x+2*y+z)*(x+2*y+3*z)*(2*x+3*y+3*z)"
    res = _res(R4, f"w*{g}")
    assert str(res) == "0 -> S(-16) -> S(-10) + S(-14)^3 -> S(-9)^4 -> S"


def test_resolution_is_a_complex_and_exact(R4):
    for text in ("x^4 - x*y*w^2 + z*w^3", "x^2*z + y^2*w", "x*y*z*w"):
        res = _res(R4, text)
        assert res.minimal
        assert check_composition_zero(res)
        assert check_exactness(res) == []
        for d in res.maps:
            assert d.is_homogeneous()
            assert not d.has_unit_entry()


def test_pd_and_regularity(R4):
    D7 = _res(R4, "x^6*z + y^7 + x^5*y*w + x^4*y^3")
    assert projective_dimension(D7) == 2
    assert regularity(D7) == 7 + 3 - 3
    nf = _res(R4, "x^4 - x*y*w^2 + z*w^3")
    assert projective_dimension(nf) == 3
    lin = minimal_resolution([R4("x")])
    assert projective_dimension(lin) == 1 and regularity(lin) == 0


def test_unit_and_zero_ideals(R4):
    assert minimal_resolution([R4("1")]).modules[0].rank == 0
    res = minimal_resolution(Ideal([], R4))
    assert str(res) == "0 -> S"


def test_minimalize_cancels_units(R2):
    # S(-1) --(1)--> S(-1) -> S, then x: a non-minimal presentation of S/(x)
    F0 = GradedFreeModule([0])
    F1 = GradedFreeModule([1, 1])
    F2 = GradedFreeModule([1])
    d1 = ModuleMap(R2, F1, F0, [[R2("x"), R2("x")]])
    d2 = ModuleMap(R2, F2, F1, [[R2("1")], [R2("-1")]])
    res = Resolution(R2, [F0, F1, F2], [d1, d2])
    assert not res.minimal
    with pytest.raises(NonMinimalResolutionError):
        betti(res)
    small = minimalize(res)
    assert small.minimal
    assert str(small) == "0 -> S(-1) -> S"


def test_betti_serialization(R4):
    B = betti(_res(R4, "x^4 - x*y*w^2 + z*w^3"))
    assert B.to_json() == {"0": {"0": 1}, "1": {"3": 4}, "2": {"4": 2, "5": 2}, "3": {"6": 1}}
    assert BettiTable.from_json(B.to_json()) == B
    text = B.text()
    assert text.splitlines()[1].split() == ["total:", "1", "4", "4", "1"]


def test_betti_order_independent(R4):
    grlex = Ring("x,y,z,w", "grlex")
    for text in ("x^4 - x*y*w^2 + z*w^3", "x^2*z + y^3 + x*y*w", "x^4*z + y^5 + x^3*y*w"):
        a = betti(_res(R4, text))
        b = betti(_res(grlex, text))
        assert a == b


def test_dual_of_free_surface_is_short(R4):
    res = _res(R4, "x*y*z*w")
    cx = dual_complex(res, -4)
    for m in range(-8, 4):
        assert homology_dim(cx, 3, m) == 0
        assert homology_dim(cx, 4, m) == 0


def test_ext0_vanishes(R4):
    res = minimal_resolution([R4("x^2"), R4("y*z")])
    cx = dual_complex(res, 0)
    assert all(homology_dim(cx, 0, m) == 0 for m in range(-6, 6))


def test_ext3_of_nearly_free_quartic(R4):
    # Ext^3(M, S(-4))_m equals [S/(a)]_{m + d + d3 - 4} with (a) = (x^2, xz, y, w)
    res = _res(R4, "x^4 - x*y*w^2 + z*w^3")
    cx = dual_complex(res, -4)
    gb = groebner_basis([R4("x^2"), R4("x*z"), R4("y"), R4("w")])
    shift = 4 + 2 - 4
    for m in range(-4, 6):
        want = hilbert_function(gb, m + shift)
        assert homology_dim(cx, 3, m) == want
        assert homology_dim(cx, 3, m, method="linear") == want


def test_homology_methods_agree(R4):
    res = _res(R4, "x^2*z + y^2*w")
    cx = dual_complex(res, -4)
    for k in range(5):
        for m in range(-7, 2):
            assert homology_dim(cx, k, m) == homology_dim(cx, k, m, method="linear")

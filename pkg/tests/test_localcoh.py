import pytest

from milnor.algebra import MilnorAlgebra
from milnor.groebner import groebner_basis
from milnor.hilbert import hilbert_function
from milnor.localcoh import (
    GradedDims,
    defect,
    finite_series,
    hilbert_consistency,
    local_cohomology_dims,
    n_module_dims,
)
from milnor.polyring import Ring
from milnor.series import eval_poly
from milnor.zoo import cone, curve, gen, transversal_pair

QUARTIC = "x^4 - x*y*w^2 + z*w^3"
D7 = "x^6*z + y^7 + x^5*y*w + x^4*y^3"


def test_n_module_cubic_cubic():
    g, h = transversal_pair("cubic_cubic")
    f = g * h
    dims = n_module_dims(f)
    assert dims.nonzero() == {3: 2, 4: 8, 5: 16, 6: 23, 7: 26, 8: 22, 9: 12, 10: 3}
    assert dims.series_text() == "2t^3+8t^4+16t^5+23t^6+26t^7+22t^8+12t^9+3t^10"


@pytest.mark.parametrize("name", ["pappus", "collinear_nodes", "fermat_cubic"])
def test_n_module_cone_vanishes(name):
    assert n_module_dims(cone(curve(name), Ring("x,y,z,w"))).is_zero()


def test_n_module_free_vanishes(R4):
    assert n_module_dims(R4("x*y*z*w")).is_zero()
    assert n_module_dims(R4(D7)).is_zero()


def test_free_h1_vanishes(R4):
    for text in ("x*y*z*w", D7, "(x^3+y^3)*(z^3+w^3)"):
        assert local_cohomology_dims(R4(text), 1).is_zero()


def test_quartic_h1_support(R4):
    f = R4(QUARTIC)
    h1 = local_cohomology_dims(f, 1, window=(-10, 8))
    assert all(h1[k] > 0 for k in range(-10, 3))
    assert all(h1[k] == 0 for k in range(3, 9))
    assert defect(f, 3) == 0
    assert defect(f, -40) == 1


def test_quartic_h1_matches_quotient(R4):
    # dim H^1_k = dim [S/(x^2, xz, y, w)]_{d + d3 - 4 - k}
    f = R4(QUARTIC)
    gb = groebner_basis([R4("x^2"), R4("x*z"), R4("y"), R4("w")])
    h1 = local_cohomology_dims(f, 1, window=(-8, 6))
    for k in range(-8, 7):
        assert h1[k] == hilbert_function(gb, 2 - k)


def test_quartic_is_saturated(R4):
    assert n_module_dims(R4(QUARTIC)).is_zero()


def test_conca_d6_h1_finite():
    f = gen("conca6")
    h1 = local_cohomology_dims(f, 1, window=(-30, 30))
    assert 0 < h1.total()
    assert all(h1[k] == 0 for k in range(-30, -10))


def test_methods_agree(R4):
    f = R4("x^2*z + y^2*w")
    for i in range(4):
        a = local_cohomology_dims(f, i, window=(-4, 6))
        b = local_cohomology_dims(f, i, window=(-4, 6), method="linear")
        assert a == b


def test_h0_two_routes(R4):
    g, h = transversal_pair("quadric_nodal_cubic")
    f = g * h
    alg = MilnorAlgebra(f)
    direct = n_module_dims(alg)
    dual = local_cohomology_dims(alg, 0, window=(direct.lo, direct.hi))
    assert direct == dual and not direct.is_zero()


@pytest.mark.parametrize("text", ["x*y*z*w", D7, QUARTIC, "x^2*z + y^2*w"])
def test_consistency_identity(R4, text):
    rep = hilbert_consistency(R4(text))
    assert rep.ok, rep.first_violation
    assert rep.to_json()["ok"]


def test_free_difference_is_h2(R4):
    alg = MilnorAlgebra(R4(D7))
    lo, hi = alg.lc_window
    h2 = local_cohomology_dims(alg, 2)
    for k in range(max(lo, 0), hi + 1):
        assert alg.series.coefficient(k) - eval_poly(alg.polynomial, k) == h2[k]


def test_window_guard(R4):
    with pytest.raises(ValueError):
        local_cohomology_dims(R4("x*y*z*w"), 1, window=(-500, 500))
    with pytest.raises(ValueError):
        local_cohomology_dims(R4("x*y*z*w"), 4)


def test_graded_dims_behaviour():
    g = GradedDims({1: 2, 3: 0}, 0, 4)
    assert g[1] == 2 and g(9) == 0 and g.total() == 2
    assert g.support() == [1] and g == {1: 2}
    assert g.to_json() == {"0": 0, "1": 2, "2": 0, "3": 0, "4": 0}


def test_finite_series():
    # (1 - t)^2 / (1 - t)^2 = 1; (1 - t^2)^2 / (1 - t)^2 = 1 + 2t + t^2
    assert finite_series({0: 1, 1: -2, 2: 1}, 2) == {0: 1}
    assert finite_series({0: 1, 2: -2, 4: 1}, 2) == {0: 1, 1: 2, 2: 1}
    with pytest.raises(ValueError):
        finite_series({0: 1}, 1)

import pytest

from milnor.algebra import MilnorAlgebra
from milnor.classify import classify_curve, classify_surface
from milnor.groebner import Ideal
from milnor.polyring import Ring
from milnor.series import format_poly
from milnor.zoo import (
    CURVES,
    FAMILIES,
    CorpusEntry,
    cone,
    cone_predict,
    corpus,
    curve,
    curve_data,
    expected_syzygies,
    gen,
    genus_complete_intersection,
    load_manifest,
    q0_experiment,
    recorded_a,
    times_x0,
    times_x0_predict,
    transversal_pair,
    transversality,
    write_manifest,
)


def test_family_polynomials():
    assert str(gen("D", d=7)) == str(Ring("x,y,z,w")("x^6*z + y^7 + x^5*y*w + x^4*y^3"))
    assert str(gen("D'", d=10)) == str(Ring("x,y,z,w")("x^9*z + y^10 + x^8*y*w + x^5*y^5"))
    assert str(gen("D''", d=4)) == "y^4 + x^3*z + x^2*y*w"
    assert gen("delta3") == Ring("a,b,c,d")(
        "b^2*c^2 - 4*a*c^3 - 4*b^3*d + 18*a*b*c*d - 27*a^2*d^2")
    assert gen("conca_ab", a=2, b=3).degree() == 9


def test_delta4_and_section():
    D4 = gen("delta4")
    assert D4.ring.nvars == 5 and D4.degree() == 6 and len(D4.terms) == 16
    sec = gen("delta4_section")
    assert sec.degree() == 6 and list(sec.ring.variables) == ["a", "b", "d", "e"]


def test_parameter_errors():
    with pytest.raises(ValueError):
        gen("D", d=3)
    with pytest.raises(ValueError):
        gen("D'", d=5)
    with pytest.raises(ValueError):
        gen("conca_ab", a=2, b=2)
    with pytest.raises(ValueError):
        gen("D")
    with pytest.raises(KeyError):
        gen("nope")


def test_every_family_builds():
    samples = {"D": {"d": 6}, "D'": {"d": 7}, "D''": {"d": 5}, "conca_ab": {"a": 2, "b": 3},
               "transversal_union": {"pair": "quadric_cubic"}, "cone": {"curve": "pappus"},
               "times_x0": {"curve": "fermat_cubic"}}
    for name in FAMILIES:
        f = gen(name, samples.get(name, {}))
        assert f.homogeneous_degree() is not None


@pytest.mark.parametrize("name", ["D", "D'", "D''"])
def test_recorded_relations_are_syzygies(name):
    d = {"D": 11, "D'": 10, "D''": 6}[name]
    f = gen(name, d=d)
    grad = [f.diff(i) for i in range(4)]
    basis = expected_syzygies(name, d)
    for rel in basis.relations:
        assert sum((c * g for c, g in zip(rel.components, grad)), f.ring.zero()).is_zero()


def test_recorded_relation_d_pp_shape():
    basis = expected_syzygies("D''", 6)
    R = gen("D''", d=6).ring
    assert [str(c) for c in basis.relations[1].components] == ["0", "0", "-y", "x"]
    assert basis.degrees[1] == 1
    assert all(c.ring is R or c.ring == R for c in basis.relations[1].components)


def test_recorded_a_values():
    a3, a4 = recorded_a("D", 11)
    assert str(a3) == "-308*x" and str(a4) == "-30492*w"
    with pytest.raises(ValueError):
        recorded_a("D", 10)


def test_genus():
    assert genus_complete_intersection(2, 3) == 4
    assert genus_complete_intersection(3, 3) == 10
    assert genus_complete_intersection(1, 1) == 0
    assert genus_complete_intersection(2, 2) == 1


def test_transversality():
    g, h = transversal_pair("quadric_cubic")
    assert transversality(g, h)
    R = Ring("x,y,z,w")
    # the plane x = 0 is tangent to x*w + y^2 along the line x = y = 0
    assert not transversality(R("x"), R("x*w + y^2"))


def test_saturation_equals_pair():
    g, h = transversal_pair("quadric_cubic")
    alg = MilnorAlgebra(g * h)
    assert alg.saturation == Ideal([g, h])
    assert format_poly(alg.polynomial) == "6*k-3"
    g, h = transversal_pair("quadric_nodal_cubic")
    alg = MilnorAlgebra(g * h)
    assert alg.saturation != Ideal([g, h])
    assert format_poly(alg.polynomial) == "6*k+1"


@pytest.mark.parametrize("name, poly", [
    ("pappus", "45*k-189"), ("non_pappus", "45*k-190"),
    ("collinear_nodes", "3*k+12"), ("general_nodes", "3*k+11"),
])
def test_cone_formula(name, poly):
    g = curve(name)
    data = curve_data(g)
    pred = cone_predict(data)
    f = cone(g)
    alg = MilnorAlgebra(f)
    assert format_poly(alg.polynomial) == poly
    assert [pred["b"], pred["a"]] == alg.polynomial
    assert pred["st"] == alg.st
    assert not alg.n_module_series


def test_cone_betti_lift():
    g = curve("pappus")
    assert str(MilnorAlgebra(g).resolution) == str(MilnorAlgebra(cone(g)).resolution)


@pytest.mark.parametrize("name, poly", [("pappus", "54*k-261"), ("non_pappus", "54*k-262")])
def test_times_x0_formula(name, poly):
    g = curve(name)
    pred = times_x0_predict(curve_data(g))
    alg = MilnorAlgebra(times_x0(g))
    assert format_poly(alg.polynomial) == poly
    assert [pred["b"], pred["a"]] == alg.polynomial


def test_times_x0_uses_missing_variable():
    g = curve("fermat_cubic")
    assert str(times_x0(g)) == str(Ring("x,y,z,w")("w*(x^3 + y^3 + z^3)"))
    with pytest.raises(ValueError):
        cone(g, Ring("x,y,z,w,v,u"))


def test_curve_catalog_classifies():
    for name in CURVES:
        rep = classify_curve(curve(name))
        assert rep.verdict in ("free", "nearly_free", "neither", "smooth")


def test_q0_experiment_report():
    rep = q0_experiment(2, 3)
    assert rep["label"] == "EXPERIMENT"
    assert rep["transversal"]
    assert set(rep) >= {"computed_st", "conjectured_st", "agrees"}
    with pytest.raises(ValueError):
        q0_experiment(4, 5)


def test_corpus_shape():
    entries = corpus()
    names = [e.name for e in entries]
    assert len(names) == len(set(names))
    assert {e.source for e in entries} <= {"published", "derived"}
    assert "delta4" in names and "D''(5)" in names
    for e in entries:
        assert str(e.build()) == e.polynomial


def test_manifest_round_trip(tmp_path):
    path = tmp_path / "corpus.json"
    write_manifest(path)
    back = load_manifest(path)
    assert [e.to_json() for e in back] == [e.to_json() for e in corpus()]
    assert CorpusEntry.from_json(back[0].to_json()) == back[0]


def test_corpus_expectations_small():
    entries = {e.name: e for e in corpus()}
    rep = classify_surface(entries["D''(5)"].build())
    exp = entries["D''(5)"].expected
    assert rep.verdict == exp["verdict"] and rep.exponents == exp["exponents"]
    assert rep.hilbert.polynomial_text() == exp["polynomial"]

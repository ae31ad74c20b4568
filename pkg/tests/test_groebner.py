import itertools

import pytest

from milnor.groebner import (
    FreeModuleVector,
    Ideal,
    check_groebner,
    contains,
    groebner_basis,
    ideal_equal,
    ideal_quotient,
    intersect,
    krull_dim,
    minimal_generators,
    module_groebner_basis,
    normal_form,
    saturate,
    saturate_wrt_irrelevant,
    syzygy_basis,
)
from milnor.polyring import Ring, jacobian
from milnor.linalg import sparse_rank


def _gens(gb):
    return sorted(str(g) for g in gb.generators)


def test_gb_of_variables(R2):
    gb = groebner_basis([R2("x"), R2("y")])
    assert _gens(gb) == ["x", "y"]


def test_gb_xyzw_jacobian(R4):
    J = jacobian(R4("x*y*z*w"))
    gb = groebner_basis(J)
    assert set(gb.generators) == set(J)
    assert check_groebner(gb)


def test_gb_principal_is_monic(R4):
    gb = groebner_basis([R4("3*x^2 + 6*y*z")])
    assert gb.generators == [R4("x^2 + 2*y*z")]


def test_gb_reduced_and_order_independent_ideal(R4):
    gens = [R4("x^2 - y*z"), R4("x*y - z^2"), R4("y^2 - x*z")]
    gb = groebner_basis(gens)
    assert check_groebner(gb)
    lex = groebner_basis([g.to_ring(Ring("x,y,z,w", "grlex")) for g in gens])
    assert check_groebner(lex)
    for g in gens:
        assert lex.contains(g.to_ring(lex.ring))
    # reduced: no generator's terms divisible by another leading term
    for g in gb.generators:
        others = [h for h in gb.generators if h is not g]
        assert normal_form(g, groebner_basis(others)) == g or len(others) == 0


def test_normal_form_euler(R4):
    f = R4("x^4 - x*y*w^2 + z*w^3")
    gb = groebner_basis(jacobian(f))
    assert normal_form(f, gb).is_zero()
    assert normal_form(R4("0"), gb).is_zero()


def test_normal_form_transversal_union(R4):
    g = R4("x^2+3*y^2+5*z^2+7*w^2")
    h = R4("x^3+y^3+z^3+w^3")
    gb = groebner_basis(jacobian(g * h))
    assert not normal_form(g, gb).is_zero()
    # brute-force linear algebra: g is not in the degree-2 part of J_f, which is zero
    assert all(p.homogeneous_degree() == 4 for p in jacobian(g * h))


def test_syzygies_of_variables(R2):
    syz = syzygy_basis([R2("x"), R2("y")])
    assert len(syz) == 1
    (r,) = syz.relations
    assert list(r.components) in ([R2("y"), R2("-x")], [R2("-y"), R2("x")])
    assert syz.degrees == [1]


def test_syzygies_nearly_free_quartic(R4):
    f = R4("x^4 - x*y*w^2 + z*w^3")
    J = jacobian(f)
    syz = syzygy_basis(J)
    assert syz.degrees == [1, 1, 2, 2]
    for r in syz.relations:
        assert r.dot(J).is_zero()


def test_syzygies_contain_linear_relation(R4):
    d = 10
    f = R4(f"x^{d-1}*z + y^{d} + x^{d-2}*y*w + x^{d-5}*y^5")
    syz = syzygy_basis(jacobian(f))
    first = syz.relations[0]
    assert syz.degrees[0] == 1
    assert list(first.components) in ([R4("0"), R4("0"), R4("-y"), R4("x")],
                                [R4("0"), R4("0"), R4("y"), R4("-x")])


def test_syzygies_contain_koszul(R4):
    f = R4("x^2*z + y^3 + x*y*w")
    J = jacobian(f)
    syz = syzygy_basis(J)
    gb = module_groebner_basis(syz.relations, syz.relations[0].shifts)
    for i, j in itertools.combinations(range(4), 2):
        comps = [R4("0")] * 4
        comps[i], comps[j] = J[j], -J[i]
        assert gb.contains(FreeModuleVector(comps, syz.relations[0].shifts))


def test_minimal_generators_drop_redundant(R4):
    v = [R4("x"), R4("y"), R4("x*y"), R4("x^2 + y^2")]
    gens, degs = minimal_generators(v)
    assert len(gens) == 2 and degs == [1, 1]


def test_quotient_and_saturation(R2):
    assert ideal_equal(ideal_quotient(Ideal([R2("x^2")]), R2("x")), Ideal([R2("x")]))
    I = Ideal([R2("x^2*y"), R2("x*y^2")])
    # I : x^inf = (y) by exponent arithmetic: strip x from every generator
    assert ideal_equal(saturate(I, R2("x")), Ideal([R2("y")]))
    assert ideal_equal(saturate(I, R2("x*y")), Ideal([R2("1")]))


def test_saturation_irrelevant(R4):
    Q = Ideal(R4.gens())
    assert saturate_wrt_irrelevant(Q).is_unit()
    I = Ideal([R4("x^2"), R4("x*y"), R4("x*z"), R4("x*w")])
    assert ideal_equal(saturate_wrt_irrelevant(I), Ideal([R4("x")]))


def test_saturation_of_transversal_union(R4):
    g = R4("x^2+3*y^2+5*z^2+7*w^2")
    h = R4("x^3+y^3+z^3+w^3")
    sat = saturate_wrt_irrelevant(Ideal(jacobian(g * h)))
    assert ideal_equal(sat, Ideal([g, h]))
    h2 = R4("x*y*z+w*(x*y+y*z+x*z)")
    sat2 = saturate_wrt_irrelevant(Ideal(jacobian(g * h2)))
    assert not ideal_equal(sat2, Ideal([g, h2]))


def test_saturated_jacobian(R4):
    J = Ideal(jacobian(R4("x^2*z + y^3 + x*y*w")))
    sat = saturate_wrt_irrelevant(J)
    assert ideal_equal(sat, J)
    # contains I and idempotent
    assert all(sat.contains(p) for p in J.generators)
    assert ideal_equal(saturate_wrt_irrelevant(sat), sat)


def test_intersection(R2):
    I = Ideal([R2("x")])
    J = Ideal([R2("y")])
    assert ideal_equal(intersect(I, J), Ideal([R2("x*y")]))
    K = Ideal([R2("x^2"), R2("y")])
    assert ideal_equal(intersect(K, Ideal([R2("x"), R2("y^2")])),
                       Ideal([R2("x^2"), R2("x*y"), R2("y^2")]))


def test_membership_and_equality(R2):
    assert ideal_equal(Ideal([R2("x"), R2("y")]), Ideal([R2("y"), R2("x")]))
    f = R2("x^3 + y^3")
    assert contains(Ideal([f]), f * f)
    assert not contains(Ideal([f]), R2("x^3"))


def test_krull_dim(R4):
    assert krull_dim(Ideal(R4.gens())) == 0
    assert krull_dim(Ideal([R4("x^2"), R4("x*z"), R4("y"), R4("w")])) == 1
    assert krull_dim(Ideal([R4("x"), R4("y"), R4("-15*z + 2*w"), R4("w")])) == 0
    assert krull_dim(Ideal([R4("1")])) == -1
    assert krull_dim(Ideal([R4("x*y")])) == 3


def test_sparse_rank():
    cols = [{0: 1, 1: 2}, {0: 2, 1: 4}, {2: 1}]
    assert sparse_rank(cols) == 2

"""Named hypersurfaces and families, their recorded invariants, and the
closed-form predictions for cones and for ``x0 * g``.

Surfaces live in ``Q[x, y, z, w]``, plane curves in ``Q[x, y, z]``, the
discriminants in the coordinates ``a, b, c, d(, e)`` of binary forms.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction

from .groebner import FreeModuleVector, SyzygyBasis
from .polyring import Polynomial, Ring
from .series import format_poly

__all__ = [
    "FamilySpec",
    "FAMILIES",
    "SURFACE_RING",
    "CURVE_RING",
    "gen",
    "curve",
    "transversal_pair",
    "cone",
    "times_x0",
    "genus_complete_intersection",
    "cone_predict",
    "times_x0_predict",
    "curve_data",
    "expected_syzygies",
    "q0_experiment",
    "transversality",
    "recorded_a",
    "CurveData",
    "CorpusEntry",
    "corpus",
    "manifest",
    "load_manifest",
    "write_manifest",
]

SURFACE_RING = Ring("x,y,z,w")
CURVE_RING = Ring("x,y,z")
BINARY_CUBIC_RING = Ring("a,b,c,d")
BINARY_QUARTIC_RING = Ring("a,b,c,d,e")
SECTION_RING = Ring("a,b,d,e")

DELTA3 = "b^2*c^2 - 4*a*c^3 - 4*b^3*d + 18*a*b*c*d - 27*a^2*d^2"
DELTA4 = ("b^2*c^2*d^2 - 4*a*c^3*d^2 - 4*b^3*d^3 + 18*a*b*c*d^3 - 27*a^2*d^4"
          " - 4*b^2*c^3*e + 16*a*c^4*e + 18*b^3*c*d*e - 80*a*b*c^2*d*e"
          " - 6*a*b^2*d^2*e + 144*a^2*c*d^2*e - 27*b^4*e^2 + 144*a*b^2*c*e^2"
          " - 128*a^2*c^2*e^2 - 192*a^2*b*d*e^2 + 256*a^3*e^3")

CURVES = {
    "pappus": "x*y*z*(x-y)*(y-z)*(x-y-z)*(2*x+y+z)*(2*x+y-z)*(-2*x+5*y-z)",
    "non_pappus": "x*y*z*(x+y)*(x+3*z)*(y+z)*(x+2*y+z)*(x+2*y+3*z)*(2*x+3*y+3*z)",
    "collinear_nodes": "x*(x^3+y^3+z^3)",
    "general_nodes": "x^2*y^2+y^2*z^2+x^2*z^2-2*x*y*z*(x+y+z)-(2*x*y+3*y*z+4*x*z)^2",
    "fermat_cubic": "x^3+y^3+z^3",
}

PAIRS = {
    "quadric_cubic": ("x^2+3*y^2+5*z^2+7*w^2", "x^3+y^3+z^3+w^3"),
    "quadric_nodal_cubic": ("x^2+3*y^2+5*z^2+7*w^2", "x*y*z+w*(x*y+y*z+x*z)"),
    "cubic_cubic": ("x^3+y^3+z^3+w^3", "x^3+2*y^3+4*z^3+8*w^3"),
    # used only by the stability experiment
    "plane_quadric": ("x+2*y+3*z+5*w", "x^2+3*y^2+5*z^2+7*w^2"),
    "quadric_quadric": ("x^2+3*y^2+5*z^2+7*w^2", "x^2+2*y^2+4*z^2+8*w^2"),
}


def _need(name, d, lo):
    if not isinstance(d, int) or d < lo:
        raise ValueError(f"{name} needs an integer degree d >= {lo}, got {d!r}")


def _family_D(d):
    _need("D", d, 4)
    return f"x^{d-1}*z + y^{d} + x^{d-2}*y*w + x^4*y^{d-4}"


def _family_Dp(d):
    _need("D'", d, 6)
    return f"x^{d-1}*z + y^{d} + x^{d-2}*y*w + x^{d-5}*y^5"


def _family_Dpp(d):
    _need("D''", d, 4)
    return f"x^{d-1}*z + y^{d} + x^{d-2}*y*w"


def _conca_ab(a, b):
    if not (isinstance(a, int) and isinstance(b, int)) or a < 2 or b < 2 or a + b <= 4:
        raise ValueError("conca_ab needs integers a, b > 1 with a + b > 4")
    n = 2 * a + 2 * b - 1
    return f"x^{n} + x^{a+b-1}*y^{a}*z^{b} + y^{2*a-1}*z^{2*b-1}*w"


@dataclass
class FamilySpec:
    """One named entry of the catalog.

    ``build`` maps the keyword parameters to polynomial text in ``ring``;
    ``expected`` maps them to the recorded invariants (may be empty).
    """

    name: str
    params: tuple
    ring: Ring
    build: object
    expected: object = None
    note: str = ""

    def polynomial(self, **params):
        return self.ring(self.build(**params))

    def expectations(self, **params):
        return dict(self.expected(**params)) if self.expected else {}


def _lin(a, b):
    return format_poly([Fraction(b), Fraction(a)])


def _exp_D(d):
    table = {4: [1, 1, 2], 5: [1, 1, 3], 6: [1, 1, 4], 9: [1, 4, 4], 10: [1, 4, 5]}
    if d == 7:
        return {"verdict": "free", "exponents": [1, 2, 3], "polynomial": "25*k-70", "st": 6}
    if d == 8:
        return {"verdict": "free", "exponents": [1, 3, 3], "polynomial": "34*k-122", "st": 7}
    exps = table.get(d, [1, 5, d - 6])
    return {"verdict": "nearly_free", "exponents": exps}


def _exp_Dp(d):
    table = {6: [1, 2, 3], 7: [1, 3, 3], 8: [1, 3, 4], 9: [1, 4, 4]}
    if d in table:
        return {"verdict": "nearly_free", "exponents": table[d]}
    return {"verdict": "free", "exponents": [1, 4, d - 6]}


def _exp_Dpp(d):
    a = d * d - 4 * d + 5
    b = -(d ** 3 - 8 * d * d + 20 * d - 17)
    return {"verdict": "nearly_free", "exponents": [1, 1, d - 2],
            "polynomial": _lin(a, b), "st": 2 * d - 5}


def _const(**values):
    return lambda: values


FAMILIES = {
    "D": FamilySpec("D", ("d",), SURFACE_RING, _family_D, _exp_D),
    "D'": FamilySpec("D'", ("d",), SURFACE_RING, _family_Dp, _exp_Dp),
    "D''": FamilySpec("D''", ("d",), SURFACE_RING, _family_Dpp, _exp_Dpp),
    "xyzw": FamilySpec("xyzw", (), SURFACE_RING, lambda: "x*y*z*w",
                       _const(verdict="free", exponents=[1, 1, 1], polynomial="6*k-2",
                              function_head=[1])),
    "fermat_planes": FamilySpec("fermat_planes", (), SURFACE_RING,
                                lambda: "(x^3+y^3)*(z^3+w^3)",
                                _const(verdict="free", exponents=[1, 2, 2],
                                       polynomial="17*k-33", function_head=[1, 4, 10, 20])),
    "nearly_free_quartic": FamilySpec(
        "nearly_free_quartic", (), SURFACE_RING, lambda: "x^4 - x*y*w^2 + z*w^3",
        _const(verdict="nearly_free", exponents=[1, 1, 2], polynomial="5*k+1", st=3,
               resolution="0 -> S(-6) -> S(-4)^2 + S(-5)^2 -> S(-3)^4 -> S")),
    "long_resolution": FamilySpec(
        "long_resolution", (), SURFACE_RING, lambda: "x^2*z + y^2*w",
        _const(verdict="neither",
               resolution="0 -> S(-6) -> S(-5)^4 -> S(-3)^2 + S(-4)^4 -> S(-2)^4 -> S")),
    "wrong_shape": FamilySpec(
        "wrong_shape", (), SURFACE_RING, lambda: "x^2*z + y^3 + x*y*w",
        _const(verdict="neither", resolution="0 -> S(-5) -> S(-3)^3 + S(-4) -> S(-2)^4 -> S")),
    "delta3": FamilySpec("delta3", (), BINARY_CUBIC_RING, lambda: DELTA3,
                         _const(verdict="free", exponents=[1, 1, 1])),
    "delta4": FamilySpec("delta4", (), BINARY_QUARTIC_RING, lambda: DELTA4,
                         _const(polynomial="8*k^2-21*k+26")),
    "delta4_section": FamilySpec("delta4_section", (), SECTION_RING,
                                 lambda: str(_delta4_section()),
                                 _const(verdict="nearly_free", exponents=[2, 2, 2])),
    "conca6": FamilySpec("conca6", (), SURFACE_RING,
                         lambda: "x^6 + x^4*y^2 + y^5*z + x^2*y^3*w",
                         _const(verdict="nearly_free", exponents=[2, 2, 2], h1_finite=True)),
    "conca7": FamilySpec("conca7", (), SURFACE_RING,
                         lambda: "y^7 + x*y^4*w^2 + y^5*w^2 + y^3*w^4 + z*w^6",
                         _const(verdict="nearly_free", exponents=[2, 2, 3], h1_finite=True)),
    "conca8": FamilySpec("conca8", (), SURFACE_RING,
                         lambda: "x^8 + x^7*z + x^3*z^3*w^2 + y*z^4*w^3",
                         _const(verdict="nearly_free", exponents=[2, 3, 3], h1_finite=True)),
    "conca_ab": FamilySpec("conca_ab", ("a", "b"), SURFACE_RING, _conca_ab,
                           lambda a, b: {"verdict": "nearly_free", "h1_finite": True}),
    "transversal_union": FamilySpec(
        "transversal_union", ("pair",), SURFACE_RING,
        lambda pair: "({})*({})".format(*PAIRS[_pair_name(pair)]),
        lambda pair: _exp_union(pair)),
    "cone": FamilySpec("cone", ("curve",), SURFACE_RING,
                       lambda curve: CURVES[_curve_name(curve)],
                       lambda curve: _exp_cone(curve)),
    "times_x0": FamilySpec("times_x0", ("curve",), SURFACE_RING,
                           lambda curve: f"w*({CURVES[_curve_name(curve)]})",
                           lambda curve: _exp_times(curve)),
}


def _pair_name(pair):
    if pair not in PAIRS:
        raise ValueError(f"unknown pair {pair!r}; choose from {sorted(PAIRS)}")
    return pair


def _curve_name(name):
    if name not in CURVES:
        raise ValueError(f"unknown curve {name!r}; choose from {sorted(CURVES)}")
    return name


def _exp_union(pair):
    out = {"quadric_cubic": {"polynomial": "6*k-3", "saturation_is_pair": True},
           "quadric_nodal_cubic": {"polynomial": "6*k+1", "saturation_is_pair": False},
           "cubic_cubic": {"polynomial": "9*k-9", "saturation_is_pair": True}}
    return out.get(pair, {})


def _exp_cone(name):
    out = {"pappus": {"polynomial": "45*k-189"}, "non_pappus": {"polynomial": "45*k-190"},
           "collinear_nodes": {"polynomial": "3*k+12"}, "general_nodes": {"polynomial": "3*k+11"},
           "fermat_cubic": {"verdict": "cone_neither"}}
    return {"n_module_zero": True, **out[name]}


def _exp_times(name):
    out = {
        "pappus": {"polynomial": "54*k-261",
                   "resolution": "0 -> S(-16)^2 -> S(-10) + S(-13) + S(-15)^3 -> S(-9)^4 -> S"},
        "non_pappus": {"polynomial": "54*k-262",
                       "resolution": "0 -> S(-16) -> S(-10) + S(-14)^3 -> S(-9)^4 -> S"},
    }
    return out.get(name, {})


def _delta4_section():
    return BINARY_QUARTIC_RING(DELTA4).compose(
        [SECTION_RING(v) for v in ("a", "b", "a", "d", "e")])


def gen(name, params=None, **kw):
    """Polynomial of catalog entry ``name``; parameters as a dict or keywords.

    >>> str(gen("D''", d=4))
    'y^4 + x^3*z + x^2*y*w'
    """
    if name not in FAMILIES:
        raise KeyError(f"unknown family {name!r}")
    params = dict(params or {}, **kw)
    spec = FAMILIES[name]
    missing = set(spec.params) - set(params)
    extra = set(params) - set(spec.params)
    if missing or extra:
        raise ValueError(f"{name} takes parameters {spec.params}, got {sorted(params)}")
    return spec.polynomial(**params)


def curve(name):
    """A plane curve from the small catalog, in ``Q[x, y, z]``."""
    return CURVE_RING(CURVES[_curve_name(name)])


def transversal_pair(name):
    g, h = PAIRS[_pair_name(name)]
    return SURFACE_RING(g), SURFACE_RING(h)


def cone(g, ring=SURFACE_RING):
    """Read a polynomial in 3 variables inside a ring with one more variable."""
    if g.ring.nvars + 1 != ring.nvars:
        raise ValueError("the target ring must have exactly one extra variable")
    return g.to_ring(ring)


def times_x0(g, ring=SURFACE_RING, var=None):
    """``x0 * g`` with ``x0`` the variable of ``ring`` missing from ``g``."""
    f = cone(g, ring)
    if var is None:
        (var,) = [v for v in ring.variables if v not in g.ring.variables]
    return ring.gen(ring.index(var)) * f


# -- closed formulas --------------------------------------------------------------------

def genus_complete_intersection(e, ep):
    """Genus of a smooth complete intersection of surfaces of degrees ``e, e'`` in P^3."""
    if e < 1 or ep < 1:
        raise ValueError("degrees must be positive")
    num = (e + ep - 4) * e * ep
    assert num % 2 == 0
    return 1 + num // 2


@dataclass
class CurveData:
    """Hilbert data of a plane curve needed by the cone formulas."""

    degree: int
    tau: int
    st: int
    head_sum: int
    function: dict = field(default_factory=dict)


def curve_data(g):
    """Degree, total Tjurina number, st and ``sum_{j < st} H(M(g))(j)``."""
    from .algebra import MilnorAlgebra

    alg = MilnorAlgebra(g)
    poly = alg.polynomial
    if len(poly) > 1:
        raise ValueError("the curve must have isolated singularities")
    tau = int(poly[0]) if poly else 0
    st = alg.st
    head = sum(alg.series.coefficient(j) for j in range(st))
    return CurveData(alg.d, tau, st, head, {j: alg.series.coefficient(j) for j in range(st + 2)})


def cone_predict(data, tau=None):
    """``{a, b, st}`` of the cone over a curve, from its Hilbert data."""
    tau = data.tau if tau is None else tau
    return {"a": tau, "b": data.head_sum - (data.st - 1) * tau, "st": data.st - 1}


def times_x0_predict(data, d=None, tau=None):
    """``{a, b, st}`` for ``f = x0 * g``; ``d = deg f = deg g + 1``."""
    tau = data.tau if tau is None else tau
    d = data.degree + 1 if d is None else d
    b = Fraction(data.head_sum - data.st * tau) - Fraction((d - 4) * (d - 1), 2)
    assert b.denominator == 1
    return {"a": tau + d - 1, "b": int(b), "st": max(d - 1, data.st - 1)}


# -- recorded relations ---------------------------------------------------------------------

def _rel(ring, comps):
    return [ring(c) if isinstance(c, str) else c for c in comps]


def _relations_Dp(d):
    if d < 10:
        raise ValueError("the recorded relations of D' need d >= 10")
    c = (d - 5) ** 2
    return [
        ["0", "0", "-y", "x"],
        ["x^4", "0", f"-{d-1}*x^3*z - {d-2}*x^2*y*w", f"-{d-5}*y^4"],
        [f"-{d*(d-5)}*y^{d-6} + {d*(d-2)}*x^3*y^{d-10}*w",
         f"{c}*x^{d-6}",
         f"-{5*c}*x^{d-10}*y^4 - {c}*x^{d-7}*w - {d*(d-1)*(d-2)}*x^2*y^{d-10}*z*w"
         f" - {d*(d-2)**2}*x*y^{d-9}*w^2",
         f"{d*(d-1)*(d-5)}*y^{d-7}*z"],
    ]


def _relations_D(d):
    if d < 11:
        raise ValueError("the recorded relations of D need d >= 11")
    k = d * d - 6 * d + 4
    return [
        ["0", "0", "-y", "x"],
        [f"{d-4}*x^5 + {d}*x*y^4", "-4*x^4*y",
         f"-{d-1}*z*({d-4}*x^4 + {d}*y^4) - {k}*x^3*y*w", f"-{d*(d-2)}*y^4*w"],
        [f"{d}*x^{d-9}*y^3", f"-4*x^{d-6}", f"4*x^{d-7}*w",
         f"{4*(d-4)}*y^{d-6} - {d*(d-1)}*x^{d-9}*y^2*z - {d*(d-2)}*x^{d-10}*y^3*w"],
        [f"{d*d*(d-2)}*x^{d-10}*y^3*w + {4*(d-4)}*y^{d-10}*({d}*y^4 + {d-4}*x^4)",
         f"-({4*d*(d-2)}*x^{d-7}*w + {16*(d-4)}*x^3*y^{d-9})",
         f"{4*d*(d-2)}*x^{d-8}*w^2 - {4*(d-4)}*x^2*y^{d-10}*({k}*y*w + {d*d-5*d+4}*x*z)",
         f"-({4*d*(d-1)*(d-4)}*y^{d-7}*z + {d*d*(d-2)*(d-1)}*x^{d-10}*y^2*z*w"
         f" + {d*d*(d-2)**2}*x^{d-11}*y^3*w^2)"],
    ]


def _relations_Dpp(d):
    if d < 4:
        raise ValueError("D'' needs d >= 4")
    return [
        ["x", "0", f"-{d-1}*z", f"-{d-2}*w"],
        ["0", "0", "-y", "x"],
        [f"{d}*y^{d-2}", f"-{d-2}*x^{d-3}*w", f"{d-2}*x^{d-4}*w^2", f"-{d*(d-1)}*y^{d-3}*z"],
        ["0", f"x^{d-2}", f"-x^{d-3}*w", f"-{d}*y^{d-2}"],
    ]


def _relations_nfq(d=None):
    return [["0", "2*y", "3*z", "-w"], ["0", "w", "x", "0"],
            ["w^2", "4*x^2", "y*w", "0"], ["y*w", "6*x*z", "y^2", "2*x^2"]]


_RELATIONS = {"D'": _relations_Dp, "D": _relations_D, "D''": _relations_Dpp,
              "nearly_free_quartic": _relations_nfq}


def expected_syzygies(name, d=None):
    """The recorded generating relations for a family member, as a
    :class:`SyzygyBasis` over the gradient (generator degrees ``d - 1``)."""
    if name not in _RELATIONS:
        raise ValueError(f"no recorded relations for {name!r}")
    rows = _RELATIONS[name](d)
    f = gen(name, d=d) if FAMILIES[name].params else gen(name)
    deg = f.degree()
    ring = f.ring
    vecs = [FreeModuleVector(_rel(ring, r), (deg - 1,) * 4) for r in rows]
    return SyzygyBasis(vecs, (deg - 1,) * 4, [v.degree() for v in vecs])


def recorded_a(name, d):
    """The printed ``a_3, a_4`` for ``D_d`` (``d >= 11``)."""
    if name != "D" or d < 11:
        raise ValueError("recorded a-coefficients exist only for D with d >= 11")
    return (SURFACE_RING(f"{-4 * d * (d - 4)}*x"),
            SURFACE_RING(f"{-4 * d * d * (d * d - 6 * d + 8)}*w"))


# -- the stability experiment -----------------------------------------------------------

_Q0_PAIRS = {(1, 2): "plane_quadric", (2, 2): "quadric_quadric", (2, 3): "quadric_cubic",
             (3, 3): "cubic_cubic"}


def transversality(g, h):
    """True when ``g = h = 0`` is a smooth complete intersection curve and both
    surfaces are smooth along it."""
    from .groebner import Ideal, krull_dim

    gg = [g.diff(i) for i in range(4)]
    hh = [h.diff(i) for i in range(4)]
    minors = [gg[i] * hh[j] - gg[j] * hh[i] for i in range(4) for j in range(i + 1, 4)]
    return krull_dim(Ideal([g, h] + [m for m in minors if m])) == 0


def q0_experiment(e, ep):
    """EXPERIMENT: compare the computed st of ``g * g'`` with
    ``3(e + e') + |e - e'| - 7`` for an explicit transversal pair.

    Returns a report dict; nothing here is asserted.
    """
    from .algebra import MilnorAlgebra

    key = tuple(sorted((e, ep)))
    if key not in _Q0_PAIRS:
        raise ValueError(f"no explicit pair stored for degrees {key}")
    pair = _Q0_PAIRS[key]
    g, h = transversal_pair(pair)
    alg = MilnorAlgebra(g * h)
    conj = 3 * (e + ep) + abs(e - ep) - 7
    st = alg.st
    return {
        "label": "EXPERIMENT",
        "degrees": [e, ep],
        "pair": [str(g), str(h)],
        "transversal": transversality(g, h),
        "computed_st": st,
        "conjectured_st": conj,
        "agrees": st == conj,
        "polynomial": format_poly(alg.polynomial),
    }


# -- corpus ---------------------------------------------------------------------------------

@dataclass
class CorpusEntry:
    name: str
    family: str
    params: dict
    variables: list
    polynomial: str
    expected: dict
    source: str = "published"

    def to_json(self):
        return {"name": self.name, "family": self.family, "params": dict(self.params),
                "variables": list(self.variables), "polynomial": self.polynomial,
                "expected": dict(self.expected), "source": self.source}

    @classmethod
    def from_json(cls, obj):
        return cls(obj["name"], obj["family"], dict(obj.get("params", {})),
                   list(obj["variables"]), obj["polynomial"], dict(obj.get("expected", {})),
                   obj.get("source", "published"))

    def build(self):
        return Ring(self.variables)(self.polynomial)


def _entry(family, label=None, source="published", **params):
    spec = FAMILIES[family]
    f = spec.polynomial(**params)
    if label is None:
        label = family + ("(" + ",".join(str(v) for v in params.values()) + ")" if params else "")
    return CorpusEntry(label, family, params, list(spec.ring.variables), str(f),
                       spec.expectations(**params), source)


def corpus():
    """The default verification corpus, in a fixed order."""
    out = [_entry("xyzw"), _entry("fermat_planes")]
    out += [_entry("D", d=d) for d in range(4, 12)]
    out += [_entry("D'", d=d) for d in range(6, 13)]
    out += [_entry("D''", d=d) for d in range(4, 8)]
    out += [_entry("nearly_free_quartic"), _entry("long_resolution"), _entry("wrong_shape")]
    out += [_entry("delta3"), _entry("delta4_section")]
    out += [_entry("conca6"), _entry("conca7"), _entry("conca8")]
    out += [_entry("conca_ab", source="derived", a=2, b=3)]
    out += [_entry("transversal_union", pair=p) for p in ("quadric_cubic", "quadric_nodal_cubic")]
    out += [_entry("transversal_union", pair="cubic_cubic", source="derived")]
    out += [_entry("cone", curve=c) for c in CURVES]
    out += [_entry("times_x0", curve=c) for c in ("pappus", "non_pappus", "fermat_cubic")]
    out += [_entry("delta4")]
    return out


def manifest(entries=None):
    entries = corpus() if entries is None else entries
    return [e.to_json() for e in entries]


def write_manifest(path, entries=None):
    with open(path, "w") as fh:
        json.dump(manifest(entries), fh, indent=2, sort_keys=True)
        fh.write("\n")


def load_manifest(path):
    with open(path) as fh:
        data = json.load(fh)
    if not isinstance(data, list):
        raise ValueError("a corpus manifest is a JSON list")
    return [CorpusEntry.from_json(obj) for obj in data]

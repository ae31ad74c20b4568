"""Free / nearly free classification of projective hypersurfaces from the
minimal resolution of the Milnor algebra, with Saito-type determinant
certificates and the closed-form Hilbert polynomial predictions."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction

from .algebra import MilnorAlgebra
from .groebner import FreeModuleVector, Ideal, krull_dim, minimal_generators
from .linalg import sparse_rank
from .polyring import _to_sympy, squarefree_check

__all__ = [
    "ClassificationReport",
    "SaitoCertificate",
    "CertificateError",
    "NonReducedError",
    "is_cone",
    "classify_surface",
    "classify_curve",
    "saito_determinant_check",
    "nearly_free_saito",
    "lemST_free_test",
    "free_predict",
    "nearly_free_predict",
    "deg_singular_locus",
    "tame_minor_check",
    "h1_finiteness",
    "determinant",
    "radical_membership",
    "proportionality_constant",
    "tjurina_number",
]

VERDICTS = ("free", "nearly_free", "neither", "cone_free", "cone_nearly_free",
            "cone_neither", "smooth")


class CertificateError(ValueError):
    """Input relations do not yield a valid certificate."""


class NonReducedError(ValueError):
    """The polynomial has a repeated factor."""


# -- small helpers ----------------------------------------------------------------

def determinant(rows):
    """Determinant of a square matrix of polynomials (Laplace along the first row)."""
    n = len(rows)
    if n == 1:
        return rows[0][0]
    ring = rows[0][0].ring
    total = ring.zero()
    for j in range(n):
        a = rows[0][j]
        if not a:
            continue
        minor = [r[:j] + r[j + 1:] for r in rows[1:]]
        term = a * determinant(minor)
        total = total + term if j % 2 == 0 else total - term
    return total


def _as_vector(r, ring, n):
    if isinstance(r, FreeModuleVector):
        comps = list(r.components)
    else:
        comps = [ring(c) if isinstance(c, str) else c for c in r]
    if len(comps) != n:
        raise ValueError(f"relation must have {n} components")
    return comps


def _check_relation(f, comps):
    partials = [f.diff(i) for i in range(f.ring.nvars)]
    total = f.ring.zero()
    for a, p in zip(comps, partials):
        total = total + a * p
    if not total.is_zero():
        raise CertificateError("not a Jacobian relation: sum r_j f_j != 0")


def _relation_degree(comps):
    degs = {c.homogeneous_degree() for c in comps if c}
    if len(degs) != 1 or None in degs:
        raise CertificateError("relation is not homogeneous")
    return degs.pop()


def _euler_row(ring):
    return ring.gens()


def is_cone(f):
    """True iff the partial derivatives are linearly dependent over the constants."""
    partials = [f.diff(i) for i in range(f.ring.nvars)]
    cols = [dict(p.terms) for p in partials]
    return sparse_rank(cols) < f.ring.nvars


def radical_membership(f, gens, max_power=None):
    """Smallest ``N`` (up to ``max_power``, default ``deg f``) with ``f^N`` in ``(gens)``."""
    I = Ideal(gens)
    limit = max_power if max_power is not None else max(f.degree(), 1)
    p = f
    for N in range(1, limit + 1):
        if I.contains(p):
            return N
        p = p * f
    return None


# -- predictions ----------------------------------------------------------------------

def free_predict(d1, d2, d3):
    """Degree, Hilbert polynomial ``a k + b``, ct and st of a free surface with
    exponents ``d1 <= d2 <= d3``."""
    d1, d2, d3 = sorted((d1, d2, d3))
    if d1 < 1:
        raise ValueError("exponents must be positive")
    s1 = d1 + d2 + d3
    s2 = d1 * d2 + d1 * d3 + d2 * d3
    s3 = d1 * d2 * d3
    a = s1 * s1 - s2
    b = 2 * a - s1 ** 3 + Fraction(3, 2) * s1 * s2 - Fraction(1, 2) * s3
    assert b.denominator == 1
    d = s1 + 1
    return {"d": d, "a": a, "b": int(b), "ct": d1 + d - 2, "st": d + d3 - 4}


def nearly_free_predict(d1, d2, d3):
    """Same data for a nearly free surface (``d = d1 + d2 + d3``), through the
    primed exponents ``(d1, d2, d3 - 1)``."""
    d1, d2, d3 = sorted((d1, d2, d3))
    if d1 < 1:
        raise ValueError("exponents must be positive")
    if d3 - 1 < 1:
        raise ValueError("the primed exponent d3 - 1 must be positive")
    free = free_predict(d1, d2, d3 - 1)
    d = d1 + d2 + d3
    return {"d": d, "a": free["a"] - 1, "b": free["b"] + d + d3 - 3, "st": d + d3 - 3}


# -- certificates ------------------------------------------------------------------------

def saito_determinant_check(f, r1, r2, r3):
    """``det(Euler, r1, r2, r3) == c f`` with ``c != 0``; returns ``(ok, c)``."""
    ring = f.ring
    n = ring.nvars
    if n != 4:
        raise ValueError("the determinant check is set up for surfaces in P^3")
    rows = [_euler_row(ring)]
    for r in (r1, r2, r3):
        comps = _as_vector(r, ring, n)
        _check_relation(f, comps)
        rows.append(comps)
    det = determinant(rows)
    if det.is_zero():
        return False, Fraction(0)
    c = det.leading_coefficient() / f.leading_coefficient()
    ok = det == f.scale(c)
    return bool(ok), Fraction(int(c.numerator), int(c.denominator)) if ok else Fraction(0)


@dataclass
class SaitoCertificate:
    relations: list
    degrees: list
    phis: list
    a: list
    c: Fraction = Fraction(1)
    second_syzygy_ok: bool = False
    converse: dict = field(default_factory=dict)

    def ideal(self):
        return Ideal(self.a)

    def normalized_a(self):
        """``a`` rescaled so that the leading coefficient of ``a_4`` is 1."""
        pivot = next((x for x in reversed(self.a) if not x.is_zero()), None)
        lc = pivot.leading_coefficient()
        return [x / lc for x in self.a]

    def to_json(self):
        return {
            "relations": [[str(c) for c in r] for r in self.relations],
            "degrees": list(self.degrees),
            "phi": [str(p) for p in self.phis],
            "a": [str(p) for p in self.a],
            "c": str(self.c),
            "second_syzygy_ok": self.second_syzygy_ok,
            **({"converse": self.converse} if self.converse else {}),
        }


def nearly_free_saito(f, relations, converse=False):
    """Determinant certificate for a nearly free surface.

    ``phi_i`` is the determinant of the Euler row stacked on the relations
    with ``r_i`` left out; ``a_i = (-1)^i phi_i / f``, and ``sum a_i r_i = 0``
    is verified.  With ``converse=True`` the hypotheses of the converse
    (saturated Jacobian ideal, minimal generators with ``d1 + d2 + d3 = d``)
    are checked too.
    """
    ring = f.ring
    n = ring.nvars
    if n != 4 or len(relations) != 4:
        raise ValueError("expected four relations of a surface in P^3")
    rels = []
    for r in relations:
        comps = _as_vector(r, ring, n)
        _check_relation(f, comps)
        rels.append(comps)
    degrees = [_relation_degree(c) for c in rels]
    vecs = [FreeModuleVector(c, (f.degree() - 1,) * n) for c in rels]
    mins, _ = minimal_generators(vecs)
    if len(mins) != 4:
        raise CertificateError("relations are not minimal generators of a rank-4 module")
    euler = _euler_row(ring)
    phis, a = [], []
    for i in range(4):
        rows = [euler] + [rels[j] for j in range(4) if j != i]
        phi = determinant(rows)
        try:
            q = phi.divide_exact(f)
        except ValueError:
            raise CertificateError(f"phi_{i + 1} is not divisible by f") from None
        phis.append(phi)
        a.append(q if (i + 1) % 2 == 0 else -q)
    if all(x.is_zero() for x in a):
        raise CertificateError("all determinants vanish (c = 0)")
    ok = all(sum((a[i] * rels[i][j] for i in range(4)), ring.zero()).is_zero()
             for j in range(n))
    if not ok:
        raise CertificateError("sum a_i r_i != 0")
    cert = SaitoCertificate(rels, degrees, phis, a, Fraction(1), ok)
    if converse:
        alg = MilnorAlgebra(f)
        syz_degrees = sorted(alg.syzygies.degrees)
        d1, d2, d3, d4 = sorted(degrees)
        cert.converse = {
            "saturated": not alg.n_module_series,
            "generate": _generates(alg, vecs),
            "degrees_ok": d3 == d4 and d1 + d2 + d3 == f.degree() and syz_degrees == sorted(degrees),
        }
        cert.converse["nearly_free"] = all(cert.converse.values())
    return cert


def _generates(alg, vecs):
    from .groebner import module_groebner_basis

    shifts = vecs[0].shifts
    gb = module_groebner_basis(vecs, shifts)
    for rel in alg.syzygies.relations:
        if not gb.contains(FreeModuleVector(rel.components, shifts)):
            return False
    return True


def proportionality_constant(a, b):
    """``c`` with ``a_i = c b_i`` for all ``i``, or ``None``."""
    c = None
    for x, y in zip(a, b):
        if x.is_zero() and y.is_zero():
            continue
        if x.is_zero() or y.is_zero():
            return None
        k = x.leading_coefficient() / y.leading_coefficient()
        if x != y.scale(k):
            return None
        if c is None:
            c = k
        elif c != k:
            return None
    return c


def tame_minor_check(f, r, rp):
    """True iff the 2x2 minors of the two relations have a constant gcd."""
    import sympy

    ring = f.ring
    n = ring.nvars
    u = _as_vector(r, ring, n)
    v = _as_vector(rp, ring, n)
    minors = []
    for i in range(n):
        for j in range(i + 1, n):
            m = u[i] * v[j] - u[j] * v[i]
            if m:
                minors.append(m)
    if not minors:
        return False
    symbols = sympy.symbols(" ".join(f"v{i}" for i in range(n)))
    g = _to_sympy(minors[0], symbols)
    for m in minors[1:]:
        g = g.gcd(_to_sympy(m, symbols))
        if g.total_degree() == 0:
            return True
    return g.total_degree() == 0


# -- reports --------------------------------------------------------------------------------

@dataclass
class ClassificationReport:
    polynomial: str
    variables: list
    degree: int
    verdict: str
    exponents: list = None
    betti: object = None
    hilbert: object = None
    certificate: object = None
    predictions: dict = field(default_factory=dict)
    h1_finite: object = None
    tame_hint: object = None
    checks: dict = field(default_factory=dict)
    resolution: str = ""

    def to_json(self):
        cert = self.certificate
        if cert is not None and hasattr(cert, "to_json"):
            cert = cert.to_json()
        hil = None
        if self.hilbert is not None:
            full = self.hilbert.to_json()
            hil = {k: full[k] for k in ("function", "polynomial", "st", "ct", "mdr")}
            hil["polynomial_coefficients"] = full["polynomial_coefficients"]
            hil["series_numerator"] = full["series_numerator"]
        return {
            "polynomial": self.polynomial,
            "variables": list(self.variables),
            "degree": self.degree,
            "verdict": self.verdict,
            "exponents": list(self.exponents) if self.exponents is not None else None,
            "betti": self.betti.to_json() if self.betti is not None else None,
            "resolution": self.resolution,
            "hilbert": hil,
            "certificate": cert,
            "predictions": _jsonable(self.predictions),
            "h1_finite": self.h1_finite,
            "tame_hint": self.tame_hint,
            "checks": _jsonable(self.checks),
        }


def _jsonable(obj):
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, bool) or obj is None or isinstance(obj, int):
        return obj
    if isinstance(obj, Fraction):
        return str(obj) if obj.denominator != 1 else int(obj)
    return str(obj)


def _algebra(f):
    return f if isinstance(f, MilnorAlgebra) else MilnorAlgebra(f)


def _match_free(B, d, rank):
    """Exponents when the table has the free shape, else ``None``."""
    if set(B.data) != {0, 1, 2} or B[1] != {d - 1: rank}:
        return None
    shifts = sorted(s for s, m in B[2].items() for _ in range(m))
    if len(shifts) != rank - 1:
        return None
    return [s - (d - 1) for s in shifts]


def _match_nearly_free_surface(B, d):
    if set(B.data) != {0, 1, 2, 3} or B[1] != {d - 1: 4}:
        return None
    shifts = sorted(s for s, m in B[2].items() for _ in range(m))
    if len(shifts) != 4 or shifts[2] != shifts[3]:
        return None
    e = [s - (d - 1) for s in shifts[:3]]
    if e[0] < 1 or B[3] != {e[2] + d: 1}:
        return None
    return e


def _match_nearly_free_curve(B, d):
    """Shape ``0 -> S(-d-d2) -> S(-d-d1+1) + S(-d-d2+1)^2 -> S(-d+1)^3 -> S``."""
    if set(B.data) != {0, 1, 2, 3} or B[1] != {d - 1: 3} or len(B[3]) != 1:
        return None
    (top, mult), = B[3].items()
    if mult != 1:
        return None
    d2 = top - d
    shifts = Counter(s for s, m in B[2].items() for _ in range(m))
    if shifts[d + d2 - 1] < 2 or sum(shifts.values()) != 3:
        return None
    shifts[d + d2 - 1] -= 2
    (rest,) = [s for s, m in shifts.items() if m]
    d1 = rest - d + 1
    if not 1 <= d1 <= d2:
        return None
    return [d1, d2]


def classify_surface(f, check_reduced=True):
    """Classify a reduced surface in P^3 from the Betti table of ``M(f)``."""
    alg = _algebra(f)
    f = alg.f
    ring = alg.ring
    if ring.nvars != 4:
        raise ValueError("classify_surface expects a polynomial in 4 variables")
    d = alg.d
    if d < 2:
        raise ValueError("degree must be at least 2")
    if check_reduced and not squarefree_check(f):
        raise NonReducedError("f has a repeated factor")
    report = ClassificationReport(str(f), list(ring.variables), d, "neither")
    if alg.is_smooth:
        report.verdict = "smooth"
        report.betti = alg.betti
        report.resolution = str(alg.resolution)
        report.hilbert = alg.hilbert_data
        return report
    B = alg.betti
    report.betti = B
    report.resolution = str(alg.resolution)
    report.hilbert = hd = alg.hilbert_data
    cone = is_cone(f)
    report.checks["cone"] = cone
    if cone:
        _classify_cone(alg, report)
    else:
        e = _match_free(B, d, 4)
        if e is not None and e[0] >= 1:
            report.verdict = "free"
            report.exponents = e
            _free_details(alg, report)
        else:
            e = _match_nearly_free_surface(B, d)
            if e is not None:
                report.verdict = "nearly_free"
                report.exponents = e
                _nearly_free_details(alg, report)
    _common_checks(alg, report, hd)
    return report


def _classify_cone(alg, report):
    d = alg.d
    B = alg.betti
    e = _match_free(B, d, 3)
    if e is not None and e[0] >= 1:
        report.verdict = "cone_free"
        report.exponents = [0] + e
        return
    e = _match_nearly_free_curve(B, d)
    if e is not None:
        report.verdict = "cone_nearly_free"
        report.exponents = e
        return
    report.verdict = "cone_neither"


def _computed_ab(hd):
    poly = hd.polynomial
    if len(poly) > 2:
        return None, None
    a = poly[1] if len(poly) > 1 else Fraction(0)
    b = poly[0] if poly else Fraction(0)
    return a, b


def _free_details(alg, report):
    f, d = alg.f, alg.d
    rels = alg.resolution.maps[1].columns()
    ok, c = saito_determinant_check(f, *rels)
    report.certificate = {
        "type": "saito_determinant",
        "relations": [[str(x) for x in r] for r in rels],
        "degrees": sorted(report.exponents),
        "determinant_constant": str(c),
        "ok": ok,
    }
    pred = free_predict(*report.exponents)
    a, b = _computed_ab(alg.hilbert_data)
    hd = alg.hilbert_data
    report.predictions = {
        "predicted": pred,
        "computed": {"d": d, "a": a, "b": b, "ct": hd.ct, "st": hd.st},
    }
    report.checks["exponent_sum"] = sum(report.exponents) == d - 1
    report.checks["predictions_match"] = (pred["d"] == d and pred["a"] == a and pred["b"] == b
                                          and pred["ct"] == hd.ct and pred["st"] == hd.st)
    report.checks["saito"] = ok
    report.tame_hint = tame_minor_check(f, rels[0], rels[1])


def _nearly_free_details(alg, report):
    f, d = alg.f, alg.d
    res = alg.resolution
    rels = res.maps[1].columns()
    second = [row[0] for row in res.maps[2].matrix]
    cert = nearly_free_saito(f, rels)
    c = proportionality_constant(cert.a, second)
    cert.c = Fraction(int(c.numerator), int(c.denominator)) if c is not None else Fraction(0)
    report.certificate = cert
    pred = nearly_free_predict(*report.exponents)
    hd = alg.hilbert_data
    a, b = _computed_ab(hd)
    report.predictions = {
        "predicted": pred,
        "computed": {"d": d, "a": a, "b": b, "st": hd.st},
    }
    report.checks["exponent_sum"] = sum(report.exponents) == d
    report.checks["predictions_match"] = (pred["d"] == d and pred["a"] == a and pred["b"] == b
                                          and pred["st"] == hd.st)
    report.checks["saito"] = c is not None and c != 0
    report.h1_finite = krull_dim(Ideal(cert.a)) == 0
    report.tame_hint = tame_minor_check(f, rels[0], rels[1])
    report.checks["f_in_radical_of_a"] = radical_membership(f, cert.a) is not None


def _common_checks(alg, report, hd):
    d = alg.d
    degs = sorted(alg.syzygies.degrees)
    if not report.checks.get("cone"):
        report.checks["degree_sum_test"] = lemST_free_test(alg)
        report.checks["degree_sum_agrees"] = report.checks["degree_sum_test"] == (report.verdict == "free")
    if report.verdict in ("free", "cone_free"):
        report.checks["n_module_zero"] = not alg.n_module_series
    report.checks["ct_relation"] = (not isinstance(hd.ct, int)) or hd.mdr is None or hd.ct == hd.mdr + d - 2
    report.checks["syzygy_degrees"] = degs


# -- other tests ------------------------------------------------------------------------

def lemST_free_test(f):
    """Three smallest minimal generator degrees of AR(f) sum to at most ``d - 1``."""
    alg = _algebra(f)
    degs = sorted(alg.syzygies.degrees)
    if len(degs) < 3:
        return False
    return sum(degs[:3]) <= alg.d - 1


def deg_singular_locus(f):
    """Degree of the 1-dimensional singular locus: the leading coefficient of
    the (linear) Hilbert polynomial."""
    alg = _algebra(f)
    poly = alg.polynomial
    if len(poly) < 2:
        raise ValueError("singular locus is not 1-dimensional")
    if len(poly) > 2:
        raise ValueError("singular locus has dimension > 1")
    return int(poly[1])


def h1_finiteness(f):
    """True iff the second-syzygy coefficients of a nearly free non-cone
    surface form a regular sequence."""
    alg = _algebra(f)
    if is_cone(alg.f):
        raise ValueError("cone input")
    report = classify_surface(alg)
    if report.verdict != "nearly_free":
        raise ValueError(f"expected a nearly free surface, got {report.verdict}")
    return report.h1_finite


def classify_curve(g, check_reduced=True):
    """Free / nearly free / smooth verdict for a reduced plane curve."""
    alg = _algebra(g)
    g = alg.f
    ring = alg.ring
    if ring.nvars != 3:
        raise ValueError("classify_curve expects a polynomial in 3 variables")
    d = alg.d
    if check_reduced and not squarefree_check(g):
        raise NonReducedError("g has a repeated factor")
    report = ClassificationReport(str(g), list(ring.variables), d, "neither")
    report.betti = B = alg.betti
    report.resolution = str(alg.resolution)
    report.hilbert = alg.hilbert_data
    if alg.is_smooth:
        report.verdict = "smooth"
        return report
    e = _match_free(B, d, 3)
    if e is not None:
        report.verdict = "free"
        report.exponents = e
        report.checks["exponent_sum"] = sum(e) == d - 1
        report.checks["n_module_zero"] = not alg.n_module_series
        return report
    e = _match_free(B, d, 2)
    if e is not None:
        # pencil of lines: one relation of degree 0
        report.verdict = "free"
        report.exponents = [0] + e
        return report
    e = _match_nearly_free_curve(B, d)
    if e is not None:
        report.verdict = "nearly_free"
        report.exponents = e
        n = alg.n_module_series
        report.checks["n_module_at_most_one"] = bool(n) and max(n.values()) <= 1
    return report


def tjurina_number(g):
    """Total Tjurina number of a reduced plane curve: the constant Hilbert polynomial."""
    alg = _algebra(g)
    poly = alg.polynomial
    if len(poly) > 1:
        raise ValueError("singular locus is not 0-dimensional")
    return int(poly[0]) if poly else 0

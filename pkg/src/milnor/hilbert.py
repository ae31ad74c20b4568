"""Hilbert functions, series and polynomials of Milnor algebras, and the
thresholds st, ct and mdr."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .series import (
    eval_poly,
    format_poly,
    format_series,
    hilbert_polynomial_from_numerator,
    lp_clean,
    lp_mul,
    monomial_numerator,
    series_coefficient,
)

__all__ = [
    "HilbertSeries",
    "HilbertData",
    "WindowBound",
    "hilbert_function",
    "staircase_count",
    "hilbert_series",
    "hilbert_series_from_resolution",
    "hilbert_polynomial",
    "fit_hilbert_polynomial",
    "smooth_series",
    "stability_threshold",
    "mdr",
    "ct",
    "ct_direct",
    "hilbert_data",
    "EngineInconsistency",
]


class EngineInconsistency(RuntimeError):
    """Two independent computations of the same invariant disagree."""


class HilbertSeries:
    """``numerator(t) / (1 - t)^denominator_power`` with integer numerator."""

    def __init__(self, numerator, denominator_power):
        self.numerator = lp_clean({int(e): int(c) for e, c in numerator.items()})
        self.denominator_power = int(denominator_power)

    def coefficient(self, k):
        return series_coefficient(self.numerator, self.denominator_power, k)

    def expand(self, lo, hi):
        return [self.coefficient(k) for k in range(lo, hi + 1)]

    def polynomial(self):
        return hilbert_polynomial(self)

    def numerator_list(self):
        """Dense coefficient list of the numerator, from ``t^0`` (or its lowest power)."""
        if not self.numerator:
            return []
        lo = min(0, min(self.numerator))
        return [self.numerator.get(e, 0) for e in range(lo, max(self.numerator) + 1)]

    def __eq__(self, other):
        return (isinstance(other, HilbertSeries) and self.numerator == other.numerator
                and self.denominator_power == other.denominator_power)

    def __hash__(self):
        return hash((tuple(sorted(self.numerator.items())), self.denominator_power))

    def __str__(self):
        return f"({format_series(self.numerator)}) / (1 - t)^{self.denominator_power}"

    __repr__ = __str__


class WindowBound:
    """A threshold that was not reached inside the scanned window."""

    def __init__(self, window):
        self.window = window

    def __str__(self):
        return f">= {self.window}"

    __repr__ = __str__

    def __eq__(self, other):
        return isinstance(other, WindowBound) and other.window == self.window

    def __hash__(self):
        return hash(("window", self.window))


@dataclass
class HilbertData:
    function: dict
    series: HilbertSeries
    polynomial: list
    st: int
    ct: object
    mdr: object
    window: int
    extra: dict = field(default_factory=dict)

    def polynomial_text(self):
        return format_poly(self.polynomial)

    def to_json(self):
        return {
            "function": {str(k): v for k, v in sorted(self.function.items())},
            "series_numerator": {str(e): c for e, c in sorted(self.series.numerator.items())},
            "denominator_power": self.series.denominator_power,
            "polynomial": format_poly(self.polynomial),
            "polynomial_coefficients": [str(Fraction(c)) for c in self.polynomial],
            "st": self.st,
            "ct": self.ct if isinstance(self.ct, int) else str(self.ct),
            "mdr": self.mdr if isinstance(self.mdr, int) else str(self.mdr),
            "window": self.window,
        }


# -- counting ------------------------------------------------------------------------

def staircase_count(ring, leading_keys, k):
    """Number of degree-``k`` monomials divisible by none of ``leading_keys``."""
    if k < 0:
        return 0
    lts = list(leading_keys)
    div = ring.key_divides
    return sum(1 for mu in ring.monomial_keys(k) if not any(div(a, mu) for a in lts))


def hilbert_function(gb, k):
    """``dim (S/I)_k`` by counting standard monomials of the Groebner basis."""
    return staircase_count(gb.ring, gb.leading_monomials(), k)


def hilbert_series(gb):
    """Hilbert series of ``S/I`` from the leading-term ideal of ``gb``."""
    ring = gb.ring
    num = monomial_numerator(gb.leading_exponents(), ring.nvars)
    return HilbertSeries(num, ring.nvars)


def hilbert_series_from_resolution(res):
    return HilbertSeries(res.numerator(), res.ring.nvars)


def hilbert_polynomial(hs):
    """Hilbert polynomial coefficients (ascending, exact fractions)."""
    return hilbert_polynomial_from_numerator(hs.numerator, hs.denominator_power)


def fit_hilbert_polynomial(hs, points=5):
    """Independent route: interpolate series coefficients at large ``k``.

    Uses ``points`` consecutive values past the last numerator exponent, where
    the coefficients are known to be polynomial of degree < ``points``.
    """
    start = max(list(hs.numerator) + [0]) + 1
    xs = list(range(start, start + points))
    ys = [Fraction(hs.coefficient(k)) for k in xs]
    coeffs = [Fraction(0)] * points
    for i, xi in enumerate(xs):
        basis = [Fraction(1)]
        denom = Fraction(1)
        for j, xj in enumerate(xs):
            if j == i:
                continue
            basis = [(basis[m - 1] if m > 0 else 0) - xj * (basis[m] if m < len(basis) else 0)
                     for m in range(len(basis) + 1)]
            denom *= xi - xj
        for m, b in enumerate(basis):
            coeffs[m] += ys[i] * b / denom
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    return coeffs


def smooth_series(d, nvars):
    """Numerator of the Milnor algebra of a smooth degree-``d`` hypersurface:
    ``(1 - t^{d-1})^nvars`` over ``(1 - t)^nvars``."""
    num = {0: 1}
    for _ in range(nvars):
        num = lp_mul(num, {0: 1, d - 1: -1})
    return HilbertSeries(num, nvars)


def stability_threshold(hs, window=None):
    """Least ``q >= 0`` with ``H(k) = P(k)`` for every ``k >= q``.

    Agreement is automatic past the last numerator exponent, so scanning up
    to ``window`` (default: that exponent + 2) is exhaustive.
    """
    poly = hilbert_polynomial(hs)
    top = max(list(hs.numerator) + [0]) + 2
    window = top if window is None else max(window, top)
    st = 0
    for k in range(window, -1, -1):
        if hs.coefficient(k) != eval_poly(poly, k):
            st = k + 1
            break
    return st


# -- syzygy thresholds ----------------------------------------------------------------

def _koszul_basis(partials, d):
    from .groebner import FreeModuleVector, module_groebner_basis

    n = len(partials)
    ring = partials[0].ring
    shifts = (d - 1,) * n
    vecs = []
    for i in range(n):
        for j in range(i + 1, n):
            if partials[i] or partials[j]:
                comps = [ring.zero()] * n
                comps[i] = partials[j]
                comps[j] = -partials[i]
                vecs.append(FreeModuleVector(comps, shifts))
    if not vecs:
        return None
    return module_groebner_basis(vecs, shifts)


def mdr(syzygies, partials, d):
    """Minimal degree of a Jacobian relation outside the Koszul submodule.

    ``syzygies`` is the :class:`SyzygyBasis` of the partials (generator
    degrees ``d - 1``).  Returns ``None`` when every generator is Koszul.
    """
    koszul = None
    best = None
    for rel, deg in zip(syzygies.relations, syzygies.degrees):
        if best is not None and deg >= best:
            break
        if deg < d - 1:
            best = deg
            break
        if koszul is None:
            koszul = _koszul_basis(partials, d)
        if koszul is None or not koszul.contains(rel):
            best = deg
    return best


def ct_direct(function_values, d, nvars, window):
    """Largest ``q`` with ``H(k)`` equal to the smooth series for all ``k <= q``,
    or a :class:`WindowBound` when no difference shows up by ``window``."""
    smooth = smooth_series(d, nvars)
    for k in range(0, window + 1):
        if function_values(k) != smooth.coefficient(k):
            return k - 1
    return WindowBound(window)


def ct(mdr_value, d, function_values=None, nvars=None, window=None):
    """``mdr + d - 2``, cross-checked against the direct comparison when the
    Hilbert function is supplied."""
    via = None if mdr_value is None else mdr_value + d - 2
    if function_values is None:
        return via
    direct = ct_direct(function_values, d, nvars, window)
    if via is None:
        if not isinstance(direct, WindowBound):
            raise EngineInconsistency(f"no essential relation but ct = {direct}")
        return direct
    if via > window:
        if not isinstance(direct, WindowBound):
            raise EngineInconsistency(f"ct direct {direct} vs mdr+d-2 = {via}")
        return via
    if direct != via:
        raise EngineInconsistency(f"ct direct {direct} vs mdr+d-2 = {via}")
    return via


def hilbert_data(f, window=None):
    """All Hilbert invariants of the Milnor algebra of ``f``."""
    from .algebra import MilnorAlgebra

    alg = f if isinstance(f, MilnorAlgebra) else MilnorAlgebra(f, window=window)
    return alg.hilbert_data


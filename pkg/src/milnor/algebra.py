"""The Milnor algebra ``M(f) = S / J_f`` with every derived object computed
once, on demand."""

from __future__ import annotations

from functools import cached_property

from .groebner import Ideal, groebner_basis, krull_dim, saturate_wrt_irrelevant, syzygy_basis
from .hilbert import (
    EngineInconsistency,
    HilbertData,
    WindowBound,
    ct,
    fit_hilbert_polynomial,
    hilbert_polynomial,
    hilbert_series,
    hilbert_series_from_resolution,
    mdr,
    stability_threshold,
    staircase_count,
)
from .localcoh import finite_series
from .polyring import Polynomial, jacobian
from .resolution import betti, dual_complex, homology_numerator, minimal_resolution
from .series import lp_add

__all__ = ["MilnorAlgebra"]


class MilnorAlgebra:
    """Lazily evaluated invariants of ``M(f)`` for a homogeneous ``f``.

    ``window`` overrides the upper end of the Hilbert function table; by
    default it is the largest resolution shift plus two.
    """

    def __init__(self, f, window=None):
        if not isinstance(f, Polynomial):
            raise TypeError("expected a Polynomial")
        if f.is_zero():
            raise ValueError("the zero polynomial defines no hypersurface")
        d = f.homogeneous_degree()
        if d is None:
            raise ValueError("f must be homogeneous")
        if d < 1:
            raise ValueError("f must have positive degree")
        self.f = f
        self.ring = f.ring
        self.d = d
        self._window = window

    @cached_property
    def partials(self):
        return jacobian(self.f)

    @cached_property
    def jacobian_ideal(self):
        return Ideal(self.partials, self.ring)

    @cached_property
    def gb(self):
        return groebner_basis([p for p in self.partials if p])

    @cached_property
    def syzygies(self):
        return syzygy_basis(self.partials, degrees=[self.d - 1] * self.ring.nvars)

    @cached_property
    def resolution(self):
        return minimal_resolution(self.partials)

    @cached_property
    def betti(self):
        return betti(self.resolution)

    @cached_property
    def series(self):
        """Hilbert series from the resolution, checked against the leading-term ideal."""
        hs = hilbert_series_from_resolution(self.resolution)
        if hs != hilbert_series(self.gb):
            raise EngineInconsistency("resolution series differs from Groebner series")
        return hs

    @cached_property
    def polynomial(self):
        poly = hilbert_polynomial(self.series)
        if poly != fit_hilbert_polynomial(self.series):
            raise EngineInconsistency("Hilbert polynomial extraction routes disagree")
        return poly

    @cached_property
    def max_shift(self):
        return max((s for F in self.resolution.modules for s in F.shifts), default=0)

    @property
    def window(self):
        return self._window if self._window is not None else self.max_shift + 2

    def hilbert_function(self, k):
        """Staircase count of standard monomials of degree ``k``."""
        return staircase_count(self.ring, self.gb.leading_monomials(), k)

    @cached_property
    def function_table(self):
        return {k: self.hilbert_function(k) for k in range(0, self.window + 1)}

    @cached_property
    def st(self):
        return stability_threshold(self.series, self.window)

    @cached_property
    def mdr(self):
        return mdr(self.syzygies, self.partials, self.d)

    @cached_property
    def ct(self):
        return ct(self.mdr, self.d, self.series.coefficient, self.ring.nvars, self.window)

    @cached_property
    def hilbert_data(self):
        table = self.function_table
        for k, v in table.items():
            if v != self.series.coefficient(k):
                raise EngineInconsistency(f"staircase count differs from series at k={k}")
        mdr_value = self.mdr if self.mdr is not None else WindowBound(self.window)
        return HilbertData(table, self.series, self.polynomial, self.st, self.ct,
                           mdr_value, self.window)

    # -- geometry -------------------------------------------------------------------

    @cached_property
    def singular_dim(self):
        """Krull dimension of ``S/J_f`` (projective dimension of Sigma plus one)."""
        return krull_dim(Ideal(self.gb.generators, self.ring))

    @property
    def is_smooth(self):
        return self.singular_dim <= 0

    @cached_property
    def saturation(self):
        """``I_f = J_f : Q^inf``."""
        return saturate_wrt_irrelevant(self.jacobian_ideal)

    @cached_property
    def n_module_series(self):
        """``{k: dim N(f)_k}`` from the saturation, as a finite table."""
        sat = hilbert_series(self.saturation.gb)
        num = lp_add(self.series.numerator, sat.numerator, -1)
        return finite_series(num, self.ring.nvars)

    # -- local cohomology ------------------------------------------------------------

    @cached_property
    def dual(self):
        return dual_complex(self.resolution, -self.ring.nvars)

    def ext_numerator(self, j):
        cache = self.__dict__.setdefault("_ext_cache", {})
        if j not in cache:
            cache[j] = homology_numerator(self.dual, j)
        return cache[j]

    @property
    def lc_window(self):
        w = self.max_shift + 2
        return (-w, w)

"""Graded pieces of the local cohomology ``H^i_Q(M(f))``.

The dimensions come from graded local duality

    dim H^i_Q(M)_k = dim Ext^{N-i}_S(M, S(-N))_{-k},   N = number of variables,

with the Ext modules read off the dual of the minimal resolution.  ``H^0`` is
also available directly as the finite quotient ``I_f / J_f``.
"""

from __future__ import annotations

from dataclasses import dataclass

from .series import eval_poly, series_coefficient

__all__ = [
    "GradedDims",
    "n_module_dims",
    "local_cohomology_dims",
    "local_cohomology_numerator",
    "defect",
    "hilbert_consistency",
    "ConsistencyReport",
    "finite_series",
]


class GradedDims:
    """Table ``degree -> dimension`` over a window ``[lo, hi]``."""

    def __init__(self, table, lo, hi, finite=None):
        self.lo, self.hi = lo, hi
        self.table = {k: int(table.get(k, 0)) for k in range(lo, hi + 1)}
        self.finite = finite

    def __getitem__(self, k):
        return self.table.get(k, 0)

    def __call__(self, k):
        return self[k]

    def total(self):
        return sum(self.table.values())

    def support(self):
        return [k for k, v in self.table.items() if v]

    def is_zero(self):
        return not any(self.table.values())

    def nonzero(self):
        return {k: v for k, v in self.table.items() if v}

    def to_json(self):
        return {str(k): v for k, v in self.table.items()}

    def series_text(self, var="t"):
        from .series import format_series

        return format_series(self.nonzero(), var)

    def __eq__(self, other):
        if isinstance(other, GradedDims):
            return self.nonzero() == other.nonzero()
        if isinstance(other, dict):
            return self.nonzero() == {k: v for k, v in other.items() if v}
        return NotImplemented

    def __repr__(self):
        return f"GradedDims({self.nonzero()}, window=[{self.lo}, {self.hi}])"


def _algebra(f):
    from .algebra import MilnorAlgebra

    return f if isinstance(f, MilnorAlgebra) else MilnorAlgebra(f)


def finite_series(num, r):
    """Expand ``num / (1 - t)^r`` when it is a polynomial (finite length module)."""
    out = dict(num)
    for _ in range(r):
        # divide by (1 - t): q_e = sum_{j <= e} n_j, must terminate
        if not out:
            return {}
        if sum(out.values()) != 0:
            raise ValueError("series is not of finite length")
        lo, hi = min(out), max(out)
        acc, q = 0, {}
        for e in range(lo, hi):
            acc += out.get(e, 0)
            if acc:
                q[e] = acc
        out = q
    return out


def n_module_dims(f, window=None):
    """Graded dimensions of ``N(f) = I_f / J_f`` with ``I_f`` the saturation."""
    alg = _algebra(f)
    dims = alg.n_module_series
    lo, hi = window if window is not None else alg.lc_window
    if dims:
        lo, hi = min(lo, min(dims)), max(hi, max(dims))
    return GradedDims(dims, lo, hi, finite=True)


def local_cohomology_numerator(f, i):
    """Numerator over ``(1 - t)^N`` of the Hilbert series of
    ``Ext^{N-i}(M(f), S(-N))`` (degrees are negated relative to ``H^i_Q``)."""
    alg = _algebra(f)
    return alg.ext_numerator(alg.ring.nvars - i)


def local_cohomology_dims(f, i, window=None, method="gb"):
    """``dim H^i_Q(M(f))_k`` for ``k`` in the window."""
    alg = _algebra(f)
    N = alg.ring.nvars
    if not 0 <= i < N:
        raise ValueError(f"cohomological index must lie in [0, {N - 1}]")
    lo, hi = window if window is not None else alg.lc_window
    if hi - lo > 400:
        raise ValueError("degree window too large")
    if method == "gb":
        num = alg.ext_numerator(N - i)
        table = {k: series_coefficient(num, N, -k) for k in range(lo, hi + 1)}
    else:
        from .resolution import homology_dim

        cx = alg.dual
        table = {k: homology_dim(cx, N - i, -k, method="linear") for k in range(lo, hi + 1)}
    return GradedDims(table, lo, hi)


def defect(f, k):
    """``dim H^1_Q(M(f))_k``."""
    return local_cohomology_dims(f, 1, window=(k, k))[k]


@dataclass
class ConsistencyReport:
    ok: bool
    first_violation: object
    rows: list

    def to_json(self):
        return {"ok": self.ok, "first_violation": self.first_violation,
                "rows": [dict(r) for r in self.rows]}


def hilbert_consistency(f, window=None):
    """Check ``H(k) = P(k) + sum_i (-1)^i dim H^i_Q(M)_k`` degree by degree."""
    alg = _algebra(f)
    lo, hi = window if window is not None else alg.lc_window
    N = alg.ring.nvars
    dims = [local_cohomology_dims(alg, i, (lo, hi)) for i in range(N)]
    poly = alg.polynomial
    rows = []
    first = None
    for k in range(lo, hi + 1):
        H = alg.series.coefficient(k)
        P = eval_poly(poly, k)
        rhs = P + sum((-1) ** i * dims[i][k] for i in range(N))
        row = {"k": k, "H": H, "P": str(P), **{f"h{i}": dims[i][k] for i in range(N)}}
        rows.append(row)
        if rhs != H and first is None:
            first = k
    return ConsistencyReport(first is None, first, rows)


"""Minimal graded free resolutions, Betti tables and dual complexes."""

from __future__ import annotations

from collections import Counter
from functools import cached_property

from .groebner import (
    FreeModuleVector,
    Ideal,
    minimal_generators,
    module_groebner_basis,
    syzygy_basis,
)
from .linalg import degree_matrix_columns, graded_piece_dim, sparse_rank
from .polyring import Polynomial
from .series import lp_add, lp_shift, monomial_numerator, series_coefficient

__all__ = [
    "GradedFreeModule",
    "ModuleMap",
    "Resolution",
    "BettiTable",
    "DualComplex",
    "minimal_resolution",
    "minimalize",
    "betti",
    "projective_dimension",
    "regularity",
    "dual_complex",
    "homology_dim",
    "homology_numerator",
    "submodule_quotient_numerator",
    "check_composition_zero",
    "check_exactness",
    "NonMinimalResolutionError",
]


class NonMinimalResolutionError(ValueError):
    pass


class GradedFreeModule:
    """``(+)_j S(-shifts[j])``."""

    def __init__(self, shifts):
        self.shifts = tuple(int(s) for s in shifts)

    @property
    def rank(self):
        return len(self.shifts)

    def dim(self, ring, m):
        return graded_piece_dim(ring, self.shifts, m)

    def numerator(self):
        """Hilbert series numerator over ``(1 - t)^n``."""
        out = {}
        for s in self.shifts:
            out[s] = out.get(s, 0) + 1
        return out

    def __eq__(self, other):
        return isinstance(other, GradedFreeModule) and sorted(self.shifts) == sorted(other.shifts)

    def __hash__(self):
        return hash(tuple(sorted(self.shifts)))

    def __str__(self):
        if not self.shifts:
            return "0"
        parts = []
        for s, m in sorted(Counter(self.shifts).items()):
            base = "S" if s == 0 else f"S({-s})"
            parts.append(base if m == 1 else f"{base}^{m}")
        return " + ".join(parts)

    __repr__ = __str__


class ModuleMap:
    """Homogeneous map ``source -> target`` given by ``matrix[i][j]``: the
    image of source basis vector ``j`` has component ``i`` in the target."""

    def __init__(self, ring, source, target, matrix):
        self.ring = ring
        self.source = source
        self.target = target
        self.matrix = [list(row) for row in matrix]
        if len(self.matrix) != target.rank or any(len(r) != source.rank for r in self.matrix):
            raise ValueError("matrix shape does not match the modules")

    def entry(self, i, j):
        return self.matrix[i][j]

    def column(self, j):
        return FreeModuleVector([row[j] for row in self.matrix], self.target.shifts)

    def columns(self):
        return [self.column(j) for j in range(self.source.rank)]

    def is_homogeneous(self):
        for i, row in enumerate(self.matrix):
            for j, p in enumerate(row):
                if p and p.homogeneous_degree() != self.source.shifts[j] - self.target.shifts[i]:
                    return False
        return True

    def has_unit_entry(self):
        return any(p and p.is_constant() for row in self.matrix for p in row)

    def compose(self, inner):
        """``self o inner``."""
        ring = self.ring
        rows = []
        for i in range(self.target.rank):
            row = []
            for j in range(inner.source.rank):
                acc = ring.zero()
                for k in range(self.source.rank):
                    a, b = self.matrix[i][k], inner.matrix[k][j]
                    if a and b:
                        acc = acc + a * b
                row.append(acc)
            rows.append(row)
        return ModuleMap(ring, inner.source, self.target, rows)

    def is_zero(self):
        return all(not p for row in self.matrix for p in row)

    def transpose(self, source, target):
        rows = [[self.matrix[i][j] for i in range(self.target.rank)]
                for j in range(self.source.rank)]
        return ModuleMap(self.ring, source, target, rows)

    def degree_rank(self, m):
        cols = degree_matrix_columns(self.ring, self.matrix, self.source.shifts,
                                     self.target.shifts, m)
        return sparse_rank(cols)

    @cached_property
    def image_numerator(self):
        """Numerator of the Hilbert series of the image submodule."""
        cols = [c for c in self.columns() if not c.is_zero()]
        if not cols:
            return {}
        quot = submodule_quotient_numerator(cols, self.target.shifts)
        return lp_add(self.target.numerator(), quot, -1)

    def image_dim(self, m):
        return series_coefficient(self.image_numerator, self.ring.nvars, m)


def submodule_quotient_numerator(vectors, shifts):
    """Hilbert numerator of ``F / N`` where ``N`` is generated by ``vectors``."""
    ring = vectors[0].ring
    gb = module_groebner_basis(vectors, shifts)
    lts = [[] for _ in shifts]
    for comp, mono in gb.leading_terms():
        lts[comp].append(ring.decode(mono))
    out = {}
    for c, s in enumerate(shifts):
        out = lp_add(out, lp_shift(monomial_numerator(lts[c], ring.nvars), s))
    return out


class Resolution:
    """Graded free resolution ``... -> F_2 -> F_1 -> F_0``; ``maps[k-1]`` is ``d_k``."""

    def __init__(self, ring, modules, maps, minimal=None):
        self.ring = ring
        self.modules = list(modules)
        self.maps = list(maps)
        if len(self.maps) != max(len(self.modules) - 1, 0):
            raise ValueError("need one map between consecutive modules")
        if minimal is None:
            minimal = not any(d.has_unit_entry() for d in self.maps)
        self.minimal = minimal

    @property
    def length(self):
        return len(self.maps)

    def shifts(self, k):
        return self.modules[k].shifts if k < len(self.modules) else ()

    def numerator(self):
        """``sum_k (-1)^k sum_j t^{e_kj}``."""
        out = {}
        for k, F in enumerate(self.modules):
            out = lp_add(out, F.numerator(), (-1) ** k)
        return out

    def __str__(self):
        parts = [str(F) for F in reversed(self.modules)]
        return "0 -> " + " -> ".join(parts)


class BettiTable:
    """Graded Betti numbers ``beta[k][shift]``."""

    def __init__(self, data):
        self.data = {k: dict(v) for k, v in data.items() if v}

    @classmethod
    def from_resolution(cls, res):
        return cls({k: Counter(F.shifts) for k, F in enumerate(res.modules) if F.rank})

    def __getitem__(self, k):
        return self.data.get(k, {})

    def __eq__(self, other):
        return isinstance(other, BettiTable) and self.data == other.data

    def __hash__(self):
        return hash(tuple(sorted((k, tuple(sorted(v.items()))) for k, v in self.data.items())))

    def projective_dimension(self):
        return max(self.data) if self.data else 0

    def regularity(self):
        return max((max(v) - k for k, v in self.data.items()), default=0)

    def totals(self):
        return {k: sum(v.values()) for k, v in self.data.items()}

    def to_json(self):
        return {str(k): {str(s): m for s, m in sorted(v.items())} for k, v in sorted(self.data.items())}

    @classmethod
    def from_json(cls, obj):
        return cls({int(k): {int(s): m for s, m in v.items()} for k, v in obj.items()})

    def text(self):
        """Macaulay-style diagram: column ``k``, row ``shift - k``."""
        if not self.data:
            return "0"
        cols = range(0, max(self.data) + 1)
        rows = sorted({s - k for k, v in self.data.items() for s in v})
        rows = range(rows[0], rows[-1] + 1)
        cells = {(r, k): str(self[k].get(r + k, 0) or ".") for r in rows for k in cols}
        totals = self.totals()
        width = max([len(c) for c in cells.values()] + [len(str(t)) for t in totals.values()])
        label = max(len("total:"), max(len(f"{r}:") for r in rows))
        lines = [" " * label + " " + " ".join(str(k).rjust(width) for k in cols),
                 "total:".rjust(label) + " " + " ".join(str(totals.get(k, 0)).rjust(width) for k in cols)]
        for r in rows:
            lines.append(f"{r}:".rjust(label) + " " + " ".join(cells[r, k].rjust(width) for k in cols))
        return "\n".join(lines)

    def __str__(self):
        return self.text()


def _gens_of(I):
    if isinstance(I, Ideal):
        return I.ring, list(I.generators)
    gens = list(I)
    if not gens:
        raise ValueError("need at least one generator")
    return gens[0].ring, [g for g in gens if not g.is_zero()]


def minimal_resolution(I, max_length=None):
    """Minimal free resolution of ``S/I`` for a homogeneous ideal ``I``.

    Each step takes minimal generators of the previous syzygy module, so the
    result is minimal by construction; :func:`minimalize` is applied anyway as
    a safeguard.
    """
    ring, gens = _gens_of(I)
    if not gens:
        return Resolution(ring, [GradedFreeModule([0])], [], minimal=True)
    for g in gens:
        if not g.is_homogeneous():
            raise ValueError("minimal_resolution needs a homogeneous ideal")
    if any(g.is_constant() for g in gens) or Ideal(gens, ring).is_unit():
        return Resolution(ring, [GradedFreeModule([])], [], minimal=True)
    vecs, degs = minimal_generators(gens)
    polys = [v[0] for v in vecs]
    modules = [GradedFreeModule([0]), GradedFreeModule(degs)]
    maps = [ModuleMap(ring, modules[1], modules[0], [polys])]
    cols = [FreeModuleVector([p], (0,)) for p in polys]
    shifts = list(degs)
    limit = ring.nvars + 1 if max_length is None else max_length
    while len(maps) < limit:
        syz = syzygy_basis(cols, degrees=shifts)
        if not syz.relations:
            break
        Fk = GradedFreeModule(syz.module_degrees)
        matrix = [[rel[i] for rel in syz.relations] for i in range(len(shifts))]
        maps.append(ModuleMap(ring, Fk, modules[-1], matrix))
        modules.append(Fk)
        cols = [FreeModuleVector(rel.components, shifts) for rel in syz.relations]
        shifts = list(syz.module_degrees)
    res = Resolution(ring, modules, maps)
    return minimalize(res)


def minimalize(res):
    """Cancel pairs of free summands joined by unit matrix entries."""
    ring = res.ring
    shifts = [list(F.shifts) for F in res.modules]
    mats = [[list(row) for row in d.matrix] for d in res.maps]
    changed = False
    k = 0
    while k < len(mats):
        d = mats[k]
        hit = None
        for i, row in enumerate(d):
            for j, p in enumerate(row):
                if p and p.is_constant():
                    hit = (i, j)
                    break
            if hit:
                break
        if hit is None:
            k += 1
            continue
        changed = True
        i, j = hit
        u = d[i][j].constant_value()
        colj = [row[j] for row in d]
        for l in range(len(d[0])):
            if l != j and d[i][l]:
                c = d[i][l] / u
                for r in range(len(d)):
                    if colj[r]:
                        d[r][l] = d[r][l] - c * colj[r]
        del d[i]
        for row in d:
            del row[j]
        if k + 1 < len(mats):
            del mats[k + 1][j]
        if k > 0:
            for row in mats[k - 1]:
                del row[i]
        del shifts[k + 1][j]
        del shifts[k][i]
    if not changed:
        return res
    modules = [GradedFreeModule(s) for s in shifts]
    while len(modules) > 1 and modules[-1].rank == 0:
        modules.pop()
        mats.pop()
    maps = [ModuleMap(ring, modules[k + 1], modules[k], mats[k]) for k in range(len(mats))]
    return Resolution(ring, modules, maps)


def betti(res):
    if not res.minimal:
        raise NonMinimalResolutionError("Betti numbers need a minimal resolution")
    return BettiTable.from_resolution(res)


def projective_dimension(res):
    return betti(res).projective_dimension()


def regularity(res):
    return betti(res).regularity()


def check_composition_zero(res):
    """``d_k o d_{k+1} == 0`` for all consecutive maps."""
    return all(res.maps[k].compose(res.maps[k + 1]).is_zero() for k in range(len(res.maps) - 1))


def check_exactness(res, degrees=None):
    """Rank identities ``rk(d_k)_m + rk(d_{k+1})_m = dim(F_k)_m`` for ``k >= 1``.

    Returns the list of failing ``(k, m)``; empty means exact in the window.
    """
    ring = res.ring
    if degrees is None:
        top = max((s for F in res.modules for s in F.shifts), default=0)
        degrees = range(0, top + 3)
    failures = []
    ranks = {}

    def rk(k, m):
        if k == 0 or k > len(res.maps):
            return 0
        if (k, m) not in ranks:
            ranks[k, m] = res.maps[k - 1].degree_rank(m)
        return ranks[k, m]

    for k in range(1, len(res.modules)):
        for m in degrees:
            if rk(k, m) + rk(k + 1, m) != res.modules[k].dim(ring, m):
                failures.append((k, m))
    return failures


class DualComplex:
    """``Hom(F_., S(twist))``: ``G_k = F_k^*(twist)`` with ``delta_k: G_{k-1} -> G_k``."""

    def __init__(self, res, twist):
        self.ring = res.ring
        self.twist = twist
        self.modules = [GradedFreeModule([-s - twist for s in F.shifts]) for F in res.modules]
        self.maps = [d.transpose(self.modules[k], self.modules[k + 1])
                     for k, d in enumerate(res.maps)]

    def incoming(self, k):
        return self.maps[k - 1] if 0 < k <= len(self.maps) else None

    def outgoing(self, k):
        return self.maps[k] if k < len(self.maps) else None


def dual_complex(res, twist):
    if not res.minimal:
        raise NonMinimalResolutionError("dualise a minimal resolution")
    return DualComplex(res, twist)


def homology_numerator(cx, k):
    """Hilbert numerator (over ``(1 - t)^n``) of the homology at ``G_k``."""
    if k < 0 or k >= len(cx.modules):
        return {}
    out = dict(cx.modules[k].numerator())
    inc, outg = cx.incoming(k), cx.outgoing(k)
    if inc is not None:
        out = lp_add(out, inc.image_numerator, -1)
    if outg is not None:
        out = lp_add(out, outg.image_numerator, -1)
    return out


def homology_dim(cx, k, m, method="gb"):
    """Dimension of the homology of ``cx`` at position ``k`` in degree ``m``.

    ``method="gb"`` reads it off Hilbert series of image modules;
    ``method="linear"`` ranks the degree-``m`` matrices directly.
    """
    if k < 0 or k >= len(cx.modules):
        return 0
    ring = cx.ring
    if method == "gb":
        return series_coefficient(homology_numerator(cx, k), ring.nvars, m)
    if method != "linear":
        raise ValueError(f"unknown method {method!r}")
    dim = cx.modules[k].dim(ring, m)
    inc, outg = cx.incoming(k), cx.outgoing(k)
    r_in = inc.degree_rank(m) if inc is not None else 0
    r_out = outg.degree_rank(m) if outg is not None else 0
    return dim - r_in - r_out

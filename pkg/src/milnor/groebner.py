"""Buchberger Groebner bases for ideals and graded submodules of free modules.

Module terms are packed integers, laid out (high to low bits) as

    block | degree + shift | monomial fields | component

so integer comparison is a degree-compatible term-over-position order refined
by blocks.  A block is an elimination device: every term of a higher block is
larger than every term of a lower one.  Syzygies are computed by attaching a
tag component ``e_j`` (lower block) to each generator and collecting the
elements whose upper-block part vanishes.

Homogeneous input is processed degree by degree (normal strategy), which also
lets the engine decide minimal generation by graded Nakayama: an input of
degree ``D`` is a minimal generator iff it does not reduce to zero against the
truncated basis of degree ``D``.
"""

from __future__ import annotations

import heapq
from collections import defaultdict
from functools import cached_property
from itertools import combinations

from gmpy2 import mpq

from .polyring import DEGREE_CAP, FIELD_MASK, MAXEXP, DegreeCapError, Polynomial, Ring

__all__ = [
    "ModuleEncoding",
    "FreeModuleVector",
    "GroebnerBasis",
    "ModuleGroebnerBasis",
    "SyzygyBasis",
    "Ideal",
    "groebner_basis",
    "module_groebner_basis",
    "normal_form",
    "syzygy_basis",
    "minimal_generators",
    "ideal_quotient",
    "saturate",
    "saturate_wrt_irrelevant",
    "intersect",
    "krull_dim",
    "ideal_equal",
    "contains",
    "check_groebner",
]

DEGBITS = 16
DEG_OFFSET = 1 << 12


class ModuleEncoding:
    """Packing of terms ``m * e_c`` of ``(+)_c S(-shift_c)`` into ordered ints."""

    def __init__(self, ring, shifts, blocks=None):
        self.ring = ring
        self.shifts = tuple(int(s) for s in shifts)
        self.rank = r = len(self.shifts)
        if r == 0:
            raise ValueError("free module of rank 0")
        self.blocks = tuple(blocks) if blocks is not None else (0,) * r
        if len(self.blocks) != r:
            raise ValueError("one block index per component")
        self.cb = (r - 1).bit_length()
        self.cmask = (1 << self.cb) - 1
        fb = ring.fb
        self.offsets = tuple(((b << DEGBITS) + s + DEG_OFFSET) << fb
                             for s, b in zip(self.shifts, self.blocks))
        self.dshift = self.cb + fb
        self.bshift = self.cb + fb + DEGBITS

    def term(self, comp, mono):
        return ((mono + self.offsets[comp]) << self.cb) | comp

    def split(self, t):
        comp = t & self.cmask
        return comp, (t >> self.cb) - self.offsets[comp]

    def degree(self, t):
        return ((t >> self.dshift) & ((1 << DEGBITS) - 1)) - DEG_OFFSET

    def block(self, t):
        return t >> self.bshift

    def encode_vector(self, components):
        out = {}
        for j, p in enumerate(components):
            if p:
                off = self.offsets[j]
                cb = self.cb
                for k, c in p.terms.items():
                    out[((k + off) << cb) | j] = c
        return out

    def decode_vector(self, vec):
        ring = self.ring
        comps = [dict() for _ in range(self.rank)]
        cb, cmask, offs = self.cb, self.cmask, self.offsets
        for t, c in vec.items():
            j = t & cmask
            comps[j][(t >> cb) - offs[j]] = c
        return [Polynomial(ring, d) for d in comps]


class FreeModuleVector:
    """Element of the graded free module ``(+)_j S(-shifts[j])``."""

    __slots__ = ("components", "shifts")

    def __init__(self, components, shifts=None):
        self.components = tuple(components)
        if not self.components:
            raise ValueError("empty vector")
        self.shifts = tuple(shifts) if shifts is not None else (0,) * len(self.components)
        if len(self.shifts) != len(self.components):
            raise ValueError("shifts and components differ in length")

    @property
    def ring(self):
        return self.components[0].ring

    def __len__(self):
        return len(self.components)

    def __getitem__(self, j):
        return self.components[j]

    def __iter__(self):
        return iter(self.components)

    def is_zero(self):
        return all(c.is_zero() for c in self.components)

    def degree(self):
        """Homogeneous degree ``deg(v_j) + shift_j``; ``None`` if zero or inhomogeneous."""
        degs = set()
        for c, s in zip(self.components, self.shifts):
            if c:
                d = c.homogeneous_degree()
                if d is None:
                    return None
                degs.add(d + s)
        return degs.pop() if len(degs) == 1 else None

    def is_homogeneous(self):
        return self.is_zero() or self.degree() is not None

    def __add__(self, other):
        return FreeModuleVector([a + b for a, b in zip(self, other)], self.shifts)

    def __sub__(self, other):
        return FreeModuleVector([a - b for a, b in zip(self, other)], self.shifts)

    def __neg__(self):
        return FreeModuleVector([-a for a in self], self.shifts)

    def __mul__(self, p):
        return FreeModuleVector([a * p for a in self], self.shifts)

    __rmul__ = __mul__

    def dot(self, gens):
        """``sum_j v_j * gens[j]`` for polynomials, or the combination of vectors."""
        gens = list(gens)
        if len(gens) != len(self):
            raise ValueError("length mismatch")
        if isinstance(gens[0], FreeModuleVector):
            acc = [gens[0].ring.zero()] * len(gens[0])
            for a, g in zip(self, gens):
                if a:
                    acc = [x + a * y for x, y in zip(acc, g)]
            return FreeModuleVector(acc, gens[0].shifts)
        acc = self.ring.zero()
        for a, g in zip(self, gens):
            if a:
                acc = acc + a * g
        return acc

    def primitive(self, enc=None):
        """Scale to coprime integers with positive leading coefficient (module order)."""
        from math import gcd, lcm

        coeffs = [c for p in self for c in p.terms.values()]
        if not coeffs:
            return self
        den = 1
        for c in coeffs:
            den = lcm(den, int(c.denominator))
        num = 0
        for c in coeffs:
            num = gcd(num, int(c.numerator * (den // c.denominator)))
        s = mpq(den, num)
        enc = enc or ModuleEncoding(self.ring, self.shifts)
        vec = enc.encode_vector(self.components)
        if vec[max(vec)] < 0:
            s = -s
        return FreeModuleVector([p.scale(s) for p in self], self.shifts)

    def __eq__(self, other):
        return (isinstance(other, FreeModuleVector) and self.components == other.components
                and self.shifts == other.shifts)

    def __hash__(self):
        return hash((self.components, self.shifts))

    def __str__(self):
        return "(" + ", ".join(str(c) for c in self.components) + ")"

    def __repr__(self):
        return f"FreeModuleVector{self}"


# -- the engine -------------------------------------------------------------------

class _Engine:
    """Incremental Buchberger state over a fixed :class:`ModuleEncoding`.

    ``elim`` marks elimination mode: only elements whose leading term lies in
    a block >= 1 enter the basis; elements that fall entirely into block 0 are
    collected in ``syzygies``.
    """

    def __init__(self, enc, ideal_mode=False, elim=False):
        self.enc = enc
        ring = enc.ring
        self.grevlex = ring.grevlex
        self.low = ring.low
        self.guard = ring.guard
        self.pos = ring.pos
        self.fb = ring.fb
        self.ideal_mode = ideal_mode and enc.rank == 1
        self.elim = elim
        self.lts = []
        self.ltf = []
        self.polys = []
        self.tails = []
        self.by_comp = defaultdict(list)
        self.memo = {}
        self.pairs = {}
        self.pair_heap = []
        self.syzygies = []
        self.minimal_inputs = []

    # divisibility of leading-term fields
    def _divides_fields(self, a, b):
        g = self.guard
        if self.grevlex:
            return ((a | g) - b) & g == g
        return ((b | g) - a) & g == g

    def find_reducer(self, t):
        enc = self.enc
        cands = self.by_comp.get(t & enc.cmask)
        if not cands:
            return -1
        memo = self.memo
        hit = memo.get(t)
        start = 0
        if hit is not None:
            idx, checked = hit
            if idx >= 0:
                return idx
            if checked == len(cands):
                return -1
            start = checked
        tf = (t >> enc.cb) & self.low
        g = self.guard
        ltf = self.ltf
        if self.grevlex:
            for p in range(start, len(cands)):
                idx = cands[p]
                if ((ltf[idx] | g) - tf) & g == g:
                    memo[t] = (idx, 0)
                    return idx
        else:
            for p in range(start, len(cands)):
                idx = cands[p]
                if ((tf | g) - ltf[idx]) & g == g:
                    memo[t] = (idx, 0)
                    return idx
        memo[t] = (-1, len(cands))
        return -1

    def reduce(self, vec, full=True):
        """Reduce a term dict in place against the basis; returns the reduced dict."""
        heap = [-t for t in vec]
        heapq.heapify(heap)
        pop, push = heapq.heappop, heapq.heappush
        find = self.find_reducer
        lts, tails = self.lts, self.tails
        result = {}
        while heap:
            t = -pop(heap)
            c = vec.pop(t, None)
            if c is None:
                continue
            r = find(t)
            if r < 0:
                result[t] = c
                if not full:
                    for t2, c2 in vec.items():
                        result[t2] = c2
                    return result
                continue
            delta = t - lts[r]
            get = vec.get
            for gt, gc in tails[r]:
                nt = gt + delta
                v = get(nt)
                if v is None:
                    vec[nt] = -c * gc
                    push(heap, -nt)
                else:
                    v -= c * gc
                    if v:
                        vec[nt] = v
                    else:
                        del vec[nt]
        return result

    def _lcm(self, a, b):
        enc = self.enc
        cb = enc.cb
        low = self.low
        fa = (a >> cb) & low
        fbits = (b >> cb) & low
        res = a
        top = 1 << (cb + self.fb)
        if self.grevlex:
            for p in self.pos:
                x = (fa >> p) & FIELD_MASK
                y = (fbits >> p) & FIELD_MASK
                if y < x:
                    d = x - y
                    res += d * top - (d << (cb + p))
        else:
            for p in self.pos:
                x = (fa >> p) & FIELD_MASK
                y = (fbits >> p) & FIELD_MASK
                if y > x:
                    d = y - x
                    res += d * top + (d << (cb + p))
        return res

    def _mono_degree(self, t):
        enc = self.enc
        comp = t & enc.cmask
        return enc.degree(t) - enc.shifts[comp]

    def insert(self, items):
        """Add a monic element given as a descending (term, coeff) list."""
        enc = self.enc
        idx = len(self.lts)
        lt = items[0][0]
        comp = lt & enc.cmask
        if self._mono_degree(lt) > DEGREE_CAP:
            raise DegreeCapError("Groebner basis element exceeds the degree cap")
        self._update_pairs(idx, lt, comp)
        self.lts.append(lt)
        self.ltf.append((lt >> enc.cb) & self.low)
        self.polys.append(items)
        self.tails.append(items[1:])
        self.by_comp[comp].append(idx)
        return idx

    def _update_pairs(self, h, lt, comp):
        cands = self.by_comp.get(comp, ())
        if not cands:
            return
        enc = self.enc
        cb, low = enc.cb, self.low
        ltf_h = (lt >> cb) & low
        divf = self._divides_fields
        new = {i: self._lcm(self.lts[i], lt) for i in cands}
        # chain criterion on existing pairs
        dead = []
        for key, L in self.pairs.items():
            if L & enc.cmask != comp:
                continue
            if divf(ltf_h, (L >> cb) & low):
                i, j = key
                if new[i] != L and new[j] != L:
                    dead.append(key)
        for key in dead:
            del self.pairs[key]
        # Gebauer-Moeller on the new pairs
        order = sorted(cands, key=lambda i: new[i])
        kept = []  # (lcm, [members])
        for i in order:
            L = new[i]
            Lf = (L >> cb) & low
            skip = False
            for L2, members in kept:
                if L2 == L:
                    members.append(i)
                    skip = True
                    break
                if divf((L2 >> cb) & low, Lf):
                    skip = True
                    break
            if not skip:
                kept.append((L, [i]))
        for L, members in kept:
            if self.ideal_mode:
                deg_l = self._mono_degree(L)
                coprime = any(
                    self._mono_degree(self.lts[i]) + self._mono_degree(lt) == deg_l
                    for i in members)
                if coprime:
                    continue
            i = members[0]
            self.pairs[(i, h)] = L
            heapq.heappush(self.pair_heap, (enc.degree(L), L, i, h))

    def spoly(self, i, j, L):
        di = L - self.lts[i]
        dj = L - self.lts[j]
        vec = {t + di: c for t, c in self.tails[i]}
        get = vec.get
        for t, c in self.tails[j]:
            nt = t + dj
            v = get(nt)
            if v is None:
                vec[nt] = -c
            else:
                v -= c
                if v:
                    vec[nt] = v
                else:
                    del vec[nt]
        return vec

    def _accept(self, reduced):
        """Normalise a nonzero reduced dict and file it; returns basis index or -1."""
        lt = max(reduced)
        inv = 1 / reduced[lt]
        items = sorted(((t, c * inv) for t, c in reduced.items()), reverse=True)
        if self.elim and self.enc.block(lt) == 0:
            self.syzygies.append(dict(items))
            return -1
        return self.insert(items)

    def run(self, inputs, max_degree=None, full=True):
        """Process ``inputs`` (list of (dict, degree)) together with all S-pairs.

        Returns the list of input positions that were minimal generators.
        """
        enc = self.enc
        pending = sorted(range(len(inputs)), key=lambda k: inputs[k][1])
        minimal = []
        ip = 0
        heap = self.pair_heap
        while ip < len(pending) or heap:
            dp = heap[0][0] if heap else None
            di = inputs[pending[ip]][1] if ip < len(pending) else None
            D = di if dp is None else (dp if di is None else min(dp, di))
            if max_degree is not None and D > max_degree:
                break
            while heap and heap[0][0] == D:
                _, L, i, j = heapq.heappop(heap)
                if self.pairs.pop((i, j), None) is None:
                    continue
                vec = self.reduce(self.spoly(i, j, L), full)
                if vec:
                    self._accept(vec)
            while ip < len(pending) and inputs[pending[ip]][1] == D:
                k = pending[ip]
                ip += 1
                vec = self.reduce(dict(inputs[k][0]), full)
                if vec:
                    minimal.append(k)
                    self._accept(vec)
                # new pairs created here have degree > D for homogeneous data,
                # but inhomogeneous data may create lower ones
                if heap and heap[0][0] < D:
                    break
        self.minimal_inputs = minimal
        return minimal

    def interreduce(self):
        """Drop redundant leading terms and tail-reduce; returns descending item lists."""
        enc = self.enc
        order = sorted(range(len(self.lts)), key=lambda i: self.lts[i])
        keep = []
        for i in order:
            fi = self.ltf[i]
            ci = self.lts[i] & enc.cmask
            if any(self.lts[j] & enc.cmask == ci and self._divides_fields(self.ltf[j], fi)
                   for j in keep):
                continue
            keep.append(i)
        fresh = _Engine(enc, self.ideal_mode)
        for i in keep:
            fresh.lts.append(self.lts[i])
            fresh.ltf.append(self.ltf[i])
            fresh.polys.append(self.polys[i])
            fresh.tails.append(self.tails[i])
            fresh.by_comp[self.lts[i] & enc.cmask].append(len(fresh.lts) - 1)
        out = []
        for n, i in enumerate(keep):
            lt = self.lts[i]
            # reduce the tail against the other elements only
            saved = fresh.by_comp[lt & enc.cmask]
            fresh.by_comp[lt & enc.cmask] = [m for m in saved if m != n]
            fresh.memo = {}
            tail = fresh.reduce({t: c for t, c in self.tails[i]})
            fresh.by_comp[lt & enc.cmask] = saved
            items = [(lt, self.polys[i][0][1])] + sorted(tail.items(), reverse=True)
            out.append(items)
        for n, items in enumerate(out):
            fresh.polys[n] = items
            fresh.tails[n] = items[1:]
        fresh.memo = {}
        return fresh


# -- public Groebner basis objects ---------------------------------------------------

class GroebnerBasis:
    """Reduced Groebner basis of an ideal."""

    def __init__(self, ring, engine):
        self.ring = ring
        self.order = ring.order
        self._engine = engine
        enc = engine.enc
        self.generators = [Polynomial(ring, {enc.split(t)[1]: c for t, c in items})
                           for items in engine.polys]
        self.generators.sort(key=lambda p: max(p.terms))
        self.reduced = True

    def __len__(self):
        return len(self.generators)

    def __iter__(self):
        return iter(self.generators)

    def leading_monomials(self):
        return [max(g.terms) for g in self.generators]

    def leading_exponents(self):
        return [self.ring.decode(k) for k in self.leading_monomials()]

    def is_unit(self):
        return any(g.is_constant() for g in self.generators)

    def normal_form(self, p):
        if p.ring != self.ring:
            p = p.to_ring(self.ring)
        enc = self._engine.enc
        vec = enc.encode_vector([p])
        red = self._engine.reduce(vec)
        return enc.decode_vector(red)[0]

    def contains(self, p):
        return self.normal_form(p).is_zero()

    def __eq__(self, other):
        return (isinstance(other, GroebnerBasis) and self.ring == other.ring
                and set(self.generators) == set(other.generators))

    def __hash__(self):
        return hash(frozenset(self.generators))


class ModuleGroebnerBasis:
    """Groebner basis of a graded submodule of ``(+)_j S(-shifts[j])``."""

    def __init__(self, ring, shifts, engine):
        self.ring = ring
        self.shifts = tuple(shifts)
        self._engine = engine
        enc = engine.enc
        self.generators = [FreeModuleVector(enc.decode_vector(dict(items)), self.shifts)
                           for items in engine.polys]

    def leading_terms(self):
        """(component, monomial key) of each leading term."""
        enc = self._engine.enc
        return [enc.split(items[0][0]) for items in self._engine.polys]

    def normal_form(self, v):
        enc = self._engine.enc
        vec = enc.encode_vector(v.components)
        red = self._engine.reduce(vec)
        return FreeModuleVector(enc.decode_vector(red), self.shifts)

    def contains(self, v):
        return self.normal_form(v).is_zero()


def _as_polys(gens):
    gens = list(gens.generators if isinstance(gens, Ideal) else gens)
    if not gens:
        raise ValueError("need at least one generator")
    return gens


def groebner_basis(gens, order=None):
    """Reduced Groebner basis of the ideal generated by ``gens``."""
    gens = _as_polys(gens)
    ring = gens[0].ring
    if order is not None and order != ring.order:
        ring = ring.with_order(order)
        gens = [g.to_ring(ring) for g in gens]
    enc = ModuleEncoding(ring, [0])
    inputs = []
    for g in gens:
        if g.ring != ring:
            raise ValueError("generators live in different rings")
        if g:
            inputs.append((enc.encode_vector([g]), g.degree()))
    engine = _Engine(enc, ideal_mode=True)
    if inputs:
        engine.run(inputs)
    return GroebnerBasis(ring, engine.interreduce())


def normal_form(p, gb):
    return gb.normal_form(p)


def module_groebner_basis(vectors, shifts=None):
    vectors = list(vectors)
    ring = vectors[0].ring
    shifts = tuple(shifts) if shifts is not None else vectors[0].shifts
    enc = ModuleEncoding(ring, shifts)
    inputs = []
    for v in vectors:
        if not v.is_zero():
            d = v.degree()
            if d is None:
                raise ValueError("module generators must be homogeneous")
            inputs.append((enc.encode_vector(v.components), d))
    engine = _Engine(enc)
    engine.run(inputs)
    return ModuleGroebnerBasis(ring, shifts, engine.interreduce())


def check_groebner(gb):
    """Independent re-check: every S-pair of ``gb`` reduces to zero."""
    if isinstance(gb, GroebnerBasis):
        ring = gb.ring
        enc = ModuleEncoding(ring, [0])
        vecs = [enc.encode_vector([g]) for g in gb.generators]
    else:
        enc = gb._engine.enc
        vecs = [enc.encode_vector(g.components) for g in gb.generators]
    probe = _Engine(enc)
    for v in vecs:
        lt = max(v)
        inv = 1 / v[lt]
        probe.insert(sorted(((t, c * inv) for t, c in v.items()), reverse=True))
    for i, j in combinations(range(len(vecs)), 2):
        a, b = probe.lts[i], probe.lts[j]
        if a & enc.cmask != b & enc.cmask:
            continue
        L = probe._lcm(a, b)
        if probe.reduce(probe.spoly(i, j, L)):
            return False
    return True


# -- syzygies and minimal generators -------------------------------------------------

class SyzygyBasis:
    """Minimal homogeneous generators of the relations among ``generators``.

    ``shifts`` are the generator degrees, so a relation ``r`` lives in
    ``(+)_j S(-shifts[j])``; ``degrees`` are measured relative to the lowest
    generator degree, i.e. they are coefficient degrees when all generators
    share one degree.
    """

    def __init__(self, relations, shifts, module_degrees):
        self.relations = list(relations)
        self.shifts = tuple(shifts)
        self.module_degrees = list(module_degrees)
        base = min(self.shifts) if self.shifts else 0
        self.degrees = [d - base for d in self.module_degrees]

    def __len__(self):
        return len(self.relations)

    def __iter__(self):
        return iter(self.relations)

    def __getitem__(self, i):
        return self.relations[i]


def _normalize_gens(gens, degrees):
    """Turn polynomials or vectors into (ring, ambient shifts, vectors, degrees)."""
    gens = list(gens)
    if not gens:
        raise ValueError("need at least one generator")
    if isinstance(gens[0], Polynomial):
        ring = gens[0].ring
        vecs = [FreeModuleVector([g]) for g in gens]
    else:
        ring = gens[0].ring
        vecs = gens
    ambient = vecs[0].shifts
    if degrees is None:
        degrees = []
        nonzero = [v.degree() for v in vecs if not v.is_zero()]
        for v in vecs:
            if v.is_zero():
                if not nonzero:
                    raise ValueError("cannot infer degrees of zero generators")
                degrees.append(max(set(nonzero), key=nonzero.count))
            else:
                d = v.degree()
                if d is None:
                    raise ValueError("generators must be homogeneous")
                degrees.append(d)
    degrees = [int(d) for d in degrees]
    for v, d in zip(vecs, degrees):
        if not v.is_zero() and v.degree() != d:
            raise ValueError("declared degree does not match generator")
    return ring, ambient, vecs, degrees


def _syzygy_generators(ring, ambient, vecs, degrees):
    """Generators (not necessarily minimal) of the syzygy module, as term dicts
    in the tag encoding ``(+)_j S(-degrees[j])``."""
    m, r = len(ambient), len(vecs)
    enc = ModuleEncoding(ring, list(ambient) + list(degrees), [1] * m + [0] * r)
    tag = ModuleEncoding(ring, degrees)
    inputs = []
    for j, (v, d) in enumerate(zip(vecs, degrees)):
        comps = list(v.components) + [ring.zero()] * r
        comps[m + j] = ring.constant(1)
        inputs.append((enc.encode_vector(comps), d))
    engine = _Engine(enc, elim=True)
    engine.run(inputs)
    out = []
    for syz in engine.syzygies:
        comps = enc.decode_vector(syz)[m:]
        out.append(tag.encode_vector(comps))
    return tag, out


def minimal_generators(vectors, shifts=None, degrees=None):
    """Minimal homogeneous generators of a graded submodule (graded Nakayama).

    Returns (list of reduced minimal generators, their degrees), in degree order.
    """
    vectors = list(vectors)
    if isinstance(vectors[0], Polynomial):
        ring = vectors[0].ring
        vectors = [FreeModuleVector([v]) for v in vectors]
    ring = vectors[0].ring
    shifts = tuple(shifts) if shifts is not None else vectors[0].shifts
    enc = ModuleEncoding(ring, shifts)
    inputs = []
    for v in vectors:
        if not v.is_zero():
            d = v.degree()
            if d is None:
                raise ValueError("generators must be homogeneous")
            inputs.append((enc.encode_vector(v.components), d))
    return _mingens_from_dicts(ring, enc, inputs)


def _mingens_from_dicts(ring, enc, inputs):
    if not inputs:
        return [], []
    engine = _Engine(enc, ideal_mode=enc.rank == 1)
    top = max(d for _, d in inputs)
    minimal = engine.run(inputs, max_degree=top)
    # each minimal input is returned reduced against the basis of lower degrees
    lower = _Engine(enc, ideal_mode=enc.rank == 1)
    gens, degs = [], []
    by_degree = defaultdict(list)
    for k in minimal:
        by_degree[inputs[k][1]].append(k)
    basis_by_degree = defaultdict(list)
    for items in engine.polys:
        basis_by_degree[enc.degree(items[0][0])].append(items)
    for D in sorted(set(d for _, d in inputs) | set(basis_by_degree)):
        for k in by_degree.get(D, ()):
            red = lower.reduce(dict(inputs[k][0]))
            gens.append(FreeModuleVector(enc.decode_vector(red), enc.shifts))
            degs.append(D)
        for items in basis_by_degree.get(D, ()):
            lower.insert(items)
    return gens, degs


def syzygy_basis(gens, degrees=None):
    """Minimal homogeneous generators of ``{a : sum_j a_j g_j = 0}``.

    ``gens`` are polynomials or vectors of one free module.  ``degrees`` fixes
    the degree attached to each generator (needed for zero generators).
    """
    ring, ambient, vecs, degrees = _normalize_gens(gens, degrees)
    tag, dicts = _syzygy_generators(ring, ambient, vecs, degrees)
    inputs = [(d, tag.degree(max(d))) for d in dicts]
    rels, degs = _mingens_from_dicts(ring, tag, inputs)
    rels = [v.primitive(tag) for v in rels]
    order = sorted(range(len(rels)), key=lambda i: degs[i])
    return SyzygyBasis([rels[i] for i in order], degrees, [degs[i] for i in order])


# -- ideals ----------------------------------------------------------------------------

class Ideal:
    """Ideal given by generators, with a lazily computed Groebner basis."""

    def __init__(self, gens, ring=None):
        gens = list(gens.generators if isinstance(gens, Ideal) else gens)
        if ring is None:
            if not gens:
                raise ValueError("ring required for the empty generator list")
            ring = gens[0].ring
        self.ring = ring
        self.generators = [g for g in gens if not g.is_zero()]

    @cached_property
    def gb(self):
        if not self.generators:
            return GroebnerBasis(self.ring, _Engine(ModuleEncoding(self.ring, [0])))
        return groebner_basis(self.generators)

    def is_homogeneous(self):
        return all(g.is_homogeneous() for g in self.generators)

    def is_unit(self):
        return self.gb.is_unit()

    def contains(self, p):
        return self.gb.contains(p)

    def __eq__(self, other):
        return ideal_equal(self, other)

    def __hash__(self):
        return hash(frozenset(self.gb.generators))

    def __repr__(self):
        return "Ideal(" + ", ".join(str(g) for g in self.generators) + ")"


def _ideal(I):
    if isinstance(I, Ideal):
        return I
    return Ideal(list(I))


def ideal_equal(I, J):
    I, J = _ideal(I), _ideal(J)
    return set(I.gb.generators) == set(J.gb.generators)


def contains(I, p):
    return _ideal(I).contains(p)


def intersect(I, J):
    """``I cap J`` from the module generated by ``(f, f)`` and ``(g, 0)`` in ``S^2``,
    eliminating the first component."""
    I, J = _ideal(I), _ideal(J)
    ring = I.ring
    if not I.generators or not J.generators:
        return Ideal([], ring)
    enc = ModuleEncoding(ring, [0, 0], [1, 0])
    inputs = []
    for f in I.generators:
        inputs.append((enc.encode_vector([f, f]), _hdeg(f)))
    for g in J.generators:
        inputs.append((enc.encode_vector([g, ring.zero()]), _hdeg(g)))
    engine = _Engine(enc, elim=True)
    engine.run(inputs)
    gens = [enc.decode_vector(s)[1] for s in engine.syzygies]
    return Ideal(gens, ring)


def _hdeg(p):
    d = p.homogeneous_degree()
    if d is None:
        raise ValueError("homogeneous input required")
    return d


def ideal_quotient(I, g):
    """``(I : g)`` via the first components of the syzygies of ``(g, f_1, ..., f_s)``."""
    I = _ideal(I)
    ring = I.ring
    if g.is_zero():
        raise ValueError("quotient by zero")
    if not I.generators:
        return Ideal([], ring)
    vecs = [FreeModuleVector([g])] + [FreeModuleVector([f]) for f in I.generators]
    degrees = [_hdeg(g)] + [_hdeg(f) for f in I.generators]
    _, ambient, vecs, degrees = _normalize_gens(vecs, degrees)
    tag, dicts = _syzygy_generators(ring, ambient, vecs, degrees)
    gens = [tag.decode_vector(d)[0] for d in dicts]
    return Ideal(gens, ring)


def _saturate_variable(I, i):
    """``I : x_i^inf`` by the grevlex trick with ``x_i`` ordered last."""
    ring = I.ring
    names = list(ring.variables)
    names.append(names.pop(i))
    R2 = Ring(names, "grevlex")
    gb = groebner_basis([g.to_ring(R2) for g in I.generators])
    p = R2.pos[-1]
    out = []
    for g in gb.generators:
        # smallest exponent of x_i over the terms
        e = MAXEXP - max(((t >> p) & FIELD_MASK) for t in g.terms)
        exps = [0] * R2.nvars
        exps[-1] = e
        out.append(g.divide_exact(R2.monomial(exps)).to_ring(ring) if e else g.to_ring(ring))
    return Ideal(out, ring)


def saturate(I, g):
    """``I : g^inf``; stabilisation of iterated quotients (variables take a shortcut)."""
    I = _ideal(I)
    if not I.generators:
        return I
    if len(g.terms) == 1 and g.degree() == 1 and I.is_homogeneous():
        exps = g.leading_monomial()
        return _saturate_variable(I, exps.index(1))
    J = I
    while True:
        J2 = ideal_quotient(J, g)
        if ideal_equal(J2, J):
            return J
        J = J2


def saturate_wrt_irrelevant(I):
    """``I : Q^inf`` for ``Q = (x_0, ..., x_n)``, as the intersection of the
    saturations by the variables."""
    I = _ideal(I)
    if not I.generators:
        return I
    ring = I.ring
    result = None
    for i in range(ring.nvars):
        Si = saturate(I, ring.gen(i))
        if Si.is_unit():
            continue
        result = Si if result is None else intersect(result, Si)
    if result is None:
        return Ideal([ring.constant(1)], ring)
    return result


def krull_dim(I):
    """Krull dimension of ``S/I`` from the leading-term ideal; ``-1`` for ``(1)``."""
    I = _ideal(I)
    ring = I.ring
    n = ring.nvars
    if not I.generators:
        return n
    if I.is_unit():
        return -1
    supports = []
    for exps in I.gb.leading_exponents():
        supports.append(sum(1 << i for i, e in enumerate(exps) if e))
    best = 0
    for mask in range(1 << n):
        size = bin(mask).count("1")
        if size > best and all(s & ~mask for s in supports):
            best = size
    return best

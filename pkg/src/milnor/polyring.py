"""Exact sparse multivariate polynomials over the rationals.

Monomials are stored as packed integers whose natural integer order is the
monomial order of the ring.  The layout (low bits to high bits) is one 8-bit
field per variable followed by the total degree:

* grevlex: the field of variable ``i`` sits at position ``i`` and holds
  ``127 - e_i``, so a larger field in the last variable means a larger monomial;
* grlex: the field of variable ``i`` sits at position ``n - i`` and holds ``e_i``.

With this layout ``key(a * b) == key(a) + key(b) - ring.c0`` and divisibility
is a single guarded subtraction.  Coefficients are ``gmpy2.mpq``.
"""

from __future__ import annotations

import re
from fractions import Fraction
from itertools import combinations_with_replacement

from gmpy2 import mpq

__all__ = [
    "DEGREE_CAP",
    "DegreeCapError",
    "PolynomialSyntaxError",
    "UnknownVariableError",
    "Ring",
    "Polynomial",
    "to_mpq",
    "parse_polynomial",
    "differentiate",
    "jacobian",
    "is_homogeneous",
    "squarefree_check",
]

DEGREE_CAP = 64
FIELD = 8
FIELD_MASK = 0xFF
MAXEXP = 127
ORDERS = ("grevlex", "grlex")


class DegreeCapError(ArithmeticError):
    """A monomial degree exceeded :data:`DEGREE_CAP`."""


class PolynomialSyntaxError(ValueError):
    def __init__(self, message, position=None):
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)
        self.position = position


class UnknownVariableError(PolynomialSyntaxError):
    pass


def to_mpq(c):
    if isinstance(c, Fraction):
        return mpq(c.numerator, c.denominator)
    if isinstance(c, str):
        return mpq(Fraction(c).numerator, Fraction(c).denominator)
    return mpq(c)


class Ring:
    """Graded polynomial ring ``Q[x_0, ..., x_n]`` with a fixed monomial order."""

    def __init__(self, variables, order="grevlex"):
        if isinstance(variables, str):
            variables = [v.strip() for v in variables.split(",") if v.strip()]
        variables = tuple(variables)
        if len(variables) < 2:
            raise ValueError("a ring needs at least two variables")
        if len(set(variables)) != len(variables) or not all(variables):
            raise ValueError(f"variable names must be unique and non-empty: {variables}")
        for v in variables:
            if not re.fullmatch(r"[A-Za-z_][A-Za-z0-9_]*", v):
                raise ValueError(f"invalid variable name {v!r}")
        if order not in ORDERS:
            raise ValueError(f"unknown monomial order {order!r}")
        self.variables = variables
        self.nvars = n = len(variables)
        self.order = order
        self.grevlex = order == "grevlex"
        self.fb = FIELD * n
        self.low = (1 << self.fb) - 1
        if self.grevlex:
            self.pos = tuple(FIELD * i for i in range(n))
            self.c0 = sum(MAXEXP << p for p in self.pos)
        else:
            self.pos = tuple(FIELD * (n - 1 - i) for i in range(n))
            self.c0 = 0
        self.guard = sum(0x80 << p for p in self.pos)
        self.one = self.c0
        self._index = {v: i for i, v in enumerate(variables)}

    def __repr__(self):
        return f"Ring({','.join(self.variables)}; {self.order})"

    def __eq__(self, other):
        return (isinstance(other, Ring) and self.variables == other.variables
                and self.order == other.order)

    def __hash__(self):
        return hash((self.variables, self.order))

    def with_order(self, order):
        return self if order == self.order else Ring(self.variables, order)

    def index(self, name):
        try:
            return self._index[name]
        except KeyError:
            raise UnknownVariableError(f"unknown variable {name!r}") from None

    # -- monomial keys -------------------------------------------------------

    def encode(self, exps):
        if len(exps) != self.nvars:
            raise ValueError("exponent vector has the wrong length")
        deg = 0
        key = 0
        for e, p in zip(exps, self.pos):
            if e < 0:
                raise ValueError("negative exponent")
            deg += e
            key |= ((MAXEXP - e) if self.grevlex else e) << p
        if deg > DEGREE_CAP:
            raise DegreeCapError(f"degree {deg} exceeds cap {DEGREE_CAP}")
        return key | (deg << self.fb)

    def decode(self, key):
        if self.grevlex:
            return tuple(MAXEXP - ((key >> p) & FIELD_MASK) for p in self.pos)
        return tuple((key >> p) & FIELD_MASK for p in self.pos)

    def key_degree(self, key):
        return key >> self.fb

    def key_mul(self, a, b):
        return a + b - self.c0

    def key_divides(self, a, b):
        """True when monomial ``a`` divides monomial ``b``."""
        low, g = self.low, self.guard
        if self.grevlex:
            return (((a & low) | g) - (b & low)) & g == g
        return (((b & low) | g) - (a & low)) & g == g

    def key_quotient(self, b, a):
        return b - a + self.c0

    def monomial_keys(self, degree):
        """All monomials of the given degree, as keys."""
        n = self.nvars
        for combo in combinations_with_replacement(range(n), degree):
            exps = [0] * n
            for i in combo:
                exps[i] += 1
            yield self.encode(exps)

    # -- construction --------------------------------------------------------

    def gen(self, i):
        if isinstance(i, str):
            i = self.index(i)
        exps = [0] * self.nvars
        exps[i] = 1
        return Polynomial(self, {self.encode(exps): mpq(1)})

    def gens(self):
        return [self.gen(i) for i in range(self.nvars)]

    def zero(self):
        return Polynomial(self, {})

    def constant(self, c):
        c = to_mpq(c)
        return Polynomial(self, {self.one: c} if c else {})

    def monomial(self, exps, coeff=1):
        c = to_mpq(coeff)
        return Polynomial(self, {self.encode(exps): c} if c else {})

    def from_dict(self, terms):
        out = {}
        for exps, c in terms.items():
            c = to_mpq(c)
            if c:
                k = self.encode(exps)
                v = out.get(k, 0) + c
                if v:
                    out[k] = v
                else:
                    out.pop(k, None)
        return Polynomial(self, out)

    def __call__(self, text):
        return parse_polynomial(text, self)


class Polynomial:
    """Immutable sparse polynomial; ``terms`` maps monomial keys to nonzero mpq."""

    __slots__ = ("ring", "terms", "_hash")

    def __init__(self, ring, terms):
        self.ring = ring
        self.terms = terms
        self._hash = None

    # -- basic queries -------------------------------------------------------

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self):
        return not self.terms

    def __len__(self):
        return len(self.terms)

    def degree(self):
        if not self.terms:
            return -1
        return max(self.terms) >> self.ring.fb

    def homogeneous_degree(self):
        """Degree if every term has the same degree, else ``None`` (zero -> None)."""
        if not self.terms:
            return None
        fb = self.ring.fb
        degs = {k >> fb for k in self.terms}
        return degs.pop() if len(degs) == 1 else None

    def is_homogeneous(self):
        return not self.terms or self.homogeneous_degree() is not None

    def leading_key(self):
        return max(self.terms)

    def leading_coefficient(self):
        return self.terms[max(self.terms)] if self.terms else mpq(0)

    def leading_monomial(self):
        return self.ring.decode(max(self.terms))

    def items(self):
        """(exponent tuple, coefficient) pairs, largest monomial first."""
        dec = self.ring.decode
        return [(dec(k), self.terms[k]) for k in sorted(self.terms, reverse=True)]

    def coefficient(self, exps):
        return self.terms.get(self.ring.encode(exps), mpq(0))

    def variables_used(self):
        used = set()
        for k in self.terms:
            for i, e in enumerate(self.ring.decode(k)):
                if e:
                    used.add(i)
        return used

    def is_constant(self):
        return not self.terms or set(self.terms) == {self.ring.one}

    def constant_value(self):
        return self.terms.get(self.ring.one, mpq(0))

    # -- arithmetic ----------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, Polynomial):
            if other.ring != self.ring:
                raise ValueError("polynomials live in different rings")
            return other
        return self.ring.constant(other)

    def __add__(self, other):
        other = self._coerce(other)
        out = dict(self.terms)
        for k, c in other.terms.items():
            v = out.get(k)
            if v is None:
                out[k] = c
            else:
                v = v + c
                if v:
                    out[k] = v
                else:
                    del out[k]
        return Polynomial(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial(self.ring, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def scale(self, c):
        c = to_mpq(c)
        if not c:
            return self.ring.zero()
        return Polynomial(self.ring, {k: v * c for k, v in self.terms.items()})

    def mul_term(self, key, coeff):
        """Multiply by ``coeff`` times the monomial with packed ``key``."""
        ring = self.ring
        if self.terms and (max(self.terms) >> ring.fb) + (key >> ring.fb) > DEGREE_CAP:
            raise DegreeCapError("product degree exceeds cap")
        sh = key - ring.c0
        return Polynomial(ring, {k + sh: c * coeff for k, c in self.terms.items()})

    def __mul__(self, other):
        if not isinstance(other, Polynomial):
            return self.scale(other)
        other = self._coerce(other)
        if not self.terms or not other.terms:
            return self.ring.zero()
        ring = self.ring
        fb = ring.fb
        if (max(self.terms) >> fb) + (max(other.terms) >> fb) > DEGREE_CAP:
            raise DegreeCapError("product degree exceeds cap")
        a, b = self.terms, other.terms
        if len(a) < len(b):
            a, b = b, a
        c0 = ring.c0
        out = {}
        get = out.get
        for kb, cb in b.items():
            sh = kb - c0
            for ka, ca in a.items():
                k = ka + sh
                v = get(k)
                if v is None:
                    out[k] = ca * cb
                else:
                    out[k] = v + ca * cb
        return Polynomial(ring, {k: v for k, v in out.items() if v})

    __rmul__ = __mul__

    def __pow__(self, e):
        if not isinstance(e, int) or e < 0:
            raise ValueError("exponent must be a non-negative integer")
        result = self.ring.constant(1)
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def __truediv__(self, other):
        if isinstance(other, Polynomial):
            if not other.is_constant() or other.is_zero():
                raise ZeroDivisionError("division only by nonzero constants")
            other = other.constant_value()
        other = to_mpq(other)
        if not other:
            raise ZeroDivisionError("division by zero")
        return self.scale(1 / other)

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.ring == other.ring and self.terms == other.terms
        try:
            return self.terms == self.ring.constant(other).terms
        except (TypeError, ValueError):
            return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring, frozenset(self.terms.items())))
        return self._hash

    def monic(self):
        if not self.terms:
            return self
        return self.scale(1 / self.leading_coefficient())

    def primitive(self):
        """Scale to coprime integer coefficients with positive leading coefficient."""
        if not self.terms:
            return self
        from math import gcd, lcm

        den = 1
        for c in self.terms.values():
            den = lcm(den, int(c.denominator))
        num = 0
        for c in self.terms.values():
            num = gcd(num, int(c.numerator * (den // c.denominator)))
        s = mpq(den, num)
        if self.leading_coefficient() < 0:
            s = -s
        return self.scale(s)

    def divide_exact(self, divisor):
        """Return ``q`` with ``self == q * divisor`` or raise ``ValueError``."""
        divisor = self._coerce(divisor)
        if not divisor.terms:
            raise ZeroDivisionError("division by zero polynomial")
        ring = self.ring
        lk = max(divisor.terms)
        lc = divisor.terms[lk]
        rem = dict(self.terms)
        quot = {}
        while rem:
            k = max(rem)
            if not ring.key_divides(lk, k):
                raise ValueError("polynomial division is not exact")
            qk = ring.key_quotient(k, lk)
            qc = rem[k] / lc
            quot[qk] = qc
            sh = qk - ring.c0
            for dk, dc in divisor.terms.items():
                t = dk + sh
                v = rem.get(t, 0) - qc * dc
                if v:
                    rem[t] = v
                else:
                    rem.pop(t, None)
        return Polynomial(ring, quot)

    def diff(self, i):
        ring = self.ring
        if isinstance(i, str):
            i = ring.index(i)
        if not 0 <= i < ring.nvars:
            raise IndexError(f"variable index {i} out of range")
        p = ring.pos[i]
        fb = ring.fb
        out = {}
        for k, c in self.terms.items():
            f = (k >> p) & FIELD_MASK
            e = MAXEXP - f if ring.grevlex else f
            if e:
                nk = k - (1 << fb) + ((1 << p) if ring.grevlex else -(1 << p))
                out[nk] = c * e
        return Polynomial(ring, out)

    def compose(self, images):
        """Substitute ``images[i]`` for variable ``i`` (images may live in another ring)."""
        if len(images) != self.ring.nvars:
            raise ValueError("need one image per variable")
        target = images[0].ring
        cache = [{0: target.constant(1), 1: img} for img in images]

        def power(i, e):
            c = cache[i]
            if e not in c:
                c[e] = power(i, e - 1) * images[i]
            return c[e]

        acc = {}
        for exps, coeff in self.items():
            term = target.constant(coeff)
            for i, e in enumerate(exps):
                if e:
                    term = term * power(i, e)
            for k, v in term.terms.items():
                acc[k] = acc.get(k, 0) + v
        return Polynomial(target, {k: v for k, v in acc.items() if v})

    def to_ring(self, ring, mapping=None):
        """Re-read in ``ring``; variables matched by name unless ``mapping`` is given.

        ``mapping`` sends source variable index to target variable index.
        """
        if ring == self.ring:
            return self
        if mapping is None:
            mapping = [ring.index(v) for v in self.ring.variables]
        out = {}
        n = ring.nvars
        for k, c in self.terms.items():
            exps = [0] * n
            for i, e in enumerate(self.ring.decode(k)):
                if e:
                    exps[mapping[i]] += e
            out[ring.encode(exps)] = c
        return Polynomial(ring, out)

    def evaluate(self, point):
        total = mpq(0)
        for exps, c in self.items():
            v = c
            for x, e in zip(point, exps):
                if e:
                    v *= to_mpq(x) ** e
            total += v
        return total

    # -- printing ------------------------------------------------------------

    def __str__(self):
        if not self.terms:
            return "0"
        names = self.ring.variables
        parts = []
        for exps, c in self.items():
            mono = "*".join(
                names[i] if e == 1 else f"{names[i]}^{e}" for i, e in enumerate(exps) if e
            )
            neg = c < 0
            a = -c if neg else c
            if not mono:
                body = _fmt(a)
            elif a == 1:
                body = mono
            else:
                body = f"{_fmt(a)}*{mono}"
            if not parts:
                parts.append(("-" if neg else "") + body)
            else:
                parts.append((" - " if neg else " + ") + body)
        return "".join(parts)

    def __repr__(self):
        return f"Polynomial({self})"


def _fmt(c):
    if c.denominator == 1:
        return str(int(c.numerator))
    return f"{int(c.numerator)}/{int(c.denominator)}"


# -- parsing -------------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z0-9_]*)|(\*\*|[-+*/^()]))")


def _tokenize(text):
    tokens = []
    pos = 0
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            bad = pos
            while bad < len(text) and text[bad].isspace():
                bad += 1
            raise PolynomialSyntaxError(f"unexpected character {text[bad]!r}", bad)
        start = m.start(m.lastindex)
        if m.group(1):
            tokens.append(("int", int(m.group(1)), start))
        elif m.group(2):
            tokens.append(("name", m.group(2), start))
        else:
            op = m.group(3)
            tokens.append(("op", "^" if op == "**" else op, start))
        pos = m.end()
    tokens.append(("end", None, len(text)))
    return tokens


def _split_name(name, ring, position):
    """Split ``xyz`` into known variable names (longest match first)."""
    if name in ring._index:
        return [name]
    names = sorted(ring.variables, key=len, reverse=True)
    memo = {}

    def split(i):
        if i == len(name):
            return []
        if i in memo:
            return memo[i]
        memo[i] = None
        for v in names:
            if name.startswith(v, i):
                rest = split(i + len(v))
                if rest is not None:
                    memo[i] = [v] + rest
                    break
        return memo[i]

    parts = split(0)
    if parts is None:
        raise UnknownVariableError(f"unknown variable {name!r}", position)
    return parts


class _Parser:
    def __init__(self, text, ring):
        self.ring = ring
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def take(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect(self, value):
        tok = self.take()
        if tok[0] != "op" or tok[1] != value:
            raise PolynomialSyntaxError(f"expected {value!r}", tok[2])

    def parse(self):
        if self.peek()[0] == "end":
            raise PolynomialSyntaxError("empty polynomial", 0)
        p = self.expr()
        tok = self.peek()
        if tok[0] != "end":
            raise PolynomialSyntaxError(f"unexpected token {tok[1]!r}", tok[2])
        return p

    def expr(self):
        tok = self.peek()
        sign = 1
        if tok[0] == "op" and tok[1] in "+-":
            self.take()
            sign = -1 if tok[1] == "-" else 1
        p = self.term()
        if sign < 0:
            p = -p
        while True:
            tok = self.peek()
            if tok[0] == "op" and tok[1] in "+-":
                self.take()
                q = self.term()
                p = p + q if tok[1] == "+" else p - q
            else:
                return p

    def term(self):
        p = self.factor()
        while True:
            tok = self.peek()
            if tok[0] == "op" and tok[1] == "*":
                self.take()
                p = p * self.factor()
            elif tok[0] == "op" and tok[1] == "/":
                self.take()
                q = self.factor()
                if not q.is_constant() or q.is_zero():
                    raise PolynomialSyntaxError("division only by nonzero constants", tok[2])
                p = p / q
            elif tok[0] == "name" or (tok[0] == "op" and tok[1] == "("):
                p = p * self.factor()
            else:
                return p

    def factor(self):
        tok = self.peek()
        if tok[0] == "op" and tok[1] == "-":
            self.take()
            return -self.factor()
        base = self.atom()
        tok = self.peek()
        if tok[0] == "op" and tok[1] == "^":
            self.take()
            e = self.take()
            if e[0] != "int":
                raise PolynomialSyntaxError("exponent must be a non-negative integer", e[2])
            base = base ** e[1]
        return base

    def atom(self):
        tok = self.take()
        kind, value, position = tok
        if kind == "int":
            return self.ring.constant(value)
        if kind == "name":
            parts = _split_name(value, self.ring, position)
            p = self.ring.gen(parts[0])
            for v in parts[1:]:
                p = p * self.ring.gen(v)
            return p
        if kind == "op" and value == "(":
            p = self.expr()
            self.expect(")")
            return p
        if kind == "end":
            raise PolynomialSyntaxError("unexpected end of input", position)
        raise PolynomialSyntaxError(f"unexpected token {value!r}", position)


def parse_polynomial(text, ring):
    """Parse ``text`` (integers, variables, ``+ - * / ^ ( )``, juxtaposition)."""
    if isinstance(ring, (list, tuple, str)):
        ring = Ring(ring)
    return _Parser(text, ring).parse()


# -- derivatives and predicates ---------------------------------------------------

def differentiate(p, i):
    return p.diff(i)


def jacobian(f):
    """The partial derivatives of a homogeneous ``f``, in variable order."""
    if not f.is_homogeneous():
        raise ValueError("jacobian requires a homogeneous polynomial")
    return [f.diff(i) for i in range(f.ring.nvars)]


def is_homogeneous(p):
    """Degree of ``p`` when homogeneous, otherwise ``None``."""
    if p.is_zero():
        return None
    return p.homogeneous_degree()


def _to_sympy(p, symbols):
    import sympy

    terms = {exps: sympy.Rational(int(c.numerator), int(c.denominator))
             for exps, c in p.items()}
    return sympy.Poly.from_dict(terms, *symbols, domain="QQ")


def squarefree_check(f):
    """True iff ``f`` has no repeated irreducible factor (gcd with all partials)."""
    import sympy

    if f.is_zero():
        raise ValueError("zero polynomial")
    symbols = sympy.symbols(" ".join(f"v{i}" for i in range(f.ring.nvars)))
    g = _to_sympy(f, symbols)
    for i in range(f.ring.nvars):
        fi = f.diff(i)
        if fi.is_zero():
            continue
        g = g.gcd(_to_sympy(fi, symbols))
        if g.total_degree() == 0:
            return True
    return g.total_degree() == 0

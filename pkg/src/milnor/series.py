"""Laurent polynomials in t, Hilbert numerators of monomial ideals and
Hilbert polynomials of rational series ``N(t) / (1 - t)^r``.

Laurent polynomials are plain dicts ``exponent -> integer coefficient``.
"""

from __future__ import annotations

from fractions import Fraction
from math import comb

__all__ = [
    "lp_add",
    "lp_mul",
    "lp_shift",
    "lp_clean",
    "monomial_numerator",
    "series_coefficient",
    "expand_series",
    "cancel_one_minus_t",
    "hilbert_polynomial_from_numerator",
    "eval_poly",
    "format_poly",
    "format_series",
]


def lp_clean(p):
    return {e: c for e, c in p.items() if c}


def lp_add(p, q, scale=1):
    out = dict(p)
    for e, c in q.items():
        out[e] = out.get(e, 0) + scale * c
    return lp_clean(out)


def lp_mul(p, q):
    out = {}
    for e1, c1 in p.items():
        for e2, c2 in q.items():
            out[e1 + e2] = out.get(e1 + e2, 0) + c1 * c2
    return lp_clean(out)


def lp_shift(p, s):
    return {e + s: c for e, c in p.items()}


# -- monomial ideals ------------------------------------------------------------------

def _minimalize(gens):
    gens = sorted(set(gens), key=sum)
    keep = []
    for g in gens:
        if not any(all(a <= b for a, b in zip(h, g)) for h in keep):
            keep.append(g)
    return keep


def monomial_numerator(gens, nvars):
    """Numerator ``N(t)`` with ``HS(S/I) = N(t) / (1 - t)^nvars`` for the
    monomial ideal generated by the exponent tuples ``gens``."""
    return _numerator(_minimalize([tuple(g) for g in gens]), nvars)


def _numerator(gens, n):
    if not gens:
        return {0: 1}
    if any(sum(g) == 0 for g in gens):
        return {}
    supports = [frozenset(i for i, e in enumerate(g) if e) for g in gens]
    disjoint = True
    seen = set()
    for s in supports:
        if seen & s:
            disjoint = False
            break
        seen |= s
    if disjoint:
        out = {0: 1}
        for g in gens:
            out = lp_mul(out, {0: 1, sum(g): -1})
        return out
    # pivot x_i^e on the variable occurring in most generators that are not
    # pure powers of it; then x_i^e is not in I and both branches grow I
    counts = [0] * n
    for s in supports:
        if len(s) > 1:
            for i in s:
                counts[i] += 1
    i = max(range(n), key=lambda v: counts[v])
    exps = sorted(g[i] for g, s in zip(gens, supports) if g[i] and len(s) > 1)
    e = exps[len(exps) // 2]
    pivot = tuple(e if v == i else 0 for v in range(n))
    # N(I) = N(I + (p)) + t^e N(I : p)
    plus = _minimalize([g for g in gens if g[i] < e] + [pivot])
    colon = _minimalize([tuple(max(a - b, 0) for a, b in zip(g, pivot)) for g in gens])
    return lp_add(_numerator(plus, n), lp_shift(_numerator(colon, n), e))


# -- series coefficients and Hilbert polynomials --------------------------------------

def series_coefficient(num, r, k):
    """Coefficient of ``t^k`` in ``num(t) / (1 - t)^r``."""
    if r == 0:
        return num.get(k, 0)
    total = 0
    for e, c in num.items():
        if k >= e:
            total += c * comb(k - e + r - 1, r - 1)
    return total


def expand_series(num, r, lo, hi):
    return {k: series_coefficient(num, r, k) for k in range(lo, hi + 1)}


def cancel_one_minus_t(num, r):
    """Divide out common ``(1 - t)`` factors; returns ``(Q, r')`` with ``Q(1) != 0``
    (or ``({}, 0)`` for the zero series)."""
    num = lp_clean(num)
    if not num:
        return {}, 0
    while r > 0 and sum(num.values()) == 0:
        # synthetic division by (1 - t): q_e = sum_{j<=e} n_j
        lo, hi = min(num), max(num)
        q = {}
        acc = 0
        for e in range(lo, hi):
            acc += num.get(e, 0)
            if acc:
                q[e] = acc
        num = q
        r -= 1
    return num, r


def _poly_mul(a, b):
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


def hilbert_polynomial_from_numerator(num, r):
    """Coefficients (ascending powers of k) of the Hilbert polynomial of
    ``num / (1 - t)^r``; the zero polynomial is ``[]``."""
    q, r = cancel_one_minus_t(num, r)
    if r == 0 or not q:
        return []
    total = [Fraction(0)] * r
    fact = Fraction(1, 1)
    for i in range(1, r):
        fact /= i
    for e, c in q.items():
        # c * binom(k - e + r - 1, r - 1) as a polynomial in k
        p = [Fraction(c) * fact]
        for i in range(1, r):
            p = _poly_mul(p, [Fraction(i - e), Fraction(1)])
        for i, x in enumerate(p):
            total[i] += x
    while total and total[-1] == 0:
        total.pop()
    return total


def eval_poly(coeffs, k):
    v = Fraction(0)
    for c in reversed(coeffs):
        v = v * k + c
    return v


def _fmt_coef(c):
    c = Fraction(c)
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def format_poly(coeffs, var="k"):
    """Text form such as ``6*k-2`` or ``8*k^2-21*k+26``."""
    parts = []
    for i in range(len(coeffs) - 1, -1, -1):
        c = Fraction(coeffs[i])
        if c == 0:
            continue
        sign = "-" if c < 0 else "+"
        a = abs(c)
        if i == 0:
            body = _fmt_coef(a)
        else:
            mono = var if i == 1 else f"{var}^{i}"
            body = mono if a == 1 else f"{_fmt_coef(a)}*{mono}"
        parts.append((sign, body))
    if not parts:
        return "0"
    out = ("-" if parts[0][0] == "-" else "") + parts[0][1]
    for sign, body in parts[1:]:
        out += f"{sign}{body}"
    return out


def format_series(num, var="t"):
    """Laurent polynomial as text, lowest power first."""
    parts = []
    for e in sorted(num):
        c = num[e]
        if not c:
            continue
        sign = "-" if c < 0 else "+"
        a = abs(c)
        if e == 0:
            body = str(a)
        else:
            mono = var if e == 1 else f"{var}^{e}"
            body = mono if a == 1 else f"{a}{mono}"
        parts.append((sign, body))
    if not parts:
        return "0"
    out = ("-" if parts[0][0] == "-" else "") + parts[0][1]
    for sign, body in parts[1:]:
        out += f"{sign}{body}"
    return out

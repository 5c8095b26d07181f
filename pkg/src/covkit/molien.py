"""Molien series and a brute-force dimension oracle.

Univariate polynomials in ``t`` are plain lists of Fractions, lowest degree
first, with no trailing zeros.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm

from .spaces import covariant_space, invariant_space


# univariate helpers -------------------------------------------------------


def _trim(p):
    p = list(p)
    while p and p[-1] == 0:
        p.pop()
    return p


def upoly_add(a, b):
    out = [Fraction(0)] * max(len(a), len(b))
    for i, v in enumerate(a):
        out[i] += v
    for i, v in enumerate(b):
        out[i] += v
    return _trim(out)


def upoly_sub(a, b):
    return upoly_add(a, [-v for v in b])


def upoly_mul(a, b):
    if not a or not b:
        return []
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _trim(out)


def upoly_scale(a, c):
    return _trim([v * c for v in a])


def upoly_divmod(a, b):
    a, b = _trim(a), _trim(b)
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 0)
    r = list(a)
    lead = b[-1]
    while len(r) >= len(b) and r:
        shift = len(r) - len(b)
        c = r[-1] / lead
        q[shift] = c
        for i, v in enumerate(b):
            r[shift + i] -= c * v
        r = _trim(r)
    return _trim(q), r


def upoly_exact_div(a, b):
    q, r = upoly_divmod(a, b)
    if r:
        raise ArithmeticError("inexact polynomial division")
    return q


def upoly_gcd(a, b):
    a, b = _trim(a), _trim(b)
    while b:
        a, b = b, upoly_divmod(a, b)[1]
    if not a:
        return []
    return upoly_scale(a, 1 / a[-1])


def upoly_det(matrix):
    """Determinant of a square matrix of univariate polynomials (Bareiss)."""
    m = [[_trim(e) for e in row] for row in matrix]
    n = len(m)
    if n == 0:
        return [Fraction(1)]
    sign = 1
    prev = [Fraction(1)]
    for k in range(n - 1):
        if not m[k][k]:
            for r in range(k + 1, n):
                if m[r][k]:
                    m[k], m[r] = m[r], m[k]
                    sign = -sign
                    break
            else:
                return []
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = upoly_sub(upoly_mul(m[k][k], m[i][j]), upoly_mul(m[i][k], m[k][j]))
                m[i][j] = upoly_exact_div(num, prev)
            m[i][k] = []
        prev = m[k][k]
    return upoly_scale(m[n - 1][n - 1], sign)


def series_expand(num, den, order):
    """Coefficients of num/den as a power series, degrees 0..order."""
    den = _trim(den)
    if not den or den[0] == 0:
        raise ZeroDivisionError("denominator vanishes at t=0")
    out = []
    inv0 = 1 / den[0]
    for m in range(order + 1):
        s = num[m] if m < len(num) else Fraction(0)
        for j in range(1, min(m, len(den) - 1) + 1):
            s -= den[j] * out[m - j]
        out.append(s * inv0)
    return out


def render_upoly(p, var="t"):
    if not p:
        return "0"
    parts = []
    for k, c in enumerate(p):
        if not c:
            continue
        mag = abs(c)
        if k == 0:
            body = str(mag)
        else:
            mono = var if k == 1 else f"{var}^{k}"
            body = mono if mag == 1 else f"{mag}*{mono}"
        if not parts:
            parts.append(("-" if c < 0 else "") + body)
        else:
            parts.append((" - " if c < 0 else " + ") + body)
    return "".join(parts)


# Molien series -------------------------------------------------------------


@dataclass(frozen=True)
class RationalSeries:
    numerator: tuple
    denominator: tuple
    expansion: tuple

    def coefficient(self, m):
        return self.expansion[m]

    def closed_form(self):
        return f"({render_upoly(self.numerator)}) / ({render_upoly(self.denominator)})"


def _char_poly_det(g):
    """det(I - t g) as a univariate polynomial."""
    n = g.nrows
    mat = [
        [[Fraction(int(i == j)), -g[i, j]] for j in range(n)]
        for i in range(n)
    ]
    return tuple(upoly_det(mat))


def _normalize(num, den):
    g = upoly_gcd(num, den)
    if len(g) > 1:
        num = upoly_exact_div(num, g)
        den = upoly_exact_div(den, g)
    # integer coefficients with den(0) > 0; purely cosmetic
    scale = lcm(*(c.denominator for c in num + den))
    num = [c * scale for c in num]
    den = [c * scale for c in den]
    content = 0
    for c in num + den:
        content = gcd(content, int(c))
    if den[0] < 0:
        content = -content
    return [c / content for c in num], [c / content for c in den]


def _weighted_series(rep, weights, order):
    groups = {}
    for i, w in enumerate(weights):
        if w:
            key = _char_poly_det(rep.source(i))
            groups[key] = groups.get(key, Fraction(0)) + w
    den = [Fraction(1)]
    for key in groups:
        den = upoly_mul(den, upoly_exact_div(list(key), upoly_gcd(den, list(key))))
    num = []
    for key, w in groups.items():
        num = upoly_add(num, upoly_scale(upoly_exact_div(den, list(key)), w))
    num = upoly_scale(num, rep.weight)
    if num:
        num, den = _normalize(num, den)
    else:
        den = [Fraction(1)]
    exp = series_expand(num, den, order)
    return RationalSeries(tuple(num), tuple(den), tuple(exp))


def molien_invariant(rep, order: int) -> RationalSeries:
    """``(1/|G|) sum_g 1/det(I - t g)`` expanded to degree ``order``."""
    return _weighted_series(rep, [Fraction(1)] * rep.order, order)


def molien_covariant(rep, order: int) -> RationalSeries:
    """``(1/|G|) sum_g tr(rho(g)^{-1})/det(I - t g)`` expanded to degree ``order``."""
    weights = []
    for i in range(rep.order):
        r = rep.rho_inverse(i)
        weights.append(sum((r[k, k] for k in range(r.nrows)), Fraction(0)))
    return _weighted_series(rep, weights, order)


def dimension_bruteforce(rep, m: int, kind: str = "covariant") -> int:
    """Rank of the averaged degree-m monomials (times basis vectors of E)."""
    if kind == "invariant":
        return len(invariant_space(rep, m))
    if kind == "covariant":
        return len(covariant_space(rep, m))
    raise ValueError(f"kind must be 'invariant' or 'covariant', not {kind!r}")

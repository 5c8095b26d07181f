"""Sparse multivariate polynomials with exact coefficients.

A :class:`Poly` maps exponent tuples to nonzero Fractions. A
:class:`VectorPoly` is a tuple of ``d`` such polynomials sharing the same
number of variables ``n``; it represents a map R^n -> E with E = Q^d in
the standard basis.

Term order is graded lexicographic everywhere: higher total degree first,
then larger exponent of ``x0``, then ``x1`` and so on.
"""
from __future__ import annotations

import re
from fractions import Fraction
from math import comb, prod

from . import _backend
from .errors import ConfigParse, DimensionMismatch
from .exact import Matrix, to_fraction

__all__ = [
    "Poly",
    "VectorPoly",
    "monomials",
    "grlex_key",
    "poly_eval",
    "compose_linear",
    "covariant_action",
    "dual_action",
    "homogeneous_component",
    "parse_poly",
    "parse_vector",
]


def grlex_key(exps):
    """Sort key placing monomials in descending graded-lex order."""
    return (-sum(exps), tuple(-e for e in exps))


def monomials(n: int, m: int):
    """All exponent tuples of total degree ``m`` in ``n`` variables, grlex-descending."""
    if n == 0:
        return [()] if m == 0 else []
    if n == 1:
        return [(m,)]
    out = []
    for first in range(m, -1, -1):
        for rest in monomials(n - 1, m - first):
            out.append((first,) + rest)
    return out


class Poly:
    """Immutable sparse polynomial in ``n`` variables."""

    __slots__ = ("n", "terms", "_hash")

    def __init__(self, n: int, terms=None):
        clean = {}
        if terms:
            for e, c in terms.items():
                e = tuple(e)
                if len(e) != n:
                    raise DimensionMismatch(f"exponent {e} has wrong length for n={n}")
                c = to_fraction(c)
                if c:
                    clean[e] = clean.get(e, 0) + c
                    if not clean[e]:
                        del clean[e]
        self.n = n
        self.terms = clean
        self._hash = None

    @classmethod
    def _trusted(cls, n, terms):
        p = cls.__new__(cls)
        p.n = n
        p.terms = terms
        p._hash = None
        return p

    @classmethod
    def constant(cls, n, c):
        c = to_fraction(c)
        return cls._trusted(n, {(0,) * n: c} if c else {})

    @classmethod
    def variable(cls, n, i):
        e = [0] * n
        e[i] = 1
        return cls._trusted(n, {tuple(e): Fraction(1)})

    @classmethod
    def monomial(cls, exps, c=1):
        c = to_fraction(c)
        return cls._trusted(len(exps), {tuple(exps): c} if c else {})

    @classmethod
    def zero(cls, n):
        return cls._trusted(n, {})

    # arithmetic ---------------------------------------------------------

    def _check(self, other):
        if self.n != other.n:
            raise DimensionMismatch(f"polynomials in {self.n} and {other.n} variables")

    def __add__(self, other):
        if not isinstance(other, Poly):
            other = Poly.constant(self.n, other)
        self._check(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            v = out.get(e, 0) + c
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        return Poly._trusted(self.n, out)

    __radd__ = __add__

    def __neg__(self):
        return Poly._trusted(self.n, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        if not isinstance(other, Poly):
            other = Poly.constant(self.n, other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, Poly):
            self._check(other)
            return Poly._trusted(self.n, _backend.poly_mul(self.terms, other.terms))
        if isinstance(other, VectorPoly):
            return other.scale_by(self)
        c = to_fraction(other)
        if not c:
            return Poly.zero(self.n)
        return Poly._trusted(self.n, {e: v * c for e, v in self.terms.items()})

    __rmul__ = __mul__

    def __pow__(self, k: int):
        out = Poly.constant(self.n, 1)
        base = self
        while k:
            if k & 1:
                out = out * base
            k >>= 1
            if k:
                base = base * base
        return out

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.n == other.n and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self == Poly.constant(self.n, other)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.n, frozenset(self.terms.items())))
        return self._hash

    def __bool__(self):
        return bool(self.terms)

    # structure ----------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((sum(e) for e in self.terms), default=-1)

    def degrees(self):
        return sorted({sum(e) for e in self.terms})

    def is_homogeneous(self) -> bool:
        return len(self.degrees()) <= 1

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda t: grlex_key(t[0]))

    def coefficient(self, exps) -> Fraction:
        return self.terms.get(tuple(exps), Fraction(0))

    def derivative(self, alpha):
        """``D^alpha`` of the polynomial."""
        out = {}
        for e, c in self.terms.items():
            if all(ei >= ai for ei, ai in zip(e, alpha)):
                f = prod(_falling(ei, ai) for ei, ai in zip(e, alpha))
                out[tuple(ei - ai for ei, ai in zip(e, alpha))] = c * f
        return Poly._trusted(self.n, out)

    def __call__(self, x):
        return poly_eval(self, x)

    def __repr__(self):
        return f"Poly({self.n}, {render_poly(self)!r})"

    def __str__(self):
        return render_poly(self)


def _falling(e, a):
    out = 1
    for k in range(a):
        out *= e - k
    return out


class VectorPoly:
    """E-valued polynomial: a tuple of ``d`` :class:`Poly` in ``n`` variables."""

    __slots__ = ("n", "components")

    def __init__(self, components, n=None):
        components = tuple(components)
        if n is None:
            if not components:
                raise DimensionMismatch("need n for an empty vector polynomial")
            n = components[0].n
        if any(c.n != n for c in components):
            raise DimensionMismatch("components disagree on the number of variables")
        self.n = n
        self.components = components

    @classmethod
    def zero(cls, n, d):
        return cls([Poly.zero(n)] * d, n)

    @classmethod
    def basis_vector(cls, p: Poly, k: int, d: int):
        """``p`` placed in component ``k`` of E = Q^d."""
        comps = [Poly.zero(p.n)] * d
        comps[k] = p
        return cls(comps, p.n)

    @property
    def d(self):
        return len(self.components)

    def __len__(self):
        return len(self.components)

    def __iter__(self):
        return iter(self.components)

    def __getitem__(self, i):
        return self.components[i]

    def _check(self, other):
        if self.n != other.n or self.d != other.d:
            raise DimensionMismatch("vector polynomials of different shapes")

    def __add__(self, other):
        self._check(other)
        return VectorPoly([a + b for a, b in zip(self.components, other.components)], self.n)

    def __sub__(self, other):
        self._check(other)
        return VectorPoly([a - b for a, b in zip(self.components, other.components)], self.n)

    def __neg__(self):
        return VectorPoly([-a for a in self.components], self.n)

    def __mul__(self, other):
        if isinstance(other, Poly):
            return self.scale_by(other)
        c = to_fraction(other)
        return VectorPoly([a * c for a in self.components], self.n)

    __rmul__ = __mul__

    def scale_by(self, p: Poly):
        """Multiply every component by the scalar polynomial ``p``."""
        return VectorPoly([p * a for a in self.components], self.n)

    def __eq__(self, other):
        return (
            isinstance(other, VectorPoly)
            and self.n == other.n
            and self.components == other.components
        )

    def __hash__(self):
        return hash((self.n, self.components))

    def is_zero(self):
        return all(c.is_zero() for c in self.components)

    def degree(self):
        return max((c.degree() for c in self.components), default=-1)

    def degrees(self):
        return sorted({m for c in self.components for m in c.degrees()})

    def is_homogeneous(self):
        return len(self.degrees()) <= 1

    def homogeneous_component(self, m):
        return VectorPoly([homogeneous_component(c, m) for c in self.components], self.n)

    def pairing(self, other: "VectorPoly") -> Poly:
        """The scalar polynomial ``x -> <self(x), other(x)>`` in the dual basis."""
        self._check(other)
        out = Poly.zero(self.n)
        for a, b in zip(self.components, other.components):
            out = out + a * b
        return out

    def apply_matrix(self, m: Matrix):
        """Pointwise ``x -> m @ self(x)``."""
        if m.ncols != self.d:
            raise DimensionMismatch(f"{m.shape} matrix on {self.d}-vector polynomial")
        out = []
        for row in m.rows:
            acc = Poly.zero(self.n)
            for coeff, comp in zip(row, self.components):
                if coeff:
                    acc = acc + comp * coeff
            out.append(acc)
        return VectorPoly(out, self.n)

    def __call__(self, x):
        return tuple(poly_eval(c, x) for c in self.components)

    def __repr__(self):
        return f"VectorPoly({render_vector(self)!r})"

    def __str__(self):
        return render_vector(self)


# evaluation and linear substitution ------------------------------------


def poly_eval(p: Poly, x):
    """Value of ``p`` at the point ``x`` (exact for rational inputs)."""
    if len(x) != p.n:
        raise DimensionMismatch(f"point of dimension {len(x)} for polynomial in {p.n} variables")
    total = 0
    for e, c in p.terms.items():
        t = c
        for xi, ei in zip(x, e):
            if ei:
                t = t * xi**ei
        total = total + t
    return total


def compose_linear(p: Poly, a: Matrix) -> Poly:
    """The polynomial ``x -> p(a @ x)``."""
    n = p.n
    if a.nrows != n or a.ncols != n:
        raise DimensionMismatch(f"{a.shape} matrix for polynomial in {n} variables")
    linear = []
    for row in a.rows:
        terms = {}
        for i, v in enumerate(row):
            if v:
                e = [0] * n
                e[i] = 1
                terms[tuple(e)] = v
        linear.append(terms)
    powers = [[{(0,) * n: Fraction(1)}] for _ in range(n)]

    def power(j, k):
        cache = powers[j]
        while len(cache) <= k:
            cache.append(_backend.poly_mul(cache[-1], linear[j]))
        return cache[k]

    out = {}
    for e, c in p.terms.items():
        acc = {(0,) * n: c}
        for j, k in enumerate(e):
            if k:
                acc = _backend.poly_mul(acc, power(j, k))
        for m, v in acc.items():
            s = out.get(m, 0) + v
            if s:
                out[m] = s
            else:
                out.pop(m, None)
    return Poly._trusted(n, out)


def _check_shapes(P: VectorPoly, rep):
    if P.n != rep.n or P.d != rep.d:
        raise DimensionMismatch(
            f"polynomial of shape (n={P.n}, d={P.d}) for representation (n={rep.n}, d={rep.d})"
        )


def covariant_action(g_index: int, P: VectorPoly, rep) -> VectorPoly:
    """``x -> rho(g)^{-1} P(g x)``; covariance means this returns ``P`` for all g."""
    _check_shapes(P, rep)
    g = rep.source(g_index)
    moved = VectorPoly([compose_linear(c, g) for c in P.components], P.n)
    return moved.apply_matrix(rep.rho_inverse(g_index))


def dual_action(g_index: int, f: VectorPoly, rep) -> VectorPoly:
    """Action on E*-valued test functions in the dual basis: ``x -> rho(g)^T f(g x)``.

    This is the contragredient of :func:`covariant_action`; both agree when
    ``rho(g)`` is orthogonal.
    """
    _check_shapes(f, rep)
    g = rep.source(g_index)
    moved = VectorPoly([compose_linear(c, g) for c in f.components], f.n)
    return moved.apply_matrix(rep.rho(g_index).transpose())


def homogeneous_component(p: Poly, m: int) -> Poly:
    return Poly._trusted(p.n, {e: c for e, c in p.terms.items() if sum(e) == m})


# text grammar ------------------------------------------------------------


def _render_coeff_term(c, e):
    factors = []
    for i, k in enumerate(e):
        if k == 1:
            factors.append(f"x{i}")
        elif k > 1:
            factors.append(f"x{i}^{k}")
    mag = abs(c)
    if not factors:
        body = str(mag)
    elif mag == 1:
        body = "*".join(factors)
    else:
        body = str(mag) + "*" + "*".join(factors)
    return c < 0, body


def render_poly(p: Poly) -> str:
    """Render as e.g. ``3*x0^2*x1 + 1/2*x2``."""
    if not p.terms:
        return "0"
    parts = []
    for idx, (e, c) in enumerate(p.sorted_terms()):
        neg, body = _render_coeff_term(c, e)
        if idx == 0:
            parts.append(("-" if neg else "") + body)
        else:
            parts.append((" - " if neg else " + ") + body)
    return "".join(parts)


def render_vector(P: VectorPoly) -> str:
    return "(" + ", ".join(render_poly(c) for c in P.components) + ")"


_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_]\w*)|(\*\*|[-+*/^()]))")
_ALIASES = {"x": 0, "y": 1, "z": 2}


def _tokenize(text):
    text = text.replace("−", "-")
    pos, out = 0, []
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise ConfigParse(f"unexpected character {text[pos]!r} in polynomial {text!r}")
        num, name, op = m.groups()
        if num is not None:
            out.append(("num", int(num)))
        elif name is not None:
            out.append(("var", name))
        else:
            out.append(("op", "^" if op == "**" else op))
        pos = m.end()
    return out


class _Parser:
    def __init__(self, text, n):
        self.toks = _tokenize(text)
        self.i = 0
        self.n = n
        self.text = text

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else (None, None)

    def take(self):
        t = self.peek()
        self.i += 1
        return t

    def fail(self, msg):
        raise ConfigParse(f"{msg} in polynomial {self.text!r}")

    def parse(self):
        if not self.toks:
            self.fail("empty expression")
        p = self.expr()
        if self.i != len(self.toks):
            self.fail(f"trailing token {self.peek()[1]!r}")
        return p

    def expr(self):
        p = self.term()
        while self.peek() in (("op", "+"), ("op", "-")):
            op = self.take()[1]
            q = self.term()
            p = p + q if op == "+" else p - q
        return p

    def term(self):
        p = self.unary()
        while self.peek() in (("op", "*"), ("op", "/")):
            op = self.take()[1]
            q = self.unary()
            if op == "*":
                p = p * q
            else:
                if q.degree() > 0 or q.is_zero():
                    self.fail("division by a non-constant or zero")
                p = p * (1 / q.coefficient((0,) * self.n))
        return p

    def unary(self):
        if self.peek() == ("op", "-"):
            self.take()
            return -self.unary()
        if self.peek() == ("op", "+"):
            self.take()
            return self.unary()
        return self.power()

    def power(self):
        base = self.atom()
        if self.peek() == ("op", "^"):
            self.take()
            kind, val = self.take()
            if kind != "num":
                self.fail("exponent must be a non-negative integer")
            return base**val
        return base

    def atom(self):
        kind, val = self.take()
        if kind == "num":
            return Poly.constant(self.n, val)
        if kind == "var":
            m = re.fullmatch(r"x(\d+)", val)
            if m:
                idx = int(m.group(1))
            elif val in _ALIASES and self.n <= 3:
                idx = _ALIASES[val]
            else:
                self.fail(f"unknown variable {val!r}")
            if idx >= self.n:
                self.fail(f"variable {val!r} out of range for n={self.n}")
            return Poly.variable(self.n, idx)
        if (kind, val) == ("op", "("):
            p = self.expr()
            if self.take() != ("op", ")"):
                self.fail("missing ')'")
            return p
        self.fail(f"unexpected token {val!r}")


def parse_poly(text: str, n: int) -> Poly:
    """Parse the rendering grammar (``x0``.. or ``x, y, z`` for n <= 3)."""
    return _Parser(text, n).parse()


def _split_top_level(text):
    parts, depth, cur = [], 0, []
    for ch in text:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if ch in ",;" and depth == 0:
            parts.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    parts.append("".join(cur))
    return parts


def parse_vector(text: str, n: int, d: int) -> VectorPoly:
    """Parse ``(p1, p2, ...)`` or ``p1, p2`` into a d-component polynomial."""
    s = text.strip()
    if s.startswith("(") and s.endswith(")"):
        inner = s[1:-1]
        depth, balanced = 0, True
        for ch in inner:
            depth += ch == "("
            depth -= ch == ")"
            if depth < 0:
                balanced = False
                break
        if balanced and (len(_split_top_level(inner)) > 1 or d == 1):
            s = inner
    parts = _split_top_level(s)
    if len(parts) != d:
        raise ConfigParse(f"expected {d} components, got {len(parts)} in {text!r}")
    return VectorPoly([parse_poly(p, n) for p in parts], n)


def binomial_multi(alpha, beta):
    return prod(comb(a, b) for a, b in zip(alpha, beta))

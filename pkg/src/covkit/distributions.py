"""Point-supported vector-valued distributions.

A :class:`PointDistribution` is a finite formal sum of terms
``D^alpha delta_x (x) v`` with rational location ``x``, multi-index
``alpha`` and weight ``v`` in E = Q^d. Pairing with an E*-valued test
function ``f`` (dual basis coordinates) is

    <D^alpha delta_x (x) v, f> = (-1)^|alpha| * D^alpha <f, v> (x).

Derivative deltas at distinct points are linearly independent, so equality
of normalized formal sums is equality of distributions.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from itertools import product as iproduct

from .errors import ConfigParse, DimensionMismatch, NoSolutionAtOrder, NotCovariant
from .exact import solve_linear, to_fraction
from .polynomials import Poly, VectorPoly, binomial_multi, compose_linear, monomials, poly_eval


def _multi_indices_upto(n, order):
    return [a for k in range(order + 1) for a in monomials(n, k)]


class PointDistribution:
    """Immutable normalized formal sum keyed by ``(location, alpha)``."""

    __slots__ = ("n", "d", "terms")

    def __init__(self, n: int, d: int, terms=()):
        self.n, self.d = n, d
        acc = {}
        items = terms.items() if isinstance(terms, dict) else terms
        for entry in items:
            if isinstance(terms, dict):
                (loc, alpha), w = entry
            else:
                loc, alpha, w = entry
            loc = tuple(to_fraction(v) for v in loc)
            alpha = tuple(int(a) for a in alpha)
            w = tuple(to_fraction(v) for v in w)
            if len(loc) != n or len(alpha) != n or len(w) != d:
                raise DimensionMismatch(f"term ({loc}, {alpha}, {w}) does not fit n={n}, d={d}")
            if any(a < 0 for a in alpha):
                raise DimensionMismatch(f"negative multi-index {alpha}")
            key = (loc, alpha)
            prev = acc.get(key)
            acc[key] = w if prev is None else tuple(a + b for a, b in zip(prev, w))
        self.terms = {k: w for k, w in acc.items() if any(w)}

    @classmethod
    def _trusted(cls, n, d, terms):
        t = cls.__new__(cls)
        t.n, t.d = n, d
        t.terms = {k: w for k, w in terms.items() if any(w)}
        return t

    @classmethod
    def delta(cls, location, alpha=None, weight=None):
        n = len(location)
        alpha = alpha if alpha is not None else (0,) * n
        weight = weight if weight is not None else (1,)
        return cls(n, len(weight), [(location, alpha, weight)])

    @classmethod
    def zero(cls, n, d):
        return cls._trusted(n, d, {})

    @property
    def order(self) -> int:
        return max((sum(a) for _, a in self.terms), default=-1)

    def support(self):
        return sorted({loc for loc, _ in self.terms})

    def is_zero(self):
        return not self.terms

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda kv: (kv[0][0], sum(kv[0][1]), tuple(-a for a in kv[0][1])))

    def _check(self, other):
        if (self.n, self.d) != (other.n, other.d):
            raise DimensionMismatch("distributions of different shapes")

    def __add__(self, other):
        self._check(other)
        out = dict(self.terms)
        for k, w in other.terms.items():
            prev = out.get(k)
            out[k] = w if prev is None else tuple(a + b for a, b in zip(prev, w))
        return PointDistribution._trusted(self.n, self.d, out)

    def __neg__(self):
        return self * -1

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, c):
        c = to_fraction(c)
        return PointDistribution._trusted(
            self.n, self.d, {k: tuple(v * c for v in w) for k, w in self.terms.items()}
        )

    __rmul__ = __mul__

    def __eq__(self, other):
        return (
            isinstance(other, PointDistribution)
            and (self.n, self.d) == (other.n, other.d)
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.n, self.d, frozenset(self.terms.items())))

    def __repr__(self):
        return f"PointDistribution({render_distribution(self)!r})"

    def __str__(self):
        return render_distribution(self)

    def to_json(self):
        return {
            "n": self.n,
            "d": self.d,
            "terms": [
                {
                    "location": [str(v) for v in loc],
                    "multi_index": list(alpha),
                    "weight": [str(v) for v in w],
                }
                for (loc, alpha), w in self.sorted_terms()
            ],
        }

    @classmethod
    def from_json(cls, data):
        try:
            n, d = int(data["n"]), int(data["d"])
            terms = [(t["location"], t["multi_index"], t["weight"]) for t in data["terms"]]
            return cls(n, d, terms)
        except (KeyError, TypeError, ValueError, ZeroDivisionError) as exc:
            raise ConfigParse(f"bad distribution description: {exc}") from exc


def render_distribution(T: PointDistribution) -> str:
    """E.g. ``-1/2*D^(2)delta(0)`` (scalar) or ``D^(1)delta(0)*(1, 0)``."""
    if not T.terms:
        return "0"
    parts = []
    for idx, ((loc, alpha), w) in enumerate(T.sorted_terms()):
        op = "D^(" + ",".join(map(str, alpha)) + ")" if any(alpha) else ""
        body = f"{op}delta(" + ", ".join(map(str, loc)) + ")"
        if T.d == 1:
            c = w[0]
            mag = abs(c)
            body = body if mag == 1 else f"{mag}*{body}"
            sign = " - " if c < 0 else " + "
            parts.append(("-" if c < 0 else "") + body if idx == 0 else sign + body)
        else:
            body = body + "*(" + ", ".join(map(str, w)) + ")"
            parts.append(body if idx == 0 else " + " + body)
    return "".join(parts)


def load_distribution(path) -> PointDistribution:
    try:
        with open(path, encoding="utf-8") as fh:
            return PointDistribution.from_json(json.load(fh))
    except json.JSONDecodeError as exc:
        raise ConfigParse(f"{path}: {exc}") from exc


# pairing and group action -------------------------------------------------


def pair(T: PointDistribution, f: VectorPoly) -> Fraction:
    """``<T, f>`` for an E*-valued polynomial test function ``f``."""
    if f.n != T.n or f.d != T.d:
        raise DimensionMismatch(f"test function of shape ({f.n}, {f.d}) for ({T.n}, {T.d})")
    total = Fraction(0)
    for (loc, alpha), w in T.terms.items():
        scalar = Poly.zero(T.n)
        for c, comp in zip(w, f.components):
            if c:
                scalar = scalar + comp * c
        val = poly_eval(scalar.derivative(alpha), loc)
        total += -val if sum(alpha) % 2 else val
    return total


def pair_scalar(theta: PointDistribution, h: Poly) -> Fraction:
    return pair(theta, VectorPoly([h], h.n))


def act(g_index: int, T: PointDistribution, rep) -> PointDistribution:
    """Push-forward with ``<act(g, T), f> = <T, g.f>`` for the dual action on f.

    A term at ``x`` moves to ``g x`` with weight ``rho(g) v``; the derivative
    monomial ``xi^alpha`` is rewritten as ``xi^alpha`` composed with ``g^T``
    (linear chain rule), which keeps the total order.
    """
    if (T.n, T.d) != (rep.n, rep.d):
        raise DimensionMismatch(f"distribution ({T.n}, {T.d}) for rep ({rep.n}, {rep.d})")
    g = rep.source(g_index)
    gt = g.transpose()
    r = rep.rho(g_index)
    out = {}
    cache = {}
    for (loc, alpha), w in T.terms.items():
        new_loc = g.apply(loc)
        new_w = r.apply(w)
        if alpha not in cache:
            cache[alpha] = compose_linear(Poly.monomial(alpha), gt).terms
        for beta, c in cache[alpha].items():
            key = (new_loc, beta)
            add = tuple(c * v for v in new_w)
            prev = out.get(key)
            out[key] = add if prev is None else tuple(a + b for a, b in zip(prev, add))
    return PointDistribution._trusted(T.n, T.d, out)


def is_covariant_dist(T: PointDistribution, rep) -> bool:
    return all(act(i, T, rep) == T for i in range(rep.order))


def reynolds_dist(T: PointDistribution, rep) -> PointDistribution:
    """``(1/|G|) sum_g act(g, T)``."""
    acc = PointDistribution.zero(T.n, T.d)
    for i in range(rep.order):
        acc = acc + act(i, T, rep)
    return acc * rep.weight


def multiply(theta: PointDistribution, P: VectorPoly) -> PointDistribution:
    """``theta * P`` defined by ``<theta P, f> = <theta, <f, P>>`` (Leibniz rule)."""
    if theta.d != 1:
        raise DimensionMismatch("multiply needs a scalar distribution")
    if theta.n != P.n:
        raise DimensionMismatch("distribution and polynomial in different dimensions")
    d = P.d
    out = {}
    deriv_cache = {}
    for (loc, alpha), (c,) in theta.terms.items():
        total = sum(alpha)
        for beta in iproduct(*(range(a + 1) for a in alpha)):
            gamma = tuple(a - b for a, b in zip(alpha, beta))
            if gamma not in deriv_cache:
                deriv_cache[gamma] = [comp.derivative(gamma) for comp in P.components]
            vals = [poly_eval(q, loc) for q in deriv_cache[gamma]]
            if not any(vals):
                continue
            coef = c * binomial_multi(alpha, beta)
            if (total - sum(beta)) % 2:
                coef = -coef
            key = (loc, tuple(beta))
            add = tuple(coef * v for v in vals)
            prev = out.get(key)
            out[key] = add if prev is None else tuple(a + b for a, b in zip(prev, add))
    return PointDistribution._trusted(theta.n, d, out)


def reassemble_dist(thetas, basis) -> PointDistribution:
    out = PointDistribution.zero(basis.n, basis.d)
    for th, P in zip(thetas, basis.generators):
        out = out + multiply(th, P)
    return out


# decomposition ------------------------------------------------------------


@dataclass(frozen=True)
class DistributionDecomposition:
    thetas: tuple         # invariant scalar PointDistributions, one per generator
    slack: int            # extra order used beyond order(T) + max s_i

    def __iter__(self):
        return iter(self.thetas)

    def __len__(self):
        return len(self.thetas)

    def __getitem__(self, i):
        return self.thetas[i]


def _local_solve(T_local, loc, basis, N):
    """One point: raw scalar thetas at ``loc`` of order <= N with sum theta_i P_i = T_local."""
    n, d = basis.n, basis.d
    alphas = _multi_indices_upto(n, N)
    unknowns = []
    for i, P in enumerate(basis.generators):
        for a in alphas:
            prod_terms = multiply(PointDistribution._trusted(n, 1, {(loc, a): (Fraction(1),)}), P).terms
            unknowns.append((i, a, prod_terms))
    rows_index = {}
    for a in alphas:
        for k in range(d):
            rows_index[(a, k)] = len(rows_index)
    for (l, a), w in T_local.items():
        if (a, 0) not in rows_index:
            return None
    matrix = [[Fraction(0)] * len(unknowns) for _ in rows_index]
    for j, (_, _, terms) in enumerate(unknowns):
        for (l, a), w in terms.items():
            for k, v in enumerate(w):
                if v:
                    matrix[rows_index[(a, k)]][j] = v
    rhs = [Fraction(0)] * len(rows_index)
    for (l, a), w in T_local.items():
        for k, v in enumerate(w):
            rhs[rows_index[(a, k)]] = v
    if not unknowns:
        return None if any(rhs) else []
    sol, _ = solve_linear(matrix, rhs)
    if sol is None:
        return None
    return [(i, a, c) for (i, a, _), c in zip(unknowns, sol) if c]


def decompose_dist(T: PointDistribution, basis, rep, order_slack: int = 3) -> DistributionDecomposition:
    """Invariant scalar ``theta_i`` with ``sum_i theta_i P_i == T``.

    Each support point is solved locally for raw (not yet invariant)
    coefficients of order at most ``order(T) + max s_i + slack``, with the
    slack raised one step at a time up to ``order_slack``. Averaging the raw
    solutions over the group gives invariant ``theta_i``; covariance of ``T``
    makes the averaged family reassemble to ``T`` exactly.
    """
    if (T.n, T.d) != (rep.n, rep.d) or (basis.n, basis.d) != (rep.n, rep.d):
        raise DimensionMismatch("distribution, basis and representation shapes differ")
    if not is_covariant_dist(T, rep):
        raise NotCovariant("distribution is not covariant")
    k = len(basis.generators)
    if T.is_zero():
        return DistributionDecomposition(tuple(PointDistribution.zero(T.n, 1) for _ in range(k)), 0)
    by_loc = {}
    for (loc, a), w in T.terms.items():
        by_loc.setdefault(loc, {})[(loc, a)] = w
    base = T.order + max(basis.degrees, default=0)
    scalar_rep = rep.trivial()
    for slack in range(order_slack + 1):
        raw = [dict() for _ in range(k)]
        ok = True
        for loc in sorted(by_loc):
            sol = _local_solve(by_loc[loc], loc, basis, base + slack)
            if sol is None:
                ok = False
                break
            for i, a, c in sol:
                raw[i][(loc, a)] = (c,)
        if not ok:
            continue
        thetas = tuple(
            reynolds_dist(PointDistribution._trusted(T.n, 1, r), scalar_rep) for r in raw
        )
        if reassemble_dist(thetas, basis) != T:
            raise NoSolutionAtOrder("averaged solution does not reassemble; basis may be uncertified")
        return DistributionDecomposition(thetas, slack)
    raise NoSolutionAtOrder(
        f"no point-supported decomposition up to order {base + order_slack}; raise order_slack"
    )

"""Floating-point transport between R^n and the open unit ball.

``phi(x) = x / sqrt(1 - |x|^2)`` maps the ball onto R^n and
``psi(y) = y / sqrt(1 + |y|^2)`` is its inverse. Inputs and outputs are
IEEE double numpy arrays of shape ``(n,)`` or ``(N, n)``.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatch, NotOrthogonal, OutsideDomain
from .group_rep import check_norm_invariance

DEFAULT_TOL = 1e-9


# 1 - |x|^2 cancels near the sphere and phi amplifies the error by
# 1/(1 - |x|^2); the norms are accumulated in extended precision.
_WIDE = np.longdouble


def _sqnorm(x):
    return np.sum(x * x, axis=-1, keepdims=True)


def phi(x, tol: float = DEFAULT_TOL):
    x = np.asarray(x, dtype=float)
    xw = x.astype(_WIDE)
    r2 = _sqnorm(xw)
    if np.any(np.sqrt(r2) >= 1.0 - tol):
        raise OutsideDomain(f"phi needs |x| < 1 - {tol}")
    return (xw / np.sqrt(1.0 - r2)).astype(float)


def psi(y):
    yw = np.asarray(y, dtype=float).astype(_WIDE)
    return (yw / np.sqrt(1.0 + _sqnorm(yw))).astype(float)


def require_orthogonal(rep):
    src_ok, rho_ok = check_norm_invariance(rep)
    if not (src_ok and rho_ok):
        raise NotOrthogonal("compactification needs orthogonal source and rho matrices")


def float_matrix(m):
    return np.array([[float(v) for v in row] for row in m.rows], dtype=float)


class FloatPoly:
    """Vectorized float evaluator for a :class:`~covkit.polynomials.VectorPoly`."""

    def __init__(self, P):
        self.n, self.d = P.n, P.d
        self.comps = []
        for comp in P.components:
            exps = np.array(list(comp.terms.keys()), dtype=int).reshape(-1, P.n)
            coeffs = np.array([float(c) for c in comp.terms.values()], dtype=float)
            self.comps.append((exps, coeffs))

    def __call__(self, y):
        y = np.atleast_2d(np.asarray(y, dtype=float))
        if y.shape[1] != self.n:
            raise DimensionMismatch(f"points of dimension {y.shape[1]}, expected {self.n}")
        out = np.zeros((y.shape[0], self.d))
        for k, (exps, coeffs) in enumerate(self.comps):
            if len(coeffs):
                mono = np.prod(y[:, None, :] ** exps[None, :, :], axis=2)
                out[:, k] = mono @ coeffs
        return out


@dataclass
class SampledFunction:
    points: np.ndarray    # (N, n)
    values: np.ndarray    # (N, d)
    domain: str = "ball"

    def __post_init__(self):
        if len(self.points) != len(self.values):
            raise DimensionMismatch("points and values differ in length")


def ball_grid(n: int, radii, directions: int = 16, seed: int = 0):
    """Points on spheres of the given radii; directions drawn uniformly from a fixed seed."""
    rng = np.random.default_rng(seed)
    u = rng.normal(size=(directions, n))
    u /= np.linalg.norm(u, axis=1, keepdims=True)
    return np.concatenate([r * u for r in radii], axis=0)


def compactify_function(f, points, tol: float = DEFAULT_TOL) -> SampledFunction:
    """Samples of ``I(f)``: ``f(phi(x))`` inside the ball, exactly 0 elsewhere.

    ``f`` maps an ``(N, n)`` array to an ``(N, d)`` array.
    """
    pts = np.atleast_2d(np.asarray(points, dtype=float))
    r = np.linalg.norm(pts, axis=1)
    inside = r < 1.0 - tol
    probe = np.asarray(f(np.zeros((1, pts.shape[1]))), dtype=float).reshape(1, -1)
    values = np.zeros((len(pts), probe.shape[1]))
    if np.any(inside):
        values[inside] = np.asarray(f(phi(pts[inside], tol)), dtype=float).reshape(-1, probe.shape[1])
    return SampledFunction(pts, values, "ball")


def boundary_flatness_report(s: SampledFunction, orders, shell: float = 0.9):
    """``{p: max |value| / (1 - |x|^2)^p}`` over sample points with ``|x| > shell``."""
    r2 = np.sum(s.points**2, axis=1)
    mask = (np.sqrt(r2) > shell) & (r2 < 1.0)
    norms = np.linalg.norm(s.values[mask], axis=1)
    out = {}
    for p in orders:
        if not np.any(mask):
            out[p] = 0.0
            continue
        out[p] = float(np.max(norms / (1.0 - r2[mask]) ** p))
    return out


class SchwartzDecomposition:
    """``f(y) = sum_i f_i(y) P_i(y)`` with
    ``f_i(y) = (1 + |y|^2)^(-s_i/2) g_i(y / sqrt(1 + |y|^2))``.
    """

    def __init__(self, g_list, basis):
        if len(g_list) != len(basis.generators):
            raise DimensionMismatch(f"{len(g_list)} ball functions for {len(basis)} generators")
        self.g_list = list(g_list)
        self.degrees = list(basis.degrees)
        self.polys = [FloatPoly(P) for P in basis.generators]
        self.n, self.d = basis.n, basis.d

    def coefficient(self, i, y):
        y = np.atleast_2d(np.asarray(y, dtype=float))
        scale = (1.0 / np.sqrt(1.0 + np.sum(y * y, axis=1))) ** self.degrees[i]
        return scale * np.asarray(self.g_list[i](psi(y)), dtype=float).reshape(-1)

    def __call__(self, y):
        y = np.atleast_2d(np.asarray(y, dtype=float))
        out = np.zeros((y.shape[0], self.d))
        for i, P in enumerate(self.polys):
            out += self.coefficient(i, y)[:, None] * P(y)
        return out


def schwartz_decompose(g_list, basis, rep=None) -> SchwartzDecomposition:
    """Build the covariant function from invariant ball functions ``g_i``.

    When ``rep`` is given it must be orthogonal.
    """
    if rep is not None:
        require_orthogonal(rep)
    return SchwartzDecomposition(g_list, basis)


def covariance_residual(f, rep, points) -> float:
    """``max_g max_y |rho(g)^{-1} f(g y) - f(y)|`` over the sample points."""
    y = np.atleast_2d(np.asarray(points, dtype=float))
    base = f(y)
    worst = 0.0
    for i in range(rep.order):
        g = float_matrix(rep.source(i))
        rinv = float_matrix(rep.rho_inverse(i))
        moved = f(y @ g.T) @ rinv.T
        worst = max(worst, float(np.max(np.abs(moved - base), initial=0.0)))
    return worst


def equivariance_residual(rep, points, which: str = "phi") -> float:
    """``max |map(g x) - g map(x)|`` for ``map`` in {phi, psi}."""
    fn = phi if which == "phi" else psi
    x = np.atleast_2d(np.asarray(points, dtype=float))
    worst = 0.0
    for i in range(rep.order):
        g = float_matrix(rep.source(i))
        worst = max(worst, float(np.max(np.abs(fn(x @ g.T) - fn(x) @ g.T), initial=0.0)))
    return worst


# built-in test functions ------------------------------------------------


def gaussian(y):
    y = np.atleast_2d(y)
    return np.exp(-np.sum(y * y, axis=1))


def poly_times_gaussian(y):
    y = np.atleast_2d(y)
    r2 = np.sum(y * y, axis=1)
    return (1.0 + r2) * np.exp(-r2)


def bump_on_ball(u):
    """``exp(-1/(1 - |u|^2))`` inside the ball, 0 outside; flat at the sphere."""
    u = np.atleast_2d(u)
    r2 = np.sum(u * u, axis=1)
    out = np.zeros_like(r2)
    inside = r2 < 1.0
    out[inside] = np.exp(-1.0 / (1.0 - r2[inside]))
    return out


PROFILES = {"gaussian": gaussian, "poly-times-gaussian": poly_times_gaussian}


def ball_coefficients(profile, degrees):
    """Ball functions ``g_i`` whose transport is ``f_i = profile`` for every i.

    Inverts the coefficient formula: ``g_i(u) = (1 - |u|^2)^(-s_i/2) profile(phi(u))``,
    taken as 0 on and outside the sphere.
    """
    def make(s):
        def g(u):
            u = np.atleast_2d(np.asarray(u, dtype=float))
            r2 = np.sum(u * u, axis=1)
            out = np.zeros_like(r2)
            inside = r2 < 1.0 - 1e-15
            if np.any(inside):
                ui = u[inside]
                y = ui / np.sqrt(1.0 - r2[inside])[:, None]
                with np.errstate(over="ignore", under="ignore"):
                    out[inside] = (1.0 - r2[inside]) ** (-s / 2.0) * profile(y)
            return out
        return g
    return [make(s) for s in degrees]

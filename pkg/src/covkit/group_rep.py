"""Finite matrix groups paired with a representation on E = Q^d."""
from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import CapExceeded, ConfigParse, DimensionMismatch, NotAHomomorphism, Singular
from .exact import Matrix, identity, mat_inverse, mat_mul

DEFAULT_CAP = 10_000


@dataclass(frozen=True)
class FiniteGroupRep:
    """Closed list of (source, rho) pairs.

    ``elements[identity_index]`` is the identity. Element order is the
    breadth-first discovery order of :func:`close_group`, which makes every
    downstream computation deterministic.
    """

    n: int
    d: int
    elements: tuple
    identity_index: int = 0
    name: str = ""
    _index: dict = field(default=None, repr=False, compare=False)
    _rho_inv: tuple = field(default=None, repr=False, compare=False)

    def __post_init__(self):
        index = {src: i for i, (src, _) in enumerate(self.elements)}
        object.__setattr__(self, "_index", index)
        object.__setattr__(self, "_rho_inv", tuple(mat_inverse(r) for _, r in self.elements))

    @property
    def order(self) -> int:
        return len(self.elements)

    def __len__(self):
        return len(self.elements)

    def source(self, i) -> Matrix:
        return self.elements[i][0]

    def rho(self, i) -> Matrix:
        return self.elements[i][1]

    def rho_inverse(self, i) -> Matrix:
        return self._rho_inv[i]

    def index_of(self, source: Matrix) -> int:
        return self._index[source]

    def product_index(self, i, j) -> int:
        return self._index[mat_mul(self.source(i), self.source(j))]

    def inverse_index(self, i) -> int:
        return self._index[mat_inverse(self.source(i))]

    @property
    def weight(self) -> Fraction:
        """Uniform (Haar) weight ``1/|G|``."""
        return Fraction(1, self.order)

    def trivial(self) -> "FiniteGroupRep":
        """Same source group acting on E = Q with the trivial representation."""
        one = Matrix([[1]])
        return FiniteGroupRep(
            self.n, 1, tuple((s, one) for s, _ in self.elements), self.identity_index,
            name=f"{self.name}/trivial" if self.name else "trivial",
        )

    def is_trivial_rep(self) -> bool:
        return all(r.is_identity() for _, r in self.elements)


def close_group(source_gens, rho_gens, cap: int = DEFAULT_CAP, name: str = "") -> FiniteGroupRep:
    """Breadth-first closure of the generated matrix group.

    Every (element, generator) edge of the Cayley graph is checked for
    consistency of the rho images, which is exactly well-definedness of the
    homomorphism ``source -> rho``.
    """
    source_gens = [g if isinstance(g, Matrix) else Matrix(g) for g in source_gens]
    rho_gens = [g if isinstance(g, Matrix) else Matrix(g) for g in rho_gens]
    if len(source_gens) != len(rho_gens):
        raise DimensionMismatch("source and rho generator lists differ in length")
    if not source_gens:
        raise ConfigParse("at least one generator is required")
    n = source_gens[0].nrows
    d = rho_gens[0].nrows
    for g in source_gens:
        if g.shape != (n, n):
            raise DimensionMismatch(f"source generator of shape {g.shape}, expected ({n}, {n})")
    for r in rho_gens:
        if r.shape != (d, d):
            raise DimensionMismatch(f"rho generator of shape {r.shape}, expected ({d}, {d})")
    for m in source_gens + rho_gens:
        mat_inverse(m)  # raises Singular

    ident = (identity(n), identity(d))
    elements = [ident]
    index = {ident[0]: 0}
    queue = deque([0])
    while queue:
        i = queue.popleft()
        src, rho = elements[i]
        for gs, gr in zip(source_gens, rho_gens):
            ps = mat_mul(src, gs)
            pr = mat_mul(rho, gr)
            j = index.get(ps)
            if j is None:
                if len(elements) >= cap:
                    raise CapExceeded(f"group order exceeds cap={cap}")
                index[ps] = len(elements)
                elements.append((ps, pr))
                queue.append(len(elements) - 1)
            elif elements[j][1] != pr:
                raise NotAHomomorphism(
                    f"source matrix {ps!r} reached with rho {pr!r} and {elements[j][1]!r}"
                )
    return FiniteGroupRep(n, d, tuple(elements), 0, name=name)


def _is_orthogonal(m: Matrix) -> bool:
    return mat_mul(m.transpose(), m).is_identity()


def check_norm_invariance(rep: FiniteGroupRep):
    """``(source_ok, rho_ok)``: whether the euclidean norms are invariant."""
    src_ok = all(_is_orthogonal(s) for s, _ in rep.elements)
    rho_ok = all(_is_orthogonal(r) for _, r in rep.elements)
    return src_ok, rho_ok


def validate(rep: FiniteGroupRep):
    """Re-check the closure and homomorphism invariants of an existing rep."""
    for i, (si, ri) in enumerate(rep.elements):
        for j, (sj, rj) in enumerate(rep.elements):
            k = rep._index.get(mat_mul(si, sj))
            if k is None:
                raise NotAHomomorphism(f"product of elements {i} and {j} is not in the group")
            if rep.rho(k) != mat_mul(ri, rj):
                raise NotAHomomorphism(f"rho is not multiplicative on elements {i}, {j}")
    if not rep.source(rep.identity_index).is_identity():
        raise NotAHomomorphism("identity element missing")


# file format -------------------------------------------------------------


def _matrix_from_json(obj, what):
    try:
        return Matrix(obj)
    except (ValueError, TypeError, ZeroDivisionError) as exc:
        raise ConfigParse(f"bad {what} matrix {obj!r}: {exc}") from exc


def rep_from_dict(data, cap: int = DEFAULT_CAP) -> FiniteGroupRep:
    try:
        n = int(data["n"])
        d = int(data["d"])
        src = [_matrix_from_json(m, "source") for m in data["source_generators"]]
        rho = [_matrix_from_json(m, "rho") for m in data["rho_generators"]]
    except (KeyError, TypeError) as exc:
        raise ConfigParse(f"group file missing field: {exc}") from exc
    for m in src:
        if m.shape != (n, n):
            raise ConfigParse(f"source generator has shape {m.shape}, declared n={n}")
    for m in rho:
        if m.shape != (d, d):
            raise ConfigParse(f"rho generator has shape {m.shape}, declared d={d}")
    try:
        return close_group(src, rho, cap=cap, name=str(data.get("name", "")))
    except Singular as exc:
        raise ConfigParse(f"generator is not invertible: {exc}") from exc


def generators_to_dict(source_gens, rho_gens, name=""):
    out = {}
    if name:
        out["name"] = name
    out["n"] = source_gens[0].nrows
    out["d"] = rho_gens[0].nrows
    out["source_generators"] = [m.to_strings() for m in source_gens]
    out["rho_generators"] = [m.to_strings() for m in rho_gens]
    return out


def load_group(path, cap: int = DEFAULT_CAP) -> FiniteGroupRep:
    try:
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
    except json.JSONDecodeError as exc:
        raise ConfigParse(f"{path}: {exc}") from exc
    return rep_from_dict(data, cap=cap)

"""Command-line entry point: ``covkit <subcommand> --group FILE ...``.

Every subcommand loads and validates the group file, builds a plain-text
report plus a JSON twin, and writes them to stdout or to ``--out`` (the
twin goes next to it with a ``.json`` suffix). Errors are reported on
stderr as ``error: <ErrorName>: message``.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass

import numpy as np

from . import compactify as cpt
from .decompose_poly import decompose, is_covariant, reassemble
from .distributions import decompose_dist, load_distribution, reassemble_dist
from .errors import ConfigParse, CovkitError
from .generators import certify_generators, covariant_generators, invariant_generators
from .group_rep import DEFAULT_CAP, check_norm_invariance, load_group, validate
from .molien import dimension_bruteforce, molien_covariant, molien_invariant
from .polynomials import parse_vector

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_CONFIG = 2


@dataclass
class JobConfig:
    subcommand: str
    group: str
    cap: int | None = None
    order: int = 8
    check_cap: int | None = None
    order_slack: int = 3
    tol: float = cpt.DEFAULT_TOL
    out: str | None = None
    poly: str | None = None
    dist: str | None = None
    function: str = "gaussian"
    group_cap: int = DEFAULT_CAP
    verify: bool = False
    as_json: bool = False

    def validate(self):
        if not os.path.isfile(self.group):
            raise FileNotFoundError(f"group file not found: {self.group}")
        for name in ("cap", "check_cap"):
            v = getattr(self, name)
            if v is not None and v < 1:
                raise ConfigParse(f"--{name.replace('_', '-')} must be positive")
        if self.order < 0 or self.order_slack < 0:
            raise ConfigParse("--order and --order-slack must be non-negative")
        if self.tol <= 0:
            raise ConfigParse("--tol must be positive")


class Report:
    def __init__(self, title):
        self.lines = [f"# {title}"]
        self.data = {"report": title}
        self.ok = True

    def line(self, text=""):
        self.lines.append(text)

    def text(self):
        return "\n".join(self.lines) + "\n"


def _group_header(rep, report):
    report.line(f"group: {rep.name or '(unnamed)'}")
    report.line(f"n = {rep.n}, d = {rep.d}, |G| = {rep.order}")
    report.data["group"] = {"name": rep.name, "n": rep.n, "d": rep.d, "order": rep.order}


def _basis(rep, cfg, cap=None):
    cap = cap if cap is not None else (cfg.cap if cfg.cap is not None else rep.order)
    inv = invariant_generators(rep, max(cap, 1))
    return inv, covariant_generators(rep, inv, cap)


# subcommands -----------------------------------------------------------


def cmd_close(rep, cfg):
    r = Report("close")
    _group_header(rep, r)
    elements = []
    for i, (s, rho) in enumerate(rep.elements):
        r.line(f"g{i}: source={s.to_strings()} rho={rho.to_strings()}")
        elements.append({"source": s.to_strings(), "rho": rho.to_strings()})
    r.data["elements"] = elements
    return r


def cmd_check_rep(rep, cfg):
    r = Report("check-rep")
    _group_header(rep, r)
    validate(rep)
    src_ok, rho_ok = check_norm_invariance(rep)
    r.line("closure: PASS")
    r.line("homomorphism: PASS")
    r.line(f"source orthogonal: {'yes' if src_ok else 'no'}")
    r.line(f"rho orthogonal: {'yes' if rho_ok else 'no'}")
    r.data.update(closure=True, homomorphism=True, source_orthogonal=src_ok, rho_orthogonal=rho_ok)
    return r


def cmd_molien(rep, cfg):
    r = Report("molien")
    _group_header(rep, r)
    inv = molien_invariant(rep, cfg.order)
    cov = molien_covariant(rep, cfg.order)
    r.line(f"invariant series: {inv.closed_form()}")
    r.line(f"covariant series: {cov.closed_form()}")
    header = "degree  invariant  covariant" + ("  bruteforce_inv  bruteforce_cov" if cfg.verify else "")
    r.line(header)
    rows = []
    for m in range(cfg.order + 1):
        row = {"degree": m, "invariant": int(inv.coefficient(m)), "covariant": int(cov.coefficient(m))}
        text = f"{m:>6}  {row['invariant']:>9}  {row['covariant']:>9}"
        if cfg.verify:
            bi = dimension_bruteforce(rep, m, "invariant")
            bc = dimension_bruteforce(rep, m, "covariant")
            row.update(bruteforce_invariant=bi, bruteforce_covariant=bc)
            text += f"  {bi:>14}  {bc:>14}"
            if bi != row["invariant"] or bc != row["covariant"]:
                r.ok = False
        rows.append(row)
        r.line(text)
    r.data.update(
        invariant={"numerator": [str(c) for c in inv.numerator], "denominator": [str(c) for c in inv.denominator]},
        covariant={"numerator": [str(c) for c in cov.numerator], "denominator": [str(c) for c in cov.denominator]},
        table=rows,
    )
    if cfg.verify:
        r.line(f"bruteforce agreement: {'PASS' if r.ok else 'FAIL'}")
    return r


def _generator_lines(r, inv, basis):
    r.line("invariant generators:")
    for g in inv.generators:
        r.line(f"  degree {g.degree()}: {g}")
    r.line("covariant generators:")
    for i, (P, s) in enumerate(zip(basis.generators, basis.degrees), start=1):
        r.line(f"  P{i} (degree {s}) = {P}")
    r.data["invariant_generators"] = [{"degree": g.degree(), "poly": str(g)} for g in inv.generators]
    r.data["covariant_generators"] = [
        {"degree": s, "poly": str(P)} for P, s in zip(basis.generators, basis.degrees)
    ]


def cmd_generators(rep, cfg):
    r = Report("generators")
    _group_header(rep, r)
    inv, basis = _basis(rep, cfg)
    r.line(f"degree cap: {basis.certified_degree}")
    _generator_lines(r, inv, basis)
    cert = certify_generators(rep, basis, cfg.check_cap, inv)
    status = "certified" if cert.passed else f"NOT certified: first failure at degree {cert.first_failure}"
    r.line(f"certification up to degree {cert.check_cap}: {status}")
    r.data.update(degree_cap=basis.certified_degree, check_cap=cert.check_cap,
                  certified=cert.passed, first_failure=cert.first_failure)
    r.ok = cert.passed
    return r


def cmd_certify(rep, cfg):
    r = Report("certify")
    _group_header(rep, r)
    inv, basis = _basis(rep, cfg)
    _generator_lines(r, inv, basis)
    cert = certify_generators(rep, basis, cfg.check_cap, inv)
    r.line("degree  covariant_dim  generated_dim")
    for m, dim, reached in cert.rows:
        r.line(f"{m:>6}  {dim:>13}  {reached:>13}")
    r.line(f"certification: {'PASS' if cert.passed else 'FAIL'}"
           + ("" if cert.passed else f" (first failure at degree {cert.first_failure})"))
    r.data.update(check_cap=cert.check_cap, passed=cert.passed, first_failure=cert.first_failure,
                  rows=[{"degree": m, "covariant_dim": a, "generated_dim": b} for m, a, b in cert.rows])
    r.ok = cert.passed
    return r


def cmd_decompose(rep, cfg):
    if cfg.poly is None:
        raise ConfigParse("decompose needs --poly")
    r = Report("decompose")
    _group_header(rep, r)
    F = parse_vector(cfg.poly, rep.n, rep.d)
    cap = cfg.cap if cfg.cap is not None else max(rep.order, F.degree())
    inv, basis = _basis(rep, cfg, cap)
    r.line(f"F = {F}")
    r.line(f"covariant: {'yes' if is_covariant(F, rep) else 'no'}")
    _generator_lines(r, inv, basis)
    coeffs = decompose(F, basis, inv, rep)
    for i, p in enumerate(coeffs, start=1):
        r.line(f"p{i} = {p}")
    ok = reassemble(coeffs, basis) == F
    r.line(f"verification: {'PASS' if ok else 'FAIL'}")
    r.data.update(F=str(F), coefficients=[str(p) for p in coeffs], verification=ok)
    r.ok = ok
    return r


def _fmt(x):
    return f"{x:.6e}"


def cmd_compactify_report(rep, cfg):
    if cfg.function not in ("gaussian", "poly-times-gaussian", "bump"):
        raise ConfigParse(f"unknown --function {cfg.function!r}")
    cpt.require_orthogonal(rep)
    r = Report("compactify-report")
    _group_header(rep, r)
    inv, basis = _basis(rep, cfg)
    _generator_lines(r, inv, basis)
    r.line(f"function: {cfg.function}")
    n = rep.n
    rng = np.random.default_rng(12345)
    if cfg.function == "bump":
        g_list = [cpt.bump_on_ball] * len(basis)
    else:
        g_list = cpt.ball_coefficients(cpt.PROFILES[cfg.function], basis.degrees)
    f = cpt.schwartz_decompose(g_list, basis, rep)
    results = {}

    x = rng.uniform(-1, 1, size=(200, n))
    x *= (rng.uniform(0, 0.95, size=(200, 1)) / np.maximum(np.linalg.norm(x, axis=1, keepdims=True), 1e-300))
    y = rng.normal(size=(200, n))
    y *= rng.uniform(0, 1e3, size=(200, 1)) / np.linalg.norm(y, axis=1, keepdims=True)
    results["psi_phi_residual"] = float(np.max(np.abs(cpt.psi(cpt.phi(x, cfg.tol)) - x)))
    rel = np.abs(cpt.phi(cpt.psi(y), cfg.tol) - y) / np.maximum(np.linalg.norm(y, axis=1, keepdims=True), 1.0)
    results["phi_psi_relative_residual"] = float(np.max(rel))
    results["phi_equivariance_residual"] = cpt.equivariance_residual(rep, x, "phi")
    results["psi_equivariance_residual"] = cpt.equivariance_residual(rep, y, "psi")
    yy = rng.normal(size=(100, n)) * 2.0
    results["covariance_residual"] = cpt.covariance_residual(f, rep, yy)
    if cfg.function != "bump":
        prof = cpt.PROFILES[cfg.function]
        direct = prof(yy)[:, None] * sum(P(yy) for P in f.polys)
        results["reconstruction_residual"] = float(np.max(np.abs(f(yy) - direct)))
    for key, val in results.items():
        r.line(f"{key}: {_fmt(val)}")

    r.line("decay: m  sup (1+|y|^2)^m |f(y)| on |y| <= 1e3")
    radii = np.concatenate([np.linspace(0, 10, 101), np.geomspace(10, 1e3, 60)])
    pts = cpt.ball_grid(n, radii, directions=8, seed=7)
    vals = np.linalg.norm(f(pts), axis=1)
    r2 = np.sum(pts**2, axis=1)
    decay = {}
    for m in range(4):
        decay[m] = float(np.max((1 + r2) ** m * vals))
        r.line(f"  {m}  {_fmt(decay[m])}")

    r.line("flatness of I(f): shell  p=1  p=2  p=3  p=4")
    flat_rows = []
    for shell in (0.9, 0.95, 0.99, 0.995, 0.999):
        grid = cpt.ball_grid(n, [shell], directions=16, seed=3)
        sampled = cpt.compactify_function(f, grid, cfg.tol)
        table = cpt.boundary_flatness_report(sampled, [1, 2, 3, 4], shell=shell - 1e-12)
        flat_rows.append({"shell": shell, **{f"p{p}": v for p, v in table.items()}})
        r.line(f"  {shell}  " + "  ".join(_fmt(table[p]) for p in (1, 2, 3, 4)))
    r.data.update(function=cfg.function, residuals=results,
                  decay={str(k): v for k, v in decay.items()}, flatness=flat_rows)
    return r


def cmd_dist_decompose(rep, cfg):
    if cfg.dist is None:
        raise ConfigParse("dist-decompose needs --dist")
    r = Report("dist-decompose")
    _group_header(rep, r)
    T = load_distribution(cfg.dist)
    inv, basis = _basis(rep, cfg)
    _generator_lines(r, inv, basis)
    r.line(f"T = {T}")
    result = decompose_dist(T, basis, rep, cfg.order_slack)
    for i, th in enumerate(result.thetas, start=1):
        r.line(f"theta{i} = {th}")
    r.line(f"order slack used: {result.slack}")
    ok = reassemble_dist(result.thetas, basis) == T
    r.line(f"reassembly: {'PASS' if ok else 'FAIL'}")
    r.data.update(T=T.to_json(), thetas=[th.to_json() for th in result.thetas],
                  order_slack=result.slack, reassembly=ok)
    r.ok = ok
    return r


COMMANDS = {
    "close": cmd_close,
    "check-rep": cmd_check_rep,
    "molien": cmd_molien,
    "generators": cmd_generators,
    "certify": cmd_certify,
    "decompose": cmd_decompose,
    "compactify-report": cmd_compactify_report,
    "dist-decompose": cmd_dist_decompose,
}


def build_parser():
    parser = argparse.ArgumentParser(prog="covkit", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="subcommand", required=True)
    for name in COMMANDS:
        p = sub.add_parser(name)
        p.add_argument("--group", required=True, help="group/representation JSON file")
        p.add_argument("--cap", type=int, default=None, help="generator degree cap (default |G|)")
        p.add_argument("--group-cap", type=int, default=DEFAULT_CAP, help="maximum group order")
        p.add_argument("--out", default=None, help="write report here (+ JSON twin)")
        p.add_argument("--json", dest="as_json", action="store_true", help="print the JSON twin")
        if name == "molien":
            p.add_argument("--order", type=int, default=8)
            p.add_argument("--verify", action="store_true", help="add brute-force dimensions")
        if name in ("generators", "certify"):
            p.add_argument("--check-cap", type=int, default=None, help="default 2|G|")
        if name == "decompose":
            p.add_argument("--poly", required=True, help='e.g. "x0^3, x0^2*x1"')
        if name == "compactify-report":
            p.add_argument("--function", default="gaussian",
                           choices=["gaussian", "poly-times-gaussian", "bump"])
            p.add_argument("--tol", type=float, default=cpt.DEFAULT_TOL)
        if name == "dist-decompose":
            p.add_argument("--dist", required=True, help="distribution JSON file")
            p.add_argument("--order-slack", type=int, default=3)
    return parser


def run(cfg: JobConfig):
    """Execute one job; returns ``(exit_code, report_or_None)``."""
    cfg.validate()
    rep = load_group(cfg.group, cap=cfg.group_cap)
    validate(rep)
    report = COMMANDS[cfg.subcommand](rep, cfg)
    body = json.dumps(report.data, indent=2, sort_keys=True) + "\n"
    if cfg.out:
        with open(cfg.out, "w", encoding="utf-8") as fh:
            fh.write(report.text())
        with open(os.path.splitext(cfg.out)[0] + ".json", "w", encoding="utf-8") as fh:
            fh.write(body)
    else:
        sys.stdout.write(body if cfg.as_json else report.text())
    return (EXIT_OK if report.ok else EXIT_FAILURE), report


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    known = set(JobConfig.__dataclass_fields__)
    cfg = JobConfig(**{k: v for k, v in vars(args).items() if k in known})
    try:
        code, _ = run(cfg)
    except (ConfigParse, OSError) as exc:
        name = type(exc).__name__ if isinstance(exc, ConfigParse) else "FileIO"
        print(f"error: {name}: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except CovkitError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_FAILURE
    return code


if __name__ == "__main__":
    sys.exit(main())

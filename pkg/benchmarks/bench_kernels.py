"""Compare the compiled kernels with the pure-Python fallback.

    python benchmarks/bench_kernels.py [--repeat 5]

Workloads are taken from real pipeline inputs: the integer matrices that
the Reynolds-image rank extraction feeds to ``rref_int``, and products of
dense random polynomials for ``poly_mul``. End-to-end timings run the
generator computation in a subprocess per backend.
"""
import argparse
import os
import random
import subprocess
import sys
import timeit
from fractions import Fraction
from math import lcm

from covkit import _kernels_py
from covkit.fixtures import load_fixture
from covkit.polynomials import monomials
from covkit.spaces import columns, flatten, reynolds_images

try:
    from covkit import _kernels as _compiled
except ImportError:
    _compiled = None


def integer_rows(rep, m):
    ncols = len(columns(rep.n, rep.d, m)[0])
    rows = []
    for P in reynolds_images(rep, m):
        row = flatten(P, m)
        den = lcm(*(v.denominator for v in row)) if row else 1
        rows.append([int(v * den) for v in row])
    return rows, ncols


def random_poly(rng, n, deg, count):
    pool = [e for k in range(deg + 1) for e in monomials(n, k)]
    return {e: Fraction(rng.randint(-9, 9), rng.randint(1, 4)) for e in rng.sample(pool, min(count, len(pool)))}


def bench(label, fn, repeat):
    best = min(timeit.repeat(fn, number=1, repeat=repeat))
    return label, best


def end_to_end(pure):
    env = dict(os.environ)
    if pure:
        env["COVKIT_PURE_PYTHON"] = "1"
    code = (
        "import time; from covkit.fixtures import load_fixture;"
        "from covkit.generators import covariant_generators;"
        "rep = load_fixture('s3_sign'); t = time.perf_counter();"
        "covariant_generators(rep, degree_cap=8); print(time.perf_counter() - t)"
    )
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    return float(out.stdout)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    if _compiled is None:
        print("compiled kernels not built; only the python backend is available")

    rep = load_fixture("s3_sign")
    rows, ncols = integer_rows(rep, 7)
    rng = random.Random(0)
    a, b = random_poly(rng, 3, 6, 60), random_poly(rng, 3, 6, 60)
    # rank-deficient: 80 rows spanning a 50-dimensional space
    basis = [[rng.randint(-5, 5) for _ in range(120)] for _ in range(50)]
    mixed = [[sum(c * v for c, v in zip(coef, col)) for col in zip(*basis)]
             for coef in ([rng.randint(-2, 2) for _ in range(50)] for _ in range(30))]
    big = basis + mixed

    cases = [
        (f"rref_int {len(rows)}x{ncols}", lambda k: k.rref_int(rows, ncols)),
        ("rref_int 80x120 rank 50", lambda k: k.rref_int(big, 120)),
        ("poly_mul 60x60 terms", lambda k: k.poly_mul(a, b)),
    ]
    print(f"{'kernel':<28}{'python [s]':>12}{'compiled [s]':>14}{'speedup':>10}")
    for label, call in cases:
        _, t_py = bench(label, lambda: call(_kernels_py), args.repeat)
        if _compiled is not None:
            assert call(_compiled) == call(_kernels_py)
            _, t_c = bench(label, lambda: call(_compiled), args.repeat)
            print(f"{label:<28}{t_py:>12.4f}{t_c:>14.4f}{t_py / t_c:>9.2f}x")
        else:
            print(f"{label:<28}{t_py:>12.4f}{'-':>14}{'-':>10}")

    t_py = end_to_end(pure=True)
    row = f"{'s3_sign generators, cap 8':<28}{t_py:>12.4f}"
    if _compiled is not None:
        t_c = end_to_end(pure=False)
        row += f"{t_c:>14.4f}{t_py / t_c:>9.2f}x"
    print(row)


if __name__ == "__main__":
    main()

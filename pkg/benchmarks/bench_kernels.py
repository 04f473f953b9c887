"""Compare the compiled kernels with the pure-Python fallback.

    python benchmarks/bench_kernels.py [--repeat N]

Both backends are checked for identical output before timing.
"""

import argparse
import sys
import timeit

from surface_cert import _kernels_py
from surface_cert.constructions import he3_mod_p, knot_by_name, twist_spin_quotient
from surface_cert.perm import cyclic_group, quaternion_group

try:
    from surface_cert import _kernels as compiled
except ImportError:
    compiled = None


def coset_cases():
    for name, P in [
        ("cinquefoil / mu^3 (360 cosets)", twist_spin_quotient(knot_by_name("cinquefoil"), 3)),
        ("trefoil / mu^4 (96 cosets)", twist_spin_quotient(knot_by_name("trefoil"), 4)),
        ("trefoil / mu^5 (600 cosets)", twist_spin_quotient(knot_by_name("trefoil"), 5)),
    ]:
        args = (2 * P.num_generators, [r.columns() for r in P.relators], [], 10**6)
        yield name, "hlt_enumerate", args


def bar_cases():
    for name, G, j in [
        ("Z/5, d_4", cyclic_group(5), 4),
        ("Q8, d_4", quaternion_group(), 4),
        ("He3(2), d_4", he3_mod_p(2).group, 4),
        ("Z/16, d_4", cyclic_group(16), 4),
    ]:
        _, mult = G.multiplication_table()
        yield name, "bar_boundary", (mult, j)


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args(argv)
    if compiled is None:
        print("compiled extension not built; only the Python kernels are available", file=sys.stderr)
        return 1
    print(f"{'case':<34}{'python [s]':>12}{'compiled [s]':>14}{'speedup':>10}")
    for name, fn, fargs in list(coset_cases()) + list(bar_cases()):
        py, c = getattr(_kernels_py, fn), getattr(compiled, fn)
        if py(*fargs) != c(*fargs):
            print(f"{name}: backends disagree", file=sys.stderr)
            return 2
        t_py = min(timeit.repeat(lambda: py(*fargs), number=1, repeat=args.repeat))
        t_c = min(timeit.repeat(lambda: c(*fargs), number=1, repeat=args.repeat))
        print(f"{name:<34}{t_py:>12.4f}{t_c:>14.4f}{t_py / t_c:>9.1f}x")
    return 0


if __name__ == "__main__":
    sys.exit(main())

"""Compare the compiled and pure-Python reduction kernels.

Each backend runs in its own interpreter because the kernel is chosen at
import time.  Usage: python3 benchmarks/bench_kernels.py [--repeat N]
"""

import argparse
import json
import os
import subprocess
import sys

WORKLOADS = {
    "cyclic4": (("a", "b", "c", "d"), "QQ", ["a+b+c+d", "a*b+b*c+c*d+d*a", "a*b*c+b*c*d+c*d*a+d*a*b", "a*b*c*d-1"]),
    "katsura4": (
        ("x0", "x1", "x2", "x3", "x4"),
        "GF(32003)",
        [
            "x0+2*x1+2*x2+2*x3+2*x4-1",
            "x0^2+2*x1^2+2*x2^2+2*x3^2+2*x4^2-x0",
            "2*x0*x1+2*x1*x2+2*x2*x3+2*x3*x4-x1",
            "x1^2+2*x0*x2+2*x1*x3+2*x2*x4-x2",
            "2*x1*x2+2*x0*x3+2*x1*x4-x3",
        ],
    ),
    "cyclic5_mod_p": (
        ("a", "b", "c", "d", "e"),
        "GF(32003)",
        [
            "a+b+c+d+e",
            "a*b+b*c+c*d+d*e+e*a",
            "a*b*c+b*c*d+c*d*e+d*e*a+e*a*b",
            "a*b*c*d+b*c*d*e+c*d*e*a+d*e*a*b+e*a*b*c",
            "a*b*c*d*e-1",
        ],
    ),
    "twisted_quartic": (("x", "y", "z", "w"), "QQ", ["x*w-y*z", "y^3-x^2*z", "z^3-y*w^2", "x*z^2-y^2*w"]),
    "resolution": None,
}

CHILD = r"""
import json, sys, time
import cetkit
from cetkit import Ideal, PresentedModule, RingSpec, free_resolution
name, spec, repeat = json.loads(sys.argv[1])
best = float("inf")
from cetkit import modules
for _ in range(repeat):
    modules._module_gb.cache_clear()
    modules._solver.cache_clear()
    if spec is None:
        R = RingSpec(("x", "y", "z", "w"), "QQ")
        t0 = time.perf_counter()
        free_resolution(PresentedModule.cyclic(R, [R("x^2"), R("y^2"), R("z^2"), R("w^2"), R("x*y+z*w")]), 5)
    else:
        vars_, field, gens = spec
        R = RingSpec(tuple(vars_), field)
        I = Ideal(R, [R(g) for g in gens])
        t0 = time.perf_counter()
        I.groebner_basis()
    best = min(best, time.perf_counter() - t0)
print(json.dumps({"backend": cetkit.BACKEND, "seconds": best}))
"""


def run(name, spec, pure, repeat):
    env = dict(os.environ, CETKIT_PURE="1" if pure else "0")
    out = subprocess.run(
        [sys.executable, "-c", CHILD, json.dumps([name, spec, repeat])], env=env, capture_output=True, text=True, check=True
    )
    return json.loads(out.stdout)


def main(argv=None):
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--json", action="store_true", help="print raw results as JSON")
    args = ap.parse_args(argv)
    rows = []
    for name, spec in WORKLOADS.items():
        fast = run(name, spec, False, args.repeat)
        slow = run(name, spec, True, args.repeat)
        rows.append({"workload": name, "compiled": fast, "python": slow, "speedup": slow["seconds"] / fast["seconds"]})
    if args.json:
        print(json.dumps(rows, indent=2))
        return
    print(f"{'workload':<18}{'compiled (s)':>14}{'python (s)':>12}{'speedup':>9}")
    for r in rows:
        tag = "" if r["compiled"]["backend"] == "cython" else "  (extension missing)"
        print(f"{r['workload']:<18}{r['compiled']['seconds']:>14.4f}{r['python']['seconds']:>12.4f}{r['speedup']:>8.2f}x{tag}")


if __name__ == "__main__":
    main()

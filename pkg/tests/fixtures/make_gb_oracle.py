"""Regenerate gb_oracle.json with sympy as the independent oracle.

Run by hand: python3 tests/fixtures/make_gb_oracle.py
"""

import json
from pathlib import Path

import sympy

IDEALS = [
    ("x y", "QQ", ["x^2", "x*y", "y^3"]),
    ("x y", "QQ", ["x^2 - y", "x*y - 1"]),
    ("x y", "QQ", ["x^3 - 2*x*y", "x^2*y - 2*y^2 + x"]),
    ("x y z", "QQ", ["x*z - y^2", "x^3 - z^2"]),
    ("x y z", "QQ", ["x + y + z", "x*y + y*z + x*z", "x*y*z - 1"]),
    ("x y z", "QQ", ["x^2 + y^2 + z^2 - 1", "x - y", "y^2 - z"]),
    ("x y z", "QQ", ["x*y - z^2", "y*z - x^2", "x*z - y^2"]),
    ("x y z", "QQ", ["x^3 + y^3 + z^3", "x*y*z"]),
    ("x y z", "QQ", ["x^2*y - z^3", "2*x*y - 4*z - 1", "z - y^2", "x^3 - 4*z*y"]),
    ("x y z w", "QQ", ["x*z - y^2", "y*w - z^2", "x*w - y*z"]),
    ("x y z w", "QQ", ["x*y - z*w", "x^2 - w^2", "y^3 - z^3"]),
    ("x y z w", "QQ", ["x + y + z + w", "x*y + y*z + z*w + w*x", "x*y*z + y*z*w + z*w*x + w*x*y", "x*y*z*w - 1"]),
    ("x y z w", "QQ", ["x^2 - y*z", "y^2 - z*w", "z^2 - w*x", "w^2 - x*y"]),
    ("x y z w v", "QQ", ["x*y - z*w", "y*z - w*v", "z*w - v*x"]),
    ("x y z w v", "QQ", ["x^2 - v*y", "y^2 - x*z", "z^2 - y*w", "w^2 - z*v"]),
    ("x y z", "GF(7)", ["x^2 + 3*y*z", "y^2 - 2*x*z", "z^3 - x*y"]),
    ("x y z", "GF(32003)", ["x^4 + y^4 + z^4", "x*y*z^2 - 5*x^3*y"]),
    ("x y", "GF(5)", ["x^4 + 2*y", "x*y^2 - 3"]),
    ("x y z w", "GF(101)", ["x*w - y*z", "x^3 - y^2*w + 7*z^3", "y^4 - w^4"]),
    ("x y z", "QQ", ["x^4 - y^4", "x^3*y - z^4", "x*y*z - x^2*z"]),
]


def oracle(vars_, field, gens):
    syms = sympy.symbols(vars_)
    loc = {str(s): s for s in syms}
    polys = [sympy.sympify(g.replace("^", "**"), locals=loc) for g in gens]
    kw = {}
    if field.startswith("GF("):
        kw["modulus"] = int(field[3:-1])
    G = sympy.groebner(polys, *syms, order="grevlex", **kw)
    out = []
    for g in G.exprs:
        p = sympy.Poly(g, *syms, **kw)
        out.append(str(p.monic().as_expr()).replace("**", "^"))
    return out


def main():
    cases = [
        {"vars": v.split(), "field": f, "ideal": gens, "reduced_gb": oracle(v.split(), f, gens)}
        for v, f, gens in IDEALS
    ]
    path = Path(__file__).with_name("gb_oracle.json")
    path.write_text(json.dumps({"oracle": f"sympy {sympy.__version__}", "order": "grevlex", "cases": cases}, indent=1) + "\n")


if __name__ == "__main__":
    main()

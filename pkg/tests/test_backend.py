import json
import os
import subprocess
import sys
from pathlib import Path

import pytest
from hypothesis import given, settings

from cetkit import BACKEND, Ideal
from cetkit import _kernel_py
from cetkit.gbcore import make_monic

from strategies import RINGS, ideals, polynomials

try:
    from cetkit import _kernel
except ImportError:  # pure-Python install
    _kernel = None

needs_ext = pytest.mark.skipif(_kernel is None, reason="compiled kernel not built")


def test_backend_selected():
    assert BACKEND in ("cython", "python")


def test_pure_env_forces_fallback():
    code = "import cetkit; print(cetkit.BACKEND)"
    env = dict(os.environ, CETKIT_PURE="1")
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "python"


def _basis(I):
    return I._entries()


@needs_ext
@pytest.mark.parametrize("name", ["QQ3", "GF7_3"])
@settings(max_examples=30)
@given(data=ideals(RINGS["QQ3"], max_size=3))
def test_kernels_agree_on_normal_forms(name, data):
    ring = RINGS[name]
    gens = [ring.from_terms(g.terms) for g in data]
    gens = [g for g in gens if not g.is_zero()]
    if not gens:
        return
    I = Ideal(ring, gens)
    basis = _basis(I)
    for g in gens:
        f = g * g + g + ring.gens[0] ** 3
        a = _kernel.normal_form(f.enc(), basis, ring.off, ring.field)
        b = _kernel_py.normal_form(f.enc(), basis, ring.off, ring.field)
        assert a == b


@needs_ext
@settings(max_examples=30)
@given(polynomials(RINGS["QQ3"]).filter(lambda f: not f.is_zero()), polynomials(RINGS["QQ3"]).filter(lambda f: not f.is_zero()))
def test_kernels_agree_on_spolys(f, g):
    ring = RINGS["QQ3"]
    a, b = make_monic(f.enc(), ring.field), make_monic(g.enc(), ring.field)
    assert _kernel.spoly(a, b, ring.rows, ring.off, ring.field) == _kernel_py.spoly(a, b, ring.rows, ring.off, ring.field)


def test_pure_backend_gives_same_groebner_basis():
    code = (
        "import cetkit; from cetkit import RingSpec, Ideal; R = RingSpec(('x','y','z','w'), 'QQ');"
        "print(cetkit.BACKEND, sorted(map(str, Ideal(R, [R('x*z-y^2'), R('y*w-z^2'), R('x*w-y*z'), R('x^3-w^2*y')]).groebner_basis())))"
    )
    outs = set()
    for pure in ("0", "1"):
        env = dict(os.environ, CETKIT_PURE=pure)
        out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True).stdout
        outs.add(out.split(" ", 1)[1])
    assert len(outs) == 1


def test_benchmark_runs():
    script = Path(__file__).resolve().parents[1] / "benchmarks" / "bench_kernels.py"
    out = subprocess.run([sys.executable, str(script), "--repeat", "1", "--json"], capture_output=True, text=True, check=True)
    rows = json.loads(out.stdout)
    assert {r["python"]["backend"] for r in rows} == {"python"}
    assert all(r["compiled"]["seconds"] > 0 for r in rows)

import random
from itertools import product

import pytest
from hypothesis import given, settings, strategies as st

from cetkit import (
    Ideal,
    Matrix,
    PresentedModule,
    QuotientRingSpec,
    RingSpec,
    cone_comparison_maps,
    free_resolution,
    homotopy_defect,
    koszul_complex,
    lift_chain_map,
    mapping_cone,
    power_chain_map,
    resolve_complex,
    scalar_chain_map,
    syzygy_sequences,
    wedge_chain_map,
)
from cetkit.complexes import ComplexError

R3 = RingSpec(("x", "y", "z"), "QQ")
x, y, z = R3.gens


def test_koszul_sign_convention(R2):
    K = koszul_complex([R2("x"), R2("y")], R2)
    assert K.d(1).rows == ((R2("x"), R2("y")),)
    # ∂(e_01) = x_0 e_1 - x_1 e_0
    assert K.d(2).col(0) == (R2("-y"), R2("x"))


@given(st.lists(st.sampled_from([x, y, z, x * y, y + z, x**2 - z**2]), min_size=1, max_size=4))
def test_koszul_is_complex(seq):
    K = koszul_complex(seq, R3)
    assert K.is_complex()
    assert K.ranks() == [1, len(seq)] + [K.rank(i) for i in range(2, len(seq) + 1)]


@settings(max_examples=15)
@given(st.permutations([x, y, z]), st.lists(st.integers(1, 3), min_size=3, max_size=3), st.integers(1, 3))
def test_regular_sequences_have_vanishing_koszul_homology(perm, powers, n):
    seq = [v**k for v, k in zip(perm, powers)][:n]
    K = koszul_complex(seq, R3)
    assert all(K.homology(i).is_zero() for i in range(1, n + 1))


@pytest.mark.parametrize(
    "base_gens,seq",
    [(["x^2", "x*y"], ["y", "z"]), ([], ["x*y", "x*z"]), ([], ["x", "x*y"]), (["x*y"], ["x", "y"])],
)
def test_non_regular_sequences_have_h1(base_gens, seq):
    base = QuotientRingSpec(R3, base_gens) if base_gens else R3
    K = koszul_complex([R3(s) for s in seq], base)
    assert not K.homology(1).is_zero()


def test_power_chain_map_all_small_cases():
    for d in (1, 2, 3):
        for v in product((1, 2, 3), repeat=d):
            xs = list(R3.gens[:d])
            phi = power_chain_map(xs, list(v), R3)
            assert phi.is_chain_map()
            expected = R3.one
            for xi, k in zip(xs, v):
                expected = expected * xi ** (k - 1)
            assert phi.top()[0, 0] == expected


def test_wedge_map_determinant():
    A = Matrix(R3, [[x, R3.one], [R3.zero, y]])
    phi = wedge_chain_map(A, [x, y], [x**2, x + y**2])
    assert phi.is_chain_map()
    assert phi.top()[0, 0] == x * y
    with pytest.raises(ComplexError):
        wedge_chain_map(A, [x, y], [x, y])


@pytest.mark.parametrize("w", [1, 2, 3])
def test_mapping_cone_resolves_quotient(R4, twisted_cubic, w):
    F = free_resolution(PresentedModule.cyclic(R4, list(twisted_cubic.gens)), 4)
    t = R4("x")
    G = mapping_cone(scalar_chain_map(F, t**w))
    assert G.is_complex()
    assert all(G.is_exact_at(i) for i in range(1, G.length + 1))
    h0 = Ideal(R4, list(G.d(1).rows[0]))
    assert h0.equals(twisted_cubic + Ideal(R4, [t**w]))


def test_cone_comparison_composites(R2):
    F = free_resolution(PresentedModule.cyclic(R2, [R2("x")]), 2)
    t = R2("y")
    for s_, t_ in ((1, 2), (1, 3), (2, 3)):
        lam_ts, lam_st = cone_comparison_maps(F, t, s_, t_)
        assert lam_ts.is_chain_map() and lam_st.is_chain_map()
        for j in range(lam_st.source.length + 1):
            n = lam_st.source.rank(j)
            assert (lam_ts[j] @ lam_st[j]).equals(Matrix.diag(R2, [t ** (t_ - s_)] * n))
        for i in (1, 2):
            cert = syzygy_sequences(F, t, s_, t_, i)
            assert cert["ii"]["exact"] and cert["iii"]["exact"]


def test_lifts_and_homotopy_defect(R2):
    F = free_resolution(PresentedModule.cyclic(R2, [R2("x"), R2("y")]), 3)
    K = koszul_complex([R2("x^2"), R2("y")], R2)
    one = Matrix.identity(R2, 1)
    phi = lift_chain_map(K, F, one)
    psi = lift_chain_map(K, F, one, rng=random.Random(3))
    assert phi.is_chain_map() and psi.is_chain_map()
    cert = homotopy_defect(phi, psi, [R2("x^2"), R2("y")])
    assert cert.member


def test_resolve_complex_bound():
    S = RingSpec(("x", "y", "z"), "QQ")
    C = koszul_complex([S("x")], QuotientRingSpec(S, ["y", "z"]))
    r = resolve_complex(C)
    assert r.within_bound and r.degreewise_surjective and r.quasi_isomorphic
    assert r.length <= r.s + r.ell

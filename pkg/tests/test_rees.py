import pytest
from hypothesis import given, settings, strategies as st

from cetkit import (
    Ideal,
    RingSpec,
    associated_graded_presentation,
    ext_rees_presentation,
    is_linear_type,
    m_complex,
    rees_presentation,
    regular_sequence_check,
    structure_prime_evidence,
    sym_of_conormal_presentation,
    sym_presentation,
    verify_dehomogenization,
    verify_m_complex,
    verify_structure_quotient,
)

R = RingSpec(("x", "y"), "QQ")
R3 = RingSpec(("x", "y", "z"), "QQ")


def P(ring, *gens):
    return [ring(g) for g in gens]


def test_rees_of_maximal_ideal():
    Rr = rees_presentation(P(R, "x", "y"), R)
    T = Rr.ring
    assert Rr.ideal.equals(Ideal(T, [T("y*Z0 - x*Z1")]))
    assert Rr.is_bihomogeneous()


def test_ext_rees_of_maximal_ideal():
    E = ext_rees_presentation(P(R, "x", "y"), R)
    T = E.ring
    assert E.ideal.equals(Ideal(T, [T("y*Z0 - x*Z1"), T("Z0*u - x"), T("Z1*u - y")]))
    assert E.blowup_weights()[T.vars.index("u")] == -1


@pytest.mark.parametrize(
    "gens,linear",
    [(("x", "y"), True), (("x^2", "y^2"), True), (("x^2", "x*y", "y^2"), False), (("x^3", "x^2*y", "y^3"), False), (("x*y", "x^2"), True)],
)
def test_sym_versus_rees(gens, linear):
    g = P(R, *gens)
    S, Rr = sym_presentation(g, R), rees_presentation(g, R)
    assert Rr.ideal.contains_ideal(S.ideal)
    assert is_linear_type(g, R) is linear
    assert S.ideal.equals(Rr.ideal) is linear


@settings(max_examples=15)
@given(st.lists(st.sampled_from(P(R3, "x", "y", "z", "x*y", "y*z", "x^2", "z^2", "x*z")), min_size=1, max_size=3, unique=True))
def test_sym_contained_in_rees(gens):
    S, Rr = sym_presentation(gens, R3), rees_presentation(gens, R3)
    assert Rr.ideal.contains_ideal(S.ideal)


def test_gr_routes_agree():
    g = P(R, "x^2", "x*y", "y^2")
    A = associated_graded_presentation(g, R, route="rees")
    B = associated_graded_presentation(g, R, route="ext_rees")
    assert A.ideal.equals(B.ideal.to_ring(A.ring))


@pytest.mark.parametrize("gens", [("x", "y"), ("x*y", "x^2", "y^2"), ("x^2", "y^3"), ("x+y", "x*y")])
def test_dehomogenization(gens):
    assert verify_dehomogenization(P(R, *gens), R).verdict == "holds"


def test_structure_quotient_and_negative_control():
    assert verify_structure_quotient(P(R, "x*y", "x^2", "y^2"), R).verdict == "holds"
    rep = verify_structure_quotient(P(R, "x^2", "y^2"), R, R("x"))
    assert rep.verdict == "fails" and rep.witnesses


def test_ext_rees_regular_sequence():
    E = ext_rees_presentation(P(R, "x", "y"), R)
    assert regular_sequence_check(E, [E.u, E.Z(0), E.Z(1)]).verdict == "holds"
    assert regular_sequence_check(E, [E.Z(1), E.u]).verdict == "holds"


def test_structure_prime_bounded_evidence(R4):
    gens = P(R4, "x*w-y*z", "x*z-y^2", "y*w-z^2")
    rep = structure_prime_evidence(gens, R4, 4)
    assert rep.verdict == "bounded_evidence" and rep.evidence_degree == 4
    assert rep.details["dim_quotient"] == 1


def test_m_complex_on_monomial_aci():
    M = m_complex(P(R, "x^2", "y^2"), R("x*y"), R)
    assert M.well_defined()
    # (y, 0) maps to zero: the complex is not injective here
    assert not M.injective()
    assert M.kernel_witness() is not None
    rep = verify_m_complex(P(R, "x^2", "y^2"), R("x*y"), R)
    assert rep.verdict == "fails"
    assert rep.details["h0_equals_sym_conormal"] and not rep.details["h0_equals_gr"]
    conormal = sym_of_conormal_presentation(P(R, "x*y", "x^2", "y^2"), R)
    assert conormal.ideal.contains(conormal.ring("Z0^2 - Z1*Z2")) is False


def test_generic_link_output_is_linear_type():
    from cetkit import generic_link

    G = generic_link(Ideal(R, [R("x"), R("y")]), 2)
    extra = [f for f in G.aprime.gens if not G.c.contains(f)]
    assert is_linear_type(list(G.c.gens) + extra, G.ring)
    assert verify_dehomogenization(extra[:1] + list(G.c.gens), G.ring).verdict == "holds"

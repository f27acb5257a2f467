from hypothesis import given, settings

from cetkit import Ideal, PresentedModule, free_resolution, minimal_generators, syzygies
from cetkit.modules import annihilator, graded_depth, in_span, kernel, projective_dimension, solve

from strategies import RINGS, homogeneous_ideals

R = RINGS["QQ3"]


def _apply(cols, c, ring):
    n = len(cols[0])
    return tuple(sum((ci * col[k] for ci, col in zip(c, cols)), ring.zero) for k in range(n))


def test_syzygies_of_twisted_cubic(twisted_cubic):
    S = syzygies([(g,) for g in twisted_cubic.gens])
    assert len(minimal_generators(S)) == 2
    gens = S.gens
    for s in gens:
        assert sum((a * g for a, g in zip(s, twisted_cubic.gens)), twisted_cubic.ring.zero).is_zero()


def test_resolution_twisted_cubic(R4, twisted_cubic):
    F = free_resolution(PresentedModule.cyclic(R4, list(twisted_cubic.gens)), 4)
    assert F.ranks() == [1, 3, 2]
    assert F.is_complex()
    assert all(F.is_exact_at(i) for i in range(1, F.length + 1))


def test_resolution_over_quotient(R3):
    from cetkit import QuotientRingSpec

    Q = QuotientRingSpec(R3, ["x^2"])
    F = free_resolution(PresentedModule.cyclic(Q, [R3("x"), R3("y"), R3("z")]), 3)
    # Poincaré series (1+t)^2/(1-t)
    assert F.ranks()[:4] == [1, 3, 4, 4]
    assert F.is_complex()


def test_solve_and_kernel(R2):
    cols = [(R2("x"), R2("y")), (R2("y"), R2("x"))]
    v = (R2("x^2+y^2"), R2("2*x*y"))
    c = solve(cols, v, R2)
    assert _apply(cols, c, R2) == v
    assert not in_span(cols, (R2("x"), R2.zero), R2)
    assert kernel(cols, R2) == [] or all(not any(_apply(cols, k, R2)) for k in kernel(cols, R2))


def test_annihilator_and_depth(R3):
    M = PresentedModule.cyclic(R3, [R3("x"), R3("y")])
    assert annihilator(M).equals(Ideal(R3, [R3("x"), R3("y")]))
    assert projective_dimension(M) == 2
    from cetkit import QuotientRingSpec

    assert graded_depth(QuotientRingSpec(R3, ["x^2", "x*y"])) == 1


@settings(max_examples=20)
@given(homogeneous_ideals(R, max_size=3, degrees=(1, 2)))
def test_resolution_is_exact_and_minimal(gens):
    F = free_resolution(PresentedModule.cyclic(R, gens), 4)
    assert F.is_complex()
    for i in range(1, F.length):
        assert F.is_exact_at(i)
    for d in F.diffs:
        for row in d.rows:
            assert not any(a.is_constant() and not a.is_zero() for a in row)
    # Hilbert syzygy theorem
    assert F.length <= R.ngens


@settings(max_examples=20)
@given(homogeneous_ideals(R, max_size=3, degrees=(1, 2)))
def test_syzygies_are_relations(gens):
    for s in syzygies([(g,) for g in gens]).gens:
        assert sum((a * g for a, g in zip(s, gens)), R.zero).is_zero()

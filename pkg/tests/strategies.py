"""Hypothesis strategies for small polynomials and ideals."""

from hypothesis import strategies as st

from cetkit import RingSpec

RINGS = {
    "QQ2": RingSpec(("x", "y"), "QQ"),
    "QQ3": RingSpec(("x", "y", "z"), "QQ"),
    "GF7_3": RingSpec(("x", "y", "z"), "GF(7)"),
}


def monomials(n, max_deg=3):
    return st.sampled_from([e for d in range(max_deg + 1) for e in _of_degree(n, d)])


def polynomials(ring, max_terms=4, max_deg=3, homogeneous=None):
    n = ring.ngens
    mono = monomials(n, max_deg)
    if homogeneous is not None:
        mono = st.sampled_from(_of_degree(n, homogeneous))
    terms = st.dictionaries(mono, st.integers(-5, 5).filter(bool), max_size=max_terms)
    return terms.map(ring.from_terms)


def _of_degree(n, d):
    if n == 1:
        return [(d,)]
    return [(k,) + rest for k in range(d + 1) for rest in _of_degree(n - 1, d - k)]


def ideals(ring, min_size=1, max_size=3, max_deg=3):
    return st.lists(polynomials(ring, 3, max_deg).filter(lambda f: not f.is_zero()), min_size=min_size, max_size=max_size)


def homogeneous_ideals(ring, max_size=3, degrees=(1, 2, 3)):
    def gen(d):
        return polynomials(ring, 3, homogeneous=d).filter(lambda f: not f.is_zero())

    return st.lists(st.sampled_from(degrees).flatmap(gen), min_size=1, max_size=max_size)

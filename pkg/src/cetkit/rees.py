"""Symmetric, Rees, extended Rees and associated graded presentations; the M-complex.

Generators are indexed from 0 with Z_0 ↦ h·t when a distinguished element h
is used (the convention e_0 ↦ h, e_i ↦ a_i).  The blowup grading (deg Z_i = 1,
deg u = -1) cannot be a GB weight, so the GB rings use positive weights
(Z_i weighted by deg a_i + 1, u by 1) and the bigrading is checked post hoc.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .groebner import Ideal, eliminate, ideal_quotient, krull_dimension, regular_sequence_witness
from .linkage import _colon_module, _check_ci
from .matrix import Matrix
from .modules import FreeModule, PresentedModule, Submodule, kernel, minimal_generators_vectors, solve
from .poly import NotHomogeneous, Polynomial, QuotientRingSpec, RingSpec
from .report import CheckReport, timed, verdict

__all__ = [
    "BlowupPresentation",
    "sym_presentation",
    "rees_presentation",
    "ext_rees_presentation",
    "associated_graded_presentation",
    "sym_of_conormal_presentation",
    "is_linear_type",
    "verify_dehomogenization",
    "verify_structure_quotient",
    "structure_prime_evidence",
    "regular_sequence_check",
    "MComplex",
    "m_complex",
    "verify_m_complex",
]

KINDS = ("symmetric", "rees", "extended_rees", "associated_graded")


@dataclass
class BlowupPresentation:
    base: RingSpec
    kind: str
    ring: RingSpec
    ideal: Ideal
    gens: list
    z_names: tuple
    u_name: str | None = None
    generator_map: dict = field(default_factory=dict)

    def blowup_weights(self) -> tuple:
        """Blowup degree of each variable: 0 on A, 1 on Z_i, -1 on u."""
        w = []
        for v in self.ring.vars:
            if v in self.z_names:
                w.append(1)
            elif v == self.u_name:
                w.append(-1)
            else:
                w.append(0)
        return tuple(w)

    def internal_weights(self) -> tuple:
        """Degree in A: deg Z_i = deg a_i, deg u = 0."""
        w = []
        for v, wt in zip(self.ring.vars, self.ring.weights):
            if v == self.u_name:
                w.append(0)
            elif v in self.z_names:
                w.append(wt - 1)
            else:
                w.append(wt)
        return tuple(w)

    def is_bihomogeneous(self) -> bool:
        bw, iw = self.blowup_weights(), self.internal_weights()
        for f in self.ideal.gens:
            if f.weighted_degree(bw) is NotHomogeneous or f.weighted_degree(iw) is NotHomogeneous:
                return False
        return True

    def Z(self, i: int) -> Polynomial:
        return self.ring.gen(self.z_names[i])

    @property
    def u(self) -> Polynomial:
        return self.ring.gen(self.u_name)

    def to_dict(self) -> dict:
        return {
            "kind": self.kind,
            "ring": str(self.ring),
            "ideal": [str(f) for f in self.ideal.gens],
            "generator_map": self.generator_map,
        }


def _prepare(a_gens: Sequence, ring: RingSpec | None) -> tuple:
    if ring is None:
        ring = a_gens[0].ring
    gens = [ring(f) for f in a_gens]
    if not gens or any(not f for f in gens):
        raise ValueError("generators must be nonzero")
    degs = []
    for f in gens:
        d = f.weighted_degree()
        if not isinstance(d, int):
            raise ValueError(f"{f} is not homogeneous")
        degs.append(d)
    return ring, gens, degs


def _z_ring(A: RingSpec, degs: Sequence[int], with_u: bool = False) -> tuple:
    taken = set(A.vars)
    names = []
    for i in range(len(degs)):
        n = f"Z{i}"
        while n in taken:
            n = "_" + n
        names.append(n)
        taken.add(n)
    u = None
    weights = [d + 1 for d in degs]
    if with_u:
        u = "u"
        while u in taken:
            u = "_" + u
        names_all = names + [u]
        weights.append(1)
    else:
        names_all = names
    return A.extend(names_all, weights), tuple(names), u


def _gmap(z_names, gens, u=None) -> dict:
    m = {z: f"({g})*t" for z, g in zip(z_names, gens)}
    if u:
        m[u] = "t^-1"
    return m


def sym_presentation(a_gens: Sequence, ring: RingSpec | None = None) -> BlowupPresentation:
    """Sym_A(a) = A[Z]/𝔡, 𝔡 generated by Σ r_i Z_i over the syzygies r of a_gens."""
    A, gens, degs = _prepare(a_gens, ring)
    AZ, zn, _ = _z_ring(A, degs)
    syz = kernel([(f,) for f in gens], A, 1)
    syz = minimal_generators_vectors(A, syz, tuple(degs))
    Z = [AZ.gen(z) for z in zn]
    forms = [sum((r.to_ring(AZ) * Z[i] for i, r in enumerate(s) if r), AZ.zero) for s in syz]
    return BlowupPresentation(A, "symmetric", AZ, Ideal(AZ, forms), gens, zn, None, _gmap(zn, gens))


def rees_presentation(a_gens: Sequence, ring: RingSpec | None = None) -> BlowupPresentation:
    """Kernel of A[Z] -> A[t], Z_i ↦ a_i t, by eliminating t."""
    A, gens, degs = _prepare(a_gens, ring)
    AZ, zn, _ = _z_ring(A, degs)
    t = AZ.fresh("t")
    T = RingSpec((t,) + AZ.vars, A.field, (1,) + AZ.weights, ("elim", 1))
    tv = T.gen(t)
    rel = [T.gen(z) - g.to_ring(T) * tv for z, g in zip(zn, gens)]
    J = eliminate(Ideal(T, rel), [t]).to_ring(AZ)
    return BlowupPresentation(A, "rees", AZ, J.reduced(), gens, zn, None, _gmap(zn, gens))


def ext_rees_presentation(a_gens: Sequence, ring: RingSpec | None = None) -> BlowupPresentation:
    """Kernel of A[Z, u] -> A[t, s]/(ts - 1), Z_i ↦ a_i t, u ↦ s."""
    A, gens, degs = _prepare(a_gens, ring)
    AZu, zn, u = _z_ring(A, degs, with_u=True)
    t = AZu.fresh("t")
    s = AZu.fresh("s")
    T = RingSpec((t, s) + AZu.vars, A.field, (1, 1) + AZu.weights, ("elim", 2))
    tv, sv = T.gen(t), T.gen(s)
    rel = [T.gen(z) - g.to_ring(T) * tv for z, g in zip(zn, gens)]
    rel += [T.gen(u) - sv, tv * sv - 1]
    J = eliminate(Ideal(T, rel), [t, s]).to_ring(AZu)
    return BlowupPresentation(A, "extended_rees", AZu, J.reduced(), gens, zn, u, _gmap(zn, gens, u))


def associated_graded_presentation(a_gens: Sequence, ring: RingSpec | None = None, route: str = "rees") -> BlowupPresentation:
    """gr_a(A) as A[Z]/J, either as Rees/(a·Rees) or as ExtRees/(u)."""
    if route == "rees":
        P = rees_presentation(a_gens, ring)
        AZ = P.ring
        J = P.ideal + Ideal(AZ, [g.to_ring(AZ) for g in P.gens])
        return BlowupPresentation(P.base, "associated_graded", AZ, J.reduced(), P.gens, P.z_names, None, P.generator_map)
    if route == "ext_rees":
        E = ext_rees_presentation(a_gens, ring)
        AZ = E.ring.subring([v for v in E.ring.vars if v != E.u_name])
        sub = {v: (AZ.gen(v) if v != E.u_name else AZ.zero) for v in E.ring.vars}
        J = Ideal(AZ, [f.substitute(sub, AZ) for f in E.ideal.gens])
        gm = {k: v for k, v in E.generator_map.items() if k != E.u_name}
        return BlowupPresentation(E.base, "associated_graded", AZ, J.reduced(), E.gens, E.z_names, None, gm)
    raise ValueError(f"unknown route {route!r}")


def sym_of_conormal_presentation(a_gens: Sequence, ring: RingSpec | None = None) -> BlowupPresentation:
    """Sym_{A/a}(a/a²) = A[Z]/(𝔡 + a)."""
    P = sym_presentation(a_gens, ring)
    AZ = P.ring
    J = P.ideal + Ideal(AZ, [g.to_ring(AZ) for g in P.gens])
    return BlowupPresentation(P.base, "associated_graded", AZ, J.reduced(), P.gens, P.z_names, None, P.generator_map)


def is_linear_type(a_gens: Sequence, ring: RingSpec | None = None) -> bool:
    S = sym_presentation(a_gens, ring)
    R = rees_presentation(a_gens, ring)
    return S.ideal.equals(R.ideal)


def verify_dehomogenization(a_gens: Sequence, ring: RingSpec | None = None) -> CheckReport:
    """A/((a_1..a_g):h) against 𝔡 with Z_0 ↦ 1 plus (Z_1..Z_g), Z's eliminated; a_gens = (h, a_1..a_g)."""
    with timed() as tm:
        P = sym_presentation(a_gens, ring)
        A, AZ = P.base, P.ring
        h, rest = P.gens[0], P.gens[1:]
        rest_names = P.z_names[1:]
        W = A.extend(rest_names, [AZ.weights[AZ.index[z]] for z in rest_names])
        sub = {v: W.gen(v) for v in A.vars}
        sub[P.z_names[0]] = W.one
        for z in rest_names:
            sub[z] = W.gen(z)
        dehom = Ideal(W, [f.substitute(sub, W) for f in P.ideal.gens] + [W.gen(z) for z in rest_names])
        right = eliminate(dehom, rest_names).to_ring(A) if rest_names else dehom.to_ring(A)
        c = Ideal(A, rest)
        left = ideal_quotient(c, Ideal(A, [h])) if rest else Ideal(A, [])
        equal = left.equals(right)
        degenerate = bool(rest) and c.contains(h)
    details = {"colon": [str(f) for f in left.gens], "dehomogenized": [str(f) for f in right.gens], "sym_ideal": [str(f) for f in P.ideal.gens]}
    if degenerate and equal:
        return CheckReport("dehomogenization", "degenerate", details={**details, "reason": "h lies in (a_1..a_g)"}, timing_ms=tm[0])
    w = [] if equal else [_difference(left, right, ("colon", "dehomogenized"))]
    return CheckReport("dehomogenization", verdict(equal), w, details, tm[0])


def _difference(I: Ideal, J: Ideal, names=("first", "second")) -> str:
    for f in I.gens:
        if not J.contains(f):
            return f"{f} lies in the {names[0]} ideal only"
    for f in J.gens:
        if not I.contains(f):
            return f"{f} lies in the {names[1]} ideal only"
    return "equal"


def verify_structure_quotient(a_gens: Sequence, ring: RingSpec | None = None, h=None) -> CheckReport:
    """(A/a)[X] against ExtRees/(Z_0..Z_g), X ↦ u, compared as ideals of A[u].

    The extended Rees algebra is built on a_gens; the claimed side is
    (a_gens, h)·A[u], so an h outside a exposes the mismatch.
    """
    with timed() as tm:
        E = ext_rees_presentation(a_gens, ring)
        A = E.base
        Au = A.extend([E.u_name], [1])
        J = E.ideal + Ideal(E.ring, [E.Z(i) for i in range(len(E.z_names))])
        computed = eliminate(J, E.z_names).to_ring(Au)
        claimed_gens = [g.to_ring(Au) for g in E.gens]
        if h is not None:
            claimed_gens.append(A(h).to_ring(Au))
        claimed = Ideal(Au, claimed_gens)
        equal = computed.equals(claimed)
    details = {"computed": [str(f) for f in computed.gens], "claimed": [str(f) for f in claimed.gens]}
    w = [] if equal else [_difference(claimed, computed, ("claimed", "computed"))]
    return CheckReport("structure_quotient", verdict(equal), w, details, tm[0])


def structure_prime_evidence(a_gens: Sequence, ring: RingSpec | None = None, N: int = 4) -> CheckReport:
    """Bounded evidence that 𝔓 = (m_A, a_1 t..a_g t, t^-1) is a height-d prime.

    The epimorphism k[X] -> ExtRees/𝔓, X ↦ ht, has kernel (X^i) or 0; we check
    (ht)^i ∉ 𝔓 for i ≤ N and dim ExtRees/𝔓 = 1, dim ExtRees = d + 1.
    """
    with timed() as tm:
        E = ext_rees_presentation(a_gens, ring)
        A = E.base
        R = E.ring
        P = E.ideal + Ideal(R, [R.gen(v) for v in A.vars] + [E.Z(i) for i in range(1, len(E.z_names))] + [E.u])
        z0 = E.Z(0)
        powers_ok = all(not P.contains(z0**i) for i in range(1, N + 1))
        dim_E = krull_dimension(E.ideal)
        dim_q = krull_dimension(P)
        d = A.ngens
        ok = powers_ok and dim_q == 1 and dim_E == d + 1
    details = {"powers_outside": powers_ok, "dim_quotient": dim_q, "dim_ext_rees": dim_E, "height": dim_E - dim_q}
    if not ok:
        return CheckReport("structure_prime", "fails", [details], details, tm[0])
    return CheckReport("structure_prime", "bounded_evidence", [], details, tm[0], evidence_degree=N)


def regular_sequence_check(base, seq: Sequence) -> CheckReport:
    """Sequential colon certificates for seq on base (ring, quotient or blowup presentation)."""
    if isinstance(base, BlowupPresentation):
        ring, I = base.ring, base.ideal
    elif isinstance(base, QuotientRingSpec):
        ring, I = base.ambient, base.defining
    else:
        ring, I = base, Ideal(base, [])
    with timed() as tm:
        seq = [ring(f) for f in seq]
        i, w = regular_sequence_witness(seq, I)
    details = {"sequence": [str(f) for f in seq]}
    if i is None:
        return CheckReport("regular_sequence", "holds", [], details, tm[0])
    details["failed_at"] = i + 1
    return CheckReport("regular_sequence", "fails", [str(w)], details, tm[0])


@dataclass
class MComplex:
    """0 -> (b/c)⊗S(-1) -∂-> (A/a)⊗S -> 0 over S = A[Z_0..Z_g]."""

    ring: RingSpec
    source: PresentedModule
    target: PresentedModule
    differential: Matrix
    generators: list
    alphas: list
    a: Ideal
    degenerate: bool = False

    def well_defined(self) -> bool:
        N = self.target.relation_module()
        return all(N.contains(self.differential.apply(r)) for r in self.source.relation_vectors())

    def kernel_witness(self):
        """A vector of the source mapping to zero but not zero in the source, or None."""
        k = self.source.gens_rank
        if k == 0:
            return None
        N1 = self.source.relation_module()
        cols = [(f,) for f in self.differential.rows[0]] + [(g,) for g in self.a.gens]
        for s in kernel(cols, self.ring, 1):
            v = s[:k]
            if any(v) and not N1.contains(v):
                return v
        return None

    def injective(self) -> bool:
        return self.kernel_witness() is None

    def h0_ideal(self) -> Ideal:
        return self.a + Ideal(self.ring, list(self.differential.rows[0]))

    def to_dict(self) -> dict:
        return {
            "ring": str(self.ring),
            "generators": [str(f) for f in self.generators],
            "differential": self.differential.to_strings(),
            "alphas": [[str(x) for x in a] for a in self.alphas],
        }


def m_complex(c_gens: Sequence, h, ring: RingSpec | None = None) -> MComplex:
    """The M-complex of a = (h, a_1..a_g) with ∂(r ⊗ 1) = r Z_0 - Σ α_i Z_i where rh = Σ α_i a_i."""
    A = ring if ring is not None else c_gens[0].ring
    c_gens = [A(f) for f in c_gens]
    h = A(h)
    c = Ideal(A, c_gens)
    _check_ci(c)
    degs = [h.weighted_degree()] + [f.weighted_degree() for f in c_gens]
    S, zn, _ = _z_ring(A, degs)
    Z = [S.gen(z) for z in zn]
    a_S = Ideal(S, [f.to_ring(S) for f in [h] + c_gens])
    if c.contains(h):
        empty = PresentedModule(S, (), Matrix(S, [], 0))
        return MComplex(S, empty, PresentedModule.cyclic(S, a_S.gens), Matrix(S, [[]], 0), [], [], a_S, True)
    b = ideal_quotient(c, Ideal(A, [h]))
    M, gens = _colon_module(c, b)
    alphas, entries = [], []
    for r in gens:
        alpha = solve([(f,) for f in c_gens], (r * h,), A, 1)
        if alpha is None:
            raise ArithmeticError(f"{r}·h is not in c")
        alphas.append(alpha)
        e = r.to_ring(S) * Z[0] - sum((al.to_ring(S) * Z[i + 1] for i, al in enumerate(alpha)), S.zero)
        entries.append(e)
    k = len(gens)
    rel = [tuple(x.to_ring(S) for x in col) for col in M.relation_vectors()]
    tw = tuple(t + degs[0] for t in M.twists)
    src = PresentedModule(S, tw, Matrix.from_columns(S, rel, k) if rel else Matrix.zero(S, k, 0))
    tgt = PresentedModule.cyclic(S, a_S.gens)
    return MComplex(S, src, tgt, Matrix(S, [entries], k), gens, alphas, a_S)


def verify_m_complex(c_gens: Sequence, h, ring: RingSpec | None = None) -> CheckReport:
    """Injectivity of ∂ and H_0 against gr_a(A) (ExtRees/(u)) and Sym_{A/a}(a/a²)."""
    with timed() as tm:
        M = m_complex(c_gens, h, ring)
        if M.degenerate:
            return CheckReport("m_complex", "degenerate", details={"reason": "h lies in c"})
        A = c_gens[0].ring if ring is None else ring
        gens = [A(h)] + [A(f) for f in c_gens]
        wd = M.well_defined()
        wit = M.kernel_witness()
        H0 = M.h0_ideal()
        gr = associated_graded_presentation(gens, A, route="ext_rees")
        symc = sym_of_conormal_presentation(gens, A)
        gr_J = gr.ideal.to_ring(M.ring)
        sym_J = symc.ideal.to_ring(M.ring)
        h0_gr = H0.equals(gr_J)
        h0_sym = H0.equals(sym_J)
    details = {
        **M.to_dict(),
        "well_defined": wd,
        "injective": wit is None,
        "h0_equals_gr": h0_gr,
        "h0_equals_sym_conormal": h0_sym,
        "h0_ideal": [str(f) for f in H0.gens],
        "gr_ideal": [str(f) for f in gr_J.gens],
    }
    ok = wd and wit is None and h0_gr
    witnesses = []
    if wit is not None:
        witnesses.append({"kernel_element": [str(x) for x in wit]})
    if not h0_gr:
        witnesses.append({"h0_vs_gr": _difference(gr_J, H0, ("gr", "H_0"))})
    if not wd:
        witnesses.append("differential does not respect the relations")
    return CheckReport("m_complex", verdict(ok), witnesses, details, tm[0])

"""Chain complexes of free modules and the chain maps between them.

Koszul convention: the basis of K_k is e_S for index subsets S = (s_0 < ... <
s_{k-1}) in lexicographic order, and

    ∂(e_S) = Σ_j (-1)^j x_{s_j} e_{S minus s_j},

so ∂(e_0∧e_1) = x_0 e_1 - x_1 e_0.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from itertools import combinations
from typing import Sequence

from .groebner import Ideal
from .matrix import Matrix
from .modules import (
    FreeModule,
    LiftingError,
    PresentedModule,
    base_parts,
    check_short_exact,
    in_span,
    kernel,
    minimal_generators_vectors,
    projective_dimension,
    solve,
    subquotient_homology,
    vector_degree,
    _ideal_relations,
)
from .poly import NotHomogeneous, Polynomial, QuotientRingSpec, RingSpec, random_homogeneous

__all__ = [
    "ChainComplex",
    "ChainMap",
    "koszul_complex",
    "lift_chain_map",
    "wedge_chain_map",
    "power_chain_map",
    "scalar_chain_map",
    "mapping_cone",
    "cone_comparison_maps",
    "syzygy_sequences",
    "resolve_complex",
    "homology_iso_at",
    "homotopy_defect",
    "ComplexError",
]


class ComplexError(ValueError):
    pass


class ChainComplex:
    """C_0 <- C_1 <- ... <- C_n; ``diffs[i-1]`` is ∂_i: C_i -> C_{i-1}."""

    def __init__(self, base, modules: Sequence[FreeModule], diffs: Sequence[Matrix]):
        self.base = base
        self.ring, self.ideal = base_parts(base)
        self.modules = list(modules)
        self.diffs = list(diffs)
        if len(self.diffs) != max(len(self.modules) - 1, 0):
            raise ComplexError("need one differential per positive degree")
        for i, d in enumerate(self.diffs, start=1):
            if d.shape != (self.modules[i - 1].rank, self.modules[i].rank):
                raise ComplexError(f"differential {i} has shape {d.shape}")

    @property
    def length(self) -> int:
        return len(self.modules) - 1

    def rank(self, i: int) -> int:
        return self.modules[i].rank if 0 <= i < len(self.modules) else 0

    def ranks(self) -> list:
        return [m.rank for m in self.modules]

    def twists(self, i: int) -> tuple:
        return self.modules[i].twists if 0 <= i < len(self.modules) else ()

    def d(self, i: int) -> Matrix:
        if 1 <= i <= self.length:
            return self.diffs[i - 1]
        return Matrix.zero(self.ring, self.rank(i - 1), self.rank(i))

    def is_complex(self) -> bool:
        return all((self.d(i) @ self.d(i + 1)).is_zero(self.base) for i in range(1, self.length))

    def homology(self, i: int, minimal: bool = True) -> PresentedModule:
        tw = self.twists(i) if minimal and self._graded_at(i) else None
        incoming = self.d(i + 1) if self.rank(i + 1) else None
        outgoing = self.d(i) if i >= 1 and self.rank(i - 1) else None
        return subquotient_homology(incoming, outgoing, self.base, tw, self.rank(i))

    def _graded_at(self, i: int) -> bool:
        for j in (i, i + 1):
            if 1 <= j <= self.length:
                tw = self.twists(j - 1)
                for c in self.d(j).columns():
                    if vector_degree(c, tw) is NotHomogeneous:
                        return False
        return True

    def is_exact_at(self, i: int) -> bool:
        return self.homology(i, minimal=False).is_zero()

    def to_dict(self) -> dict:
        return {
            "ranks": self.ranks(),
            "diffs": [d.to_strings() for d in self.diffs],
        }


class ChainMap:
    """maps[i]: source_i -> target_i; ``degree`` is the internal degree of the map."""

    def __init__(self, source: ChainComplex, target: ChainComplex, maps: Sequence[Matrix], degree: int = 0):
        self.source, self.target = source, target
        self.maps = list(maps)
        self.degree = degree
        for i, m in enumerate(self.maps):
            if m.shape != (target.rank(i), source.rank(i)):
                raise ComplexError(f"component {i} has shape {m.shape}")

    def __getitem__(self, i: int) -> Matrix:
        if 0 <= i < len(self.maps):
            return self.maps[i]
        return Matrix.zero(self.source.ring, self.target.rank(i), self.source.rank(i))

    def is_chain_map(self) -> bool:
        S, T = self.source, self.target
        top = max(S.length, len(self.maps) - 1)
        for i in range(1, top + 1):
            lhs = T.d(i) @ self[i]
            rhs = self[i - 1] @ S.d(i)
            if not lhs.equals(rhs, T.base):
                return False
        return True

    def compose(self, other: ChainMap) -> ChainMap:
        """self ∘ other."""
        n = min(len(self.maps), len(other.maps))
        return ChainMap(other.source, self.target, [self[i] @ other[i] for i in range(n)], self.degree + other.degree)

    def top(self) -> Matrix:
        return self.maps[-1]


def _poly_degree(f: Polynomial) -> int:
    d = f.weighted_degree() if f else 0
    return d if isinstance(d, int) else 0


def koszul_complex(x: Sequence, base) -> ChainComplex:
    ring, _ = base_parts(base)
    x = [ring(a) for a in x]
    if not x:
        raise ComplexError("Koszul complex of an empty sequence")
    n = len(x)
    degs = [_poly_degree(a) for a in x]
    subsets = [list(combinations(range(n), k)) for k in range(n + 1)]
    modules = [FreeModule(ring, len(s), tuple(sum(degs[i] for i in S) for S in s)) for s in subsets]
    diffs = []
    z = ring.zero
    for k in range(1, n + 1):
        pos = {S: r for r, S in enumerate(subsets[k - 1])}
        rows = [[z] * len(subsets[k]) for _ in subsets[k - 1]]
        for c, S in enumerate(subsets[k]):
            for j, s in enumerate(S):
                T = S[:j] + S[j + 1:]
                rows[pos[T]][c] = x[s] if j % 2 == 0 else -x[s]
        diffs.append(Matrix(ring, rows, len(subsets[k])))
    return ChainComplex(base, modules, diffs)


def _random_kernel_shift(ring, kern, kern_tw, want_deg, rng):
    out = None
    for z in kern:
        dz = vector_degree(z, kern_tw)
        if dz is None or dz is NotHomogeneous or want_deg is None:
            continue
        c = random_homogeneous(ring, want_deg - dz, rng, 3) if want_deg >= dz else ring.zero
        if c:
            v = tuple(c * a for a in z)
            out = v if out is None else tuple(a + b for a, b in zip(out, v))
    return out


def lift_chain_map(source: ChainComplex, target: ChainComplex, phi0: Matrix, rng: random.Random | None = None, degree: int = 0) -> ChainMap:
    """Extend phi0 to a chain map by division against the target's image submodules.

    With ``rng`` each component is shifted by a random element of ker ∂^target,
    which gives an independent lift of the same phi0.
    """
    base = target.base
    ring = target.ring
    if phi0.shape != (target.rank(0), source.rank(0)):
        raise ComplexError("phi0 has the wrong shape")
    maps = [phi0.reduce(base)]
    for i in range(1, source.length + 1):
        prev = maps[i - 1]
        dS = source.d(i)
        dT = target.d(i)
        cols = []
        kern = None
        for j in range(source.rank(i)):
            c = prev.apply(dS.col(j))
            if target.rank(i) == 0:
                if any(target.ideal.normal_form(a) if target.ideal.gens else a for a in c):
                    raise LiftingError(f"cannot lift in degree {i}: target vanishes but the image is nonzero")
                cols.append(())
                continue
            u = solve(dT.columns(), c, base, target.rank(i - 1))
            if u is None:
                raise LiftingError(f"lifting obstruction in degree {i}, column {j}")
            if target.ideal.gens:
                u = tuple(target.ideal.normal_form(a) for a in u)
            if rng is not None:
                if kern is None:
                    kern = kernel(dT.columns(), base, target.rank(i - 1)) if dT.ncols else []
                want = source.twists(i)[j] + degree
                shift = _random_kernel_shift(ring, kern, target.twists(i), want, rng)
                if shift is not None:
                    u = tuple(a + b for a, b in zip(u, shift))
                    if target.ideal.gens:
                        u = tuple(target.ideal.normal_form(a) for a in u)
            cols.append(u)
        maps.append(Matrix.from_columns(ring, cols, target.rank(i)) if target.rank(i) else Matrix.zero(ring, 0, source.rank(i)))
    return ChainMap(source, target, maps, degree)


def _check_combination(A: Matrix, x, y, base) -> None:
    ring, I = base_parts(base)
    if A.shape != (len(x), len(y)):
        raise ComplexError("A must be len(x) x len(y)")
    for i in range(len(y)):
        s = sum((A[j, i] * x[j] for j in range(len(x))), ring.zero)
        diff = s - y[i]
        if I.gens:
            diff = I.normal_form(diff)
        if diff:
            raise ComplexError(f"y_{i} is not Σ_j A_(j,{i}) x_j")


def wedge_chain_map(A: Matrix, x: Sequence, y: Sequence, base=None) -> ChainMap:
    """The exterior powers of f_A: K(y) -> K(x), with y_i = Σ_j A_ji x_j."""
    base = base if base is not None else A.ring
    ring, _ = base_parts(base)
    x = [ring(a) for a in x]
    y = [ring(a) for a in y]
    _check_combination(A, x, y, base)
    Kx, Ky = koszul_complex(x, base), koszul_complex(y, base)
    n, m = len(x), len(y)
    maps = [Matrix.identity(ring, 1)]
    for k in range(1, min(n, m) + 1):
        Ts = list(combinations(range(n), k))
        Ss = list(combinations(range(m), k))
        rows = [[A.submatrix(T, S).det() for S in Ss] for T in Ts]
        maps.append(Matrix(ring, rows, len(Ss)))
    for k in range(min(n, m) + 1, m + 1):
        maps.append(Matrix.zero(ring, Kx.rank(k), Ky.rank(k)))
    return ChainMap(Ky, Kx, maps)


def power_chain_map(x: Sequence, v: Sequence[int], base=None) -> ChainMap:
    """K(x_1^v_1, ..., x_d^v_d) -> K(x) with A = diag(x_i^(v_i - 1)); top map Π x_i^(v_i - 1)."""
    x = list(x)
    if len(v) != len(x) or any(k < 1 for k in v):
        raise ComplexError("exponents must be positive, one per element")
    ring = x[0].ring
    base = base if base is not None else ring
    A = Matrix.diag(ring, [a ** (k - 1) for a, k in zip(x, v)])
    return wedge_chain_map(A, x, [a**k for a, k in zip(x, v)], base)


def scalar_chain_map(F: ChainComplex, f: Polynomial) -> ChainMap:
    """Multiplication by f on every term of F."""
    maps = [Matrix.diag(F.ring, [f] * F.rank(i)) for i in range(F.length + 1)]
    return ChainMap(F, F, maps, _poly_degree(f))


def mapping_cone(f: ChainMap) -> ChainComplex:
    """cone(f: C -> D)_j = D_j ⊕ C_{j-1}, ∂ = [[∂^D, f], [0, -∂^C]]."""
    C, D = f.source, f.target
    ring = D.ring
    n = max(D.length, C.length + 1)
    modules, diffs = [], []
    for j in range(n + 1):
        tw = D.twists(j) + tuple(t + f.degree for t in C.twists(j - 1))
        modules.append(FreeModule(ring, D.rank(j) + C.rank(j - 1), tw))
    for j in range(1, n + 1):
        dD = D.d(j)
        fj = f[j - 1]
        dC = C.d(j - 1)
        zero = Matrix.zero(ring, C.rank(j - 2), D.rank(j))
        top = Matrix.block(ring, [[dD, fj]]) if D.rank(j - 1) else Matrix.zero(ring, 0, D.rank(j) + C.rank(j - 1))
        bottom = (
            Matrix.block(ring, [[zero, -dC]]) if C.rank(j - 2) else Matrix.zero(ring, 0, D.rank(j) + C.rank(j - 1))
        )
        rows = list(top.rows) + list(bottom.rows)
        diffs.append(Matrix(ring, rows, D.rank(j) + C.rank(j - 1)))
    return ChainComplex(D.base, modules, diffs)


def _h0_ideal(F: ChainComplex) -> Ideal:
    if F.rank(0) != 1:
        raise ComplexError("expected a resolution of a cyclic module")
    gens = list(F.d(1).rows[0]) if F.length >= 1 else []
    return Ideal(F.ring, gens + list(F.ideal.gens))


def _block_diag(ring, a: Polynomial, m: int, b: Polynomial, n: int) -> Matrix:
    return Matrix.diag(ring, [a] * m + [b] * n)


def cone_comparison_maps(F: ChainComplex, y: Polynomial, s: int, t: int) -> tuple:
    """(λ_ts: tG -> sG, λ_st: sG -> tG) between wG = cone(y^w·id_F) for w = t, s."""
    if t < s:
        raise ComplexError("need t >= s")
    p = _h0_ideal(F)
    if p.contains(y):
        raise ComplexError("y lies in the ideal resolved by F")
    ring = F.ring
    Gs = mapping_cone(scalar_chain_map(F, y**s))
    Gt = mapping_cone(scalar_chain_map(F, y**t))
    yd = y ** (t - s)
    one = ring.one
    n = Gs.length
    lam_ts = ChainMap(Gt, Gs, [_block_diag(ring, one, F.rank(j), yd, F.rank(j - 1)) for j in range(n + 1)], (t - s) * _poly_degree(y))
    lam_st = ChainMap(Gs, Gt, [_block_diag(ring, yd, F.rank(j), one, F.rank(j - 1)) for j in range(n + 1)], (t - s) * _poly_degree(y))
    return lam_ts, lam_st


def _syz(G: ChainComplex, i: int) -> PresentedModule:
    ring = G.ring
    rel = G.d(i + 1) if G.rank(i + 1) else Matrix.zero(ring, G.rank(i), 0)
    return PresentedModule(G.base, G.twists(i), rel)


def _mod_power(F: ChainComplex, i: int, f: Polynomial) -> PresentedModule:
    ring = F.ring
    n = F.rank(i)
    rel = F.d(i + 1) if F.rank(i + 1) else Matrix.zero(ring, n, 0)
    rel = Matrix.block(ring, [[rel, Matrix.diag(ring, [f] * n)]]) if n else rel
    return PresentedModule(F.base, F.twists(i), rel)


def syzygy_sequences(F: ChainComplex, y: Polynomial, s: int, t: int, i: int) -> dict:
    """Exactness certificates for the two short exact sequences of syzygy modules at index i.

    "ii": 0 -> syz_i(tG) -> syz_i(sG) -> syz_{i-1}(F)/y^(t-s) -> 0
    "iii": 0 -> syz_i(sG) -> syz_i(tG) -> syz_i(F)/y^(t-s) -> 0
    """
    lam_ts, lam_st = cone_comparison_maps(F, y, s, t)
    Gt, Gs = lam_ts.source, lam_ts.target
    ring = F.ring
    yd = y ** (t - s)
    a, b = F.rank(i), F.rank(i - 1)
    proj_second = Matrix.block(ring, [[Matrix.zero(ring, b, a), Matrix.identity(ring, b)]]) if b else Matrix.zero(ring, 0, a)
    proj_first = Matrix.block(ring, [[Matrix.identity(ring, a), Matrix.zero(ring, a, b)]]) if a else Matrix.zero(ring, 0, a + b)
    ii = check_short_exact(lam_ts[i], proj_second, _syz(Gt, i), _syz(Gs, i), _mod_power(F, i - 1, yd))
    iii = check_short_exact(lam_st[i], proj_first, _syz(Gs, i), _syz(Gt, i), _mod_power(F, i, yd))
    return {"ii": ii, "iii": iii}


def homology_iso_at(phi: ChainMap, i: int) -> dict:
    """Whether phi induces an isomorphism H_i(source) -> H_i(target)."""
    S, T = phi.source, phi.target
    ring = T.ring
    pi = phi[i]
    # cycles of the source (over its own base)
    if S.rank(i) == 0:
        Zs = []
    elif i >= 1 and S.rank(i - 1):
        Zs = kernel(S.d(i).columns(), S.base, S.rank(i - 1))
    else:
        Zs = [FreeModule(ring, S.rank(i)).basis(k) for k in range(S.rank(i))]
    images = [pi.apply(z) for z in Zs]
    Bt = T.d(i + 1).columns() if T.rank(i + 1) and T.rank(i) else []
    if T.rank(i) == 0:
        Zt = []
    elif i >= 1 and T.rank(i - 1):
        Zt = kernel(T.d(i).columns(), T.base, T.rank(i - 1))
    else:
        Zt = [FreeModule(ring, T.rank(i)).basis(k) for k in range(T.rank(i))]
    surjective = all(in_span(images + Bt, z, T.base, T.rank(i)) for z in Zt) if Zt else True
    injective = True
    if Zs and T.rank(i):
        coeffs = kernel(images + Bt, T.base, T.rank(i))
        Bs = S.d(i + 1).columns() if S.rank(i + 1) else []
        for cvec in coeffs:
            a = cvec[: len(Zs)]
            elt = tuple(sum((c * z[k] for c, z in zip(a, Zs)), ring.zero) for k in range(S.rank(i)))
            if any(elt) and not in_span(Bs, elt, S.base, S.rank(i)):
                injective = False
                break
    elif Zs:
        Bs = S.d(i + 1).columns() if S.rank(i + 1) else []
        injective = all(in_span(Bs, z, S.base, S.rank(i)) for z in Zs)
    return {"surjective": surjective, "injective": injective, "iso": surjective and injective}


@dataclass
class ResolvedComplex:
    resolution: ChainComplex
    comparison: ChainMap
    s: int
    ell: int
    length: int
    within_bound: bool
    degreewise_surjective: bool
    homology_iso: list = field(default_factory=list)

    @property
    def quasi_isomorphic(self) -> bool:
        return all(h["iso"] for h in self.homology_iso)


def resolve_complex(C: ChainComplex, ell: int | None = None, max_extra: int = 3) -> ResolvedComplex:
    """Free resolution P -> C over the ambient polynomial ring (degreewise surjective).

    P_i covers W_i = {(c, p) in C_i ⊕ Z_{i-1}(P) : ∂c = π(p)}; the construction stops
    when W_i vanishes.  ``ell`` defaults to the largest projective dimension of a term.
    """
    ring, I = C.ring, C.ideal
    nonzero = [i for i in range(C.length + 1) if C.rank(i)]
    if not nonzero:
        raise ComplexError("complex is zero")
    s = max(nonzero)
    if ell is None:
        ell = projective_dimension(PresentedModule.cyclic(ring, I.gens)) if I.gens else 0
    Irel = I.groebner_basis() if I.gens else []
    P_mods = [FreeModule(ring, C.rank(0), C.twists(0))]
    P_diffs: list = []
    pis = [Matrix.identity(ring, C.rank(0))]
    i = 1
    cap = s + ell + max_extra
    while i <= cap:
        rc, rc1 = C.rank(i), C.rank(i - 1)
        pp = P_mods[i - 1].rank
        pp2 = P_mods[i - 2].rank if i >= 2 else 0
        tgt = rc1 + pp2
        dC = C.d(i)
        dP = P_diffs[i - 2] if i >= 2 else None
        pi_prev = pis[i - 1]
        cols = []
        for k in range(rc):
            cols.append(tuple(dC.col(k)) + (ring.zero,) * pp2)
        for l in range(pp):
            top = tuple(-a for a in pi_prev.col(l)) if rc1 else ()
            bot = tuple(dP.col(l)) if dP is not None else ()
            cols.append(top + bot)
        rel = []
        for j in range(rc1):
            for f in Irel:
                v = [ring.zero] * tgt
                v[j] = f
                rel.append(tuple(v))
        nsrc = rc + pp
        if tgt == 0:
            W = [FreeModule(ring, nsrc).basis(k) for k in range(nsrc)]
        else:
            W = [w[:nsrc] for w in kernel(cols + rel, ring, tgt)]
        W = [w for w in W if any(w)]
        src_tw = C.twists(i) + P_mods[i - 1].twists
        W = minimal_generators_vectors(ring, W, src_tw)
        if not W:
            break
        tw = tuple(vector_degree(w, src_tw) for w in W)
        P_mods.append(FreeModule(ring, len(W), tw))
        P_diffs.append(Matrix.from_columns(ring, [w[rc:] for w in W], pp))
        pis.append(Matrix.from_columns(ring, [w[:rc] for w in W], rc) if rc else Matrix.zero(ring, 0, len(W)))
        i += 1
    P = ChainComplex(ring, P_mods, P_diffs)
    # pad C-side maps for degrees beyond C
    maps = [pis[k] if k < len(pis) else Matrix.zero(ring, C.rank(k), P.rank(k)) for k in range(P.length + 1)]
    Cp = ChainComplex(C.base, C.modules + [FreeModule(ring, 0)] * max(0, P.length - C.length),
                      C.diffs + [Matrix.zero(ring, C.rank(k - 1), 0) for k in range(C.length + 1, P.length + 1)])
    pi = ChainMap(P, Cp, maps)
    surj = all(
        in_span(maps[k].columns(), FreeModule(ring, C.rank(k)).basis(j), C.base, C.rank(k))
        for k in range(C.length + 1)
        for j in range(C.rank(k))
    )
    iso = [homology_iso_at(pi, k) for k in range(max(P.length, C.length) + 1)]
    return ResolvedComplex(P, pi, s, ell, P.length, P.length <= s + ell, surj, iso)


@dataclass
class DefectCertificate:
    defect: tuple
    member: bool
    coefficients: tuple | None
    generators: list

    def is_zero(self) -> bool:
        return not any(self.defect)


def homotopy_defect(phi: ChainMap, psi: ChainMap, x: Sequence) -> DefectCertificate:
    """φ_d(1) - ψ_d(1) together with a certificate of membership in im ∂_{d+1} + (x)F_d."""
    F = phi.target
    ring = F.ring
    d = len(x)
    if phi.source.rank(d) != 1 or psi.source.rank(d) != 1:
        raise ComplexError("source must be a Koszul complex on x")
    h0 = (phi[0] - psi[0]).columns()
    B1 = F.d(1).columns() if F.rank(1) else []
    for c in h0:
        if any(c) and not in_span(B1, c, F.base, F.rank(0)):
            raise ComplexError("the two maps disagree on H_0")
    defect = tuple(a - b for a, b in zip(phi[d].col(0), psi[d].col(0)))
    if F.ideal.gens:
        defect = tuple(F.ideal.normal_form(a) for a in defect)
    n = F.rank(d)
    gens = list(F.d(d + 1).columns()) if F.rank(d + 1) else []
    basis = FreeModule(ring, n)
    for xi in x:
        for k in range(n):
            gens.append(tuple(xi * a for a in basis.basis(k)))
    coeffs = solve(gens, defect, F.base, n) if n else ()
    member = coeffs is not None
    if not member:
        raise LiftingError("defect is not in im ∂ + (x)F_d: the target is not acyclic")
    return DefectCertificate(defect, member, coeffs, gens)

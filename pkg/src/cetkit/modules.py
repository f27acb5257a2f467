"""Free modules, submodules with POT Gröbner bases, syzygies, resolutions, homology.

Quotient rings P/I are handled in the ambient ring P: every submodule of P^r
is enlarged by I·P^r.  Vectors are plain tuples of polynomials internally;
``ModuleElement`` is the public wrapper.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Sequence

from . import gbcore
from .groebner import Ideal, NotHomogeneousError
from .matrix import Matrix
from .poly import NotHomogeneous, Polynomial, QuotientRingSpec, RingError, RingSpec

__all__ = [
    "FreeModule",
    "ModuleElement",
    "Submodule",
    "PresentedModule",
    "module_gb",
    "syzygies",
    "kernel",
    "solve",
    "in_span",
    "minimal_generators",
    "minimal_generators_vectors",
    "free_resolution",
    "subquotient_homology",
    "annihilator",
    "projective_dimension",
    "graded_depth",
    "check_short_exact",
    "LiftingError",
]


class LiftingError(ArithmeticError):
    """A vector that had to lie in an image submodule does not."""


def base_parts(base) -> tuple:
    if isinstance(base, QuotientRingSpec):
        return base.ambient, base.defining
    if isinstance(base, RingSpec):
        return base, Ideal(base, [])
    raise TypeError(f"not a ring: {base!r}")


def as_quotient(base) -> QuotientRingSpec:
    if isinstance(base, QuotientRingSpec):
        return base
    return QuotientRingSpec(base)


@dataclass(frozen=True)
class FreeModule:
    ring: RingSpec
    rank: int
    twists: tuple = None

    def __post_init__(self):
        tw = tuple(self.twists) if self.twists is not None else (0,) * self.rank
        if len(tw) != self.rank:
            raise ValueError("one twist per basis element")
        object.__setattr__(self, "twists", tw)

    def basis(self, i: int) -> tuple:
        z, o = self.ring.zero, self.ring.one
        return tuple(o if j == i else z for j in range(self.rank))

    def zero(self) -> tuple:
        return (self.ring.zero,) * self.rank

    def degree(self, vec: Sequence[Polynomial]):
        return vector_degree(vec, self.twists)


class ModuleElement:
    """Element of a free module: a coordinate vector of polynomials."""

    __slots__ = ("coords",)

    def __init__(self, coords: Sequence[Polynomial]):
        self.coords = tuple(coords)

    def __len__(self):
        return len(self.coords)

    def __iter__(self):
        return iter(self.coords)

    def __getitem__(self, i):
        return self.coords[i]

    def __add__(self, other):
        return ModuleElement(a + b for a, b in zip(self.coords, other))

    def __sub__(self, other):
        return ModuleElement(a - b for a, b in zip(self.coords, other))

    def __neg__(self):
        return ModuleElement(-a for a in self.coords)

    def __rmul__(self, f):
        return ModuleElement(f * a for a in self.coords)

    def __eq__(self, other):
        return tuple(self.coords) == tuple(other)

    def __hash__(self):
        return hash(self.coords)

    def is_zero(self) -> bool:
        return not any(self.coords)

    def __repr__(self):
        return "(" + ", ".join(map(str, self.coords)) + ")"


def vector_degree(vec: Sequence[Polynomial], twists: Sequence[int]):
    """Common degree of a homogeneous vector, None for zero, NotHomogeneous otherwise."""
    degs = set()
    for f, tw in zip(vec, twists):
        if f:
            d = f.weighted_degree()
            if d is NotHomogeneous:
                return NotHomogeneous
            degs.add(d + tw)
    if len(degs) > 1:
        return NotHomogeneous
    return degs.pop() if degs else None


def vec_enc(vec: Sequence[Polynomial], shift: int = 0) -> dict:
    out: dict = {}
    for i, f in enumerate(vec):
        if f:
            out.update(f.enc(i + shift))
    return out


def vec_dec(ring: RingSpec, d: dict, rank: int, shift: int = 0) -> tuple:
    off = ring.off
    buckets: list = [dict() for _ in range(rank)]
    for m, c in d.items():
        k = m[0] - shift
        if 0 <= k < rank:
            buckets[k][m[off:]] = c
    return tuple(Polynomial(ring, b) for b in buckets)


def _relation_polys(I: Ideal, rank: int, shift: int = 0) -> list:
    if not I.gens:
        return []
    gb = I.groebner_basis()
    return [g.enc(j + shift) for j in range(rank) for g in gb]


def _ctx(ring: RingSpec, rank: int) -> gbcore.Ctx:
    return gbcore.Ctx(ring, module=rank > 1)


@lru_cache(maxsize=512)
def _module_gb(ring: RingSpec, gens: tuple, rank: int, igens: tuple) -> list:
    I = Ideal(ring, igens)
    polys = [vec_enc(g) for g in gens] + _relation_polys(I, rank)
    return gbcore.buchberger(polys, _ctx(ring, rank))


class Submodule:
    """Submodule of a free module over ``base`` (relations of a quotient base included)."""

    def __init__(self, ambient: FreeModule, gens: Sequence[Sequence], base=None):
        self.ambient = ambient
        self.base = base if base is not None else ambient.ring
        ring, I = base_parts(self.base)
        if ring != ambient.ring:
            raise RingError("base and ambient ring differ")
        self.ideal = I
        gens = [tuple(ring(x) for x in g) for g in gens]
        if any(len(g) != ambient.rank for g in gens):
            raise ValueError("generator length must equal the ambient rank")
        self.gens = [g for g in gens if any(g)]

    def _entries(self) -> list:
        return _module_gb(self.ambient.ring, tuple(self.gens), self.ambient.rank, self.ideal.gens)

    def groebner_basis(self) -> list:
        R, r = self.ambient.ring, self.ambient.rank
        return [ModuleElement(vec_dec(R, dict(t), r)) for _, t in self._entries()]

    def reduce(self, v: Sequence[Polynomial]) -> tuple:
        R = self.ambient.ring
        d = gbcore.normal_form(vec_enc(v), self._entries(), R.off, R.field)
        return vec_dec(R, d, self.ambient.rank)

    def contains(self, v: Sequence[Polynomial]) -> bool:
        return not any(self.reduce(v))

    def contains_module(self, other: Submodule) -> bool:
        return all(self.contains(g) for g in other.gens)

    def equals(self, other: Submodule) -> bool:
        return self.contains_module(other) and other.contains_module(self)

    def is_zero(self) -> bool:
        red = self.ideal.normal_form if self.ideal.gens else (lambda f: f)
        return not any(red(a) for g in self.gens for a in g)


def module_gb(S: Submodule) -> list:
    return S.groebner_basis()


class _Solver:
    """POT Gröbner basis of {(g_i, e_i)} ∪ {(f·e_j, 0)} ∪ {(0, f·e_i)} for f in GB(I)."""

    def __init__(self, ring: RingSpec, cols: tuple, rank: int, igens: tuple):
        self.ring, self.rank, self.m = ring, rank, len(cols)
        I = Ideal(ring, igens)
        polys = []
        for i, c in enumerate(cols):
            d = vec_enc(c)
            d.update(ring.one.enc(rank + i))
            polys.append(d)
        polys += _relation_polys(I, rank) + _relation_polys(I, self.m, rank)
        self.gb = gbcore.buchberger(polys, gbcore.Ctx(ring, module=True))

    def solve(self, v: Sequence[Polynomial]):
        R = self.ring
        d = gbcore.normal_form(vec_enc(v), self.gb, R.off, R.field)
        if any(m[0] < self.rank for m in d):
            return None
        return tuple(-x for x in vec_dec(R, d, self.m, self.rank))

    def kernel(self) -> list:
        R = self.ring
        out = []
        for lm, terms in self.gb:
            if lm[0] >= self.rank:
                v = vec_dec(R, dict(terms), self.m, self.rank)
                out.append(v)
        return out


@lru_cache(maxsize=512)
def _solver(ring: RingSpec, cols: tuple, rank: int, igens: tuple) -> _Solver:
    return _Solver(ring, cols, rank, igens)


def _prep(cols: Sequence, base, rank: int | None = None):
    ring, I = base_parts(base)
    cols = tuple(tuple(ring(x) for x in (c if isinstance(c, (tuple, list, ModuleElement)) else (c,))) for c in cols)
    if rank is None:
        if not cols:
            raise ValueError("rank needed for an empty generator list")
        rank = len(cols[0])
    if any(len(c) != rank for c in cols):
        raise ValueError("generators of unequal length")
    return ring, I, cols, rank


def solve(cols: Sequence, v: Sequence[Polynomial], base, rank: int | None = None):
    """Coefficients u with Σ u_i·cols[i] ≡ v modulo the base relations, or None."""
    ring, I, cols, rank = _prep(cols, base, rank if rank is not None else len(v))
    v = tuple(ring(x) for x in v)
    if not cols:
        if not I.gens:
            return () if not any(v) else None
        return () if all(I.contains(x) for x in v) else None
    return _solver(ring, cols, rank, I.gens).solve(v)


def in_span(cols: Sequence, v: Sequence[Polynomial], base, rank: int | None = None) -> bool:
    return solve(cols, v, base, rank) is not None


def kernel(cols: Sequence, base, rank: int | None = None) -> list:
    """Generators of {u : Σ u_i·cols[i] ≡ 0}, entries reduced modulo the base relations."""
    ring, I, cols, rank = _prep(cols, base, rank)
    if not cols:
        return []
    out = []
    for v in _solver(ring, cols, rank, I.gens).kernel():
        if I.gens:
            v = tuple(I.normal_form(x) for x in v)
        if any(v):
            out.append(v)
    return out


def syzygies(gens: Sequence, base=None) -> Submodule:
    """Syzygy module of the generators (polynomials or vectors of equal length)."""
    if not gens:
        raise ValueError("syzygies of an empty list")
    g0 = gens[0]
    ring = g0.ring if isinstance(g0, Polynomial) else g0[0].ring
    base = base if base is not None else ring
    ker = kernel(gens, base)
    return Submodule(FreeModule(ring, len(gens)), ker, base)


def minimal_generators_vectors(ring: RingSpec, vecs: Sequence, twists: Sequence[int], relations: Sequence = ()) -> list:
    """Graded Nakayama: keep a vector iff it is not in the span of relations and earlier kept vectors."""
    rank = len(twists)
    items = []
    for k, v in enumerate(vecs):
        v = tuple(v)
        d = vector_degree(v, twists)
        if d is NotHomogeneous:
            raise NotHomogeneousError(f"vector {tuple(map(str, v))} is not homogeneous")
        if d is not None:
            items.append((d, k, v))
    items.sort(key=lambda t: (t[0], t[1]))
    ctx = _ctx(ring, rank)
    basis = gbcore.buchberger([vec_enc(r) for r in relations if any(r)], ctx)
    kept = []
    for _, _, v in items:
        d = gbcore.normal_form(vec_enc(v), basis, ring.off, ring.field)
        if d:
            kept.append(v)
            basis = gbcore.buchberger([vec_enc(v)], ctx, basis)
    return kept


def _ideal_relations(I: Ideal, rank: int) -> list:
    if not I.gens:
        return []
    R = I.ring
    z = R.zero
    return [tuple(f if j == i else z for j in range(rank)) for i in range(rank) for f in I.groebner_basis()]


def minimal_generators(S: Submodule) -> list:
    ring = S.ambient.ring
    kept = minimal_generators_vectors(ring, S.gens, S.ambient.twists, _ideal_relations(S.ideal, S.ambient.rank))
    return [ModuleElement(v) for v in kept]


@dataclass
class PresentedModule:
    """Cokernel of ``relations`` (columns) on a free module with ``twists`` over ``base``.

    ``generators`` optionally records what the generators stand for (e.g. cycle
    vectors for homology).
    """

    base: object
    twists: tuple
    relations: Matrix
    generators: list = field(default_factory=list)

    def __post_init__(self):
        self.twists = tuple(self.twists)
        if self.relations.nrows != len(self.twists):
            raise ValueError("relation columns must have length gens_rank")

    @property
    def gens_rank(self) -> int:
        return len(self.twists)

    @property
    def ring(self) -> RingSpec:
        return base_parts(self.base)[0]

    @classmethod
    def cyclic(cls, base, ideal_gens: Sequence, twist: int = 0) -> PresentedModule:
        """base/(ideal_gens) as a presented module."""
        ring = base_parts(base)[0]
        gens = [ring(g) for g in ideal_gens]
        return cls(base, (twist,), Matrix(ring, [gens], len(gens)))

    def relation_vectors(self) -> list:
        return self.relations.columns()

    def relation_module(self) -> Submodule:
        return Submodule(FreeModule(self.ring, self.gens_rank, self.twists), self.relation_vectors(), self.base)

    def is_zero(self) -> bool:
        N = self.relation_module()
        F = N.ambient
        return all(N.contains(F.basis(i)) for i in range(F.rank))

    def is_homogeneous(self) -> bool:
        return all(vector_degree(c, self.twists) is not NotHomogeneous for c in self.relation_vectors())

    def minimal_presentation(self) -> PresentedModule:
        ring, I = base_parts(self.base)
        tw, cols, kept = prune_presentation(self.twists, self.relation_vectors(), I)
        cols = minimal_generators_vectors(ring, cols, tw, _ideal_relations(I, len(tw)))
        gens = [self.generators[i] for i in kept] if self.generators else []
        return PresentedModule(self.base, tw, Matrix.from_columns(ring, cols, len(tw)), gens)

    def num_generators(self) -> int:
        return self.minimal_presentation().gens_rank


def prune_presentation(twists: Sequence[int], cols: Sequence, I: Ideal) -> tuple:
    """Remove generator/relation pairs joined by a unit entry.

    Returns (twists, columns, indices of the surviving generators).
    """
    tw = list(twists)
    keep_idx = list(range(len(tw)))
    red = I.normal_form if I.gens else (lambda f: f)
    cols = [tuple(red(x) for x in c) for c in cols]
    cols = [c for c in cols if any(c)]
    while True:
        pivot = None
        for j, c in enumerate(cols):
            for i, a in enumerate(c):
                if a and a.is_constant():
                    pivot = (i, j)
                    break
            if pivot:
                break
        if pivot is None:
            return tuple(tw), cols, keep_idx
        i, j = pivot
        pc = cols[j]
        R = pc[i].ring
        uinv = R.inv(pc[i].constant_term())
        new_cols = []
        for k, c in enumerate(cols):
            if k == j:
                continue
            a = c[i]
            if a:
                f = a.scale(uinv)
                c = tuple(red(x - f * y) for x, y in zip(c, pc))
            c = c[:i] + c[i + 1:]
            if any(c):
                new_cols.append(c)
        cols = new_cols
        del tw[i]
        del keep_idx[i]


def free_resolution(M: PresentedModule, length: int):
    """Minimal graded free resolution F_0 <- ... <- F_length of M (or shorter if it ends)."""
    from .complexes import ChainComplex

    if not M.is_homogeneous():
        raise NotHomogeneousError("free_resolution needs a homogeneous presentation")
    ring, I = base_parts(M.base)
    tw, cols, _ = prune_presentation(M.twists, M.relation_vectors(), I)
    cols = minimal_generators_vectors(ring, cols, tw, _ideal_relations(I, len(tw)))
    modules = [FreeModule(ring, len(tw), tw)]
    diffs = []
    prev_tw = tw
    for i in range(1, length + 1):
        if not cols:
            break
        tw_i = tuple(vector_degree(c, prev_tw) for c in cols)
        diffs.append(Matrix.from_columns(ring, cols, len(prev_tw)))
        modules.append(FreeModule(ring, len(cols), tw_i))
        if i == length:
            break
        ker = kernel(cols, M.base, len(prev_tw))
        cols = minimal_generators_vectors(ring, ker, tw_i, _ideal_relations(I, len(tw_i)))
        prev_tw = tw_i
    return ChainComplex(M.base, modules, diffs)


def subquotient_homology(incoming: Matrix | None, outgoing: Matrix | None, base=None, twists=None, rank=None) -> PresentedModule:
    """ker(outgoing)/im(incoming) as a presented module; ``is_zero()`` decides vanishing.

    Either map may be None (zero map).  ``twists`` (degrees of the middle basis)
    enable a minimal presentation; without them all kernel generators are kept.
    """
    mats = [m for m in (incoming, outgoing) if m is not None]
    if base is None:
        base = mats[0].ring
    ring, I = base_parts(base)
    if rank is None:
        if outgoing is not None:
            rank = outgoing.ncols
        elif incoming is not None:
            rank = incoming.nrows
        elif twists is not None:
            rank = len(twists)
        else:
            raise ValueError("cannot infer the middle rank")
    if outgoing is not None and outgoing.ncols != rank:
        raise ValueError("outgoing map has the wrong source rank")
    if incoming is not None and incoming.nrows != rank:
        raise ValueError("incoming map has the wrong target rank")
    if incoming is not None and outgoing is not None and not (outgoing @ incoming).is_zero(base):
        raise ValueError("composite of the two maps is nonzero")
    F = FreeModule(ring, rank, twists)
    if outgoing is None or outgoing.nrows == 0:
        Z = [F.basis(i) for i in range(rank)]
    else:
        Z = kernel(outgoing.columns(), base, outgoing.nrows)
    Bcols = [c for c in incoming.columns() if any(c)] if incoming is not None else []
    rel = Bcols + _ideal_relations(I, rank)
    if twists is not None:
        Zmin = minimal_generators_vectors(ring, Z, F.twists, rel)
    else:
        Zmin = [z for z in Z if not in_span(rel, z, ring, rank)] if rel else [z for z in Z if any(z)]
    k = len(Zmin)
    tw = tuple(vector_degree(z, F.twists) or 0 for z in Zmin) if twists is not None else (0,) * k
    if k == 0:
        return PresentedModule(base, (), Matrix(ring, [], 0), [])
    syz = kernel(Zmin + Bcols, base, rank)
    rcols = [s[:k] for s in syz if any(s[:k])]
    return PresentedModule(base, tw, Matrix.from_columns(ring, rcols, k), Zmin)


def annihilator(M: PresentedModule) -> Ideal:
    """ann(M) = ∩_i (N : e_i), N the relation module."""
    ring, I = base_parts(M.base)
    cols = M.relation_vectors()
    F = FreeModule(ring, M.gens_rank)
    result = None
    for i in range(M.gens_rank):
        syz = kernel(cols + [F.basis(i)], M.base, F.rank)
        J = Ideal(ring, [s[-1] for s in syz] + list(I.gens))
        result = J if result is None else result.intersect(J)
    if result is None:
        return Ideal(ring, [ring.one])
    return result.reduced()


def projective_dimension(M: PresentedModule) -> int:
    """Length of the minimal graded resolution over the ambient polynomial ring."""
    ring, I = base_parts(M.base)
    if I.gens:
        raise ValueError("projective dimension is computed over polynomial rings only")
    F = free_resolution(M, ring.ngens + 1)
    if F.modules[-1].rank == 0:
        return len(F.modules) - 2
    return len(F.modules) - 1


def graded_depth(Q) -> int:
    """depth of ambient/I via Auslander–Buchsbaum: n - pd."""
    Q = as_quotient(Q)
    ring, I = Q.ambient, Q.defining
    M = PresentedModule.cyclic(ring, I.gens)
    return ring.ngens - projective_dimension(M)


def check_short_exact(f: Matrix, g: Matrix, A: PresentedModule, B: PresentedModule, C: PresentedModule) -> dict:
    """Decide exactness of 0 -> A -f-> B -g-> C -> 0 for presented modules.

    Returns a dict of named boolean certificates.
    """
    ring = f.ring
    NA, NB, NC = A.relation_module(), B.relation_module(), C.relation_module()
    res = {}
    res["f_well_defined"] = all(NB.contains(f.apply(c)) for c in A.relation_vectors()) and all(
        NB.contains(f.apply(v)) for v in _ideal_relations(NA.ideal, A.gens_rank)
    )
    res["g_well_defined"] = all(NC.contains(g.apply(c)) for c in B.relation_vectors())
    res["composite_zero"] = all(NC.contains(c) for c in (g @ f).columns())
    # f injective: {u : f(u) in N_B} must lie in N_A
    fcols = f.columns()
    pre = kernel(fcols + NB.gens + _ideal_relations(NB.ideal, B.gens_rank), ring, B.gens_rank) if fcols else []
    res["f_injective"] = all(NA.contains(s[: A.gens_rank]) for s in pre)
    # middle: ker g ⊆ im f + N_B
    gcols = g.columns()
    kg = kernel(gcols + NC.gens + _ideal_relations(NC.ideal, C.gens_rank), ring, C.gens_rank) if gcols else []
    span = fcols + NB.gens
    res["middle_exact"] = all(
        in_span(span, s[: B.gens_rank], B.base, B.gens_rank) for s in kg
    )
    # g surjective
    FC = FreeModule(ring, C.gens_rank)
    res["g_surjective"] = all(in_span(gcols + NC.gens, FC.basis(i), C.base, C.gens_rank) for i in range(C.gens_rank))
    res["exact"] = all(res.values())
    return res

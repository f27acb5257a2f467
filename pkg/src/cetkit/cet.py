"""Membership checkers: Monomial property, CE property and its variant.

All three decide a single ideal or submodule membership; "holds" means the
relevant element is NOT a member.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from functools import reduce
from operator import mul
from typing import Sequence

from .complexes import ChainComplex, koszul_complex, lift_chain_map, power_chain_map
from .groebner import Ideal, krull_dimension
from .matrix import Matrix
from .modules import FreeModule, PresentedModule, as_quotient, free_resolution, solve
from .poly import Polynomial, QuotientRingSpec
from .report import CheckReport, timed, verdict

__all__ = [
    "SOPError",
    "SOPSpec",
    "VariantSpec",
    "certify_sop",
    "variant_spec",
    "monomial_check",
    "ce_check",
    "variant_ce_check",
]


class SOPError(ValueError):
    pass


@dataclass(frozen=True)
class SOPSpec:
    base: QuotientRingSpec
    x: tuple
    certified: bool
    dim: int


def certify_sop(base, x: Sequence) -> SOPSpec:
    """Check #x = dim(base) and dim(base/(x)) = 0."""
    Q = as_quotient(base)
    R, I = Q.ambient, Q.defining
    x = tuple(R(f) for f in x)
    d = krull_dimension(I)
    if len(x) != d:
        raise SOPError(f"{len(x)} elements given but dim = {d}")
    J = I + Ideal(R, x)
    if J.is_unit():
        raise SOPError("the elements generate the unit ideal")
    rest = krull_dimension(J)
    if rest != 0:
        raise SOPError(f"dimension {rest} remains after the quotient")
    return SOPSpec(Q, x, True, d)


@dataclass(frozen=True)
class VariantSpec:
    sop: SOPSpec
    q: Ideal
    w: int
    v: int


def variant_spec(sop: SOPSpec, q: Sequence, w: int, v: int) -> VariantSpec:
    """Validate q ⊇ (x_2..x_d), x_1 ∉ q, height(q) = d - 1 in the base."""
    if not sop.certified:
        raise SOPError("uncertified system of parameters")
    if w < 1 or v < 1:
        raise SOPError("w and v must be positive")
    R, I = sop.base.ambient, sop.base.defining
    q = Ideal(R, [R(f) for f in q])
    Iq = I + q
    for xi in sop.x[1:]:
        if not Iq.contains(xi):
            raise SOPError(f"{xi} is not in q")
    if Iq.contains(sop.x[0]):
        raise SOPError("x_1 lies in q")
    hq = sop.dim - krull_dimension(Iq)
    if hq != sop.dim - 1:
        raise SOPError(f"height(q) = {hq}, expected {sop.dim - 1}")
    return VariantSpec(sop, q, w, v)


def _prod(fs, one):
    return reduce(mul, fs, one)


def monomial_check(sop: SOPSpec, t: int) -> CheckReport:
    """x_1^t⋯x_d^t ∉ (x_1^(t+1), ..., x_d^(t+1)) in the base."""
    if not sop.certified:
        raise SOPError("uncertified system of parameters")
    with timed() as tm:
        R, I = sop.base.ambient, sop.base.defining
        J = I + Ideal(R, [xi ** (t + 1) for xi in sop.x])
        m = _prod([xi**t for xi in sop.x], R.one)
        nf = J.normal_form(m)
    ok = bool(nf)
    details = {"t": t, "monomial": str(m), "normal_form": str(nf)}
    return CheckReport("monomial", verdict(ok), [] if ok else [str(m)], details, tm[0])


def _residue_resolution(base: QuotientRingSpec, extra: Sequence[Polynomial], length: int) -> ChainComplex:
    """Minimal graded resolution of base/(extra) over base, to the given length."""
    M = PresentedModule.cyclic(base, list(extra))
    return free_resolution(M, length)


def _membership(F: ChainComplex, d: int, elt: tuple, powers: Sequence[Polynomial]) -> tuple:
    """Decide elt ∈ im ∂_{d+1} + (powers)·F_d; returns (member, coefficients)."""
    n = F.rank(d)
    if n == 0:
        return True, ()
    gens = list(F.d(d + 1).columns()) if F.rank(d + 1) else []
    basis = FreeModule(F.ring, n)
    for p in powers:
        for k in range(n):
            gens.append(tuple(p * a for a in basis.basis(k)))
    coeffs = solve(gens, elt, F.base, n)
    return coeffs is not None, coeffs


def _pad(F: ChainComplex, d: int) -> ChainComplex:
    """F with zero modules appended up to degree d + 1 (a finite resolution may stop early)."""
    if F.length >= d + 1:
        return F
    R = F.ring
    mods = list(F.modules) + [FreeModule(R, 0)] * (d + 1 - F.length)
    diffs = list(F.diffs) + [Matrix.zero(R, mods[k - 1].rank, 0) for k in range(F.length + 1, d + 2)]
    return ChainComplex(F.base, mods, diffs)


def _ce_core(name: str, base: QuotientRingSpec, xs: Sequence[Polynomial], target_extra: Sequence[Polynomial],
             pre: Polynomial, powers: Sequence[Polynomial], v_exps: Sequence[int], rng, details: dict) -> CheckReport:
    R = base.ambient
    d = len(xs)
    F = _pad(_residue_resolution(base, target_extra, d + 1), d)
    K = koszul_complex(list(xs), base)
    phi = lift_chain_map(K, F, Matrix.identity(R, 1), rng=rng)
    if not phi.is_chain_map():
        raise ArithmeticError("lifted map is not a chain map")
    # lift of K(x^v) as phi ∘ (power map); its top is Π x_i^(v_i-1) · φ_d(1)
    zeta = power_chain_map(list(xs), list(v_exps), base)
    top = (phi[d] @ zeta[d]).col(0) if F.rank(d) else ()
    elt = tuple(pre * a for a in top)
    member, coeffs = _membership(F, d, elt, powers)
    ok = not member
    details.update(
        {
            "resolution_ranks": F.ranks(),
            "phi_d": [str(a) for a in phi[d].col(0)] if F.rank(d) else [],
            "element": [str(a) for a in elt],
            "member": member,
        }
    )
    witnesses = [] if ok else [{"coefficients": [str(c) for c in coeffs]}]
    return CheckReport(name, verdict(ok), witnesses, details)


def ce_check(sop: SOPSpec, v: int, seed: int | None = None) -> CheckReport:
    """Π x_i^(v-1) · φ_d(1) ∉ im ∂_{d+1} + (x_1^v..x_d^v) F_d, F a resolution of the residue field."""
    if not sop.certified:
        raise SOPError("uncertified system of parameters")
    rng = random.Random(seed) if seed is not None else None
    with timed() as tm:
        base = sop.base
        R = base.ambient
        xs = list(sop.x)
        rep = _ce_core(
            "ce",
            base,
            xs,
            list(R.gens),
            R.one,
            [x**v for x in xs],
            [v] * len(xs),
            rng,
            {"v": v},
        )
    rep.timing_ms = tm[0]
    rep.seed_used = seed
    return rep


def variant_ce_check(spec: VariantSpec, seed: int | None = None) -> CheckReport:
    """x_1^(w-1) · x_1^(wv-w) Π_{i≥2} x_i^(v-1) · φ_d(1) ∉ im ∂_{d+1} + (x_1^(wv), x_2^v..x_d^v) G_d,
    G a resolution of base/(q + x_1^w) and φ a lift of K(x_1^w, x_2..x_d)."""
    rng = random.Random(seed) if seed is not None else None
    with timed() as tm:
        sop = spec.sop
        base = sop.base
        R = base.ambient
        x1, rest = sop.x[0], list(sop.x[1:])
        w, v = spec.w, spec.v
        xs = [x1**w] + rest
        rep = _ce_core(
            "variant_ce",
            base,
            xs,
            list(spec.q.gens) + [x1**w],
            x1 ** (w - 1),
            [x ** v for x in xs],
            [v] * len(xs),
            rng,
            {"w": w, "v": v, "q": [str(f) for f in spec.q.gens]},
        )
    rep.timing_ms = tm[0]
    rep.seed_used = seed
    return rep

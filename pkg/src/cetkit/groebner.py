"""Ideals with cached reduced Gröbner bases and the standard ideal operations."""

from __future__ import annotations

import threading
from typing import Iterable, Sequence

from . import gbcore
from .poly import Polynomial, QuotientRingSpec, RingError, RingSpec

__all__ = [
    "Ideal",
    "groebner_basis",
    "normal_form",
    "ideal_quotient",
    "ideal_intersect",
    "eliminate",
    "saturate",
    "krull_dimension",
    "height",
    "min_gens_count",
    "divide_exact",
    "NotHomogeneousError",
    "is_regular_sequence",
    "regular_sequence_witness",
]


class NotHomogeneousError(ValueError):
    pass


class Ideal:
    """Ideal given by generators; the reduced GB is computed once on demand."""

    def __init__(self, ring: RingSpec, gens: Iterable = ()):
        self.ring = ring
        self.gens = tuple(g for g in (ring(x) for x in gens) if g)
        self._gb = None
        self._lock = threading.Lock()

    @classmethod
    def of(cls, ring: RingSpec, *gens) -> Ideal:
        return cls(ring, gens)

    def _entries(self) -> list:
        if self._gb is None:
            with self._lock:
                if self._gb is None:
                    ctx = gbcore.Ctx(self.ring)
                    self._gb = gbcore.buchberger([g.enc() for g in self.gens], ctx)
        return self._gb

    def groebner_basis(self) -> list:
        return [self.ring.from_engine(dict(t)) for _, t in self._entries()]

    def normal_form(self, f) -> Polynomial:
        f = self.ring(f)
        if not self.gens:
            return f
        r = gbcore.normal_form(f.enc(), self._entries(), self.ring.off, self.ring.field)
        return self.ring.from_engine(r)

    def contains(self, f) -> bool:
        return not self.normal_form(f)

    def __contains__(self, f) -> bool:
        return self.contains(f)

    def contains_ideal(self, other: Ideal) -> bool:
        return all(self.contains(g) for g in other.gens)

    def equals(self, other: Ideal) -> bool:
        """Mutual normal-form vanishing of generators."""
        return self.contains_ideal(other) and other.contains_ideal(self)

    def is_zero(self) -> bool:
        return not self.gens

    def is_unit(self) -> bool:
        return any(g[0][self.ring.off:] == (0,) * self.ring.ngens for g in self._entries()) if self.gens else False

    def is_homogeneous(self) -> bool:
        return all(g.is_homogeneous() for g in self.gens)

    def leading_monomials(self) -> list:
        off = self.ring.off
        return [lm[off:] for lm, _ in self._entries()]

    def __add__(self, other) -> Ideal:
        if isinstance(other, Ideal):
            other = other.gens
        elif isinstance(other, Polynomial):
            other = (other,)
        return Ideal(self.ring, self.gens + tuple(self.ring(g) for g in other))

    def __mul__(self, other: Ideal) -> Ideal:
        return Ideal(self.ring, [a * b for a in self.gens for b in other.gens])

    def scaled(self, f: Polynomial) -> Ideal:
        return Ideal(self.ring, [f * g for g in self.gens])

    def to_ring(self, ring: RingSpec) -> Ideal:
        return Ideal(ring, [g.to_ring(ring) for g in self.gens])

    def quotient(self, other) -> Ideal:
        return ideal_quotient(self, other)

    def intersect(self, other: Ideal) -> Ideal:
        return ideal_intersect(self, other)

    def saturate(self, f) -> Ideal:
        return saturate(self, f)

    def dimension(self) -> int:
        return krull_dimension(self)

    def height(self) -> int:
        return height(self)

    def reduced(self) -> Ideal:
        """Same ideal, generated by its reduced GB (which is cached)."""
        J = Ideal(self.ring, self.groebner_basis())
        J._gb = self._entries()
        return J

    def __repr__(self):
        return f"Ideal({', '.join(map(str, self.gens))})"

    def __str__(self):
        return "(" + ", ".join(map(str, self.gens)) + ")"


def _as_ideal(I, ring=None) -> Ideal:
    if isinstance(I, Ideal):
        return I
    if isinstance(I, QuotientRingSpec):
        return I.defining
    if isinstance(I, Polynomial):
        return Ideal(I.ring, [I])
    return Ideal(ring, I)


def groebner_basis(I: Ideal) -> list:
    return I.groebner_basis()


def normal_form(f: Polynomial, I: Ideal) -> Polynomial:
    if f.ring != I.ring:
        raise RingError("ring mismatch")
    return I.normal_form(f)


def divide_exact(h: Polynomial, g: Polynomial) -> Polynomial:
    """Quotient h/g, raising if g does not divide h."""
    if not g:
        raise ZeroDivisionError("division by zero polynomial")
    R = h.ring
    ge, gc = g.leading_term()
    ginv = R.inv(gc)
    q = R.zero
    r = h
    while r:
        e, c = r.leading_term()
        d = tuple(a - b for a, b in zip(e, ge))
        if min(d) < 0:
            raise ArithmeticError(f"{g} does not divide {h}")
        t = R.monomial(d, c * ginv)
        q = q + t
        r = r - t * g
    return q


def ideal_intersect(I: Ideal, J: Ideal) -> Ideal:
    """I ∩ J by eliminating t from t·I + (1-t)·J."""
    if I.ring != J.ring:
        raise RingError("ring mismatch")
    R = I.ring
    if not I.gens or not J.gens:
        return Ideal(R, [])
    t = R.fresh("t")
    T = RingSpec((t,) + R.vars, R.field, (1,) + R.weights, ("elim", 1))
    tv = T.gen(t)
    gens = [tv * g.to_ring(T) for g in I.gens] + [(1 - tv) * g.to_ring(T) for g in J.gens]
    return _eliminate_in(T, gens, 1, R)


def _eliminate_in(T: RingSpec, gens: Sequence[Polynomial], k: int, target: RingSpec) -> Ideal:
    """Generators of (gens) ∩ k[last vars]; T has an elimination order on its first k vars."""
    G = Ideal(T, gens).groebner_basis()
    keep = [g for g in G if all(not any(e[:k]) for e in g.terms)]
    out = Ideal(target, [g.to_ring(target) for g in keep])
    return out


def eliminate(I: Ideal, drop: Iterable[str]) -> Ideal:
    """I ∩ k[remaining variables], returned in the subring (variables in original order)."""
    R = I.ring
    drop = [v for v in R.vars if v in set(drop)]
    unknown = set(drop) - set(R.vars)
    if unknown:
        raise RingError(f"unknown variables {unknown}")
    if not drop:
        return Ideal(R, I.gens)
    keep = [v for v in R.vars if v not in drop]
    target = RingSpec(tuple(keep), R.field, tuple(R.weights[R.index[v]] for v in keep), "grevlex")
    if not keep:
        raise RingError("cannot eliminate every variable")
    T = RingSpec(
        tuple(drop) + tuple(keep),
        R.field,
        tuple(R.weights[R.index[v]] for v in drop) + target.weights,
        ("elim", len(drop)),
    )
    return _eliminate_in(T, [g.to_ring(T) for g in I.gens], len(drop), target)


def ideal_quotient(I: Ideal, J) -> Ideal:
    """I : J, generator by generator via intersection and exact division."""
    J = _as_ideal(J, I.ring)
    if J.ring != I.ring:
        raise RingError("ring mismatch")
    if not J.gens:
        raise ValueError("colon by the zero ideal")
    R = I.ring
    result = None
    for g in J.gens:
        inter = ideal_intersect(I, Ideal(R, [g]))
        colon = Ideal(R, [divide_exact(h, g) for h in inter.gens])
        if not I.gens:
            colon = Ideal(R, [])
        result = colon if result is None else ideal_intersect(result, colon)
    return result.reduced()


def saturate(I: Ideal, f) -> Ideal:
    """I : f^∞ via eliminating y from (I, 1 - f·y)."""
    R = I.ring
    f = R(f)
    if not f:
        raise ValueError("saturation by zero")
    y = R.fresh("y")
    T = RingSpec((y,) + R.vars, R.field, (1,) + R.weights, ("elim", 1))
    gens = [g.to_ring(T) for g in I.gens] + [1 - T.gen(y) * f.to_ring(T)]
    return _eliminate_in(T, gens, 1, R).reduced()


def _max_independent(masks: list, n: int) -> int:
    best = 0

    def rec(i, chosen, size):
        nonlocal best
        if size + (n - i) <= best:
            return
        if i == n:
            best = max(best, size)
            return
        with_i = chosen | (1 << i)
        if not any(m & with_i == m for m in masks):
            rec(i + 1, with_i, size + 1)
        rec(i + 1, chosen, size)

    rec(0, 0, 0)
    return best


def krull_dimension(Q) -> int:
    """Dimension from the leading-term ideal: size of a maximal independent variable set."""
    I = _as_ideal(Q)
    if I.is_unit():
        raise ValueError("unit defining ideal: the quotient is the zero ring")
    n = I.ring.ngens
    masks = []
    for e in I.leading_monomials():
        masks.append(sum(1 << i for i, k in enumerate(e) if k))
    return _max_independent(masks, n)


def height(I) -> int:
    I = _as_ideal(I)
    if I.is_unit():
        return I.ring.ngens + 1
    return I.ring.ngens - krull_dimension(I)


def _vector_degree(vec: Sequence[Polynomial], twists: Sequence[int]):
    degs = set()
    for f, tw in zip(vec, twists):
        if f:
            d = f.weighted_degree()
            if d is not None and not isinstance(d, int):
                return None
            degs.add(d + tw)
    if len(degs) > 1:
        return None
    return degs.pop() if degs else 0


def min_gens_count(I: Ideal, modulo: Ideal | None = None) -> int:
    """Minimal number of homogeneous generators of I (of (I + modulo)/modulo)."""
    from .modules import minimal_generators_vectors

    for g in I.gens:
        if not g.is_homogeneous():
            raise NotHomogeneousError(f"generator {g} is not homogeneous")
    rel = modulo.gens if modulo is not None else ()
    kept = minimal_generators_vectors(I.ring, [(g,) for g in I.gens], (0,), [(r,) for r in rel])
    return len(kept)


def regular_sequence_witness(seq: Sequence[Polynomial], defining: Ideal | None = None) -> tuple:
    """Sequential colon test for seq on ring/defining.

    Returns (None, None) when every (J + (f_1..f_{i-1})) : f_i equals J + (f_1..f_{i-1})
    and the final quotient is nonzero; otherwise (i, witness) with i the failing
    position and witness an element of the colon outside the ideal.
    """
    if not seq:
        return None, None
    R = seq[0].ring
    J = defining if defining is not None else Ideal(R, [])
    for i, f in enumerate(seq):
        if not f:
            return i, R.one
        if J.gens:
            if J.contains(f):
                return i, R.one
            col = ideal_quotient(J, Ideal(R, [f]))
            for g in col.gens:
                if not J.contains(g):
                    return i, g
        J = J + Ideal(R, [f])
        if J.is_unit():
            return i, R.one
    return None, None


def is_regular_sequence(seq: Sequence[Polynomial], defining: Ideal | None = None) -> bool:
    return regular_sequence_witness(seq, defining)[0] is None

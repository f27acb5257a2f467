"""Buchberger's algorithm over encoded term dicts (ideals and POT modules alike).

Elements are dicts ``{mono: coeff}`` in the encoding of ``RingSpec.encode``;
the component sits in slot 0.  Basis elements are ``(lm, terms)`` pairs as
consumed by the kernel.
"""

from __future__ import annotations

from ._backend import kernel
from .limits import check_deadline

normal_form = kernel.normal_form


class Ctx:
    """Static data the engine needs about the ambient ring."""

    __slots__ = ("rows", "off", "p", "module")

    def __init__(self, ring, module: bool = False):
        self.rows = ring.rows
        self.off = ring.off
        self.p = ring.field
        self.module = module


def make_monic(d: dict, p: int) -> tuple:
    terms = sorted(d.items())
    lc = terms[0][1]
    if lc != 1:
        if p:
            inv = pow(lc, -1, p)
            terms = [(m, (c * inv) % p) for m, c in terms]
        else:
            inv = 1 / lc
            terms = [(m, c * inv) for m, c in terms]
    return terms[0][0], terms


def _coprime(a, b, off) -> bool:
    return all(not (x and y) for x, y in zip(a[off:], b[off:]))


def buchberger(polys, ctx: Ctx, basis=()) -> list:
    """Reduced Gröbner basis of ``basis`` (already a GB) together with ``polys``."""
    off, p, rows = ctx.off, ctx.p, ctx.rows
    lcm = kernel.mono_lcm
    mul = kernel.mono_mul
    div = kernel.divides
    use_product = not ctx.module

    elems: list = list(basis)
    G: list = list(range(len(elems)))
    B: dict = {}

    def update(ih):
        nonlocal G, B
        mh = elems[ih][0]
        same = [ig for ig in G if elems[ig][0][0] == mh[0]]
        C = list(same)
        D = []
        while C:
            ig = C.pop()
            mg = elems[ig][0]
            L = lcm(mh, mg, rows, off)
            disjoint = use_product and _coprime(mh, mg, off)

            def lcm_divides(ip):
                return div(lcm(mh, elems[ip][0], rows, off), L, off)

            if disjoint or (
                not any(lcm_divides(ix) for ix in C) and not any(lcm_divides(pr[1]) for pr in D)
            ):
                D.append((ih, ig))
        E = {}
        for ih_, ig in D:
            mg = elems[ig][0]
            if not (use_product and _coprime(mh, mg, off)):
                E[(ih_, ig)] = lcm(mh, mg, rows, off)
        B_new = {}
        for (i1, i2), L12 in B.items():
            if (
                L12[0] != mh[0]
                or not div(mh, L12, off)
                or lcm(elems[i1][0], mh, rows, off) == L12
                or lcm(elems[i2][0], mh, rows, off) == L12
            ):
                B_new[(i1, i2)] = L12
        B_new.update(E)
        G = [ig for ig in G if not div(mh, elems[ig][0], off)]
        G.append(ih)
        B = B_new

    def current():
        return [elems[k] for k in G]

    todo = [dict(f) for f in polys if f]
    todo.sort(key=lambda d: sorted(d.items()))
    for f in todo:
        check_deadline()
        h = normal_form(f, current(), off, p)
        if h:
            elems.append(make_monic(h, p))
            update(len(elems) - 1)

    basis_now = current()
    while B:
        check_deadline()
        key = max(B, key=lambda ij: (B[ij], -ij[0], -ij[1]))
        del B[key]
        i, j = key
        s = kernel.spoly(elems[i], elems[j], rows, off, p)
        if not s:
            continue
        h = normal_form(s, basis_now, off, p)
        if h:
            elems.append(make_monic(h, p))
            update(len(elems) - 1)
            basis_now = current()
    return interreduce(current(), ctx)


def interreduce(basis, ctx: Ctx) -> list:
    off, p = ctx.off, ctx.p
    basis = sorted(basis, key=lambda g: g[0])
    minimal = []
    for g in basis:
        if not any(kernel.divides(h[0], g[0], off) for h in minimal):
            minimal.append(g)
    out = []
    for k, g in enumerate(minimal):
        others = minimal[:k] + minimal[k + 1:]
        r = normal_form(dict(g[1]), others, off, p)
        out.append(make_monic(r, p))
    out.sort(key=lambda g: g[0])
    return out


def reduce(f: dict, basis, ctx: Ctx) -> dict:
    return normal_form(f, basis, ctx.off, ctx.p)

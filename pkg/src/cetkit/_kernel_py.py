"""Pure-Python reduction kernel.

Monomials are tuples ``(comp, r_1..r_k, e_1..e_n)`` where the ``r`` entries are
the order rows evaluated at the exponent vector.  A smaller tuple is a larger
term, so ``min`` gives the leading monomial and a min-heap pops terms in
descending order.  ``off`` is the index where the exponent block starts.

A basis element is a pair ``(lm, terms)`` with ``terms`` sorted ascending (so
``terms[0]`` is the leading term) and leading coefficient 1.
"""

from heapq import heapify, heappop, heappush
from itertools import islice
from operator import add, le

BACKEND = "python"


def mono_mul(a, b):
    return tuple(map(add, a, b))


def mono_quo(a, b):
    # a / b, assuming b | a; the quotient lives in component 0
    return (0,) + tuple(x - y for x, y in zip(islice(a, 1, None), islice(b, 1, None)))


def divides(a, b, off):
    return a[0] == b[0] and all(map(le, islice(a, off, None), islice(b, off, None)))


def mono_lcm(a, b, rows, off):
    exps = tuple(map(max, islice(a, off, None), islice(b, off, None)))
    head = tuple(sum(r * e for r, e in zip(row, exps)) for row in rows)
    return (a[0],) + head + exps


def find_divisor(m, lms, off):
    c = m[0]
    tail = m[off:]
    for j, lm in enumerate(lms):
        if lm[0] == c and all(map(le, lm[off:], tail)):
            return j
    return -1


def normal_form(f, basis, off, p):
    """Fully reduce the term dict ``f`` by ``basis``; returns the remainder dict."""
    f = dict(f)
    heap = list(f)
    heapify(heap)
    lms = [g[0][off:] for g in basis]
    comps = [g[0][0] for g in basis]
    rem = {}
    while heap:
        m = heappop(heap)
        c = f.pop(m, None)
        if c is None:
            continue
        tail = m[off:]
        comp = m[0]
        j = -1
        for k, lm in enumerate(lms):
            if comps[k] == comp and all(map(le, lm, tail)):
                j = k
                break
        if j < 0:
            rem[m] = c
            continue
        lead, terms = basis[j]
        q = mono_quo(m, lead)
        for tm, tc in islice(terms, 1, None):
            nm = tuple(map(add, q, tm))
            old = f.get(nm)
            if old is None:
                v = -c * tc
                if p:
                    v %= p
                f[nm] = v
                heappush(heap, nm)
            else:
                v = old - c * tc
                if p:
                    v %= p
                if v:
                    f[nm] = v
                else:
                    del f[nm]
    return rem


def spoly(g1, g2, rows, off, p):
    lm1, t1 = g1
    lm2, t2 = g2
    lcm = mono_lcm(lm1, lm2, rows, off)
    q1 = mono_quo(lcm, lm1)
    q2 = mono_quo(lcm, lm2)
    out = {}
    for tm, tc in islice(t1, 1, None):
        out[tuple(map(add, q1, tm))] = tc
    for tm, tc in islice(t2, 1, None):
        nm = tuple(map(add, q2, tm))
        v = out.get(nm, 0) - tc
        if p:
            v %= p
        if v:
            out[nm] = v
        else:
            out.pop(nm, None)
    return out

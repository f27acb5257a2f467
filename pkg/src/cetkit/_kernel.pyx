# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled reduction kernel; same API and semantics as ``_kernel_py``."""

from heapq import heapify, heappop, heappush

from cpython.tuple cimport PyTuple_New, PyTuple_SET_ITEM, PyTuple_GET_SIZE
from cpython.ref cimport Py_INCREF

BACKEND = "cython"


cdef inline tuple _mul(tuple a, tuple b):
    cdef Py_ssize_t i, n = PyTuple_GET_SIZE(a)
    cdef tuple out = PyTuple_New(n)
    cdef object v
    for i in range(n):
        v = <long>a[i] + <long>b[i]
        Py_INCREF(v)
        PyTuple_SET_ITEM(out, i, v)
    return out


cdef inline tuple _quo(tuple a, tuple b):
    cdef Py_ssize_t i, n = PyTuple_GET_SIZE(a)
    cdef tuple out = PyTuple_New(n)
    cdef object v = 0
    Py_INCREF(v)
    PyTuple_SET_ITEM(out, 0, v)
    for i in range(1, n):
        v = <long>a[i] - <long>b[i]
        Py_INCREF(v)
        PyTuple_SET_ITEM(out, i, v)
    return out


cdef inline bint _divides(tuple a, tuple b, Py_ssize_t off):
    cdef Py_ssize_t i, n = PyTuple_GET_SIZE(a)
    if <long>a[0] != <long>b[0]:
        return False
    for i in range(off, n):
        if <long>a[i] > <long>b[i]:
            return False
    return True


def mono_mul(tuple a, tuple b):
    return _mul(a, b)


def mono_quo(tuple a, tuple b):
    return _quo(a, b)


def divides(tuple a, tuple b, Py_ssize_t off):
    return _divides(a, b, off)


def mono_lcm(tuple a, tuple b, rows, Py_ssize_t off):
    cdef Py_ssize_t i, n = PyTuple_GET_SIZE(a)
    cdef list exps = []
    cdef long x, y, s
    for i in range(off, n):
        x = a[i]
        y = b[i]
        exps.append(x if x > y else y)
    head = []
    for row in rows:
        s = 0
        for i in range(n - off):
            s += <long>row[i] * <long>exps[i]
        head.append(s)
    return (a[0],) + tuple(head) + tuple(exps)


def find_divisor(tuple m, list lms, Py_ssize_t off):
    cdef Py_ssize_t j
    for j in range(len(lms)):
        if _divides(<tuple>lms[j], m, off):
            return j
    return -1


def normal_form(dict f, list basis, Py_ssize_t off, long long p):
    cdef dict rem = {}
    cdef list heap
    cdef list lms = [g[0] for g in basis]
    cdef list bterms = [g[1] for g in basis]
    cdef Py_ssize_t nb = len(lms), j, k, nt
    cdef tuple m, q, nm, lead
    cdef list terms
    cdef object c, old, v, tc
    cdef long long ci, vi
    f = dict(f)
    heap = list(f)
    heapify(heap)
    while heap:
        m = heappop(heap)
        c = f.pop(m, None)
        if c is None:
            continue
        j = -1
        for k in range(nb):
            if _divides(<tuple>lms[k], m, off):
                j = k
                break
        if j < 0:
            rem[m] = c
            continue
        lead = <tuple>lms[j]
        terms = <list>bterms[j]
        q = _quo(m, lead)
        nt = len(terms)
        if p:
            ci = c
            for k in range(1, nt):
                tm, tc = terms[k]
                nm = _mul(q, <tuple>tm)
                old = f.get(nm)
                if old is None:
                    vi = (-(ci * <long long>tc)) % p
                    if vi < 0:
                        vi += p
                    f[nm] = vi
                    heappush(heap, nm)
                else:
                    vi = (<long long>old - ci * <long long>tc) % p
                    if vi < 0:
                        vi += p
                    if vi:
                        f[nm] = vi
                    else:
                        del f[nm]
        else:
            for k in range(1, nt):
                tm, tc = terms[k]
                nm = _mul(q, <tuple>tm)
                old = f.get(nm)
                if old is None:
                    f[nm] = -c * tc
                    heappush(heap, nm)
                else:
                    v = old - c * tc
                    if v:
                        f[nm] = v
                    else:
                        del f[nm]
    return rem


def spoly(g1, g2, rows, Py_ssize_t off, long long p):
    lm1, t1 = g1
    lm2, t2 = g2
    lcm = mono_lcm(lm1, lm2, rows, off)
    cdef tuple q1 = _quo(lcm, lm1)
    cdef tuple q2 = _quo(lcm, lm2)
    cdef dict out = {}
    cdef Py_ssize_t k
    for k in range(1, len(t1)):
        tm, tc = t1[k]
        out[_mul(q1, tm)] = tc
    for k in range(1, len(t2)):
        tm, tc = t2[k]
        nm = _mul(q2, tm)
        v = out.get(nm, 0) - tc
        if p:
            v %= p
        if v:
            out[nm] = v
        else:
            out.pop(nm, None)
    return out

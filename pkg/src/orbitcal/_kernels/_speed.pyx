# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled term-dict kernels; reference semantics live in pure.py.

Coefficients stay arbitrary Python objects (Fractions), the win comes
from C-level loops and tuple construction.
"""

from cpython.tuple cimport PyTuple_GET_SIZE, PyTuple_GET_ITEM, PyTuple_New, PyTuple_SET_ITEM
from cpython.ref cimport Py_INCREF


cdef inline tuple _expadd(tuple a, tuple b):
    cdef Py_ssize_t i, n = PyTuple_GET_SIZE(a)
    cdef tuple out = PyTuple_New(n)
    cdef object x
    for i in range(n):
        x = (<object> PyTuple_GET_ITEM(a, i)) + (<object> PyTuple_GET_ITEM(b, i))
        Py_INCREF(x)
        PyTuple_SET_ITEM(out, i, x)
    return out


def add_scaled_inplace(dict acc, dict src, scale):
    """acc[k] += scale * src[k] for every key of src, dropping zeros."""
    cdef object k, v, cur
    if not scale or not src:
        return
    for k, v in src.items():
        cur = acc.get(k)
        if cur is None:
            acc[k] = scale * v
        else:
            cur = cur + scale * v
            if cur:
                acc[k] = cur
            else:
                del acc[k]


def terms_mul(dict a, dict b):
    """Convolution of two exponent dicts; tuple keys add entrywise."""
    cdef dict out = {}
    cdef object va, vb, cur, prod
    cdef tuple ka, kb, k
    if not a or not b:
        return out
    if len(a) > len(b):
        a, b = b, a
    for ka, va in a.items():
        for kb, vb in b.items():
            k = _expadd(ka, kb)
            prod = va * vb
            cur = out.get(k)
            if cur is None:
                out[k] = prod
            else:
                cur = cur + prod
                if cur:
                    out[k] = cur
                else:
                    del out[k]
    return out


def term_times_into(dict acc, dict src, tuple shift, scale):
    """acc += scale * x^shift * src, one monomial multiply-accumulate."""
    cdef object v, cur
    cdef tuple e, k
    if not scale or not src:
        return
    for e, v in src.items():
        k = _expadd(e, shift)
        cur = acc.get(k)
        if cur is None:
            acc[k] = scale * v
        else:
            cur = cur + scale * v
            if cur:
                acc[k] = cur
            else:
                del acc[k]

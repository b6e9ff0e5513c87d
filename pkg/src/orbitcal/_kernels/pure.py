"""Pure-Python term-dict kernels.

Polynomials, linear forms and sparse matrix rows are all stored as dicts
mapping a hashable key (an exponent tuple, a column index, a coefficient
label) to a nonzero Fraction.  These three loops carry almost all of the
run time of the package; orbitcal._kernels._speed holds the compiled
twin with identical semantics.
"""


def add_scaled_inplace(acc, src, scale):
    """acc[k] += scale * src[k] for every key of src, dropping zeros."""
    if not scale or not src:
        return
    get = acc.get
    for k, v in src.items():
        cur = get(k)
        if cur is None:
            acc[k] = scale * v
        else:
            cur = cur + scale * v
            if cur:
                acc[k] = cur
            else:
                del acc[k]


def terms_mul(a, b):
    """Convolution of two exponent dicts; tuple keys add entrywise."""
    if not a or not b:
        return {}
    if len(a) > len(b):
        a, b = b, a
    out = {}
    get = out.get
    for ka, va in a.items():
        for kb, vb in b.items():
            k = tuple(x + y for x, y in zip(ka, kb))
            cur = get(k)
            if cur is None:
                out[k] = va * vb
            else:
                cur = cur + va * vb
                if cur:
                    out[k] = cur
                else:
                    del out[k]
    return out


def term_times_into(acc, src, shift, scale):
    """acc += scale * x^shift * src, one monomial multiply-accumulate."""
    if not scale or not src:
        return
    get = acc.get
    for e, v in src.items():
        k = tuple(x + y for x, y in zip(e, shift))
        cur = get(k)
        if cur is None:
            acc[k] = scale * v
        else:
            cur = cur + scale * v
            if cur:
                acc[k] = cur
            else:
                del acc[k]

"""Parametrized matrix actions on a finite-dimensional space.

A representation is an n x n matrix of Laurent polynomials in r
invertible and s ordinary parameters; evaluating the matrix at a
parameter point gives the acting linear map.  Generators for the two
bundled families (binary forms under special linear substitutions, and
diagonal torus actions) live here, together with the conic reduction,
base changes and the orbit-dimension precondition.
"""

from __future__ import annotations

import json
import random
from fractions import Fraction
from math import comb

from orbitcal import exactmath
from orbitcal._kernels import add_scaled_inplace, term_times_into, terms_mul
from orbitcal.degbound import kazarnovskii_sl2
from orbitcal.polyring import Ambient, LaurentPoly

Vec = tuple[Fraction, ...]


def vector(values) -> Vec:
    return tuple(Fraction(v) for v in values)


def parse_vector(text: str) -> Vec:
    return vector(part.strip() for part in text.split(",") if part.strip() != "")


def format_vector(v) -> list[str]:
    return [str(Fraction(x)) for x in v]


class RepresentationData:
    """n, the ambient shape (r, s), the matrix rho of LaurentPoly
    entries, an optional degree bound for the image variety, and a
    label."""

    __slots__ = ("n", "r", "s", "rho", "degree_bound", "label")

    def __init__(self, n, r, s, rho, degree_bound=None, label=""):
        if n < 1:
            raise ValueError("module dimension must be >= 1")
        if len(rho) != n or any(len(row) != n for row in rho):
            raise ValueError("rho must be an n x n matrix")
        ambient = rho[0][0].ambient
        if ambient.r != r or ambient.s != s:
            raise ValueError("ambient shape disagrees with (r, s)")
        for row in rho:
            for entry in row:
                if entry.ambient != ambient:
                    raise ValueError("rho entries must share one ambient")
        if degree_bound is not None and degree_bound < 1:
            raise ValueError("degree bound must be >= 1")
        self.n = n
        self.r = r
        self.s = s
        self.rho = [list(row) for row in rho]
        self.degree_bound = degree_bound
        self.label = label

    @property
    def ambient(self) -> Ambient:
        return self.rho[0][0].ambient

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "r": self.r,
            "s": self.s,
            "rho": [[str(entry) for entry in row] for row in self.rho],
            "degree_bound": self.degree_bound,
            "label": self.label,
        }

    @classmethod
    def from_json(cls, payload: dict) -> "RepresentationData":
        n, r, s = int(payload["n"]), int(payload["r"]), int(payload["s"])
        ambient = Ambient(r, s)
        rho = [
            [LaurentPoly.parse(text, ambient) for text in row]
            for row in payload["rho"]
        ]
        bound = payload.get("degree_bound")
        return cls(
            n,
            r,
            s,
            rho,
            degree_bound=None if bound is None else int(bound),
            label=payload.get("label", ""),
        )

    def save(self, path):
        with open(path, "w", encoding="utf-8") as fh:
            json.dump(self.to_json(), fh, indent=2)
            fh.write("\n")

    @classmethod
    def load(cls, path) -> "RepresentationData":
        with open(path, encoding="utf-8") as fh:
            return cls.from_json(json.load(fh))

    def __repr__(self):
        return f"RepresentationData(n={self.n}, r={self.r}, s={self.s}, label={self.label!r})"


# ---------------------------------------------------------------------------
# generators


def sl2_binary_forms(h: int) -> RepresentationData:
    """Action on binary forms of degree h by linear substitutions, pulled
    back along the dense parametrization

        (x1, x2, x3) -> [[x1 + x2*x3/x1, x2/x1], [x3/x1, 1/x1]]

    of the special linear group.  Basis order is z1^h, z1^(h-1)*z2, ...,
    z2^h; entry (i+1, j+1) is the coefficient of z1^(h-i)*z2^i in
    (a*z1 + c*z2)^(h-j) * (b*z1 + d*z2)^j for the matrix [[a, b], [c, d]]
    above.
    """
    if h < 1:
        raise ValueError("h must be >= 1")
    amb = Ambient(1, 2)
    x1 = LaurentPoly.variable(amb, 0)
    x1inv = LaurentPoly.monomial(amb, (-1, 0, 0))
    x2 = LaurentPoly.variable(amb, 1)
    x3 = LaurentPoly.variable(amb, 2)
    a = x1 + x1inv * x2 * x3
    b = x1inv * x2
    c = x1inv * x3
    d = x1inv

    pow_a = [a**k for k in range(h + 1)]
    pow_b = [b**k for k in range(h + 1)]
    pow_c = [c**k for k in range(h + 1)]
    pow_d = [d**k for k in range(h + 1)]

    n = h + 1
    rho = [[LaurentPoly.zero(amb) for _ in range(n)] for _ in range(n)]
    for j in range(n):
        # (a z1 + c z2)^(h-j) (b z1 + d z2)^j, coefficient of z1^(h-i) z2^i
        for k in range(h - j + 1):
            left = pow_a[h - j - k] * pow_c[k] * comb(h - j, k)
            for m in range(j + 1):
                i = k + m
                entry = left * pow_b[j - m] * pow_d[m] * comb(j, m)
                rho[i][j] = rho[i][j] + entry
    return RepresentationData(
        n, 1, 2, rho, degree_bound=kazarnovskii_sl2(h), label=f"sl2-binary-forms-h{h}"
    )


def sl2_parameter_matrix(point) -> list[list[Fraction]]:
    """Numeric 2x2 matrix of the parametrization at a rational point."""
    e1, e2, e3 = (Fraction(x) for x in point)
    if not e1:
        raise ValueError("point has zero in invertible coordinate x1")
    return [[e1 + e2 * e3 / e1, e2 / e1], [e3 / e1, 1 / e1]]


def binary_substitution_matrix(g, h: int) -> list[list[Fraction]]:
    """Numeric (h+1) x (h+1) matrix of the degree-h binary-form action of
    a 2x2 matrix g, computed directly from the substitution rule."""
    (a, b), (c, d) = ((Fraction(v) for v in row) for row in g)
    n = h + 1
    out = [[Fraction(0)] * n for _ in range(n)]
    for j in range(n):
        for k in range(h - j + 1):
            left = a ** (h - j - k) * c**k * comb(h - j, k)
            for m in range(j + 1):
                out[k + m][j] += left * b ** (j - m) * d**m * comb(j, m)
    return out


def torus_diagonal(weights) -> RepresentationData:
    """Diagonal torus action: coordinate i scales by the Laurent monomial
    with exponent vector weights[i]."""
    weights = [tuple(int(w) for w in wt) for wt in weights]
    if not weights:
        raise ValueError("need at least one weight")
    r = len(weights[0])
    if r < 1 or any(len(wt) != r for wt in weights):
        raise ValueError("inconsistent weight lengths")
    amb = Ambient(r, 0)
    n = len(weights)
    rho = [[LaurentPoly.zero(amb) for _ in range(n)] for _ in range(n)]
    for i, wt in enumerate(weights):
        rho[i][i] = LaurentPoly.monomial(amb, wt)
    label = "torus-" + ";".join(",".join(str(w) for w in wt) for wt in weights)
    return RepresentationData(n, r, 0, rho, degree_bound=None, label=label)


def diagonal_weights(rep: RepresentationData) -> list[tuple[int, ...]] | None:
    """Weight vectors of a diagonal monomial representation, or None if
    the representation is not of that shape."""
    weights = []
    for i in range(rep.n):
        for j in range(rep.n):
            entry = rep.rho[i][j]
            if i != j:
                if not entry.is_zero():
                    return None
            else:
                if len(entry.terms) != 1:
                    return None
                exp, coef = next(iter(entry.terms.items()))
                if coef != 1:
                    return None
                weights.append(exp)
    return weights


def make_conic(rep: RepresentationData, a, b):
    """Adjoin a scaling coordinate: the extended group acts on k^(n+1) by
    x0 * blockdiag(1, rho) with a fresh invertible parameter x0, making
    both orbits conic without changing the closure question.

    Returns (rep', a', b'); the degree bound is left unset because the
    extended image degree is not derived here (callers override or fall
    back to the parametric bound)."""
    a = vector(a)
    b = vector(b)
    if len(a) != rep.n or len(b) != rep.n:
        raise ValueError("vector length mismatch")
    amb2 = Ambient(rep.r + 1, rep.s)
    n2 = rep.n + 1
    rho2 = [[LaurentPoly.zero(amb2) for _ in range(n2)] for _ in range(n2)]
    rho2[0][0] = LaurentPoly.variable(amb2, 0)
    for i in range(rep.n):
        for j in range(rep.n):
            entry = rep.rho[i][j]
            if entry.is_zero():
                continue
            shifted = {(1,) + exp: coef for exp, coef in entry.terms.items()}
            rho2[i + 1][j + 1] = LaurentPoly(amb2, shifted)
    rep2 = RepresentationData(
        n2,
        rep.r + 1,
        rep.s,
        rho2,
        degree_bound=None,
        label=f"conic({rep.label})" if rep.label else "conic",
    )
    one = Fraction(1)
    return rep2, (one,) + a, (one,) + b


# ---------------------------------------------------------------------------
# base changes


def _scalar_matrix_to_fractions(S):
    return [[Fraction(v) for v in row] for row in S]


def change_basis(rep: RepresentationData, S) -> RepresentationData:
    """Conjugated representation S rho S^-1 (vectors transform as S v)."""
    S = _scalar_matrix_to_fractions(S)
    n = rep.n
    if len(S) != n or any(len(row) != n for row in S):
        raise ValueError("basis change must be n x n")
    Sinv = exactmath.invert(S)  # raises on singular input
    amb = rep.ambient
    zero = LaurentPoly.zero(amb)

    left = [[zero for _ in range(n)] for _ in range(n)]
    for i in range(n):
        for j in range(n):
            acc = zero
            for k in range(n):
                if S[i][k]:
                    acc = acc + rep.rho[k][j] * S[i][k]
            left[i][j] = acc
    out = [[zero for _ in range(n)] for _ in range(n)]
    for i in range(n):
        for j in range(n):
            acc = zero
            for k in range(n):
                if Sinv[k][j]:
                    acc = acc + left[i][k] * Sinv[k][j]
            out[i][j] = acc
    return RepresentationData(
        n, rep.r, rep.s, out, degree_bound=rep.degree_bound, label=rep.label
    )


def apply_matrix(S, v) -> Vec:
    S = _scalar_matrix_to_fractions(S)
    v = vector(v)
    return tuple(sum(S[i][j] * v[j] for j in range(len(v))) for i in range(len(S)))


def find_scrambling(b, rng: random.Random | None = None, max_tries: int = 100):
    """Integer matrix S with det +-1 and every coordinate of S b nonzero.

    Tries the identity, then the lower-unitriangular all-ones matrix,
    then products of random unitriangular matrices with entries in
    -2..2.  Fails only for b = 0."""
    b = vector(b)
    n = len(b)
    if not any(b):
        raise ValueError("cannot scramble the zero vector")
    if rng is None:
        rng = random.Random(0)
    identity = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    if all(b):
        return identity
    lower = [[1 if j <= i else 0 for j in range(n)] for i in range(n)]
    if all(apply_matrix(lower, b)):
        return lower
    for _ in range(max_tries):
        L = [
            [1 if i == j else (rng.randint(-2, 2) if j < i else 0) for j in range(n)]
            for i in range(n)
        ]
        U = [
            [1 if i == j else (rng.randint(-2, 2) if j > i else 0) for j in range(n)]
            for i in range(n)
        ]
        S = [
            [sum(L[i][k] * U[k][j] for k in range(n)) for j in range(n)]
            for i in range(n)
        ]
        if all(apply_matrix(S, b)):
            return S
    raise ValueError("scrambling search exhausted; is the vector zero?")


# ---------------------------------------------------------------------------
# acting and measuring


def act(rep: RepresentationData, point, v) -> Vec:
    """Exact image of v under the group element at the parameter point."""
    v = vector(v)
    if len(v) != rep.n:
        raise ValueError("vector length mismatch")
    matrix = [[entry.evaluate(point) for entry in row] for row in rep.rho]
    return tuple(
        sum(matrix[i][j] * v[j] for j in range(rep.n)) for i in range(rep.n)
    )


def coordinate_pullbacks(rep: RepresentationData, b) -> list[LaurentPoly]:
    """The n parameter-space functions sum_j b_j * rho[i][j]; these are
    the pullbacks of the coordinates along the orbit parametrization."""
    b = vector(b)
    if len(b) != rep.n:
        raise ValueError("vector length mismatch")
    amb = rep.ambient
    out = []
    for i in range(rep.n):
        acc = LaurentPoly.zero(amb)
        for j in range(rep.n):
            if b[j]:
                acc = acc + rep.rho[i][j] * b[j]
        out.append(acc)
    return out


def random_parameter_point(rep: RepresentationData, rng: random.Random):
    point = []
    for k in range(rep.r):
        num = rng.randint(1, 7) * rng.choice((-1, 1))
        point.append(Fraction(num, rng.randint(1, 3)))
    for k in range(rep.s):
        point.append(Fraction(rng.randint(-6, 6)))
    return point


def _symbolic_rank(rows) -> int:
    """Fraction-free rank of a matrix of LaurentPoly entries over the
    fraction field, clearing each row's monomial denominators first."""
    cleared = []
    for row in rows:
        amb = row[0].ambient
        m = [0] * amb.nvars
        for entry in row:
            d = entry.monomial_denominator()
            m = [max(x, y) for x, y in zip(m, d)]
        cleared.append([entry.shift(m).terms for entry in row])
    return _poly_bareiss_rank(cleared)


def _poly_lead(terms):
    return max(terms, key=lambda e: (sum(e), e))


def _poly_exact_div(num, den):
    """Exact quotient of ordinary polynomial dicts (raises if inexact)."""
    if not den:
        raise ZeroDivisionError("polynomial division by zero")
    if not num:
        return {}
    out = {}
    work = dict(num)
    dlead = _poly_lead(den)
    dcoef = den[dlead]
    while work:
        nlead = _poly_lead(work)
        shift = tuple(a - b for a, b in zip(nlead, dlead))
        if any(e < 0 for e in shift):
            raise ArithmeticError("polynomial division was not exact")
        coef = work[nlead] / dcoef
        out[shift] = coef
        term_times_into(work, den, shift, -coef)
    return out


def _poly_bareiss_rank(matrix) -> int:
    nrows = len(matrix)
    ncols = len(matrix[0]) if nrows else 0
    work = [list(row) for row in matrix]
    r = 0
    prev = None  # None codes the constant 1
    for col in range(ncols):
        if r == nrows:
            break
        pivot_row = None
        for i in range(r, nrows):
            if work[i][col]:
                if pivot_row is None or len(work[i][col]) < len(work[pivot_row][col]):
                    pivot_row = i
        if pivot_row is None:
            continue
        work[r], work[pivot_row] = work[pivot_row], work[r]
        pivot = work[r][col]
        for i in range(r + 1, nrows):
            fi = work[i][col]
            for j in range(col + 1, ncols):
                num = dict(terms_mul(pivot, work[i][j]))
                if fi and work[r][j]:
                    cross = terms_mul(fi, work[r][j])
                    add_scaled_inplace(num, cross, Fraction(-1))
                work[i][j] = _poly_exact_div(num, prev) if prev else num
            work[i][col] = {}
        prev = pivot
        r += 1
    return r


def orbit_dimension(
    rep: RepresentationData,
    b,
    *,
    samples: int = 10,
    rng: random.Random | None = None,
    exact: bool = False,
) -> int:
    """Dimension of the orbit of b: the generic rank of the Jacobian of
    the coordinate pullbacks with respect to the parameters.

    The default mode evaluates the Jacobian at random rational points
    and takes the maximum rank over the samples (a probability-one
    method that can only under-report); exact=True computes the
    symbolic rank instead."""
    b = vector(b)
    psis = coordinate_pullbacks(rep, b)
    nvars = rep.r + rep.s
    jac = [[psi.derivative(k) for k in range(nvars)] for psi in psis]
    if all(entry.is_zero() for row in jac for entry in row):
        return 0
    if exact:
        return _symbolic_rank(jac)
    if rng is None:
        rng = random.Random(0)
    best = 0
    for _ in range(samples):
        point = random_parameter_point(rep, rng)
        numeric = exactmath.SparseMatrix.from_rows(
            [[entry.evaluate(point) for entry in row] for row in jac]
        )
        best = max(best, exactmath.rank(numeric))
        if best == min(nvars, rep.n):
            break
    return best

"""Multivariate Laurent polynomials over Q, and polynomials whose
coefficients are affine-linear forms in a second family of
indeterminates.

Variables split into r "invertible" positions (negative exponents
allowed) followed by s ordinary positions (exponents in N).  A
polynomial is a dict from exponent tuples to nonzero Fractions; all
operations are pure and return canonical values (no stored zeros).

Text format, shared by the CLI and the JSON payloads::

    1 + 2*x1^-2*x2*x3 - 3/4*x2^5

Rationals are ``p/q`` or plain integers, ``^`` takes an integer
exponent (negative only on invertible variables), ``*`` separates the
factors of a term, parsing is whitespace-insensitive.
"""

from __future__ import annotations

import re
from fractions import Fraction

from orbitcal._kernels import add_scaled_inplace, terms_mul


class Ambient:
    """Variable layout: r invertible followed by s ordinary variables."""

    __slots__ = ("r", "s", "names")

    def __init__(self, r: int, s: int, names=None):
        if r < 0 or s < 0:
            raise ValueError("negative variable count")
        self.r = r
        self.s = s
        if names is None:
            names = tuple(f"x{i + 1}" for i in range(r + s))
        else:
            names = tuple(names)
            if len(names) != r + s:
                raise ValueError("name count does not match variable count")
        self.names = names

    @property
    def nvars(self) -> int:
        return self.r + self.s

    def check_exponent(self, exp) -> tuple[int, ...]:
        exp = tuple(int(e) for e in exp)
        if len(exp) != self.nvars:
            raise ValueError(f"exponent width {len(exp)} != {self.nvars}")
        for k in range(self.r, self.nvars):
            if exp[k] < 0:
                raise ValueError(
                    f"negative exponent on non-invertible variable {self.names[k]}"
                )
        return exp

    def __eq__(self, other):
        return (
            isinstance(other, Ambient)
            and self.r == other.r
            and self.s == other.s
            and self.names == other.names
        )

    def __hash__(self):
        return hash((self.r, self.s, self.names))

    def __repr__(self):
        return f"Ambient(r={self.r}, s={self.s})"


def _order_key(exp):
    return (sum(exp), exp)


def sorted_terms(terms) -> list:
    """Terms in the storage/printing order: graded-lex, descending,
    negative exponent entries compared as plain integers."""
    return sorted(terms.items(), key=lambda kv: _order_key(kv[0]), reverse=True)


class LaurentPoly:
    """Immutable Laurent polynomial attached to an Ambient."""

    __slots__ = ("ambient", "terms")

    def __init__(self, ambient: Ambient, terms=None):
        self.ambient = ambient
        clean: dict[tuple[int, ...], Fraction] = {}
        if terms:
            for exp, coef in terms.items():
                coef = Fraction(coef)
                if coef:
                    clean[ambient.check_exponent(exp)] = coef
        self.terms = clean

    @classmethod
    def zero(cls, ambient: Ambient) -> "LaurentPoly":
        return cls(ambient)

    @classmethod
    def const(cls, ambient: Ambient, value) -> "LaurentPoly":
        value = Fraction(value)
        if not value:
            return cls(ambient)
        return cls(ambient, {(0,) * ambient.nvars: value})

    @classmethod
    def variable(cls, ambient: Ambient, index: int, power: int = 1) -> "LaurentPoly":
        exp = [0] * ambient.nvars
        exp[index] = power
        return cls(ambient, {tuple(exp): Fraction(1)})

    @classmethod
    def monomial(cls, ambient: Ambient, exp, coef=1) -> "LaurentPoly":
        return cls(ambient, {tuple(exp): Fraction(coef)})

    def is_zero(self) -> bool:
        return not self.terms

    def _check_same(self, other: "LaurentPoly"):
        if self.ambient != other.ambient:
            raise ValueError("ambient mismatch")

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = LaurentPoly.const(self.ambient, other)
        return (
            isinstance(other, LaurentPoly)
            and self.ambient == other.ambient
            and self.terms == other.terms
        )

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = LaurentPoly.const(self.ambient, other)
        self._check_same(other)
        out = dict(self.terms)
        add_scaled_inplace(out, other.terms, Fraction(1))
        return LaurentPoly._raw(self.ambient, out)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly._raw(self.ambient, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = LaurentPoly.const(self.ambient, other)
        self._check_same(other)
        out = dict(self.terms)
        add_scaled_inplace(out, other.terms, Fraction(-1))
        return LaurentPoly._raw(self.ambient, out)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Fraction(other)
            if not other:
                return LaurentPoly(self.ambient)
            return LaurentPoly._raw(
                self.ambient, {e: c * other for e, c in self.terms.items()}
            )
        self._check_same(other)
        return LaurentPoly._raw(self.ambient, terms_mul(self.terms, other.terms))

    __rmul__ = __mul__

    def __pow__(self, k):
        k = int(k)
        if k < 0:
            raise ValueError("negative power of a general Laurent polynomial")
        result = LaurentPoly.const(self.ambient, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base if k > 1 else base
            k >>= 1
        return result

    @classmethod
    def _raw(cls, ambient, terms) -> "LaurentPoly":
        p = object.__new__(cls)
        p.ambient = ambient
        p.terms = terms
        return p

    def evaluate(self, point) -> Fraction:
        """Exact value at a rational point; the first r coordinates must
        be nonzero."""
        amb = self.ambient
        point = [Fraction(x) for x in point]
        if len(point) != amb.nvars:
            raise ValueError("point has wrong length")
        for k in range(amb.r):
            if not point[k]:
                raise ValueError(
                    f"point has zero in invertible coordinate {amb.names[k]}"
                )
        caches: list[dict[int, Fraction]] = [{0: Fraction(1)} for _ in range(amb.nvars)]

        def power(i, e):
            cache = caches[i]
            got = cache.get(e)
            if got is None:
                got = point[i] ** e
                cache[e] = got
            return got

        total = Fraction(0)
        for exp, coef in self.terms.items():
            val = coef
            for i, e in enumerate(exp):
                if e:
                    val *= power(i, e)
            total += val
        return total

    def derivative(self, index: int) -> "LaurentPoly":
        out: dict[tuple[int, ...], Fraction] = {}
        for exp, coef in self.terms.items():
            e = exp[index]
            if e:
                newexp = exp[:index] + (e - 1,) + exp[index + 1 :]
                c = out.get(newexp, Fraction(0)) + coef * e
                if c:
                    out[newexp] = c
                else:
                    out.pop(newexp, None)
        return LaurentPoly._raw(self.ambient, out)

    def total_degree(self) -> int:
        """Max over terms of the sum of exponents (0 for the zero polynomial)."""
        if not self.terms:
            return 0
        return max(sum(e) for e in self.terms)

    def monomial_denominator(self) -> tuple[int, ...]:
        """Exponent m >= 0 supported on invertible variables such that
        self * x^m has no negative exponents."""
        amb = self.ambient
        m = [0] * amb.nvars
        for exp in self.terms:
            for k in range(amb.r):
                if -exp[k] > m[k]:
                    m[k] = -exp[k]
        return tuple(m)

    def shift(self, m) -> "LaurentPoly":
        m = tuple(m)
        return LaurentPoly(
            self.ambient,
            {tuple(e + d for e, d in zip(exp, m)): c for exp, c in self.terms.items()},
        )

    def __str__(self):
        return format_terms(self.terms, self.ambient.names)

    def __repr__(self):
        return f"LaurentPoly({self})"

    @classmethod
    def parse(cls, text: str, ambient: Ambient) -> "LaurentPoly":
        return cls(ambient, parse_terms(text, ambient.names))


def substitute(poly: LaurentPoly, values: list[LaurentPoly]) -> LaurentPoly:
    """Compose an ordinary polynomial with polynomial values per variable."""
    if any(e < 0 for exp in poly.terms for e in exp):
        raise ValueError("substitute requires nonnegative exponents")
    if len(values) != poly.ambient.nvars:
        raise ValueError("value count mismatch")
    if not values:
        # zero-variable polynomial is a constant in any ambient; caller
        # must provide a target through values, so reject instead
        raise ValueError("substitute needs at least one variable")
    target = values[0].ambient
    for v in values:
        if v.ambient != target:
            raise ValueError("ambient mismatch among substitution values")
    caches: list[dict[int, LaurentPoly]] = [
        {0: LaurentPoly.const(target, 1), 1: v} for v in values
    ]

    def power(i, e):
        cache = caches[i]
        got = cache.get(e)
        if got is None:
            got = power(i, e - 1) * caches[i][1]
            cache[e] = got
        return got

    total = LaurentPoly.zero(target)
    for exp, coef in poly.terms.items():
        term = LaurentPoly.const(target, coef)
        for i, e in enumerate(exp):
            if e:
                term = term * power(i, e)
        total = total + term
    return total


# ---------------------------------------------------------------------------
# linear forms in the generic coefficients


class LinForm:
    """constant + sum of coefficient * c-variable, with sparse storage.

    Keys identify the c-variables; this module treats them as opaque
    hashables (the decision module uses (p, exponent-tuple) pairs).
    """

    __slots__ = ("const", "coeffs")

    def __init__(self, const=0, coeffs=None):
        self.const = Fraction(const)
        self.coeffs: dict = {}
        if coeffs:
            for k, v in coeffs.items():
                v = Fraction(v)
                if v:
                    self.coeffs[k] = v

    def is_zero(self) -> bool:
        return not self.const and not self.coeffs

    def scaled(self, factor) -> "LinForm":
        factor = Fraction(factor)
        if not factor:
            return LinForm()
        out = LinForm()
        out.const = self.const * factor
        out.coeffs = {k: v * factor for k, v in self.coeffs.items()}
        return out

    def __add__(self, other: "LinForm") -> "LinForm":
        out = LinForm(self.const, dict(self.coeffs))
        out.const += other.const
        add_scaled_inplace(out.coeffs, other.coeffs, Fraction(1))
        return out

    def _iadd_scaled(self, other: "LinForm", factor: Fraction):
        self.const += other.const * factor
        add_scaled_inplace(self.coeffs, other.coeffs, factor)

    def evaluate(self, assignment) -> Fraction:
        """Value after substituting rationals for the c-variables
        (missing keys default to zero)."""
        total = self.const
        for k, v in self.coeffs.items():
            val = assignment.get(k)
            if val:
                total += v * Fraction(val)
        return total

    def __eq__(self, other):
        return (
            isinstance(other, LinForm)
            and self.const == other.const
            and self.coeffs == other.coeffs
        )

    def __repr__(self):
        return f"LinForm(const={self.const}, coeffs={self.coeffs})"


class GenericPoly:
    """Polynomial in y1..yn whose coefficients are LinForms."""

    __slots__ = ("n", "degree_cap", "terms")

    def __init__(self, n: int, degree_cap: int, terms=None):
        if n < 1:
            raise ValueError("need at least one variable")
        self.n = n
        self.degree_cap = degree_cap
        self.terms: dict[tuple[int, ...], LinForm] = {}
        if terms:
            for exp, lf in terms.items():
                exp = tuple(int(e) for e in exp)
                if len(exp) != n or any(e < 0 for e in exp):
                    raise ValueError(f"bad y-exponent {exp}")
                if sum(exp) > degree_cap:
                    raise ValueError("term exceeds declared degree bound")
                if not lf.is_zero():
                    self.terms[exp] = lf

    def add_term(self, exp, key=None, coef=1, const=0):
        """Accumulate coef * c[key] + const onto the y-monomial exp."""
        exp = tuple(int(e) for e in exp)
        if sum(exp) > self.degree_cap:
            raise ValueError("term exceeds declared degree bound")
        lf = self.terms.get(exp)
        if lf is None:
            lf = LinForm()
            self.terms[exp] = lf
        lf.const += Fraction(const)
        if key is not None:
            c = lf.coeffs.get(key, Fraction(0)) + Fraction(coef)
            if c:
                lf.coeffs[key] = c
            else:
                lf.coeffs.pop(key, None)
        if lf.is_zero():
            del self.terms[exp]

    def evaluate(self, assignment, point) -> Fraction:
        """Value at rational c-assignment and rational y-point."""
        point = [Fraction(x) for x in point]
        total = Fraction(0)
        for exp, lf in self.terms.items():
            val = lf.evaluate(assignment)
            if val:
                for i, e in enumerate(exp):
                    if e:
                        val *= point[i] ** e
                total += val
        return total


def generic_substitute(
    poly: GenericPoly, images: list[LaurentPoly], cache_limit: int | None = None
) -> dict[tuple[int, ...], LinForm]:
    """Substitute a Laurent polynomial for every y-variable and collect
    the result by x-monomial.

    Returns the finite support map exponent -> LinForm; the y-monomial
    powers of the images are expanded once each through a power cache.
    cache_limit bounds the number of memoized monomial expansions (new
    entries are recomputed instead of stored once the bound is hit)."""
    if len(images) != poly.n:
        raise ValueError("image count mismatch")
    ambient = images[0].ambient
    for img in images:
        if img.ambient != ambient:
            raise ValueError("ambient mismatch among images")

    pow_caches: list[dict[int, LaurentPoly]] = [
        {0: LaurentPoly.const(ambient, 1), 1: img} for img in images
    ]

    def power(i, e):
        cache = pow_caches[i]
        got = cache.get(e)
        if got is None:
            half = power(i, e // 2)
            got = half * half
            if e & 1:
                got = got * cache[1]
            cache[e] = got
        return got

    mono_cache: dict[tuple[int, ...], LaurentPoly] = {}

    def monomial_image(exp):
        got = mono_cache.get(exp)
        if got is None:
            got = LaurentPoly.const(ambient, 1)
            for i, e in enumerate(exp):
                if e:
                    got = got * power(i, e)
            if cache_limit is None or len(mono_cache) < cache_limit:
                mono_cache[exp] = got
        return got

    collected: dict[tuple[int, ...], LinForm] = {}
    for yexp, lf in poly.terms.items():
        image = monomial_image(yexp)
        for xexp, coef in image.terms.items():
            acc = collected.get(xexp)
            if acc is None:
                acc = LinForm()
                collected[xexp] = acc
            acc._iadd_scaled(lf, coef)
    return {e: lf for e, lf in collected.items() if not lf.is_zero()}


# ---------------------------------------------------------------------------
# text format

_TOKEN = re.compile(r"\s*(\d+|[A-Za-z_][A-Za-z_0-9]*|\^|\*|\+|-|/)")


def _tokenize(text: str) -> list[str]:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            if text[pos:].strip():
                raise ValueError(f"cannot parse {text[pos:]!r}")
            break
        tokens.append(m.group(1))
        pos = m.end()
    return tokens


def parse_terms(text: str, names) -> dict[tuple[int, ...], Fraction]:
    """Parse the shared text format into an exponent dict."""
    name_to_idx = {name: i for i, name in enumerate(names)}
    tokens = _tokenize(text)
    if not tokens:
        raise ValueError("empty polynomial text")
    width = len(names)
    terms: dict[tuple[int, ...], Fraction] = {}
    pos = 0

    def peek():
        return tokens[pos] if pos < len(tokens) else None

    def take():
        nonlocal pos
        tok = tokens[pos]
        pos += 1
        return tok

    def parse_int() -> int:
        sign = 1
        if peek() == "-":
            take()
            sign = -1
        tok = take()
        if not tok.isdigit():
            raise ValueError(f"expected integer, got {tok!r}")
        return sign * int(tok)

    def parse_factor(coef, exp):
        tok = take()
        if tok.isdigit():
            num = int(tok)
            if peek() == "/":
                take()
                den = take()
                if not den.isdigit():
                    raise ValueError("bad rational")
                return coef * Fraction(num, int(den)), exp
            return coef * num, exp
        if tok in name_to_idx:
            power = 1
            if peek() == "^":
                take()
                power = parse_int()
            idx = name_to_idx[tok]
            exp = exp[:idx] + (exp[idx] + power,) + exp[idx + 1 :]
            return coef, exp
        raise ValueError(f"unknown symbol {tok!r}")

    def parse_term(sign):
        coef = Fraction(sign)
        exp = (0,) * width
        coef, exp = parse_factor(coef, exp)
        while peek() == "*":
            take()
            coef, exp = parse_factor(coef, exp)
        if coef:
            cur = terms.get(exp, Fraction(0)) + coef
            if cur:
                terms[exp] = cur
            else:
                terms.pop(exp, None)

    sign = 1
    if peek() in ("+", "-"):
        sign = -1 if take() == "-" else 1
    parse_term(sign)
    while pos < len(tokens):
        tok = take()
        if tok == "+":
            parse_term(1)
        elif tok == "-":
            parse_term(-1)
        else:
            raise ValueError(f"expected + or -, got {tok!r}")
    return terms


def format_terms(terms, names) -> str:
    """Render an exponent dict in the shared text format."""
    if not terms:
        return "0"
    parts = []
    for exp, coef in sorted_terms(terms):
        factors = []
        for i, e in enumerate(exp):
            if e == 0:
                continue
            if e == 1:
                factors.append(names[i])
            else:
                factors.append(f"{names[i]}^{e}")
        mag = abs(coef)
        if not factors:
            body = str(mag)
        elif mag == 1:
            body = "*".join(factors)
        else:
            body = "*".join([str(mag)] + factors)
        if not parts:
            parts.append(body if coef > 0 else f"-{body}")
        else:
            parts.append(f"+ {body}" if coef > 0 else f"- {body}")
    return " ".join(parts)

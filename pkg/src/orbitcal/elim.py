"""Groebner-basis elimination for closures of swept subspaces.

The image closure of the joint parametrization (group parameters u,
subspace parameters v) -> group(u) . subspace_point(v) is cut out by
the elements of a reduced Groebner basis that involve only the ambient
coordinates z, computed under a block order in which the auxiliary
variables (the saturation variable t, the group parameters x, the
subspace parameters y) all dominate the z's.  This is the independent
oracle against the linear-system decider.
"""

from __future__ import annotations

import json
from fractions import Fraction
from heapq import heappop, heappush
from math import gcd

from orbitcal._kernels import add_scaled_inplace, term_times_into, terms_mul
from orbitcal.errors import ResourceLimitError
from orbitcal.polyring import Ambient, LaurentPoly, format_terms, parse_terms
from orbitcal.repmodel import RepresentationData, vector

DEFAULT_MAX_PAIRS = 200_000


class OrderedRing:
    """Polynomial ring with a block monomial order.

    blocks lists variable index groups by decreasing precedence; inside
    each block the order is graded reverse lexicographic.  Any monomial
    containing a variable of an earlier block beats every monomial
    supported on later blocks only, which is exactly the elimination
    property needed here."""

    __slots__ = ("names", "blocks", "_key_cache")

    def __init__(self, names, blocks):
        self.names = tuple(names)
        self.blocks = tuple(tuple(block) for block in blocks)
        seen = [i for block in self.blocks for i in block]
        if sorted(seen) != list(range(len(self.names))):
            raise ValueError("blocks must partition the variables")
        # monomial comparisons dominate Buchberger; keys are memoized
        self._key_cache: dict[tuple, tuple] = {}

    def order_key(self, exp):
        key = self._key_cache.get(exp)
        if key is None:
            parts = []
            for block in self.blocks:
                parts.append(sum(exp[i] for i in block))
                parts.append(tuple(-exp[i] for i in reversed(block)))
            key = tuple(parts)
            self._key_cache[exp] = key
        return key

    def lead(self, poly):
        return max(poly, key=self.order_key)

    def __repr__(self):
        return f"OrderedRing({self.names})"


def _divides(e1, e2) -> bool:
    for a, b in zip(e1, e2):
        if a > b:
            return False
    return True


def _exp_sub(e1, e2):
    return tuple(a - b for a, b in zip(e1, e2))


def _exp_lcm(e1, e2):
    return tuple(max(a, b) for a, b in zip(e1, e2))


def _primitive(poly, ring):
    """Scale to coprime integer coefficients with positive leading one."""
    if not poly:
        return poly
    denom = 1
    for c in poly.values():
        denom = denom * c.denominator // gcd(denom, c.denominator)
    numer = 0
    for c in poly.values():
        numer = gcd(numer, abs(c.numerator * (denom // c.denominator)))
    scale = Fraction(denom, numer)
    if poly[ring.lead(poly)] < 0:
        scale = -scale
    return {e: c * scale for e, c in poly.items()}


def _monic(poly, ring):
    if not poly:
        return poly
    lc = poly[ring.lead(poly)]
    if lc == 1:
        return dict(poly)
    inv = Fraction(1) / lc
    return {e: c * inv for e, c in poly.items()}


def normal_form(poly, basis, ring: OrderedRing):
    """Remainder of full multivariate division; zero iff poly is in the
    ideal generated by a Groebner basis."""
    work = dict(poly)
    remainder = {}
    leads = [(g, ring.lead(g)) for g in basis if g]
    while work:
        e = ring.lead(work)
        c = work[e]
        for g, glead in leads:
            if _divides(glead, e):
                term_times_into(work, g, _exp_sub(e, glead), -c / g[glead])
                break
        else:
            remainder[e] = c
            del work[e]
    return remainder


def s_polynomial(f, g, ring: OrderedRing):
    lf, lg = ring.lead(f), ring.lead(g)
    lcm = _exp_lcm(lf, lg)
    out = {}
    term_times_into(out, f, _exp_sub(lcm, lf), Fraction(1) / f[lf])
    term_times_into(out, g, _exp_sub(lcm, lg), Fraction(-1) / g[lg])
    return out


def buchberger(generators, ring: OrderedRing, max_pairs: int = DEFAULT_MAX_PAIRS):
    """Reduced Groebner basis of the generated ideal.

    Normal selection strategy with the coprime-lead and chain criteria;
    intermediate polynomials are kept primitive over Z to control
    coefficient growth, the final basis is monic, interreduced and
    sorted by leading monomial, hence canonical.  Basis leads and pair
    selection keys are computed once, when created."""
    basis = []
    for g in generators:
        g = {e: Fraction(c) for e, c in g.items() if c}
        if g:
            basis.append(_primitive(g, ring))
    if not basis:
        raise ValueError("need at least one nonzero generator")

    leads = [ring.lead(g) for g in basis]

    # every pair enters the heap exactly once, keyed by its lcm in the
    # order (ties broken by index), so pops replay the normal strategy
    heap: list = []
    pending: set = set()

    def push_pair(i, j):
        heappush(heap, (ring.order_key(_exp_lcm(leads[i], leads[j])), (i, j)))
        pending.add((i, j))

    for i in range(len(basis)):
        for j in range(i + 1, len(basis)):
            push_pair(i, j)
    processed = 0
    while heap:
        processed += 1
        if processed > max_pairs:
            raise ResourceLimitError(f"Groebner pair limit {max_pairs} exceeded")
        _, pair = heappop(heap)
        pending.discard(pair)
        i, j = pair
        li, lj = leads[i], leads[j]
        lcm = _exp_lcm(li, lj)
        if all(a + b == m for a, b, m in zip(li, lj, lcm)):
            continue  # coprime leads: the S-polynomial reduces to zero
        if _chain_criterion(i, j, lcm, leads, pending):
            continue
        s = s_polynomial(basis[i], basis[j], ring)
        r = normal_form(s, basis, ring)
        if r:
            r = _primitive(r, ring)
            basis.append(r)
            leads.append(ring.lead(r))
            new = len(basis) - 1
            for k in range(new):
                push_pair(k, new)
    return _reduce_basis(basis, ring)


def _chain_criterion(i, j, lcm, leads, pairs) -> bool:
    for k in range(len(leads)):
        if k == i or k == j:
            continue
        if not _divides(leads[k], lcm):
            continue
        p1 = (min(i, k), max(i, k))
        p2 = (min(j, k), max(j, k))
        if p1 not in pairs and p2 not in pairs:
            return True
    return False


def _reduce_basis(basis, ring: OrderedRing):
    # minimalize: drop elements whose lead is divisible by another lead
    basis = [dict(g) for g in basis if g]
    keep = []
    leads = [ring.lead(g) for g in basis]
    for i, g in enumerate(basis):
        if any(
            j != i
            and _divides(leads[j], leads[i])
            and (leads[j] != leads[i] or j < i)
            for j in range(len(basis))
        ):
            continue
        keep.append(g)
    # interreduce to the unique reduced basis
    changed = True
    while changed:
        changed = False
        for i in range(len(keep)):
            others = keep[:i] + keep[i + 1 :]
            r = normal_form(keep[i], others, ring) if others else keep[i]
            if r != keep[i]:
                changed = True
                if r:
                    keep[i] = _primitive(r, ring)
                else:
                    del keep[i]
                    break
    reduced = [_monic(g, ring) for g in keep if g]
    reduced.sort(key=lambda g: ring.order_key(ring.lead(g)))
    return GroebnerBasis(reduced, ring)


class GroebnerBasis:
    """A reduced basis together with its ring/order."""

    __slots__ = ("generators", "ring")

    def __init__(self, generators, ring):
        self.generators = list(generators)
        self.ring = ring

    def __iter__(self):
        return iter(self.generators)

    def __len__(self):
        return len(self.generators)

    def normal_form(self, poly):
        return normal_form(poly, self.generators, self.ring)

    def spoly_check(self) -> bool:
        """Every S-polynomial of basis pairs reduces to zero."""
        for i in range(len(self.generators)):
            for j in range(i + 1, len(self.generators)):
                s = s_polynomial(self.generators[i], self.generators[j], self.ring)
                if normal_form(s, self.generators, self.ring):
                    return False
        return True


# ---------------------------------------------------------------------------
# swept subspaces


class SubspaceMap:
    """Affine parametrization of a linear subvariety: n polynomial
    images in the parameters y1..yl (l = 0 parametrizes a point)."""

    __slots__ = ("l", "images")

    def __init__(self, l: int, images):
        if l < 0:
            raise ValueError("negative parameter count")
        self.l = l
        amb = Ambient(0, l, names=tuple(f"y{i + 1}" for i in range(l)))
        out = []
        for img in images:
            if isinstance(img, LaurentPoly):
                if img.ambient != amb:
                    raise ValueError("image ambient mismatch")
                out.append(img)
            else:
                out.append(LaurentPoly.parse(str(img), amb))
        if not out:
            raise ValueError("need at least one image")
        self.images = out

    @classmethod
    def point(cls, b) -> "SubspaceMap":
        b = vector(b)
        amb = Ambient(0, 0, names=())
        return cls(0, [LaurentPoly.const(amb, x) for x in b])

    @classmethod
    def from_json(cls, payload: dict) -> "SubspaceMap":
        images = payload.get("images")
        if not images:
            raise ValueError("subspace file must list at least one image")
        return cls(int(payload["l"]), images)

    def to_json(self) -> dict:
        return {"l": self.l, "images": [str(img) for img in self.images]}

    def evaluate(self, point):
        return tuple(img.evaluate(point) for img in self.images)

    @classmethod
    def load(cls, path) -> "SubspaceMap":
        with open(path, encoding="utf-8") as fh:
            return cls.from_json(json.load(fh))


def closure_ring(rep: RepresentationData, l: int, with_t: bool) -> OrderedRing:
    names = []
    blocks = []
    idx = 0
    if with_t:
        names.append("t")
        blocks.append((0,))
        idx = 1
    x_block = tuple(range(idx, idx + rep.r + rep.s))
    names.extend(rep.ambient.names)
    idx += rep.r + rep.s
    y_block = tuple(range(idx, idx + l))
    names.extend(f"y{i + 1}" for i in range(l))
    idx += l
    z_block = tuple(range(idx, idx + rep.n))
    names.extend(f"z{i + 1}" for i in range(rep.n))
    blocks.append(x_block)
    if y_block:
        blocks.append(y_block)
    blocks.append(z_block)
    return OrderedRing(names, blocks)


def closure_equations(
    rep: RepresentationData,
    tau: SubspaceMap,
    *,
    entry_denominator_saturation: bool = False,
    max_pairs: int = DEFAULT_MAX_PAIRS,
):
    """Polynomials in z1..zn whose common zero set is the closure of the
    swept subspace under the parametrized action.

    Builds the rational coordinate images, clears their monomial
    denominators, saturates by the product of the invertible parameters
    (or by the product of the per-coordinate denominators when
    entry_denominator_saturation is set; the two saturations cut the
    same closure), eliminates through the block order and keeps the
    z-only basis elements."""
    if len(tau.images) != rep.n:
        raise ValueError("subspace image count must equal the dimension")
    l = tau.l
    width_x = rep.r + rep.s

    # coordinate images as dicts over (x..., y...) exponents
    images = []
    for p in range(rep.n):
        acc: dict = {}
        for q in range(rep.n):
            entry = rep.rho[p][q].terms
            tau_q = tau.images[q].terms
            if not entry or not tau_q:
                continue
            widened_rho = {exp + (0,) * l: c for exp, c in entry.items()}
            widened_tau = {(0,) * width_x + exp: c for exp, c in tau_q.items()}
            add_scaled_inplace(acc, terms_mul(widened_rho, widened_tau), Fraction(1))
        images.append(acc)

    denominators = []
    for f in images:
        m = [0] * width_x
        for exp in f:
            for k in range(rep.r):
                if -exp[k] > m[k]:
                    m[k] = -exp[k]
        denominators.append(tuple(m))

    if rep.r == 0:
        with_t = False
    elif entry_denominator_saturation:
        with_t = any(any(m) for m in denominators)
    else:
        with_t = True
    ring = closure_ring(rep, l, with_t)
    width = len(ring.names)
    t_off = 1 if with_t else 0

    def embed(exp_xy, z_index=None, t_power=0):
        exp = [0] * width
        if with_t:
            exp[0] = t_power
        for k, e in enumerate(exp_xy):
            exp[t_off + k] = e
        if z_index is not None:
            exp[t_off + width_x + l + z_index] += 1
        return tuple(exp)

    generators = []
    for p in range(rep.n):
        g: dict = {}
        m = denominators[p]
        lead_exp = embed(m + (0,) * l, z_index=p)
        g[lead_exp] = Fraction(1)
        for exp, c in images[p].items():
            shifted = tuple(e + mm for e, mm in zip(exp[:width_x], m)) + exp[width_x:]
            key = embed(shifted)
            cur = g.get(key, Fraction(0)) - c
            if cur:
                g[key] = cur
            else:
                g.pop(key, None)
        generators.append(g)

    if with_t:
        if entry_denominator_saturation:
            product = [0] * width_x
            for m in denominators:
                product = [a + b for a, b in zip(product, m)]
        else:
            product = [1 if k < rep.r else 0 for k in range(width_x)]
        sat = {
            embed((0,) * (width_x + l)): Fraction(1),
            embed(tuple(product) + (0,) * l, t_power=1): Fraction(-1),
        }
        generators.append(sat)

    basis = buchberger(generators, ring, max_pairs=max_pairs)

    z_start = t_off + width_x + l
    equations = []
    for g in basis:
        if all(all(e == 0 for e in exp[:z_start]) for exp in g):
            equations.append({exp[z_start:]: c for exp, c in g.items()})
    return equations


def point_in_closure(equations, point) -> bool:
    """True iff every defining polynomial vanishes exactly at the point."""
    point = vector(point)
    for q in equations:
        total = Fraction(0)
        for exp, coef in q.items():
            if len(exp) != len(point):
                raise ValueError("arity mismatch between equations and point")
            val = coef
            for x, e in zip(point, exp):
                if e:
                    val *= x**e
            total += val
        if total:
            return False
    return True


def evaluate_equation(q, point) -> Fraction:
    point = vector(point)
    total = Fraction(0)
    for exp, coef in q.items():
        val = coef
        for x, e in zip(point, exp):
            if e:
                val *= x**e
        total += val
    return total


def format_equation(q, n: int) -> str:
    names = tuple(f"z{i + 1}" for i in range(n))
    return format_terms(q, names)


def parse_equation(text: str, n: int) -> dict:
    names = tuple(f"z{i + 1}" for i in range(n))
    return parse_terms(text, names)

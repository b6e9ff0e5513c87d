"""Closure membership by linear-system consistency.

Given a conic base orbit with degree bound d, membership of a point's
orbit in the closure is equivalent to the INconsistency of an explicit
linear system: build generic polynomials of degree 2d-2 with
indeterminate coefficients, form the combination
(y_1 - a_1)F_1 + ... + (y_n - a_n)F_n - 1, substitute the orbit
parametrization for the y's, and require every collected monomial
coefficient to vanish.  A refutation of the system certifies
membership, a solution certifies non-membership, and both certificates
re-verify by exact plug-back.
"""

from __future__ import annotations

import json
import random
from fractions import Fraction
from math import comb

from orbitcal import repmodel
from orbitcal.degbound import parametric_degree_bound
from orbitcal.errors import CertificateError, PreconditionError, ResourceLimitError
from orbitcal.exactmath import REFUTATION, SOLUTION, ConsistencyWitness, SparseMatrix, solve_or_refute
from orbitcal.polyring import GenericPoly, LaurentPoly, generic_substitute
from orbitcal.repmodel import RepresentationData, vector

IN_CLOSURE = "IN_CLOSURE"
NOT_IN_CLOSURE = "NOT_IN_CLOSURE"
TRIVIALLY_DENSE = "TRIVIALLY_DENSE"

DEFAULT_MAX_NNZ = 10**6


class DecisionProblem:
    """The data of one membership question.

    conic_asserted must be set by the caller (directly, or through
    conic_problem which applies the scaling reduction); decide refuses
    to run otherwise, since conicity of the base orbit cannot be
    checked cheaply."""

    __slots__ = ("rep", "a", "b", "degree_bound_override", "conic_asserted")

    def __init__(self, rep, a, b, degree_bound_override=None, conic_asserted=False):
        self.rep = rep
        self.a = vector(a)
        self.b = vector(b)
        if len(self.a) != rep.n or len(self.b) != rep.n:
            raise ValueError("vector length mismatch")
        if degree_bound_override is not None and degree_bound_override < 1:
            raise ValueError("degree bound override must be >= 1")
        self.degree_bound_override = degree_bound_override
        self.conic_asserted = conic_asserted


def conic_problem(rep, a, b, degree_bound_override=None) -> DecisionProblem:
    """Apply the conic reduction and return a ready-to-decide problem."""
    rep2, a2, b2 = repmodel.make_conic(rep, a, b)
    return DecisionProblem(
        rep2, a2, b2, degree_bound_override=degree_bound_override, conic_asserted=True
    )


class LinearSystem:
    """A c = v with rows indexed by parameter-space monomials and
    columns by the generic-coefficient labels."""

    __slots__ = ("matrix", "rhs", "row_monomials", "col_keys")

    def __init__(self, matrix: SparseMatrix, rhs, row_monomials, col_keys):
        self.matrix = matrix
        self.rhs = [Fraction(x) for x in rhs]
        self.row_monomials = list(row_monomials)
        self.col_keys = list(col_keys)


class Decision:
    """Verdict plus an exactly verifiable certificate and a transcript
    of the sizes and choices that produced it."""

    __slots__ = ("verdict", "certificate", "transcript")

    def __init__(self, verdict, certificate, transcript):
        self.verdict = verdict
        self.certificate = certificate
        self.transcript = dict(transcript)

    @property
    def in_closure(self) -> bool:
        return self.verdict in (IN_CLOSURE, TRIVIALLY_DENSE)

    def to_json(self) -> dict:
        cert = None
        if self.certificate is not None:
            cert = {
                "kind": self.certificate.kind,
                "vector": [str(x) for x in self.certificate.vector],
            }
        return {
            "verdict": self.verdict,
            "certificate": cert,
            "transcript": self.transcript,
        }

    @classmethod
    def from_json(cls, payload) -> "Decision":
        cert = payload.get("certificate")
        witness = None
        if cert is not None:
            witness = ConsistencyWitness(cert["kind"], [Fraction(x) for x in cert["vector"]])
        return cls(payload["verdict"], witness, payload.get("transcript", {}))

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2)


def build_generic_H(n: int, d: int, alpha) -> GenericPoly:
    """The generic combination (y_1 - a_1)F_1 + ... + (y_n - a_n)F_n - 1
    where each F_p ranges over all monomials of total degree <= 2d-2
    with its own indeterminate coefficient c[(p, exponent)]."""
    if n < 1 or d < 1:
        raise ValueError("need n >= 1 and d >= 1")
    alpha = vector(alpha)
    if len(alpha) != n:
        raise ValueError("alpha length mismatch")
    deg_f = 2 * d - 2
    H = GenericPoly(n, deg_f + 1)
    H.add_term((0,) * n, const=-1)
    for p in range(n):
        for qexp in _monomials_up_to(n, deg_f):
            key = (p, qexp)
            lifted = qexp[:p] + (qexp[p] + 1,) + qexp[p + 1 :]
            H.add_term(lifted, key=key, coef=1)
            if alpha[p]:
                H.add_term(qexp, key=key, coef=-alpha[p])
    return H


def _monomials_up_to(n: int, degree: int):
    """All exponent tuples in N^n of total degree <= degree, graded order."""

    def rec(prefix, remaining, slots):
        if slots == 1:
            for e in range(remaining + 1):
                yield prefix + (e,)
            return
        for e in range(remaining + 1):
            yield from rec(prefix + (e,), remaining - e, slots - 1)

    yield from rec((), degree, n)


def generic_coefficient_count(n: int, d: int) -> int:
    return n * comb(2 * d - 2 + n, n)


def orbit_pullbacks(rep: RepresentationData, b) -> list[LaurentPoly]:
    """Pullbacks of the coordinates along the orbit parametrization of b."""
    return repmodel.coordinate_pullbacks(rep, b)


def assemble_system(H: GenericPoly, pullbacks) -> LinearSystem:
    """Collect the substituted combination by parameter monomial and
    split each affine-linear coefficient into a homogeneous row and a
    right-hand side (the constants move to the right)."""
    collected = generic_substitute(H, pullbacks)
    row_monomials = sorted(collected, key=lambda e: (sum(e), e))
    col_set = set()
    for lf in collected.values():
        col_set.update(lf.coeffs)
    col_keys = sorted(col_set)
    col_index = {key: j for j, key in enumerate(col_keys)}
    matrix = SparseMatrix(len(row_monomials), max(1, len(col_keys)))
    rhs = []
    for i, exp in enumerate(row_monomials):
        lf = collected[exp]
        for key, coef in lf.coeffs.items():
            matrix.entries[(i, col_index[key])] = coef
        rhs.append(-lf.const)
    return LinearSystem(matrix, rhs, row_monomials, col_keys)


def verify(decision: Decision, system: LinearSystem) -> bool:
    """Exact plug-back check of a decision's certificate against the
    system that produced it."""
    if decision.certificate is None:
        return decision.verdict == TRIVIALLY_DENSE
    if decision.verdict == IN_CLOSURE and decision.certificate.kind != REFUTATION:
        return False
    if decision.verdict == NOT_IN_CLOSURE and decision.certificate.kind != SOLUTION:
        return False
    return decision.certificate.verify(system.matrix, system.rhs)


def decide(
    problem: DecisionProblem,
    *,
    seed: int = 0,
    max_nnz: int = DEFAULT_MAX_NNZ,
    exact_dim: bool = False,
    keep_system: bool = False,
):
    """Run the full decision pipeline.

    Steps: check the dense case through the orbit dimension; scramble
    the basis until every coordinate of b is nonzero; pick the degree
    bound (override, then the representation's own bound, then the
    parametric fallback); build, substitute and assemble the linear
    system; solve with an exact witness and re-verify it before
    returning.  Returns the Decision, or (Decision, LinearSystem) when
    keep_system is set."""
    rep, a, b = problem.rep, problem.a, problem.b
    if not any(b):
        raise PreconditionError("the base vector b must be nonzero")
    if not problem.conic_asserted:
        raise PreconditionError(
            "the orbit of b must be conic: use conic_problem() or assert conicity"
        )
    rng = random.Random(seed)

    dim = repmodel.orbit_dimension(rep, b, rng=rng, exact=exact_dim)
    transcript = {
        "n": rep.n,
        "orbit_dimension": dim,
        "seed": seed,
    }
    if dim >= rep.n:
        decision = Decision(TRIVIALLY_DENSE, None, transcript | {"note": "orbit closure is the whole space"})
        return (decision, None) if keep_system else decision

    if all(b):
        scramble = None
        rep_w, a_w, b_w = rep, a, b
    else:
        scramble = repmodel.find_scrambling(b, rng=rng)
        rep_w = repmodel.change_basis(rep, scramble)
        a_w = repmodel.apply_matrix(scramble, a)
        b_w = repmodel.apply_matrix(scramble, b)
    transcript["scramble"] = scramble

    if problem.degree_bound_override is not None:
        d = problem.degree_bound_override
        source = "override"
    elif rep.degree_bound is not None:
        d = rep.degree_bound
        source = "representation"
    else:
        d = parametric_degree_bound(rep_w)
        source = "parametric"
        transcript["degree_bound_note"] = (
            "fallback bound; soundness relies on it dominating the closure degree"
        )
    transcript["degree_bound"] = d
    transcript["degree_bound_source"] = source

    H = build_generic_H(rep_w.n, d, a_w)
    pullbacks = orbit_pullbacks(rep_w, b_w)
    system = assemble_system(H, pullbacks)
    transcript["monomials"] = len(system.row_monomials)
    transcript["c_variables"] = generic_coefficient_count(rep_w.n, d)
    transcript["nonzeros"] = system.matrix.nnz
    if system.matrix.nnz > max_nnz:
        raise ResourceLimitError(
            f"linear system too large: {system.matrix.nnz} nonzeros "
            f"(limit {max_nnz}), {len(system.row_monomials)} rows x "
            f"{len(system.col_keys)} columns"
        )

    witness = solve_or_refute(system.matrix, system.rhs)
    verdict = IN_CLOSURE if witness.kind == REFUTATION else NOT_IN_CLOSURE
    decision = Decision(verdict, witness, transcript)
    if not verify(decision, system):
        raise CertificateError("certificate failed exact re-verification")
    return (decision, system) if keep_system else decision

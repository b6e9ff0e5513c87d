import random
from fractions import Fraction

import pytest

from orbitcal.decider import (
    IN_CLOSURE,
    NOT_IN_CLOSURE,
    TRIVIALLY_DENSE,
    Decision,
    DecisionProblem,
    assemble_system,
    build_generic_H,
    conic_problem,
    decide,
    generic_coefficient_count,
    orbit_pullbacks,
    verify,
)
from orbitcal.errors import PreconditionError, ResourceLimitError
from orbitcal.exactmath import REFUTATION, SOLUTION, ConsistencyWitness, solve_or_refute
from orbitcal.fixtures import decision_battery, parabola_rep
from orbitcal.polyring import LaurentPoly
from orbitcal.repmodel import act, make_conic, torus_diagonal, vector


def test_build_generic_smallest_case():
    H = build_generic_H(1, 1, (Fraction(3),))
    # (y1 - 3)c - 1: one coefficient, constant part -3c - 1
    assert set(H.terms) == {(1,), (0,)}
    key = (0, (0,))
    assert H.terms[(1,)].coeffs == {key: Fraction(1)}
    assert H.terms[(0,)].coeffs == {key: Fraction(-3)}
    assert H.terms[(0,)].const == Fraction(-1)


def test_generic_coefficient_count():
    # monomials of degree <= 2 in 3 variables: 10 per polynomial
    assert generic_coefficient_count(3, 2) == 30
    H = build_generic_H(3, 2, (0, 0, 0))
    keys = set()
    for lf in H.terms.values():
        keys.update(lf.coeffs)
    assert len(keys) == 30


def test_generic_origin_case():
    H = build_generic_H(2, 2, (0, 0))
    assert H.terms[(0, 0)].const == Fraction(-1)
    assert not H.terms[(0, 0)].coeffs


def test_pullbacks_match_action():
    rep = torus_diagonal([(1,), (2,)])
    amb = rep.ambient
    assert orbit_pullbacks(rep, (1, 1)) == [
        LaurentPoly.parse("x1", amb),
        LaurentPoly.parse("x1^2", amb),
    ]
    rep2, _, b2 = make_conic(rep, (0, 0), (1, 1))
    amb2 = rep2.ambient
    assert orbit_pullbacks(rep2, b2) == [
        LaurentPoly.parse("x1", amb2),
        LaurentPoly.parse("x1*x2", amb2),
        LaurentPoly.parse("x1*x2^2", amb2),
    ]


def test_assemble_dense_one_dimensional_orbit():
    # single weight-1 coordinate: the punctured line is dense in the line,
    # so the system is inconsistent for every target value
    rep = torus_diagonal([(1,)])
    for alpha in (0, 1, Fraction(-7, 3)):
        H = build_generic_H(1, 1, (alpha,))
        system = assemble_system(H, orbit_pullbacks(rep, (1,)))
        w = solve_or_refute(system.matrix, system.rhs)
        assert w.kind == REFUTATION


def test_assemble_conified_parabola_sizes_and_verdicts():
    rep2, a2, b2 = make_conic(torus_diagonal([(1,), (2,)]), (1, 0), (1, 1))
    H = build_generic_H(3, 2, a2)
    system = assemble_system(H, orbit_pullbacks(rep2, b2))
    assert generic_coefficient_count(3, 2) == 30
    assert len(system.row_monomials) <= 28  # degrees 0..3 x 0..6 minus gaps
    w = solve_or_refute(system.matrix, system.rhs)
    assert w.kind == SOLUTION  # consistent: not in the closure

    rep2, a2, b2 = make_conic(torus_diagonal([(1,), (2,)]), (0, 0), (1, 1))
    H = build_generic_H(3, 2, a2)
    system = assemble_system(H, orbit_pullbacks(rep2, b2))
    w = solve_or_refute(system.matrix, system.rhs)
    assert w.kind == REFUTATION  # inconsistent: in the closure


def test_decide_battery_against_expected_quadrics():
    for case in decision_battery():
        problem = conic_problem(
            case.rep, case.a, case.b, degree_bound_override=case.degree_bound
        )
        decision = decide(problem)
        assert decision.in_closure == case.expected_in_closure, case.name
        if decision.verdict == IN_CLOSURE:
            assert decision.certificate.kind == REFUTATION
        elif decision.verdict == NOT_IN_CLOSURE:
            assert decision.certificate.kind == SOLUTION


def test_decide_requires_nonzero_base():
    rep = parabola_rep()
    problem = DecisionProblem(rep, (1, 1), (0, 0), conic_asserted=True)
    with pytest.raises(PreconditionError):
        decide(problem)


def test_decide_requires_conic_assertion():
    rep = parabola_rep()
    problem = DecisionProblem(rep, (1, 1), (1, 1))
    with pytest.raises(PreconditionError):
        decide(problem)


def test_decide_trivially_dense():
    rep = torus_diagonal([(1,)])
    problem = DecisionProblem(rep, (5,), (1,), conic_asserted=True)
    decision = decide(problem)
    assert decision.verdict == TRIVIALLY_DENSE
    assert decision.in_closure
    assert decision.certificate is None
    assert decision.transcript["orbit_dimension"] == 1


def test_decide_diagonal_line_with_parametric_bound():
    # orbit {(t, t)} is conic; the fallback degree bound is exact here
    rep = torus_diagonal([(1,), (1,)])
    problem = DecisionProblem(rep, (2, 3), (1, 1), conic_asserted=True)
    decision = decide(problem)
    assert decision.verdict == NOT_IN_CLOSURE
    assert decision.transcript["degree_bound_source"] == "parametric"
    assert decision.transcript["degree_bound"] == 1
    problem = DecisionProblem(rep, (2, 2), (1, 1), conic_asserted=True)
    assert decide(problem).verdict == IN_CLOSURE


def test_decide_uses_representation_bound_when_present():
    rep2, a2, b2 = make_conic(torus_diagonal([(1,), (2,)]), (0, 0), (1, 1))
    rep2.degree_bound = 2
    problem = DecisionProblem(rep2, a2, b2, conic_asserted=True)
    decision = decide(problem)
    assert decision.transcript["degree_bound_source"] == "representation"
    assert decision.verdict == IN_CLOSURE


def test_decide_orbit_points_land_in_closure():
    rng = random.Random(51)
    rep2, _, b2 = make_conic(torus_diagonal([(1,), (2,)]), (0, 0), (1, 1))
    problem_template = dict(degree_bound_override=2)
    for _ in range(20):
        u = [
            Fraction(rng.choice([-3, -2, -1, 1, 2, 3]), rng.randint(1, 2)),
            Fraction(rng.choice([-3, -2, -1, 1, 2, 3]), rng.randint(1, 2)),
        ]
        a2 = act(rep2, u, b2)
        problem = DecisionProblem(
            rep2, a2, b2, conic_asserted=True, **problem_template
        )
        assert decide(problem).verdict == IN_CLOSURE


def test_scaling_invariance_of_verdicts():
    rng = random.Random(53)
    cases = [c for c in decision_battery() if c.name.startswith("parabola")][:3]
    for case in cases:
        base = decide(
            conic_problem(case.rep, case.a, case.b, degree_bound_override=2)
        ).in_closure
        rep2, a2, b2 = make_conic(case.rep, case.a, case.b)
        for _ in range(10):
            lam = Fraction(rng.choice([-5, -3, -2, -1, 1, 2, 3, 5]), rng.randint(1, 3))
            scaled = tuple(lam * x for x in a2)
            problem = DecisionProblem(
                rep2, scaled, b2, degree_bound_override=2, conic_asserted=True
            )
            assert decide(problem).in_closure == base, case.name


def test_seed_independence_with_forced_scrambling():
    # base vector with a zero coordinate forces a basis change
    rep = torus_diagonal([(1,), (2,)])
    rep2, a2, b2 = make_conic(rep, (1, 0), (1, 0))
    assert not all(b2)
    verdicts = set()
    scrambles = []
    for seed in range(5):
        problem = DecisionProblem(
            rep2, a2, b2, degree_bound_override=2, conic_asserted=True
        )
        decision = decide(problem, seed=seed)
        verdicts.add(decision.verdict)
        scrambles.append(decision.transcript["scramble"])
    assert verdicts == {IN_CLOSURE}
    assert all(s is not None for s in scrambles)

    # and a negative instance under the same scrambling pressure
    problem = DecisionProblem(
        rep2, (1, 0, 1), b2, degree_bound_override=2, conic_asserted=True
    )
    assert all(
        decide(problem, seed=seed).verdict == NOT_IN_CLOSURE for seed in range(5)
    )


def test_degree_bound_monotonicity_on_parabola():
    rep2, a2, b2 = make_conic(parabola_rep(), (1, 0), (1, 1))
    verdicts = []
    for d in (2, 3, 4):
        problem = DecisionProblem(
            rep2, a2, b2, degree_bound_override=d, conic_asserted=True
        )
        verdicts.append(decide(problem).verdict)
    assert verdicts == [NOT_IN_CLOSURE] * 3


def test_undersized_degree_bound_documented_failure():
    # d=1 truncates the generic polynomials to constants and the system
    # wrongly reports membership; the elimination oracle disagrees
    rep2, a2, b2 = make_conic(parabola_rep(), (1, 0), (1, 1))
    problem = DecisionProblem(
        rep2, a2, b2, degree_bound_override=1, conic_asserted=True
    )
    assert decide(problem).verdict == IN_CLOSURE  # wrong, by design of the test
    from orbitcal.elim import SubspaceMap, closure_equations, point_in_closure

    eqs = closure_equations(rep2, SubspaceMap.point(b2))
    assert not point_in_closure(eqs, a2)


def test_transitivity_chain_on_quadratics():
    from orbitcal.repmodel import sl2_binary_forms

    sl2 = sl2_binary_forms(2)
    c = (1, 2, 1)  # squared binomial
    b = (1, 0, 0)  # squared variable: same closure (the discriminant cone)
    a = (0, 0, 0)
    pairs = [(a, b), (b, c), (a, c), (c, b)]
    for lo, hi in pairs:
        problem = conic_problem(sl2, lo, hi, degree_bound_override=2)
        assert decide(problem).in_closure, (lo, hi)


def test_resource_limit():
    rep2, a2, b2 = make_conic(parabola_rep(), (1, 0), (1, 1))
    problem = DecisionProblem(
        rep2, a2, b2, degree_bound_override=2, conic_asserted=True
    )
    with pytest.raises(ResourceLimitError):
        decide(problem, max_nnz=10)


def test_certificates_verify_and_reject_tampering():
    rng = random.Random(59)
    rep2, a2, b2 = make_conic(parabola_rep(), (1, 0), (1, 1))
    problem = DecisionProblem(
        rep2, a2, b2, degree_bound_override=2, conic_asserted=True
    )
    decision, system = decide(problem, keep_system=True)
    assert verify(decision, system)
    for _ in range(50):
        vec = list(decision.certificate.vector)
        idx = rng.randrange(len(vec))
        bump = Fraction(rng.randint(1, 5))
        vec[idx] += bump
        tampered = Decision(
            decision.verdict,
            ConsistencyWitness(decision.certificate.kind, vec),
            decision.transcript,
        )
        assert not verify(tampered, system)

    problem = DecisionProblem(
        rep2, (1, 0, 0), b2, degree_bound_override=2, conic_asserted=True
    )
    decision, system = decide(problem, keep_system=True)
    assert decision.verdict == IN_CLOSURE
    zeroed = Decision(
        decision.verdict,
        ConsistencyWitness(REFUTATION, [0] * len(decision.certificate.vector)),
        decision.transcript,
    )
    assert not verify(zeroed, system)


def test_decision_json_round_trip():
    rep2, a2, b2 = make_conic(parabola_rep(), (1, 0), (1, 1))
    problem = DecisionProblem(
        rep2, a2, b2, degree_bound_override=2, conic_asserted=True
    )
    decision = decide(problem)
    back = Decision.from_json(decision.to_json())
    assert back.verdict == decision.verdict
    assert back.certificate == decision.certificate
    assert back.transcript["degree_bound"] == 2

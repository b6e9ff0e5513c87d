"""Heavier cross-checks on binary cubics: the closure of the
triple-root cone is a determinantal variety needing three equations,
which exercises elimination and the linear-system decider well beyond
the quadratic battery."""

from orbitcal.decider import DecisionProblem, decide
from orbitcal.elim import (
    SubspaceMap,
    closure_equations,
    parse_equation,
    point_in_closure,
)
from orbitcal.repmodel import make_conic, sl2_binary_forms

CUBE = (1, 0, 0, 0)  # the cubic z1^3 in the basis z1^3, z1^2 z2, z1 z2^2, z2^3


def test_cubic_cone_equations_and_oracle_agreement():
    sl2 = sl2_binary_forms(3)
    rep2, _, b2 = make_conic(sl2, (0, 0, 0, 0), CUBE)
    equations = closure_equations(rep2, SubspaceMap.point(b2))
    assert equations == [
        parse_equation("z4^2 - 3*z3*z5", 5),
        parse_equation("z3*z4 - 9*z2*z5", 5),
        parse_equation("z3^2 - 3*z2*z4", 5),
    ]

    cases = [
        ((0, 0, 1, 0), False),  # z1*z2^2 has only a double root
        ((1, 3, 3, 1), True),  # (z1+z2)^3 is another cube
        ((0, 0, 0, 0), True),
        ((8, 12, 6, 1), True),  # (2*z1+z2)^3
        ((1, 0, 0, 1), False),  # z1^3 + z2^3 has three simple roots
    ]
    for a, expected in cases:
        _, a2, _ = make_conic(sl2, a, CUBE)
        assert point_in_closure(equations, a2) == expected, a

    # one full decider run against the same fixture (degree of the
    # twisted-cubic cone is 3)
    problem = DecisionProblem(
        *make_conic(sl2, (0, 0, 1, 0), CUBE),
        degree_bound_override=3,
        conic_asserted=True,
    )
    assert decide(problem).verdict == "NOT_IN_CLOSURE"

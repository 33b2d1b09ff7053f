from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import lp_min_by_vertices
from simplicial_volume.chains import BIPYRAMID, GAP_DIGRAPH, HEXAGON
from simplicial_volume.corpus import small_spheres
from simplicial_volume.lp import (
    LinearProgram, LPSolution, LPStatus, WarmBasis, format_rational, parse_rational,
    solve_lp, verify_solution, warm_start_basis)
from simplicial_volume.volume import build_program

TOY = LinearProgram.from_dense([[1, 1]], [1], [1, 1])


@pytest.mark.parametrize("warm", [True, False])
def test_toy_program(warm):
    s = solve_lp(TOY, warm_start=warm)
    assert s.status is LPStatus.OPTIMAL
    assert s.value == 1
    assert verify_solution(TOY, s)


def test_toy_warm_basis_is_certified():
    wb = warm_start_basis(TOY)
    assert len(wb.columns) + len(wb.rows) == 1
    s = solve_lp(TOY)
    assert s.stats["warm_start"] == "certified"


def test_infeasible_with_farkas_vector():
    p = LinearProgram.from_dense([[1]], [-1], [1])
    for warm in (True, False):
        s = solve_lp(p, warm_start=warm)
        assert s.status is LPStatus.INFEASIBLE
        y = s.witness
        assert sum(a * b for a, b in zip(y, p.rhs)) > 0
        assert all(rc <= 0 for rc in [sum(y[i] * v for i, v in col.items())
                                       for col in p.columns])
        assert verify_solution(p, s)


def test_unbounded_with_ray():
    p = LinearProgram.from_dense([[1, -1]], [0], [-1, 0])
    s = solve_lp(p, warm_start=False)
    assert s.status is LPStatus.UNBOUNDED
    assert verify_solution(p, s)


def test_verify_rejects_perturbed_primal():
    s = solve_lp(TOY)
    bad = LPSolution(s.status, s.value, (s.primal[0] + 1,) + s.primal[1:], s.dual, s.basis)
    assert not verify_solution(TOY, bad)


def test_verify_hand_built_pair():
    good = LPSolution(LPStatus.OPTIMAL, Fraction(1), (Fraction(1), Fraction(0)), (Fraction(1),))
    assert verify_solution(TOY, good)
    wrong_dual = LPSolution(LPStatus.OPTIMAL, Fraction(1), (Fraction(1), Fraction(0)),
                            (Fraction(2),))
    assert not verify_solution(TOY, wrong_dual)


def test_floats_are_rejected():
    with pytest.raises(TypeError):
        LinearProgram.from_dense([[0.5]], [1], [1])


def test_bipyramid_program_values():
    p, _ = build_program(BIPYRAMID)
    s = solve_lp(p)
    assert s.value == 2
    assert sum(y * b for y, b in zip(s.dual, p.rhs)) == 2
    assert verify_solution(p, s)


def _beale():
    # Beale's example: Dantzig's largest-coefficient rule cycles on it.
    # min -3/4 x4 + 20 x5 - 1/2 x6 + 6 x7, slacks x1..x3
    A = [
        [1, 0, 0, Fraction(1, 4), -8, -1, 9],
        [0, 1, 0, Fraction(1, 2), -12, Fraction(-1, 2), 3],
        [0, 0, 1, 0, 0, 1, 0],
    ]
    c = [0, 0, 0, Fraction(-3, 4), 20, Fraction(-1, 2), 6]
    return LinearProgram.from_dense(A, [0, 0, 1], c)


def test_degenerate_cycling_instance_terminates():
    p = _beale()
    s = solve_lp(p, warm_start=False)
    assert s.status is LPStatus.OPTIMAL
    assert s.value == Fraction(-5, 4)
    assert verify_solution(p, s)
    # start from the slack basis, which is where cycling would occur
    s2 = solve_lp(p, basis=WarmBasis((0, 1, 2)))
    assert s2.value == Fraction(-5, 4)
    assert s2.stats["warm_start"] == "continued"


def test_singular_warm_basis_falls_back():
    p, _ = build_program(BIPYRAMID)
    # columns 0 and 1 are the two orientations of one simplex: linearly dependent
    bogus = WarmBasis((0, 1) + tuple(range(2, p.num_rows)), ())
    s = solve_lp(p, basis=bogus)
    assert s.stats["warm_start"].startswith("rejected")
    assert s.value == solve_lp(p, warm_start=False).value == 2
    assert verify_solution(p, s)


def test_cold_solves_are_deterministic():
    p, _ = build_program(GAP_DIGRAPH)
    a = solve_lp(p, warm_start=False)
    b = solve_lp(p, warm_start=False)
    assert a.basis == b.basis
    assert a.primal == b.primal
    assert a.dual == b.dual


@pytest.mark.parametrize("K", [HEXAGON, BIPYRAMID, GAP_DIGRAPH, small_spheres()[5][1]],
                         ids=["hexagon", "bipyramid", "gap-digraph", "sphere"])
def test_warm_and_cold_agree(K):
    p, _ = build_program(K)
    warm = solve_lp(p, warm_start=True)
    cold = solve_lp(p, warm_start=False)
    assert warm.value == cold.value
    assert verify_solution(p, warm) and verify_solution(p, cold)


def test_triples_round_trip():
    p = _beale()
    q = LinearProgram.from_triples(p.to_triples())
    assert q.rows == p.rows and q.rhs == p.rhs and q.objective == p.objective


def test_rational_text():
    assert format_rational(Fraction(47, 2)) == "47/2"
    assert format_rational(Fraction(4)) == "4"
    assert parse_rational("-3/6") == Fraction(-1, 2)
    with pytest.raises(ValueError):
        parse_rational("0.5")


small_int = st.integers(-3, 3)


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 3), st.integers(2, 5), st.data())
def test_random_programs_match_vertex_enumeration(m, n, data):
    A = [[data.draw(small_int) for _ in range(n)] for _ in range(m)]
    b = [data.draw(small_int) for _ in range(m)]
    c = [data.draw(st.integers(0, 4)) for _ in range(n)]
    p = LinearProgram.from_dense(A, b, c)
    expected = lp_min_by_vertices(A, b, c)
    for warm in (False, True):
        s = solve_lp(p, warm_start=warm)
        assert verify_solution(p, s)
        if expected is None:
            assert s.status is LPStatus.INFEASIBLE
        else:
            assert s.status is LPStatus.OPTIMAL
            assert s.value == expected

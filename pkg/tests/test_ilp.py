import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import integer_program_bruteforce
from simplicial_volume.chains import BIPYRAMID, GAP_DIGRAPH, HEXAGON
from simplicial_volume.errors import Infeasible, NoFractionalVariable, TimeLimitReached
from simplicial_volume.ilp import BnbNode, branch_select, solve_ilp
from simplicial_volume.lp import LinearProgram, solve_lp
from simplicial_volume.volume import build_program


def test_branch_select_examples():
    F = Fraction
    assert branch_select([F(1, 2), 0, 1]) == 0
    assert branch_select([F(1, 4), F(1, 2)]) == 1
    assert branch_select([F(1, 3), F(2, 3)]) == 0
    with pytest.raises(NoFractionalVariable):
        branch_select([0, 1, 2])


def test_node_bounds_tighten():
    node = BnbNode(((0, "hi", 3), (0, "hi", 2), (1, "lo", 1), (1, "lo", 2)))
    assert node.bounds() == {0: [0, 2], 1: [2, None]}


def test_bipyramid_and_gap_digraph():
    p, _ = build_program(BIPYRAMID)
    assert solve_ilp(p).value == 2
    p, _ = build_program(GAP_DIGRAPH)
    res = solve_ilp(p)
    assert res.value == 7
    assert res.proof_bound == 6
    assert all(r == 0 for r in p.residual(res.witness))


def test_integral_relaxation_needs_one_node():
    p, _ = build_program(HEXAGON)
    res = solve_ilp(p)
    assert res.value == 4
    assert res.nodes_explored == 1


def test_infeasible_program():
    p = LinearProgram.from_dense([[2]], [1], [1])
    with pytest.raises(Infeasible):
        solve_ilp(p)
    p = LinearProgram.from_dense([[1]], [-1], [1])
    with pytest.raises(Infeasible):
        solve_ilp(p)


def test_incumbent_is_checked():
    p, _ = build_program(BIPYRAMID)
    with pytest.raises(ValueError):
        solve_ilp(p, initial_incumbent=[1] * p.num_vars)


def test_deterministic():
    p, _ = build_program(GAP_DIGRAPH)
    a = solve_ilp(p, warm_start=False)
    b = solve_ilp(p, warm_start=False)
    assert a.witness == b.witness and a.nodes_explored == b.nodes_explored


def test_expired_deadline_reports_bounds():
    p, _ = build_program(GAP_DIGRAPH)
    root = solve_lp(p)
    with pytest.raises(TimeLimitReached) as info:
        solve_ilp(p, root=root, deadline=0.0)
    assert info.value.lower_bound == 6


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 3), st.integers(2, 6), st.data())
def test_matches_exhaustive_enumeration(m, n, data):
    # nonnegative rows keep the feasible region bounded, so the tree is finite
    A = [[data.draw(st.integers(0, 3)) for _ in range(n)] for _ in range(m)]
    b = [data.draw(st.integers(0, 4)) for _ in range(m)]
    c = [1] * n
    p = LinearProgram.from_dense(A, b, c)
    expected = integer_program_bruteforce(A, b, c, 4)
    lp = solve_lp(p)
    try:
        res = solve_ilp(p)
    except Infeasible:
        assert expected is None
        return
    assert all(r == 0 for r in p.residual(res.witness))
    assert all(v >= 0 for v in res.witness)
    assert res.value == sum(res.witness)
    assert math.ceil(lp.value) <= res.value
    if expected is not None:
        assert res.value == expected
    else:
        assert res.value > 4

import random
from fractions import Fraction
from itertools import combinations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from simplicial_volume.chains import BIPYRAMID, GAP_DIGRAPH, HEXAGON, Chain, boundary, one_norm
from simplicial_volume.errors import DimensionMismatch
from simplicial_volume.flux import (
    FluxFunction, centered_flux_properties, evaluate, outward_flux, recenter_flux,
    verify_certificate, wedge)
from simplicial_volume.volume import compute_vq, compute_vz

A, B, C, D, E = range(5)


def test_evaluate_antisymmetry():
    phi = FluxFunction(1, {(0, 1): 1})
    assert evaluate(phi, (1, 0)) == -1
    assert phi((0, 2)) == 0
    with pytest.raises(DimensionMismatch):
        evaluate(phi, (0, 1, 2))


def test_outward_flux_basics():
    zero = FluxFunction(2)
    assert outward_flux(zero, (0, 1, 2, 3)) == 0
    phi = FluxFunction(2, {(0, 1, 2): Fraction(1, 3), (0, 1, 3): -2})
    assert outward_flux(phi, (1, 0, 2, 3)) == -outward_flux(phi, (0, 1, 2, 3))
    with pytest.raises(DimensionMismatch):
        outward_flux(phi, (0, 1, 2))


def _hand_flux():
    # unit flux through AEB and CED
    return FluxFunction(2, {(A, E, B): 1, (C, E, D): 1})


def test_hand_built_bipyramid_certificate():
    phi = _hand_flux()
    assert phi((A, E, B)) == 1
    assert outward_flux(phi, (A, B, D, E)) <= 1
    rep = verify_certificate(BIPYRAMID, phi, 2)
    assert rep.feasible
    assert rep.total_over_facets == 2
    assert rep.certifies


def test_zero_flux_certifies_zero():
    rep = verify_certificate(HEXAGON, FluxFunction(1), 0)
    assert rep.feasible and rep.total_over_facets == 0 and rep.certifies


def test_infeasible_flux_is_reported():
    phi = FluxFunction(1, {(0, 1): 2})
    rep = verify_certificate(HEXAGON, phi, 0)
    assert not rep.feasible
    assert rep.worst_flux == 2
    assert outward_flux(phi, rep.worst_simplex) == 2


@pytest.mark.parametrize("K, vq", [(HEXAGON, 4), (BIPYRAMID, 2), (GAP_DIGRAPH, 6)],
                         ids=["hexagon", "bipyramid", "gap-digraph"])
def test_solver_dual_is_optimal_certificate(K, vq):
    r = compute_vq(K)
    rep = verify_certificate(K, r.certificate, vq)
    assert rep.feasible and rep.total_over_facets == vq


@pytest.mark.parametrize("K", [HEXAGON, BIPYRAMID, GAP_DIGRAPH], ids=["hex", "bip", "gap"])
def test_weak_duality_with_scaled_duals(K):
    rng = random.Random(7)
    r = compute_vq(K)
    alpha = compute_vz(K).witness
    for _ in range(10):
        s = Fraction(rng.randint(0, 12), 12)
        phi = s * r.certificate
        rep = verify_certificate(K, phi, s * r.value)
        assert rep.feasible and rep.certifies
        assert rep.total_over_facets <= one_norm(alpha)


@pytest.mark.parametrize("K", [HEXAGON, BIPYRAMID, GAP_DIGRAPH], ids=["hex", "bip", "gap"])
def test_recentering_at_every_vertex(K):
    r = compute_vq(K)
    for w in range(K.vertex_count):
        phi = recenter_flux(K, r.certificate, w)
        props = centered_flux_properties(K, phi, w, r.value)
        assert all(props.values()), (w, props)


def test_wedge_examples():
    assert wedge(3, Chain.simplex((0, 1))) == Chain.simplex((3, 0, 1))
    assert Chain.simplex((3, 0, 1))[(0, 1, 3)] == 1
    assert not wedge(0, Chain.simplex((0, 1)))


def _chains(dim, n=6):
    cells = list(combinations(range(n), dim + 1))
    return st.lists(st.tuples(st.sampled_from(cells), st.integers(-3, 3)), max_size=6).map(
        lambda terms: Chain(dim, terms))


@settings(max_examples=60)
@given(st.integers(1, 3).flatmap(_chains), st.integers(0, 6))
def test_wedge_boundary_identity(c, w):
    # boundary(w * c) = c - w * boundary(c), up to terms through w
    lhs = boundary(wedge(w, c))
    rhs = c - wedge(w, boundary(c))
    drop = Chain(c.dim, [(k, v) for k, v in (lhs - rhs).items() if w in k])
    assert lhs - rhs == drop
    c_off = Chain(c.dim, [(k, v) for k, v in c.items() if w not in k])
    assert boundary(wedge(w, c_off)) == c_off - wedge(w, boundary(c_off))


@settings(max_examples=20, deadline=None)
@given(st.fractions(min_value=0, max_value=1, max_denominator=20))
def test_scaling_preserves_certification(r):
    res = compute_vq(BIPYRAMID)
    rep = verify_certificate(BIPYRAMID, r * res.certificate, r * res.value)
    assert rep.feasible and rep.certifies

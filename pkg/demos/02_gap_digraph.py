"""A balanced digraph whose integral volume exceeds its fractional volume.

The 7-vertex, 15-edge digraph is the smallest gap example known to the
search. The fractional optimum uses half-weights, and the greedy peel gets
stuck because no single triangle lowers the rounded-up fractional volume.
"""
from simplicial_volume import GAP_DIGRAPH, PeelFailure, greedy_peel, integrality_gap
from simplicial_volume.volume import compute_vq

K = GAP_DIGRAPH
print("edges:", " ".join(f"{a}->{b}" for a, b in K.oriented_facets()))

gap, stats = integrality_gap(K)
print(f"V_Q = {stats['vq']}, V_Z = {stats['vz']}, gap = {gap}, ratio = {stats['ratio']}")

q = compute_vq(K)
halves = sorted({abs(c) for _, c in q.witness.items()})
print("coefficients in the fractional optimum:", [str(c) for c in halves])

try:
    greedy_peel(K)
except PeelFailure as exc:
    print(f"greedy peel stalls after {exc.steps} step(s)")

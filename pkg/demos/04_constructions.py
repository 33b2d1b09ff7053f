"""Volumes add under disjoint union and connected sum.

We glue two bipyramids along a facet whose orientations cancel, and put a
hexagon next to the gap digraph. In both cases the direct solve agrees with
the sum of the parts, and the optimal witness never mixes the two halves.
"""
from simplicial_volume import (
    BIPYRAMID, GAP_DIGRAPH, HEXAGON, OrientationClash, compute_vq, compute_vz, connected_sum,
    disjoint_union)
from simplicial_volume.constructions import summand_split_ok

S = connected_sum(BIPYRAMID, (0, 1, 3), BIPYRAMID, (0, 1, 3), {0: 0, 1: 3, 3: 1})
print(f"bipyramid # bipyramid: {S.vertex_count} vertices, {S.facet_count} facets, "
      f"V_Q = {compute_vq(S).value}, V_Z = {compute_vz(S).value}")

try:
    connected_sum(BIPYRAMID, (0, 1, 3), BIPYRAMID, (0, 1, 3), {0: 0, 1: 1, 3: 3})
except OrientationClash as exc:
    print("gluing without reversing the facet is refused:", exc)

U = disjoint_union(HEXAGON, GAP_DIGRAPH)
z = compute_vz(U)
print(f"hexagon + gap digraph: V_Q = {compute_vq(U).value}, V_Z = {z.value}")
first = set(range(HEXAGON.vertex_count))
second = set(range(HEXAGON.vertex_count, U.vertex_count))
print("witness splits into summands:", summand_split_ok(z.witness, first, second))

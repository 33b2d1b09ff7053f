"""Triangulated spheres given as plantri ASCII strings.

Each string lists, per vertex, its neighbours in rotational order. Faces
are traced from the rotation system, which yields an admissible 2-complex.
The 17-vertex pair has a gap of 1/2 and the 20-vertex pair gaps of 1/5 and
1/3. Each solve takes a few seconds.
"""
import time

from simplicial_volume import compute_vq, compute_vz
from simplicial_volume.corpus import PLANTRI_STRINGS
from simplicial_volume.plantri import parse_plantri_ascii, trace_complex

for name, text in PLANTRI_STRINGS.items():
    rs = parse_plantri_ascii(text)
    K, rule = trace_complex(rs)
    t = time.perf_counter()
    q = compute_vq(K)
    z = compute_vz(K)
    print(f"{name}: n={rs.n} edges={rs.edge_count} faces={K.facet_count} ({rule} rule) "
          f"V_Q = {q.value}, V_Z = {z.value}, gap = {z.value - q.value} "
          f"[{time.perf_counter() - t:.1f} s, {z.stats.get('nodes', '?')} B&B nodes]")

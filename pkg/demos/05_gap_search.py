"""Search small balanced digraphs for an integrality gap.

Digraphs are enumerated up to isomorphism, each is solved exactly, and any
with V_Z > V_Q is kept. Nothing on up to five vertices shows a gap. The
second pass seeds the stream with the known 7-vertex example to show a hit.
"""
from simplicial_volume import GAP_DIGRAPH
from simplicial_volume.search import enumerate_balanced_digraphs, find_gaps, simplest

stream = list(enumerate_balanced_digraphs(5, 8, max_multiplicity=1))
print(f"{len(stream)} connected balanced digraphs on <= 5 vertices with <= 8 edges")
print("gaps found:", len(find_gaps(stream)))

gaps = find_gaps(stream + [GAP_DIGRAPH])
best = simplest(gaps)["by_vertices"]
print(f"with the 7-vertex example added: {len(gaps)} gap, V_Q = {best.vq}, V_Z = {best.vz}, "
      f"canonical code {best.code}")

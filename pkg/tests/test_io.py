import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from simplicial_volume.chains import BIPYRAMID, GAP_DIGRAPH, HEXAGON, AdmissibleComplex
from simplicial_volume.corpus import (
    PLANTRI_STRINGS, enumerate_sphere_triangulations, icosahedron, rotation_from_faces,
    small_spheres, spheres_file_text)
from simplicial_volume.errors import (
    AsymmetricAdjacency, BadLabel, NonTriangularFace, NotAdmissible, ParseError,
    WrongGroupCount)
from simplicial_volume.formats import (
    parse_facet_list, read_certificate, read_checkpoint, read_result, write_certificate,
    write_checkpoint, write_facet_list, write_result)
from simplicial_volume.plantri import (
    RotationSystem, faces_from_rotation, parse_plantri_ascii, to_plantri_ascii, trace_complex)
from simplicial_volume.volume import compute_vq, compute_vz

TETRA = "bcd adc abd acb"


def test_facet_list_examples():
    text = "# gap digraph\ndim 1\n" + "\n".join(
        " ".join(map(str, e)) for e in GAP_DIGRAPH.oriented_facets())
    K = parse_facet_list(text)
    assert K.facet_count == 15 and K == GAP_DIGRAPH
    K = parse_facet_list("dim 2\n0 1 3\n0 4 1\n0 3 4\n1 2 3\n2 4 3\n2 1 4\n")
    assert K == BIPYRAMID
    with pytest.raises(NotAdmissible):
        parse_facet_list("dim 1\n0 1\n")


def test_facet_list_multiplicity_and_vertices():
    K = parse_facet_list("dim 1\nvertices 4\n0 1 x 2\n1 0 x 2\n")
    assert K.vertex_count == 4 and K.facet_count == 4


@pytest.mark.parametrize("text, line, column", [
    ("0 1\n", 1, 1),
    ("dim 1\n0 1 2\n", 2, 1),
    ("dim 1\n0 q\n", 2, 3),
    ("dim 1\n0 0\n", 2, 1),
    ("dim 1\n0 1 x 0\n", 2, 7),
    ("dim 1\nvertices 2\n0 5\n", 3, 3),
    ("dim 1\ndim 1\n", 2, 1),
])
def test_facet_list_errors_carry_position(text, line, column):
    with pytest.raises(ParseError) as info:
        parse_facet_list(text, source="f.fl")
    assert (info.value.line, info.value.column) == (line, column)
    assert "f.fl" in str(info.value)


def _random_complex(rng):
    dim = rng.choice([1, 2])
    n = rng.randint(dim + 2, 7)
    facets = []
    for _ in range(rng.randint(1, 4)):
        # boundaries of random (dim+1)-simplices are always admissible
        cell = rng.sample(range(n), dim + 2)
        m = rng.randint(1, 3)
        for i in range(dim + 2):
            face = cell[:i] + cell[i + 1:]
            if i % 2:
                face[0], face[1] = face[1], face[0]
            facets.append((tuple(face), m))
    return AdmissibleComplex(dim, n, facets)


def test_facet_list_round_trip_random():
    rng = random.Random(2024)
    for _ in range(100):
        K = _random_complex(rng)
        text = write_facet_list(K)
        assert parse_facet_list(text) == K
        assert write_facet_list(parse_facet_list(text)) == text


@pytest.mark.parametrize("K, kind, value", [
    (BIPYRAMID, "vz", "2"), (HEXAGON, "vq", "4"), (GAP_DIGRAPH, "vz", "7")])
def test_result_round_trip(K, kind, value):
    r = compute_vz(K) if kind == "vz" else compute_vq(K)
    text = write_result(r)
    back = read_result(text)
    assert back.kind == r.kind and back.value == r.value
    assert back.witness == r.witness and back.certificate == r.certificate
    assert write_result(back) == text
    assert f'"value": "{value}"' in text
    assert "seconds" not in text


def test_bipyramid_result_has_two_terms():
    r = compute_vz(BIPYRAMID)
    assert len(read_result(write_result(r)).witness) == 2


def test_certificate_round_trip():
    r = compute_vq(GAP_DIGRAPH)
    phi, claimed = read_certificate(write_certificate(r.certificate, r.value))
    assert phi == r.certificate and claimed == 6


def test_bad_json_reports_position():
    with pytest.raises(ParseError) as info:
        read_result('{"kind": ', source="r.json")
    assert info.value.line == 1


def test_checkpoint_round_trip(tmp_path):
    from fractions import Fraction
    path = tmp_path / "ck.txt"
    write_checkpoint(path, 12, "3:0.1.0", [("7:0.1", Fraction(6), Fraction(7))])
    assert read_checkpoint(path) == (12, "3:0.1.0", [("7:0.1", 6, 7)])
    path.write_text("nonsense\n")
    with pytest.raises(ParseError):
        read_checkpoint(path)


def test_tetrahedron_by_hand():
    rs = parse_plantri_ascii(TETRA)
    K = faces_from_rotation(rs)
    assert (rs.n, rs.edge_count, K.facet_count) == (4, 6, 4)
    assert to_plantri_ascii(rs) == TETRA


def test_plantri_errors():
    bad = PLANTRI_STRINGS["sphere17a"].replace("q", "z", 1)
    with pytest.raises(BadLabel):
        parse_plantri_ascii(bad)
    with pytest.raises(AsymmetricAdjacency):
        parse_plantri_ascii("bc ac a")
    with pytest.raises(WrongGroupCount):
        parse_plantri_ascii("5 bcd adc abd acb")


def test_quadrilateral_face_rejected():
    # a 4-cycle drawn on the sphere has two square faces
    rs = RotationSystem(4, ((1, 3), (2, 0), (3, 1), (0, 2)))
    with pytest.raises(NonTriangularFace):
        faces_from_rotation(rs)


@pytest.mark.parametrize("name, n", [("sphere17a", 17), ("sphere17b", 17),
                                     ("sphere20a", 20), ("sphere20b", 20)])
def test_plantri_strings_trace_to_spheres(name, n):
    rs = parse_plantri_ascii(PLANTRI_STRINGS[name])
    K, rule = trace_complex(rs)
    assert rs.n == n
    assert rs.edge_count == 3 * n - 6
    assert K.facet_count == 2 * n - 4
    assert rule == "predecessor"


def test_shipped_corpus_is_admissible_and_eulerian():
    spheres = small_spheres()
    assert len(spheres) == 64
    for name, K in spheres:
        n = K.vertex_count
        edges = {frozenset(e) for f in K.facets for e in ((f[0], f[1]), (f[1], f[2]))}
        assert K.facet_count == 2 * n - 4, name
        assert len(edges) == 3 * n - 6, name


def test_sphere_enumeration_counts():
    counts = [len(enumerate_sphere_triangulations(n)) for n in range(4, 9)]
    assert counts == [1, 1, 2, 5, 14]


def test_corpus_file_is_reproducible():
    from importlib import resources
    shipped = resources.files("simplicial_volume").joinpath(
        "data/spheres_maxdeg6.txt").read_text(encoding="utf-8")
    assert spheres_file_text(max_n=8).splitlines()[2:] == [
        line for line in shipped.splitlines()[2:] if int(line[1:3]) <= 8]


def test_icosahedron_degrees():
    K = icosahedron()
    deg = [0] * 12
    for f in K.facets:
        for v in f:
            deg[v] += 1
    assert deg == [5] * 12


@settings(max_examples=30)
@given(st.permutations(range(4)))
def test_rotation_round_trip(perm):
    faces = [(0, 1, 2), (0, 3, 1), (1, 3, 2), (0, 2, 3)]
    faces = [tuple(perm[v] for v in f) for f in faces]
    rs = rotation_from_faces(4, faces)
    K = faces_from_rotation(rs, "predecessor")
    assert K == AdmissibleComplex(2, 4, faces)

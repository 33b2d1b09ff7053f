"""Named instances and small sphere triangulations.

The four plantri strings are the 17- and 20-vertex spheres with integrality
gaps 1/2 (both 17-vertex ones), 1/5 and 1/3.  Small spheres are produced by
exploring the edge-flip graph, which is connected for simplicial
triangulations of the 2-sphere with a fixed number of vertices.
"""
from __future__ import annotations

from collections import deque
from functools import lru_cache
from importlib import resources

from .chains import BIPYRAMID, GAP_DIGRAPH, HEXAGON, AdmissibleComplex
from .plantri import RotationSystem, parse_plantri_ascii, to_plantri_ascii, trace_complex

__all__ = [
    "PLANTRI_STRINGS",
    "plantri_instance",
    "named_complex",
    "NAMED",
    "rotation_from_faces",
    "sphere_code",
    "enumerate_sphere_triangulations",
    "small_spheres",
    "icosahedron",
    "spheres_file_text",
]

PLANTRI_STRINGS = {
    "sphere17a": "bcdefg aghic abid acijke adklf aelg aflmhb bgmnoi bhojdc diopk djpqle "
                 "ekqmgf glqnh hmqpo hnpji jonqk kpnml",
    "sphere17b": "bcdefg aghijc abjkd ackle adlmnf aenog afohb bgopqi bhqlkj bikc cjild "
                 "dkiqme elqpn empof fnphg honmq hpmli",
    "sphere20a": "bcdefg aghic abijd acjke adklmf aemnog afophb bgpqri bhrjc cirkd djrle "
                 "ekrqsm elsnf fmsto fntpg gotqh hptslr hqlkji lqtnm nsqpo",
    "sphere20b": "bcdefg aghc abhijd acje adjklf aelmg afmnhb bgnoic chopj cipked ejpql "
                 "ekqrmf flrsng gmsoh hnstpi iotqkj kptsrl lqsm mrqton osqp",
}


def plantri_instance(name: str) -> AdmissibleComplex:
    return trace_complex(parse_plantri_ascii(PLANTRI_STRINGS[name]))[0]


NAMED = {"hexagon": HEXAGON, "bipyramid": BIPYRAMID, "gap-digraph": GAP_DIGRAPH}


def named_complex(name: str) -> AdmissibleComplex:
    if name in NAMED:
        return NAMED[name]
    if name in PLANTRI_STRINGS:
        return plantri_instance(name)
    if name == "icosahedron":
        return icosahedron()
    raise KeyError(f"unknown instance {name!r}")


def rotation_from_faces(n: int, faces) -> RotationSystem:
    """Rotation system whose predecessor-rule trace returns ``faces``.

    Each oriented face ``(v, a, b)`` puts ``b`` right after ``a`` in the
    rotation at ``v``.
    """
    nxt = [dict() for _ in range(n)]
    for f in faces:
        for i in range(3):
            v, a, b = f[i], f[(i + 1) % 3], f[(i + 2) % 3]
            if a in nxt[v]:
                raise ValueError(f"faces are not consistently oriented at vertex {v}")
            nxt[v][a] = b
    rotations = []
    for v in range(n):
        start = min(nxt[v])
        rot = [start]
        while nxt[v][rot[-1]] != start:
            rot.append(nxt[v][rot[-1]])
        if len(rot) != len(nxt[v]):
            raise ValueError(f"link of vertex {v} is not a single cycle")
        rotations.append(tuple(rot))
    return RotationSystem(n, tuple(rotations))


def _code_from(step, u, v) -> tuple:
    # breadth-first relabelling from the directed edge (u, v)
    label = {u: 0, v: 1}
    ref = {u: v, v: u}
    order = [u, v]
    out = []
    i = 0
    while i < len(order):
        x = order[i]
        i += 1
        start = ref[x]
        y = start
        while True:
            if y not in label:
                label[y] = len(order)
                order.append(y)
                ref[y] = x
            out.append(label[y])
            y = step[x][y]
            if y == start:
                break
        out.append(-1)
    return tuple(out)


def sphere_code(n: int, faces) -> tuple:
    """Isomorphism invariant of a triangulated sphere, mirror images identified."""
    rs = rotation_from_faces(n, faces)
    nxt = [{rot[k]: rot[(k + 1) % len(rot)] for k in range(len(rot))} for rot in rs.rotations]
    prv = [{b: a for a, b in d.items()} for d in nxt]
    best = None
    for u in range(n):
        for v in rs.rotations[u]:
            for step in (nxt, prv):
                code = _code_from(step, u, v)
                if best is None or code < best:
                    best = code
    return best


def _flip_neighbours(faces: frozenset):
    edge_face = {}
    for f in faces:
        for i in range(3):
            edge_face[(f[i], f[(i + 1) % 3])] = f
    edges = {frozenset(e) for e in edge_face}
    for a, b in sorted(tuple(sorted(e)) for e in edges):
        f1, f2 = edge_face[(a, b)], edge_face[(b, a)]
        c = next(x for x in f1 if x not in (a, b))
        d = next(x for x in f2 if x not in (a, b))
        if frozenset((c, d)) in edges:
            continue
        # (a, b, c) + (b, a, d) -> (c, a, d) + (d, b, c)
        new = set(faces) - {f1, f2}
        new |= {_rot_min((c, a, d)), _rot_min((d, b, c))}
        yield frozenset(new)


def _rot_min(f):
    k = f.index(min(f))
    return f[k:] + f[:k]


def _stacked_sphere(n: int) -> frozenset:
    """Boundary of a tetrahedron with n - 4 vertices stacked into face (0, 1, 2)."""
    faces = {(0, 1, 2), (0, 3, 1), (1, 3, 2), (0, 2, 3)}
    outer = (0, 1, 2)
    for v in range(4, n):
        a, b, c = outer
        faces.remove(outer)
        faces |= {(a, b, v), (b, c, v), (c, a, v)}
        outer = (a, b, v)
    return frozenset(_rot_min(f) for f in faces)


def enumerate_sphere_triangulations(n: int, max_degree: int | None = None) -> list:
    """All simplicial triangulations of the 2-sphere on n vertices, up to isomorphism.

    Returns sorted lists of oriented faces; mirror images count once.  With
    ``max_degree`` only triangulations whose vertex degrees stay within it are
    returned (the search itself always walks the full flip graph).
    """
    if n < 4:
        raise ValueError("a simplicial sphere needs at least 4 vertices")
    start = _stacked_sphere(n)
    seen = {sphere_code(n, start): start}
    queue = deque([start])
    while queue:
        faces = queue.popleft()
        for nb in _flip_neighbours(faces):
            code = sphere_code(n, nb)
            if code not in seen:
                seen[code] = nb
                queue.append(nb)
    out = []
    for code in sorted(seen):
        faces = sorted(seen[code])
        if max_degree is not None:
            deg = [0] * n
            for f in faces:
                for v in f:
                    deg[v] += 1
            if max(deg) > max_degree:
                continue
        out.append(faces)
    return out


@lru_cache(maxsize=None)
def small_spheres() -> tuple:
    """Shipped corpus: every sphere with 4 to 10 vertices and all degrees at most 6.

    Returns ``(name, AdmissibleComplex)`` pairs read from the packaged plantri file.
    """
    text = resources.files("simplicial_volume").joinpath("data/spheres_maxdeg6.txt").read_text(
        encoding="utf-8")
    out = []
    for line in text.splitlines():
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        name, rot = line.split(None, 1)
        out.append((name, trace_complex(parse_plantri_ascii(rot))[0]))
    return tuple(out)


def icosahedron() -> AdmissibleComplex:
    top, bottom = 0, 11
    up = [1, 2, 3, 4, 5]
    down = [6, 7, 8, 9, 10]
    faces = []
    for i in range(5):
        a, b = up[i], up[(i + 1) % 5]
        c, e = down[i], down[(i + 1) % 5]
        faces += [(top, a, b), (a, c, b), (b, c, e), (bottom, e, c)]
    return trace_complex(rotation_from_faces(12, faces))[0]


def spheres_file_text(max_n: int = 10, max_degree: int = 6) -> str:
    """Regenerate the packaged corpus file."""
    lines = [f"# simplicial 2-spheres with 4..{max_n} vertices and max degree {max_degree}",
             "# name  plantri-ascii rotation system"]
    for n in range(4, max_n + 1):
        for k, faces in enumerate(enumerate_sphere_triangulations(n, max_degree)):
            lines.append(f"n{n:02d}_{k:03d} " + to_plantri_ascii(rotation_from_faces(n, faces)))
    return "\n".join(lines) + "\n"

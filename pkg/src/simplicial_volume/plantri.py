"""plantri ASCII rotation systems and face tracing."""
from __future__ import annotations

import logging
from dataclasses import dataclass

from .chains import AdmissibleComplex, check_admissible
from .errors import (
    AsymmetricAdjacency, BadLabel, NonTriangularFace, TraceInconsistent, WrongGroupCount)

log = logging.getLogger(__name__)

__all__ = ["RotationSystem", "parse_plantri_ascii", "faces_from_rotation", "trace_faces",
           "to_plantri_ascii", "trace_complex"]


@dataclass(frozen=True)
class RotationSystem:
    """Cyclic neighbour orders, one per vertex (counterclockwise seen from outside)."""
    n: int
    rotations: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if len(self.rotations) != self.n:
            raise WrongGroupCount(f"expected {self.n} rotations, got {len(self.rotations)}")
        nbrs = []
        for v, rot in enumerate(self.rotations):
            for u in rot:
                if not 0 <= u < self.n:
                    raise BadLabel(f"vertex {v} lists neighbour {u} outside 0..{self.n - 1}")
                if u == v:
                    raise BadLabel(f"vertex {v} lists itself as a neighbour")
            if len(set(rot)) != len(rot):
                raise AsymmetricAdjacency(f"vertex {v} lists a neighbour twice")
            nbrs.append(set(rot))
        for v in range(self.n):
            for u in nbrs[v]:
                if v not in nbrs[u]:
                    raise AsymmetricAdjacency(
                        f"{_label(u)} is a neighbour of {_label(v)} but not conversely")

    @property
    def edge_count(self) -> int:
        return sum(len(r) for r in self.rotations) // 2

    def degree(self, v: int) -> int:
        return len(self.rotations[v])


def _label(v: int) -> str:
    return chr(ord("a") + v) if 0 <= v < 26 else str(v)


def parse_plantri_ascii(text: str, n: int | None = None, source=None) -> RotationSystem:
    """Parse whitespace-separated letter groups; group i lists vertex i's neighbours.

    A leading ``"<n> "`` count, as written by ``plantri -a``, is accepted.  When
    ``n`` is given the group count must match it.
    """
    groups = text.split()
    if groups and groups[0].isdigit():
        declared = int(groups.pop(0))
        if n is not None and declared != n:
            raise WrongGroupCount(f"header says {declared} vertices, expected {n}",
                                  source=source)
        n = declared
    if n is None:
        n = len(groups)
    if len(groups) != n:
        raise WrongGroupCount(f"expected {n} letter groups, found {len(groups)}", source=source)
    if n > 26:
        raise WrongGroupCount("letter labels only cover 26 vertices; use the facet-list format",
                              source=source)
    rotations = []
    column = 1
    offset = 0
    for i, group in enumerate(groups):
        offset = text.index(group, offset)
        rot = []
        for j, ch in enumerate(group):
            v = ord(ch) - ord("a")
            if not ("a" <= ch <= "z") or v >= n:
                column = offset + j + 1
                raise BadLabel(f"label {ch!r} in group {i + 1} is outside 'a'..{_label(n - 1)!r}",
                               line=1, column=column, source=source)
            rot.append(v)
        offset += len(group)
        rotations.append(tuple(rot))
    return RotationSystem(n, tuple(rotations))


def to_plantri_ascii(rs: RotationSystem) -> str:
    return " ".join("".join(_label(u) for u in rot) for rot in rs.rotations)


def trace_faces(rs: RotationSystem, rule: str = "predecessor") -> list[tuple[int, ...]]:
    """Trace the faces of a rotation system as oriented vertex cycles.

    With ``rule="predecessor"`` the directed edge following ``(u, v)`` is
    ``(v, w)`` where ``w`` immediately precedes ``u`` in the rotation at ``v``;
    ``rule="successor"`` uses the vertex immediately after ``u`` instead.
    """
    step = -1 if rule == "predecessor" else 1
    if rule not in ("predecessor", "successor"):
        raise ValueError(f"unknown trace rule {rule!r}")
    pos = [{u: i for i, u in enumerate(rot)} for rot in rs.rotations]
    seen = set()
    faces = []
    for u in range(rs.n):
        for v in rs.rotations[u]:
            if (u, v) in seen:
                continue
            face = []
            a, b = u, v
            while (a, b) not in seen:
                seen.add((a, b))
                face.append(a)
                rot = rs.rotations[b]
                w = rot[(pos[b][a] + step) % len(rot)]
                a, b = b, w
            if (a, b) != (u, v):
                raise TraceInconsistent(f"face walk from {(u, v)} closed at {(a, b)}")
            faces.append(tuple(face))
    if len(seen) != 2 * rs.edge_count:
        raise TraceInconsistent("not every directed edge lies on a traced face")
    return faces


def faces_from_rotation(rs: RotationSystem, rule: str | None = None) -> AdmissibleComplex:
    """Oriented triangle complex of a planar triangulation.

    The predecessor rule is tried first; if the traced facets are not
    admissible the successor rule is tried (see :func:`trace_complex`).
    """
    return trace_complex(rs, rule)[0]


def trace_complex(rs: RotationSystem, rule: str | None = None) -> tuple[AdmissibleComplex, str]:
    """Like :func:`faces_from_rotation` but also return the trace rule used."""
    rules = [rule] if rule else ["predecessor", "successor"]
    last = None
    for r in rules:
        faces = trace_faces(rs, r)
        for f in faces:
            if len(f) != 3:
                raise NonTriangularFace(f"face {tuple(_label(v) for v in f)} has {len(f)} sides")
        K = AdmissibleComplex.from_facets(faces, vertex_count=rs.n, dim=2, check=False)
        report = check_admissible(K)
        if report.ok:
            return K, r
        log.info("trace rule %s gave a non-admissible complex; retrying", r)
        last = report
    raise TraceInconsistent(
        f"no trace rule yields an admissible complex ({len(last.offending)} open edges)")

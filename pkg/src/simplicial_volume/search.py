"""Bounded exhaustive search for integrality gaps among balanced digraphs.

A balanced multidigraph (in-degree equal to out-degree everywhere) is the
same thing as an admissible 1-complex.  Graphs are generated by
backtracking over vertex pairs and deduplicated through a canonical form
computed by colour refinement with individualisation.
"""
from __future__ import annotations

import logging
import time
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from .chains import AdmissibleComplex
from .errors import BoundsTooLarge, BudgetExhausted
from .formats import read_checkpoint, write_checkpoint
from .volume import compute_vz

log = logging.getLogger(__name__)

__all__ = [
    "GapRecord",
    "adjacency",
    "canonical_form",
    "encode_form",
    "complex_from_form",
    "enumerate_balanced_digraphs",
    "find_gaps",
    "simplest",
]

MAX_VERTICES = 8
MAX_EDGES = 24


@dataclass(frozen=True)
class GapRecord:
    complex: AdmissibleComplex
    vq: Fraction
    vz: int
    code: str

    @property
    def gap(self) -> Fraction:
        return self.vz - self.vq


def adjacency(K: AdmissibleComplex) -> list[list[int]]:
    """Multiplicity matrix ``M[u][v]`` = number of edges u -> v."""
    if K.dim != 1:
        raise ValueError("adjacency is defined for 1-complexes only")
    n = K.vertex_count
    M = [[0] * n for _ in range(n)]
    for (u, v), m in K.facets.items():
        M[u][v] += m
    return M


def _refine(M, colors):
    n = len(M)
    while True:
        sigs = [(colors[u],
                 tuple(sorted((colors[v], M[u][v], M[v][u]) for v in range(n)
                              if v != u and (M[u][v] or M[v][u]))))
                for u in range(n)]
        ranks = {s: i for i, s in enumerate(sorted(set(sigs)))}
        new = [ranks[s] for s in sigs]
        if len(set(new)) == len(set(colors)):
            return new
        colors = new


def _leaves(M, colors):
    colors = _refine(M, colors)
    n = len(M)
    if len(set(colors)) == n:
        yield colors
        return
    cells: dict[int, list[int]] = {}
    for v, c in enumerate(colors):
        cells.setdefault(c, []).append(v)
    target = min(c for c, vs in cells.items() if len(vs) > 1)
    for v in cells[target]:
        # split v off ahead of the rest of its cell
        split = [2 * c + (0 if u == v or c != target else 1) for u, c in enumerate(colors)]
        yield from _leaves(M, split)


def canonical_form(M) -> tuple:
    """Minimum multiplicity-matrix encoding over the refinement search tree.

    Two balanced digraphs receive the same form exactly when some vertex
    relabelling carries one onto the other.
    """
    n = len(M)
    best = None
    for colors in _leaves(M, [0] * n):
        order = sorted(range(n), key=colors.__getitem__)
        code = tuple(M[a][b] for a in order for b in order)
        if best is None or code < best:
            best = code
    return (n,) + best


def encode_form(form: tuple) -> str:
    """Compact text for checkpoints: ``n:m00.m01...``."""
    return f"{form[0]}:" + ".".join(map(str, form[1:]))


def complex_from_form(form: tuple) -> AdmissibleComplex:
    n = form[0]
    facets = []
    for k, m in enumerate(form[1:]):
        if m:
            facets.append(((k // n, k % n), m))
    return AdmissibleComplex(1, n, facets)


def _connected(M) -> bool:
    n = len(M)
    seen = {0}
    stack = [0]
    while stack:
        u = stack.pop()
        for v in range(n):
            if v not in seen and (M[u][v] or M[v][u]):
                seen.add(v)
                stack.append(v)
    return len(seen) == n


def _graphs_on(n, max_edges, min_edges, max_mult, antiparallel):
    """Raw balanced digraphs on exactly n vertices, degree-sorted, no isolated vertex."""
    pairs = list(combinations(range(n), 2))
    last_pair = {}
    for idx, (u, v) in enumerate(pairs):
        last_pair[u] = idx
        last_pair[v] = idx
    choices = []
    for a in range(max_mult + 1):
        for b in range(max_mult + 1):
            if a and b and not antiparallel:
                continue
            choices.append((a, b))
    choices.sort(key=lambda ab: (ab[0] + ab[1], ab))
    M = [[0] * n for _ in range(n)]
    out_deg = [0] * n
    in_deg = [0] * n

    def deg(v):
        return out_deg[v] + in_deg[v]

    def rec(idx, edges):
        if idx == len(pairs):
            if edges >= min_edges:
                yield [row[:] for row in M]
            return
        u, v = pairs[idx]
        for a, b in choices:
            if edges + a + b > max_edges:
                break
            M[u][v], M[v][u] = a, b
            out_deg[u] += a
            in_deg[v] += a
            out_deg[v] += b
            in_deg[u] += b
            ok = True
            for w in (u, v):
                if last_pair[w] == idx:
                    # w is complete: balanced, not isolated, degrees non-increasing
                    if out_deg[w] != in_deg[w] or deg(w) == 0:
                        ok = False
                    elif w > 0 and deg(w) > deg(w - 1):
                        ok = False
            # a vertex can never outgrow the vertex before it
            if ok and u > 0 and deg(u) > deg(u - 1):
                ok = False
            if ok and v > 0 and last_pair.get(v - 1, -1) <= idx and deg(v) > deg(v - 1):
                ok = False
            if ok:
                yield from rec(idx + 1, edges + a + b)
            out_deg[u] -= a
            in_deg[v] -= a
            out_deg[v] -= b
            in_deg[u] -= b
        M[u][v] = M[v][u] = 0

    yield from rec(0, 0)


def enumerate_balanced_digraphs(max_vertices: int, max_total_edges: int, *,
                                min_vertices: int = 2, min_total_edges: int = 0,
                                max_multiplicity: int | None = None,
                                allow_antiparallel: bool = True,
                                connected: bool = True):
    """Yield each balanced multidigraph once up to relabelling, as a 1-complex.

    Parameters
    ----------
    max_vertices : int
        At most 8; every vertex carries at least one edge.
    max_total_edges : int
        Bound on the number of edges counted with multiplicity (at most 24).
    min_total_edges : int
        Lower bound on the edge count; setting it equal to ``max_total_edges``
        enumerates an exact edge count.
    max_multiplicity : int, optional
        Cap on parallel edges per direction; defaults to ``max_total_edges``.
    allow_antiparallel : bool
        Whether u -> v and v -> u may both occur.
    connected : bool
        Keep only graphs whose underlying undirected graph is connected.

    Output is ordered by vertex count, then by canonical form.
    """
    if max_vertices > MAX_VERTICES:
        raise BoundsTooLarge(f"max_vertices={max_vertices} exceeds the limit {MAX_VERTICES}")
    if max_total_edges > MAX_EDGES:
        raise BoundsTooLarge(f"max_total_edges={max_total_edges} exceeds the limit {MAX_EDGES}")
    if max_vertices < 0 or max_total_edges < 0:
        raise ValueError("bounds must be non-negative")
    mult = max_total_edges if max_multiplicity is None else max_multiplicity
    for n in range(max(min_vertices, 2), max_vertices + 1):
        forms = set()
        for M in _graphs_on(n, max_total_edges, min_total_edges, mult, allow_antiparallel):
            if connected and not _connected(M):
                continue
            forms.add(canonical_form(M))
        for form in sorted(forms):
            yield complex_from_form(form)


def _evaluate(K):
    res = compute_vz(K)
    return res.stats["vq"], int(res.value)


def find_gaps(stream, budget: int | None = None, checkpoint=None, *,
              time_budget: float | None = None, jobs: int = 1) -> list[GapRecord]:
    """Exact V_Q and V_Z for each complex of ``stream``; keep those with a gap.

    Parameters
    ----------
    stream : iterable of AdmissibleComplex
        Must be deterministic when resuming from a checkpoint.
    budget : int, optional
        Maximum number of complexes to evaluate in this call.
    checkpoint : path, optional
        Resume file.  Already-processed complexes are skipped and the file is
        rewritten after every evaluation.
    time_budget : float, optional
        Wall-clock seconds for this call.
    jobs : int
        Worker processes for the volume computations; results are merged in
        stream order.

    Raises
    ------
    BudgetExhausted
        When either budget runs out first; ``partial`` holds the gaps found so
        far (including those restored from the checkpoint).
    """
    from pathlib import Path

    skip, last, restored = 0, None, []
    if checkpoint is not None and Path(checkpoint).exists():
        skip, last, restored = read_checkpoint(checkpoint)
    gaps = [GapRecord(complex_from_form(_decode(code)), vq, int(vz), code)
            for code, vq, vz in restored]
    deadline = None if time_budget is None else time.monotonic() + time_budget
    processed = skip
    done_here = 0

    def save():
        if checkpoint is not None:
            write_checkpoint(checkpoint, processed, last,
                             [(g.code, g.vq, g.vz) for g in gaps])

    def record(K, code, vq, vz):
        nonlocal processed, last
        processed += 1
        last = code
        if vz > vq:
            log.info("gap %s: V_Q=%s V_Z=%s", code, vq, vz)
            gaps.append(GapRecord(K, vq, vz, code))
        save()

    it = iter(stream)
    for position in range(skip):
        try:
            K = next(it)
        except StopIteration:
            break
        if position == skip - 1 and last is not None:
            if _code_of(K) != last:
                raise ValueError("checkpoint does not match this stream")

    def exhausted():
        if budget is not None and done_here >= budget:
            return True
        return deadline is not None and time.monotonic() > deadline

    if jobs > 1:
        from concurrent.futures import ProcessPoolExecutor
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            while True:
                batch = []
                for K in it:
                    batch.append(K)
                    if len(batch) >= jobs * 4:
                        break
                if budget is not None:
                    batch = batch[:max(budget - done_here, 0)]
                if not batch:
                    break
                for K, (vq, vz) in zip(batch, pool.map(_evaluate, batch)):
                    record(K, _code_of(K), vq, vz)
                    done_here += 1
                if exhausted():
                    if next(it, None) is not None:
                        save()
                        raise BudgetExhausted(f"stopped after {processed} complexes",
                                              partial=gaps, processed=processed)
                    break
        return gaps

    for K in it:
        if exhausted():
            save()
            raise BudgetExhausted(f"stopped after {processed} complexes",
                                  partial=gaps, processed=processed)
        vq, vz = _evaluate(K)
        record(K, _code_of(K), vq, vz)
        done_here += 1
    return gaps


def _code_of(K) -> str:
    return encode_form(canonical_form(adjacency(K)))


def _decode(code: str) -> tuple:
    n, body = code.split(":", 1)
    return (int(n),) + tuple(int(x) for x in body.split("."))


def simplest(gaps) -> dict:
    """Smallest gap examples by (vertices, edges) and by (edges, vertices)."""
    if not gaps:
        return {"by_vertices": None, "by_edges": None}

    def size(g):
        return g.complex.vertex_count, g.complex.facet_count

    return {
        "by_vertices": min(gaps, key=lambda g: (size(g), g.code)),
        "by_edges": min(gaps, key=lambda g: (size(g)[::-1], g.code)),
    }

"""Fractional and integral simplicial volume of admissible complexes.

For a complex K on n vertices the programs have one column per oriented
(d+1)-simplex on those vertices (two per vertex set) and one equality row per
d-simplex, asking that the chosen simplices have boundary exactly K.  The
fractional optimum is V_Q; the integer optimum is V_Z.
"""
from __future__ import annotations

import logging
import math
import time
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations

from .chains import AdmissibleComplex, Chain, boundary, check_admissible, one_norm
from .errors import DimensionMismatch, NotAdmissible, PeelFailure, TimeLimitReached
from .flux import FluxFunction
from .ilp import solve_ilp
from .lp import LinearProgram, LPStatus, solve_lp

log = logging.getLogger(__name__)

__all__ = [
    "ProgramIndex",
    "VolumeResult",
    "build_program",
    "compute_vq",
    "compute_vz",
    "cone_decomposition",
    "greedy_peel",
    "integrality_gap",
    "chain_to_primal",
    "primal_to_chain",
    "flux_from_dual",
]


@dataclass(frozen=True, eq=False)
class ProgramIndex:
    """Bijections between program indices and simplices.

    Column ``2k`` is the positively oriented ``columns[k]`` (sorted tuple),
    column ``2k + 1`` its reversal.  Row ``i`` is the sorted d-simplex ``rows[i]``.
    """
    dim: int
    vertex_count: int
    simplices: tuple
    rows: tuple
    column_of: dict = field(repr=False)
    row_of: dict = field(repr=False)

    @property
    def num_columns(self) -> int:
        return 2 * len(self.simplices)

    def column(self, j: int) -> tuple[tuple[int, ...], int]:
        """``(sorted (d+1)-simplex, orientation sign)`` of column ``j``."""
        return self.simplices[j // 2], (1 if j % 2 == 0 else -1)

    def column_index(self, key, sign: int) -> int:
        return self.column_of[(key, sign)]


@dataclass(frozen=True, eq=False)
class VolumeResult:
    kind: str  # "Fractional" or "Integral"
    value: Fraction
    witness: Chain
    certificate: FluxFunction | None
    stats: dict = field(default_factory=dict)

    @property
    def is_integral(self) -> bool:
        return self.kind == "Integral"


def _target(K) -> tuple[Chain, int]:
    if isinstance(K, AdmissibleComplex):
        return K.chain, K.vertex_count
    if isinstance(K, tuple) and len(K) == 2 and isinstance(K[0], Chain):
        return K
    raise TypeError("expected an AdmissibleComplex or a (Chain, vertex_count) pair")


def build_program(K, vertex_count: int | None = None) -> tuple[LinearProgram, ProgramIndex]:
    """Assemble ``min sum x`` subject to ``boundary(chain(x)) = K``.

    ``K`` is an :class:`AdmissibleComplex` or any integer-coefficient cycle given
    as a :class:`Chain` (then ``vertex_count`` is required).  Raises
    :class:`NotAdmissible` when the target has nonzero boundary.
    """
    if isinstance(K, Chain):
        if vertex_count is None:
            raise ValueError("vertex_count is required for a bare chain target")
        chain, n = K, vertex_count
    else:
        chain, n = _target(K)
    d = chain.dim
    if d < 1:
        raise DimensionMismatch("targets must have dimension >= 1")
    report = check_admissible(chain)
    if not report.ok:
        raise NotAdmissible("target chain is not a cycle", report.offending)
    if any(v >= n for v in chain.vertices()):
        raise ValueError("target uses a vertex outside range(vertex_count)")
    row_keys = tuple(combinations(range(n), d + 1))
    row_of = {key: i for i, key in enumerate(row_keys)}
    simplices = tuple(combinations(range(n), d + 2))
    rows: list[dict[int, int]] = [{} for _ in row_keys]
    column_of = {}
    for k, key in enumerate(simplices):
        column_of[(key, 1)] = 2 * k
        column_of[(key, -1)] = 2 * k + 1
        for i in range(d + 2):
            r = row_of[key[:i] + key[i + 1:]]
            s = 1 if i % 2 == 0 else -1
            rows[r][2 * k] = s
            rows[r][2 * k + 1] = -s
    rhs = [0] * len(row_keys)
    for key, coeff in chain.items():
        rhs[row_of[key]] = coeff
    ncols = 2 * len(simplices)
    prog = LinearProgram(ncols, tuple(rows), tuple(rhs), (1,) * ncols)
    index = ProgramIndex(d, n, simplices, row_keys, column_of, row_of)
    return prog, index


def primal_to_chain(index: ProgramIndex, x) -> Chain:
    terms = []
    for j, v in enumerate(x):
        if v:
            key, sign = index.column(j)
            terms.append((key, sign * Fraction(v)))
    return Chain(index.dim + 1, terms)


def chain_to_primal(index: ProgramIndex, alpha: Chain) -> list[Fraction]:
    x = [Fraction(0)] * index.num_columns
    for key, c in alpha.items():
        if c > 0:
            x[index.column_index(key, 1)] += c
        else:
            x[index.column_index(key, -1)] -= c
    return x


def flux_from_dual(index: ProgramIndex, y) -> FluxFunction:
    return FluxFunction(index.dim, {index.rows[i]: v for i, v in enumerate(y) if v})


def _solve_relaxation(K, warm_start=True, deadline=None):
    prog, index = build_program(K) if not isinstance(K, tuple) else build_program(*K)
    sol = solve_lp(prog, warm_start=warm_start, deadline=deadline)
    if sol.status is not LPStatus.OPTIMAL:
        # cycles are always fillable by cones, so this signals a bug
        raise RuntimeError(f"volume relaxation returned {sol.status.value}")
    return prog, index, sol


def compute_vq(K, *, warm_start: bool = True, deadline: float | None = None) -> VolumeResult:
    """Exact fractional volume with a fractional witness and a flux certificate.

    ``K`` may also be a ``(Chain, vertex_count)`` pair for an arbitrary
    integer cycle.
    """
    t0 = time.monotonic()
    prog, index, sol = _solve_relaxation(K, warm_start, deadline)
    witness = primal_to_chain(index, sol.primal)
    cert = flux_from_dual(index, sol.dual)
    stats = {
        "columns": prog.num_vars,
        "rows": prog.num_rows,
        "lp": dict(sol.stats),
        "seconds": round(time.monotonic() - t0, 6),
    }
    return VolumeResult("Fractional", sol.value, witness, cert, stats)


def cone_decomposition(K: AdmissibleComplex, w: int) -> Chain:
    """Integral decomposition by coning every facet that avoids ``w`` to ``w``."""
    if not 0 <= w < K.vertex_count:
        raise ValueError(f"vertex {w} outside 0..{K.vertex_count - 1}")
    terms = [((w,) + key, m) for key, m in K.facets.items() if w not in key]
    return Chain(K.dim + 1, terms)


def _best_cone(K: AdmissibleComplex) -> Chain:
    best = None
    for w in range(K.vertex_count):
        c = cone_decomposition(K, w)
        if best is None or one_norm(c) < one_norm(best):
            best = c
    return best


def compute_vz(K: AdmissibleComplex, *, warm_start: bool = True,
               deadline: float | None = None) -> VolumeResult:
    """Exact integral volume with an integral witness.

    The best cone decomposition seeds branch-and-bound as the incumbent; the
    certificate attached is the flux from the root relaxation.
    """
    t0 = time.monotonic()
    cone = _best_cone(K)
    try:
        prog, index, root = _solve_relaxation(K, warm_start, deadline)
    except TimeLimitReached as exc:
        # the cone decomposition is still a verified upper bound
        raise TimeLimitReached(str(exc), lower_bound=None, upper_bound=int(one_norm(cone)),
                               stats=exc.stats) from None
    incumbent = chain_to_primal(index, cone)
    res = solve_ilp(prog, incumbent, root=root, warm_start=warm_start, deadline=deadline)
    witness = primal_to_chain(index, res.witness)
    stats = {
        "columns": prog.num_vars,
        "rows": prog.num_rows,
        "vq": root.value,
        "cone_bound": sum(incumbent),
        "nodes": res.nodes_explored,
        "bnb": dict(res.stats),
        "seconds": round(time.monotonic() - t0, 6),
    }
    return VolumeResult("Integral", Fraction(res.value), witness,
                        flux_from_dual(index, root.dual), stats)


def integrality_gap(K: AdmissibleComplex, *, warm_start: bool = True,
                    deadline: float | None = None) -> tuple[Fraction, dict]:
    """Return ``V_Z - V_Q`` and a stats dict holding both values and their ratio."""
    vz = compute_vz(K, warm_start=warm_start, deadline=deadline)
    vq = vz.stats["vq"]
    gap = vz.value - vq
    ratio = vz.value / vq if vq else None
    log.info("V_Z=%s V_Q=%s gap=%s ratio=%s", vz.value, vq, gap, ratio)
    return gap, {"vz": vz.value, "vq": vq, "gap": gap, "ratio": ratio, "vz_result": vz}


def _ceil_vq(chain: Chain, n: int, cache: dict, warm_start: bool, deadline) -> int:
    if chain not in cache:
        if not chain:
            cache[chain] = 0
        else:
            cache[chain] = math.ceil(compute_vq((chain, n), warm_start=warm_start,
                                                deadline=deadline).value)
    return cache[chain]


def _peel_candidates(n: int, d: int):
    for key in combinations(range(n), d + 2):
        yield key
        yield (key[1], key[0]) + key[2:]


def greedy_peel(K: AdmissibleComplex, *, backtrack: bool = False, warm_start: bool = True,
                deadline: float | None = None) -> list[tuple[int, ...]]:
    """Build an integral decomposition one simplex at a time.

    At each step the first candidate simplex tau (sorted vertex sets in
    lexicographic order, positive orientation before negative) for which
    ``ceil(V_Q(K - d tau)) + 1 == ceil(V_Q(K))`` is taken.  Succeeds with a
    list of ``ceil(V_Q(K))`` oriented simplices exactly when such a chain of
    choices reaches the zero chain; otherwise raises :class:`PeelFailure` with
    the residual cycle.  With ``backtrack`` the previous choice may be revised
    once per step.
    """
    n, d = K.vertex_count, K.dim
    cache: dict = {}
    start = K.chain

    def qualifying(current, skip_until=None):
        level = _ceil_vq(current, n, cache, warm_start, deadline)
        skipping = skip_until is not None
        for tau in _peel_candidates(n, d):
            if skipping:
                if tau == skip_until:
                    skipping = False
                continue
            residual = current - boundary(Chain.simplex(tau))
            if _ceil_vq(residual, n, cache, warm_start, deadline) + 1 == level:
                return tau, residual
        return None

    chosen: list[tuple[int, ...]] = []
    states = [start]
    revised_at: set[int] = set()
    while states[-1]:
        found = qualifying(states[-1])
        if found is None and backtrack and chosen and len(chosen) not in revised_at:
            revised_at.add(len(chosen))
            prev_tau = chosen.pop()
            states.pop()
            alt = qualifying(states[-1], skip_until=prev_tau)
            if alt is not None:
                chosen.append(alt[0])
                states.append(alt[1])
                continue
            chosen.append(prev_tau)
            states.append(states[-1] - boundary(Chain.simplex(prev_tau)))
        if found is None:
            raise PeelFailure(
                f"no simplex lowers ceil(V_Q) by one after {len(chosen)} steps "
                f"(ceil(V_Q) of residual = {_ceil_vq(states[-1], n, cache, warm_start, deadline)})",
                residual=states[-1], steps=len(chosen), partial=chosen)
        chosen.append(found[0])
        states.append(found[1])
    return chosen

"""Exact branch-and-bound for integer programs with integer objective.

Every node relaxation is solved by :func:`simplicial_volume.lp.solve_lp`, so
bounds are exact rationals.  Because the objective takes integer values on
integer points, a node can be discarded as soon as the ceiling of its LP
value reaches the incumbent.
"""
from __future__ import annotations

import logging
import math
import time
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import Infeasible, NoFractionalVariable, TimeLimitReached
from .lp import LinearProgram, LPSolution, LPStatus, solve_lp

log = logging.getLogger(__name__)

__all__ = ["BnbNode", "IlpResult", "solve_ilp", "branch_select"]

HALF = Fraction(1, 2)


@dataclass(frozen=True)
class BnbNode:
    """A subproblem: extra ``(var, "lo"|"hi", value)`` bounds on top of the root."""
    extra_bounds: tuple = ()
    parent_value: Fraction | None = None
    depth: int = 0

    def bounds(self) -> dict[int, list]:
        out: dict[int, list] = {}
        for j, kind, v in self.extra_bounds:
            lo, hi = out.get(j, [0, None])
            if kind == "lo":
                lo = max(lo, v)
            else:
                hi = v if hi is None else min(hi, v)
            out[j] = [lo, hi]
        return out


@dataclass(frozen=True)
class IlpResult:
    value: int
    witness: tuple
    nodes_explored: int
    proof_bound: Fraction
    exhausted: bool = True
    stats: dict = field(default_factory=dict)


def branch_select(x) -> int:
    """Index of the coordinate whose fractional part is closest to 1/2.

    Ties go to the lowest index.  Raises :class:`NoFractionalVariable` if
    every coordinate is an integer.
    """
    best, best_dist = None, None
    for j, v in enumerate(x):
        v = Fraction(v)
        frac = v - math.floor(v)
        if frac == 0:
            continue
        dist = abs(frac - HALF)
        if best is None or dist < best_dist:
            best, best_dist = j, dist
    if best is None:
        raise NoFractionalVariable("all coordinates are integral")
    return best


def _is_feasible_integral(p: LinearProgram, x) -> bool:
    if len(x) != p.num_vars:
        return False
    if any(Fraction(v).denominator != 1 or v < 0 for v in x):
        return False
    return all(r == 0 for r in p.residual(x))


def _node_program(p: LinearProgram, bounds: dict[int, list]):
    """Restrict ``p`` to the box given by ``bounds``.

    Columns fixed at zero are dropped, lower bounds are substituted out, and
    finite upper bounds become ``x_j + s_j = hi - lo`` rows.  Returns the
    program, the kept column list and the lower-bound shift.
    """
    n = p.num_vars
    lo = [0] * n
    drop = set()
    uppers = []
    for j, (l, h) in bounds.items():
        if h is not None and h < l:
            return None
        lo[j] = l
        if h is not None:
            if h == l:
                drop.add(j)
            else:
                uppers.append((j, h - l))
    keep = [j for j in range(n) if j not in drop]
    newidx = {j: k for k, j in enumerate(keep)}
    rhs = list(p.rhs)
    rows = []
    for i, r in enumerate(p.rows):
        shift = sum((v * lo[j] for j, v in r.items() if lo[j]), Fraction(0))
        rhs[i] -= shift
        rows.append({newidx[j]: v for j, v in r.items() if j in newidx})
    obj = [p.objective[j] for j in keep]
    nk = len(keep)
    for s, (j, cap) in enumerate(uppers):
        rows.append({newidx[j]: 1, nk + s: 1})
        rhs.append(cap)
        obj.append(0)
    offset = sum((p.objective[j] * lo[j] for j in range(n)), Fraction(0))
    prog = LinearProgram(nk + len(uppers), tuple(rows), tuple(rhs), tuple(obj))
    return prog, keep, lo, offset


def _solve_node(p, node: BnbNode, warm_start, deadline):
    built = _node_program(p, node.bounds())
    if built is None:
        return None, None
    prog, keep, lo, offset = built
    sol = solve_lp(prog, warm_start=warm_start, deadline=deadline)
    if sol.status is LPStatus.INFEASIBLE:
        return None, sol
    if sol.status is LPStatus.UNBOUNDED:
        raise ValueError("integer program relaxation is unbounded")
    x = [Fraction(v) for v in lo]
    for k, j in enumerate(keep):
        x[j] += sol.primal[k]
    return (sol.value + offset, x), sol


def solve_ilp(p: LinearProgram, initial_incumbent=None, *, root: LPSolution | None = None,
              warm_start: bool = True, deadline: float | None = None) -> IlpResult:
    """Minimize an integer objective over ``{x integer >= 0 : A x = b}``.

    Parameters
    ----------
    p : LinearProgram
        Objective coefficients must be integers (the volume programs use all ones).
    initial_incumbent : sequence of int, optional
        A known feasible integer point; checked before use.
    root : LPSolution, optional
        Already-computed exact optimum of the root relaxation.
    deadline : float, optional
        ``time.monotonic()`` deadline; on expiry :class:`TimeLimitReached`
        carries the best proven lower bound and the incumbent value.

    Search is depth-first with the down branch (``x_j <= floor``) first and
    branching on :func:`branch_select`.  Termination needs a bounded feasible
    region or a finite incumbent; the volume programs always come with one.
    """
    if any(Fraction(c).denominator != 1 for c in p.objective):
        raise ValueError("branch-and-bound needs an integer objective")
    t0 = time.monotonic()
    best_x, best_val = None, None
    if initial_incumbent is not None:
        inc = [Fraction(v) for v in initial_incumbent]
        if not _is_feasible_integral(p, inc):
            raise ValueError("initial incumbent is not a feasible integer point")
        best_x = [int(v) for v in inc]
        best_val = int(sum(c * v for c, v in zip(p.objective, inc)))

    nodes = 0
    if root is None:
        root = solve_lp(p, warm_start=warm_start, deadline=deadline)
    nodes += 1
    if root.status is LPStatus.INFEASIBLE:
        raise Infeasible("relaxation is infeasible, so no integer point exists")
    if root.status is LPStatus.UNBOUNDED:
        raise ValueError("integer program relaxation is unbounded")
    root_bound = root.value
    stack: list[BnbNode] = []

    def consider(value, x, depth, bounds):
        nonlocal best_x, best_val
        if best_val is not None and math.ceil(value) >= best_val:
            return
        try:
            j = branch_select(x)
        except NoFractionalVariable:
            best_x = [int(v) for v in x]
            best_val = int(value)
            log.debug("incumbent %s at depth %d", best_val, depth)
            return
        v = x[j]
        down = BnbNode(bounds + ((j, "hi", math.floor(v)),), value, depth + 1)
        up = BnbNode(bounds + ((j, "lo", math.ceil(v)),), value, depth + 1)
        stack.append(up)
        stack.append(down)

    consider(root.value, list(root.primal), 0, ())
    max_depth = 0
    def out_of_time(pending):
        lower = math.ceil(min(n.parent_value for n in pending))
        if best_val is not None:
            lower = min(lower, best_val)
        return TimeLimitReached(
            "time limit reached during branch-and-bound",
            lower_bound=lower,
            upper_bound=best_val,
            stats={"nodes": nodes, "incumbent": best_x})

    while stack:
        if deadline is not None and time.monotonic() > deadline:
            raise out_of_time(stack)
        node = stack.pop()
        if best_val is not None and math.ceil(node.parent_value) >= best_val:
            continue
        try:
            res, _ = _solve_node(p, node, warm_start, deadline)
        except TimeLimitReached:
            raise out_of_time(stack + [node]) from None
        nodes += 1
        max_depth = max(max_depth, node.depth)
        if res is None:
            continue
        value, x = res
        consider(value, x, node.depth, node.extra_bounds)

    if best_val is None:
        raise Infeasible("no integer point satisfies the constraints")
    stats = {"nodes": nodes, "max_depth": max_depth, "seconds": round(time.monotonic() - t0, 6),
             "root_lp_value": root_bound}
    return IlpResult(best_val, tuple(best_x), nodes, root_bound, True, stats)

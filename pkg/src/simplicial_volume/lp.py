"""Exact rational linear programming in equality form.

Programs are ``min c.x  s.t.  A x = b, x >= 0`` with :class:`fractions.Fraction`
data.  The solver is a revised simplex method using Bland's rule; every basis
is refactorized exactly, so reported solutions carry no rounding error.  A
double-precision basis from HiGHS may be supplied as a starting point; the
exact phase either certifies it or pivots on from it.
"""
from __future__ import annotations

import logging
import time
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from functools import cached_property

from .errors import TimeLimitReached, WarmStartRejected

log = logging.getLogger(__name__)

__all__ = [
    "LPStatus",
    "LinearProgram",
    "LPSolution",
    "WarmBasis",
    "solve_lp",
    "verify_solution",
    "warm_start_basis",
    "format_rational",
    "parse_rational",
]

ZERO = Fraction(0)
ONE = Fraction(1)


def format_rational(q) -> str:
    q = Fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def parse_rational(text: str) -> Fraction:
    text = text.strip()
    if not text or any(ch in text for ch in ".eE"):
        raise ValueError(f"not an exact rational: {text!r}")
    return Fraction(text)


class LPStatus(str, Enum):
    OPTIMAL = "Optimal"
    INFEASIBLE = "Infeasible"
    UNBOUNDED = "Unbounded"


def _frac(v) -> Fraction:
    if isinstance(v, Fraction):
        return v
    if isinstance(v, float):
        raise TypeError("floats are not accepted; pass ints, Fractions or 'p/q' strings")
    return Fraction(v)


@dataclass(frozen=True, eq=False)
class LinearProgram:
    """Sparse equality-form program, row-major.

    ``rows[i]`` maps column index to coefficient for constraint ``i``.
    """
    num_vars: int
    rows: tuple
    rhs: tuple
    objective: tuple

    def __post_init__(self):
        rows = tuple({int(j): _frac(v) for j, v in dict(r).items() if v} for r in self.rows)
        rhs = tuple(_frac(v) for v in self.rhs)
        obj = tuple(_frac(v) for v in self.objective)
        if len(rows) != len(rhs):
            raise ValueError(f"{len(rows)} rows but {len(rhs)} right-hand sides")
        if len(obj) != self.num_vars:
            raise ValueError(f"objective has {len(obj)} entries for {self.num_vars} variables")
        for i, r in enumerate(rows):
            for j in r:
                if not 0 <= j < self.num_vars:
                    raise ValueError(f"row {i} references column {j} out of range")
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "rhs", rhs)
        object.__setattr__(self, "objective", obj)

    @classmethod
    def from_dense(cls, A, b, c) -> "LinearProgram":
        rows = [{j: v for j, v in enumerate(row) if v} for row in A]
        return cls(len(c), tuple(rows), tuple(b), tuple(c))

    @property
    def num_rows(self) -> int:
        return len(self.rows)

    @cached_property
    def columns(self) -> list[dict[int, Fraction]]:
        cols: list[dict[int, Fraction]] = [{} for _ in range(self.num_vars)]
        for i, r in enumerate(self.rows):
            for j, v in r.items():
                cols[j][i] = v
        return cols

    def residual(self, x) -> list[Fraction]:
        """``A x - b`` row by row."""
        return [sum((v * x[j] for j, v in r.items()), ZERO) - bi
                for r, bi in zip(self.rows, self.rhs)]

    def reduced_costs(self, y) -> list[Fraction]:
        return [cj - sum((v * y[i] for i, v in col.items()), ZERO)
                for cj, col in zip(self.objective, self.columns)]

    def to_triples(self) -> str:
        """Plain-text sparse dump: ``row col value`` lines, then rhs and objective."""
        lines = [f"# rows {self.num_rows} cols {self.num_vars}"]
        for i, r in enumerate(self.rows):
            for j in sorted(r):
                lines.append(f"{i} {j} {format_rational(r[j])}")
        for i, v in enumerate(self.rhs):
            if v:
                lines.append(f"rhs {i} {format_rational(v)}")
        for j, v in enumerate(self.objective):
            if v:
                lines.append(f"obj {j} {format_rational(v)}")
        return "\n".join(lines) + "\n"

    @classmethod
    def from_triples(cls, text: str) -> "LinearProgram":
        header = None
        entries, rhs, obj = [], {}, {}
        for lineno, line in enumerate(text.splitlines(), 1):
            parts = line.split()
            if not parts:
                continue
            if parts[0] == "#":
                if len(parts) >= 5 and parts[1] == "rows":
                    header = int(parts[2]), int(parts[4])
                continue
            if parts[0] == "rhs":
                rhs[int(parts[1])] = parse_rational(parts[2])
            elif parts[0] == "obj":
                obj[int(parts[1])] = parse_rational(parts[2])
            else:
                entries.append((int(parts[0]), int(parts[1]), parse_rational(parts[2])))
        if header is None:
            raise ValueError("missing '# rows R cols C' header")
        m, n = header
        rows = [{} for _ in range(m)]
        for i, j, v in entries:
            rows[i][j] = v
        return cls(n, tuple(rows), tuple(rhs.get(i, 0) for i in range(m)),
                   tuple(obj.get(j, 0) for j in range(n)))


@dataclass(frozen=True, eq=False)
class LPSolution:
    status: LPStatus
    value: Fraction | None = None
    primal: tuple = ()
    dual: tuple = ()
    basis: tuple = ()
    # Infeasible: y with y.A <= 0 and y.b > 0.  Unbounded: ray d >= 0, A d = 0, c.d < 0.
    witness: tuple | None = None
    stats: dict = field(default_factory=dict)

    @property
    def optimal(self) -> bool:
        return self.status is LPStatus.OPTIMAL


@dataclass(frozen=True)
class WarmBasis:
    """Candidate basis: basic structural columns plus rows whose slack is basic."""
    columns: tuple
    rows: tuple = ()


class _Singular(Exception):
    pass


class _SparseLU:
    """Exact Gaussian elimination of a square sparse matrix given by rows.

    Row operations are recorded so that further right-hand sides can be
    solved without refactorizing.
    """

    def __init__(self, rows: list[dict[int, Fraction]]):
        k = len(rows)
        rows = [dict(r) for r in rows]
        colrows: dict[int, set[int]] = {}
        for i, r in enumerate(rows):
            for c in r:
                colrows.setdefault(c, set()).add(i)
        active = set(range(k))
        order = []
        ops = []
        while active:
            i = min(active, key=lambda a: (len(rows[a]), a))
            r = rows[i]
            if not r:
                raise _Singular()
            c = min(r, key=lambda col: (len(colrows[col]), col))
            pv = r[c]
            active.discard(i)
            order.append((i, c))
            for t in sorted(colrows[c]):
                if t == i or t not in active:
                    continue
                rt = rows[t]
                f = rt[c] / pv
                for cc, vv in r.items():
                    nv = rt.get(cc, ZERO) - f * vv
                    if nv:
                        if cc not in rt:
                            colrows[cc].add(t)
                        rt[cc] = nv
                    else:
                        rt.pop(cc, None)
                        colrows[cc].discard(t)
                ops.append((i, t, f))
            for cc in r:
                colrows[cc].discard(i)
        if len({c for _, c in order}) != k:
            raise _Singular()
        self.size = k
        self.rows = rows
        self.order = order
        self.ops = ops

    def solve(self, rhs) -> list[Fraction]:
        b = list(rhs)
        for i, t, f in self.ops:
            if b[i]:
                b[t] -= f * b[i]
        sol = [ZERO] * self.size
        for i, c in reversed(self.order):
            r = self.rows[i]
            s = b[i]
            for cc, vv in r.items():
                if cc != c:
                    s -= vv * sol[cc]
            sol[c] = s / r[c]
        return sol


class _Simplex:
    """Working state of the exact revised simplex (single-threaded)."""

    def __init__(self, p: LinearProgram, deadline=None):
        self.p = p
        self.m = p.num_rows
        self.n = p.num_vars
        # auxiliary column n + i is sign(b_i) * e_i, nonnegative at b
        self.aux_sign = [(-1 if bi < 0 else 1) for bi in p.rhs]
        self.cols = list(p.columns) + [{i: Fraction(s)} for i, s in enumerate(self.aux_sign)]
        self.deadline = deadline
        self.iterations = 0
        self.factorizations = 0

    def _check_time(self):
        if self.deadline is not None and time.monotonic() > self.deadline:
            raise TimeLimitReached("time limit reached during exact simplex",
                                   stats={"iterations": self.iterations})

    def factor(self, basis):
        self.factorizations += 1
        brows: list[dict[int, Fraction]] = [{} for _ in range(self.m)]
        for pos, j in enumerate(basis):
            for i, v in self.cols[j].items():
                brows[i][pos] = v
        lu = _SparseLU(brows)
        lut = _SparseLU([self.cols[j] for j in basis])
        return lu, lut

    def is_aux(self, j):
        return j >= self.n

    def run(self, basis, cost, pinned):
        """Bland's-rule pivoting from a primal feasible basis.

        ``cost`` covers structural and auxiliary columns; only structural
        columns may enter.  With ``pinned`` set, basic auxiliary columns are
        held at zero: any pivot that would move one exchanges it out at step
        zero.  Each such exchange removes an auxiliary column for good, so
        Bland's termination argument still applies between them.
        Returns ``(status, basis, x, y, extra)``.
        """
        basis = list(basis)
        while True:
            self._check_time()
            try:
                lu, lut = self.factor(basis)
            except _Singular:
                raise WarmStartRejected("singular basis")
            x = lu.solve(self.p.rhs)
            y = lut.solve([cost[j] for j in basis])
            in_basis = set(basis)
            q = None
            for j in range(self.n):
                if j in in_basis:
                    continue
                rc = cost[j] - sum((v * y[i] for i, v in self.cols[j].items()), ZERO)
                if rc < 0:
                    q = j
                    break
            if q is None:
                return "optimal", basis, x, y, None
            d = lu.solve([self.cols[q].get(i, ZERO) for i in range(self.m)])
            best = None
            for pos, dp in enumerate(d):
                if pinned and dp != 0 and self.is_aux(basis[pos]):
                    cand = (ZERO, basis[pos], pos)
                elif dp > 0:
                    cand = (x[pos] / dp, basis[pos], pos)
                else:
                    continue
                if best is None or cand[:2] < best[:2]:
                    best = cand
            if best is None:
                ray = [ZERO] * self.n
                ray[q] = ONE
                for pos, dp in enumerate(d):
                    if basis[pos] < self.n:
                        ray[basis[pos]] = -dp
                return "unbounded", basis, x, y, tuple(ray)
            basis[best[2]] = q
            self.iterations += 1

    def phase1(self):
        basis = list(range(self.n, self.n + self.m))
        cost = [ZERO] * self.n + [ONE] * self.m
        status, basis, x, y, _ = self.run(basis, cost, pinned=False)
        value = sum((x[pos] for pos, j in enumerate(basis) if self.is_aux(j)), ZERO)
        return basis, value, y


def warm_start_basis(p: LinearProgram) -> WarmBasis:
    """Basis guess from a double-precision HiGHS run.

    Raises :class:`WarmStartRejected` when HiGHS is unavailable or does not
    report an optimal solution.
    """
    try:
        import highspy
        import numpy as np
    except ImportError as exc:  # pragma: no cover - depends on environment
        raise WarmStartRejected(f"highspy unavailable: {exc}")
    m, n = p.num_rows, p.num_vars
    starts, index, values = [0], [], []
    for col in p.columns:
        for i in sorted(col):
            index.append(i)
            values.append(float(col[i]))
        starts.append(len(index))
    h = highspy.Highs()
    h.setOptionValue("output_flag", False)
    h.setOptionValue("random_seed", 0)
    h.setOptionValue("threads", 1)
    lp = highspy.HighsLp()
    lp.num_col_ = n
    lp.num_row_ = m
    lp.col_cost_ = np.array([float(c) for c in p.objective])
    lp.col_lower_ = np.zeros(n)
    lp.col_upper_ = np.full(n, highspy.kHighsInf)
    b = np.array([float(v) for v in p.rhs])
    lp.row_lower_ = b
    lp.row_upper_ = b
    lp.a_matrix_.format_ = highspy.MatrixFormat.kColwise
    lp.a_matrix_.start_ = np.array(starts, dtype=np.int32)
    lp.a_matrix_.index_ = np.array(index, dtype=np.int32)
    lp.a_matrix_.value_ = np.array(values, dtype=float)
    h.passModel(lp)
    h.run()
    status = h.getModelStatus()
    if status != highspy.HighsModelStatus.kOptimal:
        raise WarmStartRejected(f"HiGHS status {h.modelStatusToString(status)}")
    basis = h.getBasis()
    basic = highspy.HighsBasisStatus.kBasic
    col_status = list(basis.col_status)
    row_status = list(basis.row_status)
    cols = tuple(j for j in range(n) if col_status[j] == basic)
    rows = tuple(i for i in range(m) if row_status[i] == basic)
    if len(cols) + len(rows) != m:
        raise WarmStartRejected("HiGHS basis has the wrong size")
    return WarmBasis(cols, rows)


def solve_lp(p: LinearProgram, warm_start: bool = True, basis: WarmBasis | None = None,
             deadline: float | None = None) -> LPSolution:
    """Solve ``p`` exactly.

    Parameters
    ----------
    p : LinearProgram
    warm_start : bool
        Ask HiGHS for a starting basis.  Ignored when ``basis`` is given.
    basis : WarmBasis, optional
        Explicit starting basis.  Singular or infeasible candidates are
        rejected and the exact two-phase method runs from scratch.
    deadline : float, optional
        ``time.monotonic()`` value after which :class:`TimeLimitReached` is raised.

    Returns
    -------
    LPSolution
        Optimal solutions satisfy :func:`verify_solution` exactly.
    """
    t0 = time.monotonic()
    stats: dict = {"warm_start": "disabled"}
    solver = _Simplex(p, deadline)
    result = None
    if basis is None and warm_start and p.num_rows:
        try:
            basis = warm_start_basis(p)
        except WarmStartRejected as exc:
            stats["warm_start"] = f"rejected: {exc}"
    if basis is not None:
        try:
            result = _from_basis(solver, basis, stats)
        except WarmStartRejected as exc:
            log.debug("warm start rejected: %s", exc)
            stats["warm_start"] = f"rejected: {exc}"
            result = None
    if result is None:
        result = _two_phase(solver, stats)
    stats["iterations"] = solver.iterations
    stats["factorizations"] = solver.factorizations
    stats["seconds"] = round(time.monotonic() - t0, 6)
    return LPSolution(result.status, result.value, result.primal, result.dual,
                      result.basis, result.witness, stats)


def _finish(solver: _Simplex, status, basis, x, y, extra) -> LPSolution:
    n = solver.n
    if status == "unbounded":
        return LPSolution(LPStatus.UNBOUNDED, witness=extra)
    primal = [ZERO] * n
    for pos, j in enumerate(basis):
        if j < n:
            primal[j] = x[pos]
        elif x[pos] != 0:
            raise RuntimeError("auxiliary variable nonzero after phase 2")
    value = sum((c * v for c, v in zip(solver.p.objective, primal)), ZERO)
    return LPSolution(LPStatus.OPTIMAL, value, tuple(primal), tuple(y),
                      tuple(sorted(j for j in basis if j < n)))


def _from_basis(solver: _Simplex, wb: WarmBasis, stats) -> LPSolution:
    n, m = solver.n, solver.m
    start = [j for j in wb.columns] + [n + i for i in wb.rows]
    if len(start) != m or len(set(start)) != m or any(not 0 <= j < n for j in wb.columns):
        raise WarmStartRejected("candidate basis has the wrong size or bad indices")
    try:
        lu, _ = solver.factor(start)
    except _Singular:
        raise WarmStartRejected("singular candidate basis")
    x = lu.solve(solver.p.rhs)
    for pos, j in enumerate(start):
        if x[pos] < 0 or (j >= n and x[pos] != 0):
            raise WarmStartRejected("candidate basis is not primal feasible")
    cost = list(solver.p.objective) + [ZERO] * m
    it0 = solver.iterations
    status, basis, x, y, extra = solver.run(start, cost, pinned=True)
    stats["warm_start"] = "certified" if solver.iterations == it0 else "continued"
    stats["warm_pivots"] = solver.iterations - it0
    return _finish(solver, status, basis, x, y, extra)


def _two_phase(solver: _Simplex, stats) -> LPSolution:
    n, m = solver.n, solver.m
    if m == 0:
        # no constraints: optimal at 0 unless some cost is negative
        neg = [j for j, c in enumerate(solver.p.objective) if c < 0]
        if neg:
            ray = [ZERO] * n
            ray[neg[0]] = ONE
            return LPSolution(LPStatus.UNBOUNDED, witness=tuple(ray))
        return LPSolution(LPStatus.OPTIMAL, ZERO, (ZERO,) * n, (), ())
    basis, infeas, y1 = solver.phase1()
    if infeas > 0:
        # phase-1 duals: y.A_j <= 0 on structural columns and y.b = infeasibility
        return LPSolution(LPStatus.INFEASIBLE, witness=tuple(y1))
    cost = list(solver.p.objective) + [ZERO] * m
    status, basis, x, y, extra = solver.run(basis, cost, pinned=True)
    return _finish(solver, status, basis, x, y, extra)


def verify_solution(p: LinearProgram, s: LPSolution) -> bool:
    """Exact certificate check of a solver result.

    Optimal: ``A x = b``, ``x >= 0``, ``c.x = value = y.b`` and ``c - y.A >= 0``.
    Infeasible: Farkas vector with ``y.A <= 0`` and ``y.b > 0``.
    Unbounded: ray ``d >= 0`` with ``A d = 0`` and ``c.d < 0``.
    """
    m, n = p.num_rows, p.num_vars
    if s.status is LPStatus.OPTIMAL:
        x, y = s.primal, s.dual
        if len(x) != n or len(y) != m or s.value is None:
            return False
        if any(v < 0 for v in x):
            return False
        if any(r != 0 for r in p.residual(x)):
            return False
        if sum((c * v for c, v in zip(p.objective, x)), ZERO) != s.value:
            return False
        if sum((yi * bi for yi, bi in zip(y, p.rhs)), ZERO) != s.value:
            return False
        return all(rc >= 0 for rc in p.reduced_costs(y))
    if s.status is LPStatus.INFEASIBLE:
        y = s.witness
        if y is None or len(y) != m:
            return False
        if sum((yi * bi for yi, bi in zip(y, p.rhs)), ZERO) <= 0:
            return False
        return all(sum((v * y[i] for i, v in col.items()), ZERO) <= 0 for col in p.columns)
    if s.status is LPStatus.UNBOUNDED:
        d = s.witness
        if d is None or len(d) != n or any(v < 0 for v in d):
            return False
        if any(sum((v * d[j] for j, v in r.items()), ZERO) != 0 for r in p.rows):
            return False
        return sum((c * v for c, v in zip(p.objective, d)), ZERO) < 0
    return False

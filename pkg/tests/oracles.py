"""Brute-force reference implementations used by the tests.

Nothing here calls into the solver stack; boundaries, programs and optima
are recomputed from first principles so that agreement is meaningful.
"""
from fractions import Fraction
from itertools import combinations, combinations_with_replacement, permutations, product


def perm_sign(seq):
    seq = list(seq)
    sign = 1
    for i in range(len(seq)):
        for j in range(i + 1, len(seq)):
            if seq[i] > seq[j]:
                sign = -sign
    return sign


def simplex_boundary(simplex):
    """{sorted face: coefficient} for the boundary of an oriented simplex."""
    sign0 = perm_sign(simplex)
    s = sorted(simplex)
    out = {}
    for i in range(len(s)):
        face = tuple(s[:i] + s[i + 1:])
        out[face] = out.get(face, 0) + sign0 * (-1) ** i
    return out


def target_vector(facets):
    """Sorted-key coefficients of a facet list ``[(oriented tuple, multiplicity)]``."""
    out = {}
    for simplex, m in facets:
        key = tuple(sorted(simplex))
        out[key] = out.get(key, 0) + perm_sign(simplex) * m
    return {k: v for k, v in out.items() if v}


def integral_volume_bruteforce(facets, n, d, max_norm):
    """Smallest 1-norm of an integer (d+1)-chain bounding the facets, or None if > max_norm."""
    target = target_vector(facets)
    cells = list(combinations(range(n), d + 2))
    bds = [simplex_boundary(c) for c in cells]
    for norm in range(max_norm + 1):
        for multiset in combinations_with_replacement(range(len(cells)), norm):
            counts = {}
            for k in multiset:
                counts[k] = counts.get(k, 0) + 1
            support = sorted(counts)
            for signs in product((1, -1), repeat=len(support)):
                total = {}
                for k, s in zip(support, signs):
                    for face, c in bds[k].items():
                        total[face] = total.get(face, 0) + s * counts[k] * c
                if {f: v for f, v in total.items() if v} == target:
                    return norm
    return None


def _solve_square(B, b):
    """Exact Gauss-Jordan; None when singular."""
    m = len(B)
    M = [[Fraction(v) for v in row] + [Fraction(bi)] for row, bi in zip(B, b)]
    for col in range(m):
        piv = next((r for r in range(col, m) if M[r][col] != 0), None)
        if piv is None:
            return None
        M[col], M[piv] = M[piv], M[col]
        pv = M[col][col]
        M[col] = [v / pv for v in M[col]]
        for r in range(m):
            if r != col and M[r][col] != 0:
                f = M[r][col]
                M[r] = [a - f * c for a, c in zip(M[r], M[col])]
    return [M[r][m] for r in range(m)]


def _independent_rows(A, b):
    """Drop dependent rows; None if the system is inconsistent."""
    rows = []
    basis = []  # reduced rows with pivot positions
    ncols = len(A[0]) if A else 0
    for row, bi in zip(A, b):
        r = [Fraction(v) for v in row] + [Fraction(bi)]
        for piv, br in basis:
            if r[piv] != 0:
                f = r[piv] / br[piv]
                r = [x - f * y for x, y in zip(r, br)]
        piv = next((j for j in range(ncols) if r[j] != 0), None)
        if piv is None:
            if r[-1] != 0:
                return None
            continue
        basis.append((piv, r))
        rows.append((row, bi))
    return rows


def lp_min_by_vertices(A, b, c):
    """min c.x over {A x = b, x >= 0} by enumerating every basis.

    Returns None when infeasible.  Assumes the optimum is attained (c >= 0
    suffices).
    """
    kept = _independent_rows(A, b)
    if kept is None:
        return None
    if not kept:
        return Fraction(0)
    A2 = [r for r, _ in kept]
    b2 = [bi for _, bi in kept]
    m, n = len(A2), len(c)
    best = None
    for cols in combinations(range(n), m):
        B = [[A2[i][j] for j in cols] for i in range(m)]
        xb = _solve_square(B, b2)
        if xb is None or any(v < 0 for v in xb):
            continue
        val = sum(Fraction(c[j]) * v for j, v in zip(cols, xb))
        if best is None or val < best:
            best = val
    return best


def volume_program_dense(facets, n, d):
    """Dense (A, b, c) for the volume program, built independently of the library."""
    rows = list(combinations(range(n), d + 1))
    row_of = {r: i for i, r in enumerate(rows)}
    cells = list(combinations(range(n), d + 2))
    A = [[0] * (2 * len(cells)) for _ in rows]
    for k, cell in enumerate(cells):
        for face, coeff in simplex_boundary(cell).items():
            A[row_of[face]][2 * k] = coeff
            A[row_of[face]][2 * k + 1] = -coeff
    b = [0] * len(rows)
    for key, v in target_vector(facets).items():
        b[row_of[key]] = v
    return A, b, [1] * (2 * len(cells))


def fractional_volume_bruteforce(facets, n, d):
    A, b, c = volume_program_dense(facets, n, d)
    return lp_min_by_vertices(A, b, c)


def integer_program_bruteforce(A, b, c, max_value):
    """min c.x over nonnegative integer x with A x = b and c.x <= max_value (c >= 1)."""
    n = len(c)
    best = None
    for total in range(max_value + 1):
        for multiset in combinations_with_replacement(range(n), total):
            x = [0] * n
            for j in multiset:
                x[j] += 1
            val = sum(cj * xj for cj, xj in zip(c, x))
            if val > max_value:
                continue
            if all(sum(a * xj for a, xj in zip(row, x)) == bi for row, bi in zip(A, b)):
                if best is None or val < best:
                    best = val
    return best


def digraph_canonical_bruteforce(M):
    n = len(M)
    return min(tuple(M[p[i]][p[j]] for i in range(n) for j in range(n))
               for p in permutations(range(n)))


def balanced_digraphs_bruteforce(n, max_edges):
    """All connected balanced multidigraphs on exactly n vertices, as canonical codes."""
    darts = [(u, v) for u in range(n) for v in range(n) if u != v]
    forms = set()
    for e in range(1, max_edges + 1):
        for combo in combinations_with_replacement(darts, e):
            M = [[0] * n for _ in range(n)]
            for u, v in combo:
                M[u][v] += 1
            if any(sum(M[u]) != sum(M[w][u] for w in range(n)) or sum(M[u]) == 0
                   for u in range(n)):
                continue
            seen, stack = {0}, [0]
            while stack:
                u = stack.pop()
                for v in range(n):
                    if v not in seen and (M[u][v] or M[v][u]):
                        seen.add(v)
                        stack.append(v)
            if len(seen) == n:
                forms.add(digraph_canonical_bruteforce(M))
    return forms
